#include "prpsk/phase_sequence.hpp"

#include <numbers>

#include <nlohmann/json.hpp>

#include "prpsk/error.hpp"
#include "prpsk/rng.hpp"

namespace prpsk {

PhaseSequence::PhaseSequence(std::uint64_t seed, int samples_per_period, std::vector<int> shifts)
    : seed_(seed), samples_per_period_(samples_per_period), shifts_(std::move(shifts)) {
    if (samples_per_period_ < 3) {
        throw Error(Errc::s_less_than_3, "phase sequence needs samples per period >= 3");
    }
    if (shifts_.empty()) {
        throw Error(Errc::empty_input, "phase sequence needs at least one shift");
    }
    phases_.reserve(shifts_.size());
    for (int m : shifts_) {
        if (m < 0 || m >= samples_per_period_) {
            throw Error(Errc::non_positive, "shift out of range [0, S)");
        }
        phases_.push_back(2.0 * std::numbers::pi * static_cast<double>(m) /
                          static_cast<double>(samples_per_period_));
    }
}

std::string PhaseSequence::to_json() const {
    nlohmann::json j;
    j["seed"] = seed_;
    j["S"] = samples_per_period_;
    j["K"] = repetitions();
    j["shifts"] = shifts_;
    return j.dump(2);
}

PhaseSequence PhaseSequence::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::bad_file, std::string("bad phase sequence JSON: ") + e.what());
    }
    if (!j.contains("seed") || !j.contains("S") || !j.contains("K") || !j.contains("shifts")) {
        throw Error(Errc::bad_file, "phase sequence JSON needs seed, S, K, shifts");
    }
    PhaseSequence seq(j["seed"].get<std::uint64_t>(), j["S"].get<int>(),
                      j["shifts"].get<std::vector<int>>());
    if (seq.repetitions() != j["K"].get<int>()) {
        throw Error(Errc::bad_file, "phase sequence JSON: K does not match shifts length");
    }
    return seq;
}

PhaseSequence generate_phase_sequence(std::uint64_t seed, const WaveformParams& params) {
    SplitMix64 gen(seed);
    std::vector<int> shifts(static_cast<std::size_t>(params.repetitions()));
    for (auto& m : shifts) {
        m = static_cast<int>(gen.next_below(static_cast<std::uint64_t>(params.samples_per_period())));
    }
    return PhaseSequence(seed, params.samples_per_period(), std::move(shifts));
}

} // namespace prpsk

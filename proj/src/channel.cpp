#include "prpsk/channel.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

#include "prpsk/error.hpp"
#include "prpsk/rng.hpp"

namespace prpsk {

std::string ChannelSpec::to_json() const {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["entries"] = nlohmann::json::array();
    for (const auto& e : entries) {
        j["entries"].push_back({{"stream", e.stream}, {"delay", e.delay}, {"gain", e.gain}});
    }
    j["noise_sigma"] = noise_sigma;
    j["noise_seed"] = noise_seed;
    return j.dump(2);
}

ChannelSpec ChannelSpec::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::bad_file, std::string("bad channel spec JSON: ") + e.what());
    }
    ChannelSpec spec;
    for (const auto& e : j.value("entries", nlohmann::json::array())) {
        ChannelSpec::Entry entry;
        entry.stream = e.value("stream", 0);
        entry.delay = e.value("delay", std::int64_t{0});
        entry.gain = e.value("gain", 1.0);
        if (entry.delay < 0) throw Error(Errc::bad_file, "channel spec: delays must be >= 0");
        if (entry.gain < 0) throw Error(Errc::bad_file, "channel spec: gains must be >= 0");
        spec.entries.push_back(entry);
    }
    spec.noise_sigma = j.value("noise_sigma", 0.0);
    spec.noise_seed = j.value("noise_seed", std::uint64_t{0});
    if (spec.noise_sigma < 0) throw Error(Errc::bad_file, "channel spec: noise_sigma must be >= 0");
    return spec;
}

PassbandBuffer superpose(const std::vector<PassbandBuffer>& streams, const ChannelSpec& spec) {
    if (spec.entries.empty()) {
        throw Error(Errc::empty_spec, "channel spec has no entries");
    }
    std::int64_t out_len = 0;
    for (const auto& e : spec.entries) {
        if (e.stream < 0 || e.stream >= static_cast<int>(streams.size())) {
            throw Error(Errc::empty_spec,
                        "channel spec references stream " + std::to_string(e.stream) +
                            " but only " + std::to_string(streams.size()) + " were given");
        }
        out_len = std::max(out_len, e.delay + streams[static_cast<std::size_t>(e.stream)].size());
    }
    PassbandBuffer out(static_cast<std::size_t>(out_len));
    for (const auto& e : spec.entries) {
        const auto& s = streams[static_cast<std::size_t>(e.stream)];
        for (std::int64_t i = 0; i < s.size(); ++i) {
            out[static_cast<std::size_t>(i + e.delay)] += e.gain * s.at(i);
        }
    }
    return out;
}

PassbandBuffer add_awgn(const PassbandBuffer& buf, double sigma, std::uint64_t seed) {
    if (sigma == 0.0) return buf;
    GaussianSource noise(seed);
    PassbandBuffer out = buf;
    for (auto& v : out.samples()) v += sigma * noise.next();
    return out;
}

PassbandBuffer apply_channel(const std::vector<PassbandBuffer>& streams, const ChannelSpec& spec) {
    return add_awgn(superpose(streams, spec), spec.noise_sigma, spec.noise_seed);
}

} // namespace prpsk

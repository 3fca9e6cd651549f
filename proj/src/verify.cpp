#include "prpsk/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <nlohmann/json.hpp>

#include "prpsk/channel.hpp"
#include "prpsk/correlator_carrier.hpp"
#include "prpsk/frontend_if.hpp"
#include "prpsk/modulator.hpp"
#include "prpsk/receiver.hpp"
#include "prpsk/rng.hpp"

namespace prpsk {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

double wrapped_angle_dev(double a, double b) {
    double d = std::fmod(std::abs(a - b), two_pi);
    return std::min(d, two_pi - d);
}

PassbandBuffer random_stream(std::uint64_t seed, int len) {
    GaussianSource g(seed);
    PassbandBuffer buf(static_cast<std::size_t>(len));
    for (auto& v : buf.samples()) v = g.next();
    return buf;
}

} // namespace

std::string to_string(Method method) {
    switch (method) {
        case Method::ma1: return "ma1";
        case Method::ma2: return "ma2";
        case Method::ma3: return "ma3";
        case Method::ma4: return "ma4";
        case Method::ma5: return "ma5";
    }
    return "?";
}

double max_rel_dev_ma1_vs_direct(std::uint64_t seed, int n_streams, int stream_len,
                                 const WaveformParams& params) {
    const int T = params.samples_per_symbol();
    const WaveformParams single = validate_params(params.samples_per_period(),
                                                  params.periods_per_symbol(), 1,
                                                  params.if_samples_per_symbol(),
                                                  params.psk_order());
    const PhaseSequence zero_shift(0, params.samples_per_period(), {0});
    double worst = 0.0;
    for (int s = 0; s < n_streams; ++s) {
        const PassbandBuffer y = random_stream(seed + static_cast<std::uint64_t>(s), stream_len);
        Ma1Correlator ma1(params);
        for (std::int64_t tau = 0; tau < y.size(); ++tau) {
            const cplx got = ma1.step(y.at(tau), tau);
            if (tau < T - 1) continue;
            const cplx want = correlate_direct(y, tau - T + 1, single, zero_shift);
            if (std::abs(want) > 1e-6) {
                worst = std::max(worst, std::abs(got - want) / std::abs(want));
            }
        }
    }
    return worst;
}

double max_rel_dev_ma2_vs_direct(std::uint64_t seed, int n_streams, int stream_len,
                                 const WaveformParams& params) {
    const std::int64_t span = params.frame_symbol_span();
    double worst = 0.0;
    for (int s = 0; s < n_streams; ++s) {
        const std::uint64_t stream_seed = seed + static_cast<std::uint64_t>(s);
        const PassbandBuffer y = random_stream(stream_seed, stream_len);
        const PhaseSequence seq = generate_phase_sequence(stream_seed ^ 0xABCDu, params);
        Ma2Correlator ma2(params, seq);
        for (std::int64_t tau = 0; tau < y.size(); ++tau) {
            const cplx got = ma2.step(y.at(tau), tau);
            if (tau < span - 1) continue;
            const cplx want = correlate_direct(y, tau - span + 1, params, seq);
            if (std::abs(want) > 1e-6) {
                worst = std::max(worst, std::abs(got - want) / std::abs(want));
            }
        }
    }
    return worst;
}

Ma3Deviation worst_ma3_deviation(std::uint64_t seed, int trials, int samples_per_period,
                                 int periods_per_symbol) {
    const int S = samples_per_period;
    Ma3Deviation worst;
    for (int trial = 0; trial < trials; ++trial) {
        SplitMix64 r(seed + static_cast<std::uint64_t>(trial));
        const int reps = 2 + static_cast<int>(r.next_below(11));  // K in [2, 12]
        const int prepad = static_cast<int>(r.next_below(3));
        const double base = static_cast<double>(r.next_below(4)) * std::numbers::pi / 2.0;

        const WaveformParams params =
            validate_params(S, periods_per_symbol, reps, periods_per_symbol, 2);
        std::vector<int> shifts(static_cast<std::size_t>(reps), S - 1);
        shifts[0] = 0;
        const PhaseSequence seq(0, S, std::move(shifts));

        std::vector<double> phases(static_cast<std::size_t>(prepad), 0.0);
        phases.push_back(base);
        phases.push_back(base + std::numbers::pi);
        const Frame frame = modulate_phases(phases, params, seq);

        const std::int64_t span = params.frame_symbol_span();
        const std::int64_t aligned = (prepad + 1) * span - 1;

        Ma2Correlator ma2(params, seq);
        Ma3Correlator ma3(params, seq);
        cplx exact{}, approx{};
        for (std::int64_t tau = 0; tau < frame.passband.size(); ++tau) {
            const double y = frame.passband.at(tau);
            const cplx v2 = ma2.step(y, tau);
            if (tau == aligned) exact = v2;
            if (const auto out = ma3.step(y, tau); out && out->tau == aligned) {
                approx = out->value;
            }
        }
        worst.phase = std::max(worst.phase, wrapped_angle_dev(std::arg(approx), std::arg(exact)));
        worst.magnitude = std::max(
            worst.magnitude, std::abs(std::abs(approx) - std::abs(exact)) / std::abs(exact));
    }
    return worst;
}

double max_rel_dev_if_vs_carrier(std::uint64_t seed, int n_frames, const WaveformParams& params) {
    const int D = params.decimation();
    double worst = 0.0;
    for (int f = 0; f < n_frames; ++f) {
        const std::uint64_t frame_seed = seed + static_cast<std::uint64_t>(f);
        const PhaseSequence seq = generate_phase_sequence(frame_seed ^ 0x5EEDu, params);
        SplitMix64 r(frame_seed);
        std::vector<std::uint8_t> bits(static_cast<std::size_t>(4 * params.bits_per_symbol()));
        for (auto& b : bits) b = static_cast<std::uint8_t>(r.next_below(2));
        Frame frame = modulate_frame(bits, params, seq);
        const PassbandBuffer noisy = add_awgn(frame.passband, 0.3, frame_seed ^ 0xF00Du);

        const auto carrier_trace = correlate_stream(noisy, params, seq, Engine::ma2);
        const auto if_trace = correlate_stream(noisy, params, seq, Engine::ma5);
        for (std::size_t ti = 0; ti < if_trace.size(); ++ti) {
            const std::size_t tc = (ti + 1) * static_cast<std::size_t>(D) - 1;
            if (tc >= carrier_trace.size()) break;
            const cplx want = carrier_trace[tc];
            if (std::abs(want) > 1e-6) {
                worst = std::max(worst, std::abs(if_trace[ti] - want) / std::abs(want));
            }
        }
    }
    return worst;
}

CoherentPeak measure_coherent_peak(std::uint64_t seed, const WaveformParams& params) {
    SplitMix64 r(seed);
    const PhaseSequence seq = generate_phase_sequence(r.next(), params);
    const double theta =
        two_pi * static_cast<double>(r.next_below(static_cast<std::uint64_t>(params.psk_order()))) /
        params.psk_order();
    const Frame frame = modulate_phases({theta}, params, seq);

    const SyncResult sync = synchronize(frame.passband, params, seq, Engine::ma2, 0.5);
    const double ideal = 0.5 * params.frame_symbol_span();

    CoherentPeak peak;
    peak.magnitude_dev = std::abs(std::abs(sync.peak_value) - ideal) / ideal;
    peak.phase_dev = wrapped_angle_dev(std::arg(sync.peak_value), theta);
    peak.tau_exact = sync.lock && sync.tau_star == params.frame_symbol_span() - 1;
    return peak;
}

PerStepOps measure_per_step_ops(Method method, const WaveformParams& params, std::uint64_t seed,
                                int steps) {
    const PhaseSequence seq = generate_phase_sequence(seed, params);
    const int warmup = 2 * params.frame_symbol_span() + 3;
    GaussianSource noise(seed ^ 0xBEEFu);

    OpCounter before, after;
    switch (method) {
        case Method::ma1: {
            Ma1Correlator c(params);
            std::int64_t tau = 0;
            for (int i = 0; i < warmup; ++i) c.step(noise.next(), tau++);
            before = c.ops();
            for (int i = 0; i < steps; ++i) c.step(noise.next(), tau++);
            after = c.ops();
            break;
        }
        case Method::ma2: {
            Ma2Correlator c(params, seq);
            std::int64_t tau = 0;
            for (int i = 0; i < warmup; ++i) c.step(noise.next(), tau++);
            before = c.ops();
            for (int i = 0; i < steps; ++i) c.step(noise.next(), tau++);
            after = c.ops();
            break;
        }
        case Method::ma3: {
            Ma3Correlator c(params, seq);
            std::int64_t tau = 0;
            int emitted = 0;
            while (emitted < warmup) {
                if (c.step(noise.next(), tau++)) ++emitted;
            }
            before = c.ops();
            for (int i = 0; i < steps; ++i) c.step(noise.next(), tau++);
            after = c.ops();
            break;
        }
        case Method::ma4: {
            Ma4Correlator c(params);
            std::int64_t tau = 0;
            for (int i = 0; i < warmup; ++i) c.step({noise.next(), noise.next()}, tau++);
            before = c.ops();
            for (int i = 0; i < steps; ++i) c.step({noise.next(), noise.next()}, tau++);
            after = c.ops();
            break;
        }
        case Method::ma5: {
            Ma5Correlator c(params, seq);
            std::int64_t tau = 0;
            for (int i = 0; i < warmup; ++i) c.step({noise.next(), noise.next()}, tau++);
            before = c.ops();
            for (int i = 0; i < steps; ++i) c.step({noise.next(), noise.next()}, tau++);
            after = c.ops();
            break;
        }
    }

    const auto adds = after.complex_adds - before.complex_adds;
    const auto muls = after.complex_muls - before.complex_muls;
    const auto reals = after.real_adds - before.real_adds;
    const auto n = static_cast<std::uint64_t>(steps);
    PerStepOps out;
    out.complex_adds = static_cast<double>(adds) / static_cast<double>(n);
    out.complex_muls = static_cast<double>(muls) / static_cast<double>(n);
    out.real_adds = static_cast<double>(reals) / static_cast<double>(n);
    out.exact = (adds % n == 0) && (muls % n == 0) && (reals % n == 0);
    return out;
}

namespace {

void check_ops(std::vector<CheckResult>& results, const WaveformParams& params, Method method,
               std::uint64_t seed, int want_adds, int want_muls, int want_reals) {
    const PerStepOps ops = measure_per_step_ops(method, params, seed, 977);
    const double mismatch = std::abs(ops.complex_adds - want_adds) +
                            std::abs(ops.complex_muls - want_muls) +
                            std::abs(ops.real_adds - want_reals);
    CheckResult r;
    r.name = "ops/" + to_string(method) + "/K=" + std::to_string(params.repetitions());
    r.measured = mismatch;
    r.bound = 0.0;
    r.pass = ops.exact && mismatch == 0.0;
    r.detail = "per step: " + std::to_string(ops.complex_adds) + " cadd, " +
               std::to_string(ops.complex_muls) + " cmul, " + std::to_string(ops.real_adds) +
               " radd";
    results.push_back(std::move(r));
}

} // namespace

std::vector<CheckResult> run_verification(std::uint64_t seed, const VerifyOptions& options) {
    std::vector<CheckResult> results;
    const WaveformParams base = validate_params(8, 4, 8, 4, 4);

    {
        CheckResult r;
        r.name = "equivalence/ma1-vs-direct";
        r.measured = max_rel_dev_ma1_vs_direct(seed, options.streams, options.stream_len, base);
        r.bound = 1e-9;
        r.pass = r.measured <= r.bound;
        r.detail = std::to_string(options.streams) + " random streams";
        results.push_back(std::move(r));
    }
    for (int reps : {2, 8, 16}) {
        const WaveformParams params = validate_params(8, 4, reps, 4, 4);
        CheckResult r;
        r.name = "equivalence/ma2-vs-direct/K=" + std::to_string(reps);
        r.measured = max_rel_dev_ma2_vs_direct(seed, options.streams, options.stream_len, params);
        r.bound = 1e-9;
        r.pass = r.measured <= r.bound;
        r.detail = std::to_string(options.streams) + " random streams";
        results.push_back(std::move(r));
    }

    double dev_at_p4 = 0.0, dev_at_p16 = 0.0;
    for (int p : {4, 8, 16}) {
        const Ma3Deviation dev = worst_ma3_deviation(seed, options.ma3_trials, 8, p);
        if (p == 4) dev_at_p4 = dev.phase;
        if (p == 16) dev_at_p16 = dev.phase;
        CheckResult rp;
        rp.name = "ma3/phase-bound/p=" + std::to_string(p);
        rp.measured = dev.phase;
        rp.bound = 1.0 / (p - 1);
        rp.pass = rp.measured <= rp.bound;
        rp.detail = std::to_string(options.ma3_trials) + " adversarial trials";
        results.push_back(std::move(rp));
        CheckResult rm;
        rm.name = "ma3/magnitude-bound/p=" + std::to_string(p);
        rm.measured = dev.magnitude;
        rm.bound = 1.0 / (p - 2);
        rm.pass = rm.measured <= rm.bound;
        rm.detail = std::to_string(options.ma3_trials) + " adversarial trials";
        results.push_back(std::move(rm));
    }
    {
        CheckResult r;
        r.name = "ma3/deviation-shrinks-with-p";
        r.measured = dev_at_p16;
        r.bound = dev_at_p4;
        r.pass = dev_at_p16 < dev_at_p4;
        r.detail = "worst phase deviation, p=16 vs p=4";
        results.push_back(std::move(r));
    }

    {
        CheckResult r;
        r.name = "equivalence/if-path-vs-carrier-path";
        r.measured = max_rel_dev_if_vs_carrier(seed, options.frames, base);
        r.bound = 1e-9;
        r.pass = r.measured <= r.bound;
        r.detail = std::to_string(options.frames) + " noisy random frames";
        results.push_back(std::move(r));
    }

    {
        double worst_mag = 0.0, worst_phase = 0.0;
        bool tau_ok = true;
        for (int reps : {1, 8}) {
            for (int order : {2, 4, 8}) {
                const WaveformParams params = validate_params(8, 4, reps, 4, order);
                const CoherentPeak peak =
                    measure_coherent_peak(seed + static_cast<std::uint64_t>(reps * 100 + order),
                                          params);
                worst_mag = std::max(worst_mag, peak.magnitude_dev);
                worst_phase = std::max(worst_phase, peak.phase_dev);
                tau_ok = tau_ok && peak.tau_exact;
            }
        }
        CheckResult r;
        r.name = "coherent-peak/magnitude-and-phase";
        r.measured = std::max(worst_mag, worst_phase);
        r.bound = 1e-9;
        r.pass = tau_ok && r.measured <= r.bound;
        r.detail = "K in {1,8}, M in {2,4,8}";
        results.push_back(std::move(r));
    }

    check_ops(results, validate_params(8, 4, 1, 4, 4), Method::ma1, seed, 2, 1, 0);
    check_ops(results, base, Method::ma2, seed, base.repetitions() + 1, base.repetitions() + 1, 0);
    check_ops(results, base, Method::ma3, seed, 2, 1, base.repetitions() - 1);
    check_ops(results, validate_params(8, 4, 1, 4, 4), Method::ma4, seed, 2, 0, 0);
    for (int reps : {1, 2, 8, 32}) {
        const WaveformParams params = validate_params(8, 4, reps, 4, 4);
        check_ops(results, params, Method::ma5, seed, 3 * reps - 1, reps, 0);
    }

    {
        SplitMix64 r(seed ^ 0x7EEEu);
        bool ok = true;
        double worst = 0.0;
        for (int n : {1, 2, 3, 8, 64}) {
            std::vector<cplx> parts(static_cast<std::size_t>(n));
            cplx seq_sum{};
            for (auto& v : parts) {
                v = {r.next_unit() - 0.5, r.next_unit() - 0.5};
                seq_sum += v;
            }
            const TreeReduction red = tree_reduce(parts);
            int want_depth = 0;
            while ((1 << want_depth) < n) ++want_depth;
            ok = ok && red.depth == want_depth;
            if (std::abs(seq_sum) > 1e-12) {
                worst = std::max(worst, std::abs(red.sum - seq_sum) / std::abs(seq_sum));
            }
        }
        CheckResult res;
        res.name = "tree-reduce/depth-and-sum";
        res.measured = worst;
        res.bound = 1e-12;
        res.pass = ok && worst <= res.bound;
        res.detail = "n in {1,2,3,8,64}, depth = ceil(log2 n)";
        results.push_back(std::move(res));
    }

    return results;
}

bool all_pass(const std::vector<CheckResult>& results) {
    return std::all_of(results.begin(), results.end(),
                       [](const CheckResult& r) { return r.pass; });
}

std::string verification_report_json(std::uint64_t seed,
                                     const std::vector<CheckResult>& results) {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["seed"] = seed;
    j["all_pass"] = all_pass(results);
    j["checks"] = nlohmann::json::array();
    for (const auto& r : results) {
        j["checks"].push_back({{"name", r.name},
                               {"measured", r.measured},
                               {"bound", r.bound},
                               {"pass", r.pass},
                               {"detail", r.detail}});
    }
    return j.dump(2);
}

} // namespace prpsk

// Acceptance suite: every release gate in one binary, one PASS/FAIL line per
// criterion, non-zero exit if anything fails. Tolerances are pinned here, not
// configurable.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include "prpsk/bench.hpp"
#include "prpsk/channel.hpp"
#include "prpsk/correlator_carrier.hpp"
#include "prpsk/modulator.hpp"
#include "prpsk/phase_sequence.hpp"
#include "prpsk/receiver.hpp"
#include "prpsk/rng.hpp"
#include "prpsk/verify.hpp"

using namespace prpsk;

namespace {

int failures = 0;

void report(int index, bool pass, const std::string& what, const std::string& detail) {
    std::printf("%s  %d. %s (%s)\n", pass ? "PASS" : "FAIL", index, what.c_str(),
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), pattern, a, b, c);
    return buf;
}

// --- criterion 1: single-window equivalence ------------------------------

void criterion_1() {
    const auto t0 = std::chrono::steady_clock::now();
    const WaveformParams p = validate_params(8, 4, 1, 4, 4);
    const double dev = max_rel_dev_ma1_vs_direct(101, 50, 10000, p);
    const double secs = seconds_since(t0);
    report(1, dev <= 1e-9 && secs < 10.0,
           "ma1 equals the direct correlation on 50 random streams",
           fmt("max rel dev %.3g <= 1e-9, %.1f s < 10 s", dev, secs));
}

// --- criterion 2: K-repetition equivalence -------------------------------

void criterion_2() {
    bool pass = true;
    std::string detail;
    for (int reps : {2, 8, 16}) {
        const WaveformParams p = validate_params(8, 4, reps, 4, 4);
        const double dev = max_rel_dev_ma2_vs_direct(202 + reps, 50, 10000, p);
        pass = pass && dev <= 1e-9;
        detail += fmt("K=%.0f: %.3g  ", reps, dev);
    }
    report(2, pass, "ma2 equals the direct correlation for K in {2,8,16}",
           "max rel dev " + detail + "<= 1e-9");
}

// --- criterion 3: ma3 error bounds ----------------------------------------

void criterion_3() {
    bool pass = true;
    std::string detail;
    for (int periods : {4, 8, 16}) {
        const Ma3Deviation dev = worst_ma3_deviation(303, 100, 8, periods);
        pass = pass && dev.phase <= 1.0 / (periods - 1) && dev.magnitude <= 1.0 / (periods - 2);
        char buf[128];
        std::snprintf(buf, sizeof(buf), "p=%d phase %.4f<=%.4f mag %.4f<=%.4f; ", periods,
                      dev.phase, 1.0 / (periods - 1), dev.magnitude, 1.0 / (periods - 2));
        detail += buf;
    }
    report(3, pass, "ma3 wrap-free error within 1/(p-1) phase and 1/(p-2) magnitude, 100/100 trials",
           detail);
}

// --- criterion 4: exact operation counts ----------------------------------

void criterion_4() {
    bool pass = true;
    std::string detail;
    auto check = [&](Method method, const WaveformParams& p, double adds, double muls,
                     double reals) {
        const PerStepOps ops = measure_per_step_ops(method, p, 404, 977);
        const bool ok = ops.exact && ops.complex_adds == adds && ops.complex_muls == muls &&
                        ops.real_adds == reals;
        pass = pass && ok;
        if (!ok) {
            char buf[128];
            std::snprintf(buf, sizeof(buf), "%s/K=%d got %g/%g/%g want %g/%g/%g; ",
                          to_string(method).c_str(), p.repetitions(), ops.complex_adds,
                          ops.complex_muls, ops.real_adds, adds, muls, reals);
            detail += buf;
        }
    };
    check(Method::ma1, validate_params(8, 4, 1, 4, 4), 2, 1, 0);
    check(Method::ma4, validate_params(8, 4, 1, 4, 4), 2, 0, 0);
    for (int reps : {1, 2, 8, 32}) {
        check(Method::ma5, validate_params(8, 4, reps, 4, 4), 3.0 * reps - 1, reps, 0);
    }
    {
        const WaveformParams p = validate_params(8, 4, 8, 4, 4);
        check(Method::ma3, p, 2, 1, p.repetitions() - 1);
    }
    if (detail.empty()) detail = "ma1 2/1, ma4 2/0, ma5 3K-1/K for K in {1,2,8,32}, ma3 1 cmul";
    report(4, pass, "steady-state per-sample op counters are exact", detail);
}

// --- criterion 5: asymptotic shape (timing) --------------------------------

void criterion_5() {
    const int samples = 250000;
    const int repeats = 13;
    bool pass = true;
    std::string detail;
    for (Method method : {Method::ma2, Method::ma5}) {
        double t_by_k[3] = {0, 0, 0};
        const int ks[3] = {8, 16, 32};
        for (int i = 0; i < 3; ++i) {
            const WaveformParams p = validate_params(8, 4, ks[i], 4, 4);
            t_by_k[i] = time_per_sample_ns(method, p, 505, samples, repeats);
        }
        const double rk1 = t_by_k[1] / t_by_k[0];
        const double rk2 = t_by_k[2] / t_by_k[1];

        const WaveformParams small_t = validate_params(8, 4, 8, 4, 4);       // T=32
        const WaveformParams large_t = validate_params(8, 128, 8, 128, 4);   // T=1024
        const double ts = time_per_sample_ns(method, small_t, 505, samples, repeats);
        const double tl = time_per_sample_ns(method, large_t, 505, samples, repeats);
        const double rt = std::max(ts, tl) / std::min(ts, tl);

        pass = pass && rk1 <= 1.5 && rk2 <= 1.5 && rt < 2.0;
        char buf[160];
        std::snprintf(buf, sizeof(buf),
                      "%s: K 8->16 %.2fx, 16->32 %.2fx (<=1.5), T 32<->1024 %.2fx (<2); ",
                      to_string(method).c_str(), rk1, rk2, rt);
        detail += buf;
    }
    report(5, pass, "per-sample time grows sublinearly per K doubling and is T-independent",
           detail);
}

// --- criterion 6: IF path vs carrier path ----------------------------------

void criterion_6() {
    const WaveformParams p = validate_params(8, 4, 8, 4, 4);
    const double dev = max_rel_dev_if_vs_carrier(606, 20, p);
    report(6, dev <= 1e-9, "downconvert+ma5 equals ma2 at corresponding indices on 20 frames",
           fmt("max rel dev %.3g <= 1e-9", dev));
}

// --- criterion 7: coherent peak --------------------------------------------

void criterion_7() {
    bool pass = true;
    double worst = 0.0;
    for (int reps : {1, 8}) {
        for (int order : {2, 4, 8}) {
            const WaveformParams p = validate_params(8, 4, reps, 4, order);
            for (std::uint64_t seed = 0; seed < 3; ++seed) {
                const CoherentPeak peak = measure_coherent_peak(
                    707 + seed + static_cast<std::uint64_t>(reps * 10 + order), p);
                worst = std::max({worst, peak.magnitude_dev, peak.phase_dev});
                pass = pass && peak.tau_exact && peak.magnitude_dev <= 1e-9 &&
                       peak.phase_dev <= 1e-9;
            }
        }
    }
    report(7, pass, "matched noiseless peak is (K*T/2)*e^{j*theta} for K in {1,8}, M in {2,4,8}",
           fmt("worst dev %.3g <= 1e-9", worst));
}

// --- criterion 8: interference suppression ----------------------------------

void criterion_8() {
    bool pass = true;
    std::string detail;
    double prev_ratio = 0.0;
    for (int reps : {8, 16, 32}) {
        const WaveformParams p = validate_params(8, 4, reps, 4, 4);
        const double ideal = 0.5 * p.frame_symbol_span();
        double mismatched_sum = 0.0;
        double matched_sum = 0.0;
        const int seeds = 200;
        for (int s = 0; s < seeds; ++s) {
            const std::uint64_t seed = 808 + static_cast<std::uint64_t>(s);
            const PhaseSequence sa = generate_phase_sequence(seed, p);
            const PhaseSequence sb = generate_phase_sequence(seed ^ 0xD1CEu, p);
            SplitMix64 r(seed);
            const double theta =
                2.0 * std::numbers::pi * static_cast<double>(r.next_below(4)) / 4.0;
            const PassbandBuffer y = synth_symbol(theta, p, sa);
            matched_sum += std::abs(correlate_direct(y, 0, p, sa));
            mismatched_sum += std::abs(correlate_direct(y, 0, p, sb));
        }
        const double ratio = (matched_sum / seeds) / (mismatched_sum / seeds);
        const double target = 2.0 * std::sqrt(static_cast<double>(reps) / std::numbers::pi);
        const bool in_band = ratio >= 0.75 * target && ratio <= 1.25 * target;
        pass = pass && in_band && ratio > prev_ratio && std::abs(matched_sum / seeds - ideal) < 1e-6;
        prev_ratio = ratio;
        char buf[96];
        std::snprintf(buf, sizeof(buf), "K=%d ratio %.2f target %.2f; ", reps, ratio, target);
        detail += buf;
    }
    report(8, pass, "matched/mismatched peak ratio tracks 2*sqrt(K/pi) +-25% and grows with K",
           detail);
}

// --- criterion 9: loopback ---------------------------------------------------

void criterion_9(double elapsed_so_far) {
    bool pass = true;
    int runs = 0;
    for (int reps : {1, 2, 8, 16}) {
        for (int order : {2, 4, 8}) {
            const WaveformParams p = validate_params(8, 4, reps, 4, order);
            for (std::uint64_t seed = 0; seed < 20; ++seed) {
                const std::uint64_t base =
                    909 + seed * 97 + static_cast<std::uint64_t>(reps * 1000 + order);
                const PhaseSequence seq = generate_phase_sequence(base, p);
                SplitMix64 r(base ^ 0xB175u);
                std::vector<std::uint8_t> bits(
                    static_cast<std::size_t>(3 * p.bits_per_symbol()));
                for (auto& b : bits) b = static_cast<std::uint8_t>(r.next_below(2));

                std::vector<double> phases{0.0};
                const auto data = map_bits_to_phases(bits, order);
                phases.insert(phases.end(), data.begin(), data.end());
                const Frame frame = modulate_phases(phases, p, seq);

                ChannelSpec identity;
                identity.entries.push_back({0, 0, 1.0});
                const PassbandBuffer rx = apply_channel({frame.passband}, identity);

                const auto trace = correlate_stream(rx, p, seq, Engine::ma2);
                const SyncResult sync = synchronize_trace(trace, 0.5 * p.frame_symbol_span(), 0.5,
                                                          p.frame_symbol_span());
                bool ok = sync.lock;
                if (ok) {
                    const auto got = demodulate_trace(trace, sync, 4, p.frame_symbol_span(),
                                                      order);
                    ok = got == bits;
                }
                pass = pass && ok;
                ++runs;
            }
        }
    }
    report(9, pass && elapsed_so_far < 300.0,
           "modulate -> identity channel -> synchronize -> demodulate is the identity on bits",
           fmt("%.0f loopbacks exact, suite %.1f s < 300 s", static_cast<double>(runs),
               elapsed_so_far));
}

} // namespace

int main() {
    const auto t0 = std::chrono::steady_clock::now();
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9(seconds_since(t0));
    std::printf("%s: %d criteria failed, total %.1f s\n", failures == 0 ? "OK" : "FAILED",
                failures, seconds_since(t0));
    return failures == 0 ? 0 : 1;
}

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "prpsk/op_counter.hpp"
#include "prpsk/params.hpp"

namespace prpsk {

/// One verification check: a measured deviation (or count mismatch) against
/// its allowed bound.
struct CheckResult {
    std::string name;
    double measured = 0.0;
    double bound = 0.0;
    bool pass = false;
    std::string detail;
};

struct VerifyOptions {
    int streams = 10;       // random streams per equivalence check
    int stream_len = 4000;  // samples per stream
    int ma3_trials = 100;   // adversarial trials per periods-per-symbol value
    int frames = 10;        // frames for the cross-path check
};

/// Runs the equivalence, error-bound and operation-count suites on seeded
/// random inputs. Deterministic for a given (seed, options).
std::vector<CheckResult> run_verification(std::uint64_t seed, const VerifyOptions& options);

bool all_pass(const std::vector<CheckResult>& results);
std::string verification_report_json(std::uint64_t seed, const std::vector<CheckResult>& results);

// ---- individual measurements (also used by the acceptance suite) ----

/// Worst relative deviation of the sliding single-window correlator from the
/// direct correlation (K=1, zero shift) over seeded random streams; checked
/// for every tau >= T-1 with |direct| > 1e-6.
double max_rel_dev_ma1_vs_direct(std::uint64_t seed, int n_streams, int stream_len,
                                 const WaveformParams& params);

/// Same for the K-repetition correlator against the direct correlation at
/// tau - K*T + 1, with a fresh random shift sequence per stream.
double max_rel_dev_ma2_vs_direct(std::uint64_t seed, int n_streams, int stream_len,
                                 const WaveformParams& params);

struct Ma3Deviation {
    double phase = 0.0;      // worst |arg(ma3) - arg(ma2)| at the aligned sample
    double magnitude = 0.0;  // worst ||ma3| - |ma2|| / |ma2|
};

/// Adversarial wrap-error measurement: shifts m_0 = 0, m_k = S-1, two
/// consecutive symbols a half-turn apart, randomized K and padding, compared
/// at the aligned sample of the first symbol of the pair.
Ma3Deviation worst_ma3_deviation(std::uint64_t seed, int trials, int samples_per_period,
                                 int periods_per_symbol);

/// Worst relative deviation between the IF pipeline (downconvert + ma5) and
/// the carrier pipeline (ma2) at corresponding indices over seeded noisy
/// random frames.
double max_rel_dev_if_vs_carrier(std::uint64_t seed, int n_frames,
                                 const WaveformParams& params);

struct CoherentPeak {
    double magnitude_dev = 0.0;  // ||peak| - K*T/2| / (K*T/2)
    double phase_dev = 0.0;      // |arg(peak) - theta|, wrapped
    bool tau_exact = false;      // peak found at frame_start + K*T - 1
};

/// Synchronizes on a noiseless single-symbol frame with a random sequence
/// and data phase and measures the peak against the ideal (K*T/2)*e^{j*theta}.
CoherentPeak measure_coherent_peak(std::uint64_t seed, const WaveformParams& params);

/// Per-step steady-state operation tallies, measured as the counter delta
/// over n steps after a warm-up, divided by n. exact is true when the delta
/// is n times an integer constant.
struct PerStepOps {
    double complex_adds = 0.0;
    double complex_muls = 0.0;
    double real_adds = 0.0;
    bool exact = false;
};

enum class Method { ma1, ma2, ma3, ma4, ma5 };
std::string to_string(Method method);

PerStepOps measure_per_step_ops(Method method, const WaveformParams& params, std::uint64_t seed,
                                int steps);

} // namespace prpsk

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "prpsk/verify.hpp"

namespace prpsk {

/// One bench measurement: exact steady-state complex-op counts plus the
/// best-of-N wall-clock per processed sample (carrier samples for ma1-ma3, IF
/// samples for ma4/ma5).
struct BenchRow {
    std::string method;
    int repetitions = 1;        // K (1 for the K-free methods)
    int samples_per_symbol = 0; // T
    double adds_per_sample = 0.0;
    double muls_per_sample = 0.0;
    double ns_per_sample = 0.0;
};

struct BenchOptions {
    std::vector<std::string> methods = {"ma1", "ma2", "ma3", "ma4", "ma5"};
    std::vector<int> reps_sweep = {1, 2, 4, 8, 16, 32};
    std::vector<int> symbol_lens = {32, 256, 1024};
    int samples_per_period = 8;
    int samples = 200000;  // timed samples per repeat
    int repeats = 7;       // best-of over this many timed runs
    std::uint64_t seed = 1;
};

/// Sweeps methods over (K, T); rows come back sorted by (method, K, T)
/// regardless of execution order. K-free methods get a single K=1 row per T.
std::vector<BenchRow> run_bench(const BenchOptions& options);

/// Header "method,K,T,adds_per_sample,muls_per_sample,ns_per_sample".
std::string bench_csv(const std::vector<BenchRow>& rows);

/// Best-of-N wall-clock per sample for one method/configuration (used for the
/// scaling checks without paying for a full sweep).
double time_per_sample_ns(Method method, const WaveformParams& params, std::uint64_t seed,
                          int samples, int repeats);

} // namespace prpsk

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "prpsk/buffers.hpp"
#include "prpsk/carrier_lut.hpp"
#include "prpsk/op_counter.hpp"
#include "prpsk/params.hpp"
#include "prpsk/phase_sequence.hpp"

namespace prpsk {

/// Digital model of the radio front end: ideal integrate-and-dump
/// downconversion. Each IF sample sums D = T/G consecutive mixed passband
/// samples,
///   y_c(tau) = sum_{u<D} y(tau*D + u) * e^{-j*2*pi*(tau*D+u)/S},
/// with S | D, so a matched carrier block comes out as exactly (D/2)*e^{j*theta}
/// and a moving sum of G consecutive IF samples reproduces the carrier-rate
/// ma1 output at sample (tau+1)*D-1. Front-end arithmetic is not counted; the
/// IF correlators' budgets start at the IF sample stream.
IfBuffer downconvert(const PassbandBuffer& y, const WaveformParams& params);

/// Sliding G-window sum at the IF rate ("ma4"):
///   rho(tau) = rho(tau-1) + y_c(tau) - y_c(tau-G),
/// two complex additions per sample and no multiplications.
class Ma4Correlator {
public:
    explicit Ma4Correlator(const WaveformParams& params);

    cplx step(cplx yc, std::int64_t tau);

    const OpCounter& ops() const { return ops_; }
    static constexpr int adds_per_step = 2;
    static constexpr int muls_per_step = 0;

private:
    std::vector<double> ring_re_, ring_im_;  // last G IF samples, I/Q split
    std::size_t head_ = 0;
    double sum_re_ = 0.0, sum_im_ = 0.0;
    std::int64_t next_tau_ = 0;
    std::int64_t resync_left_ = kResyncInterval;
    OpCounter ops_;
};

/// K-repetition correlator at the IF rate ("ma5"): K sliding G-window sums,
/// one per repetition delay, fed from a shared ring of input samples, then
///   rho(tau) = sum_k window_k(tau) * e^{j*phi_{K-1-k}}
/// combined with a balanced pairwise reduction. Each of the K windows updates
/// with 2 additions and the combine takes K rotations and K-1 additions:
/// exactly 3K-1 complex additions and K complex multiplications per sample.
/// The K rotated partials are independent of each other, so a parallel
/// implementation can evaluate them concurrently and combine in ceil(log2 K)
/// steps; this implementation is sequential but performs the same reduction.
class Ma5Correlator {
public:
    Ma5Correlator(const WaveformParams& params, const PhaseSequence& sequence);

    cplx step(cplx yc, std::int64_t tau);

    const OpCounter& ops() const { return ops_; }
    int adds_per_step() const { return 3 * reps_ - 1; }
    int muls_per_step() const { return reps_; }

private:
    // Input history as G rows of K+1 symbol-slot columns, rows mirrored to
    // 2(K+1) entries: the K+1 taps tau - k*G all live in the current row and
    // read as one contiguous slice. win_[i] is the sliding window sum over
    // (tau - (K-1-i)*G - G, tau - (K-1-i)*G]; w_[i] = e^{j*phi_i}.
    std::vector<double> hist_re_, hist_im_;
    std::vector<double> win_re_, win_im_;
    std::vector<double> w_re_, w_im_;
    std::vector<double> part_re_, part_im_;  // scratch for the reduction
    std::size_t row_ = 0;  // tau mod G
    std::size_t col_ = 0;  // (tau / G) mod (K+1)
    std::int64_t next_tau_ = 0;
    std::int64_t resync_left_ = kResyncInterval;
    int reps_;
    int group_;  // G
    OpCounter ops_;
};

struct TreeReduction {
    cplx sum{};
    int depth = 0;  // combining steps along the critical path, ceil(log2 n)
};

/// Balanced pairwise sum of the given partials: n-1 additions arranged in
/// ceil(log2 n) rounds. Throws Errc::empty_input for an empty span.
TreeReduction tree_reduce(std::span<const cplx> partials);

} // namespace prpsk

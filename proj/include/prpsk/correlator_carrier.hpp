#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "prpsk/buffers.hpp"
#include "prpsk/carrier_lut.hpp"
#include "prpsk/op_counter.hpp"
#include "prpsk/params.hpp"
#include "prpsk/phase_sequence.hpp"

namespace prpsk {

/// Reference correlation evaluated by definition: the forward window
/// [tau, tau + K*T) is read with the repetition-k pattern advanced by m_k
/// samples (wrapped cyclically inside the T-window) and multiplied by the
/// conjugate carrier. The reference carrier is anchored at stream origin,
/// e^{-j*2*pi*(tau+t)/S}, so the streaming correlators below match it at
/// every tau, not just at period boundaries. Reads outside the buffer are 0.
///
/// This is the O(K*T)-per-point baseline the sliding correlators are checked
/// against; its per-point cost is exactly T complex multiplications.
cplx correlate_direct(const PassbandBuffer& y, std::int64_t tau, const WaveformParams& params,
                      const PhaseSequence& sequence);

/// Sliding single-window correlator ("ma1"): one complex product per input
/// sample, the previous T products kept in a ring so the window sum
/// rho(tau) = rho(tau-1) + y(tau)*e^{-j*2*pi*tau/S} - (evicted product)
/// updates in one multiplication and two additions. After T samples the
/// output over the trailing window (tau-T, tau] equals correlate_direct with
/// K=1 (zero shift) at tau-T+1.
class Ma1Correlator {
public:
    explicit Ma1Correlator(const WaveformParams& params);

    /// Feed y(tau); tau must advance by exactly 1 per call (first call: 0).
    /// Throws Errc::out_of_order_feed otherwise.
    cplx step(double y, std::int64_t tau);

    const OpCounter& ops() const { return ops_; }
    static constexpr int adds_per_step = 2;
    static constexpr int muls_per_step = 1;

private:
    // I/Q kept in split arrays; the product ring and the carrier table share
    // one cursor since both are indexed by tau mod T.
    std::vector<double> lut_re_, lut_im_;
    std::vector<double> ring_re_, ring_im_;
    std::size_t cur_ = 0;
    double sum_re_ = 0.0, sum_im_ = 0.0;
    std::int64_t next_tau_ = 0;
    std::int64_t resync_left_ = kResyncInterval;
    OpCounter ops_;
};

/// K-repetition sliding correlator ("ma2"): one shared ma1 stream plus a ring
/// of its last K*T outputs. Each step combines the K taps delayed by whole
/// symbol lengths,
///   rho(tau) = sum_k ma1(tau - k*T) * e^{j*phi_{K-1-k}},
/// the tap delayed by k*T covering repetition K-1-k of the frame, which is
/// why the rotation order is reversed relative to the repetition order.
/// After K*T samples the output equals correlate_direct at tau - K*T + 1.
///
/// Steady-state cost, counted: K+1 complex multiplications (K rotations plus
/// the ma1 carrier product) and K+1 complex additions (2 in ma1, K-1 to
/// combine).
class Ma2Correlator {
public:
    Ma2Correlator(const WaveformParams& params, const PhaseSequence& sequence);

    cplx step(double y, std::int64_t tau);

    OpCounter ops() const { return ma1_.ops() + outer_ops_; }
    int adds_per_step() const { return reps_ + 1; }
    int muls_per_step() const { return reps_ + 1; }

private:
    Ma1Correlator ma1_;
    // The last K*T ma1 outputs arranged as T rows of K symbol-slot columns,
    // each row mirrored to 2K entries so the K taps tau - k*T (all in the
    // current row) are one contiguous slice regardless of the write cursor.
    std::vector<double> hist_re_, hist_im_;
    std::vector<double> w_re_, w_im_;  // slice weights e^{j*phi_j}, repetition order
    std::size_t row_ = 0;  // tau mod T
    std::size_t col_ = 0;  // (tau / T) mod K
    int reps_;
    int stride_;  // T
    OpCounter outer_ops_;
};

struct Ma3Output {
    std::int64_t tau = 0;
    cplx value{};
};

/// Multiplication-free variant ("ma3"): the K shifted taps are summed as raw
/// real samples first,
///   g(tau) = sum_k y(tau - k*T + m'_k),   m'_k = m_{K-1-k},
/// and only the group sum is rotated onto the carrier, so each emitted point
/// costs exactly one complex multiplication, two complex additions and K-1
/// real additions. The shifts are applied without wrapping at the window
/// edge, which reads up to S-1 samples past each repetition; emission is
/// therefore delayed by max_k(m_k) samples behind the input, and the result
/// deviates from ma2 by a bounded error: at most 1/(p-1) in phase and
/// 1/(p-2) in relative magnitude for p carrier periods per symbol.
class Ma3Correlator {
public:
    Ma3Correlator(const WaveformParams& params, const PhaseSequence& sequence);

    /// Feed y(tau); returns the correlation for tau - delay() once enough
    /// input has arrived, std::nullopt during the initial delay.
    std::optional<Ma3Output> step(double y, std::int64_t tau);

    /// Emission lag behind the newest input sample, max_k(m_k) <= S-1.
    std::int64_t delay() const { return delay_; }

    const OpCounter& ops() const { return ops_; }
    static constexpr int adds_per_step = 2;
    static constexpr int muls_per_step = 1;
    int real_adds_per_step() const { return reps_ - 1; }

private:
    CarrierLut lut_;
    std::vector<double> raw_;         // last K*T input samples
    std::vector<cplx> group_ring_;    // last T weighted group sums
    std::vector<std::int64_t> tap_offsets_;  // m_{K-1-k} - k*T
    cplx sum_{};
    std::int64_t delay_ = 0;
    std::int64_t next_tau_ = 0;
    std::int64_t raw_span_ = 0;
    std::int64_t resync_left_ = kResyncInterval;
    int reps_;
    int window_;  // T
    OpCounter ops_;
};

} // namespace prpsk

#include "prpsk/correlator_carrier.hpp"

#include <string>

#include "prpsk/error.hpp"

namespace prpsk {

namespace {

void check_in_order(std::int64_t got, std::int64_t want) {
    if (got != want) {
        throw Error(Errc::out_of_order_feed,
                    "correlator fed tau=" + std::to_string(got) + ", expected " +
                        std::to_string(want));
    }
}

} // namespace

cplx correlate_direct(const PassbandBuffer& y, std::int64_t tau, const WaveformParams& params,
                      const PhaseSequence& sequence) {
    const int S = params.samples_per_period();
    const int T = params.samples_per_symbol();
    const int K = params.repetitions();
    const CarrierLut lut(S, T);
    cplx acc{};
    for (int t = 0; t < T; ++t) {
        double inner = 0.0;
        for (int k = 0; k < K; ++k) {
            const int m = sequence.shift(k);
            const int off = (t + m < T) ? t + m : t + m - T;
            inner += y.at(tau + static_cast<std::int64_t>(k) * T + off);
        }
        acc += inner * lut.at(tau + t);
    }
    return acc;
}

// ---------------------------------------------------------------- Ma1

Ma1Correlator::Ma1Correlator(const WaveformParams& params)
    : ring_re_(static_cast<std::size_t>(params.samples_per_symbol()), 0.0),
      ring_im_(static_cast<std::size_t>(params.samples_per_symbol()), 0.0) {
    const CarrierLut lut(params);
    lut_re_.resize(static_cast<std::size_t>(lut.size()));
    lut_im_.resize(static_cast<std::size_t>(lut.size()));
    for (std::int64_t t = 0; t < lut.size(); ++t) {
        lut_re_[static_cast<std::size_t>(t)] = lut.at(t).real();
        lut_im_[static_cast<std::size_t>(t)] = lut.at(t).imag();
    }
}

cplx Ma1Correlator::step(double y, std::int64_t tau) {
    check_in_order(tau, next_tau_);
    ++next_tau_;

    const double prod_re = y * lut_re_[cur_];
    const double prod_im = y * lut_im_[cur_];
    sum_re_ += prod_re;
    sum_im_ += prod_im;
    sum_re_ -= ring_re_[cur_];
    sum_im_ -= ring_im_[cur_];
    ring_re_[cur_] = prod_re;
    ring_im_[cur_] = prod_im;
    if (++cur_ == ring_re_.size()) cur_ = 0;

    ops_.complex_muls += 1;
    ops_.complex_adds += 2;

    if (--resync_left_ == 0) {
        resync_left_ = kResyncInterval;
        double re = 0.0, im = 0.0;
        for (std::size_t i = 0; i < ring_re_.size(); ++i) {
            re += ring_re_[i];
            im += ring_im_[i];
        }
        sum_re_ = re;
        sum_im_ = im;
    }
    return {sum_re_, sum_im_};
}

// ---------------------------------------------------------------- Ma2

Ma2Correlator::Ma2Correlator(const WaveformParams& params, const PhaseSequence& sequence)
    : ma1_(params),
      hist_re_(static_cast<std::size_t>(params.samples_per_symbol()) * 2 *
                   static_cast<std::size_t>(params.repetitions()),
               0.0),
      hist_im_(hist_re_.size(), 0.0),
      reps_(params.repetitions()),
      stride_(params.samples_per_symbol()) {
    w_re_.resize(static_cast<std::size_t>(reps_));
    w_im_.resize(static_cast<std::size_t>(reps_));
    for (int j = 0; j < reps_; ++j) {
        const cplx r = std::polar(1.0, sequence.phase(j));
        w_re_[static_cast<std::size_t>(j)] = r.real();
        w_im_[static_cast<std::size_t>(j)] = r.imag();
    }
}

cplx Ma2Correlator::step(double y, std::int64_t tau) {
    const cplx latest = ma1_.step(y, tau);

    const std::size_t reps = static_cast<std::size_t>(reps_);
    double* hr = hist_re_.data() + row_ * 2 * reps;
    double* hi = hist_im_.data() + row_ * 2 * reps;
    hr[col_] = latest.real();
    hr[col_ + reps] = latest.real();
    hi[col_] = latest.imag();
    hi[col_ + reps] = latest.imag();

    // Slice position j holds the output delayed by (K-1-j)*T, so the weight
    // table runs in repetition order. Two accumulator chains keep the
    // multiply-adds independent.
    const double* tr = hr + col_ + 1;
    const double* ti = hi + col_ + 1;
    double ar0 = 0.0, ai0 = 0.0, ar1 = 0.0, ai1 = 0.0;
    std::size_t j = 0;
    for (; j + 1 < reps; j += 2) {
        ar0 += w_re_[j] * tr[j] - w_im_[j] * ti[j];
        ai0 += w_re_[j] * ti[j] + w_im_[j] * tr[j];
        ar1 += w_re_[j + 1] * tr[j + 1] - w_im_[j + 1] * ti[j + 1];
        ai1 += w_re_[j + 1] * ti[j + 1] + w_im_[j + 1] * tr[j + 1];
    }
    if (j < reps) {
        ar0 += w_re_[j] * tr[j] - w_im_[j] * ti[j];
        ai0 += w_re_[j] * ti[j] + w_im_[j] * tr[j];
    }
    outer_ops_.complex_muls += static_cast<std::uint64_t>(reps_);
    outer_ops_.complex_adds += static_cast<std::uint64_t>(reps_ - 1);

    if (++row_ == static_cast<std::size_t>(stride_)) {
        row_ = 0;
        if (++col_ == reps) col_ = 0;
    }
    return {ar0 + ar1, ai0 + ai1};
}

// ---------------------------------------------------------------- Ma3

Ma3Correlator::Ma3Correlator(const WaveformParams& params, const PhaseSequence& sequence)
    : lut_(params),
      raw_(static_cast<std::size_t>(params.frame_symbol_span()), 0.0),
      group_ring_(static_cast<std::size_t>(params.samples_per_symbol()), cplx{}),
      raw_span_(params.frame_symbol_span()),
      reps_(params.repetitions()),
      window_(params.samples_per_symbol()) {
    tap_offsets_.resize(static_cast<std::size_t>(reps_));
    for (int k = 0; k < reps_; ++k) {
        const int m = sequence.shift(reps_ - 1 - k);
        tap_offsets_[static_cast<std::size_t>(k)] =
            static_cast<std::int64_t>(m) - static_cast<std::int64_t>(k) * window_;
        delay_ = std::max<std::int64_t>(delay_, sequence.shift(k));
    }
}

std::optional<Ma3Output> Ma3Correlator::step(double y, std::int64_t tau) {
    check_in_order(tau, next_tau_);
    ++next_tau_;

    raw_[static_cast<std::size_t>(tau % raw_span_)] = y;
    if (tau < delay_) return std::nullopt;

    const std::int64_t emit = tau - delay_;

    // Group sum of the K shifted taps; raw real additions, no complex math.
    double group = 0.0;
    for (std::int64_t off : tap_offsets_) {
        const std::int64_t idx = emit + off;
        if (idx >= 0) group += raw_[static_cast<std::size_t>(idx % raw_span_)];
    }
    ops_.real_adds += static_cast<std::uint64_t>(reps_ - 1);

    const cplx weighted = group * lut_.at(emit);
    ops_.complex_muls += 1;

    const std::size_t slot = static_cast<std::size_t>(emit % window_);
    const cplx evicted = group_ring_[slot];
    group_ring_[slot] = weighted;
    sum_ += weighted;
    sum_ -= evicted;
    ops_.complex_adds += 2;

    if (--resync_left_ == 0) {
        resync_left_ = kResyncInterval;
        cplx fresh{};
        for (const cplx& v : group_ring_) fresh += v;
        sum_ = fresh;
    }
    return Ma3Output{emit, sum_};
}

} // namespace prpsk

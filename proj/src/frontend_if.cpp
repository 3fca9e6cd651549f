#include "prpsk/frontend_if.hpp"

#include <string>

#include "prpsk/error.hpp"

namespace prpsk {

namespace {

void check_in_order(std::int64_t got, std::int64_t want) {
    if (got != want) {
        throw Error(Errc::out_of_order_feed,
                    "IF correlator fed tau=" + std::to_string(got) + ", expected " +
                        std::to_string(want));
    }
}

/// In-place balanced pairwise reduction, n-1 additions in ceil(log2 n)
/// rounds; each round adds the upper half onto the lower. Returns the round
/// count.
int fold_rounds(double* __restrict__ re, double* __restrict__ im, std::size_t n) {
    int rounds = 0;
    while (n > 1) {
        const std::size_t upper = (n + 1) / 2;
        for (std::size_t i = 0; i < n - upper; ++i) {
            re[i] += re[i + upper];
            im[i] += im[i + upper];
        }
        n = upper;
        ++rounds;
    }
    return rounds;
}

} // namespace

IfBuffer downconvert(const PassbandBuffer& y, const WaveformParams& params) {
    const int D = params.decimation();
    const CarrierLut lut(params.samples_per_period(), params.samples_per_symbol());
    const std::int64_t n_if = y.size() / D;
    IfBuffer out(static_cast<std::size_t>(n_if));
    for (std::int64_t tau = 0; tau < n_if; ++tau) {
        cplx acc{};
        const std::int64_t base = tau * D;
        for (int u = 0; u < D; ++u) acc += y.at(base + u) * lut.at(base + u);
        out[static_cast<std::size_t>(tau)] = acc;
    }
    return out;
}

// ---------------------------------------------------------------- Ma4

Ma4Correlator::Ma4Correlator(const WaveformParams& params)
    : ring_re_(static_cast<std::size_t>(params.if_samples_per_symbol()), 0.0),
      ring_im_(static_cast<std::size_t>(params.if_samples_per_symbol()), 0.0) {}

cplx Ma4Correlator::step(cplx yc, std::int64_t tau) {
    check_in_order(tau, next_tau_);
    ++next_tau_;

    sum_re_ += yc.real();
    sum_im_ += yc.imag();
    sum_re_ -= ring_re_[head_];  // y_c(tau - G)
    sum_im_ -= ring_im_[head_];
    ring_re_[head_] = yc.real();
    ring_im_[head_] = yc.imag();
    if (++head_ == ring_re_.size()) head_ = 0;
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

// ---------------------------------------------------------------- Ma5

Ma5Correlator::Ma5Correlator(const WaveformParams& params, const PhaseSequence& sequence)
    : hist_re_(static_cast<std::size_t>(params.if_samples_per_symbol()) * 2 *
                   static_cast<std::size_t>(params.repetitions() + 1),
               0.0),
      hist_im_(hist_re_.size(), 0.0),
      win_re_(static_cast<std::size_t>(params.repetitions()), 0.0),
      win_im_(static_cast<std::size_t>(params.repetitions()), 0.0),
      part_re_(static_cast<std::size_t>(params.repetitions()), 0.0),
      part_im_(static_cast<std::size_t>(params.repetitions()), 0.0),
      reps_(params.repetitions()),
      group_(params.if_samples_per_symbol()) {
    w_re_.resize(static_cast<std::size_t>(reps_));
    w_im_.resize(static_cast<std::size_t>(reps_));
    for (int i = 0; i < reps_; ++i) {
        const cplx r = std::polar(1.0, sequence.phase(i));
        w_re_[static_cast<std::size_t>(i)] = r.real();
        w_im_[static_cast<std::size_t>(i)] = r.imag();
    }
}

cplx Ma5Correlator::step(cplx yc, std::int64_t tau) {
    check_in_order(tau, next_tau_);
    ++next_tau_;

    const std::size_t reps = static_cast<std::size_t>(reps_);
    const std::size_t slots = reps + 1;
    double* hr = hist_re_.data() + row_ * 2 * slots;
    double* hi = hist_im_.data() + row_ * 2 * slots;
    hr[col_] = yc.real();
    hr[col_ + slots] = yc.real();
    hi[col_] = yc.imag();
    hi[col_ + slots] = yc.imag();

    // Slice position j holds y_c(tau - (K-j)*G); window i slides by adding
    // its newest sample s[i+1] and dropping s[i], one symbol span older.
    const double* __restrict__ sr = hr + col_ + 1;
    const double* __restrict__ si = hi + col_ + 1;
    double* __restrict__ wr = win_re_.data();
    double* __restrict__ wi = win_im_.data();
    for (std::size_t i = 0; i < reps; ++i) {
        wr[i] += sr[i + 1] - sr[i];
    }
    for (std::size_t i = 0; i < reps; ++i) {
        wi[i] += si[i + 1] - si[i];
    }
    double* __restrict__ pr = part_re_.data();
    double* __restrict__ pi = part_im_.data();
    const double* __restrict__ cr = w_re_.data();
    const double* __restrict__ ci = w_im_.data();
    for (std::size_t i = 0; i < reps; ++i) {
        pr[i] = cr[i] * wr[i] - ci[i] * wi[i];
        pi[i] = cr[i] * wi[i] + ci[i] * wr[i];
    }
    fold_rounds(pr, pi, reps);
    ops_.complex_adds += static_cast<std::uint64_t>(3 * reps_ - 1);
    ops_.complex_muls += static_cast<std::uint64_t>(reps_);

    if (--resync_left_ == 0) {
        resync_left_ = kResyncInterval;
        for (int i = 0; i < reps_; ++i) {
            double re = 0.0, im = 0.0;
            for (int g = 0; g < group_; ++g) {
                const std::int64_t at = tau - static_cast<std::int64_t>(reps_ - 1 - i) * group_ - g;
                if (at < 0) continue;
                const std::size_t r = static_cast<std::size_t>(at % group_);
                const std::size_t c =
                    static_cast<std::size_t>((at / group_) % static_cast<std::int64_t>(slots));
                re += hist_re_[r * 2 * slots + c];
                im += hist_im_[r * 2 * slots + c];
            }
            win_re_[static_cast<std::size_t>(i)] = re;
            win_im_[static_cast<std::size_t>(i)] = im;
        }
    }

    if (++row_ == static_cast<std::size_t>(group_)) {
        row_ = 0;
        if (++col_ == slots) col_ = 0;
    }
    return {part_re_[0], part_im_[0]};
}

TreeReduction tree_reduce(std::span<const cplx> partials) {
    if (partials.empty()) {
        throw Error(Errc::empty_input, "tree_reduce needs at least one value");
    }
    std::vector<double> re(partials.size()), im(partials.size());
    for (std::size_t i = 0; i < partials.size(); ++i) {
        re[i] = partials[i].real();
        im[i] = partials[i].imag();
    }
    TreeReduction result;
    result.depth = fold_rounds(re.data(), im.data(), partials.size());
    result.sum = {re[0], im[0]};
    return result;
}

} // namespace prpsk

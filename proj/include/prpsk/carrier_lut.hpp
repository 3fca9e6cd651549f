#pragma once

#include <cstdint>
#include <vector>

#include "prpsk/buffers.hpp"
#include "prpsk/params.hpp"

namespace prpsk {

/// Precomputed reference carrier e^{-j*2*pi*t/S} for t in [0, T). The carrier
/// has period S and S | T, so the table holds S distinct values repeated p
/// times; entries are computed from t mod S, which makes the periodicity
/// table[t] == table[t mod S] exact. Lookups count as zero operations.
class CarrierLut {
public:
    explicit CarrierLut(const WaveformParams& params);
    CarrierLut(int samples_per_period, int samples_per_symbol);

    cplx at(std::int64_t tau) const { return table_[static_cast<std::size_t>(tau % size_)]; }
    cplx operator[](std::size_t t) const { return table_[t]; }
    std::int64_t size() const { return size_; }

private:
    std::vector<cplx> table_;
    std::int64_t size_ = 0;
};

} // namespace prpsk

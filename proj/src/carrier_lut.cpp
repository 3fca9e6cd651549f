#include "prpsk/carrier_lut.hpp"

#include <numbers>

namespace prpsk {

CarrierLut::CarrierLut(const WaveformParams& params)
    : CarrierLut(params.samples_per_period(), params.samples_per_symbol()) {}

CarrierLut::CarrierLut(int samples_per_period, int samples_per_symbol)
    : table_(static_cast<std::size_t>(samples_per_symbol)), size_(samples_per_symbol) {
    for (int t = 0; t < samples_per_symbol; ++t) {
        const double angle = -2.0 * std::numbers::pi * static_cast<double>(t % samples_per_period) /
                             static_cast<double>(samples_per_period);
        table_[static_cast<std::size_t>(t)] = std::polar(1.0, angle);
    }
}

} // namespace prpsk

#include "prpsk/params.hpp"

#include <string>

namespace prpsk {

namespace {

bool is_power_of_two(int v) { return v > 0 && (v & (v - 1)) == 0; }

int log2_exact(int v) {
    int b = 0;
    while ((1 << b) < v) ++b;
    return b;
}

} // namespace

WaveformParams validate_params(int samples_per_period, int periods_per_symbol,
                               int repetitions, int if_samples_per_symbol, int psk_order) {
    if (samples_per_period <= 0 || periods_per_symbol <= 0 || repetitions <= 0 ||
        if_samples_per_symbol <= 0 || psk_order <= 0) {
        throw Error(Errc::non_positive, "all waveform parameters must be positive");
    }
    if (samples_per_period < 3) {
        throw Error(Errc::s_less_than_3,
                    "samples per period must be >= 3 (got " + std::to_string(samples_per_period) +
                        "); smaller values break the whole-period cancellation of the "
                        "double-frequency term");
    }
    if (periods_per_symbol % if_samples_per_symbol != 0) {
        throw Error(Errc::g_does_not_divide_p,
                    "IF samples per symbol (" + std::to_string(if_samples_per_symbol) +
                        ") must divide periods per symbol (" + std::to_string(periods_per_symbol) +
                        ")");
    }
    if (psk_order < 2 || !is_power_of_two(psk_order)) {
        throw Error(Errc::m_not_power_of_two,
                    "PSK order must be a power of two >= 2 (got " + std::to_string(psk_order) + ")");
    }

    WaveformParams p;
    p.samples_per_period_ = samples_per_period;
    p.periods_per_symbol_ = periods_per_symbol;
    p.samples_per_symbol_ = periods_per_symbol * samples_per_period;
    p.repetitions_ = repetitions;
    p.if_samples_per_symbol_ = if_samples_per_symbol;
    p.decimation_ = p.samples_per_symbol_ / if_samples_per_symbol;
    p.psk_order_ = psk_order;
    p.bits_per_symbol_ = log2_exact(psk_order);
    return p;
}

} // namespace prpsk

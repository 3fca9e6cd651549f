#pragma once

#include "prpsk/error.hpp"

namespace prpsk {

/// Radio constants for one waveform configuration, in normalized units: the
/// carrier frequency is 1/S cycles per sample and no physical rates appear.
/// Immutable once built; construct through validate_params().
class WaveformParams {
public:
    int samples_per_period() const { return samples_per_period_; }   // S
    int periods_per_symbol() const { return periods_per_symbol_; }   // p
    int samples_per_symbol() const { return samples_per_symbol_; }   // T = p*S
    int repetitions() const { return repetitions_; }                 // K
    int if_samples_per_symbol() const { return if_samples_per_symbol_; } // G
    int decimation() const { return decimation_; }                   // D = T/G
    int psk_order() const { return psk_order_; }                     // M
    int bits_per_symbol() const { return bits_per_symbol_; }         // log2(M)

    /// Samples in one transmitted symbol (K repetitions of T samples).
    int frame_symbol_span() const { return repetitions_ * samples_per_symbol_; }
    /// IF samples in one transmitted symbol.
    int if_symbol_span() const { return repetitions_ * if_samples_per_symbol_; }

private:
    friend WaveformParams validate_params(int samples_per_period, int periods_per_symbol,
                                          int repetitions, int if_samples_per_symbol,
                                          int psk_order);
    WaveformParams() = default;

    int samples_per_period_ = 0;
    int periods_per_symbol_ = 0;
    int samples_per_symbol_ = 0;
    int repetitions_ = 0;
    int if_samples_per_symbol_ = 0;
    int decimation_ = 0;
    int psk_order_ = 0;
    int bits_per_symbol_ = 0;
};

/// Validates a candidate parameter tuple and derives T and D.
///
/// Requirements: all inputs positive; S >= 3 so that whole-period sums of the
/// double-frequency term cancel exactly; G divides p; M a power of two >= 2.
/// Throws Error with code non_positive, s_less_than_3, g_does_not_divide_p or
/// m_not_power_of_two.
WaveformParams validate_params(int samples_per_period, int periods_per_symbol,
                               int repetitions, int if_samples_per_symbol, int psk_order);

} // namespace prpsk

#pragma once

#include <cstdint>
#include <vector>

#include "prpsk/buffers.hpp"
#include "prpsk/params.hpp"
#include "prpsk/phase_sequence.hpp"

namespace prpsk {

/// One synthesized transmission: the data phases, the passband samples
/// (n_symbols * K * T of them, all within [-1, 1]) and the configuration
/// that produced them.
struct Frame {
    std::vector<double> data_phases;
    PassbandBuffer passband;
    WaveformParams params;
    PhaseSequence sequence;
};

/// Gray-coded M-PSK mapping. Each group of log2(M) bits (MSB first) is read
/// as an integer v and lands on angle 2*pi*gray(v)/M, so adjacent
/// constellation points differ in exactly one bit. For M=4: 00->0,
/// 01->pi/2, 11->pi, 10->3*pi/2.
/// Throws Errc::length_not_divisible if the bit count is not a multiple of
/// log2(M).
std::vector<double> map_bits_to_phases(const std::vector<std::uint8_t>& bits, int psk_order);

/// Inverse of map_bits_to_phases for exact constellation angles.
std::vector<std::uint8_t> map_phases_to_bits(const std::vector<double>& phases, int psk_order);

/// Decision function: index of the constellation point nearest to `angle`
/// (radians, any range). An angle exactly halfway between two points takes
/// the lower-angle neighbour.
int nearest_constellation_point(double angle, int psk_order);

/// Synthesizes one data symbol: K repetitions of the T-sample carrier burst
/// cos(2*pi*t/S + theta), repetition k cyclically retarded by m_k samples,
/// i.e. sample(k*T + t) = cos(2*pi*(t - m_k)/S + theta). The retard is what
/// the receiver's shifted read pattern undoes; the matched correlation at
/// perfect alignment is (K*T/2)*e^{j*theta} exactly.
PassbandBuffer synth_symbol(double theta, const WaveformParams& params,
                            const PhaseSequence& sequence);

/// Maps bits to phases and concatenates synth_symbol over all of them. The
/// same K-shift sequence is reused for every symbol.
Frame modulate_frame(const std::vector<std::uint8_t>& bits, const WaveformParams& params,
                     const PhaseSequence& sequence);

/// Frame with an explicit phase list (used for pilots and test patterns).
Frame modulate_phases(const std::vector<double>& phases, const WaveformParams& params,
                      const PhaseSequence& sequence);

} // namespace prpsk

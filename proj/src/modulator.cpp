#include "prpsk/modulator.hpp"

#include <cmath>
#include <numbers>

#include "prpsk/error.hpp"

namespace prpsk {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

int gray_encode(int v) { return v ^ (v >> 1); }

int gray_decode(int g) {
    int v = g;
    for (int shift = 1; shift < 16; shift <<= 1) v ^= v >> shift;
    return v;
}

} // namespace

std::vector<double> map_bits_to_phases(const std::vector<std::uint8_t>& bits, int psk_order) {
    int bps = 0;
    while ((1 << bps) < psk_order) ++bps;
    if ((1 << bps) != psk_order || psk_order < 2) {
        throw Error(Errc::m_not_power_of_two, "PSK order must be a power of two >= 2");
    }
    if (bits.size() % static_cast<std::size_t>(bps) != 0) {
        throw Error(Errc::length_not_divisible,
                    "bit count must be a multiple of log2(M) = " + std::to_string(bps));
    }
    std::vector<double> phases;
    phases.reserve(bits.size() / static_cast<std::size_t>(bps));
    for (std::size_t i = 0; i < bits.size(); i += static_cast<std::size_t>(bps)) {
        int v = 0;
        for (int b = 0; b < bps; ++b) v = (v << 1) | (bits[i + static_cast<std::size_t>(b)] & 1);
        phases.push_back(two_pi * static_cast<double>(gray_encode(v)) /
                         static_cast<double>(psk_order));
    }
    return phases;
}

int nearest_constellation_point(double angle, int psk_order) {
    double a = std::fmod(angle, two_pi);
    if (a < 0) a += two_pi;
    const double x = a * static_cast<double>(psk_order) / two_pi;
    // ceil(x - 1/2) rounds to nearest and sends exact halves down.
    int g = static_cast<int>(std::ceil(x - 0.5));
    g %= psk_order;
    if (g < 0) g += psk_order;
    return g;
}

std::vector<std::uint8_t> map_phases_to_bits(const std::vector<double>& phases, int psk_order) {
    int bps = 0;
    while ((1 << bps) < psk_order) ++bps;
    std::vector<std::uint8_t> bits;
    bits.reserve(phases.size() * static_cast<std::size_t>(bps));
    for (double ph : phases) {
        const int v = gray_decode(nearest_constellation_point(ph, psk_order));
        for (int b = bps - 1; b >= 0; --b) {
            bits.push_back(static_cast<std::uint8_t>((v >> b) & 1));
        }
    }
    return bits;
}

PassbandBuffer synth_symbol(double theta, const WaveformParams& params,
                            const PhaseSequence& sequence) {
    const int S = params.samples_per_period();
    const int T = params.samples_per_symbol();
    const int K = params.repetitions();
    PassbandBuffer out(static_cast<std::size_t>(K) * static_cast<std::size_t>(T));
    for (int k = 0; k < K; ++k) {
        const int m = sequence.shift(k);
        for (int t = 0; t < T; ++t) {
            // Reduce the carrier argument mod S so equal phases give
            // bit-identical samples regardless of t.
            const int u = ((t - m) % S + S) % S;
            out[static_cast<std::size_t>(k * T + t)] =
                std::cos(two_pi * static_cast<double>(u) / static_cast<double>(S) + theta);
        }
    }
    return out;
}

Frame modulate_phases(const std::vector<double>& phases, const WaveformParams& params,
                      const PhaseSequence& sequence) {
    Frame frame{phases, PassbandBuffer{}, params, sequence};
    auto& samples = frame.passband.samples();
    samples.reserve(phases.size() * static_cast<std::size_t>(params.frame_symbol_span()));
    for (double theta : phases) {
        const PassbandBuffer sym = synth_symbol(theta, params, sequence);
        samples.insert(samples.end(), sym.samples().begin(), sym.samples().end());
    }
    return frame;
}

Frame modulate_frame(const std::vector<std::uint8_t>& bits, const WaveformParams& params,
                     const PhaseSequence& sequence) {
    return modulate_phases(map_bits_to_phases(bits, params.psk_order()), params, sequence);
}

} // namespace prpsk

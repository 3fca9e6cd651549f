#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "prpsk/buffers.hpp"

namespace prpsk {

/// Superposition recipe: which streams arrive, how late and how strong, plus
/// the white-noise floor. Delays are whole samples; gains stand in for
/// attenuation (no path loss or multipath model).
struct ChannelSpec {
    struct Entry {
        int stream = 0;      // index into the stream list handed to superpose
        std::int64_t delay = 0;
        double gain = 1.0;
    };
    std::vector<Entry> entries;
    double noise_sigma = 0.0;   // std-dev per real sample
    std::uint64_t noise_seed = 0;

    std::string to_json() const;
    static ChannelSpec from_json(const std::string& text);
};

/// out(tau) = sum_i gain_i * stream_i(tau - delay_i), out-of-range reads are
/// zero; output length is max(delay_i + len_i). Throws Errc::empty_spec.
PassbandBuffer superpose(const std::vector<PassbandBuffer>& streams, const ChannelSpec& spec);

/// Adds i.i.d. Gaussian(0, sigma^2) per sample, Box-Muller over SplitMix64.
PassbandBuffer add_awgn(const PassbandBuffer& buf, double sigma, std::uint64_t seed);

/// superpose followed by add_awgn with the spec's noise parameters.
PassbandBuffer apply_channel(const std::vector<PassbandBuffer>& streams, const ChannelSpec& spec);

} // namespace prpsk

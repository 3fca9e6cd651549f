#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "prpsk/params.hpp"

namespace prpsk {

/// The K pseudorandom phase shifts of a repetition pattern, realized as
/// integer sample shifts m_k in [0, S). phase(k) = 2*pi*m_k/S holds exactly;
/// unwrapped_offset(k) is the same m_k, the shift applied without wrapping at
/// the symbol edge. Immutable after construction.
class PhaseSequence {
public:
    /// Builds the sequence from explicit shifts (e.g. adversarial patterns or
    /// deserialized files). Throws Errc::length_not_divisible is not used
    /// here; shifts out of [0, S) throw Errc::non_positive.
    PhaseSequence(std::uint64_t seed, int samples_per_period, std::vector<int> shifts);

    std::uint64_t seed() const { return seed_; }
    int samples_per_period() const { return samples_per_period_; }
    int repetitions() const { return static_cast<int>(shifts_.size()); }

    int shift(int k) const { return shifts_[static_cast<std::size_t>(k)]; }
    double phase(int k) const { return phases_[static_cast<std::size_t>(k)]; }
    int unwrapped_offset(int k) const { return shifts_[static_cast<std::size_t>(k)]; }

    const std::vector<int>& shifts() const { return shifts_; }
    const std::vector<double>& phases() const { return phases_; }

    std::string to_json() const;
    static PhaseSequence from_json(const std::string& text);

    friend bool operator==(const PhaseSequence&, const PhaseSequence&) = default;

private:
    std::uint64_t seed_ = 0;
    int samples_per_period_ = 0;
    std::vector<int> shifts_;
    std::vector<double> phases_;
};

/// Draws K shifts independently and uniformly from {0, ..., S-1} with
/// SplitMix64 seeded by `seed` (see rng.hpp for the exact algorithm). Equal
/// seeds and (K, S) yield identical sequences.
PhaseSequence generate_phase_sequence(std::uint64_t seed, const WaveformParams& params);

} // namespace prpsk

#pragma once

#include <cstdint>

namespace prpsk {

/// Tally of arithmetic performed in a correlator's steady-state update path.
///
/// Counting rules: a real*complex product is one complex multiplication, a
/// complex+complex sum is one complex addition, and lookups of precomputed
/// exponentials are free. Sums of real samples are tallied separately in
/// real_adds. Periodic drift resynchronisation (see kResyncInterval) is
/// maintenance outside the update path and is not counted.
struct OpCounter {
    std::uint64_t complex_adds = 0;
    std::uint64_t complex_muls = 0;
    std::uint64_t real_adds = 0;

    void reset() { *this = OpCounter{}; }

    friend OpCounter operator+(OpCounter a, const OpCounter& b) {
        a.complex_adds += b.complex_adds;
        a.complex_muls += b.complex_muls;
        a.real_adds += b.real_adds;
        return a;
    }
    friend bool operator==(const OpCounter&, const OpCounter&) = default;
};

/// Running window sums accumulate rounding error on long streams, so every
/// streaming state re-sums its ring buffer after this many steps, bounding
/// drift while keeping the amortized cost O(1) per sample.
inline constexpr std::int64_t kResyncInterval = std::int64_t{1} << 16;

/// Current tallies of any correlator state, without mutating it.
template <typename State>
OpCounter counter_snapshot(const State& state) {
    return state.ops();
}

} // namespace prpsk

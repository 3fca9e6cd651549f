#include <doctest.h>

#include <cmath>
#include <numbers>

#include "prpsk/correlator_carrier.hpp"
#include "prpsk/error.hpp"
#include "prpsk/frontend_if.hpp"
#include "prpsk/modulator.hpp"
#include "prpsk/receiver.hpp"
#include "prpsk/rng.hpp"

#include "support/naive_reference.hpp"

using namespace prpsk;

TEST_CASE("downconvert: silence stays silent, matched blocks give D/2") {
    const WaveformParams p = validate_params(8, 4, 2, 4, 4);
    const IfBuffer quiet = downconvert(PassbandBuffer(256), p);
    for (std::int64_t i = 0; i < quiet.size(); ++i) CHECK(quiet.at(i) == cplx{});

    const PhaseSequence zero(0, 8, {0, 0});
    const IfBuffer ifb = downconvert(synth_symbol(0.0, p, zero), p);
    REQUIRE(ifb.size() == 8);  // K*G
    for (std::int64_t i = 0; i < ifb.size(); ++i) {
        CHECK(std::abs(ifb.at(i) - cplx{4.0, 0.0}) < 1e-9);  // D/2 = 4
    }
}

TEST_CASE("moving sum of G IF samples equals ma1 at the matching carrier index") {
    const WaveformParams p = validate_params(8, 4, 2, 4, 4);
    const PassbandBuffer y = testing::random_stream(3, 800);
    const IfBuffer yc = downconvert(y, p);
    const int G = p.if_samples_per_symbol();
    const int D = p.decimation();

    Ma1Correlator ma1(p);
    std::vector<cplx> ma1_trace(static_cast<std::size_t>(y.size()));
    for (std::int64_t tau = 0; tau < y.size(); ++tau) {
        ma1_trace[static_cast<std::size_t>(tau)] = ma1.step(y.at(tau), tau);
    }
    for (std::int64_t ti = 0; ti < yc.size(); ++ti) {
        cplx window{};
        for (int g = 0; g < G; ++g) window += yc.at(ti - g);
        const cplx want = ma1_trace[static_cast<std::size_t>((ti + 1) * D - 1)];
        CHECK(std::abs(window - want) <= 1e-9 * std::max(1.0, std::abs(want)));
    }
}

TEST_CASE("ma4 is the brute-force window sum with two adds per step") {
    const WaveformParams p = validate_params(8, 4, 2, 4, 4);
    SplitMix64 rng(9);
    std::vector<cplx> input(300);
    for (auto& v : input) v = {rng.next_unit() - 0.5, rng.next_unit() - 0.5};

    Ma4Correlator ma4(p);
    for (std::int64_t tau = 0; tau < static_cast<std::int64_t>(input.size()); ++tau) {
        const cplx got = ma4.step(input[static_cast<std::size_t>(tau)], tau);
        cplx want{};
        for (int g = 0; g < p.if_samples_per_symbol(); ++g) {
            const std::int64_t idx = tau - g;
            if (idx >= 0) want += input[static_cast<std::size_t>(idx)];
        }
        CHECK(std::abs(got - want) < 1e-12);
    }
    CHECK(ma4.ops() == OpCounter{2 * input.size(), 0, 0});

    Ma4Correlator fresh(p);
    CHECK(fresh.ops() == OpCounter{});
    for (std::int64_t tau = 0; tau < 200; ++tau) fresh.step(cplx{}, tau);
    for (std::int64_t tau = 0; tau < 50; ++tau) {
        CHECK(fresh.step(cplx{}, 200 + tau) == cplx{});
    }
}

TEST_CASE("ma5 per-step cost is exactly 3K-1 additions and K multiplications") {
    const WaveformParams p = validate_params(8, 4, 8, 4, 4);
    const PhaseSequence seq = generate_phase_sequence(12, p);
    Ma5Correlator ma5(p, seq);
    ma5.step({1.0, 0.0}, 0);
    CHECK(ma5.ops() == OpCounter{23, 8, 0});
    ma5.step({0.0, 1.0}, 1);
    CHECK(ma5.ops() == OpCounter{46, 16, 0});  // additive across steps
}

TEST_CASE("ma5 peaks coherently on a matched downconverted frame") {
    const WaveformParams p = validate_params(8, 4, 8, 4, 4);
    const double theta = 3.0 * std::numbers::pi / 2.0;
    for (std::uint64_t seed : {4u, 5u}) {
        const PhaseSequence seq = generate_phase_sequence(seed, p);
        const IfBuffer yc = downconvert(synth_symbol(theta, p, seq), p);
        Ma5Correlator ma5(p, seq);
        cplx last{};
        for (std::int64_t tau = 0; tau < yc.size(); ++tau) {
            last = ma5.step(yc.at(tau), tau);
        }
        const cplx want = std::polar(128.0, theta);  // K*T/2
        CHECK(std::abs(last - want) / std::abs(want) < 1e-9);
    }
}

TEST_CASE("IF path equals carrier path at corresponding indices") {
    const WaveformParams p = validate_params(8, 4, 4, 2, 4);
    const PhaseSequence seq = generate_phase_sequence(77, p);
    const PassbandBuffer y = testing::random_stream(31, 1200);
    const auto carrier = correlate_stream(y, p, seq, Engine::ma2);
    const auto iface = correlate_stream(y, p, seq, Engine::ma5);
    const int D = p.decimation();
    for (std::size_t ti = 0; ti < iface.size(); ++ti) {
        const cplx want = carrier[(ti + 1) * static_cast<std::size_t>(D) - 1];
        if (std::abs(want) > 1e-6) {
            CHECK(std::abs(iface[ti] - want) / std::abs(want) < 1e-9);
        }
    }
}

TEST_CASE("tree_reduce: identity, unit inputs, sequential-sum oracle") {
    const std::vector<cplx> one{cplx{2.5, -1.0}};
    const TreeReduction single = tree_reduce(one);
    CHECK(single.sum == one[0]);
    CHECK(single.depth == 0);

    std::vector<cplx> eight(8, cplx{1.0, 0.0});
    const TreeReduction units = tree_reduce(eight);
    CHECK(std::abs(units.sum - cplx{8.0, 0.0}) < 1e-12);
    CHECK(units.depth == 3);

    SplitMix64 rng(64);
    std::vector<cplx> many(64);
    cplx seq_sum{};
    for (auto& v : many) {
        v = {rng.next_unit() - 0.5, rng.next_unit() - 0.5};
        seq_sum += v;
    }
    const TreeReduction big = tree_reduce(many);
    CHECK(big.depth == 6);
    CHECK(std::abs(big.sum - seq_sum) / std::abs(seq_sum) < 1e-12);

    CHECK_THROWS_AS(tree_reduce(std::span<const cplx>{}), Error);
}

TEST_CASE("tree depth is ceil(log2 K) for non-powers of two") {
    for (int n : {3, 5, 6, 7, 9, 33}) {
        std::vector<cplx> parts(static_cast<std::size_t>(n), cplx{1.0, 0.0});
        int want = 0;
        while ((1 << want) < n) ++want;
        CHECK(tree_reduce(parts).depth == want);
    }
}

TEST_CASE("IF correlators reject out-of-order feeds") {
    const WaveformParams p = validate_params(8, 4, 2, 4, 4);
    const PhaseSequence seq = generate_phase_sequence(1, p);
    Ma4Correlator ma4(p);
    ma4.step({1, 1}, 0);
    CHECK_THROWS_AS(ma4.step({1, 1}, 3), Error);
    Ma5Correlator ma5(p, seq);
    CHECK_THROWS_AS(ma5.step({1, 1}, 1), Error);
}

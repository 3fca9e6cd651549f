#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "prpsk/channel.hpp"
#include "prpsk/correlator_carrier.hpp"
#include "prpsk/error.hpp"
#include "prpsk/modulator.hpp"
#include "prpsk/rng.hpp"

#include "support/naive_reference.hpp"

using namespace prpsk;

TEST_CASE("single entry with unit gain and zero delay is the identity") {
    const PassbandBuffer in = testing::random_stream(1, 100);
    ChannelSpec spec;
    spec.entries.push_back({0, 0, 1.0});
    const PassbandBuffer out = superpose({in}, spec);
    REQUIRE(out.size() == in.size());
    for (std::int64_t i = 0; i < in.size(); ++i) CHECK(out.at(i) == in.at(i));
}

TEST_CASE("two half-gain copies reproduce the input") {
    const PassbandBuffer in = testing::random_stream(2, 64);
    ChannelSpec spec;
    spec.entries.push_back({0, 0, 0.5});
    spec.entries.push_back({0, 0, 0.5});
    const PassbandBuffer out = superpose({in}, spec);
    for (std::int64_t i = 0; i < in.size(); ++i) {
        CHECK(out.at(i) == doctest::Approx(in.at(i)).epsilon(1e-12));
    }
}

TEST_CASE("superpose matches a brute-force per-sample sum") {
    SplitMix64 rng(33);
    std::vector<PassbandBuffer> streams;
    for (int i = 0; i < 3; ++i) {
        streams.push_back(testing::random_stream(rng.next(), 40 + 13 * i));
    }
    ChannelSpec spec;
    spec.entries.push_back({0, 5, 0.8});
    spec.entries.push_back({1, 0, 1.3});
    spec.entries.push_back({2, 17, 0.4});
    spec.entries.push_back({0, 2, 0.1});
    const PassbandBuffer out = superpose(streams, spec);

    std::int64_t want_len = 0;
    for (const auto& e : spec.entries) {
        want_len = std::max(want_len, e.delay + streams[static_cast<std::size_t>(e.stream)].size());
    }
    REQUIRE(out.size() == want_len);
    for (std::int64_t tau = 0; tau < out.size(); ++tau) {
        double want = 0.0;
        for (const auto& e : spec.entries) {
            want += e.gain * streams[static_cast<std::size_t>(e.stream)].at(tau - e.delay);
        }
        CHECK(out.at(tau) == doctest::Approx(want).epsilon(1e-12));
    }
}

TEST_CASE("superposition is linear over disjoint specs") {
    const PassbandBuffer a = testing::random_stream(7, 50);
    const PassbandBuffer b = testing::random_stream(8, 50);
    ChannelSpec both, only_a, only_b;
    both.entries = {{0, 3, 0.7}, {1, 0, 1.1}};
    only_a.entries = {{0, 3, 0.7}};
    only_b.entries = {{1, 0, 1.1}};
    const PassbandBuffer sum = superpose({a, b}, both);
    const PassbandBuffer pa = superpose({a, b}, only_a);
    const PassbandBuffer pb = superpose({a, b}, only_b);
    for (std::int64_t i = 0; i < sum.size(); ++i) {
        CHECK(std::abs(sum.at(i) - (pa.at(i) + pb.at(i))) < 1e-12);
    }
}

TEST_CASE("empty spec and bad stream references are rejected") {
    CHECK_THROWS_AS(superpose({PassbandBuffer(8)}, ChannelSpec{}), Error);
    ChannelSpec bad;
    bad.entries.push_back({3, 0, 1.0});
    CHECK_THROWS_AS(superpose({PassbandBuffer(8)}, bad), Error);
}

TEST_CASE("awgn: sigma zero is a no-op, seeds are reproducible") {
    const PassbandBuffer in = testing::random_stream(4, 128);
    const PassbandBuffer same = add_awgn(in, 0.0, 1);
    for (std::int64_t i = 0; i < in.size(); ++i) CHECK(same.at(i) == in.at(i));

    const PassbandBuffer n1 = add_awgn(in, 0.3, 99);
    const PassbandBuffer n2 = add_awgn(in, 0.3, 99);
    const PassbandBuffer n3 = add_awgn(in, 0.3, 100);
    bool differs = false;
    for (std::int64_t i = 0; i < in.size(); ++i) {
        CHECK(n1.at(i) == n2.at(i));
        differs = differs || n1.at(i) != n3.at(i);
    }
    CHECK(differs);
}

TEST_CASE("awgn sample variance lands within 2% over 1e6 samples") {
    const double sigma = 0.7;
    const PassbandBuffer zero(1000000);
    const PassbandBuffer noisy = add_awgn(zero, sigma, 12345);
    double mean = 0.0;
    for (double v : noisy.samples()) mean += v;
    mean /= static_cast<double>(noisy.size());
    double var = 0.0;
    for (double v : noisy.samples()) var += (v - mean) * (v - mean);
    var /= static_cast<double>(noisy.size() - 1);
    CHECK(std::abs(var - sigma * sigma) / (sigma * sigma) < 0.02);
}

TEST_CASE("channel spec JSON round trip") {
    ChannelSpec spec;
    spec.entries = {{0, 12, 0.25}, {1, 0, 1.0}};
    spec.noise_sigma = 0.1;
    spec.noise_seed = 77;
    const ChannelSpec back = ChannelSpec::from_json(spec.to_json());
    REQUIRE(back.entries.size() == 2);
    CHECK(back.entries[0].stream == 0);
    CHECK(back.entries[0].delay == 12);
    CHECK(back.entries[0].gain == 0.25);
    CHECK(back.noise_sigma == 0.1);
    CHECK(back.noise_seed == 77);
    CHECK_THROWS_AS(ChannelSpec::from_json("not json"), Error);
}

TEST_CASE("mismatched sequences are suppressed by about 2*sqrt(K/pi)") {
    // A transmitter keyed with sequence A, a receiver correlating with an
    // independent sequence B: the mean matched/mismatched peak ratio over
    // seeds tracks 2*sqrt(K/pi) (random-phasor sum), here checked at K=16.
    const int reps = 16;
    const WaveformParams p = validate_params(8, 4, reps, 4, 4);
    const double ideal = 0.5 * p.frame_symbol_span();
    double mismatched_sum = 0.0;
    const int seeds = 200;
    for (int s = 0; s < seeds; ++s) {
        const PhaseSequence sa = generate_phase_sequence(1000 + s, p);
        const PhaseSequence sb = generate_phase_sequence(5000 + s, p);
        const PassbandBuffer y = synth_symbol(0.4, p, sa);
        const cplx matched = correlate_direct(y, 0, p, sa);
        const cplx mismatched = correlate_direct(y, 0, p, sb);
        CHECK(std::abs(std::abs(matched) - ideal) / ideal < 1e-9);
        mismatched_sum += std::abs(mismatched);
    }
    const double ratio = ideal / (mismatched_sum / seeds);
    const double target = 2.0 * std::sqrt(reps / std::numbers::pi);
    CHECK(ratio > 0.75 * target);
    CHECK(ratio < 1.25 * target);
}

#include <doctest.h>

#include <cmath>

#include "nlturbo/channel.hpp"
#include "oracles.hpp"

using namespace nlturbo;

TEST_CASE("binary entropy reference points") {
    CHECK(binary_entropy(0.5) == 1.0);
    CHECK(binary_entropy(0.0) == 0.0);
    CHECK(binary_entropy(1.0) == 0.0);
    CHECK(binary_entropy(0.2) == doctest::Approx(0.7219280949).epsilon(1e-9));
    CHECK_THROWS_AS(binary_entropy(-0.1), std::domain_error);
    CHECK_THROWS_AS(binary_entropy(1.1), std::domain_error);
}

TEST_CASE("star operation") {
    CHECK(star(0.3, 0.0) == 0.3);
    CHECK(star(0.0, 0.3) == 0.3);
    CHECK(star(0.5, 0.37) == 0.5);
    CHECK(star(0.37, 0.5) == 0.5);
    CHECK(star(0.1, 0.1) == doctest::Approx(0.18).epsilon(1e-12));
    Prng rng(3);
    for (int i = 0; i < 1000; ++i) {
        const double a = rng.next_double(), b = rng.next_double(), c = rng.next_double();
        CHECK(star(a, b) == doctest::Approx(star(b, a)).epsilon(1e-12));
        CHECK(star(a, star(b, c)) == doctest::Approx(star(star(a, b), c)).epsilon(1e-9));
    }
}

TEST_CASE("z optimal zeros density closed form") {
    CHECK(z_optimal_zeros_density(0.0) == 0.5);
    CHECK(z_optimal_zeros_density(1e-12) == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(z_optimal_zeros_density(0.5) == doctest::Approx(0.4).epsilon(1e-12));
    for (double p = 0.05; p < 0.96; p += 0.05) {
        // ones density above one half everywhere away from the noiseless point
        CHECK(1.0 - z_optimal_zeros_density(p) > 0.5);
    }
}

TEST_CASE("z capacity reference points and monotonicity") {
    CHECK(z_capacity(0.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(z_capacity(0.5) ==
          doctest::Approx(binary_entropy(0.2) - 0.4 * binary_entropy(0.5)).epsilon(1e-12));
    CHECK(z_capacity(0.5) == doctest::Approx(0.321928).epsilon(1e-5));
    CHECK(z_capacity(0.1) > z_capacity(0.2));
    double prev = 1.0;
    for (double p = 0.02; p < 0.99; p += 0.02) {
        const double c = z_capacity(p);
        CHECK(c < prev);
        CHECK(c >= 0.0);
        prev = c;
    }
}

TEST_CASE("closed-form optimum matches golden-section maximization of I(X;Y)") {
    for (double p = 0.05; p < 0.46; p += 0.05) {
        const double u_star = testing::golden_section_max(
            [&](double u) { return z_mutual_information(p, u); }, 0.0, 1.0);
        CHECK(z_capacity(p) ==
              doctest::Approx(z_mutual_information(p, u_star)).epsilon(1e-6));
        CHECK(z_optimal_zeros_density(p) == doctest::Approx(u_star).epsilon(1e-5));
    }
}

TEST_CASE("z capacity dominates mutual information over a density grid") {
    for (double p : {0.05, 0.1, 0.15, 0.25, 0.35, 0.45, 0.55, 0.65, 0.75, 0.9}) {
        const double c = z_capacity(p);
        for (int g = 0; g <= 1000; ++g)
            CHECK(c >= z_mutual_information(p, g / 1000.0) - 1e-12);
    }
}

TEST_CASE("z crossover solves capacity = rate") {
    const double p = z_crossover_for_capacity(1.0 / 3.0 + 0.08);
    CHECK(z_capacity(p) == doctest::Approx(1.0 / 3.0 + 0.08).epsilon(1e-9));
}

TEST_CASE("bbsc region corners are exact") {
    const double alpha = 0.188, beta = 0.2017;
    const RatePoint at0 = bbsc_region(alpha, beta, 0.0);
    CHECK(at0.r1 == 0.0);
    CHECK(at0.r2 == 1.0 - binary_entropy(beta));
    const RatePoint athalf = bbsc_region(alpha, beta, 0.5);
    CHECK(athalf.r1 == 1.0 - binary_entropy(alpha));
    CHECK(athalf.r2 == 0.0);
}

TEST_CASE("bbsc region alpha=0 special case gives R1 = h(p1)") {
    for (double p1 = 0.0; p1 <= 0.5; p1 += 0.05)
        CHECK(bbsc_region(0.0, 0.1, p1).r1 == binary_entropy(p1));
}

TEST_CASE("region boundary is monotone in p1") {
    const double alpha = 0.01, beta = 0.108;
    double prev_r1 = -1.0, prev_r2 = 2.0;
    for (int g = 0; g <= 100; ++g) {
        const RatePoint pt = bbsc_region(alpha, beta, g / 200.0);
        CHECK(pt.r1 >= prev_r1);
        CHECK(pt.r2 <= prev_r2);
        prev_r1 = pt.r1;
        prev_r2 = pt.r2;
    }
}

TEST_CASE("rate inverses round-trip through the region boundary") {
    const double alpha = 0.01, beta = 0.108;
    Prng rng(5);
    for (int i = 0; i < 100; ++i) {
        const double p1 = 0.01 + 0.48 * rng.next_double();
        const RatePoint pt = bbsc_region(alpha, beta, p1);
        CHECK(bbsc_p1_for_rate1(alpha, beta, pt.r1) == doctest::Approx(p1).epsilon(1e-7));
        CHECK(bbsc_p1_for_rate2(alpha, beta, pt.r2) == doctest::Approx(p1).epsilon(1e-7));
    }
}

TEST_CASE("boundary continuity: r2 near its maximum pins p1 near zero") {
    const double alpha = 0.01, beta = 0.108;
    const double r2_max = bbsc_region(alpha, beta, 0.0).r2;
    CHECK(bbsc_p1_for_rate2(alpha, beta, r2_max - 1e-6) < 0.01);
}

TEST_CASE("pick_p1 rejects points outside the region") {
    const double alpha = 0.188, beta = 0.2017;
    // r1 demands p1 >= 0.3 while r2 demands p1 <= 0.05
    const double r1 = bbsc_region(alpha, beta, 0.3).r1;
    const double r2 = bbsc_region(alpha, beta, 0.05).r2;
    CHECK_THROWS_AS(pick_p1(alpha, beta, r1, r2), std::domain_error);
    // boundary points give a zero-width interval, also reported empty
    const RatePoint pt = bbsc_region(alpha, beta, 0.15);
    CHECK_THROWS_AS(pick_p1(alpha, beta, pt.r1, pt.r2), std::domain_error);
}

TEST_CASE("pick_p1 returns a strictly interior interval for interior points") {
    const double alpha = 0.188, beta = 0.2017;
    const RatePoint pt = bbsc_region(alpha, beta, 0.15);
    const P1Choice choice = pick_p1(alpha, beta, pt.r1 - 0.03, pt.r2 - 0.03);
    CHECK(choice.lower < choice.selected);
    CHECK(choice.selected < choice.upper);
    const RatePoint achievable = bbsc_region(alpha, beta, choice.selected);
    CHECK(achievable.r1 > pt.r1 - 0.03);
    CHECK(achievable.r2 > pt.r2 - 0.03);
}

TEST_CASE("z channel transmission never flips ones") {
    Prng rng(7);
    const ChannelModel channel = ChannelModel::z_channel(0.4);
    const std::vector<uint8_t> ones(5000, 1);
    CHECK(transmit(channel, ones, rng) == ones);
}

TEST_CASE("noiseless z channel is the identity") {
    Prng rng(9);
    const ChannelModel channel = ChannelModel::z_channel(0.0);
    std::vector<uint8_t> cw(1000);
    for (auto& b : cw) b = static_cast<uint8_t>(rng.next_u64() & 1);
    CHECK(transmit(channel, cw, rng) == cw);
}

TEST_CASE("z channel flip rate concentrates at p") {
    Prng rng(11);
    const ChannelModel channel = ChannelModel::z_channel(0.25);
    const std::vector<uint8_t> zeros(1000000, 0);
    const std::vector<uint8_t> received = transmit(channel, zeros, rng);
    long flips = 0;
    for (uint8_t b : received) flips += b;
    CHECK(static_cast<double>(flips) / 1e6 == doctest::Approx(0.25).epsilon(0.008));
}

TEST_CASE("transmission preserves length and reproduces under a fixed stream") {
    const ChannelModel channel = ChannelModel::bsc(0.3);
    std::vector<uint8_t> cw(313, 0);
    Prng a(55), b(55);
    CHECK(transmit(channel, cw, a) == transmit(channel, cw, b));
}

TEST_CASE("bbsc transmit produces two independently degraded copies") {
    Prng rng(13);
    const ChannelModel channel = ChannelModel::bbsc(0.0, 0.5);
    const std::vector<uint8_t> zeros(10000, 0);
    auto [y1, y2] = transmit_bbsc(channel, zeros, rng);
    CHECK(y1 == zeros); // alpha = 0: clean
    long flips = 0;
    for (uint8_t b : y2) flips += b;
    CHECK(static_cast<double>(flips) / 10000.0 == doctest::Approx(0.5).epsilon(0.05));
}

TEST_CASE("channel model validation") {
    CHECK_THROWS_AS(ChannelModel::z_channel(1.0), std::invalid_argument);
    CHECK_THROWS_AS(ChannelModel::bbsc(0.3, 0.2), std::invalid_argument);
    Prng rng(1);
    const ChannelModel broadcast = ChannelModel::bbsc(0.1, 0.2);
    CHECK_THROWS_AS(transmit(broadcast, std::vector<uint8_t>{0}, rng), std::invalid_argument);
}

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "ehsa/channel.hpp"
#include "oracles.hpp"

using namespace ehsa;

static RadioConstants sec5_consts() { return RadioConstants{}; }  // defaults

TEST_CASE("transmission rate") {
    RadioConstants c = sec5_consts();
    CHECK(transmission_rate(0, c) == Catch::Approx(10.0));
    CHECK(transmission_rate(1, c) == Catch::Approx(10.0 / 0.7));
    CHECK(transmission_rate(1, c) > transmission_rate(0, c));
    c.beta = 0.0;
    CHECK(transmission_rate(0, c) == 0.0);
}

TEST_CASE("success probability closed form") {
    const RadioConstants c = sec5_consts();

    SECTION("zero payload means no outage") {
        RadioConstants c0 = c;
        c0.beta = 0.0;
        CHECK(success_prob(0, 20.0, 32.0, 1.0, 1.0, c0) == 1.0);
    }

    SECTION("zero transmit power is the zero limit") {
        CHECK(success_prob(0, 0.0, 0.0, 1.0, 1.0, c) == 0.0);
    }

    SECTION("interference-free case reduces to exp(-a)") {
        // a = (2^{10/8}-1) * N0*W / P_A at the baseline constants
        const double a = (std::exp2(1.25) - 1.0) * 8.0 / 20.0;
        CHECK(success_prob(0, 20.0, 0.0, 1.0, 1.0, c) ==
              Catch::Approx(std::exp(-a)).epsilon(1e-12));
        CHECK(success_prob(0, 20.0, 0.0, 1.0, 1.0, c) ==
              Catch::Approx(0.57618).margin(1e-4));
    }

    SECTION("with an interferer: exp(-a)/(1+b) when variances are 1") {
        const double k = std::exp2(transmission_rate(1, c) / c.W) - 1.0;
        const double a = k * 8.0 / 32.0;
        const double b = k * 20.0 / 32.0;
        CHECK(success_prob(1, 32.0, 20.0, 1.0, 1.0, c) ==
              Catch::Approx(std::exp(-a) / (1.0 + b)).epsilon(1e-12));
    }
}

TEST_CASE("closed form agrees with Monte Carlo outage counting") {
    const RadioConstants c = sec5_consts();
    struct { int i; double PA, PB; } cases[] = {
        {0, 20.0, 0.0}, {1, 32.0, 20.0}, {0, 32.0, 32.0},
    };
    int seed = 7;
    for (const auto& cs : cases) {
        double se = 0.0;
        const double mc = oracle::mc_success(cs.i, cs.PA, cs.PB, 1.0, 1.0, c,
                                             200000, seed++, &se);
        const double cf = success_prob(cs.i, cs.PA, cs.PB, 1.0, 1.0, c);
        INFO("i=" << cs.i << " PA=" << cs.PA << " PB=" << cs.PB);
        CHECK(std::fabs(mc - cf) <= 4.0 * se);
    }
}

TEST_CASE("monotonicity over random grids") {
    const RadioConstants c = sec5_consts();
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> upow(1.0, 40.0);
    std::uniform_real_distribution<double> uvar(0.2, 3.0);
    for (int n = 0; n < 200; ++n) {
        const double PA = upow(rng), PB = upow(rng);
        const double vA = uvar(rng), vB = uvar(rng);
        const int i = n % 2;
        const double base = success_prob(i, PA, PB, vA, vB, c);
        // strictly increasing in P_A
        CHECK(success_prob(i, PA * 1.1, PB, vA, vB, c) > base);
        // strictly decreasing in P_B over (0, inf)
        CHECK(success_prob(i, PA, PB * 1.1, vA, vB, c) < base);
        // higher rate index can only hurt
        CHECK(success_prob(1, PA, PB, vA, vB, c) <=
              success_prob(0, PA, PB, vA, vB, c));
    }
}

TEST_CASE("input validation") {
    const RadioConstants c = sec5_consts();
    CHECK_THROWS_AS(success_prob(0, -1.0, 0.0, 1.0, 1.0, c),
                    std::invalid_argument);
    CHECK_THROWS_AS(success_prob(0, 1.0, 0.0, 0.0, 1.0, c),
                    std::invalid_argument);
    RadioConstants bad = c;
    bad.tau = 2.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

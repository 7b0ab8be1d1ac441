#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "ehsa/queueing.hpp"
#include "oracles.hpp"

using namespace ehsa;

namespace {

ScenarioParams sec5() { return ScenarioParams{}; }  // defaults = baseline

Policy mixed_policy() {
    Policy a;
    a.alpha_s = 0.5;
    a.alpha_f = 1.0;
    a.alpha_t = 1.0;
    a.alpha_b = 1.0;
    a.alpha_r = 0.7;
    a.Ps1 = 32.0;
    a.Ps2 = 16.0;
    a.Ps3 = 8.0;
    return a;
}

// Random stable (lambda_p, omega_p, gamma_p) triples.
struct Triple {
    double lam, omega, gamma;
};

std::vector<Triple> stable_triples(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.05, 0.95);
    std::vector<Triple> out;
    while (static_cast<int>(out.size()) < n) {
        Triple t{u(rng), u(rng), u(rng)};
        const double eta = t.lam * t.omega + (1.0 - t.lam) * t.gamma;
        if (t.lam < eta - 1e-3) out.push_back(t);
    }
    return out;
}

}  // namespace

TEST_CASE("gamma edge cases") {
    const ScenarioParams p = sec5();
    Policy silent;
    CHECK(compute_gamma(p, silent) == Catch::Approx(p.pu_success(0.0)));

    Policy unsensed;
    unsensed.alpha_t = 1.0;
    unsensed.Ps1 = p.P_max;
    CHECK(compute_gamma(p, unsensed) ==
          Catch::Approx(p.pu_success(p.P_max)).epsilon(1e-14));
}

TEST_CASE("gamma matches branch enumeration") {
    const ScenarioParams p = sec5();
    const Policy a = mixed_policy();
    CHECK(compute_gamma(p, a) ==
          Catch::Approx(oracle::gamma_enumeration(p, a)).epsilon(1e-13));
}

TEST_CASE("omega_p is the availability mixture") {
    const ScenarioParams p = sec5();
    const Policy a = mixed_policy();
    const double g = compute_gamma(p, a);
    const double s0 = p.pu_success(0.0);
    CHECK(compute_omega_p(p, a, 0.0) == Catch::Approx(s0));
    CHECK(compute_omega_p(p, a, 1.0) == Catch::Approx(g));
    CHECK(compute_omega_p(p, a, 0.625) ==
          Catch::Approx(0.625 * g + 0.375 * s0).epsilon(1e-14));
}

TEST_CASE("gamma_p collapses") {
    ScenarioParams p = sec5();
    const Policy a = mixed_policy();

    SECTION("q = 0: retransmission slots look like first transmissions") {
        p.q = 0.0;
        CHECK(compute_gamma_p(p, a, 0.7) ==
              Catch::Approx(compute_omega_p(p, a, 0.7)).epsilon(1e-14));
    }
    SECTION("q = 1, alpha_r = 0: SU always defers on NACK") {
        p.q = 1.0;
        Policy d = a;
        d.alpha_r = 0.0;
        CHECK(compute_gamma_p(p, d, 0.4) ==
              Catch::Approx(p.pu_success(0.0)).epsilon(1e-14));
    }
    SECTION("q = 0.5 matches branch enumeration") {
        p.q = 0.5;
        CHECK(compute_gamma_p(p, a, 0.8) ==
              Catch::Approx(oracle::gamma_p_enumeration(p, a, 0.8))
                  .epsilon(1e-13));
    }
}

TEST_CASE("steady state matches the truncated transition-matrix oracle") {
    const double lam = 0.2, omega = 0.6, gamma = 0.5;
    const SteadyState ss = steady_state(lam, omega, gamma);
    const auto d = oracle::chain_steady_state(lam, omega, gamma, 2000);
    CHECK(ss.pi0() == Catch::Approx(d.pi[0]).margin(1e-8));
    for (int k = 1; k <= 5; ++k) {
        INFO("k=" << k);
        CHECK(ss.pi(k) == Catch::Approx(d.pi[k]).margin(1e-8));
        CHECK(ss.chi(k) == Catch::Approx(d.chi[k]).margin(1e-8));
    }
}

TEST_CASE("steady state limits and errors") {
    SECTION("empty-system limit") {
        const SteadyState ss = steady_state(1e-9, 0.6, 0.5);
        CHECK(ss.pi0() == Catch::Approx(1.0).margin(1e-7));
        CHECK(ss.pi(3) < 1e-20);
    }
    SECTION("symmetric service reduces to Geo/Geo/1") {
        const SteadyState ss = steady_state(0.3, 0.55, 0.55);
        CHECK(ss.eta() == Catch::Approx(0.55));
        CHECK(ss.pi0() == Catch::Approx((0.55 - 0.3) / 0.55));
    }
    SECTION("instability is an error, not a silent wrong answer") {
        CHECK_THROWS_AS(steady_state(0.6, 0.5, 0.5), UnstableQueue);
        CHECK_THROWS_AS(steady_state(0.5, 0.5, 0.5), UnstableQueue);
    }
}

TEST_CASE("steady-state identities over random stable triples") {
    for (const auto& t : stable_triples(300, 42)) {
        INFO("lam=" << t.lam << " omega=" << t.omega << " gamma=" << t.gamma);
        const SteadyState ss = steady_state(t.lam, t.omega, t.gamma);
        CHECK(ss.chi(0) == 0.0);
        CHECK(ss.rho() < 1.0);
        CHECK(ss.sum_pi() == Catch::Approx(t.lam));
        CHECK(ss.sum_chi() ==
              Catch::Approx(t.lam * (1.0 - t.omega) / t.gamma).epsilon(1e-12));

        // closed-form sums against truncated summation
        double spi = 0.0, schi = 0.0;
        int K = 10;
        while (std::pow(ss.rho(), K) > 1e-16 && K < 100000) K += 10;
        for (int k = 1; k <= K; ++k) {
            spi += ss.pi(k);
            schi += ss.chi(k);
        }
        CHECK(spi == Catch::Approx(ss.sum_pi()).margin(1e-8));
        CHECK(schi == Catch::Approx(ss.sum_chi()).margin(1e-8));
        CHECK(ss.pi0() + spi + schi == Catch::Approx(1.0).margin(1e-8));
    }
}

TEST_CASE("balance equations hold for k <= 50") {
    for (const auto& t : stable_triples(50, 99)) {
        const SteadyState ss = steady_state(t.lam, t.omega, t.gamma);
        const double lam = t.lam, Om = t.omega, Gm = t.gamma;
        auto pi = [&](int k) { return ss.pi(k); };
        auto chi = [&](int k) { return ss.chi(k); };
        // state 0
        double in0 = pi(0) * (1.0 - lam) + pi(1) * Om * (1.0 - lam) +
                     chi(1) * Gm * (1.0 - lam);
        CHECK(std::fabs(in0 - pi(0)) < 1e-10);
        for (int k = 1; k <= 50; ++k) {
            double inF = pi(k) * Om * lam + pi(k + 1) * Om * (1.0 - lam) +
                         chi(k) * Gm * lam + chi(k + 1) * Gm * (1.0 - lam);
            if (k == 1) inF += pi(0) * lam;
            double inR = pi(k) * (1.0 - Om) * (1.0 - lam) +
                         chi(k) * (1.0 - Gm) * (1.0 - lam);
            if (k >= 2)
                inR += pi(k - 1) * (1.0 - Om) * lam +
                       chi(k - 1) * (1.0 - Gm) * lam;
            INFO("k=" << k);
            CHECK(std::fabs(inF - pi(k)) < 1e-10);
            CHECK(std::fabs(inR - chi(k)) < 1e-10);
        }
    }
}

TEST_CASE("mean delay") {
    SECTION("symmetric-case reduction is exact") {
        const SteadyState ss = steady_state(0.2, 0.55, 0.55);
        CHECK(mean_delay(ss) ==
              Catch::Approx((1.0 - 0.2) / (0.55 - 0.2)).epsilon(1e-14));
    }
    SECTION("matches the truncated Little's-law series") {
        const SteadyState ss = steady_state(0.2, 0.6, 0.5);
        double occ = 0.0;
        for (int k = 1; k <= 100000; ++k) occ += k * (ss.pi(k) + ss.chi(k));
        CHECK(mean_delay(ss) == Catch::Approx(occ / 0.2).margin(1e-8));
    }
    SECTION("matches chain-simulation delay within 2%") {
        const SteadyState ss = steady_state(0.2, 0.6, 0.5);
        const auto sim = oracle::chain_simulate(0.2, 0.6, 0.5, 2000000, 3);
        CHECK(sim.delay_hat ==
              Catch::Approx(mean_delay(ss)).epsilon(0.02));
    }
    SECTION("at least one slot whenever stable") {
        for (const auto& t : stable_triples(200, 17)) {
            const SteadyState ss = steady_state(t.lam, t.omega, t.gamma);
            CHECK(mean_delay(ss) >= 1.0 - 1e-12);
        }
    }
    SECTION("decreasing in the service probabilities") {
        for (const auto& t : stable_triples(100, 23)) {
            const double base = mean_delay(steady_state(t.lam, t.omega, t.gamma));
            const double dg = std::min(0.99, t.gamma + 0.02);
            const double dw = std::min(0.99, t.omega + 0.02);
            CHECK(mean_delay(steady_state(t.lam, t.omega, dg)) <= base + 1e-12);
            CHECK(mean_delay(steady_state(t.lam, dw, t.gamma)) <= base + 1e-12);
        }
    }
    SECTION("series fallback near eta = 1") {
        const SteadyState ss = steady_state(0.4, 1.0 - 1e-13, 1.0 - 1e-13);
        const double d = mean_delay(ss);
        CHECK(d == Catch::Approx(1.0).epsilon(1e-3));
    }
}

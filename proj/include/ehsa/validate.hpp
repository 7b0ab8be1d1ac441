#ifndef EHSA_VALIDATE_HPP
#define EHSA_VALIDATE_HPP

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "ehsa/config.hpp"
#include "ehsa/simulator.hpp"
#include "ehsa/throughput.hpp"

namespace ehsa {

enum class Verdict { Pass, Fail, Inconclusive };

struct Check {
    std::string name;
    double estimate = 0.0;
    double reference = 0.0;
    double tolerance = 0.0;  // half-width of the acceptance band
    Verdict verdict = Verdict::Pass;
};

struct ValidationReport {
    std::vector<Check> checks;
    bool all_passed() const {
        for (const auto& c : checks)
            if (c.verdict == Verdict::Fail) return false;
        return true;
    }
};

// Monte Carlo outage estimate for one link configuration; the independent
// counterpart of the closed-form success probability.
inline double mc_success_prob(int i, double P_A, double P_B, double var_Ad,
                              double var_Bd, const RadioConstants& c,
                              std::int64_t draws, std::uint64_t seed,
                              double* se = nullptr) {
    std::mt19937_64 rng(seed);
    std::exponential_distribution<double> unit_exp(1.0);
    const double r = transmission_rate(i, c);
    std::int64_t ok = 0;
    for (std::int64_t k = 0; k < draws; ++k) {
        const double gA = var_Ad * unit_exp(rng);
        const double gB = var_Bd * unit_exp(rng);
        const double sinr = P_A * gA / (c.N0 * c.W + P_B * gB);
        if (c.W * std::log2(1.0 + sinr) > r) ++ok;
    }
    const double p = static_cast<double>(ok) / draws;
    if (se) *se = std::sqrt(std::max(p * (1.0 - p), 1e-12) / draws);
    return p;
}

namespace detail {

inline Verdict band_verdict(double est, double ref, double band,
                            double conclusive_band) {
    if (std::fabs(est - ref) <= band) return Verdict::Pass;
    return band > conclusive_band ? Verdict::Inconclusive : Verdict::Fail;
}

}  // namespace detail

// Full oracle suite: channel closed form vs Monte Carlo, silent-SU chain
// simulation vs the analytical steady state and delay, full simulation vs
// the analytical throughput bounds. Slot counts come from cfg.sim; small
// counts widen the bands and demote failures to inconclusive.
inline ValidationReport run_validation(const Config& cfg) {
    cfg.validate();
    ValidationReport rep;
    const ScenarioParams& p = cfg.params;
    const std::uint64_t seed = cfg.sim.seed;

    // channel closed form vs Monte Carlo
    const std::int64_t draws = std::max<std::int64_t>(cfg.sim.slots, 1000);
    struct { int i; double PA, PB; } cases[] = {
        {0, p.P_p, 0.0}, {0, p.P_p, p.P_max}, {1, p.P_p, p.P_p},
        {1, p.P_max, p.P_p}, {0, p.P_max, p.P_p},
    };
    int idx = 0;
    for (const auto& cs : cases) {
        double se = 0.0;
        const double est =
            mc_success_prob(cs.i, cs.PA, cs.PB, p.links.p_dp, p.links.s_dp,
                            p.consts, draws, seed + idx, &se);
        const double ref = success_prob(cs.i, cs.PA, cs.PB, p.links.p_dp,
                                        p.links.s_dp, p.consts);
        Check c;
        c.name = "channel closed form vs MC (i=" + std::to_string(cs.i) +
                 ", P_A=" + std::to_string(cs.PA) +
                 ", P_B=" + std::to_string(cs.PB) + ")";
        c.estimate = est;
        c.reference = ref;
        c.tolerance = 3.0 * se;
        c.verdict = detail::band_verdict(est, ref, c.tolerance, 0.01);
        rep.checks.push_back(c);
        ++idx;
    }

    // silent-SU simulation vs closed-form steady state / delay
    {
        const double mu = p.pu_success(0.0);
        ScenarioParams ps = p;
        SimConfig sc = cfg.sim;
        sc.seed = seed + 100;
        const SimResult sim = simulate(ps, Policy::silent(), sc);
        Check c0;
        c0.name = "silent-SU pi0 vs steady state";
        try {
            const SteadyState ss = steady_state(p.lambda_p, mu, mu);
            c0.estimate = sim.pi0_hat;
            c0.reference = ss.pi0();
            c0.tolerance = 3.0 * sim.se_pi0;
            c0.verdict =
                detail::band_verdict(c0.estimate, c0.reference, c0.tolerance, 0.01);
            rep.checks.push_back(c0);
            Check c1;
            c1.name = "silent-SU delay vs closed form";
            c1.estimate = sim.D_p_hat;
            c1.reference = mean_delay(ss);
            c1.tolerance = 3.0 * sim.se_D_p;
            c1.verdict = detail::band_verdict(c1.estimate, c1.reference,
                                              c1.tolerance, 0.1 * c1.reference);
            rep.checks.push_back(c1);
        } catch (const UnstableQueue&) {
            c0.name += " (skipped: unstable at these parameters)";
            c0.verdict = Verdict::Inconclusive;
            rep.checks.push_back(c0);
        }
    }

    // full simulation vs analytical bounds at the configured policy
    {
        SimConfig sc = cfg.sim;
        sc.seed = seed + 200;
        const SimResult sim = simulate(p, cfg.policy, sc);
        Check c;
        c.name = "simulated mu_s within [lower, upper] bounds";
        c.estimate = sim.mu_s_hat;
        try {
            const double lb =
                throughput_bound(p, cfg.policy, BoundMode::LowerThroughput).mu_s;
            const double ub =
                throughput_bound(p, cfg.policy, BoundMode::UpperThroughput).mu_s;
            const double slack = 3.0 * sim.se_mu_s + 0.01;
            c.reference = 0.5 * (lb + ub);
            c.tolerance = 0.5 * (ub - lb) + slack;
            c.verdict = detail::band_verdict(sim.mu_s_hat, c.reference,
                                             c.tolerance, 0.05);
            rep.checks.push_back(c);
        } catch (const UnstableQueue&) {
            c.name += " (skipped: unstable at these parameters)";
            c.verdict = Verdict::Inconclusive;
            rep.checks.push_back(c);
        }
    }

    return rep;
}

}  // namespace ehsa

#endif

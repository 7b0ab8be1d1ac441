#ifndef EHSA_THROUGHPUT_HPP
#define EHSA_THROUGHPUT_HPP

#include "ehsa/energy.hpp"
#include "ehsa/params.hpp"
#include "ehsa/queueing.hpp"

namespace ehsa {

struct ThroughputReport {
    double mu_s = 0.0;    // secondary packets per slot
    double eta = 0.0;     // aggregate primary service probability
    double pi0 = 0.0;     // primary empty-queue probability
    double Pavail = 0.0;  // battery availability probability
    double D_p = 0.0;     // average primary delay, slots
    BoundMode mode = BoundMode::LowerThroughput;
};

namespace detail {

// Per-branch SU success probabilities, conditioned on the PU being active or
// not. Busy-sensed transmissions use Ps2 and the post-sensing rate; post-NACK
// transmissions use Ps3 over the full slot. `eq6_literal` swaps the two power
// levels in these branches, matching formulations that pair them the other
// way round than the protocol description and the service-rate formulas do.
struct SuBranchRates {
    double idle_unsensed, idle_sensed_idle, idle_sensed_busy;
    double busy_unsensed, busy_sensed_idle, busy_sensed_busy;
    double busy_nack;
};

inline SuBranchRates su_branch_rates(const ScenarioParams& p, const Policy& a,
                                     bool eq6_literal) {
    const double Pb = eq6_literal ? a.Ps3 : a.Ps2;  // busy-sensed power
    const double Pn = eq6_literal ? a.Ps2 : a.Ps3;  // post-NACK power
    auto su = [&](int i, double Ps, double interf) {
        return success_prob(i, Ps, interf, p.links.s_ds, p.links.p_ds, p.consts);
    };
    SuBranchRates r;
    r.idle_unsensed = su(0, a.Ps1, 0.0);
    r.idle_sensed_idle = su(1, a.Ps1, 0.0);
    r.idle_sensed_busy = su(1, Pb, 0.0);
    r.busy_unsensed = su(0, a.Ps1, p.P_p);
    r.busy_sensed_idle = su(1, a.Ps1, p.P_p);
    r.busy_sensed_busy = su(1, Pb, p.P_p);
    r.busy_nack = su(0, Pn, p.P_p);
    return r;
}

}  // namespace detail

// Secondary throughput mu_s: success probability of the SU's packet averaged
// over the primary queue's phase distribution and every access branch, scaled
// by the battery availability.
inline double secondary_throughput(const ScenarioParams& p, const Policy& a,
                                   double Pavail, const SteadyState& ss,
                                   bool eq6_literal = false) {
    check_prob(Pavail, "Pavail");
    const auto r = detail::su_branch_rates(p, a, eq6_literal);
    const double empty =
        (1.0 - a.alpha_s) * a.alpha_t * r.idle_unsensed +
        a.alpha_s * (a.alpha_f * (1.0 - p.P_FA) * r.idle_sensed_idle +
                     a.alpha_b * p.P_FA * r.idle_sensed_busy);
    const double busy =
        (1.0 - a.alpha_s) * a.alpha_t * r.busy_unsensed +
        a.alpha_s * (a.alpha_f * p.P_MD * r.busy_sensed_idle +
                     a.alpha_b * (1.0 - p.P_MD) * r.busy_sensed_busy);
    const double retx = p.q * a.alpha_r * r.busy_nack + (1.0 - p.q) * busy;
    return Pavail *
           (ss.pi0() * empty + ss.sum_pi() * busy + ss.sum_chi() * retx);
}

// Primary success rates under the mode's decoupling: worst case substitutes
// an always-charged battery into Omega_p/Gamma_p, best case removes the SU's
// interference entirely.
inline SuccessRates decoupled_rates(const ScenarioParams& p, const Policy& a,
                                    BoundMode mode) {
    if (mode == BoundMode::LowerThroughput) return success_rates(p, a, 1.0);
    const double s = p.pu_success(0.0);
    return {compute_gamma(p, a), s, s};
}

// Battery availability for the mode, with the zero-drain corner resolved:
// a policy that never spends energy has vacuous availability.
inline double decoupled_availability(const ScenarioParams& p, const Policy& a,
                                     BoundMode mode) {
    if (surrogate_drain(mode, p, a) > 0.0) return availability_prob(mode, p, a);
    if (a.Ps1 == 0.0 && a.Ps2 == 0.0 && a.Ps3 == 0.0)
        return 0.0;  // never transmits with energy; mu_s is 0 regardless
    return p.lambda_e > 0.0 ? 1.0 : 0.0;
}

// Full bound evaluation: decoupled primary success rates, surrogate battery
// availability, closed-form steady state, throughput and delay.
// Throws UnstableQueue when lambda_p >= eta for the chosen mode.
inline ThroughputReport throughput_bound(const ScenarioParams& p,
                                         const Policy& a, BoundMode mode,
                                         bool eq6_literal = false) {
    const SuccessRates sr = decoupled_rates(p, a, mode);
    const double omega_p = sr.omega_p;
    const double gamma_p = sr.gamma_p;
    const double Pavail = decoupled_availability(p, a, mode);
    const SteadyState ss = steady_state(p.lambda_p, omega_p, gamma_p);
    ThroughputReport rep;
    rep.mode = mode;
    rep.eta = ss.eta();
    rep.pi0 = ss.pi0();
    rep.Pavail = Pavail;
    rep.mu_s = secondary_throughput(p, a, Pavail, ss, eq6_literal);
    rep.D_p = mean_delay(ss);
    return rep;
}

}  // namespace ehsa

#endif

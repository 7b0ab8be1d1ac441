#ifndef EHSA_ENERGY_HPP
#define EHSA_ENERGY_HPP

#include <algorithm>
#include <stdexcept>

#include "ehsa/params.hpp"
#include "ehsa/queueing.hpp"

namespace ehsa {

// Which decoupling of the battery/primary-queue interaction is in force.
// LowerThroughput drains the battery at the fastest level every transmission;
// UpperThroughput drains it at the slowest.
enum class BoundMode { LowerThroughput, UpperThroughput };

inline const char* to_string(BoundMode m) {
    return m == BoundMode::LowerThroughput ? "lower" : "upper";
}

struct ZeroDrain : std::runtime_error {
    ZeroDrain() : std::runtime_error("per-transmission drain energy is zero") {}
};

// Per-transmission drain assumed by the M/D/1 battery surrogate of `mode`.
inline double surrogate_drain(BoundMode mode, const ScenarioParams& p,
                              const Policy& a) {
    const double Ts = p.consts.T - p.consts.tau;
    if (mode == BoundMode::LowerThroughput) return a.Ps1 * p.consts.T;
    return std::min(a.Ps2 * Ts, a.Ps3 * p.consts.T);
}

// Probability the battery holds enough energy for one transmission, from an
// M/D/1 queue with arrival rate lambda_e and the mode's drain as service
// requirement.
inline double availability_prob(BoundMode mode, const ScenarioParams& p,
                                const Policy& a) {
    const double drain = surrogate_drain(mode, p, a);
    if (drain <= 0.0) throw ZeroDrain();
    return std::min(1.0, p.lambda_e / drain);
}

// Mean energy drained per slot, weighting each protocol branch's cost by the
// primary queue's phase probabilities. Diagnostic only; the bounds use the
// M/D/1 surrogate instead.
inline double energy_service_rate(const ScenarioParams& p, const Policy& a,
                                  const SteadyState& ss) {
    const double T = p.consts.T;
    const double Ts = T - p.consts.tau;
    const double empty =
        (1.0 - a.alpha_s) * a.alpha_t * a.Ps1 * T +
        a.alpha_s *
            (a.alpha_f * (1.0 - p.P_FA) * a.Ps1 + a.alpha_b * p.P_FA * a.Ps2) *
            Ts;
    const double busy =
        (1.0 - a.alpha_s) * a.alpha_t * a.Ps1 * T +
        a.alpha_s *
            (a.alpha_f * p.P_MD * a.Ps1 + a.alpha_b * (1.0 - p.P_MD) * a.Ps2) *
            Ts;
    const double retx = p.q * a.alpha_r * a.Ps3 * T + (1.0 - p.q) * busy;
    return ss.pi0() * empty + ss.sum_pi() * busy + ss.sum_chi() * retx;
}

}  // namespace ehsa

#endif

#ifndef EHSA_QUEUEING_HPP
#define EHSA_QUEUEING_HPP

#include <cmath>
#include <stdexcept>

#include "ehsa/params.hpp"

namespace ehsa {

// lambda_p >= eta: the primary queue has no stationary distribution.
// This is a constraint violation for the optimizer, not a program bug.
struct UnstableQueue : std::runtime_error {
    UnstableQueue(double lambda_p, double eta)
        : std::runtime_error("unstable primary queue: lambda_p=" +
                             std::to_string(lambda_p) +
                             " >= eta=" + std::to_string(eta)),
          lambda_p(lambda_p), eta(eta) {}
    double lambda_p;
    double eta;
};

inline constexpr double kStabilityMargin = 1e-9;

// Success probability of a first primary transmission conditioned on the SU
// battery being charged: mixture over the SU's sense/no-sense branches and
// their sensing-error corrupted access decisions. Pavail is accepted for
// signature symmetry with the other two rates and is not used.
inline double compute_gamma(const ScenarioParams& p, const Policy& a,
                            double /*Pavail*/ = 1.0) {
    const double s_idle = p.pu_success(0.0);
    return (1.0 - a.alpha_s) *
               (a.alpha_t * p.pu_success(a.Ps1) + (1.0 - a.alpha_t) * s_idle) +
           a.alpha_s * p.P_MD *
               (a.alpha_f * p.pu_success(a.Ps1) + (1.0 - a.alpha_f) * s_idle) +
           a.alpha_s * (1.0 - p.P_MD) *
               (a.alpha_b * p.pu_success(a.Ps2) + (1.0 - a.alpha_b) * s_idle);
}

// First-transmission success probability Omega_p.
inline double compute_omega_p(const ScenarioParams& p, const Policy& a,
                              double Pavail) {
    check_prob(Pavail, "Pavail");
    return Pavail * compute_gamma(p, a) + (1.0 - Pavail) * p.pu_success(0.0);
}

// Retransmission success probability Gamma_p. A decoded NACK (prob q) puts
// the SU on its post-NACK branch; an undecoded one leaves it on the default
// sense-or-transmit behaviour.
inline double compute_gamma_p(const ScenarioParams& p, const Policy& a,
                              double Pavail) {
    check_prob(Pavail, "Pavail");
    const double s_idle = p.pu_success(0.0);
    const double nack_branch =
        p.q * (a.alpha_r * p.pu_success(a.Ps3) + (1.0 - a.alpha_r) * s_idle) +
        (1.0 - p.q) * compute_gamma(p, a);
    return Pavail * nack_branch + (1.0 - Pavail) * s_idle;
}

struct SuccessRates {
    double gamma;
    double omega_p;
    double gamma_p;
};

inline SuccessRates success_rates(const ScenarioParams& p, const Policy& a,
                                  double Pavail) {
    return {compute_gamma(p, a), compute_omega_p(p, a, Pavail),
            compute_gamma_p(p, a, Pavail)};
}

// Stationary distribution of the primary queue's two-phase chain:
// first-transmission states served with omega_p, retransmission states with
// gamma_p, Bernoulli(lambda_p) arrivals superposed. All accessors are closed
// forms; nothing here iterates.
class SteadyState {
public:
    SteadyState(double lambda_p, double omega_p, double gamma_p)
        : lambda_p_(lambda_p), omega_p_(omega_p), gamma_p_(gamma_p) {
        for (double v : {lambda_p, omega_p, gamma_p})
            if (!(v > 0.0 && v < 1.0 + 1e-15))
                throw std::invalid_argument(
                    "steady_state inputs must be in (0,1)");
        eta_ = lambda_p * omega_p + (1.0 - lambda_p) * gamma_p;
        if (lambda_p > eta_ - kStabilityMargin) throw UnstableQueue(lambda_p, eta_);
        pi0_ = (eta_ - lambda_p) / gamma_p;
        rho_ = lambda_p * (1.0 - eta_) / ((1.0 - lambda_p) * eta_);
    }

    double lambda_p() const { return lambda_p_; }
    double omega_p() const { return omega_p_; }
    double gamma_p() const { return gamma_p_; }
    double eta() const { return eta_; }
    double pi0() const { return pi0_; }
    double rho() const { return rho_; }

    // P{k packets, first-transmission phase}
    double pi(int k) const {
        if (k < 0) throw std::invalid_argument("k must be >= 0");
        if (k == 0) return pi0_;
        if (k == 1)
            return pi0_ * lambda_p_ / (1.0 - lambda_p_) *
                   (lambda_p_ + (1.0 - lambda_p_) * gamma_p_) / eta_;
        return pi0_ * lambda_p_ * (1.0 - omega_p_) /
               ((1.0 - eta_) * (1.0 - eta_)) * std::pow(rho_, k);
    }

    // P{k packets, retransmission phase}; chi_0 = 0 by construction.
    double chi(int k) const {
        if (k < 0) throw std::invalid_argument("k must be >= 0");
        if (k == 0) return 0.0;
        if (k == 1) return pi0_ * lambda_p_ / eta_ * (1.0 - omega_p_);
        return pi0_ * (1.0 - lambda_p_) * (1.0 - omega_p_) /
               ((1.0 - eta_) * (1.0 - eta_)) * std::pow(rho_, k);
    }

    double sum_pi() const { return lambda_p_; }
    double sum_chi() const { return lambda_p_ * (1.0 - omega_p_) / gamma_p_; }

private:
    double lambda_p_, omega_p_, gamma_p_;
    double eta_, pi0_, rho_;
};

inline SteadyState steady_state(double lambda_p, double omega_p,
                                double gamma_p) {
    return SteadyState(lambda_p, omega_p, gamma_p);
}

namespace detail {

// Little's-law occupancy sum, truncated where the geometric tail drops below
// 1e-12. Only used when the closed form's (1 - eta) denominator degenerates.
inline double mean_delay_series(const SteadyState& ss) {
    double occ = ss.pi(1) + ss.chi(1);
    if (ss.rho() > 0.0) {
        double tail_scale =
            ss.pi0() * (1.0 - ss.omega_p()) * (2.0 - ss.lambda_p()) /
            ((1.0 - ss.eta()) * (1.0 - ss.eta()));
        for (int k = 2;; ++k) {
            const double term = static_cast<double>(k) * (ss.pi(k) + ss.chi(k));
            occ += term;
            if (tail_scale * std::pow(ss.rho(), k) * k * ss.rho() /
                    (1.0 - ss.rho()) < 1e-12)
                break;
            if (k > 2000000) break;  // unreachable for stable inputs
        }
    }
    return occ / ss.lambda_p();
}

}  // namespace detail

// Average primary packet delay in slots.
inline double mean_delay(const SteadyState& ss) {
    const double lam = ss.lambda_p();
    const double eta = ss.eta();
    if (1.0 - eta < 1e-12) return detail::mean_delay_series(ss);
    const double num = (ss.omega_p() - eta) * (eta - lam) * (eta - lam) +
                       (1.0 - lam) * (1.0 - lam) * (1.0 - ss.omega_p()) * eta;
    const double den =
        (eta - lam) * (1.0 - lam) * (1.0 - eta) * ss.gamma_p();
    return num / den;
}

}  // namespace ehsa

#endif

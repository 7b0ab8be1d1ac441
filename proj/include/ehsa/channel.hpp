#ifndef EHSA_CHANNEL_HPP
#define EHSA_CHANNEL_HPP

#include <cmath>
#include <stdexcept>

namespace ehsa {

// Slot timing and link-budget constants shared by every rate/outage formula.
struct RadioConstants {
    double beta = 10.0;  // payload size, bits
    double T = 1.0;      // slot duration, seconds
    double tau = 0.3;    // sensing duration, seconds
    double W = 8.0;      // bandwidth, Hz
    double N0 = 1.0;     // noise power spectral density, Watts/Hz

    void validate() const {
        if (beta < 0.0) throw std::invalid_argument("beta must be >= 0");
        if (T <= 0.0) throw std::invalid_argument("T must be > 0");
        if (tau <= 0.0 || tau >= T) throw std::invalid_argument("tau must be in (0, T)");
        if (W <= 0.0) throw std::invalid_argument("W must be > 0");
        if (N0 <= 0.0) throw std::invalid_argument("N0 must be > 0");
    }
};

// Rayleigh fading power sigma^2 for each ordered transmitter->receiver pair.
struct LinkVariances {
    double p_dp = 1.0;  // primary tx -> primary destination
    double p_ds = 1.0;  // primary tx -> secondary destination
    double s_dp = 1.0;  // secondary tx -> primary destination
    double s_ds = 1.0;  // secondary tx -> secondary destination

    void validate() const {
        if (p_dp <= 0.0 || p_ds <= 0.0 || s_dp <= 0.0 || s_ds <= 0.0)
            throw std::invalid_argument("all fading variances must be > 0");
    }
};

// Fixed-payload transmission rate. Index 0: full-slot transmission,
// index 1: transmission squeezed after a sensing phase.
inline double transmission_rate(int i, const RadioConstants& c) {
    return c.beta / (c.T - static_cast<double>(i) * c.tau);
}

// Probability that a packet sent at power P_A survives one Rayleigh-faded
// interferer at power P_B, i.e. Pr{ W log2(1 + SINR) > r_i }.
inline double success_prob(int i, double P_A, double P_B, double var_Ad,
                           double var_Bd, const RadioConstants& c) {
    if (P_A < 0.0 || P_B < 0.0) throw std::invalid_argument("powers must be >= 0");
    if (var_Ad <= 0.0 || var_Bd <= 0.0)
        throw std::invalid_argument("fading variances must be > 0");
    if (c.beta == 0.0) return 1.0;   // zero rate never suffers outage
    if (P_A == 0.0) return 0.0;      // limit value, keeps the power box closed
    const double r = transmission_rate(i, c);
    const double k = std::exp2(r / c.W) - 1.0;
    const double a = k * c.N0 * c.W / P_A;
    const double b = k * P_B / P_A;
    return var_Ad * std::exp(-a / var_Ad) / (var_Ad + b * var_Bd);
}

}  // namespace ehsa

#endif

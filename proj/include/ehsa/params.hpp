#ifndef EHSA_PARAMS_HPP
#define EHSA_PARAMS_HPP

#include <stdexcept>
#include <string>

#include "ehsa/channel.hpp"

namespace ehsa {

inline void check_prob(double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0))
        throw std::invalid_argument(std::string(name) + " must be in [0,1]");
}

// Everything exogenous to the model: traffic, energy supply, sensing quality,
// feedback reliability, power/delay QoS limits and the radio constants.
struct ScenarioParams {
    double lambda_p = 0.2;  // primary packet arrival probability per slot
    double lambda_e = 20.0; // mean harvested energy units per slot (Poisson)
    double q = 0.5;         // probability the SU decodes primary feedback
    double P_p = 20.0;      // primary transmit power, Watts
    double P_MD = 0.3;      // miss-detection probability
    double P_FA = 0.3;      // false-alarm probability
    double P_max = 32.0;    // secondary power cap, Watts
    double D_max = 10.0;    // primary delay threshold, slots
    RadioConstants consts;
    LinkVariances links;

    void validate() const {
        if (!(lambda_p > 0.0 && lambda_p < 1.0))
            throw std::invalid_argument("lambda_p must be in (0,1)");
        if (lambda_e < 0.0) throw std::invalid_argument("lambda_e must be >= 0");
        check_prob(q, "q");
        check_prob(P_MD, "P_MD");
        check_prob(P_FA, "P_FA");
        if (P_p <= 0.0) throw std::invalid_argument("P_p must be > 0");
        if (P_max <= 0.0) throw std::invalid_argument("P_max must be > 0");
        if (D_max < 1.0) throw std::invalid_argument("D_max must be >= 1");
        consts.validate();
        links.validate();
    }

    // Success probability of the primary link against an interferer at P_B.
    double pu_success(double P_B) const {
        return success_prob(0, P_p, P_B, links.p_dp, links.s_dp, consts);
    }
};

// The eight decision variables: five sensing/access probabilities and the
// three transmit power levels (unsensed or idle-sensed, busy-sensed,
// post-NACK).
struct Policy {
    double alpha_s = 0.0;  // sense the spectrum
    double alpha_f = 0.0;  // access after idle sensing outcome
    double alpha_t = 0.0;  // access without sensing
    double alpha_b = 0.0;  // access after busy sensing outcome
    double alpha_r = 0.0;  // access after a decoded NACK
    double Ps1 = 0.0;      // Watts, unsensed / idle-sensed transmissions
    double Ps2 = 0.0;      // Watts, busy-sensed transmissions
    double Ps3 = 0.0;      // Watts, post-NACK transmissions

    void validate(double P_max) const {
        check_prob(alpha_s, "alpha_s");
        check_prob(alpha_f, "alpha_f");
        check_prob(alpha_t, "alpha_t");
        check_prob(alpha_b, "alpha_b");
        check_prob(alpha_r, "alpha_r");
        for (double p : {Ps1, Ps2, Ps3})
            if (!(p >= 0.0 && p <= P_max))
                throw std::invalid_argument("secondary powers must be in [0, P_max]");
    }

    static Policy silent() { return Policy{}; }
};

}  // namespace ehsa

#endif

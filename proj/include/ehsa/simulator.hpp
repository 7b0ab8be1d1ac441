#ifndef EHSA_SIMULATOR_HPP
#define EHSA_SIMULATOR_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "ehsa/channel.hpp"
#include "ehsa/params.hpp"

namespace ehsa {

enum class ForceAvailability { Off, Always, Never };

struct SimConfig {
    std::int64_t slots = 1000000;
    std::int64_t warmup = 10000;
    std::uint64_t seed = 1;
    ForceAvailability force_availability = ForceAvailability::Off;

    void validate() const {
        if (warmup < 0 || slots <= warmup)
            throw std::invalid_argument("need slots > warmup >= 0");
    }
};

struct SimResult {
    double mu_s_hat = 0.0;          // SU packets delivered per slot
    double D_p_hat = 0.0;           // Little's-law primary delay, slots
    double pi0_hat = 0.0;           // fraction of slots with empty Qp
    double mu_e_hat = 0.0;          // energy drained per slot
    double energy_outage_rate = 0.0;  // aborted / intended SU transmissions
    double lambda_p_hat = 0.0;      // measured primary arrival rate
    double mean_qp = 0.0;           // time-average primary occupancy
    std::int64_t sample_slots = 0;
    std::int64_t belief_mismatches = 0;  // slots where the SU's phase belief
                                         // disagreed with the true phase
    double total_energy_in = 0.0;   // whole-run ledger, warmup included
    double total_energy_out = 0.0;
    double qe_final = 0.0;
    double se_mu_s = 0.0;   // standard errors (batch means where correlated)
    double se_pi0 = 0.0;
    double se_D_p = 0.0;
    double se_mu_e = 0.0;
};

// Slot-level simulation of the coupled system: primary queue with ARQ
// phases, SU battery with Poisson harvesting, probabilistic sensing and
// feedback decoding, per-slot Rayleigh draws. Strictly sequential; the seed
// fixes every draw.
inline SimResult simulate(const ScenarioParams& p, const Policy& a,
                          const SimConfig& cfg) {
    p.validate();
    a.validate(p.P_max);
    cfg.validate();

    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::poisson_distribution<int> harvest(p.lambda_e);
    std::exponential_distribution<double> unit_exp(1.0);

    const double T = p.consts.T;
    const double Ts = T - p.consts.tau;
    const double r0 = transmission_rate(0, p.consts);
    const double r1 = transmission_rate(1, p.consts);
    const bool track_energy =
        cfg.force_availability == ForceAvailability::Off;

    std::int64_t qp = 0;
    double qe = 0.0;
    bool retransmission = false;   // true primary phase for the head packet
    bool su_knows_retx = false;    // SU decoded a NACK in the previous slot

    // accumulators (post-warmup)
    std::int64_t su_success = 0, empty_slots = 0, arrivals = 0;
    double qp_sum = 0.0, drained = 0.0;
    std::int64_t intended = 0, aborted = 0;
    const std::int64_t n = cfg.slots - cfg.warmup;
    constexpr int kBatches = 100;
    const std::int64_t batch_len = std::max<std::int64_t>(1, n / kBatches);
    std::vector<double> b_mu_s, b_pi0, b_qp, b_mu_e, b_arr;
    double cb_mu_s = 0, cb_pi0 = 0, cb_qp = 0, cb_mu_e = 0, cb_arr = 0;
    std::int64_t in_batch = 0;

    std::int64_t belief_mismatches = 0;
    double energy_in = 0.0, energy_out = 0.0;

    for (std::int64_t slot = 0; slot < cfg.slots; ++slot) {
        const bool record = slot >= cfg.warmup;
        const bool pu_tx = qp > 0;
        if (su_knows_retx != (pu_tx && retransmission)) ++belief_mismatches;

        // SU decision tree
        bool su_tx = false;
        double su_power = 0.0, su_cost = 0.0, su_rate = 0.0;
        bool su_intends = false;
        if (su_knows_retx) {
            if (u(rng) < a.alpha_r) {
                su_intends = true;
                su_power = a.Ps3;
                su_cost = a.Ps3 * T;
                su_rate = r0;
            }
        } else if (u(rng) < a.alpha_s) {
            const bool busy_sensed =
                pu_tx ? (u(rng) >= p.P_MD) : (u(rng) < p.P_FA);
            if (busy_sensed) {
                if (u(rng) < a.alpha_b) {
                    su_intends = true;
                    su_power = a.Ps2;
                    su_cost = a.Ps2 * Ts;
                    su_rate = r1;
                }
            } else if (u(rng) < a.alpha_f) {
                su_intends = true;
                su_power = a.Ps1;
                su_cost = a.Ps1 * Ts;
                su_rate = r1;
            }
        } else if (u(rng) < a.alpha_t) {
            su_intends = true;
            su_power = a.Ps1;
            su_cost = a.Ps1 * T;
            su_rate = r0;
        }
        if (su_intends) {
            const bool available =
                cfg.force_availability == ForceAvailability::Always ||
                (track_energy && qe >= su_cost);
            if (available) {
                su_tx = true;
                if (track_energy) {
                    qe -= su_cost;
                    energy_out += su_cost;
                }
            }
        }

        // channel outcomes
        bool pu_success = false;
        if (pu_tx) {
            const double g_pd = p.links.p_dp * unit_exp(rng);
            const double interf =
                su_tx ? su_power * p.links.s_dp * unit_exp(rng) : 0.0;
            const double sinr =
                p.P_p * g_pd / (p.consts.N0 * p.consts.W + interf);
            pu_success = p.consts.W * std::log2(1.0 + sinr) > r0;
        }
        bool su_ok = false;
        if (su_tx) {
            const double g_sd = p.links.s_ds * unit_exp(rng);
            const double interf =
                pu_tx ? p.P_p * p.links.p_ds * unit_exp(rng) : 0.0;
            const double sinr =
                su_power * g_sd / (p.consts.N0 * p.consts.W + interf);
            su_ok = su_power > 0.0 &&
                    p.consts.W * std::log2(1.0 + sinr) > su_rate;
        }

        // feedback: generated only when the PU transmitted; erasure model
        su_knows_retx = pu_tx && !pu_success && (u(rng) < p.q);

        const int arr = u(rng) < p.lambda_p ? 1 : 0;

        if (record) {
            qp_sum += static_cast<double>(qp);
            if (qp == 0) ++empty_slots;
            if (su_ok) ++su_success;
            arrivals += arr;
            if (su_intends) {
                ++intended;
                if (!su_tx) ++aborted;
            }
            if (su_tx) drained += su_cost;

            cb_mu_s += su_ok ? 1.0 : 0.0;
            cb_pi0 += qp == 0 ? 1.0 : 0.0;
            cb_qp += static_cast<double>(qp);
            cb_mu_e += su_tx ? su_cost : 0.0;
            cb_arr += arr;
            if (++in_batch == batch_len) {
                b_mu_s.push_back(cb_mu_s / batch_len);
                b_pi0.push_back(cb_pi0 / batch_len);
                b_qp.push_back(cb_qp / batch_len);
                b_mu_e.push_back(cb_mu_e / batch_len);
                b_arr.push_back(cb_arr / batch_len);
                cb_mu_s = cb_pi0 = cb_qp = cb_mu_e = cb_arr = 0.0;
                in_batch = 0;
            }
        }

        // queue updates: departures before arrivals
        if (pu_tx) {
            if (pu_success) {
                --qp;
                retransmission = false;  // next head packet starts fresh
            } else {
                retransmission = true;
            }
        } else {
            retransmission = false;
        }
        qp += arr;
        if (track_energy) {
            const double h = static_cast<double>(harvest(rng));
            qe += h;
            energy_in += h;
        }
    }

    SimResult res;
    res.sample_slots = n;
    res.belief_mismatches = belief_mismatches;
    res.total_energy_in = energy_in;
    res.total_energy_out = energy_out;
    res.qe_final = qe;
    res.mu_s_hat = static_cast<double>(su_success) / n;
    res.pi0_hat = static_cast<double>(empty_slots) / n;
    res.mu_e_hat = drained / n;
    res.mean_qp = qp_sum / n;
    res.lambda_p_hat = static_cast<double>(arrivals) / n;
    res.energy_outage_rate =
        intended > 0 ? static_cast<double>(aborted) / intended : 0.0;
    res.D_p_hat =
        res.lambda_p_hat > 0.0 ? res.mean_qp / res.lambda_p_hat : 0.0;

    auto batch_se = [](const std::vector<double>& b) {
        if (b.size() < 2) return 0.0;
        double mean = 0.0;
        for (double v : b) mean += v;
        mean /= b.size();
        double var = 0.0;
        for (double v : b) var += (v - mean) * (v - mean);
        var /= (b.size() - 1);
        return std::sqrt(var / b.size());
    };
    res.se_mu_s = batch_se(b_mu_s);
    res.se_pi0 = batch_se(b_pi0);
    res.se_mu_e = batch_se(b_mu_e);
    // delay SE via per-batch Little's-law ratios
    if (b_qp.size() >= 2) {
        std::vector<double> ratios;
        for (std::size_t i = 0; i < b_qp.size(); ++i)
            if (b_arr[i] > 0.0) ratios.push_back(b_qp[i] / b_arr[i]);
        res.se_D_p = batch_se(ratios);
    }
    return res;
}

}  // namespace ehsa

#endif

#ifndef EHSA_OPTIMIZER_HPP
#define EHSA_OPTIMIZER_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

#include "ehsa/throughput.hpp"

namespace ehsa {

struct OptimOptions {
    int restarts = 64;
    int max_iters = 400;        // Nelder-Mead iterations per restart
    double tol = 1e-6;          // objective tolerance (convergence, tie-break)
    std::uint64_t seed = 1;
    bool enforce_power_order = false;  // project Ps3 <= Ps2 <= Ps1
    bool eq6_literal = false;
    bool pin_powers = false;    // fix all powers at P_max, optimize alphas only
    double penalty_weight = 1e3;
    bool keep_history = false;
};

struct EvalOutcome {
    double mu_s = 0.0;
    double eta = 0.0;
    double D_p = std::numeric_limits<double>::infinity();
    bool feasible = false;
};

struct OptimResult {
    Policy best_policy;
    ThroughputReport report;
    bool feasible = false;
    int restarts_converged = 0;
    std::vector<double> objective_history;  // best objective per restart
};

// Constraint check through the same bound evaluation the optimizer maximizes.
// Instability is data here, not an error: it is reported as infeasible with
// mu_s = 0 and infinite delay.
inline EvalOutcome evaluate(const ScenarioParams& p, const Policy& a,
                            BoundMode mode, bool eq6_literal = false) {
    EvalOutcome out;
    try {
        const ThroughputReport rep = throughput_bound(p, a, mode, eq6_literal);
        out.mu_s = rep.mu_s;
        out.eta = rep.eta;
        out.D_p = rep.D_p;
        out.feasible = p.lambda_p <= rep.eta - kStabilityMargin &&
                       rep.D_p <= p.D_max + 1e-9;
        if (!out.feasible && p.lambda_p > rep.eta - kStabilityMargin) {
            out.mu_s = 0.0;
            out.D_p = std::numeric_limits<double>::infinity();
        }
    } catch (const UnstableQueue& e) {
        out.eta = e.eta;
    }
    return out;
}

namespace detail {

constexpr int kDim = 8;  // alpha_s, alpha_f, alpha_t, alpha_b, alpha_r, Ps1..3

using Point = std::array<double, kDim>;  // all coordinates scaled to [0,1]

inline Policy decode(const Point& x, const ScenarioParams& p,
                     const OptimOptions& opt) {
    Policy a;
    a.alpha_s = x[0];
    a.alpha_f = x[1];
    a.alpha_t = x[2];
    a.alpha_b = x[3];
    a.alpha_r = x[4];
    if (opt.pin_powers) {
        a.Ps1 = a.Ps2 = a.Ps3 = p.P_max;
    } else {
        a.Ps1 = x[5] * p.P_max;
        a.Ps2 = x[6] * p.P_max;
        a.Ps3 = x[7] * p.P_max;
        if (opt.enforce_power_order) {
            std::array<double, 3> ps = {a.Ps1, a.Ps2, a.Ps3};
            std::sort(ps.begin(), ps.end(), std::greater<>());
            a.Ps1 = ps[0];
            a.Ps2 = ps[1];
            a.Ps3 = ps[2];
        }
    }
    return a;
}

inline void clamp_unit(Point& x) {
    for (double& v : x) v = std::clamp(v, 0.0, 1.0);
}

// Penalized objective: mu_s minus quadratic exterior penalties on the
// stability and delay constraints. Unstable points score strictly negative
// and are pushed toward the stability boundary.
inline double penalized_objective(const Point& x, const ScenarioParams& p,
                                  BoundMode mode, const OptimOptions& opt) {
    const Policy a = decode(x, p, opt);
    const SuccessRates sr = decoupled_rates(p, a, mode);
    const double eta =
        p.lambda_p * sr.omega_p + (1.0 - p.lambda_p) * sr.gamma_p;
    const double viol_stab =
        std::max(0.0, p.lambda_p + kStabilityMargin - eta);
    if (viol_stab > 0.0)
        return -opt.penalty_weight * (viol_stab * viol_stab + viol_stab);
    const SteadyState ss = steady_state(p.lambda_p, sr.omega_p, sr.gamma_p);
    const double Pavail = decoupled_availability(p, a, mode);
    const double mu =
        secondary_throughput(p, a, Pavail, ss, opt.eq6_literal);
    const double viol_delay = std::max(0.0, mean_delay(ss) - p.D_max);
    return mu - opt.penalty_weight * viol_delay * viol_delay;
}

// Nelder-Mead on the unit box with coordinate clamping. Deterministic given
// the start point. Returns the best vertex found.
inline std::pair<Point, double> nelder_mead(
    const Point& start, const ScenarioParams& p, BoundMode mode,
    const OptimOptions& opt) {
    auto f = [&](const Point& x) { return -penalized_objective(x, p, mode, opt); };

    std::vector<std::pair<double, Point>> simplex;
    simplex.reserve(kDim + 1);
    simplex.emplace_back(f(start), start);
    for (int i = 0; i < kDim; ++i) {
        Point v = start;
        v[i] += v[i] > 0.5 ? -0.15 : 0.15;
        clamp_unit(v);
        simplex.emplace_back(f(v), v);
    }

    for (int iter = 0; iter < opt.max_iters; ++iter) {
        std::sort(simplex.begin(), simplex.end(),
                  [](const auto& l, const auto& r) { return l.first < r.first; });
        if (simplex.back().first - simplex.front().first < opt.tol &&
            iter > 2 * kDim)
            break;

        Point centroid{};
        for (int i = 0; i < kDim; ++i) {
            for (int d = 0; d < kDim; ++d) centroid[d] += simplex[i].second[d];
        }
        for (double& c : centroid) c /= kDim;
        const Point& worst = simplex.back().second;

        auto along = [&](double t) {
            Point y;
            for (int d = 0; d < kDim; ++d)
                y[d] = centroid[d] + t * (centroid[d] - worst[d]);
            clamp_unit(y);
            return y;
        };

        const Point refl = along(1.0);
        const double f_refl = f(refl);
        if (f_refl < simplex.front().first) {
            const Point exp_ = along(2.0);
            const double f_exp = f(exp_);
            simplex.back() = f_exp < f_refl ? std::make_pair(f_exp, exp_)
                                            : std::make_pair(f_refl, refl);
        } else if (f_refl < simplex[kDim - 1].first) {
            simplex.back() = {f_refl, refl};
        } else {
            const bool outside = f_refl < simplex.back().first;
            const Point con = along(outside ? 0.5 : -0.5);
            const double f_con = f(con);
            if (f_con < std::min(f_refl, simplex.back().first)) {
                simplex.back() = {f_con, con};
            } else {
                // shrink toward the best vertex
                for (int i = 1; i <= kDim; ++i) {
                    Point& v = simplex[i].second;
                    for (int d = 0; d < kDim; ++d)
                        v[d] = 0.5 * (v[d] + simplex[0].second[d]);
                    clamp_unit(v);
                    simplex[i].first = f(v);
                }
            }
        }
    }
    auto best = std::min_element(
        simplex.begin(), simplex.end(),
        [](const auto& l, const auto& r) { return l.first < r.first; });
    return {best->second, -best->first};
}

// Halton sequence over the unit box.
inline Point halton_point(int index) {
    constexpr std::array<int, kDim> primes = {2, 3, 5, 7, 11, 13, 17, 19};
    Point x{};
    for (int d = 0; d < kDim; ++d) {
        double f = 1.0, r = 0.0;
        int i = index + 1;
        while (i > 0) {
            f /= primes[d];
            r += f * (i % primes[d]);
            i /= primes[d];
        }
        x[d] = r;
    }
    return x;
}

// Stratified start points: the Halton sequence under a fixed seed-derived
// Cranley-Patterson rotation. Point r depends only on (seed, r), so growing
// the restart count extends the same stream.
inline std::vector<Point> multistart_points(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Point shift;
    for (double& s : shift) s = u(rng);
    std::vector<Point> pts(n);
    for (int i = 0; i < n; ++i) {
        pts[i] = halton_point(i);
        for (int d = 0; d < kDim; ++d)
            pts[i][d] = std::fmod(pts[i][d] + shift[d], 1.0);
    }
    return pts;
}

}  // namespace detail

// Multi-start derivative-free maximization of the selected throughput bound
// subject to the stability and delay constraints. Deterministic for a fixed
// seed and restart count; the best-of reduction is order-independent with
// ties (within tol) broken by the lowest restart index.
inline OptimResult maximize(const ScenarioParams& p, BoundMode mode,
                            const OptimOptions& opt = {}) {
    p.validate();
    if (opt.restarts < 1) throw std::invalid_argument("restarts must be >= 1");
    if (opt.tol <= 0.0) throw std::invalid_argument("tol must be > 0");

    const auto starts = detail::multistart_points(opt.restarts, opt.seed);

    struct Candidate {
        double mu_s;
        int restart;
        Policy policy;
    };
    std::optional<Candidate> best;
    OptimResult res;

    for (int r = 0; r < opt.restarts; ++r) {
        const auto [pt, obj] = detail::nelder_mead(starts[r], p, mode, opt);
        if (opt.keep_history) res.objective_history.push_back(obj);
        const Policy a = detail::decode(pt, p, opt);
        const EvalOutcome out = evaluate(p, a, mode, opt.eq6_literal);
        if (!out.feasible) continue;
        ++res.restarts_converged;
        // Lowest restart index wins ties within tol; with the loop running
        // in index order that reduces to a strict improvement test.
        if (!best || out.mu_s > best->mu_s + opt.tol)
            best = Candidate{out.mu_s, r, a};
    }

    if (!best) {
        // Space-filling feasibility sweep; includes the silent policy.
        std::optional<Candidate> seedpt;
        for (int i = 0; i < 10000; ++i) {
            const detail::Point x =
                i == 0 ? detail::Point{} : detail::halton_point(i);
            const Policy a = detail::decode(x, p, opt);
            const EvalOutcome out = evaluate(p, a, mode, opt.eq6_literal);
            if (out.feasible && (!seedpt || out.mu_s > seedpt->mu_s))
                seedpt = Candidate{out.mu_s, i, a};
        }
        if (seedpt) {
            detail::Point x0 = {seedpt->policy.alpha_s, seedpt->policy.alpha_f,
                                seedpt->policy.alpha_t, seedpt->policy.alpha_b,
                                seedpt->policy.alpha_r,
                                seedpt->policy.Ps1 / p.P_max,
                                seedpt->policy.Ps2 / p.P_max,
                                seedpt->policy.Ps3 / p.P_max};
            const auto [pt, obj] = detail::nelder_mead(x0, p, mode, opt);
            const Policy a = detail::decode(pt, p, opt);
            const EvalOutcome out = evaluate(p, a, mode, opt.eq6_literal);
            best = out.feasible && out.mu_s >= seedpt->mu_s
                       ? Candidate{out.mu_s, 0, a}
                       : *seedpt;
        }
    }

    if (!best) {
        res.best_policy = Policy::silent();
        res.feasible = false;
        res.report = ThroughputReport{};
        res.report.mode = mode;
        return res;
    }
    res.best_policy = best->policy;
    res.feasible = true;
    res.report = throughput_bound(p, best->policy, mode, opt.eq6_literal);
    return res;
}

}  // namespace ehsa

#endif

// Command-line driver: single-point evaluation, parameter sweeps, slot-level
// simulation, constrained throughput maximization, the self-validation suite
// and config round-tripping.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ehsa/config.hpp"
#include "ehsa/optimizer.hpp"
#include "ehsa/simulator.hpp"
#include "ehsa/throughput.hpp"
#include "ehsa/validate.hpp"

namespace {

using ehsa::BoundMode;

std::string fmt(double v) { return ehsa::detail::format_sig12(v); }

std::vector<BoundMode> parse_modes(const std::string& mode) {
    if (mode == "lower") return {BoundMode::LowerThroughput};
    if (mode == "upper") return {BoundMode::UpperThroughput};
    if (mode == "both")
        return {BoundMode::LowerThroughput, BoundMode::UpperThroughput};
    throw ehsa::ConfigError("unknown mode '" + mode + "'");
}

std::ostream& open_out(const std::string& path, std::ofstream& file) {
    if (path.empty()) return std::cout;
    file.open(path);
    if (!file) throw ehsa::ConfigError("cannot open output file '" + path + "'");
    return file;
}

void print_report(std::ostream& out, const ehsa::ThroughputReport& r) {
    out << "mode = " << ehsa::to_string(r.mode) << "\n"
        << "mu_s = " << fmt(r.mu_s) << "\n"
        << "eta = " << fmt(r.eta) << "\n"
        << "pi0 = " << fmt(r.pi0) << "\n"
        << "Pavail = " << fmt(r.Pavail) << "\n"
        << "D_p = " << fmt(r.D_p) << "\n";
}

void print_policy(std::ostream& out, const ehsa::Policy& a) {
    out << "alpha_s = " << fmt(a.alpha_s) << "\n"
        << "alpha_f = " << fmt(a.alpha_f) << "\n"
        << "alpha_t = " << fmt(a.alpha_t) << "\n"
        << "alpha_b = " << fmt(a.alpha_b) << "\n"
        << "alpha_r = " << fmt(a.alpha_r) << "\n"
        << "Ps1 = " << fmt(a.Ps1) << "\n"
        << "Ps2 = " << fmt(a.Ps2) << "\n"
        << "Ps3 = " << fmt(a.Ps3) << "\n";
}

const char kSweepHeader[] =
    "axis,value,mode,mu_s,eta,pi0,Pavail,D_p,feasible,"
    "alpha_s,alpha_f,alpha_t,alpha_b,alpha_r,Ps1,Ps2,Ps3";

void write_sweep_row(std::ostream& out, const std::string& axis, double value,
                     BoundMode mode, const ehsa::OptimResult& r) {
    const auto& a = r.best_policy;
    const auto& rep = r.report;
    out << axis << ',' << fmt(value) << ',' << ehsa::to_string(mode) << ','
        << fmt(rep.mu_s) << ',' << fmt(rep.eta) << ',' << fmt(rep.pi0) << ','
        << fmt(rep.Pavail) << ',' << fmt(rep.D_p) << ','
        << (r.feasible ? 1 : 0) << ',' << fmt(a.alpha_s) << ','
        << fmt(a.alpha_f) << ',' << fmt(a.alpha_t) << ',' << fmt(a.alpha_b)
        << ',' << fmt(a.alpha_r) << ',' << fmt(a.Ps1) << ',' << fmt(a.Ps2)
        << ',' << fmt(a.Ps3) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"feedback-aware energy-harvesting spectrum access model"};
    app.require_subcommand(1);

    std::string config_path, mode = "lower", out_path;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int restarts = 0;
    long long slots = 0;
    bool eq6_literal = false, enforce_power_order = false, pin_powers = false;

    app.add_option("--config", config_path, "configuration file (key = value)");
    app.add_option("--mode", mode, "bound mode: lower, upper or both")
        ->check(CLI::IsMember({"lower", "upper", "both"}));
    app.add_option("--seed", seed, "seed for optimizer and simulator")
        ->each([&](const std::string&) { seed_set = true; });
    app.add_option("--restarts", restarts, "optimizer restarts");
    app.add_option("--slots", slots, "simulated slots");
    app.add_option("--out", out_path, "output file (default stdout)");
    app.add_flag("--eq6-literal", eq6_literal,
                 "swap Ps2/Ps3 pairing in the throughput expression");
    app.add_flag("--enforce-power-order", enforce_power_order,
                 "constrain Ps3 <= Ps2 <= Ps1");
    app.add_flag("--pin-powers", pin_powers,
                 "fix all secondary powers at P_max");

    auto* cmd_eval = app.add_subcommand("eval", "evaluate one policy");
    auto* cmd_sweep = app.add_subcommand("sweep", "optimize along a sweep axis");
    auto* cmd_sim = app.add_subcommand("simulate", "run the slot-level simulator");
    auto* cmd_opt = app.add_subcommand("optimize", "maximize the throughput bound");
    auto* cmd_val = app.add_subcommand("validate", "run the oracle suite");
    auto* cmd_dump = app.add_subcommand("dump-config", "emit the effective config");

    // accept the shared options on either side of the subcommand name
    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        ehsa::Config cfg =
            config_path.empty() ? ehsa::Config{} : ehsa::load_config(config_path);
        if (seed_set) {
            cfg.optim.seed = seed;
            cfg.sim.seed = seed;
        }
        if (restarts > 0) cfg.optim.restarts = restarts;
        if (slots > 0) cfg.sim.slots = slots;
        if (eq6_literal) cfg.optim.eq6_literal = true;
        if (enforce_power_order) cfg.optim.enforce_power_order = true;
        if (pin_powers) cfg.optim.pin_powers = true;
        cfg.validate();

        std::ofstream file;
        std::ostream& out = open_out(out_path, file);

        if (cmd_dump->parsed()) {
            ehsa::dump_config(cfg, out);
            return 0;
        }

        if (cmd_eval->parsed()) {
            for (BoundMode m : parse_modes(mode)) {
                const auto rep = ehsa::throughput_bound(
                    cfg.params, cfg.policy, m, cfg.optim.eq6_literal);
                print_report(out, rep);
            }
            return 0;
        }

        if (cmd_sim->parsed()) {
            const auto res = ehsa::simulate(cfg.params, cfg.policy, cfg.sim);
            out << "mu_s_hat = " << fmt(res.mu_s_hat) << "\n"
                << "D_p_hat = " << fmt(res.D_p_hat) << "\n"
                << "pi0_hat = " << fmt(res.pi0_hat) << "\n"
                << "mu_e_hat = " << fmt(res.mu_e_hat) << "\n"
                << "energy_outage_rate = " << fmt(res.energy_outage_rate) << "\n"
                << "lambda_p_hat = " << fmt(res.lambda_p_hat) << "\n"
                << "se_mu_s = " << fmt(res.se_mu_s) << "\n"
                << "se_pi0 = " << fmt(res.se_pi0) << "\n"
                << "se_D_p = " << fmt(res.se_D_p) << "\n"
                << "sample_slots = " << res.sample_slots << "\n";
            return 0;
        }

        if (cmd_opt->parsed()) {
            for (BoundMode m : parse_modes(mode)) {
                const auto res = ehsa::maximize(cfg.params, m, cfg.optim);
                out << "feasible = " << (res.feasible ? "true" : "false") << "\n";
                print_report(out, res.report);
                print_policy(out, res.best_policy);
            }
            return 0;
        }

        if (cmd_sweep->parsed()) {
            if (cfg.sweep_axis.empty())
                throw ehsa::ConfigError("sweep requires sweep_axis/sweep_values");
            out << kSweepHeader << '\n';
            for (double v : cfg.sweep_values) {
                const ehsa::ScenarioParams p = cfg.with_axis(cfg.sweep_axis, v);
                for (BoundMode m : parse_modes(mode)) {
                    const auto res = ehsa::maximize(p, m, cfg.optim);
                    write_sweep_row(out, cfg.sweep_axis, v, m, res);
                }
            }
            return 0;
        }

        if (cmd_val->parsed()) {
            const auto rep = ehsa::run_validation(cfg);
            bool failed = false;
            for (const auto& c : rep.checks) {
                const char* verdict =
                    c.verdict == ehsa::Verdict::Pass ? "PASS"
                    : c.verdict == ehsa::Verdict::Fail ? "FAIL"
                                                       : "INCONCLUSIVE";
                out << "[" << verdict << "] " << c.name
                    << ": estimate=" << fmt(c.estimate)
                    << " reference=" << fmt(c.reference)
                    << " tolerance=" << fmt(c.tolerance) << "\n";
                failed |= c.verdict == ehsa::Verdict::Fail;
            }
            return failed ? 2 : 0;
        }
    } catch (const ehsa::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

#ifndef EHSA_CONFIG_HPP
#define EHSA_CONFIG_HPP

#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ehsa/optimizer.hpp"
#include "ehsa/params.hpp"
#include "ehsa/simulator.hpp"

namespace ehsa {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One experiment description: scenario, policy, optimizer and simulator
// settings plus an optional sweep axis. Serialized as flat `key = value`
// lines whose keys mirror the field names.
struct Config {
    ScenarioParams params;
    Policy policy;
    OptimOptions optim;
    SimConfig sim;
    std::string sweep_axis;            // lambda_p | lambda_e | q | D_max
    std::vector<double> sweep_values;  // strictly increasing when present

    void validate() const {
        params.validate();
        policy.validate(params.P_max);
        if (!sweep_axis.empty()) {
            if (sweep_axis != "lambda_p" && sweep_axis != "lambda_e" &&
                sweep_axis != "q" && sweep_axis != "D_max")
                throw ConfigError("unknown sweep_axis '" + sweep_axis + "'");
            if (sweep_values.empty())
                throw ConfigError("sweep_values must be nonempty");
            for (std::size_t i = 1; i < sweep_values.size(); ++i)
                if (sweep_values[i] <= sweep_values[i - 1])
                    throw ConfigError("sweep_values must be strictly increasing");
        }
    }

    // Applies one sweep-axis value, returning the adjusted scenario.
    ScenarioParams with_axis(const std::string& axis, double v) const {
        ScenarioParams p = params;
        if (axis == "lambda_p") p.lambda_p = v;
        else if (axis == "lambda_e") p.lambda_e = v;
        else if (axis == "q") p.q = v;
        else if (axis == "D_max") p.D_max = v;
        else throw ConfigError("unknown sweep_axis '" + axis + "'");
        return p;
    }
};

namespace detail {

inline std::string format_sig12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline double parse_number(const std::string& v, const std::string& key,
                           int line) {
    try {
        std::size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing chars");
        return d;
    } catch (const std::exception&) {
        throw ConfigError("line " + std::to_string(line) + ": key '" + key +
                          "': cannot parse number '" + v + "'");
    }
}

inline bool parse_bool(const std::string& v, const std::string& key,
                       int line) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw ConfigError("line " + std::to_string(line) + ": key '" + key +
                      "': expected true/false, got '" + v + "'");
}

}  // namespace detail

inline Config parse_config(std::istream& in) {
    Config c;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) +
                              ": expected 'key = value', got '" + line + "'");
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string val = detail::trim(line.substr(eq + 1));
        auto num = [&] { return detail::parse_number(val, key, lineno); };
        auto flag = [&] { return detail::parse_bool(val, key, lineno); };

        if (key == "lambda_p") c.params.lambda_p = num();
        else if (key == "lambda_e") c.params.lambda_e = num();
        else if (key == "q") c.params.q = num();
        else if (key == "P_p") c.params.P_p = num();
        else if (key == "P_MD") c.params.P_MD = num();
        else if (key == "P_FA") c.params.P_FA = num();
        else if (key == "P_max") c.params.P_max = num();
        else if (key == "D_max") c.params.D_max = num();
        else if (key == "beta") c.params.consts.beta = num();
        else if (key == "T") c.params.consts.T = num();
        else if (key == "tau") c.params.consts.tau = num();
        else if (key == "W") c.params.consts.W = num();
        else if (key == "N0") c.params.consts.N0 = num();
        else if (key == "var_p_dp") c.params.links.p_dp = num();
        else if (key == "var_p_ds") c.params.links.p_ds = num();
        else if (key == "var_s_dp") c.params.links.s_dp = num();
        else if (key == "var_s_ds") c.params.links.s_ds = num();
        else if (key == "alpha_s") c.policy.alpha_s = num();
        else if (key == "alpha_f") c.policy.alpha_f = num();
        else if (key == "alpha_t") c.policy.alpha_t = num();
        else if (key == "alpha_b") c.policy.alpha_b = num();
        else if (key == "alpha_r") c.policy.alpha_r = num();
        else if (key == "Ps1") c.policy.Ps1 = num();
        else if (key == "Ps2") c.policy.Ps2 = num();
        else if (key == "Ps3") c.policy.Ps3 = num();
        else if (key == "restarts") c.optim.restarts = static_cast<int>(num());
        else if (key == "max_iters") c.optim.max_iters = static_cast<int>(num());
        else if (key == "tol") c.optim.tol = num();
        else if (key == "optim_seed") c.optim.seed = static_cast<std::uint64_t>(num());
        else if (key == "enforce_power_order") c.optim.enforce_power_order = flag();
        else if (key == "eq6_literal") c.optim.eq6_literal = flag();
        else if (key == "pin_powers") c.optim.pin_powers = flag();
        else if (key == "penalty_weight") c.optim.penalty_weight = num();
        else if (key == "slots") c.sim.slots = static_cast<std::int64_t>(num());
        else if (key == "warmup") c.sim.warmup = static_cast<std::int64_t>(num());
        else if (key == "sim_seed") c.sim.seed = static_cast<std::uint64_t>(num());
        else if (key == "force_availability") {
            if (val == "off") c.sim.force_availability = ForceAvailability::Off;
            else if (val == "always") c.sim.force_availability = ForceAvailability::Always;
            else if (val == "never") c.sim.force_availability = ForceAvailability::Never;
            else
                throw ConfigError("line " + std::to_string(lineno) +
                                  ": key 'force_availability': expected "
                                  "off/always/never, got '" + val + "'");
        } else if (key == "sweep_axis") c.sweep_axis = val;
        else if (key == "sweep_values") {
            c.sweep_values.clear();
            std::stringstream ss(val);
            std::string tok;
            while (std::getline(ss, tok, ',')) {
                tok = detail::trim(tok);
                if (!tok.empty())
                    c.sweep_values.push_back(detail::parse_number(tok, key, lineno));
            }
        } else {
            throw ConfigError("line " + std::to_string(lineno) +
                              ": unknown key '" + key + "'");
        }
    }
    try {
        c.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("invalid configuration: ") + e.what());
    }
    return c;
}

inline Config load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open config file '" + path + "'");
    return parse_config(f);
}

inline void dump_config(const Config& c, std::ostream& out) {
    using detail::format_sig12;
    auto kv = [&](const char* k, const std::string& v) {
        out << k << " = " << v << "\n";
    };
    auto kn = [&](const char* k, double v) { kv(k, format_sig12(v)); };
    auto kb = [&](const char* k, bool v) { kv(k, v ? "true" : "false"); };
    kn("lambda_p", c.params.lambda_p);
    kn("lambda_e", c.params.lambda_e);
    kn("q", c.params.q);
    kn("P_p", c.params.P_p);
    kn("P_MD", c.params.P_MD);
    kn("P_FA", c.params.P_FA);
    kn("P_max", c.params.P_max);
    kn("D_max", c.params.D_max);
    kn("beta", c.params.consts.beta);
    kn("T", c.params.consts.T);
    kn("tau", c.params.consts.tau);
    kn("W", c.params.consts.W);
    kn("N0", c.params.consts.N0);
    kn("var_p_dp", c.params.links.p_dp);
    kn("var_p_ds", c.params.links.p_ds);
    kn("var_s_dp", c.params.links.s_dp);
    kn("var_s_ds", c.params.links.s_ds);
    kn("alpha_s", c.policy.alpha_s);
    kn("alpha_f", c.policy.alpha_f);
    kn("alpha_t", c.policy.alpha_t);
    kn("alpha_b", c.policy.alpha_b);
    kn("alpha_r", c.policy.alpha_r);
    kn("Ps1", c.policy.Ps1);
    kn("Ps2", c.policy.Ps2);
    kn("Ps3", c.policy.Ps3);
    kn("restarts", c.optim.restarts);
    kn("max_iters", c.optim.max_iters);
    kn("tol", c.optim.tol);
    kn("optim_seed", static_cast<double>(c.optim.seed));
    kb("enforce_power_order", c.optim.enforce_power_order);
    kb("eq6_literal", c.optim.eq6_literal);
    kb("pin_powers", c.optim.pin_powers);
    kn("penalty_weight", c.optim.penalty_weight);
    kn("slots", static_cast<double>(c.sim.slots));
    kn("warmup", static_cast<double>(c.sim.warmup));
    kn("sim_seed", static_cast<double>(c.sim.seed));
    kv("force_availability",
       c.sim.force_availability == ForceAvailability::Off ? "off"
       : c.sim.force_availability == ForceAvailability::Always ? "always"
                                                               : "never");
    if (!c.sweep_axis.empty()) {
        kv("sweep_axis", c.sweep_axis);
        std::string vals;
        for (std::size_t i = 0; i < c.sweep_values.size(); ++i) {
            if (i) vals += ", ";
            vals += format_sig12(c.sweep_values[i]);
        }
        kv("sweep_values", vals);
    }
}

}  // namespace ehsa

#endif

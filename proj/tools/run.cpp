// Copyright 2026 The scatterspin Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "run.hpp"

#include <spdlog/spdlog.h>

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <mutex>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

#include "scatterspin/engine.hpp"
#include "scatterspin/error.hpp"
#include "scatterspin/experiments.hpp"
#include "scatterspin/io.hpp"
#include "scatterspin/oracle.hpp"
#include "scatterspin/parallel.hpp"
#include "scatterspin/rates.hpp"

namespace scatterspin::cli {

using nlohmann::json;

namespace {

const std::set<std::string> EXPERIMENTS = {"rates", "ghz", "correlations", "squeezing", "qaoa",
                                           "oracle-verify"};

const std::map<std::string, std::set<std::string>> SWEEP_AXES = {
    {"rates", {"power", "waist", "detuning"}},
    {"ghz", {"n", "j", "t_arm", "power", "waist", "detuning", "gamma_01", "gamma_10", "gamma_0g",
             "gamma_1g", "gamma_el"}},
    {"correlations", {"n", "j", "t_arm", "m", "power", "waist", "detuning", "gamma_0g"}},
    {"squeezing", {"n", "tau", "power", "waist", "detuning", "gamma_01", "gamma_10", "gamma_0g",
                   "gamma_1g", "gamma_el"}},
    {"qaoa", {"n", "j", "power", "waist", "detuning", "gamma_01", "gamma_10", "gamma_0g", "gamma_1g",
              "gamma_el"}},
    {"oracle-verify", {"n"}},
};

const char *RATE_NAMES[] = {"gamma_01", "gamma_10", "gamma_0g", "gamma_1g", "gamma_el"};

// Default arm duration for GHZ and correlator runs: one COM-mode period at
// a 0.5 kHz detuning.
constexpr double DEFAULT_T_ARM = 2e-3;

double as_number(const json &v, const std::string &where) {
    if (!v.is_number()) throw ConfigError(where + ": expected a number");
    return v.get<double>();
}

double num_or(const json &obj, const char *key, double fallback, const std::string &where) {
    auto it = obj.find(key);
    if (it == obj.end()) return fallback;
    return as_number(*it, where + "." + key);
}

std::size_t count_or(const json &obj, const char *key, std::size_t fallback, const std::string &where) {
    auto it = obj.find(key);
    if (it == obj.end()) return fallback;
    if (!it->is_number_integer() || it->get<long long>() < 0) {
        throw ConfigError(where + "." + key + ": expected a non-negative integer");
    }
    return it->get<std::size_t>();
}

bool bool_or(const json &obj, const char *key, bool fallback, const std::string &where) {
    auto it = obj.find(key);
    if (it == obj.end()) return fallback;
    if (!it->is_boolean()) throw ConfigError(where + "." + key + ": expected true or false");
    return it->get<bool>();
}

std::vector<double> list_or(const json &obj, const char *key, std::vector<double> fallback,
                            const std::string &where) {
    auto it = obj.find(key);
    if (it == obj.end()) return fallback;
    if (it->is_number()) return {it->get<double>()};
    if (!it->is_array()) throw ConfigError(where + "." + key + ": expected a number or a list");
    std::vector<double> out;
    for (std::size_t k = 0; k < it->size(); ++k) {
        out.push_back(as_number((*it)[k], where + "." + key + "[" + std::to_string(k) + "]"));
    }
    return out;
}

const json &object_or_empty(const json &cfg, const char *key) {
    static const json empty = json::object();
    auto it = cfg.find(key);
    if (it == cfg.end()) return empty;
    if (!it->is_object()) throw ConfigError(std::string(key) + ": expected an object");
    return *it;
}

std::string single_key(const json &obj, const std::set<std::string> &allowed, const std::string &where) {
    if (!obj.is_object() || obj.size() != 1) {
        throw ConfigError(where + ": expected exactly one source");
    }
    std::string key = obj.begin().key();
    if (!allowed.count(key)) throw ConfigError(where + ": unknown source \"" + key + "\"");
    return key;
}

double unit_factor(const json &cfg) {
    auto it = cfg.find("units");
    if (it == cfg.end()) return 1.0;
    return it->get<std::string>() == "hz" ? constants::two_pi : 1.0;
}

std::string experiment_of(const json &cfg) { return cfg.at("experiment").get<std::string>(); }

EvolutionMode mode_of(const json &cfg, EvolutionMode fallback) {
    auto it = cfg.find("mode");
    if (it == cfg.end()) return fallback;
    return it->get<std::string>() == "plain" ? EvolutionMode::plain : EvolutionMode::spin_echo;
}

// ------------------------------------------------------------ sources

struct Rates {
    ScatteringRates rates;
    std::optional<CaRates> ca;
};

Rates rates_of(const json &cfg) {
    auto it = cfg.find("rates");
    if (it == cfg.end()) {
        CaRates ca = ca_stark_and_rates(CaLaserParams{});
        return {ca.rates, ca};
    }
    std::string kind = single_key(*it, {"explicit", "ca_laser"}, "rates");
    const json &src = (*it)[kind];
    if (!src.is_object()) throw ConfigError("rates." + kind + ": expected an object");
    if (kind == "explicit") {
        for (auto &[k, v] : src.items()) {
            bool known = false;
            for (const char *name : RATE_NAMES) known |= k == name;
            if (!known) throw ConfigError("rates.explicit: unknown rate \"" + k + "\"");
        }
        ScatteringRates r;
        r.gamma_01 = num_or(src, "gamma_01", 0, "rates.explicit");
        r.gamma_10 = num_or(src, "gamma_10", 0, "rates.explicit");
        r.gamma_0g = num_or(src, "gamma_0g", 0, "rates.explicit");
        r.gamma_1g = num_or(src, "gamma_1g", 0, "rates.explicit");
        r.gamma_el = num_or(src, "gamma_el", 0, "rates.explicit");
        r.validate();
        return {r, std::nullopt};
    }
    CaLaserParams p;
    p.power = num_or(src, "power", p.power, "rates.ca_laser");
    p.waist = num_or(src, "waist", p.waist, "rates.ca_laser");
    if (src.contains("detuning")) p.detuning = unit_factor(cfg) * as_number(src["detuning"], "rates.ca_laser.detuning");
    CaRates ca = ca_stark_and_rates(p);
    return {ca.rates, ca};
}

struct Couplings {
    CouplingMatrix j;
    bool equal = false;
    bool has_j = false;  // equal source with an explicit magnitude
};

/// `default_j` gives the magnitude for an equal source that omits "j".
template <typename DefaultJ>
Couplings couplings_of(const json &cfg, DefaultJ default_j) {
    auto it = cfg.find("couplings");
    if (it == cfg.end()) throw ConfigError("couplings: missing");
    std::string kind = single_key(*it, {"equal", "file", "modes"}, "couplings");
    const json &src = (*it)[kind];
    if (kind == "equal") {
        if (!src.is_object()) throw ConfigError("couplings.equal: expected {\"n\": .., \"j\": ..}");
        std::size_t n = count_or(src, "n", 0, "couplings.equal");
        if (n < 2) throw ValidationError("couplings.equal.n must be at least 2");
        bool has_j = src.contains("j");
        double j = has_j ? unit_factor(cfg) * as_number(src["j"], "couplings.equal.j") : default_j(n);
        return {equal_couplings(n, j), true, has_j};
    }
    if (!src.is_string()) throw ConfigError("couplings." + kind + ": expected a file path");
    if (kind == "file") return {load_couplings(src.get<std::string>()), false, true};
    return {couplings_from_modes(load_modes(src.get<std::string>())), false, true};
}

double cat_tracking_j(std::size_t n, double t_arm) { return std::numbers::pi * n / (2 * t_arm); }

// -------------------------------------------------------- experiments

Table run_rates(const json &cfg) {
    Rates r = rates_of(cfg);
    DerivedRates d = derive_rates(r.rates);
    const ScatteringRates &s = r.rates;
    double total = r.ca ? r.ca->total : s.gamma_01 + s.gamma_0g + s.gamma_el;
    Table t;
    t.columns = {"stark_shift", "total", "gamma_01", "gamma_10", "gamma_0g", "gamma_1g",
                 "gamma_el",    "Gamma", "lambda"};
    t.rows.push_back({r.ca ? r.ca->stark_shift : NAN, total, s.gamma_01, s.gamma_10, s.gamma_0g,
                      s.gamma_1g, s.gamma_el, d.Gamma, d.lambda});
    return t;
}

Table run_ghz(const json &cfg) {
    const json &params = object_or_empty(cfg, "params");
    double t_arm = num_or(params, "t_arm", DEFAULT_T_ARM, "params");
    if (!(t_arm > 0)) throw ValidationError("params.t_arm must be positive");
    Couplings c = couplings_of(cfg, [&](std::size_t n) { return cat_tracking_j(n, t_arm); });
    Rates r = rates_of(cfg);
    GhzResult g = ghz_fidelity(c.j, r.rates, mode_of(cfg, EvolutionMode::spin_echo));
    Table t;
    t.columns = {"n", "j_mean", "t_cat", "f_scatter", "f_unequal", "f_total", "f_postselect",
                 "p_no_leak", "overhead"};
    t.rows.push_back({double(g.n), c.j.mean(), g.t_cat, g.f_scatter, g.f_unequal, g.f_total,
                      g.f_postselect, g.p_no_leak, g.overhead});
    return t;
}

std::vector<double> default_t_arms() {
    std::vector<double> out;
    for (int k = 1; k <= 16; ++k) out.push_back(k * DEFAULT_T_ARM / 16);
    return out;
}

Table run_correlations(const json &cfg, std::size_t jobs) {
    const json &params = object_or_empty(cfg, "params");
    if (mode_of(cfg, EvolutionMode::spin_echo) != EvolutionMode::spin_echo) {
        throw ConfigError("correlations run in spin-echo mode only");
    }
    Couplings c = couplings_of(cfg, [](std::size_t) { return 1.0; });
    if (!c.equal) throw ConfigError("correlations need equal couplings");
    Rates r = rates_of(cfg);
    if (bool_or(params, "leak_only", false, "params")) {
        r.rates.gamma_01 = r.rates.gamma_10 = r.rates.gamma_el = 0;
    }
    std::vector<double> t_arms = list_or(params, "t_arm", default_t_arms(), "params");
    std::vector<double> ms = list_or(params, "m", {1, 5}, "params");
    Table t;
    t.columns = {"m", "t", "t_arm", "exact", "exact_perp", "model", "model_perp", "bound", "p_leak"};
    for (double mv : ms) {
        if (mv < 1 || mv != std::floor(mv)) throw ValidationError("params.m must be a positive integer");
        CorrelatorOptions o;
        o.n = c.j.n();
        o.m = static_cast<std::size_t>(mv);
        o.rates = r.rates;
        if (c.has_j) o.coupling = c.j.mean();
        for (double ta : t_arms) o.times.push_back(ta / 2);
        o.average_subsets = bool_or(params, "average_subsets", false, "params");
        o.jobs = jobs;
        CorrelatorCurve curve = correlator_curves(o);
        for (std::size_t k = 0; k < curve.times.size(); ++k) {
            t.rows.push_back({mv, curve.times[k], 2 * curve.times[k], curve.exact[k], curve.exact_perp[k],
                              curve.model[k], curve.model_perp[k], curve.single_ion_bound[k],
                              curve.p_leak[k]});
        }
    }
    return t;
}

Table run_squeezing(const json &cfg, std::size_t jobs) {
    const json &params = object_or_empty(cfg, "params");
    Couplings c = couplings_of(cfg, [](std::size_t) { return 1.0; });
    SqueezeOptions o;
    o.shape = c.j;
    o.rates = rates_of(cfg).rates;
    o.mode = mode_of(cfg, EvolutionMode::spin_echo);
    o.tau = num_or(params, "tau", o.tau, "params");
    o.scan = list_or(params, "scan", {}, "params");
    o.refine = bool_or(params, "refine", true, "params");
    o.jobs = jobs;
    SqueezeResult s = spin_squeezing(o);
    Table t;
    t.columns = {"n",       "u_opt",         "xi2_opt",       "u_noiseless",
                 "xi2_noiseless", "xi2_noisy_at_u_noiseless", "p_leak_at_opt"};
    t.rows.push_back({double(s.n), s.optimal.first, s.optimal.second, s.noiseless_optimal.first,
                      s.noiseless_optimal.second, s.noisy_at_noiseless_opt, s.p_leak_at_opt});
    return t;
}

Table run_qaoa(const json &cfg, std::size_t jobs) {
    const json &params = object_or_empty(cfg, "params");
    Couplings c = couplings_of(cfg, [](std::size_t n) { return cat_tracking_j(n, DEFAULT_T_ARM); });
    QaoaOptions o;
    o.couplings = c.j;
    o.rates = rates_of(cfg).rates;
    o.mode = mode_of(cfg, EvolutionMode::plain);
    o.grid_points = count_or(params, "grid_points", o.grid_points, "params");
    o.jobs = jobs;
    QaoaResult q = qaoa_single_layer(o);
    Table t;
    t.columns = {"n",          "best_cost",       "best_gamma",      "best_beta",
                 "noiseless_best_cost", "noiseless_gamma", "noiseless_beta"};
    t.rows.push_back({double(q.n), q.best_cost, q.best_params.first, q.best_params.second,
                      q.noiseless_best_cost, q.noiseless_best_params.first,
                      q.noiseless_best_params.second});
    return t;
}

constexpr double ORACLE_TOLERANCE = 1e-8;

Table run_oracle_verify(const json &cfg, std::size_t jobs) {
    const json &params = object_or_empty(cfg, "params");
    std::size_t n = count_or(params, "n", 3, "params");
    std::size_t cases = count_or(params, "cases", 3, "params");
    uint64_t seed = cfg.value("seed", uint64_t{1});
    std::string which = params.value("mode", std::string("both"));
    if (which != "plain" && which != "spin-echo" && which != "both") {
        throw ConfigError("params.mode: expected plain, spin-echo or both");
    }
    if (n < 1 || n > ORACLE_MAX_IONS) {
        throw SizeError("oracle-verify supports 1 to " + std::to_string(ORACLE_MAX_IONS) + " ions");
    }
    std::vector<bool> echo_flags;
    if (which != "spin-echo") echo_flags.push_back(false);
    if (which != "plain") echo_flags.push_back(true);

    struct Case {
        CouplingMatrix j;
        ScatteringRates r;
        bool echo;
        double t;
    };
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<Case> todo;
    for (bool echo : echo_flags) {
        for (std::size_t k = 0; k < cases; ++k) {
            std::vector<double> dense(n * n, 0.0);
            for (std::size_t a = 0; a < n; ++a) {
                for (std::size_t b = a + 1; b < n; ++b) {
                    dense[a * n + b] = dense[b * n + a] = 0.5 + 1.5 * unit(rng);
                }
            }
            ScatteringRates r;
            r.gamma_01 = 0.05 + 0.3 * unit(rng);
            r.gamma_10 = echo ? 0 : 0.05 + 0.3 * unit(rng);
            r.gamma_0g = 0.05 + 0.3 * unit(rng);
            r.gamma_1g = echo ? 0 : 0.05 + 0.3 * unit(rng);
            r.gamma_el = 0.05 + 0.3 * unit(rng);
            double t = (0.1 + 2.9 * unit(rng)) / derive_rates(r).Gamma;
            todo.push_back({CouplingMatrix::from_dense(n, dense), r, echo, t});
        }
    }
    std::vector<double> err(todo.size());
    parallel_for(todo.size(), jobs, [&](std::size_t i) {
        const Case &c = todo[i];
        DensityMatrix rho0 = DensityMatrix::plus_state(n);
        DensityMatrix rho;
        EvolutionSpec spec = c.echo ? EvolutionSpec::spin_echo(c.j, c.r, c.t) : EvolutionSpec::plain(c.j, c.r, c.t);
        if (c.echo) {
            rho = spin_echo_sequence(rho0, c.j, c.r, spec.t_arm(), {});
        } else {
            IntegratorConfig ic;
            ic.t_final = c.t;
            rho = integrate(rho0, build_lindbladian(c.j, c.r, HamiltonianVariant::ising), ic);
        }
        Engine engine(spec);
        std::size_t dim = rho.data.rows();
        double worst = 0;
        for (std::size_t row = 0; row < dim; ++row) {
            for (std::size_t col = 0; col < dim; ++col) {
                cplx e = engine.density_matrix_element(index_word(row, n), index_word(col, n));
                worst = std::max(worst, std::abs(e - rho.data(row, col)));
            }
        }
        err[i] = worst;
        spdlog::debug("oracle case {} ({}): max error {:.3e}", i, c.echo ? "spin-echo" : "plain", worst);
    });
    Table t;
    t.columns = {"case", "n", "spin_echo", "t", "max_error"};
    for (std::size_t i = 0; i < todo.size(); ++i) {
        t.rows.push_back({double(i), double(n), todo[i].echo ? 1.0 : 0.0, todo[i].t, err[i]});
        if (!(err[i] <= ORACLE_TOLERANCE)) t.ok = false;
    }
    return t;
}

Table run_point(const json &cfg, std::size_t jobs) {
    std::string e = experiment_of(cfg);
    if (e == "rates") return run_rates(cfg);
    if (e == "ghz") return run_ghz(cfg);
    if (e == "correlations") return run_correlations(cfg, jobs);
    if (e == "squeezing") return run_squeezing(cfg, jobs);
    if (e == "qaoa") return run_qaoa(cfg, jobs);
    return run_oracle_verify(cfg, jobs);
}

// -------------------------------------------------------------- sweeps

std::vector<double> sweep_values(const json &sweep) {
    if (sweep.contains("values")) return list_or(sweep, "values", {}, "sweep");
    double lo = as_number(sweep.at("min"), "sweep.min");
    double hi = as_number(sweep.at("max"), "sweep.max");
    std::size_t points = count_or(sweep, "points", 2, "sweep");
    bool log = sweep.value("scale", std::string("linear")) == "log";
    std::vector<double> out;
    for (std::size_t k = 0; k < points; ++k) {
        double f = points == 1 ? 0.0 : double(k) / double(points - 1);
        out.push_back(log ? lo * std::pow(hi / lo, f) : lo + (hi - lo) * f);
    }
    return out;
}

json apply_axis(json cfg, const std::string &axis, double value) {
    auto need_equal = [&]() -> json & {
        if (!cfg.contains("couplings") || !cfg["couplings"].contains("equal")) {
            throw ConfigError("sweep over " + axis + " needs equal couplings");
        }
        return cfg["couplings"]["equal"];
    };
    if (axis == "n") {
        auto n = static_cast<long long>(std::llround(value));
        if (experiment_of(cfg) == "oracle-verify") {
            cfg["params"]["n"] = n;
        } else {
            need_equal()["n"] = n;
        }
    } else if (axis == "j") {
        need_equal()["j"] = value;
    } else if (axis == "t_arm" || axis == "tau" || axis == "m") {
        cfg["params"][axis] = value;
    } else if (axis == "power" || axis == "waist" || axis == "detuning") {
        if (!cfg.contains("rates")) cfg["rates"] = {{"ca_laser", json::object()}};
        if (!cfg["rates"].contains("ca_laser")) throw ConfigError("sweep over " + axis + " needs ca_laser rates");
        cfg["rates"]["ca_laser"][axis] = value;
    } else {
        if (!cfg.contains("rates") || !cfg["rates"].contains("explicit")) {
            throw ConfigError("sweep over " + axis + " needs explicit rates");
        }
        cfg["rates"]["explicit"][axis] = value;
    }
    return cfg;
}

// --------------------------------------------------------------- notes

void add_notes(const json &cfg, Table &t) {
    std::string e = experiment_of(cfg);
    char buf[256];
    if (e == "rates") {
        for (const auto &row : t.rows) {
            double total = row[1];
            if (total > 0) {
                std::snprintf(buf, sizeof buf, "branching: leak %.1f%%, elastic %.1f%%, Raman %.1f%%",
                              100 * row[4] / total, 100 * row[6] / total, 100 * row[2] / total);
                t.notes.push_back(buf);
            }
        }
    } else if (e == "squeezing" && t.rows.size() >= 3) {
        std::vector<double> n, u;
        for (const auto &row : t.rows) {
            n.push_back(row[0]);
            u.push_back(row[3]);
        }
        PowerLawFit f = fit_power_law(n, u);
        std::snprintf(buf, sizeof buf, "noiseless optimum fit: u = %.4g * N^%.4f", f.a, f.b);
        t.notes.push_back(buf);
    } else if (e == "oracle-verify") {
        double worst = 0;
        for (const auto &row : t.rows) worst = std::max(worst, row[4]);
        std::snprintf(buf, sizeof buf, "max |engine - oracle| = %.3e (tolerance %.0e): %s", worst,
                      ORACLE_TOLERANCE, t.ok ? "PASS" : "FAIL");
        t.notes.push_back(buf);
    }
}

std::string fmt17(double v) {
    if (std::isnan(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void print_summary(std::ostream &os, const json &cfg, const Table &t, const std::string &hash) {
    os << experiment_of(cfg) << "\n";
    for (const auto &c : t.columns) os << std::setw(14) << c.substr(0, 13);
    os << "\n";
    char buf[40];
    for (const auto &row : t.rows) {
        for (double v : row) {
            std::snprintf(buf, sizeof buf, "%.6g", v);
            os << std::setw(14) << buf;
        }
        os << "\n";
    }
    for (const auto &note : t.notes) os << note << "\n";
    os << "config_hash=" << hash << "\n";
}

json row_to_json(const std::vector<double> &row) {
    json out = json::array();
    for (double v : row) out.push_back(std::isnan(v) ? json(nullptr) : json(v));
    return out;
}

std::vector<double> row_from_json(const json &row) {
    std::vector<double> out;
    for (const auto &v : row) out.push_back(v.is_null() ? NAN : v.get<double>());
    return out;
}

}  // namespace

// ---------------------------------------------------------- public API

json effective_config(json config, const Overrides &o) {
    if (config.is_null()) config = json::object();
    if (!config.is_object()) throw ConfigError("config must be a JSON object");
    if (o.experiment) {
        if (config.contains("experiment") && config["experiment"] != *o.experiment) {
            throw ConfigError("config is for experiment " + config["experiment"].dump() + ", not " +
                              *o.experiment);
        }
        config["experiment"] = *o.experiment;
    }
    if (!config.contains("experiment") || !config["experiment"].is_string()) {
        throw ConfigError("no experiment given");
    }
    std::string e = config["experiment"];
    if (!EXPERIMENTS.count(e)) throw ConfigError("unknown experiment \"" + e + "\"");
    if (o.out) config["output"]["path"] = *o.out;
    if (o.format) config["output"]["format"] = *o.format;
    if (o.units) config["units"] = *o.units;
    if (o.mode) config["mode"] = *o.mode;
    if (o.seed) config["seed"] = *o.seed;
    if (o.n) {
        if (e == "oracle-verify") {
            config["params"]["n"] = *o.n;
        } else {
            if (!config.contains("couplings")) config["couplings"] = {{"equal", json::object()}};
            if (!config["couplings"].contains("equal")) throw ConfigError("--n needs equal couplings");
            config["couplings"]["equal"]["n"] = *o.n;
        }
    }
    if (!config.contains("couplings") && e != "rates" && e != "oracle-verify") {
        throw ConfigError("couplings: missing (use --n or a config file)");
    }

    // Shape checks that do not need any computation.
    static const std::set<std::string> top = {"experiment", "couplings", "rates", "mode", "units",
                                              "sweep",      "params",    "output", "seed"};
    for (auto &[k, v] : config.items()) {
        if (!top.count(k)) throw ConfigError("unknown config field \"" + k + "\"");
    }
    if (config.contains("couplings")) single_key(config["couplings"], {"equal", "file", "modes"}, "couplings");
    if (config.contains("rates")) single_key(config["rates"], {"explicit", "ca_laser"}, "rates");
    if (config.contains("mode")) {
        const json &m = config["mode"];
        if (!m.is_string() || (m != "plain" && m != "spin-echo")) {
            throw ConfigError("mode: expected plain or spin-echo");
        }
    }
    if (config.contains("units")) {
        const json &u = config["units"];
        if (!u.is_string() || (u != "hz" && u != "rad")) throw ConfigError("units: expected hz or rad");
    }
    if (config.contains("seed") && !config["seed"].is_number_unsigned()) {
        throw ConfigError("seed: expected a non-negative integer");
    }
    if (config.contains("params") && !config["params"].is_object()) throw ConfigError("params: expected an object");
    if (config.contains("output")) {
        const json &out = config["output"];
        if (!out.is_object()) throw ConfigError("output: expected an object");
        std::string fmt = out.value("format", std::string("csv"));
        if (fmt != "csv" && fmt != "json") throw ConfigError("output.format: expected csv or json");
    }
    if (config.contains("sweep")) {
        const json &s = config["sweep"];
        if (!s.is_object() || !s.contains("parameter") || !s["parameter"].is_string()) {
            throw ConfigError("sweep: expected {\"parameter\": name, ...}");
        }
        std::string axis = s["parameter"];
        if (!SWEEP_AXES.at(e).count(axis)) {
            throw ConfigError("sweep: \"" + axis + "\" is not a parameter of " + e);
        }
        if (!s.contains("values")) {
            if (!s.contains("min") || !s.contains("max")) throw ConfigError("sweep: need min and max, or values");
            double lo = as_number(s["min"], "sweep.min"), hi = as_number(s["max"], "sweep.max");
            if (lo > hi) throw ConfigError("sweep: min is greater than max");
            if (count_or(s, "points", 2, "sweep") < 1) throw ConfigError("sweep: points must be at least 1");
            std::string scale = s.value("scale", std::string("linear"));
            if (scale != "linear" && scale != "log") throw ConfigError("sweep.scale: expected linear or log");
            if (scale == "log" && !(lo > 0)) throw ConfigError("sweep: log scale needs min > 0");
        }
    }
    return config;
}

std::string config_hash(const json &config) {
    json c = config;
    c.erase("output");
    c.erase("jobs");
    std::string text = c.dump();  // object keys are sorted, so field order does not matter
    uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
    return buf;
}

std::string format_csv(const Table &t, const std::string &hash) {
    std::string out;
    for (std::size_t k = 0; k < t.columns.size(); ++k) out += (k ? "," : "") + t.columns[k];
    out += "\n";
    for (const auto &row : t.rows) {
        for (std::size_t k = 0; k < row.size(); ++k) out += (k ? "," : "") + fmt17(row[k]);
        out += "\n";
    }
    out += "# config_hash=" + hash + " version=" SCATTERSPIN_VERSION " schema_version=" +
           std::to_string(SCHEMA_VERSION) + "\n";
    return out;
}

std::string format_json(const Table &t, const json &config, const std::string &hash) {
    json rows = json::array();
    for (const auto &row : t.rows) rows.push_back(row_to_json(row));
    json doc = {{"schema_version", SCHEMA_VERSION},
                {"version", SCATTERSPIN_VERSION},
                {"config_hash", hash},
                {"config", config},
                {"columns", t.columns},
                {"rows", rows},
                {"notes", t.notes},
                {"ok", t.ok}};
    doc["config"].erase("output");
    return doc.dump(2) + "\n";
}

int run(const json &cfg, std::size_t jobs, std::ostream &summary) {
    std::string hash = config_hash(cfg);
    std::vector<json> points;
    std::string axis;
    std::vector<double> values;
    if (cfg.contains("sweep")) {
        axis = cfg["sweep"]["parameter"];
        values = sweep_values(cfg["sweep"]);
        for (double v : values) points.push_back(apply_axis(cfg, axis, v));
    } else {
        points.push_back(cfg);
    }

    std::string out_path;
    std::string format = "csv";
    if (cfg.contains("output")) {
        out_path = cfg["output"].value("path", std::string());
        format = cfg["output"].value("format", format);
    }
    std::string partial = out_path.empty() ? std::string() : out_path + ".partial";

    // Completed points from an interrupted run with the same config.
    std::vector<std::optional<Table>> done(points.size());
    if (!partial.empty() && std::filesystem::exists(partial)) {
        std::ifstream in(partial);
        std::string line;
        bool matches = false;
        if (std::getline(in, line)) {
            json head = json::parse(line, nullptr, false);
            matches = head.is_object() && head.value("config_hash", std::string()) == hash;
        }
        if (matches) {
            std::size_t resumed = 0;
            while (std::getline(in, line)) {
                json rec = json::parse(line, nullptr, false);
                if (!rec.is_object() || !rec.contains("point")) break;  // torn final line
                std::size_t p = rec["point"];
                if (p >= points.size()) continue;
                Table t;
                t.columns = rec["columns"].get<std::vector<std::string>>();
                for (const auto &row : rec["rows"]) t.rows.push_back(row_from_json(row));
                t.ok = rec["ok"];
                done[p] = std::move(t);
                ++resumed;
            }
            spdlog::info("resuming: {} of {} points already done", resumed, points.size());
        } else {
            spdlog::warn("ignoring {} (config hash differs)", partial);
            std::filesystem::remove(partial);
        }
    }

    std::ofstream partial_out;
    std::mutex writer;
    if (!partial.empty()) {
        bool fresh = !std::filesystem::exists(partial);
        partial_out.open(partial, std::ios::app);
        if (!partial_out) throw FileError("cannot write " + partial);
        if (fresh) partial_out << json{{"config_hash", hash}}.dump() << "\n" << std::flush;
    }

    std::vector<std::size_t> pending;
    for (std::size_t p = 0; p < points.size(); ++p) {
        if (!done[p]) pending.push_back(p);
    }
    // Points run in parallel when there are several; a single point gets
    // the jobs for its own inner loops.
    std::size_t outer = pending.size() > 1 ? jobs : 1;
    std::size_t inner = pending.size() > 1 ? 1 : jobs;
    parallel_for(pending.size(), outer, [&](std::size_t k) {
        std::size_t p = pending[k];
        if (!axis.empty()) spdlog::info("point {}: {} = {}", p, axis, values[p]);
        Table t = run_point(points[p], inner);
        std::lock_guard lock(writer);
        if (partial_out.is_open()) {
            json rows = json::array();
            for (const auto &row : t.rows) rows.push_back(row_to_json(row));
            partial_out << json{{"point", p}, {"columns", t.columns}, {"rows", rows}, {"ok", t.ok}}.dump()
                        << "\n"
                        << std::flush;
        }
        done[p] = std::move(t);
    });

    Table all;
    for (std::size_t p = 0; p < points.size(); ++p) {
        Table &t = *done[p];
        if (all.columns.empty()) all.columns = t.columns;
        for (auto &row : t.rows) all.rows.push_back(std::move(row));
        all.ok = all.ok && t.ok;
    }
    add_notes(cfg, all);

    if (!out_path.empty()) {
        write_text_file(out_path, format == "json" ? format_json(all, cfg, hash) : format_csv(all, hash));
        partial_out.close();
        std::filesystem::remove(partial);
    }
    print_summary(summary, cfg, all, hash);
    return all.ok ? EXIT_OK : EXIT_CONSISTENCY;
}

int exit_code_for_current_exception(std::string *message) {
    try {
        throw;
    } catch (const ConfigError &e) {
        *message = std::string("config error: ") + e.what();
        return EXIT_CONFIG;
    } catch (const json::exception &e) {
        *message = std::string("config error: ") + e.what();
        return EXIT_CONFIG;
    } catch (const FileError &e) {
        *message = std::string("file error: ") + e.what();
        return EXIT_FILE;
    } catch (const ValidationError &e) {
        *message = std::string("validation error: ") + e.what();
        return EXIT_VALIDATION;
    } catch (const ConsistencyError &e) {
        *message = std::string("consistency error: ") + e.what();
        return EXIT_CONSISTENCY;
    } catch (const std::exception &e) {
        *message = std::string("internal error: ") + e.what();
        return 1;
    }
}

}  // namespace scatterspin::cli

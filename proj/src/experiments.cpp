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

#include "scatterspin/experiments.hpp"

#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "scatterspin/error.hpp"
#include "scatterspin/parallel.hpp"

namespace scatterspin {

namespace {

constexpr double PI = std::numbers::pi;

double log_multinomial(std::size_t n, std::size_t a, std::size_t b, std::size_t c, std::size_t d) {
    auto lf = [](std::size_t k) { return std::lgamma(static_cast<double>(k) + 1.0); };
    return lf(n) - lf(a) - lf(b) - lf(c) - lf(d);
}

PauliString pauli_on(std::size_t n, std::size_t first, std::size_t count, Axis axis) {
    std::vector<std::pair<std::size_t, Axis>> e;
    for (std::size_t k = first; k < first + count; ++k) e.emplace_back(k, axis);
    return PauliString(n, std::move(e));
}

PauliString pauli_pair(std::size_t n, std::size_t i, Axis ai, std::size_t j, Axis aj) {
    return PauliString(n, {{i, ai}, {j, aj}});
}

}  // namespace

// ---------------------------------------------------------------- GHZ

cplx ghz_amplitude(std::size_t n, std::size_t k, double phi) {
    double w = static_cast<double>(n) - 2.0 * static_cast<double>(k);
    double norm = std::pow(2.0, -static_cast<double>(n) / 2);
    return norm * std::exp(cplx(0, -phi * (w * w - static_cast<double>(n)) / 2));
}

double ghz_scatter_fidelity(const Engine &engine) {
    const EvolutionSpec &spec = engine.spec();
    std::size_t n = spec.n();
    if (n < 2 || !spec.couplings.is_uniform()) {
        throw ValidationError("class-sum GHZ fidelity needs n >= 2 and uniform couplings");
    }
    double j = spec.couplings.mean();
    double phi = j * spec.t / static_cast<double>(n);
    double dn = static_cast<double>(n);

    // Spectator factors depend only on d - c.
    std::vector<cplx> log_p0(2 * n + 1), log_p1(2 * n + 1);
    std::vector<bool> zero_p0(2 * n + 1), zero_p1(2 * n + 1);
    for (std::size_t k = 0; k <= 2 * n; ++k) {
        double offset = static_cast<double>(k) - dn;
        SiteFactors f = engine.site_factors(j * offset);
        zero_p0[k] = f.p0 == 0.0;
        zero_p1[k] = f.p1 == 0.0;
        log_p0[k] = zero_p0[k] ? 0.0 : std::log(f.p0);
        log_p1[k] = zero_p1[k] ? 0.0 : std::log(f.p1);
    }
    double log_m_unit = std::log(engine.m_prefactor(1));

    // a: both 0, b: both 1, c: row 0 / col 1 (lower), d: row 1 / col 0 (raise).
    cplx total = 0.0;
    for (std::size_t c = 0; c <= n; ++c) {
        for (std::size_t d = 0; c + d <= n; ++d) {
            std::size_t key = n + d - c;
            double m = static_cast<double>(c + d);
            for (std::size_t b = 0; b + c + d <= n; ++b) {
                std::size_t a = n - b - c - d;
                if ((a && zero_p0[key]) || (b && zero_p1[key])) continue;
                double w_row = dn - 2.0 * static_cast<double>(b + d);
                double w_col = dn - 2.0 * static_cast<double>(b + c);
                cplx lg = log_multinomial(n, a, b, c, d) - dn * std::log(2.0) + m * log_m_unit +
                          static_cast<double>(a) * log_p0[key] +
                          static_cast<double>(b) * log_p1[key] +
                          cplx(0, phi * (w_row * w_row - w_col * w_col) / 2);
                total += std::exp(lg);
            }
        }
    }
    if (std::abs(total.imag()) > 1e-8) {
        throw ConsistencyError("GHZ fidelity has imaginary residue " +
                               std::to_string(total.imag()));
    }
    return total.real();
}

GhzResult ghz_fidelity(const CouplingMatrix &couplings, const ScatteringRates &rates,
                       EvolutionMode mode) {
    std::size_t n = couplings.n();
    if (n < 2) throw ValidationError("GHZ fidelity needs n >= 2");
    double j = couplings.mean();
    if (!(j > 0)) throw ValidationError("GHZ fidelity needs mean coupling J > 0");
    GhzResult r;
    r.n = n;
    r.t_cat = PI * static_cast<double>(n) / (4 * j);
    Engine engine(EvolutionSpec{equal_couplings(n, j), rates, mode, r.t_cat});
    r.f_scatter = ghz_scatter_fidelity(engine);
    r.p_no_leak = engine.no_leak_probability();
    r.f_unequal = f_unequal(couplings, r.t_cat).value;
    r.f_total = r.f_unequal * r.f_scatter;
    // Leaked words have no overlap with the target, so removing them only
    // renormalizes by the no-leak probability.
    r.f_postselect = r.p_no_leak > 0 ? r.f_scatter / r.p_no_leak * r.f_unequal : 0.0;
    r.overhead = r.p_no_leak > 0 ? 1.0 / r.p_no_leak : std::numeric_limits<double>::infinity();
    return r;
}

FUnequal f_unequal(const CouplingMatrix &couplings, double t) {
    if (!(t >= 0)) throw ValidationError("f_unequal time must be >= 0");
    std::size_t n = couplings.n();
    FUnequal out;
    if (n < 2) return out;
    double mean = couplings.mean();
    double dn = static_cast<double>(n);
    std::vector<double> c(n * n, 1.0), s(n * n, 0.0);
    double f2 = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = i + 1; k < n; ++k) {
            double arg = t * (couplings(i, k) - mean) / dn;
            c[i * n + k] = c[k * n + i] = std::cos(arg);
            s[i * n + k] = s[k * n + i] = std::sin(arg);
            f2 *= c[i * n + k] * c[i * n + k];
        }
    }
    auto C2 = [&](std::size_t i, std::size_t k) { return c[i * n + k] * c[i * n + k]; };
    auto S = [&](std::size_t i, std::size_t k) { return s[i * n + k]; };

    double f4 = 0;
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = k + 1; l < n; ++l) {
            for (std::size_t m = l + 1; m < n; ++m) {
                for (std::size_t q = m + 1; q < n; ++q) {
                    double cycles = S(k, l) * S(l, m) * S(m, q) * S(q, k) +
                                    S(k, m) * S(k, q) * S(m, l) * S(q, l) +
                                    S(k, l) * S(k, m) * S(l, q) * S(m, q);
                    if (cycles == 0) continue;
                    double inside =
                        C2(k, l) * C2(k, m) * C2(k, q) * C2(l, m) * C2(l, q) * C2(m, q);
                    double rest;
                    if (inside > 1e-200) {
                        rest = f2 / inside;
                    } else {
                        rest = 1.0;
                        for (std::size_t i = 0; i < n; ++i) {
                            for (std::size_t j = i + 1; j < n; ++j) {
                                bool in_i = i == k || i == l || i == m || i == q;
                                bool in_j = j == k || j == l || j == m || j == q;
                                if (!(in_i && in_j)) rest *= C2(i, j);
                            }
                        }
                    }
                    f4 += 2 * cycles * rest;
                }
            }
        }
    }
    out.f2 = f2;
    out.f4 = f4;
    out.value = f2 + f4;
    double pairs = dn * (dn - 1) / 2;
    out.gaussian = std::exp(-t * t * couplings.variance() * pairs / (dn * dn));
    return out;
}

// ------------------------------------------------------- correlators

double plateau(std::size_t m) {
    // Product of (2k-1)/(2k); exact while the integers stay below 2^53.
    double num = 1, den = 1;
    for (std::size_t k = 1; k <= m; ++k) {
        num *= static_cast<double>(2 * k - 1);
        den *= static_cast<double>(2 * k);
        if (den > 9.0e15) {
            double dm = static_cast<double>(m);
            return std::exp(std::lgamma(dm + 0.5) - std::lgamma(dm + 1.0)) / std::sqrt(PI);
        }
    }
    return num / den;
}

CorrelatorCurve correlator_curves(const CorrelatorOptions &o) {
    if (o.m == 0) throw ValidationError("correlator order m must be >= 1");
    if (2 * o.m > o.n) throw ValidationError("correlator needs 2m <= n");
    o.rates.validate();
    if (!o.rates.satisfies_ca_selection_rule()) {
        throw ModelViolationError("correlator curves use the spin-echo model (gamma_10 = gamma_1g = 0)");
    }
    std::size_t n = o.n, len = 2 * o.m;
    double dn = static_cast<double>(n);
    Axis par = n % 2 == 0 ? Axis::x : Axis::y;
    Axis perp = n % 2 == 0 ? Axis::y : Axis::x;
    double gamma = derive_rates(o.rates).Gamma;
    double pl = plateau(o.m);

    CorrelatorCurve curve;
    curve.m = o.m;
    curve.times = o.times;
    std::size_t count = o.times.size();
    curve.exact.resize(count);
    curve.exact_perp.resize(count);
    curve.model.resize(count);
    curve.model_perp.resize(count);
    curve.single_ion_bound.resize(count);
    curve.p_leak.resize(count);

    parallel_for(count, o.jobs, [&](std::size_t i) {
        double t = o.times[i];
        if (!(t >= 0)) throw ValidationError("correlator times must be >= 0");
        double j;
        if (o.coupling) {
            j = *o.coupling;
        } else {
            if (t == 0) throw ValidationError("cat-tracking coupling needs t > 0");
            j = PI * dn / (4 * t);
        }
        Engine engine(EvolutionSpec::spin_echo(equal_couplings(n, j), o.rates, t));
        std::size_t windows = o.average_subsets ? n - len + 1 : 1;
        double e = 0, ep = 0;
        for (std::size_t w = 0; w < windows; ++w) {
            e += engine.expect_pauli(pauli_on(n, w, len, par));
            ep += engine.expect_pauli(pauli_on(n, w, len, perp));
        }
        curve.exact[i] = e / static_cast<double>(windows);
        curve.exact_perp[i] = ep / static_cast<double>(windows);
        double t_arm = engine.spec().t_arm();
        double keep = std::exp(-dn * o.rates.gamma_0g * t_arm);
        curve.model[i] = keep + (1 - keep) * pl;
        curve.model_perp[i] = (1 - keep) * pl;
        curve.single_ion_bound[i] =
            std::exp(-2.0 * static_cast<double>(o.m) * gamma * engine.spec().t_experiment());
        curve.p_leak[i] = 1 - engine.no_leak_probability();
    });
    return curve;
}

// ---------------------------------------------------------- squeezing

SqueezeStats squeezing_parameter(const Engine &engine) {
    std::size_t n = engine.n();
    if (n < 2) throw ValidationError("squeezing needs n >= 2");
    double dn = static_cast<double>(n);
    bool uniform = engine.spec().couplings.is_uniform();

    double sum_x = 0, sum_y = 0, sum_z = 0, sum_q = 0;
    std::size_t singles = uniform ? 1 : n;
    for (std::size_t i = 0; i < singles; ++i) {
        sum_x += engine.expect_pauli(PauliString(n, {{i, Axis::x}}));
        sum_y += engine.expect_pauli(PauliString(n, {{i, Axis::y}}));
        sum_z += engine.expect_pauli(PauliString(n, {{i, Axis::z}}));
        std::vector<Symbol> p0(n, Symbol::identity), p1(n, Symbol::identity);
        p0[i] = Symbol::p0;
        p1[i] = Symbol::p1;
        sum_q += (engine.expect_string(OperatorString(p0)) + engine.expect_string(OperatorString(p1)))
                     .real();
    }
    double pair_zz = 0, pair_yy = 0, pair_zy = 0;
    auto add_pair = [&](std::size_t i, std::size_t j, double weight) {
        pair_zz += weight * engine.expect_pauli(pauli_pair(n, i, Axis::z, j, Axis::z));
        pair_yy += weight * engine.expect_pauli(pauli_pair(n, i, Axis::y, j, Axis::y));
        pair_zy += weight * (engine.expect_pauli(pauli_pair(n, i, Axis::z, j, Axis::y)) +
                             engine.expect_pauli(pauli_pair(n, i, Axis::y, j, Axis::z)));
    };
    if (uniform) {
        double w = dn * (dn - 1) / 2;
        sum_x *= dn;
        sum_y *= dn;
        sum_z *= dn;
        sum_q *= dn;
        add_pair(0, 1, w);
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) add_pair(i, j, 1.0);
        }
    }
    double sx = sum_x / 2, sy = sum_y / 2, sz = sum_z / 2;
    double vzz = (sum_q + 2 * pair_zz) / 4 - sz * sz;
    double vyy = (sum_q + 2 * pair_yy) / 4 - sy * sy;
    double vzy = pair_zy / 4 - sz * sy;
    double mid = (vzz + vyy) / 2;
    double rad = std::hypot((vzz - vyy) / 2, vzy);
    double lmin = mid - rad;

    SqueezeStats out;
    out.sx = sx;
    out.usable = std::abs(sx) > 1e-12 * dn;
    out.xi2 = out.usable ? dn * lmin / (sx * sx) : std::numeric_limits<double>::quiet_NaN();
    return out;
}

std::vector<double> default_squeeze_scan(std::size_t n) {
    double center = 0.85 * std::pow(static_cast<double>(n), -0.62);
    std::vector<double> scan(60);
    for (std::size_t k = 0; k < scan.size(); ++k) {
        double frac = static_cast<double>(k) / static_cast<double>(scan.size() - 1);
        scan[k] = center * std::pow(10.0, -1.0 + 2.0 * frac);
    }
    return scan;
}

SqueezeStats squeeze_point(const SqueezeOptions &o, double u, bool noiseless) {
    std::size_t n = o.shape.n();
    if (!(o.tau > 0)) throw ValidationError("squeezing time tau must be > 0");
    if (!(o.shape.mean() != 0)) throw ValidationError("coupling shape must have nonzero mean");
    double dn = static_cast<double>(n);
    double j = u * dn / o.tau;
    CouplingMatrix couplings = o.shape.is_uniform() ? equal_couplings(n, j)
                                                    : o.shape.scaled(j / o.shape.mean());
    ScatteringRates rates = noiseless ? ScatteringRates{} : o.rates;
    double t = o.mode == EvolutionMode::spin_echo ? o.tau / 2 : o.tau;
    Engine engine(EvolutionSpec{std::move(couplings), rates, o.mode, t});
    return squeezing_parameter(engine);
}

namespace {

struct ScanOutcome {
    std::vector<double> xi2;
    double best_u = 0, best_xi2 = 0;
};

ScanOutcome scan_and_refine(const SqueezeOptions &o, const std::vector<double> &scan,
                            bool noiseless) {
    ScanOutcome out;
    out.xi2.resize(scan.size());
    parallel_for(scan.size(), o.jobs, [&](std::size_t k) {
        SqueezeStats st = squeeze_point(o, scan[k], noiseless);
        out.xi2[k] = st.xi2;
    });
    std::size_t best = scan.size();
    for (std::size_t k = 0; k < scan.size(); ++k) {
        if (std::isnan(out.xi2[k])) continue;
        if (best == scan.size() || out.xi2[k] < out.xi2[best]) best = k;
    }
    if (best == scan.size()) throw ConsistencyError("no usable squeezing scan point");
    out.best_u = scan[best];
    out.best_xi2 = out.xi2[best];
    if (o.refine && scan.size() >= 3) {
        double lo = std::log(scan[best > 0 ? best - 1 : 0]);
        double hi = std::log(scan[best + 1 < scan.size() ? best + 1 : best]);
        auto f = [&](double lu) {
            SqueezeStats st = squeeze_point(o, std::exp(lu), noiseless);
            return st.usable ? st.xi2 : std::numeric_limits<double>::max();
        };
        if (hi > lo) {
            auto [lu, val] = boost::math::tools::brent_find_minima(f, lo, hi, 40);
            if (val < out.best_xi2) {
                out.best_u = std::exp(lu);
                out.best_xi2 = val;
            }
        }
    }
    return out;
}

}  // namespace

SqueezeResult spin_squeezing(const SqueezeOptions &o) {
    std::size_t n = o.shape.n();
    if (n < 2) throw ValidationError("squeezing needs n >= 2");
    o.rates.validate();
    std::vector<double> scan = o.scan.empty() ? default_squeeze_scan(n) : o.scan;
    for (double u : scan) {
        if (!(u > 0)) throw ValidationError("squeezing scan values must be > 0");
    }

    SqueezeResult r;
    r.n = n;
    ScanOutcome noisy = scan_and_refine(o, scan, false);
    ScanOutcome clean = scan_and_refine(o, scan, true);
    for (std::size_t k = 0; k < scan.size(); ++k) r.coupling_scan.emplace_back(scan[k], noisy.xi2[k]);
    r.optimal = {noisy.best_u, noisy.best_xi2};
    r.noiseless_optimal = {clean.best_u, clean.best_xi2};
    r.noisy_at_noiseless_opt = squeeze_point(o, clean.best_u, false).xi2;

    double dn = static_cast<double>(n);
    double t = o.mode == EvolutionMode::spin_echo ? o.tau / 2 : o.tau;
    Engine at_opt(EvolutionSpec{equal_couplings(n, noisy.best_u * dn / o.tau), o.rates, o.mode, t});
    r.p_leak_at_opt = 1 - at_opt.no_leak_probability();
    return r;
}

// --------------------------------------------------------------- QAOA

QaoaPairSums qaoa_pair_sums(const QaoaOptions &o, double gamma, bool noiseless) {
    std::size_t n = o.couplings.n();
    double j = o.couplings.mean();
    if (n < 2) throw ValidationError("QAOA needs n >= 2");
    if (!(j > 0)) throw ValidationError("QAOA needs mean coupling J > 0");
    if (!(gamma >= 0)) throw ValidationError("QAOA gamma must be >= 0");
    double t = gamma * static_cast<double>(n) / j;
    ScatteringRates rates = noiseless ? ScatteringRates{} : o.rates;
    Engine engine(EvolutionSpec{o.couplings, rates, o.mode, t});

    QaoaPairSums sums;
    auto add = [&](std::size_t a, std::size_t b, double w) {
        sums.zz += w * engine.expect_pauli(pauli_pair(n, a, Axis::z, b, Axis::z));
        sums.yy += w * engine.expect_pauli(pauli_pair(n, a, Axis::y, b, Axis::y));
        sums.yz += w * (engine.expect_pauli(pauli_pair(n, a, Axis::y, b, Axis::z)) +
                        engine.expect_pauli(pauli_pair(n, a, Axis::z, b, Axis::y)));
    };
    if (o.couplings.is_uniform()) {
        double dn = static_cast<double>(n);
        add(0, 1, dn * (dn - 1) / 2);
    } else {
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = a + 1; b < n; ++b) add(a, b, o.couplings(a, b) / j);
        }
    }
    return sums;
}

double qaoa_cost(const QaoaPairSums &s, double beta) {
    double c2 = std::cos(2 * beta), s2 = std::sin(2 * beta);
    return c2 * c2 * s.zz + 0.5 * std::sin(4 * beta) * s.yz + s2 * s2 * s.yy;
}

QaoaResult qaoa_single_layer(const QaoaOptions &o) {
    std::size_t g = o.grid_points;
    if (g < 2) throw ValidationError("QAOA grid needs at least 2 points per axis");
    std::size_t n = o.couplings.n();
    o.rates.validate();
    QaoaResult r;
    r.n = n;
    double gmax = PI / std::sqrt(static_cast<double>(n));
    double steps = static_cast<double>(g - 1);
    for (std::size_t k = 0; k < g; ++k) r.gammas.push_back(gmax * static_cast<double>(k) / steps);
    for (std::size_t k = 0; k < g; ++k) {
        r.betas.push_back((2.0 * static_cast<double>(k) - steps) * PI / (4 * steps));
    }

    std::vector<QaoaPairSums> noisy(g), clean(g);
    parallel_for(g, o.jobs, [&](std::size_t k) {
        noisy[k] = qaoa_pair_sums(o, r.gammas[k], false);
        clean[k] = qaoa_pair_sums(o, r.gammas[k], true);
    });

    r.costs.resize(g * g);
    r.best_cost = std::numeric_limits<double>::infinity();
    r.noiseless_best_cost = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < g; ++a) {
        for (std::size_t b = 0; b < g; ++b) {
            double c = qaoa_cost(noisy[a], r.betas[b]);
            double c0 = qaoa_cost(clean[a], r.betas[b]);
            r.costs[a * g + b] = c;
            if (c < r.best_cost) {
                r.best_cost = c;
                r.best_params = {r.gammas[a], r.betas[b]};
            }
            if (c0 < r.noiseless_best_cost) {
                r.noiseless_best_cost = c0;
                r.noiseless_best_params = {r.gammas[a], r.betas[b]};
            }
        }
    }
    return r;
}

// ---------------------------------------------------------------- fits

PowerLawFit fit_power_law(const std::vector<double> &x, const std::vector<double> &y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw ValidationError("power-law fit needs two equal-length series of >= 2 points");
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    double k = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0) || !(y[i] > 0)) throw ValidationError("power-law fit needs positive data");
        double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    double denom = k * sxx - sx * sx;
    if (denom == 0) throw ValidationError("power-law fit needs distinct x values");
    PowerLawFit fit;
    fit.b = (k * sxy - sx * sy) / denom;
    fit.a = std::exp((sy - fit.b * sx) / k);
    return fit;
}

}  // namespace scatterspin

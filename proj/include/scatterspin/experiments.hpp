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

#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "scatterspin/couplings.hpp"
#include "scatterspin/engine.hpp"
#include "scatterspin/rates.hpp"

namespace scatterspin {

// ---------------------------------------------------------------- GHZ

struct GhzResult {
    std::size_t n = 0;
    double t_cat = 0;  // effective Ising time
    double f_scatter = 0;
    double f_unequal = 0;
    double f_total = 0;
    double f_postselect = 0;
    double p_no_leak = 0;
    double overhead = 0;
};

/// Noiseless equal-coupling z-basis amplitude of a word with k ions in |1>,
/// evolved to Ising phase phi = J t / N.
cplx ghz_amplitude(std::size_t n, std::size_t k, double phi);

/// <GHZ| rho(t_cat) |GHZ> for equal couplings J, summed over permutation
/// classes. `engine` must hold uniform couplings and t = t_cat.
double ghz_scatter_fidelity(const Engine &engine);

/// Scattering fidelity from equal couplings at the mean J, unequal-coupling
/// fidelity from the true matrix.
GhzResult ghz_fidelity(const CouplingMatrix &couplings, const ScatteringRates &rates,
                       EvolutionMode mode);

struct FUnequal {
    double f2 = 1;
    double f4 = 0;
    double value = 1;     // f2 + f4
    double gaussian = 1;  // exp(-t^2 var binom(N,2) / N^2)
};

FUnequal f_unequal(const CouplingMatrix &couplings, double t);

// ------------------------------------------------------- correlators

/// Gamma(1/2 + m) / (sqrt(pi) Gamma(1 + m)).
double plateau(std::size_t m);

struct CorrelatorOptions {
    std::size_t n = 0;
    std::size_t m = 1;
    ScatteringRates rates;
    /// Fixed coupling. When empty each time point uses J = pi N / (4 t), so
    /// every point sits at its own cat time.
    std::optional<double> coupling;
    std::vector<double> times;  // effective Ising times
    /// Average over every window of 2m consecutive ions instead of using
    /// the first 2m only.
    bool average_subsets = false;
    std::size_t jobs = 1;
};

struct CorrelatorCurve {
    std::size_t m = 0;
    std::vector<double> times;
    std::vector<double> exact, exact_perp;
    std::vector<double> model, model_perp;
    std::vector<double> single_ion_bound;
    std::vector<double> p_leak;
};

/// Spin-echo evolution with equal couplings.
CorrelatorCurve correlator_curves(const CorrelatorOptions &options);

// ---------------------------------------------------------- squeezing

struct SqueezeStats {
    double sx = 0;  // <S^x>
    double xi2 = 0;
    bool usable = false;
};

/// Squeezing parameter from an engine's one- and two-body expectations.
SqueezeStats squeezing_parameter(const Engine &engine);

struct SqueezeOptions {
    CouplingMatrix shape;  // rescaled so its mean hits each scan coupling
    ScatteringRates rates;
    EvolutionMode mode = EvolutionMode::spin_echo;
    /// Arm duration in spin-echo mode, Ising time in plain mode.
    double tau = 0.5e-3;
    /// Scan over u = J tau / N. Empty picks the default log grid.
    std::vector<double> scan;
    bool refine = true;
    std::size_t jobs = 1;
};

struct SqueezeResult {
    std::size_t n = 0;
    std::vector<std::pair<double, double>> coupling_scan;  // (u, xi2); unusable points are NaN
    std::pair<double, double> optimal{0, 0};
    std::pair<double, double> noiseless_optimal{0, 0};
    double noisy_at_noiseless_opt = 0;
    double p_leak_at_opt = 0;
};

/// 60 log-spaced points spanning a decade either side of 0.85 N^-0.62.
std::vector<double> default_squeeze_scan(std::size_t n);

/// xi2 at one scan value.
SqueezeStats squeeze_point(const SqueezeOptions &options, double u, bool noiseless);

SqueezeResult spin_squeezing(const SqueezeOptions &options);

// --------------------------------------------------------------- QAOA

struct QaoaOptions {
    CouplingMatrix couplings;
    ScatteringRates rates;
    EvolutionMode mode = EvolutionMode::plain;
    std::size_t grid_points = 101;
    std::size_t jobs = 1;
};

struct QaoaPairSums {
    double zz = 0, yz = 0, yy = 0;  // yz holds <yz> + <zy>
};

/// J-weighted two-body sums at gamma, evaluated at Ising time gamma N / J.
QaoaPairSums qaoa_pair_sums(const QaoaOptions &options, double gamma, bool noiseless);

double qaoa_cost(const QaoaPairSums &sums, double beta);

struct QaoaResult {
    std::size_t n = 0;
    std::vector<double> gammas, betas;
    std::vector<double> costs;  // row-major [gamma][beta]
    double best_cost = 0;
    std::pair<double, double> best_params{0, 0};
    double noiseless_best_cost = 0;
    std::pair<double, double> noiseless_best_params{0, 0};
};

QaoaResult qaoa_single_layer(const QaoaOptions &options);

// ---------------------------------------------------------------- fits

struct PowerLawFit {
    double a = 0, b = 0;
};

/// Least squares of log y = log a + b log x.
PowerLawFit fit_power_law(const std::vector<double> &x, const std::vector<double> &y);

}  // namespace scatterspin

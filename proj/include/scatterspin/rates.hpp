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

#include <numbers>

namespace scatterspin {

namespace constants {
inline constexpr double hbar = 1.054571817e-34;  // J s
inline constexpr double c = 299792458.0;         // m / s
inline constexpr double two_pi = 2.0 * std::numbers::pi;
}  // namespace constants

/// The five single-ion jump rates (s^-1). Level |g> is the leakage sink.
struct ScatteringRates {
    double gamma_01 = 0;  // Raman |0> -> |1>
    double gamma_10 = 0;  // Raman |1> -> |0>
    double gamma_0g = 0;  // leakage |0> -> |g>
    double gamma_1g = 0;  // leakage |1> -> |g>
    double gamma_el = 0;  // elastic (dephasing)

    /// Throws ValidationError unless every rate is finite and >= 0.
    void validate() const;

    bool is_zero() const {
        return gamma_01 == 0 && gamma_10 == 0 && gamma_0g == 0 && gamma_1g == 0 &&
               gamma_el == 0;
    }

    /// No scattering out of |1> (required by the spin-echo kernels).
    bool satisfies_ca_selection_rule() const { return gamma_10 == 0 && gamma_1g == 0; }
};

/// Combinations of the jump rates that appear in the closed-form kernels.
struct DerivedRates {
    double Gamma = 0;   // total single-ion decoherence, GammaL + GammaR + gamma_el/2
    double GammaL = 0;  // (gamma_0g + gamma_1g)/2
    double GammaR = 0;  // (gamma_01 + gamma_10)/2
    double GammaB = 0;  // (gamma_01 gamma_1g + gamma_10 gamma_0g)/2, units s^-2
    double Gamma0 = 0;  // total decay out of |0>
    double Gamma1 = 0;  // total decay out of |1>
    double lambda = 0;  // (Gamma0 + Gamma1)/2
    double Delta = 0;   // (Gamma0 - Gamma1)/2
    double DeltaL = 0;  // (gamma_0g - gamma_1g)/2
};

DerivedRates derive_rates(const ScatteringRates &rates);

enum class ScatterChannel { leak, elastic, raman };

/// Far-detuned 854 nm light-shift beam acting on the D5/2 qubit of 40Ca+.
/// Defaults are representative, not a reproduction of any published run.
struct CaLaserParams {
    double power = 3.0;                                  // W
    double waist = 1.0e-3;                               // m
    double detuning = constants::two_pi * 1.0e12;        // rad/s from P3/2
    double decay_p32_d52 = 8.48e6;                       // s^-1, P3/2 -> D5/2
    double decay_p32_total = 1.0 / 6.924e-9;             // s^-1, P3/2 total
    double k_dp = constants::two_pi / 854.209e-9;        // m^-1
    double branch_leak = 0.945;
    double branch_elastic = 0.016;
    double branch_raman = 0.039;

    void validate() const;
};

struct CaRates {
    double stark_shift = 0;  // s^-1, light shift of |0>
    double total = 0;        // s^-1, total scattering rate out of |0>
    ScatteringRates rates;
};

/// Light shift of |0> and the resulting channel rates. Scattering out of |1>
/// is forbidden for the pi-polarized beam, so gamma_10 = gamma_1g = 0.
CaRates ca_stark_and_rates(const CaLaserParams &params);

}  // namespace scatterspin

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

#include "scatterspin/rates.hpp"

#include <cmath>
#include <string>

#include "scatterspin/error.hpp"

namespace scatterspin {

namespace {

void check_rate(double v, const char *name) {
    if (!std::isfinite(v) || v < 0) {
        throw ValidationError(std::string("rate ") + name + " must be finite and >= 0, got " +
                              std::to_string(v));
    }
}

}  // namespace

void ScatteringRates::validate() const {
    check_rate(gamma_01, "gamma_01");
    check_rate(gamma_10, "gamma_10");
    check_rate(gamma_0g, "gamma_0g");
    check_rate(gamma_1g, "gamma_1g");
    check_rate(gamma_el, "gamma_el");
}

DerivedRates derive_rates(const ScatteringRates &r) {
    r.validate();
    DerivedRates d;
    d.Gamma0 = r.gamma_01 + r.gamma_0g;
    d.Gamma1 = r.gamma_10 + r.gamma_1g;
    d.lambda = (d.Gamma0 + d.Gamma1) / 2;
    d.Delta = (d.Gamma0 - d.Gamma1) / 2;
    d.GammaL = (r.gamma_0g + r.gamma_1g) / 2;
    d.GammaR = (r.gamma_01 + r.gamma_10) / 2;
    d.GammaB = (r.gamma_01 * r.gamma_1g + r.gamma_10 * r.gamma_0g) / 2;
    d.DeltaL = (r.gamma_0g - r.gamma_1g) / 2;
    d.Gamma = d.GammaL + d.GammaR + r.gamma_el / 2;
    return d;
}

void CaLaserParams::validate() const {
    if (!std::isfinite(power) || power < 0) throw ValidationError("laser power must be >= 0");
    if (!std::isfinite(waist) || waist <= 0) throw ValidationError("laser waist must be > 0");
    if (!std::isfinite(detuning) || detuning == 0) {
        throw ValidationError("laser detuning must be nonzero");
    }
    if (!(decay_p32_d52 >= 0) || !(decay_p32_total >= 0) || !(k_dp > 0)) {
        throw ValidationError("atomic constants must be positive");
    }
    for (double b : {branch_leak, branch_elastic, branch_raman}) {
        if (!std::isfinite(b) || b < 0) throw ValidationError("branching fractions must be >= 0");
    }
    if (std::abs(branch_leak + branch_elastic + branch_raman - 1.0) > 1e-6) {
        throw ValidationError("branching fractions must sum to 1");
    }
}

CaRates ca_stark_and_rates(const CaLaserParams &p) {
    p.validate();
    double k3 = p.k_dp * p.k_dp * p.k_dp;
    CaRates out;
    out.stark_shift = 1.2 * p.decay_p32_d52 / (constants::hbar * constants::c * k3 * p.detuning) *
                      (p.power / (p.waist * p.waist));
    out.total = p.decay_p32_total * std::abs(out.stark_shift / p.detuning);
    out.rates.gamma_0g = p.branch_leak * out.total;
    out.rates.gamma_el = p.branch_elastic * out.total;
    out.rates.gamma_01 = p.branch_raman * out.total;
    return out;
}

}  // namespace scatterspin

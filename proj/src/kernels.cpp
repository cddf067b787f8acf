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

#include "scatterspin/kernels.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>

#include "scatterspin/error.hpp"

namespace scatterspin {

namespace {

constexpr cplx I_UNIT{0.0, 1.0};

// Below this |chi t| the b kernel switches to its Taylor series in chi^2.
constexpr double B_SERIES_THRESHOLD = 0.5;

// M_n = integral_0^t t'^n exp(-g t') dt'.
double moment(int n, double g, double t) {
    double gt = g * t;
    if (gt <= 1.0) {
        double tn1 = std::pow(t, n + 1);
        double term = 1.0;  // (-gt)^j / j!
        double sum = 0.0;
        for (int j = 0; j < 60; ++j) {
            double add = term / static_cast<double>(n + 1 + j);
            sum += add;
            if (std::abs(add) < 1e-18 * std::abs(sum)) break;
            term *= -gt / static_cast<double>(j + 1);
        }
        return tn1 * sum;
    }
    double lead = std::exp(std::lgamma(n + 1.0) - (n + 1.0) * std::log(g));
    return lead * boost::math::gamma_p(n + 1.0, gt);
}

cplx b_series(double g, cplx chi, double t) {
    cplx chi2 = chi * chi;
    cplx power = 1.0;  // (-chi^2)^k
    double fact = 1.0;  // (2k+1)!
    cplx sum = 0.0;
    for (int k = 0; k < 30; ++k) {
        cplx add = power / fact * moment(2 * k + 1, g, t);
        sum += add;
        if (std::abs(add) <= 1e-17 * std::abs(sum)) break;
        power *= -chi2;
        fact *= static_cast<double>((2 * k + 2) * (2 * k + 3));
    }
    return sum;
}

// exp(-d) cos(z) and friends, with the damping folded into the exponent so
// that neither factor overflows when |Im z| <= d.
cplx damped_cos(cplx z, double d) {
    return (std::exp(I_UNIT * z - d) + std::exp(-I_UNIT * z - d)) * 0.5;
}

cplx damped_sinc(cplx z, double d) {
    if (std::abs(z) < 1.0) return sinc(z) * std::exp(-d);
    return (std::exp(I_UNIT * z - d) - std::exp(-I_UNIT * z - d)) / (2.0 * I_UNIT * z);
}

}  // namespace

cplx sinc(cplx z) {
    if (std::abs(z) < 1e-4) {
        cplx z2 = z * z;
        return 1.0 - z2 / 6.0 + z2 * z2 / 120.0;
    }
    return std::sin(z) / z;
}

cplx f_kernel(double gamma, cplx chi, double t) {
    if (t == 0) return 0.0;
    cplx w = (chi + I_UNIT * gamma) * (t / 2.0);
    if (std::abs(w.imag()) < 300.0) return std::exp(I_UNIT * w) * t * sinc(w);
    return t * (std::exp(2.0 * I_UNIT * w) - 1.0) / (2.0 * I_UNIT * w);
}

cplx a_kernel(double gamma, cplx chi, double t) {
    return (f_kernel(gamma, chi, t) + f_kernel(gamma, -chi, t)) * 0.5;
}

cplx b_kernel(double gamma, cplx chi, double t) {
    if (t == 0) return 0.0;
    if (std::abs(chi) * t < B_SERIES_THRESHOLD) return b_series(gamma, chi, t);
    return -I_UNIT * (f_kernel(gamma, chi, t) - f_kernel(gamma, -chi, t)) / (2.0 * chi);
}

namespace detail {

cplx zeta_of(const KernelArgs &args) {
    cplx s(2.0 * args.j_eff / static_cast<double>(args.n), args.derived.Delta);
    return std::sqrt(s * s - args.raw.gamma_01 * args.raw.gamma_10);
}

KernelSet kernel_set_with_zeta(const KernelArgs &args, cplx zeta) {
    if (!(args.t >= 0)) throw ValidationError("kernel time must be >= 0");
    if (args.n == 0) throw ValidationError("kernel ion count must be >= 1");
    const ScatteringRates &r = args.raw;
    const DerivedRates &d = args.derived;
    double t = args.t;
    double x = 2.0 * args.j_eff / static_cast<double>(args.n);
    cplx s(x, d.Delta);

    KernelSet k;
    k.i0 = 0.5 * std::exp(cplx(-d.Gamma0 * t, x * t));
    k.i1 = 0.5 * std::exp(cplx(-d.Gamma1 * t, -x * t));
    k.i_val = k.i0 + k.i1;

    double damp = d.lambda * t;
    cplx zt = zeta * t;
    cplx st = s * t;
    cplx c_diff = damped_cos(zt, damp) - damped_cos(st, damp);
    cplx sz = damped_sinc(zt, damp);
    cplx ss = damped_sinc(st, damp);
    cplx cross = I_UNIT * st * (sz - ss);
    k.r0 = 0.5 * (c_diff + r.gamma_10 * t * sz + cross);
    k.r1 = 0.5 * (c_diff + r.gamma_01 * t * sz - cross);
    k.r_val = k.r0 + k.r1;

    k.l0g = 0.5 * r.gamma_0g * f_kernel(d.Gamma0, x, t);
    k.l1g = 0.5 * r.gamma_1g * f_kernel(d.Gamma1, -x, t);
    k.l_val = k.l0g + k.l1g;

    k.b_val = 0.0;
    if (d.GammaL != 0) {
        cplx bz = b_kernel(d.lambda, zeta, t);
        k.b_val = d.GammaL * (a_kernel(d.lambda, zeta, t) - a_kernel(d.lambda, s, t)) +
                  d.GammaB * bz + I_UNIT * s * d.DeltaL * (bz - b_kernel(d.lambda, s, t));
    }
    return k;
}

}  // namespace detail

KernelSet kernel_set(const KernelArgs &args) {
    return detail::kernel_set_with_zeta(args, detail::zeta_of(args));
}

SpinEchoKernelSet spin_echo_kernel_set(double j_eff, std::size_t n, double t_arm,
                                       const ScatteringRates &rates) {
    rates.validate();
    if (!rates.satisfies_ca_selection_rule()) {
        throw ModelViolationError(
            "spin-echo kernels require gamma_10 = gamma_1g = 0 (no scattering out of |1>)");
    }
    if (!(t_arm >= 0)) throw ValidationError("arm time must be >= 0");
    if (n == 0) throw ValidationError("kernel ion count must be >= 1");
    double x = j_eff / static_cast<double>(n);
    double g0 = rates.gamma_01 + rates.gamma_0g;
    double g01 = rates.gamma_01;
    cplx fp = f_kernel(g0, x, t_arm);
    cplx fm = f_kernel(g0, -x, t_arm);

    SpinEchoKernelSet k;
    k.i0 = 0.5 * std::exp(cplx(-g0 * t_arm, x * t_arm));
    k.i1 = 0.5 * std::exp(cplx(-g0 * t_arm, -x * t_arm));
    k.r0 = 0.5 * (g01 * fm + g01 * g01 * fp * fm);
    k.r1 = 0.5 * g01 * fp * std::exp(cplx(-g0 * t_arm, -x * t_arm));
    k.l_val = 0.5 * rates.gamma_0g * (fp + fm);
    k.b_val = 0.5 * g01 * rates.gamma_0g * fp * fm;
    return k;
}

}  // namespace scatterspin

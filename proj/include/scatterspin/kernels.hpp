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

#include <complex>
#include <cstddef>

#include "scatterspin/rates.hpp"

namespace scatterspin {

using cplx = std::complex<double>;

/// sin(z)/z with the removable singularity filled in.
cplx sinc(cplx z);

/// f(G, chi, t) = integral_0^t exp((i chi - G) t') dt'.
cplx f_kernel(double gamma, cplx chi, double t);

/// a(G, chi, t) = integral_0^t exp(-G t') cos(chi t') dt'.
cplx a_kernel(double gamma, cplx chi, double t);

/// b(G, chi, t) = integral_0^t exp(-G t') sin(chi t') / chi dt'.
cplx b_kernel(double gamma, cplx chi, double t);

struct KernelArgs {
    double j_eff = 0;  // signed coupling sum seen by one spectator ion
    std::size_t n = 1;
    double t = 0;
    ScatteringRates raw;
    DerivedRates derived;

    static KernelArgs make(double j_eff, std::size_t n, double t, const ScatteringRates &rates) {
        return KernelArgs{j_eff, n, t, rates, derive_rates(rates)};
    }
};

/// Spectator-ion factors for the plain Ising evolution. i_val/r_val/l_val
/// are the sums of their split parts.
struct KernelSet {
    cplx i_val, r_val, l_val, b_val;
    cplx i0, i1, r0, r1, l0g, l1g;

    /// Factor for a spectator with no projector on it.
    cplx total() const { return i_val + r_val + l_val + b_val; }
    cplx p0() const { return i0 + r0; }
    cplx p1() const { return i1 + r1; }
    cplx pg() const { return l_val + b_val; }
};

KernelSet kernel_set(const KernelArgs &args);

/// Spectator-ion factors for the two-arm spin-echo sequence. Requires
/// gamma_10 = gamma_1g = 0; throws ModelViolationError otherwise.
struct SpinEchoKernelSet {
    cplx i0, i1, r0, r1, l_val, b_val;

    cplx total() const { return i0 + i1 + r0 + r1 + l_val + b_val; }
    cplx p0() const { return i0 + r0; }
    cplx p1() const { return i1 + r1; }
    cplx pg() const { return l_val + b_val; }
};

SpinEchoKernelSet spin_echo_kernel_set(double j_eff, std::size_t n, double t_arm,
                                       const ScatteringRates &rates);

namespace detail {

/// kernel_set with an explicitly chosen square root zeta (either sign).
/// Only used to check that the result does not depend on the branch.
KernelSet kernel_set_with_zeta(const KernelArgs &args, cplx zeta);

/// Principal-branch zeta = sqrt(s^2 - gamma_01 gamma_10).
cplx zeta_of(const KernelArgs &args);

}  // namespace detail

}  // namespace scatterspin

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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <unsupported/Eigen/MatrixFunctions>

#include "frozen_values.hpp"
#include "scatterspin/error.hpp"
#include "test_support.hpp"

using namespace scatterspin;
using namespace scatterspin::testing;

namespace {

constexpr cplx I(0, 1);

// Populations (p0, p1, pg) of one uncoupled ion from (1/2, 1/2, 0) under the
// classical rate equations.
Eigen::Vector3d rate_equation(const ScatteringRates &r, double t, const Eigen::Vector3d &start) {
    Eigen::Matrix3d m;
    m << -(r.gamma_01 + r.gamma_0g), r.gamma_10, 0,  //
        r.gamma_01, -(r.gamma_10 + r.gamma_1g), 0,   //
        r.gamma_0g, r.gamma_1g, 0;
    Eigen::Matrix3d e = (m * t).exp();
    return e * start;
}

}  // namespace

TEST(f_kernel, closed_forms) {
    EXPECT_NEAR(std::abs(f_kernel(1, 0, 1) - (1 - std::exp(-1.0))), 0, 1e-15);
    EXPECT_NEAR(std::abs(f_kernel(0, std::numbers::pi, 1) - 2.0 * I / std::numbers::pi), 0, 1e-15);
    EXPECT_EQ(f_kernel(0.3, 2.0, 0), 0.0);
    EXPECT_NEAR(std::abs(f_kernel(0, 0, 2.5) - 2.5), 0, 1e-15);
}

TEST(f_kernel, large_damping_branch) {
    for (double g : {650.0, 2000.0}) {
        for (cplx chi : {cplx(1, 0), cplx(-3, 40), cplx(0, -100)}) {
            double t = 1.0;
            cplx z = I * chi - g;
            cplx want = (std::exp(z * t) - 1.0) / z;
            EXPECT_NEAR(std::abs(f_kernel(g, chi, t) - want), 0, 1e-15 * std::abs(want));
        }
    }
}

TEST(kernels, frozen_quadrature_values) {
    for (const auto &c : frozen::KERNELS) {
        cplx chi(c.chi_re, c.chi_im);
        EXPECT_NEAR(std::abs(f_kernel(c.gamma, chi, c.t) - cplx(c.f_re, c.f_im)), 0, 1e-14);
        EXPECT_NEAR(std::abs(a_kernel(c.gamma, chi, c.t) - cplx(c.a_re, c.a_im)), 0, 1e-14);
        EXPECT_NEAR(std::abs(b_kernel(c.gamma, chi, c.t) - cplx(c.b_re, c.b_im)), 0, 1e-14);
    }
}

TEST(kernels, random_against_gauss_kronrod) {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0, 1);
    for (int trial = 0; trial < 60; ++trial) {
        double g = 3 * u(rng), t = 0.05 + 3 * u(rng);
        cplx chi(8 * u(rng) - 4, trial % 2 ? 2 * u(rng) - 1 : 0.0);
        if (trial % 5 == 0) chi *= 1e-3;  // exercise the b series
        cplx f = quad([&](double s) { return std::exp((I * chi - g) * s); }, t);
        cplx a = quad([&](double s) { return std::exp(-g * s) * std::cos(chi * s); }, t);
        cplx b = quad([&](double s) { return std::exp(-g * s) * s * sinc(chi * s); }, t);
        EXPECT_NEAR(std::abs(f_kernel(g, chi, t) - f), 0, 1e-13) << trial;
        EXPECT_NEAR(std::abs(a_kernel(g, chi, t) - a), 0, 1e-13) << trial;
        EXPECT_NEAR(std::abs(b_kernel(g, chi, t) - b), 0, 1e-13) << trial;
    }
}

TEST(b_kernel, continuous_across_series_switch) {
    for (double g : {0.0, 0.7, 4.0, 40.0}) {
        double t = 2.0;
        for (cplx dir : {cplx(1, 0), cplx(0, 1), cplx(0.6, 0.8)}) {
            cplx below = b_kernel(g, dir * (0.5 / t) * (1 - 1e-12), t);
            cplx above = b_kernel(g, dir * (0.5 / t) * (1 + 1e-12), t);
            cplx chi = dir * (0.5 / t);
            cplx ref = quad([&](double s) { return std::exp(-g * s) * s * sinc(chi * s); }, t);
            EXPECT_LT(std::abs(below - above), 2e-12 * std::abs(ref));
            EXPECT_LT(std::abs(below - ref), 2e-12 * std::abs(ref));
        }
    }
}

TEST(b_kernel, tiny_argument_limit) {
    for (double g : {0.0, 0.5, 3.0}) {
        double t = 1.7;
        double want = g == 0 ? t * t / 2 : (1 - (1 + g * t) * std::exp(-g * t)) / (g * g);
        EXPECT_NEAR(std::abs(b_kernel(g, 1e-300, t) - want), 0, 1e-15);
        EXPECT_NEAR(std::abs(b_kernel(g, 0.0, t) - want), 0, 1e-15);
    }
}

TEST(kernels, time_derivatives) {
    double g = 0.8, h = 1e-5;
    cplx chi(1.3, 0.4);
    for (double t : {0.3, 1.0, 2.5}) {
        cplx df = (f_kernel(g, chi, t + h) - f_kernel(g, chi, t - h)) / (2 * h);
        cplx db = (b_kernel(g, chi, t + h) - b_kernel(g, chi, t - h)) / (2 * h);
        EXPECT_NEAR(std::abs(df - std::exp((I * chi - g) * t)), 0, 1e-9);
        EXPECT_NEAR(std::abs(db - std::exp(-g * t) * std::sin(chi * t) / chi), 0, 1e-9);
    }
}

TEST(kernel_set, conserves_probability_at_zero_field) {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(0, 1);
    for (int trial = 0; trial < 1000; ++trial) {
        ScatteringRates r{3 * u(rng), 3 * u(rng), 3 * u(rng), 3 * u(rng), 3 * u(rng)};
        double t = 5 * u(rng);
        KernelSet k = kernel_set(KernelArgs::make(0.0, 1 + trial % 7, t, r));
        cplx sum = k.i0 + k.i1 + k.r0 + k.r1 + k.l_val + k.b_val;
        EXPECT_NEAR(std::abs(sum - 1.0), 0, 1e-12) << trial;
    }
}

TEST(kernel_set, matches_rate_equations_at_zero_field) {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 50; ++trial) {
        ScatteringRates r = random_rates(rng, false, 0.0, 2.0);
        double t = 0.1 + 0.2 * trial;
        KernelSet k = kernel_set(KernelArgs::make(0.0, 3, t, r));
        Eigen::Vector3d p = rate_equation(r, t, {0.5, 0.5, 0});
        EXPECT_NEAR(std::abs(k.p0() - p(0)), 0, 1e-12);
        EXPECT_NEAR(std::abs(k.p1() - p(1)), 0, 1e-12);
        EXPECT_NEAR(std::abs(k.pg() - p(2)), 0, 1e-12);
    }
}

TEST(kernel_set, coherent_part_is_damped_cosine) {
    ScatteringRates r{0.2, 0.4, 0.3, 0.1, 0.5};
    KernelArgs a = KernelArgs::make(1.7, 4, 2.2, r);
    KernelSet k = kernel_set(a);
    cplx s(2 * 1.7 / 4, a.derived.Delta);
    EXPECT_NEAR(std::abs(k.i_val - std::exp(-a.derived.lambda * a.t) * std::cos(s * a.t)), 0, 1e-15);
}

TEST(kernel_set, independent_of_square_root_branch) {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(-3, 3);
    for (int trial = 0; trial < 200; ++trial) {
        ScatteringRates r = random_rates(rng, false, 0.0, 3.0);
        KernelArgs a = KernelArgs::make(u(rng), 2, 1.0 + u(rng) / 3, r);
        cplx z = detail::zeta_of(a);
        KernelSet p = detail::kernel_set_with_zeta(a, z), m = detail::kernel_set_with_zeta(a, -z);
        EXPECT_NEAR(std::abs(p.r0 - m.r0), 0, 1e-13);
        EXPECT_NEAR(std::abs(p.r1 - m.r1), 0, 1e-13);
        EXPECT_NEAR(std::abs(p.b_val - m.b_val), 0, 1e-13);
    }
    // Exceptional point s^2 = gamma_01 gamma_10, where zeta = 0.
    ScatteringRates r{0.25, 0.25, 0.3, 0.3, 0.1};
    KernelArgs a = KernelArgs::make(0.25 * 3 / 2, 3, 1.5, r);
    EXPECT_NEAR(std::abs(detail::zeta_of(a)), 0, 1e-15);
    KernelSet k = kernel_set(a);
    EXPECT_TRUE(std::isfinite(k.r0.real()) && std::isfinite(k.b_val.real()));
    KernelSet nudged = kernel_set(KernelArgs::make(0.25 * 3 / 2 * (1 + 1e-9), 3, 1.5, r));
    EXPECT_NEAR(std::abs(k.total() - nudged.total()), 0, 1e-8);
}

TEST(kernel_set, raman_only_has_no_leakage) {
    std::mt19937_64 rng(37);
    std::uniform_real_distribution<double> u(-5, 5);
    for (int trial = 0; trial < 200; ++trial) {
        ScatteringRates r = random_rates(rng, false, 0.0, 2.0);
        r.gamma_0g = r.gamma_1g = 0;
        KernelSet k = kernel_set(KernelArgs::make(u(rng), 5, 2 + u(rng) / 3, r));
        EXPECT_EQ(k.l_val, 0.0);
        EXPECT_EQ(k.b_val, 0.0);
        EXPECT_EQ(k.pg(), 0.0);
    }
}

TEST(kernel_set, validation) {
    EXPECT_THROW(kernel_set(KernelArgs::make(0, 2, -1, {})), ValidationError);
    EXPECT_THROW(spin_echo_kernel_set(0, 2, 1, ScatteringRates{0, 0.1, 0, 0, 0}), ModelViolationError);
    EXPECT_THROW(spin_echo_kernel_set(0, 2, 1, ScatteringRates{0, 0, 0, 0.1, 0}), ModelViolationError);
}

TEST(spin_echo_kernel_set, matches_rate_equations_at_zero_field) {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 50; ++trial) {
        ScatteringRates r = random_rates(rng, true, 0.0, 2.0);
        double t_arm = 0.05 + 0.1 * trial;
        SpinEchoKernelSet k = spin_echo_kernel_set(0.0, 3, t_arm, r);
        Eigen::Vector3d p = rate_equation(r, t_arm, {0.5, 0.5, 0});
        std::swap(p(0), p(1));
        p = rate_equation(r, t_arm, p);
        std::swap(p(0), p(1));
        EXPECT_NEAR(std::abs(k.p0() - p(0)), 0, 1e-12);
        EXPECT_NEAR(std::abs(k.p1() - p(1)), 0, 1e-12);
        EXPECT_NEAR(std::abs(k.pg() - p(2)), 0, 1e-12);
        EXPECT_NEAR(std::abs(k.total() - 1.0), 0, 1e-12);
    }
}

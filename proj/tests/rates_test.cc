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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "scatterspin/error.hpp"

using namespace scatterspin;

TEST(derive_rates, matches_definitions) {
    ScatteringRates r{0.3, 0.7, 1.1, 1.3, 0.5};
    DerivedRates d = derive_rates(r);
    EXPECT_DOUBLE_EQ(d.Gamma0, 0.3 + 1.1);
    EXPECT_DOUBLE_EQ(d.Gamma1, 0.7 + 1.3);
    EXPECT_DOUBLE_EQ(d.lambda, (1.4 + 2.0) / 2);
    EXPECT_DOUBLE_EQ(d.Delta, (1.4 - 2.0) / 2);
    EXPECT_DOUBLE_EQ(d.GammaL, (1.1 + 1.3) / 2);
    EXPECT_DOUBLE_EQ(d.GammaR, (0.3 + 0.7) / 2);
    EXPECT_DOUBLE_EQ(d.GammaB, (0.3 * 1.3 + 0.7 * 1.1) / 2);
    EXPECT_DOUBLE_EQ(d.DeltaL, (1.1 - 1.3) / 2);
    EXPECT_DOUBLE_EQ(d.Gamma, d.GammaL + d.GammaR + 0.25);
}

TEST(derive_rates, linear_and_bilinear) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0, 2);
    for (int trial = 0; trial < 50; ++trial) {
        ScatteringRates a{u(rng), u(rng), u(rng), u(rng), u(rng)};
        ScatteringRates b{u(rng), u(rng), u(rng), u(rng), u(rng)};
        ScatteringRates s{a.gamma_01 + b.gamma_01, a.gamma_10 + b.gamma_10, a.gamma_0g + b.gamma_0g,
                          a.gamma_1g + b.gamma_1g, a.gamma_el + b.gamma_el};
        DerivedRates da = derive_rates(a), db = derive_rates(b), ds = derive_rates(s);
        EXPECT_NEAR(ds.Gamma, da.Gamma + db.Gamma, 1e-14);
        EXPECT_NEAR(ds.lambda, da.lambda + db.lambda, 1e-14);
        EXPECT_NEAR(ds.Delta, da.Delta + db.Delta, 1e-14);
        EXPECT_NEAR(ds.DeltaL, da.DeltaL + db.DeltaL, 1e-14);
        ScatteringRates twice{2 * a.gamma_01, 2 * a.gamma_10, 2 * a.gamma_0g, 2 * a.gamma_1g, 2 * a.gamma_el};
        EXPECT_NEAR(derive_rates(twice).GammaB, 4 * da.GammaB, 1e-13);
    }
}

TEST(scattering_rates, validation) {
    EXPECT_THROW((ScatteringRates{-1, 0, 0, 0, 0}.validate()), ValidationError);
    EXPECT_THROW((ScatteringRates{0, 0, NAN, 0, 0}.validate()), ValidationError);
    EXPECT_THROW(derive_rates(ScatteringRates{0, 0, 0, 0, INFINITY}), ValidationError);
    EXPECT_NO_THROW((ScatteringRates{0, 0, 0, 0, 0}.validate()));
    EXPECT_TRUE(ScatteringRates{}.is_zero());
    EXPECT_TRUE((ScatteringRates{1, 0, 1, 0, 1}.satisfies_ca_selection_rule()));
    EXPECT_FALSE((ScatteringRates{1, 0, 1, 1e-9, 1}.satisfies_ca_selection_rule()));
}

TEST(ca_rates, branching_split) {
    CaRates ca = ca_stark_and_rates(CaLaserParams{});
    EXPECT_NEAR(ca.rates.gamma_0g / ca.total, 0.945, 1e-12);
    EXPECT_NEAR(ca.rates.gamma_el / ca.total, 0.016, 1e-12);
    EXPECT_NEAR(ca.rates.gamma_01 / ca.total, 0.039, 1e-12);
    EXPECT_EQ(ca.rates.gamma_10, 0.0);
    EXPECT_EQ(ca.rates.gamma_1g, 0.0);
}

TEST(ca_rates, closed_form_values) {
    CaLaserParams p;
    double k = 2 * std::acos(-1.0) / 854.209e-9;
    double stark = 1.2 * 8.48e6 / (1.054571817e-34 * 299792458.0 * k * k * k * p.detuning) * 3.0 / 1e-6;
    CaRates ca = ca_stark_and_rates(p);
    EXPECT_NEAR(ca.stark_shift / stark, 1.0, 1e-12);
    EXPECT_NEAR(ca.total, stark / p.detuning / 6.924e-9, 1e-10);
    // Representative default, well inside the < 11 s^-1 envelope.
    EXPECT_NEAR(ca.total, 8.876, 1e-3);
}

TEST(ca_rates, linear_in_power) {
    CaLaserParams p;
    p.power = 0;
    CaRates zero = ca_stark_and_rates(p);
    EXPECT_EQ(zero.stark_shift, 0.0);
    EXPECT_TRUE(zero.rates.is_zero());

    p.power = 1.5;
    CaRates one = ca_stark_and_rates(p);
    p.power = 3.0;
    CaRates two = ca_stark_and_rates(p);
    EXPECT_NEAR(two.stark_shift, 2 * one.stark_shift, 1e-9 * one.stark_shift);
    EXPECT_NEAR(two.rates.gamma_0g, 2 * one.rates.gamma_0g, 1e-12);
    EXPECT_NEAR(two.rates.gamma_01, 2 * one.rates.gamma_01, 1e-12);
    EXPECT_NEAR(two.rates.gamma_el, 2 * one.rates.gamma_el, 1e-12);
}

TEST(ca_rates, validation) {
    CaLaserParams p;
    p.detuning = 0;
    EXPECT_THROW(ca_stark_and_rates(p), ValidationError);
    p = CaLaserParams{};
    p.waist = 0;
    EXPECT_THROW(ca_stark_and_rates(p), ValidationError);
    p = CaLaserParams{};
    p.branch_leak = 0.5;
    EXPECT_THROW(ca_stark_and_rates(p), ValidationError);
}

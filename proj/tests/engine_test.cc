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
#include "scatterspin/engine.hpp"

#include <gtest/gtest.h>

#include <random>

#include "frozen_values.hpp"
#include "scatterspin/error.hpp"
#include "scatterspin/parallel.hpp"
#include "test_support.hpp"

using namespace scatterspin;
using namespace scatterspin::testing;

namespace {

ScatteringRates from_array(const double (&r)[5]) { return {r[0], r[1], r[2], r[3], r[4]}; }

}  // namespace

TEST(engine, frozen_liouvillian_values_plain) {
    EvolutionSpec spec = EvolutionSpec::plain(equal_couplings(2, frozen::PLAIN_J),
                                              from_array(frozen::PLAIN_RATES), frozen::PLAIN_T);
    Engine e(spec);
    for (const auto &el : frozen::PLAIN) {
        cplx got = e.density_matrix_element(parse_word(el.row), parse_word(el.col));
        EXPECT_NEAR(std::abs(got - cplx(el.re, el.im)), 0, 1e-13) << el.row << " " << el.col;
    }
}

TEST(engine, frozen_liouvillian_values_spin_echo) {
    EvolutionSpec spec = EvolutionSpec::spin_echo_arm(equal_couplings(2, frozen::PLAIN_J),
                                                      from_array(frozen::ECHO_RATES), frozen::ECHO_T_ARM);
    Engine e(spec);
    for (const auto &el : frozen::ECHO) {
        cplx got = e.density_matrix_element(parse_word(el.row), parse_word(el.col));
        EXPECT_NEAR(std::abs(got - cplx(el.re, el.im)), 0, 1e-13) << el.row << " " << el.col;
    }
}

TEST(engine, matches_dense_oracle) {
    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> u(0, 1);
    for (std::size_t n = 1; n <= 3; ++n) {
        for (bool echo : {false, true}) {
            for (int trial = 0; trial < 2; ++trial) {
                CouplingMatrix j = n == 1 ? CouplingMatrix::from_dense(1, {0.0}) : random_couplings(rng, n);
                ScatteringRates r = random_rates(rng, echo);
                double t = (0.2 + 2.8 * u(rng)) / derive_rates(r).Gamma;
                EvolutionSpec spec = echo ? EvolutionSpec::spin_echo(j, r, t) : EvolutionSpec::plain(j, r, t);
                Eigen::MatrixXcd diff = engine_matrix(Engine(spec)) - oracle_state(spec).data;
                EXPECT_LT(diff.cwiseAbs().maxCoeff(), 1e-9) << "n=" << n << " echo=" << echo;
            }
        }
    }
}

TEST(engine, trace_and_hermiticity) {
    std::mt19937_64 rng(103);
    for (bool echo : {false, true}) {
        EvolutionSpec spec{random_couplings(rng, 3), random_rates(rng, echo),
                           echo ? EvolutionMode::spin_echo : EvolutionMode::plain, 2.3};
        Eigen::MatrixXcd m = engine_matrix(Engine(spec));
        EXPECT_NEAR(std::abs(m.trace() - 1.0), 0, 1e-13);
        EXPECT_LT((m - m.adjoint()).cwiseAbs().maxCoeff(), 1e-14);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es((m + m.adjoint()) / 2);
        EXPECT_GT(es.eigenvalues().minCoeff(), -1e-12);
    }
}

TEST(engine, permutation_equivariance) {
    std::mt19937_64 rng(107);
    std::size_t n = 4;
    CouplingMatrix j = random_couplings(rng, n);
    ScatteringRates r = random_rates(rng, false);
    std::vector<std::size_t> perm = {2, 0, 3, 1};
    std::vector<double> pd(n * n);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) pd[perm[a] * n + perm[b]] = j(a, b);
    }
    Engine e(EvolutionSpec::plain(j, r, 1.4));
    Engine ep(EvolutionSpec::plain(CouplingMatrix::from_dense(n, pd), r, 1.4));
    std::uniform_int_distribution<std::size_t> pick(0, 80);
    for (int trial = 0; trial < 200; ++trial) {
        Word row = index_word(pick(rng), n), col = index_word(pick(rng), n);
        Word prow(n), pcol(n);
        for (std::size_t a = 0; a < n; ++a) {
            prow[perm[a]] = row[a];
            pcol[perm[a]] = col[a];
        }
        EXPECT_NEAR(std::abs(e.density_matrix_element(row, col) - ep.density_matrix_element(prow, pcol)), 0,
                    1e-15);
    }
}

TEST(engine, uniform_fast_path_agrees_with_site_loop) {
    std::mt19937_64 rng(109);
    std::size_t n = 9;
    for (bool echo : {false, true}) {
        EvolutionSpec spec{equal_couplings(n, 1.3), random_rates(rng, echo),
                           echo ? EvolutionMode::spin_echo : EvolutionMode::plain, 0.9};
        Engine fast(spec), slow(spec, false);
        const char *ops[] = {"+-++I0g1I", "0000+++++", "-IIIIIIII", "g0101+I-1", "+-+-+-+-+"};
        for (const char *op : ops) {
            OperatorString s = OperatorString::parse(op);
            EXPECT_NEAR(std::abs(fast.expect_string(s) - slow.expect_string(s)), 0, 1e-15) << op;
        }
    }
}

TEST(engine, pauli_expectations_match_oracle) {
    std::mt19937_64 rng(113);
    std::size_t n = 3;
    for (bool echo : {false, true}) {
        EvolutionSpec spec{random_couplings(rng, n), random_rates(rng, echo),
                           echo ? EvolutionMode::spin_echo : EvolutionMode::plain, 1.1};
        Engine e(spec);
        DensityMatrix rho = oracle_state(spec);
        for (const char *p : {"XII", "IYI", "ZZI", "XYZ", "YIY", "XXX", "IZY"}) {
            PauliString ps = PauliString::parse(p);
            EXPECT_NEAR(e.expect_pauli(ps), oracle_expect(rho, ps), 1e-9) << p;
        }
    }
}

TEST(engine, no_leak_probability_matches_qubit_trace) {
    std::mt19937_64 rng(127);
    for (std::size_t n = 1; n <= 3; ++n) {
        for (bool echo : {false, true}) {
            CouplingMatrix j = n == 1 ? CouplingMatrix::from_dense(1, {0.0}) : random_couplings(rng, n);
            EvolutionSpec spec{j, random_rates(rng, echo), echo ? EvolutionMode::spin_echo : EvolutionMode::plain,
                               1.7};
            EXPECT_NEAR(Engine(spec).no_leak_probability(), oracle_state(spec).qubit_manifold_trace(), 1e-10);
        }
    }
}

TEST(engine, free_functions_and_noiseless_limit) {
    EvolutionSpec spec = EvolutionSpec::plain(equal_couplings(3, 2.0), {}, 0.4);
    EXPECT_NEAR(no_leak_probability(spec), 1.0, 1e-15);
    // <X_0> for uncoupled-rate evolution: cos^2(2 J t / N) for two neighbours.
    double want = std::pow(std::cos(2 * 2.0 * 0.4 / 3), 2);
    EXPECT_NEAR(expect_pauli(PauliString::parse("XII"), spec), want, 1e-15);
    EXPECT_NEAR(std::abs(expect_string(OperatorString::parse("III"), spec) - 1.0), 0, 1e-15);
    EXPECT_NEAR(std::abs(density_matrix_element(parse_word("000"), parse_word("000"), spec) - 0.125), 0, 1e-15);
}

TEST(engine, validation) {
    EvolutionSpec bad = EvolutionSpec::spin_echo(equal_couplings(2, 1.0), ScatteringRates{0, 0.1, 0, 0, 0}, 1.0);
    EXPECT_THROW(Engine{bad}, ModelViolationError);
    EXPECT_THROW(Engine(EvolutionSpec::plain(equal_couplings(2, 1.0), {}, -1.0)), ValidationError);
    Engine e(EvolutionSpec::plain(equal_couplings(3, 1.0), {}, 1.0));
    EXPECT_THROW(e.expect_string(OperatorString::parse("II")), ValidationError);
    EXPECT_THROW(e.expect_pauli(PauliString::parse("XXXX")), ValidationError);
    EXPECT_THROW(e.density_matrix_element(parse_word("00"), parse_word("000")), ValidationError);
    EXPECT_EQ(e.density_matrix_element(parse_word("g00"), parse_word("000")), 0.0);
}

TEST(engine, concurrent_calls_agree_and_cache) {
    std::mt19937_64 rng(131);
    std::size_t n = 12;
    Engine e(EvolutionSpec::plain(random_couplings(rng, n), random_rates(rng, false), 0.8));
    std::vector<PauliString> ops;
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) ops.push_back(PauliString(n, {{a, Axis::x}, {b, Axis::y}}));
    }
    std::vector<double> serial(ops.size()), threaded(ops.size());
    for (std::size_t k = 0; k < ops.size(); ++k) serial[k] = e.expect_pauli(ops[k]);
    std::size_t cached = e.cache_size();
    EXPECT_GT(cached, 0u);
    Engine fresh(e.spec());
    parallel_for(ops.size(), 4, [&](std::size_t k) { threaded[k] = fresh.expect_pauli(ops[k]); });
    EXPECT_EQ(serial, threaded);
    EXPECT_EQ(fresh.cache_size(), cached);
}

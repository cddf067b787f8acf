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
// Shared oracles and fixtures for the unit tests. Everything that produces
// a reference number here is independent of the closed-form engine.

#pragma once

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <complex>
#include <functional>
#include <random>
#include <vector>

#include "scatterspin/couplings.hpp"
#include "scatterspin/engine.hpp"
#include "scatterspin/operators.hpp"
#include "scatterspin/oracle.hpp"
#include "scatterspin/rates.hpp"

namespace scatterspin::testing {

using cd = std::complex<double>;

/// Adaptive Gauss-Kronrod on [0, t] for a complex integrand.
inline cd quad(const std::function<cd(double)> &fn, double t) {
    using boost::math::quadrature::gauss_kronrod;
    double re = gauss_kronrod<double, 61>::integrate([&](double u) { return fn(u).real(); }, 0.0, t, 15, 1e-15);
    double im = gauss_kronrod<double, 61>::integrate([&](double u) { return fn(u).imag(); }, 0.0, t, 15, 1e-15);
    return {re, im};
}

inline ScatteringRates random_rates(std::mt19937_64 &rng, bool ca_rule, double lo = 0.05, double hi = 0.4) {
    std::uniform_real_distribution<double> u(lo, hi);
    ScatteringRates r;
    r.gamma_01 = u(rng);
    r.gamma_10 = ca_rule ? 0.0 : u(rng);
    r.gamma_0g = u(rng);
    r.gamma_1g = ca_rule ? 0.0 : u(rng);
    r.gamma_el = u(rng);
    return r;
}

inline CouplingMatrix random_couplings(std::mt19937_64 &rng, std::size_t n, double lo = 0.3, double hi = 2.0) {
    std::uniform_real_distribution<double> u(lo, hi);
    std::vector<double> dense(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = i + 1; k < n; ++k) dense[i * n + k] = dense[k * n + i] = u(rng);
    }
    return CouplingMatrix::from_dense(n, dense);
}

/// Every element of the engine's density matrix in the 3^n basis.
inline Eigen::MatrixXcd engine_matrix(const Engine &engine) {
    std::size_t n = engine.n(), dim = 1;
    for (std::size_t k = 0; k < n; ++k) dim *= 3;
    Eigen::MatrixXcd m(dim, dim);
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            m(r, c) = engine.density_matrix_element(index_word(r, n), index_word(c, n));
        }
    }
    return m;
}

/// Dense oracle for a spec, integrated finely enough for 1e-10 agreement.
inline DensityMatrix oracle_state(const EvolutionSpec &spec, double dt = 0) {
    DensityMatrix rho0 = DensityMatrix::plus_state(spec.n());
    IntegratorConfig ic;
    ic.dt = dt;
    if (spec.mode == EvolutionMode::spin_echo) {
        return spin_echo_sequence(rho0, spec.couplings, spec.rates, spec.t_arm(), ic);
    }
    ic.t_final = spec.t;
    return integrate(rho0, build_lindbladian(spec.couplings, spec.rates, HamiltonianVariant::ising), ic);
}

/// Single-site Pauli matrix on the qutrit (zero on |g>).
inline Eigen::Matrix3cd qutrit_pauli(Axis a) {
    Eigen::Matrix3cd m = Eigen::Matrix3cd::Zero();
    const cd i(0, 1);
    switch (a) {
        case Axis::x:
            m(0, 1) = m(1, 0) = 1;
            break;
        case Axis::y:
            m(0, 1) = -i;
            m(1, 0) = i;
            break;
        case Axis::z:
            m(0, 0) = 1;
            m(1, 1) = -1;
            break;
    }
    return m;
}

/// Full 3^n operator for a Pauli product (site 0 least significant).
inline Eigen::MatrixXcd qutrit_operator(const PauliString &p) {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
    for (std::size_t k = p.n; k-- > 0;) {
        Eigen::Matrix3cd site = Eigen::Matrix3cd::Identity();
        for (auto [s, a] : p.entries) {
            if (s == k) site = qutrit_pauli(a);
        }
        Eigen::MatrixXcd next(out.rows() * 3, out.cols() * 3);
        for (Eigen::Index r = 0; r < out.rows(); ++r) {
            for (Eigen::Index c = 0; c < out.cols(); ++c) next.block(r * 3, c * 3, 3, 3) = out(r, c) * site;
        }
        out = next;
    }
    return out;
}

inline double oracle_expect(const DensityMatrix &rho, const PauliString &p) {
    return (qutrit_operator(p) * rho.data).trace().real();
}

}  // namespace scatterspin::testing

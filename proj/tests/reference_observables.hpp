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

// Reference observables computed straight from oracle states, with no
// shortcut shared with the closed-form experiments.

#pragma once

#include <Eigen/Dense>
#include <bit>
#include <cmath>
#include <vector>

#include "scatterspin/experiments.hpp"
#include "test_support.hpp"

namespace scatterspin::testing {

// <GHZ|rho|GHZ> over the full qubit basis, one engine element per pair.
inline double naive_ghz_fidelity(const Engine &e) {
    std::size_t n = e.n();
    double phi = e.spec().couplings.mean() * e.spec().t / double(n);
    std::size_t dim = std::size_t{1} << n;
    auto word = [&](std::size_t z) {
        Word w(n);
        for (std::size_t k = 0; k < n; ++k) w[k] = (z >> k) & 1 ? Level::one : Level::zero;
        return w;
    };
    cplx total = 0;
    for (std::size_t r = 0; r < dim; ++r) {
        cplx ar = ghz_amplitude(n, std::popcount(r), phi);
        for (std::size_t c = 0; c < dim; ++c) {
            cplx ac = ghz_amplitude(n, std::popcount(c), phi);
            total += std::conj(ar) * e.density_matrix_element(word(r), word(c)) * ac;
        }
    }
    return total.real();
}

// Qubit statevector embedded in the 3^n qutrit basis.
inline Eigen::VectorXcd embed(const StateVector &psi) {
    std::size_t dim = 1;
    for (std::size_t k = 0; k < psi.n; ++k) dim *= 3;
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
    for (std::size_t z = 0; z < psi.amp.size(); ++z) {
        std::size_t x = 0, p = 1;
        for (std::size_t k = 0; k < psi.n; ++k, p *= 3) x += ((z >> k) & 1) * p;
        v(x) = psi.amp[z];
    }
    return v;
}

// Applies sum_i sigma^a_i / 2 to a qubit state.
inline std::vector<cplx> collective(const StateVector &psi, Axis a) {
    std::vector<cplx> out(psi.amp.size(), 0.0);
    const cplx i(0, 1);
    for (std::size_t z = 0; z < psi.amp.size(); ++z) {
        for (std::size_t k = 0; k < psi.n; ++k) {
            bool one = (z >> k) & 1;
            switch (a) {
                case Axis::z:
                    out[z] += (one ? -0.5 : 0.5) * psi.amp[z];
                    break;
                case Axis::x:
                    out[z ^ (std::size_t{1} << k)] += 0.5 * psi.amp[z];
                    break;
                case Axis::y:
                    out[z ^ (std::size_t{1} << k)] += (one ? -0.5 * i : 0.5 * i) * psi.amp[z];
                    break;
            }
        }
    }
    return out;
}

inline cplx dot(const std::vector<cplx> &a, const std::vector<cplx> &b) {
    cplx s = 0;
    for (std::size_t k = 0; k < a.size(); ++k) s += std::conj(a[k]) * b[k];
    return s;
}

inline double xi2_from_moments(double n, double sx, double sy, double sz, double zz, double yy, double zy) {
    double vzz = zz - sz * sz, vyy = yy - sy * sy, vzy = zy - sz * sy;
    double lmin = (vzz + vyy) / 2 - std::hypot((vzz - vyy) / 2, vzy);
    return n * lmin / (sx * sx);
}

inline double statevector_xi2(const StateVector &psi) {
    auto x = collective(psi, Axis::x), y = collective(psi, Axis::y), z = collective(psi, Axis::z);
    std::vector<cplx> p = psi.amp;
    return xi2_from_moments(double(psi.n), dot(p, x).real(), dot(p, y).real(), dot(p, z).real(),
                            dot(z, z).real(), dot(y, y).real(), dot(z, y).real());
}

inline double density_xi2(const DensityMatrix &rho) {
    std::size_t n = rho.n;
    Eigen::MatrixXcd s[3];
    for (int a = 0; a < 3; ++a) {
        s[a] = Eigen::MatrixXcd::Zero(rho.data.rows(), rho.data.cols());
        for (std::size_t k = 0; k < n; ++k) s[a] += 0.5 * qutrit_operator(PauliString(n, {{k, Axis(a)}}));
    }
    auto ev = [&](const Eigen::MatrixXcd &op) { return (op * rho.data).trace().real(); };
    const auto &sx = s[0], &sy = s[1], &sz = s[2];
    return xi2_from_moments(double(n), ev(sx), ev(sy), ev(sz), ev(sz * sz), ev(sy * sy),
                            ev((sz * sy + sy * sz) / 2.0));
}

// Cost sum_{i<j} (J_ij / J) <z_i z_j> after exp(-i beta sum sx).
inline double statevector_qaoa_cost(const CouplingMatrix &j, double gamma, double beta) {
    std::size_t n = j.n();
    StateVector psi = statevector_evolve(j, gamma * double(n) / j.mean());
    psi.rotate_x(beta);
    double cost = 0;
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
            cost += j(a, b) / j.mean() * psi.expect_pauli(PauliString(n, {{a, Axis::z}, {b, Axis::z}}));
        }
    }
    return cost;
}

}  // namespace scatterspin::testing

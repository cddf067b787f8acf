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
#include <vector>

namespace scatterspin {

/// Symmetric Ising couplings J_ij (rad/s) with zero diagonal. The Ising
/// Hamiltonian divides these by N; nothing here rescales them.
class CouplingMatrix {
   public:
    CouplingMatrix() = default;

    /// Builds from a dense row-major n*n matrix. Throws ValidationError if the
    /// matrix is not symmetric to 1e-12 (relative to its largest entry),
    /// has a nonzero diagonal, or holds a non-finite value.
    static CouplingMatrix from_dense(std::size_t n, std::vector<double> dense);

    std::size_t n() const { return n_; }
    double operator()(std::size_t i, std::size_t k) const { return j_[i * n_ + k]; }
    const std::vector<double> &dense() const { return j_; }

    /// Mean and population variance over the i<j pairs.
    double mean() const { return mean_; }
    double variance() const { return variance_; }

    /// True when every off-diagonal entry is bit-identical.
    bool is_uniform() const { return uniform_; }

    /// Same matrix multiplied by `factor`.
    CouplingMatrix scaled(double factor) const;

   private:
    void finalize();

    std::size_t n_ = 0;
    std::vector<double> j_;
    double mean_ = 0;
    double variance_ = 0;
    bool uniform_ = false;
};

CouplingMatrix equal_couplings(std::size_t n, double j);

/// Motional mode data for the optical-dipole-force coupling.
struct ModeData {
    std::size_t n = 0;
    std::vector<double> omegas;                  // mode frequencies, rad/s
    std::vector<std::vector<double>> etas;       // [ion][mode] Lamb-Dicke parameters
    std::vector<double> omegas_rabi;             // per-ion drive, s^-1
    double mu = 0;                               // beatnote, rad/s

    void validate() const;
};

/// J_ij = N Omega_i Omega_j sum_m eta_im eta_jm omega_m / (mu^2 - omega_m^2).
/// Throws ResonanceError when mu coincides with a mode frequency.
CouplingMatrix couplings_from_modes(const ModeData &modes);

}  // namespace scatterspin

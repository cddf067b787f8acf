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

// Brute-force reference implementations. Nothing here calls into the
// closed-form engine.

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "scatterspin/couplings.hpp"
#include "scatterspin/operators.hpp"
#include "scatterspin/rates.hpp"

namespace scatterspin {

inline constexpr std::size_t ORACLE_MAX_IONS = 4;
inline constexpr std::size_t STATEVECTOR_MAX_IONS = 14;

/// Dense density matrix over the 3^n product basis (see word_index).
struct DensityMatrix {
    std::size_t n = 0;
    Eigen::MatrixXcd data;

    /// |+>^n with |+> = (|0> + |1>)/sqrt(2).
    static DensityMatrix plus_state(std::size_t n);

    std::complex<double> element(const Word &row, const Word &col) const {
        return data(static_cast<Eigen::Index>(word_index(row)),
                    static_cast<Eigen::Index>(word_index(col)));
    }
    std::complex<double> trace() const { return data.trace(); }

    /// Sum of the populations with no ion in |g>.
    double qubit_manifold_trace() const;

    double hermiticity_error() const { return (data - data.adjoint()).cwiseAbs().maxCoeff(); }
};

enum class HamiltonianVariant {
    ising,            // (1/N) sum_{i<j} J_ij sz_i sz_j
    light_shift_arm,  // (1/N) sum_{i<j} J_ij |0_i 0_j><0_i 0_j|
    none,             // dissipator only
};

/// Generator of the master equation, stored as a per-entry multiplier
/// (Hamiltonian, anti-Hermitian decay and dephasing) plus a list of
/// population/coherence transfers for the inelastic jumps.
class Lindbladian {
   public:
    Lindbladian(const CouplingMatrix &couplings, const ScatteringRates &rates,
                HamiltonianVariant variant);

    std::size_t n() const { return n_; }
    std::size_t dim() const { return dim_; }

    /// out = d(rho)/dt.
    void apply(const Eigen::MatrixXcd &rho, Eigen::MatrixXcd &out) const;
    Eigen::MatrixXcd apply(const Eigen::MatrixXcd &rho) const;

    /// Rough largest rate in the generator, for picking a step.
    double scale() const { return scale_; }

   private:
    struct Transfer {
        Eigen::Index src, dst;
        double rate;
    };

    std::size_t n_, dim_;
    Eigen::MatrixXcd diag_;
    std::vector<Transfer> transfers_;
    double scale_ = 0;
};

Lindbladian build_lindbladian(const CouplingMatrix &couplings, const ScatteringRates &rates,
                              HamiltonianVariant variant);

enum class IntegratorMethod {
    rk4,           // classical Runge-Kutta
    simpson_like,  // Kutta's 3/8-rule Runge-Kutta
};

struct IntegratorConfig {
    double t_final = 0;
    double dt = 0;  // 0 picks default_dt
    IntegratorMethod method = IntegratorMethod::rk4;
    bool check_convergence = false;
    double convergence_tol = 1e-9;
};

/// min(1/(50 * scale), t_final / 2000).
double default_dt(const Lindbladian &gen, double t_final);

/// Fixed-step integration. The result is Hermitized. Throws StepSizeError if
/// the trace drifts by more than 1e-8, or if check_convergence is set and
/// halving the step moves any entry by more than convergence_tol (the finer
/// result is returned when the gate passes).
DensityMatrix integrate(const DensityMatrix &rho0, const Lindbladian &gen,
                        const IntegratorConfig &config);

/// rho -> S rho S with S swapping |0> and |1> on every ion and fixing |g>.
DensityMatrix apply_echo_pulse(const DensityMatrix &rho);

/// Arm under the light-shift Hamiltonian, pulse, arm, pulse.
DensityMatrix spin_echo_sequence(const DensityMatrix &rho0, const CouplingMatrix &couplings,
                                 const ScatteringRates &rates, double t_arm,
                                 IntegratorConfig config = {});

struct OracleRecord {
    std::string row, col;
    double re, im;
};

/// Flat (row_word, col_word, re, im) listing of every entry.
std::vector<OracleRecord> export_records(const DensityMatrix &rho);

/// Pure qubit register, amplitude index bit k set means ion k in |1>.
struct StateVector {
    std::size_t n = 0;
    std::vector<std::complex<double>> amp;

    std::complex<double> overlap(const StateVector &other) const;  // <this|other>
    double expect_pauli(const PauliString &p) const;

    /// Applies exp(-i beta sx) to every ion.
    void rotate_x(double beta);
};

/// exp(-i t H_Ising) |+>^n.
StateVector statevector_evolve(const CouplingMatrix &couplings, double t);

}  // namespace scatterspin

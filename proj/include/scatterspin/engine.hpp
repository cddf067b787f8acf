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

#include <cstdint>
#include <memory>
#include <shared_mutex>
#include <unordered_map>

#include "scatterspin/couplings.hpp"
#include "scatterspin/kernels.hpp"
#include "scatterspin/operators.hpp"
#include "scatterspin/rates.hpp"

namespace scatterspin {

enum class EvolutionMode { plain, spin_echo };

/// What is being evolved from |+>^N, and for how long.
///
/// `t` is always the effective Ising time. In spin-echo mode each arm lasts
/// t_arm = 2t under the light-shift Hamiltonian, so the sequence takes 4t.
struct EvolutionSpec {
    CouplingMatrix couplings;
    ScatteringRates rates;
    EvolutionMode mode = EvolutionMode::plain;
    double t = 0;

    static EvolutionSpec plain(CouplingMatrix j, ScatteringRates r, double t) {
        return EvolutionSpec{std::move(j), r, EvolutionMode::plain, t};
    }
    static EvolutionSpec spin_echo(CouplingMatrix j, ScatteringRates r, double t) {
        return EvolutionSpec{std::move(j), r, EvolutionMode::spin_echo, t};
    }
    static EvolutionSpec spin_echo_arm(CouplingMatrix j, ScatteringRates r, double t_arm) {
        return spin_echo(std::move(j), r, t_arm / 2);
    }

    double t_arm() const { return mode == EvolutionMode::spin_echo ? 2 * t : t; }
    double t_experiment() const { return mode == EvolutionMode::spin_echo ? 4 * t : t; }
    std::size_t n() const { return couplings.n(); }

    void validate() const;
};

/// Spectator-ion factors, whichever kernel family produced them.
struct SiteFactors {
    cplx p0, p1, pg, total;
};

/// Closed-form expectation values for one EvolutionSpec. Calls are const
/// and may run concurrently; kernel sets are memoized per distinct j_eff.
class Engine {
   public:
    /// With `uniform_fast_path` off, uniform couplings go through the
    /// general per-site loop (used to cross-check the shortcut).
    explicit Engine(EvolutionSpec spec, bool uniform_fast_path = true);

    const EvolutionSpec &spec() const { return spec_; }
    std::size_t n() const { return spec_.n(); }

    cplx expect_string(const OperatorString &op) const;

    /// Real expectation of a Pauli product. Throws ConsistencyError when the
    /// imaginary residue exceeds 1e-10.
    double expect_pauli(const PauliString &p) const;

    /// <row| rho |col>.
    cplx density_matrix_element(const Word &row, const Word &col) const;

    double no_leak_probability() const;

    /// Factors for one spectator ion at a given signed coupling sum.
    SiteFactors site_factors(double j_eff) const;

    /// Decay and 2^-m normalization for m raise/lower sites.
    double m_prefactor(std::size_t m) const;

    std::size_t cache_size() const;

   private:
    SiteFactors compute_factors(double j_eff) const;

    EvolutionSpec spec_;
    bool fast_path_ = true;
    double m_decay_ = 0;

    mutable std::shared_mutex mutex_;
    mutable std::unordered_map<uint64_t, SiteFactors> cache_;
};

// Free-function forms for one-off calls.
cplx expect_string(const OperatorString &op, const EvolutionSpec &spec);
double expect_pauli(const PauliString &p, const EvolutionSpec &spec);
cplx density_matrix_element(const Word &row, const Word &col, const EvolutionSpec &spec);
double no_leak_probability(const EvolutionSpec &spec);

/// Imaginary residues above this are treated as bugs.
inline constexpr double IMAG_RESIDUE_LIMIT = 1e-10;

}  // namespace scatterspin

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

#include <bit>
#include <cmath>
#include <mutex>
#include <string>

#include "scatterspin/error.hpp"

namespace scatterspin {

namespace {

constexpr std::size_t CACHE_LIMIT = 1 << 20;

cplx ipow(cplx base, std::size_t e) {
    cplx result = 1.0;
    while (e) {
        if (e & 1) result *= base;
        base *= base;
        e >>= 1;
    }
    return result;
}

}  // namespace

void EvolutionSpec::validate() const {
    if (couplings.n() < 1) throw ValidationError("evolution needs at least one ion");
    rates.validate();
    if (!std::isfinite(t) || t < 0) throw ValidationError("evolution time must be finite and >= 0");
    if (mode == EvolutionMode::spin_echo && !rates.satisfies_ca_selection_rule()) {
        throw ModelViolationError(
            "spin-echo mode requires gamma_10 = gamma_1g = 0 (no scattering out of |1>)");
    }
}

Engine::Engine(EvolutionSpec spec, bool uniform_fast_path)
    : spec_(std::move(spec)), fast_path_(uniform_fast_path) {
    spec_.validate();
    DerivedRates d = derive_rates(spec_.rates);
    if (spec_.mode == EvolutionMode::plain) {
        m_decay_ = d.Gamma * spec_.t;
    } else {
        m_decay_ = (d.Gamma0 + spec_.rates.gamma_el) * spec_.t_arm();
    }
}

double Engine::m_prefactor(std::size_t m) const {
    double md = static_cast<double>(m);
    return std::exp(-md * (m_decay_ + std::log(2.0)));
}

SiteFactors Engine::compute_factors(double j_eff) const {
    std::size_t n = spec_.n();
    if (spec_.mode == EvolutionMode::plain) {
        KernelSet k = kernel_set(KernelArgs::make(j_eff, n, spec_.t, spec_.rates));
        return {k.p0(), k.p1(), k.pg(), k.total()};
    }
    SpinEchoKernelSet k = spin_echo_kernel_set(j_eff, n, spec_.t_arm(), spec_.rates);
    return {k.p0(), k.p1(), k.pg(), k.total()};
}

SiteFactors Engine::site_factors(double j_eff) const {
    if (j_eff == 0) j_eff = 0;  // fold -0.0 onto +0.0
    uint64_t key = std::bit_cast<uint64_t>(j_eff);
    {
        std::shared_lock lock(mutex_);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
    }
    SiteFactors f = compute_factors(j_eff);
    std::unique_lock lock(mutex_);
    if (cache_.size() >= CACHE_LIMIT) cache_.clear();
    cache_.emplace(key, f);
    return f;
}

std::size_t Engine::cache_size() const {
    std::shared_lock lock(mutex_);
    return cache_.size();
}

cplx Engine::expect_string(const OperatorString &op) const {
    std::size_t n = spec_.n();
    if (op.n() != n) {
        throw ValidationError("operator string has " + std::to_string(op.n()) +
                              " sites, couplings have " + std::to_string(n));
    }
    std::vector<std::size_t> m_sites;
    std::vector<double> m_sign;
    for (std::size_t k = 0; k < n; ++k) {
        Symbol s = op.symbols[k];
        if (s == Symbol::raise || s == Symbol::lower) {
            m_sites.push_back(k);
            m_sign.push_back(s == Symbol::raise ? 1.0 : -1.0);
        }
    }
    cplx result = m_prefactor(m_sites.size());

    auto pick = [](const SiteFactors &f, Symbol s) {
        switch (s) {
            case Symbol::p0:
                return f.p0;
            case Symbol::p1:
                return f.p1;
            case Symbol::pg:
                return f.pg;
            default:
                return f.total;
        }
    };

    if (fast_path_ && spec_.couplings.is_uniform()) {
        // Every spectator sees the same signed sum; count symbols instead.
        double nu_sum = 0;
        for (double v : m_sign) nu_sum += v;
        SiteFactors f = site_factors(spec_.couplings.mean() * nu_sum);
        std::size_t counts[4] = {0, 0, 0, 0};
        for (Symbol s : op.symbols) {
            switch (s) {
                case Symbol::identity:
                    ++counts[0];
                    break;
                case Symbol::p0:
                    ++counts[1];
                    break;
                case Symbol::p1:
                    ++counts[2];
                    break;
                case Symbol::pg:
                    ++counts[3];
                    break;
                default:
                    break;
            }
        }
        return result * ipow(f.total, counts[0]) * ipow(f.p0, counts[1]) * ipow(f.p1, counts[2]) *
               ipow(f.pg, counts[3]);
    }

    const CouplingMatrix &j = spec_.couplings;
    for (std::size_t a = 0; a < n; ++a) {
        Symbol s = op.symbols[a];
        if (s == Symbol::raise || s == Symbol::lower) continue;
        double j_eff = 0;
        for (std::size_t q = 0; q < m_sites.size(); ++q) j_eff += m_sign[q] * j(a, m_sites[q]);
        result *= pick(site_factors(j_eff), s);
        if (result == 0.0) break;
    }
    return result;
}

double Engine::expect_pauli(const PauliString &p) const {
    std::size_t n = spec_.n();
    if (p.n != n) {
        throw ValidationError("Pauli string has " + std::to_string(p.n) + " sites, couplings have " +
                              std::to_string(n));
    }
    std::size_t k = p.entries.size();
    if (k > 30) throw ValidationError("Pauli string too long to expand");
    OperatorString op = OperatorString::identity(n);
    cplx total = 0.0;
    const cplx minus_i(0, -1), plus_i(0, 1);
    for (uint64_t mask = 0; mask < (uint64_t{1} << k); ++mask) {
        cplx coeff = 1.0;
        for (std::size_t q = 0; q < k; ++q) {
            auto [site, axis] = p.entries[q];
            bool second = (mask >> q) & 1;
            switch (axis) {
                case Axis::z:
                    op.symbols[site] = second ? Symbol::p1 : Symbol::p0;
                    if (second) coeff = -coeff;
                    break;
                case Axis::x:
                    op.symbols[site] = second ? Symbol::lower : Symbol::raise;
                    break;
                case Axis::y:
                    op.symbols[site] = second ? Symbol::lower : Symbol::raise;
                    coeff *= second ? plus_i : minus_i;
                    break;
            }
        }
        total += coeff * expect_string(op);
    }
    if (std::abs(total.imag()) > IMAG_RESIDUE_LIMIT) {
        throw ConsistencyError("Pauli expectation has imaginary residue " +
                               std::to_string(total.imag()));
    }
    return total.real();
}

cplx Engine::density_matrix_element(const Word &row, const Word &col) const {
    std::size_t n = spec_.n();
    if (row.size() != n || col.size() != n) {
        throw ValidationError("basis words must have length " + std::to_string(n));
    }
    OperatorString op = OperatorString::identity(n);
    for (std::size_t k = 0; k < n; ++k) {
        Level c = col[k], r = row[k];
        if ((c == Level::g) != (r == Level::g)) return 0.0;
        if (c == Level::g) {
            op.symbols[k] = Symbol::pg;
        } else if (c == r) {
            op.symbols[k] = c == Level::zero ? Symbol::p0 : Symbol::p1;
        } else {
            op.symbols[k] = c == Level::zero ? Symbol::raise : Symbol::lower;
        }
    }
    return expect_string(op);
}

double Engine::no_leak_probability() const {
    SiteFactors f = site_factors(0.0);
    cplx single = f.p0 + f.p1;
    return std::pow(single.real(), static_cast<double>(spec_.n()));
}

cplx expect_string(const OperatorString &op, const EvolutionSpec &spec) {
    return Engine(spec).expect_string(op);
}

double expect_pauli(const PauliString &p, const EvolutionSpec &spec) {
    return Engine(spec).expect_pauli(p);
}

cplx density_matrix_element(const Word &row, const Word &col, const EvolutionSpec &spec) {
    return Engine(spec).density_matrix_element(row, col);
}

double no_leak_probability(const EvolutionSpec &spec) { return Engine(spec).no_leak_probability(); }

}  // namespace scatterspin

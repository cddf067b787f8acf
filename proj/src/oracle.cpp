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

#include "scatterspin/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "scatterspin/error.hpp"

namespace scatterspin {

using cd = std::complex<double>;
using Eigen::Index;

namespace {

void check_oracle_size(std::size_t n) {
    if (n < 1 || n > ORACLE_MAX_IONS) {
        throw SizeError("dense oracle supports 1 <= n <= " + std::to_string(ORACLE_MAX_IONS) +
                        ", got " + std::to_string(n));
    }
}

std::size_t pow3(std::size_t n) {
    std::size_t d = 1;
    for (std::size_t k = 0; k < n; ++k) d *= 3;
    return d;
}

double sz_value(Level l) {
    switch (l) {
        case Level::zero:
            return 1.0;
        case Level::one:
            return -1.0;
        default:
            return 0.0;
    }
}

}  // namespace

DensityMatrix DensityMatrix::plus_state(std::size_t n) {
    check_oracle_size(n);
    std::size_t dim = pow3(n);
    DensityMatrix rho;
    rho.n = n;
    rho.data = Eigen::MatrixXcd::Zero(static_cast<Index>(dim), static_cast<Index>(dim));
    std::vector<Index> qubit_words;
    for (std::size_t x = 0; x < dim; ++x) {
        Word w = index_word(x, n);
        if (std::none_of(w.begin(), w.end(), [](Level l) { return l == Level::g; })) {
            qubit_words.push_back(static_cast<Index>(x));
        }
    }
    double v = std::ldexp(1.0, -static_cast<int>(n));
    for (Index x : qubit_words) {
        for (Index y : qubit_words) rho.data(x, y) = v;
    }
    return rho;
}

double DensityMatrix::qubit_manifold_trace() const {
    double total = 0;
    for (Index x = 0; x < data.rows(); ++x) {
        Word w = index_word(static_cast<std::size_t>(x), n);
        if (std::none_of(w.begin(), w.end(), [](Level l) { return l == Level::g; })) {
            total += data(x, x).real();
        }
    }
    return total;
}

Lindbladian::Lindbladian(const CouplingMatrix &couplings, const ScatteringRates &rates,
                         HamiltonianVariant variant)
    : n_(couplings.n()), dim_(0) {
    check_oracle_size(n_);
    rates.validate();
    dim_ = pow3(n_);
    double inv_n = 1.0 / static_cast<double>(n_);

    std::vector<Word> words(dim_);
    for (std::size_t x = 0; x < dim_; ++x) words[x] = index_word(x, n_);

    // Diagonal energies and anti-Hermitian decay -i sum J^dag J.
    std::vector<double> energy(dim_, 0.0), decay(dim_, 0.0);
    double kappa[3] = {
        (rates.gamma_01 + rates.gamma_0g) / 2 + rates.gamma_el / 8,
        (rates.gamma_10 + rates.gamma_1g) / 2 + rates.gamma_el / 8,
        0.0,
    };
    double max_energy = 0;
    for (std::size_t x = 0; x < dim_; ++x) {
        const Word &w = words[x];
        double e = 0;
        for (std::size_t i = 0; i < n_; ++i) {
            decay[x] += kappa[static_cast<int>(w[i])];
            for (std::size_t k = i + 1; k < n_; ++k) {
                double jik = couplings(i, k) * inv_n;
                if (variant == HamiltonianVariant::ising) {
                    e += jik * sz_value(w[i]) * sz_value(w[k]);
                } else if (variant == HamiltonianVariant::light_shift_arm) {
                    if (w[i] == Level::zero && w[k] == Level::zero) e += jik;
                }
            }
        }
        energy[x] = e;
        max_energy = std::max(max_energy, std::abs(e));
    }

    diag_.resize(static_cast<Index>(dim_), static_cast<Index>(dim_));
    for (std::size_t y = 0; y < dim_; ++y) {
        for (std::size_t x = 0; x < dim_; ++x) {
            double dephase = 0;
            for (std::size_t k = 0; k < n_; ++k) {
                dephase += sz_value(words[x][k]) * sz_value(words[y][k]);
            }
            diag_(static_cast<Index>(x), static_cast<Index>(y)) =
                cd(-(decay[x] + decay[y]) + rates.gamma_el / 4 * dephase,
                   -(energy[x] - energy[y]));
        }
    }

    // Dissipator D[L]rho = 2 L rho L^dag - {L^dag L, rho}; the inelastic jump
    // sqrt(gamma/2)|b><a| transfers gamma |b><a| rho |a><b|.
    struct Channel {
        Level from, to;
        double rate;
    };
    const Channel channels[] = {
        {Level::zero, Level::one, rates.gamma_01},
        {Level::one, Level::zero, rates.gamma_10},
        {Level::zero, Level::g, rates.gamma_0g},
        {Level::one, Level::g, rates.gamma_1g},
    };
    std::vector<std::size_t> place(n_);
    for (std::size_t k = 0, p = 1; k < n_; ++k, p *= 3) place[k] = p;
    for (const Channel &c : channels) {
        if (c.rate == 0) continue;
        for (std::size_t k = 0; k < n_; ++k) {
            std::size_t shift = place[k] * (static_cast<std::size_t>(c.to) -
                                            static_cast<std::size_t>(c.from) + 3);
            for (std::size_t x = 0; x < dim_; ++x) {
                if (words[x][k] != c.from) continue;
                std::size_t xd = x + shift - 3 * place[k];
                for (std::size_t y = 0; y < dim_; ++y) {
                    if (words[y][k] != c.from) continue;
                    std::size_t yd = y + shift - 3 * place[k];
                    transfers_.push_back({static_cast<Index>(x + dim_ * y),
                                          static_cast<Index>(xd + dim_ * yd), c.rate});
                }
            }
        }
    }

    double rate_sum = rates.gamma_01 + rates.gamma_10 + rates.gamma_0g + rates.gamma_1g +
                      rates.gamma_el;
    scale_ = 2 * max_energy + 2 * static_cast<double>(n_) * rate_sum;
}

void Lindbladian::apply(const Eigen::MatrixXcd &rho, Eigen::MatrixXcd &out) const {
    out = diag_.cwiseProduct(rho);
    const cd *src = rho.data();
    cd *dst = out.data();
    for (const Transfer &t : transfers_) dst[t.dst] += t.rate * src[t.src];
}

Eigen::MatrixXcd Lindbladian::apply(const Eigen::MatrixXcd &rho) const {
    Eigen::MatrixXcd out;
    apply(rho, out);
    return out;
}

Lindbladian build_lindbladian(const CouplingMatrix &couplings, const ScatteringRates &rates,
                              HamiltonianVariant variant) {
    return Lindbladian(couplings, rates, variant);
}

double default_dt(const Lindbladian &gen, double t_final) {
    double dt = t_final / 2000;
    if (gen.scale() > 0) dt = std::min(dt, 1.0 / (50 * gen.scale()));
    return dt;
}

namespace {

Eigen::MatrixXcd run_fixed_step(const Eigen::MatrixXcd &rho0, const Lindbladian &gen,
                                double t_final, double dt, IntegratorMethod method) {
    Eigen::MatrixXcd rho = rho0;
    if (t_final == 0) return rho;
    auto steps = static_cast<long long>(std::ceil(t_final / dt - 1e-9));
    if (steps < 1) steps = 1;
    double h = t_final / static_cast<double>(steps);
    Eigen::MatrixXcd k1, k2, k3, k4, tmp;
    for (long long s = 0; s < steps; ++s) {
        gen.apply(rho, k1);
        if (method == IntegratorMethod::rk4) {
            tmp = rho + (h / 2) * k1;
            gen.apply(tmp, k2);
            tmp = rho + (h / 2) * k2;
            gen.apply(tmp, k3);
            tmp = rho + h * k3;
            gen.apply(tmp, k4);
            rho += (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4);
        } else {
            tmp = rho + (h / 3) * k1;
            gen.apply(tmp, k2);
            tmp = rho + h * (k2 - k1 / 3);
            gen.apply(tmp, k3);
            tmp = rho + h * (k1 - k2 + k3);
            gen.apply(tmp, k4);
            rho += (h / 8) * (k1 + 3 * k2 + 3 * k3 + k4);
        }
    }
    return rho;
}

}  // namespace

DensityMatrix integrate(const DensityMatrix &rho0, const Lindbladian &gen,
                        const IntegratorConfig &config) {
    if (rho0.n != gen.n()) throw ValidationError("density matrix and generator sizes differ");
    if (!(config.t_final >= 0)) throw ValidationError("t_final must be >= 0");
    if (config.dt < 0) throw ValidationError("dt must be > 0");
    double dt = config.dt > 0 ? config.dt : default_dt(gen, config.t_final);
    double tr0 = rho0.trace().real();

    DensityMatrix out;
    out.n = rho0.n;
    if (config.t_final == 0) {
        out.data = rho0.data;
        return out;
    }
    out.data = run_fixed_step(rho0.data, gen, config.t_final, dt, config.method);
    if (config.check_convergence) {
        Eigen::MatrixXcd fine = run_fixed_step(rho0.data, gen, config.t_final, dt / 2, config.method);
        double change = (fine - out.data).cwiseAbs().maxCoeff();
        if (change > config.convergence_tol) {
            throw StepSizeError("step halving moved the state by " + std::to_string(change),
                                dt / 4);
        }
        out.data = std::move(fine);
    }
    double drift = std::abs(out.data.trace().real() - tr0);
    if (drift > 1e-8) {
        throw StepSizeError("trace drifted by " + std::to_string(drift), dt / 2);
    }
    Eigen::MatrixXcd herm = (out.data + out.data.adjoint()) / 2.0;
    out.data = std::move(herm);
    return out;
}

DensityMatrix apply_echo_pulse(const DensityMatrix &rho) {
    std::size_t dim = static_cast<std::size_t>(rho.data.rows());
    std::vector<Index> perm(dim);
    for (std::size_t x = 0; x < dim; ++x) {
        Word w = index_word(x, rho.n);
        for (Level &l : w) {
            if (l == Level::zero) {
                l = Level::one;
            } else if (l == Level::one) {
                l = Level::zero;
            }
        }
        perm[x] = static_cast<Index>(word_index(w));
    }
    DensityMatrix out;
    out.n = rho.n;
    out.data.resize(rho.data.rows(), rho.data.cols());
    for (std::size_t y = 0; y < dim; ++y) {
        for (std::size_t x = 0; x < dim; ++x) {
            out.data(static_cast<Index>(x), static_cast<Index>(y)) = rho.data(perm[x], perm[y]);
        }
    }
    return out;
}

DensityMatrix spin_echo_sequence(const DensityMatrix &rho0, const CouplingMatrix &couplings,
                                 const ScatteringRates &rates, double t_arm,
                                 IntegratorConfig config) {
    Lindbladian gen(couplings, rates, HamiltonianVariant::light_shift_arm);
    config.t_final = t_arm;
    DensityMatrix rho = integrate(rho0, gen, config);
    rho = apply_echo_pulse(rho);
    rho = integrate(rho, gen, config);
    return apply_echo_pulse(rho);
}

std::vector<OracleRecord> export_records(const DensityMatrix &rho) {
    std::vector<OracleRecord> out;
    std::size_t dim = static_cast<std::size_t>(rho.data.rows());
    out.reserve(dim * dim);
    for (std::size_t x = 0; x < dim; ++x) {
        std::string row = word_to_string(index_word(x, rho.n));
        for (std::size_t y = 0; y < dim; ++y) {
            cd v = rho.data(static_cast<Index>(x), static_cast<Index>(y));
            out.push_back({row, word_to_string(index_word(y, rho.n)), v.real(), v.imag()});
        }
    }
    return out;
}

StateVector statevector_evolve(const CouplingMatrix &couplings, double t) {
    std::size_t n = couplings.n();
    if (n < 1 || n > STATEVECTOR_MAX_IONS) {
        throw SizeError("state-vector oracle supports 1 <= n <= " +
                        std::to_string(STATEVECTOR_MAX_IONS));
    }
    StateVector psi;
    psi.n = n;
    std::size_t dim = std::size_t{1} << n;
    psi.amp.resize(dim);
    double norm = std::pow(2.0, -static_cast<double>(n) / 2);
    double scale = t / static_cast<double>(n);
    for (std::size_t z = 0; z < dim; ++z) {
        double e = 0;
        for (std::size_t i = 0; i < n; ++i) {
            double si = (z >> i) & 1 ? -1.0 : 1.0;
            for (std::size_t k = i + 1; k < n; ++k) {
                double sk = (z >> k) & 1 ? -1.0 : 1.0;
                e += couplings(i, k) * si * sk;
            }
        }
        psi.amp[z] = norm * std::exp(cd(0, -scale * e));
    }
    return psi;
}

cd StateVector::overlap(const StateVector &other) const {
    if (other.n != n) throw ValidationError("state sizes differ");
    cd total = 0;
    for (std::size_t z = 0; z < amp.size(); ++z) total += std::conj(amp[z]) * other.amp[z];
    return total;
}

double StateVector::expect_pauli(const PauliString &p) const {
    if (p.n != n) throw ValidationError("Pauli string size differs from state");
    std::size_t flip = 0;
    for (auto [site, axis] : p.entries) {
        if (axis != Axis::z) flip |= std::size_t{1} << site;
    }
    cd total = 0;
    for (std::size_t z = 0; z < amp.size(); ++z) {
        // <z ^ flip| P |z> picks up a phase per site.
        cd phase = 1.0;
        for (auto [site, axis] : p.entries) {
            bool one = (z >> site) & 1;
            switch (axis) {
                case Axis::x:
                    break;
                case Axis::y:
                    phase *= one ? cd(0, -1) : cd(0, 1);
                    break;
                case Axis::z:
                    if (one) phase = -phase;
                    break;
            }
        }
        total += std::conj(amp[z ^ flip]) * phase * amp[z];
    }
    return total.real();
}

void StateVector::rotate_x(double beta) {
    double c = std::cos(beta), s = std::sin(beta);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t bit = std::size_t{1} << k;
        for (std::size_t z = 0; z < amp.size(); ++z) {
            if (z & bit) continue;
            cd a0 = amp[z], a1 = amp[z | bit];
            amp[z] = c * a0 + cd(0, -s) * a1;
            amp[z | bit] = cd(0, -s) * a0 + c * a1;
        }
    }
}

}  // namespace scatterspin

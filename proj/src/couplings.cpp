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

#include "scatterspin/couplings.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "scatterspin/error.hpp"

namespace scatterspin {

CouplingMatrix CouplingMatrix::from_dense(std::size_t n, std::vector<double> dense) {
    if (n < 1) throw ValidationError("coupling matrix needs n >= 1");
    if (dense.size() != n * n) {
        throw ValidationError("coupling matrix has " + std::to_string(dense.size()) +
                              " entries, expected " + std::to_string(n * n));
    }
    double scale = 0;
    for (std::size_t k = 0; k < dense.size(); ++k) {
        if (!std::isfinite(dense[k])) {
            throw ValidationError("coupling entry (" + std::to_string(k / n) + "," +
                                  std::to_string(k % n) + ") is not finite");
        }
        scale = std::max(scale, std::abs(dense[k]));
    }
    double tol = 1e-12 * std::max(scale, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(dense[i * n + i]) > tol) {
            throw ValidationError("coupling diagonal (" + std::to_string(i) + ") must be zero");
        }
        dense[i * n + i] = 0;
        for (std::size_t k = i + 1; k < n; ++k) {
            if (std::abs(dense[i * n + k] - dense[k * n + i]) > tol) {
                throw ValidationError("coupling matrix asymmetric at (" + std::to_string(i) +
                                      "," + std::to_string(k) + ")");
            }
            dense[k * n + i] = dense[i * n + k];
        }
    }
    CouplingMatrix m;
    m.n_ = n;
    m.j_ = std::move(dense);
    m.finalize();
    return m;
}

void CouplingMatrix::finalize() {
    double sum = 0;
    std::size_t pairs = 0;
    uniform_ = n_ >= 2;
    double first = n_ >= 2 ? j_[1] : 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t k = i + 1; k < n_; ++k) {
            double v = j_[i * n_ + k];
            sum += v;
            ++pairs;
            if (v != first) uniform_ = false;
        }
    }
    mean_ = pairs ? sum / static_cast<double>(pairs) : 0.0;
    double var = 0;
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t k = i + 1; k < n_; ++k) {
            double d = j_[i * n_ + k] - mean_;
            var += d * d;
        }
    }
    variance_ = uniform_ || !pairs ? 0.0 : var / static_cast<double>(pairs);
    if (uniform_) mean_ = first;
}

CouplingMatrix CouplingMatrix::scaled(double factor) const {
    CouplingMatrix m = *this;
    for (double &v : m.j_) v *= factor;
    m.finalize();
    return m;
}

CouplingMatrix equal_couplings(std::size_t n, double j) {
    if (n < 2) throw ValidationError("equal_couplings needs n >= 2");
    if (!std::isfinite(j)) throw ValidationError("coupling must be finite");
    std::vector<double> dense(n * n, j);
    for (std::size_t i = 0; i < n; ++i) dense[i * n + i] = 0;
    return CouplingMatrix::from_dense(n, std::move(dense));
}

void ModeData::validate() const {
    if (n < 2) throw ValidationError("mode data needs n >= 2");
    if (etas.size() != n) {
        throw ValidationError("etas has " + std::to_string(etas.size()) + " rows, expected " +
                              std::to_string(n));
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (etas[i].size() != omegas.size()) {
            throw ValidationError("etas row " + std::to_string(i) + " has " +
                                  std::to_string(etas[i].size()) + " columns, expected " +
                                  std::to_string(omegas.size()));
        }
    }
    if (omegas_rabi.size() != n) {
        throw ValidationError("omegas_rabi has " + std::to_string(omegas_rabi.size()) +
                              " entries, expected " + std::to_string(n));
    }
    if (!std::isfinite(mu)) throw ValidationError("mu must be finite");
    for (std::size_t m = 0; m < omegas.size(); ++m) {
        if (!std::isfinite(omegas[m])) {
            throw ValidationError("omegas[" + std::to_string(m) + "] not finite");
        }
        if (mu * mu == omegas[m] * omegas[m]) {
            throw ResonanceError("beatnote mu is resonant with mode " + std::to_string(m));
        }
    }
}

CouplingMatrix couplings_from_modes(const ModeData &modes) {
    modes.validate();
    std::size_t n = modes.n;
    std::vector<double> weight(modes.omegas.size());
    for (std::size_t m = 0; m < weight.size(); ++m) {
        double w = modes.omegas[m];
        weight[m] = w / (modes.mu * modes.mu - w * w);
    }
    std::vector<double> dense(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = i + 1; k < n; ++k) {
            double s = 0;
            for (std::size_t m = 0; m < weight.size(); ++m) {
                s += modes.etas[i][m] * modes.etas[k][m] * weight[m];
            }
            double v = static_cast<double>(n) * modes.omegas_rabi[i] * modes.omegas_rabi[k] * s;
            dense[i * n + k] = v;
            dense[k * n + i] = v;
        }
    }
    return CouplingMatrix::from_dense(n, std::move(dense));
}

}  // namespace scatterspin

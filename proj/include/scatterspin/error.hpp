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

#include <stdexcept>
#include <string>

namespace scatterspin {

/// Bad user-supplied value: negative rate, wrong shape, NaN, n < 2, ...
struct ValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Beatnote exactly on a motional mode frequency.
struct ResonanceError : ValidationError {
    using ValidationError::ValidationError;
};

/// Rates that break an assumption of the requested model (e.g. the
/// spin-echo kernels require no scattering out of |1>).
struct ModelViolationError : ValidationError {
    using ValidationError::ValidationError;
};

/// Dense oracle asked for a Hilbert space it refuses to allocate.
struct SizeError : ValidationError {
    using ValidationError::ValidationError;
};

/// A computed quantity failed a self-check (imaginary residue on a real
/// observable, trace drift in the integrator, ...).
struct ConsistencyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct StepSizeError : ConsistencyError {
    StepSizeError(const std::string &what, double suggested)
        : ConsistencyError(what), suggested_dt(suggested) {}
    double suggested_dt;
};

}  // namespace scatterspin

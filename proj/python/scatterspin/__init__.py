# Copyright 2026 The scatterspin Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Closed-form scattering and leakage in trapped-ion Ising dynamics."""

from scatterspin._scatterspin import (
    ConsistencyError,
    Engine,
    ModelViolationError,
    ScatteringRates,
    SizeError,
    ValidationError,
    __version__,
    ca_rates,
    correlator_curves,
    derive_rates,
    equal_couplings,
    ghz_fidelity,
    oracle_density_matrix,
    plateau,
    qaoa_single_layer,
    spin_squeezing,
)

__all__ = [
    "ConsistencyError",
    "Engine",
    "ModelViolationError",
    "ScatteringRates",
    "SizeError",
    "ValidationError",
    "__version__",
    "ca_rates",
    "correlator_curves",
    "derive_rates",
    "equal_couplings",
    "ghz_fidelity",
    "oracle_density_matrix",
    "plateau",
    "qaoa_single_layer",
    "spin_squeezing",
]

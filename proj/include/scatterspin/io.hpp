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

#include "json.hpp"
#include "scatterspin/couplings.hpp"

namespace scatterspin {

/// A file that could not be opened, read, or written.
struct FileError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Couplings document: {"n": N, "upper": [[i, j, value], ...]} with i < j
/// (pairs not listed are zero), or {"n": N, "matrix": [[...], ...]}. A
/// top-level "units": "hz" multiplies every value by 2 pi.
CouplingMatrix couplings_from_json(const nlohmann::json &doc);
nlohmann::json couplings_to_json(const CouplingMatrix &couplings);

/// Mode document: {"n", "omegas", "etas", "omegas_rabi", "mu"}; "units":
/// "hz" converts the frequencies (not the Lamb-Dicke parameters).
ModeData modes_from_json(const nlohmann::json &doc);
nlohmann::json modes_to_json(const ModeData &modes);

/// Reads a whole file as JSON. Throws FileError if it cannot be read and
/// ValidationError if it does not parse.
nlohmann::json read_json_file(const std::string &path);
void write_text_file(const std::string &path, const std::string &text);

CouplingMatrix load_couplings(const std::string &path);
void save_couplings(const std::string &path, const CouplingMatrix &couplings);
ModeData load_modes(const std::string &path);
void save_modes(const std::string &path, const ModeData &modes);

}  // namespace scatterspin

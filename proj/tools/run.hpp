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
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace scatterspin::cli {

enum ExitCode : int {
    EXIT_OK = 0,
    EXIT_CONFIG = 2,
    EXIT_VALIDATION = 3,
    EXIT_CONSISTENCY = 4,
    EXIT_FILE = 5,
};

/// Malformed run configuration: unknown experiment, bad sweep axis, wrong
/// field type, conflicting sources.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline constexpr int SCHEMA_VERSION = 1;

/// Command-line overrides layered on top of the JSON config.
struct Overrides {
    std::optional<std::string> experiment;
    std::optional<std::string> out;
    std::optional<std::string> format;
    std::optional<std::string> units;
    std::optional<std::string> mode;
    std::optional<uint64_t> seed;
    std::optional<std::size_t> n;
    std::size_t jobs = 1;
};

/// Merges the overrides into `config` and checks its shape. The result is
/// what gets hashed and executed.
nlohmann::json effective_config(nlohmann::json config, const Overrides &overrides);

/// 64-bit FNV-1a over the canonical dump, ignoring "output" and "jobs".
std::string config_hash(const nlohmann::json &config);

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::vector<std::string> notes;  // summary lines printed after the table
    bool ok = true;                  // false when a verification fails
};

std::string format_csv(const Table &table, const std::string &hash);
std::string format_json(const Table &table, const nlohmann::json &config, const std::string &hash);

/// Executes an effective config. Writes the artifact when an output path is
/// set (resuming from `<out>.partial` if its hash matches) and prints the
/// summary to `summary`. Returns the exit code for a clean run; errors
/// propagate as exceptions.
int run(const nlohmann::json &config, std::size_t jobs, std::ostream &summary);

/// Maps the exception currently being handled to an exit code.
int exit_code_for_current_exception(std::string *message);

}  // namespace scatterspin::cli

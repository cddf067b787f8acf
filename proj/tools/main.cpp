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
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <cstdlib>
#include <iostream>

#include "CLI11.hpp"
#include "run.hpp"
#include "scatterspin/error.hpp"
#include "scatterspin/io.hpp"

using namespace scatterspin;

namespace {

void setup_logging() {
    auto logger = spdlog::stderr_color_mt("scatterspin");
    spdlog::set_default_logger(logger);
    spdlog::set_level(spdlog::level::warn);
    if (const char *env = std::getenv("SCATTERSPIN_LOG")) {
        spdlog::set_level(spdlog::level::from_str(env));
    }
}

}  // namespace

int main(int argc, char **argv) {
    setup_logging();

    CLI::App app{"Exact light-scattering dynamics for trapped-ion Ising models"};
    app.set_version_flag("--version", SCATTERSPIN_VERSION);
    app.require_subcommand(1);

    std::string config_path;
    cli::Overrides o;
    std::string out, format, units, mode;
    uint64_t seed = 0;
    std::size_t n = 0;

    auto add_common = [&](CLI::App *sub) {
        sub->add_option("--config", config_path, "JSON run configuration");
        sub->add_option("--jobs", o.jobs, "Worker threads")->check(CLI::PositiveNumber);
        sub->add_option("--out", out, "Output file");
        sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--units", units, "Units of inline couplings and detunings")
            ->check(CLI::IsMember({"hz", "rad"}));
        sub->add_option("--mode", mode, "Evolution mode")->check(CLI::IsMember({"plain", "spin-echo"}));
        sub->add_option("--seed", seed, "Seed for randomized suites");
        sub->add_option("--n", n, "Number of ions")->check(CLI::PositiveNumber);
    };
    for (const char *name : {"rates", "ghz", "correlations", "squeezing", "qaoa", "oracle-verify"}) {
        add_common(app.add_subcommand(name, std::string("Run the ") + name + " experiment"));
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : cli::EXIT_CONFIG;
    }

    CLI::App *sub = app.get_subcommands().front();
    o.experiment = sub->get_name();
    if (!out.empty()) o.out = out;
    if (!format.empty()) o.format = format;
    if (!units.empty()) o.units = units;
    if (!mode.empty()) o.mode = mode;
    if (sub->count("--seed")) o.seed = seed;
    if (sub->count("--n")) o.n = n;

    try {
        nlohmann::json config = nlohmann::json::object();
        if (!config_path.empty()) {
            try {
                config = read_json_file(config_path);
            } catch (const ValidationError &e) {
                throw cli::ConfigError(e.what());
            }
        }
        nlohmann::json effective = cli::effective_config(std::move(config), o);
        return cli::run(effective, o.jobs, std::cout);
    } catch (...) {
        std::string message;
        int code = cli::exit_code_for_current_exception(&message);
        spdlog::error("{}", message);
        return code;
    }
}

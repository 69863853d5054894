// Copyright 2026 The qndsim Authors
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

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "qndsim/config.h"
#include "qndsim/output.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

void print_diagnostics(const std::vector<std::string> &diag) {
    for (const auto &d : diag) {
        std::cerr << "config error: " << d << "\n";
    }
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"qndsim: repeated stabilizer readout and feedback simulator"};
    app.require_subcommand(1);
    app.fallthrough();

    std::optional<uint64_t> seed;
    std::optional<int> workers;
    std::optional<std::string> out_dir;
    app.add_option("--seed", seed, "Master seed; overrides the config");
    app.add_option("--workers", workers, "Worker threads (0 = all cores); results do not depend on it")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--out", out_dir, "Output directory; overrides the config");

    std::string run_path;
    auto *run = app.add_subcommand("run", "Run an experiment config and write its outputs");
    run->add_option("config", run_path, "Experiment config (JSON)")->required();

    std::string validate_path;
    auto *validate = app.add_subcommand("validate", "List every problem in a config");
    validate->add_option("config", validate_path, "Experiment config (JSON)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitConfig;
    }

    if (*validate) {
        try {
            auto diag = qndsim::validate_config(validate_path);
            if (!diag.empty()) {
                print_diagnostics(diag);
                return kExitConfig;
            }
            std::cout << validate_path << ": ok\n";
            return kExitOk;
        } catch (const qndsim::ConfigError &e) {
            print_diagnostics(e.diagnostics());
            return kExitConfig;
        }
    }

    qndsim::ExperimentConfig config;
    try {
        config = qndsim::load_config(run_path);
    } catch (const qndsim::ConfigError &e) {
        print_diagnostics(e.diagnostics());
        return kExitConfig;
    }
    if (seed) {
        config.seed = *seed;
    }
    if (workers) {
        config.workers = *workers;
        config.settings.workers = *workers;
    }
    if (out_dir) {
        config.output_dir = *out_dir;
    }

    try {
        auto artifacts = qndsim::run_experiment(config);
        qndsim::write_artifacts(artifacts, config.output_dir);
        for (const auto &f : artifacts.files) {
            std::cout << "wrote " << config.output_dir << "/" << f.first << "\n";
        }
    } catch (const std::exception &e) {
        std::cerr << "runtime error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitOk;
}

// SPDX-License-Identifier: Apache-2.0
//
// ris-hst: link-level simulator for RIS-assisted high-speed-train MISO downlinks
// Copyright (C) 2026 The ris-hst authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "rishst/config.hpp"
#include "rishst/experiment.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <iostream>

namespace
{
    enum ExitCode
    {
        exit_ok = 0,
        exit_config = 2,
        exit_io = 3,
        exit_failures = 4
    };

    constexpr double failure_budget = 0.01;
}

int main(int argc, char **argv)
{
    CLI::App app{"Link-level simulator for RIS-assisted high-speed-train MISO downlinks"};
    app.set_version_flag("--version", std::string(rishst::tool_version()));
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::string> out_path, experiment;
    std::optional<std::size_t> trials;
    std::optional<std::uint64_t> seed;
    int threads = 0;
    bool quiet = false;

    auto *run = app.add_subcommand("run", "Run an experiment and write its CSV table");
    run->add_option("--config", config_path, "JSON configuration file")->required();
    run->add_option("--out", out_path, "CSV output path (overrides output_path)");
    run->add_option("--trials", trials, "Monte Carlo trials (overrides the file)")->check(CLI::PositiveNumber);
    run->add_option("--seed", seed, "Base seed (overrides the file)");
    run->add_option("--experiment", experiment, "Experiment name (overrides the file)");
    run->add_option("--threads", threads, "Worker threads, 0 for the OpenMP default")->check(CLI::NonNegativeNumber);
    run->add_flag("-q,--quiet", quiet, "Suppress the summary line");

    auto *validate = app.add_subcommand("validate", "Check a configuration without running it");
    validate->add_option("--config", config_path, "JSON configuration file")->required();

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_config;
    }

    rishst::ConfigOverrides overrides;
    overrides.experiment = experiment;
    overrides.trials = trials;
    overrides.seed = seed;
    overrides.output_path = out_path;

    try
    {
        const rishst::ExperimentConfig cfg = rishst::load_config(config_path, overrides);
        if (*validate)
        {
            std::cout << "ok: " << rishst::to_string(cfg.experiment) << ", " << cfg.trials << " trials, hash "
                      << rishst::config_hash(cfg) << "\n";
            return exit_ok;
        }

        const auto start = std::chrono::steady_clock::now();
        rishst::RunOptions options;
        options.threads = threads;
        const rishst::ExperimentResult result = rishst::run_experiment(cfg, options);
        rishst::emit_csv(result.table, cfg.output_path, rishst::make_metadata(cfg));
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

        if (!quiet)
            std::cerr << rishst::to_string(cfg.experiment) << ": " << result.table.rows.size() << " rows, "
                      << result.failed_trials << "/" << result.trials << " failed trials, " << seconds
                      << " s -> " << cfg.output_path << "\n";

        if (result.failure_fraction() > failure_budget)
        {
            std::cerr << "error: " << result.failed_trials << " of " << result.trials
                      << " trials failed, above the 1% budget\n";
            return exit_failures;
        }
        return exit_ok;
    }
    catch (const rishst::ConfigError &e)
    {
        std::cerr << "config error: " << e.what() << "\n";
        return exit_config;
    }
    catch (const rishst::IoError &e)
    {
        std::cerr << "i/o error: " << e.what() << "\n";
        return exit_io;
    }
}

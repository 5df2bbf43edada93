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

#ifndef RISHST_CONFIG_HPP
#define RISHST_CONFIG_HPP

#include "rishst/channel.hpp"
#include "rishst/metrics.hpp"
#include "rishst/optimizer.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rishst
{
    /// Invalid or incomplete experiment configuration. The message starts with the field path.
    class ConfigError : public std::runtime_error
    {
    public:
        explicit ConfigError(const std::string &what) : std::runtime_error(what) {}
    };

    enum class ExperimentKind
    {
        gain_vs_time,
        rate_vs_elements,
        capacity_vs_time,
        ber_vs_position,
        outage_vs_time
    };

    struct ExperimentFlags
    {
        OutageConvention outage_convention = OutageConvention::paper;
        NoRisMode no_ris_mode = NoRisMode::remove;
        RateModel rate_model = RateModel::gap;
        bool paper_literal_pathloss = false;
        AngleMode angle_mode = AngleMode::geometric;
    };

    struct ExperimentConfig
    {
        ScenarioParams scenario;
        ExperimentKind experiment = ExperimentKind::gain_vs_time;
        std::vector<Scheme> schemes{Scheme::bcd, Scheme::random_phase, Scheme::no_ris};
        std::size_t trials = 500;
        std::uint64_t seed = 1;
        std::vector<double> sweep; // RIS element counts or AP y-positions
        std::string output_path = "results.csv";
        ExperimentFlags flags;
        BcdOptions bcd;

        /// Throws ConfigError.
        void validate() const;
    };

    /// Command-line values that take precedence over the file.
    struct ConfigOverrides
    {
        std::optional<std::string> experiment;
        std::optional<std::size_t> trials;
        std::optional<std::uint64_t> seed;
        std::optional<std::string> output_path;
    };

    std::string_view to_string(ExperimentKind e);
    ExperimentKind parse_experiment(std::string_view name);

    bool requires_sweep(ExperimentKind e);
    std::size_t default_trials(ExperimentKind e);
    std::vector<double> default_sweep(ExperimentKind e);

    double db_to_linear(double db);
    double dbm_to_watts(double dbm);

    /// Parses JSON text. Absent scenario fields take the reference defaults; "experiment" is
    /// required unless supplied through the overrides.
    ExperimentConfig parse_config(std::string_view json_text, const ConfigOverrides &overrides = {});

    /// Reads and parses a file. Unreadable files raise IoError, everything else ConfigError.
    ExperimentConfig load_config(const std::string &path, const ConfigOverrides &overrides = {});

    /// Deterministic JSON rendering of the effective configuration (sorted keys, linear units).
    std::string canonical_json(const ExperimentConfig &cfg);

    /// Digest of canonical_json.
    std::string config_hash(const ExperimentConfig &cfg);
}

#endif

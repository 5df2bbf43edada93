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

#ifndef RISHST_EXPERIMENT_HPP
#define RISHST_EXPERIMENT_HPP

#include "rishst/config.hpp"
#include "rishst/result_table.hpp"

#include <cstddef>

namespace rishst
{
    struct RunOptions
    {
        int threads = 0; // 0 leaves the OpenMP default
        std::size_t bits_per_slot = 8; // BPSK symbols per slot for the empirical BER column
    };

    struct ExperimentResult
    {
        ResultTable table;
        std::size_t trials = 0;
        std::size_t failed_trials = 0; // trials in which at least one scheme failed

        double failure_fraction() const noexcept
        {
            return trials == 0 ? 0.0 : double(failed_trials) / double(trials);
        }
    };

    /// Runs every trial of `cfg` and aggregates mean and standard error per row.
    ///
    /// Trial t draws from RngStream(cfg.seed, t): the drop first, then the random-phase vector,
    /// then the BPSK bits and noise of all three schemes slot by slot. Trials run in parallel
    /// and are reduced in trial order, so the table does not depend on the thread count.
    /// Optimizer failures exclude the trial for that scheme and are counted in `failures`.
    ExperimentResult run_experiment(const ExperimentConfig &cfg, const RunOptions &options = {});

    /// Column names of the table produced for an experiment kind.
    std::vector<std::string> result_header(ExperimentKind kind);

    RunMetadata make_metadata(const ExperimentConfig &cfg);
}

#endif

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

#include "rishst/experiment.hpp"

#include <array>
#include <cmath>
#include <exception>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rishst
{
    namespace
    {
        constexpr std::array<Scheme, 3> all_schemes{Scheme::bcd, Scheme::random_phase, Scheme::no_ris};

        std::size_t scheme_index(Scheme s)
        {
            return std::size_t(s);
        }

        struct SchemeTrial
        {
            bool ok = true;
            std::vector<double> gain;           // per slot, linear
            std::vector<double> outage;         // per slot, analytic
            std::vector<cdouble> effective;     // per slot
            double ber_analytic = 0.0;          // slot average
            std::size_t bit_errors = 0;
            std::size_t bits = 0;
        };

        using TrialOutcome = std::array<SchemeTrial, 3>;

        struct SlotState
        {
            BeamformingState state;
            AlignmentScalars scalars;
        };

        SlotState run_scheme(Scheme scheme, std::size_t k, const ChannelRealization &ch, const ChannelDrop &drop,
                             const Eigen::VectorXd &phases, const ExperimentConfig &cfg, const ScenarioParams &sc)
        {
            SlotState out;
            switch (scheme)
            {
            case Scheme::bcd:
            {
                BcdResult r = bcd_optimize(k, ch, drop.angles, sc.tx_power_w, cfg.bcd.tol, cfg.bcd.max_iter);
                out.state = std::move(r.state);
                out.scalars = r.scalars;
                break;
            }
            case Scheme::random_phase:
                out.state = baseline_random_phase(ch, sc.tx_power_w, phases);
                out.scalars = alignment_scalars(out.state, ch);
                break;
            case Scheme::no_ris:
                out.state = baseline_no_ris(ch, sc.tx_power_w, cfg.flags.no_ris_mode);
                out.scalars = alignment_scalars(out.state, ch);
                break;
            }
            return out;
        }

        // One trial over all K slots of one scenario.
        TrialOutcome run_trial(const ExperimentConfig &cfg, const ScenarioParams &sc, std::size_t trial,
                               const RunOptions &options)
        {
            RngStream rng(cfg.seed, trial);
            const ChannelDrop drop = draw_drop(sc, rng);
            const Eigen::VectorXd phases = random_phases(sc.num_elements(), rng);

            const std::size_t K = sc.num_slots;
            const bool want_outage = cfg.experiment == ExperimentKind::outage_vs_time;
            const bool want_ber = cfg.experiment == ExperimentKind::ber_vs_position;

            TrialOutcome out;
            std::array<bool, 3> selected{};
            for (Scheme s : cfg.schemes)
                selected[scheme_index(s)] = true;
            for (auto &o : out)
            {
                o.gain.assign(K, 0.0);
                o.outage.assign(K, 0.0);
                o.effective.assign(K, cdouble(0.0, 0.0));
                o.ok = true;
            }
            for (std::size_t s = 0; s < 3; ++s)
                out[s].ok = selected[s];

            for (std::size_t k = 1; k <= K; ++k)
            {
                const ChannelRealization ch = realize(drop, sc, k);
                for (std::size_t s = 0; s < 3; ++s)
                {
                    // Bits and noise are drawn for every scheme so that streams stay aligned
                    // whatever subset is selected.
                    std::vector<std::pair<double, cdouble>> symbols;
                    if (want_ber)
                    {
                        symbols.resize(options.bits_per_slot);
                        for (auto &[bit, noise] : symbols)
                        {
                            bit = rng.uniform() < 0.5 ? -1.0 : 1.0;
                            noise = sample_cn(0.0, sc.noise_power_w, rng);
                        }
                    }
                    SchemeTrial &o = out[s];
                    if (!o.ok)
                        continue;
                    try
                    {
                        const SlotState st = run_scheme(all_schemes[s], k, ch, drop, phases, cfg, sc);
                        const cdouble h = composite_channel(ch, st.state.phases, st.state.ris_active) *
                                          st.state.tx_beam;
                        const double g = std::norm(h);
                        if (!std::isfinite(g))
                            throw std::domain_error("non-finite channel gain");
                        o.gain[k - 1] = g;
                        o.effective[k - 1] = h;
                        if (want_outage)
                            o.outage[k - 1] = outage_analytic(composite_moments(ch, st.state, st.scalars, sc), sc,
                                                              cfg.flags.outage_convention);
                        if (want_ber)
                        {
                            o.ber_analytic += ber_bpsk(g / sc.noise_power_w);
                            for (const auto &[bit, noise] : symbols)
                            {
                                const cdouble y = h * bit + noise;
                                const double decision = (std::conj(h) * y).real() >= 0.0 ? 1.0 : -1.0;
                                o.bit_errors += decision != bit ? 1 : 0;
                                ++o.bits;
                            }
                        }
                    }
                    catch (const std::exception &)
                    {
                        o.ok = false;
                    }
                }
            }
            for (auto &o : out)
                o.ber_analytic /= double(K);
            return out;
        }

        std::vector<TrialOutcome> run_trials(const ExperimentConfig &cfg, const ScenarioParams &sc,
                                             const RunOptions &options)
        {
            std::vector<TrialOutcome> results(cfg.trials);
            const auto n = static_cast<long long>(cfg.trials);
#ifdef _OPENMP
            const int threads = options.threads > 0 ? options.threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
#endif
            for (long long t = 0; t < n; ++t)
                results[std::size_t(t)] = run_trial(cfg, sc, std::size_t(t), options);
            return results;
        }

        // Running sums in trial order.
        struct Accumulator
        {
            double sum = 0.0;
            double sum_sq = 0.0;
            std::size_t n = 0;

            void add(double x)
            {
                sum += x;
                sum_sq += x * x;
                ++n;
            }
            double mean() const
            {
                return n == 0 ? std::numeric_limits<double>::quiet_NaN() : sum / double(n);
            }
            double stderr_() const
            {
                if (n < 2)
                    return 0.0;
                const double m = mean();
                if (!std::isfinite(m))
                    return std::numeric_limits<double>::quiet_NaN();
                const double var = std::max(0.0, (sum_sq - double(n) * m * m) / double(n - 1));
                return std::sqrt(var / double(n));
            }
        };

        double to_db(double g)
        {
            return g > 0.0 ? 10.0 * std::log10(g) : -std::numeric_limits<double>::infinity();
        }

        std::size_t count_failed(const std::vector<TrialOutcome> &trials, std::size_t s)
        {
            std::size_t f = 0;
            for (const auto &t : trials)
                f += t[s].ok ? 0 : 1;
            return f;
        }

        void append_time_rows(ResultTable &table, const ExperimentConfig &cfg, const ScenarioParams &sc,
                              const std::vector<TrialOutcome> &trials)
        {
            const double threshold = sc.noise_power_w * sc.snr_threshold;
            for (Scheme scheme : cfg.schemes)
            {
                const std::size_t s = scheme_index(scheme);
                const auto failures = std::int64_t(count_failed(trials, s));
                for (std::size_t k = 0; k < sc.num_slots; ++k)
                {
                    Accumulator a, b;
                    for (const auto &t : trials)
                    {
                        if (!t[s].ok)
                            continue;
                        const double g = t[s].gain[k];
                        switch (cfg.experiment)
                        {
                        case ExperimentKind::gain_vs_time:
                            a.add(to_db(g));
                            break;
                        case ExperimentKind::capacity_vs_time:
                            a.add(channel_capacity(std::span<const cdouble>(&t[s].effective[k], 1), sc));
                            break;
                        case ExperimentKind::outage_vs_time:
                            a.add(t[s].outage[k]);
                            b.add(g < threshold ? 1.0 : 0.0);
                            break;
                        default:
                            break;
                        }
                    }
                    std::vector<Cell> row{std::int64_t(k + 1), std::string(to_string(scheme)), a.mean(), a.stderr_()};
                    if (cfg.experiment == ExperimentKind::outage_vs_time)
                    {
                        row.push_back(b.mean());
                        row.push_back(b.stderr_());
                    }
                    row.push_back(failures);
                    table.rows.push_back(std::move(row));
                }
            }
        }
    }

    std::vector<std::string> result_header(ExperimentKind kind)
    {
        switch (kind)
        {
        case ExperimentKind::gain_vs_time:
            return {"slot", "scheme", "gain_db_mean", "gain_db_stderr", "failures"};
        case ExperimentKind::capacity_vs_time:
            return {"slot", "scheme", "capacity_bps_mean", "capacity_bps_stderr", "failures"};
        case ExperimentKind::outage_vs_time:
            return {"slot",          "scheme",           "outage_analytic_mean", "outage_analytic_stderr",
                    "outage_empirical", "outage_empirical_stderr", "failures"};
        case ExperimentKind::rate_vs_elements:
            return {"num_elements", "scheme", "rate_mean", "rate_stderr", "failures"};
        case ExperimentKind::ber_vs_position:
            return {"ap_y_m",        "scheme",        "ber_analytic_mean", "ber_analytic_stderr",
                    "ber_empirical", "ber_empirical_stderr", "failures"};
        }
        return {};
    }

    RunMetadata make_metadata(const ExperimentConfig &cfg)
    {
        RunMetadata meta;
        meta.experiment = std::string(to_string(cfg.experiment));
        meta.config_hash = config_hash(cfg);
        meta.seed = cfg.seed;
        meta.trials = cfg.trials;
        meta.tool_version = std::string(tool_version());
        return meta;
    }

    ExperimentResult run_experiment(const ExperimentConfig &cfg, const RunOptions &options)
    {
        cfg.validate();

        ExperimentResult result;
        result.trials = cfg.trials;
        result.table.header = result_header(cfg.experiment);
        std::vector<bool> trial_failed(cfg.trials, false);

        auto note_failures = [&](const std::vector<TrialOutcome> &trials)
        {
            for (std::size_t t = 0; t < trials.size(); ++t)
                for (Scheme s : cfg.schemes)
                    if (!trials[t][scheme_index(s)].ok)
                        trial_failed[t] = true;
        };

        switch (cfg.experiment)
        {
        case ExperimentKind::gain_vs_time:
        case ExperimentKind::capacity_vs_time:
        case ExperimentKind::outage_vs_time:
        {
            const auto trials = run_trials(cfg, cfg.scenario, options);
            note_failures(trials);
            append_time_rows(result.table, cfg, cfg.scenario, trials);
            break;
        }
        case ExperimentKind::rate_vs_elements:
        {
            std::vector<std::vector<TrialOutcome>> per_point;
            for (const double n_el : cfg.sweep)
            {
                ScenarioParams sc = cfg.scenario;
                sc.ris_side = std::size_t(std::llround(std::sqrt(n_el)));
                per_point.push_back(run_trials(cfg, sc, options));
                note_failures(per_point.back());
            }
            for (Scheme scheme : cfg.schemes)
            {
                const std::size_t s = scheme_index(scheme);
                for (std::size_t p = 0; p < cfg.sweep.size(); ++p)
                {
                    Accumulator a;
                    for (const auto &t : per_point[p])
                        if (t[s].ok)
                            a.add(achievable_rate(t[s].effective, cfg.scenario, cfg.flags.rate_model));
                    result.table.rows.push_back({std::int64_t(std::llround(cfg.sweep[p])),
                                                 std::string(to_string(scheme)), a.mean(), a.stderr_(),
                                                 std::int64_t(count_failed(per_point[p], s))});
                }
            }
            break;
        }
        case ExperimentKind::ber_vs_position:
        {
            std::vector<std::vector<TrialOutcome>> per_point;
            for (const double y : cfg.sweep)
            {
                ScenarioParams sc = cfg.scenario;
                sc.ap_pos.y() = y;
                per_point.push_back(run_trials(cfg, sc, options));
                note_failures(per_point.back());
            }
            for (Scheme scheme : cfg.schemes)
            {
                const std::size_t s = scheme_index(scheme);
                for (std::size_t p = 0; p < cfg.sweep.size(); ++p)
                {
                    Accumulator a;
                    std::size_t errors = 0, bits = 0;
                    for (const auto &t : per_point[p])
                    {
                        if (!t[s].ok)
                            continue;
                        a.add(t[s].ber_analytic);
                        errors += t[s].bit_errors;
                        bits += t[s].bits;
                    }
                    const double pe = bits == 0 ? std::numeric_limits<double>::quiet_NaN()
                                                : double(errors) / double(bits);
                    const double pe_se = bits == 0 ? 0.0 : std::sqrt(pe * (1.0 - pe) / double(bits));
                    result.table.rows.push_back({cfg.sweep[p], std::string(to_string(scheme)), a.mean(),
                                                 a.stderr_(), pe, pe_se,
                                                 std::int64_t(count_failed(per_point[p], s))});
                }
            }
            break;
        }
        }

        for (bool f : trial_failed)
            result.failed_trials += f ? 1 : 0;
        return result;
    }
}

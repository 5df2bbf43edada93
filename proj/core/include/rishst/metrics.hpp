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

#ifndef RISHST_METRICS_HPP
#define RISHST_METRICS_HPP

#include "rishst/channel.hpp"
#include "rishst/optimizer.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rishst
{
    enum class OutageConvention
    {
        paper,    // 1 - Q1(sqrt(|mu|^2 / s^2), sqrt(sigma^2 gamma_th / s^2))
        standard  // 1 - Q1(sqrt(2 |mu|^2 / s^2), sqrt(2 sigma^2 gamma_th / s^2))
    };

    enum class RateModel
    {
        gap,       // log2(1 + SNR / Gamma)
        multiplier // 0.8 log2(1 + SNR)
    };

    enum class Scheme
    {
        bcd,
        random_phase,
        no_ris
    };

    inline constexpr double rate_multiplier = 0.8;

    // Mean and variance of the effective channel under the Rician split
    struct CompositeMoments
    {
        cdouble mean{0.0, 0.0};
        double variance = 0.0;
        double rician_weight_los = 1.0;
        double rician_weight_nlos = 0.0;
    };

    struct OutageParams
    {
        double noncentrality = 0.0;
        double threshold_norm = 0.0;
        unsigned dof = 2;
        OutageConvention convention = OutageConvention::paper;
    };

    // One slot of one scheme
    struct MetricRecord
    {
        std::size_t slot = 0;
        double gain_linear = 0.0;
        double rate_bps_hz = 0.0;
        double capacity_bps = 0.0;
        double outage_prob = 0.0;
        double ber = 0.0;
        Scheme scheme = Scheme::bcd;
    };

    std::string_view to_string(Scheme s);
    std::string_view to_string(OutageConvention c);
    std::string_view to_string(RateModel r);

    /// R = (1/K) sum log2(1 + |h_k|^2 / (Gamma sigma^2)), or the multiplier variant.
    double achievable_rate(std::span<const cdouble> effective, const ScenarioParams &params,
                           RateModel model = RateModel::gap);

    /// C = (1/K) sum B log2(1 + |h_k|^2 / sigma^2) in bit/s.
    double channel_capacity(std::span<const cdouble> effective, const ScenarioParams &params);

    /// mean = rho d + rho^2 c, variance = varrho^2 |d|^2 + varrho^4 |c|^2 with d = h_d^H w and
    /// c the aligned cascaded scalar.
    CompositeMoments composite_moments(const ChannelRealization &ch, const BeamformingState &state,
                                       const AlignmentScalars &scalars, const ScenarioParams &params);

    OutageParams outage_params(const CompositeMoments &m, const ScenarioParams &params,
                               OutageConvention convention = OutageConvention::paper);

    /// Outage from the non-central chi-square model of |h|^2; a zero variance gives 0 or 1.
    double outage_analytic(const CompositeMoments &m, const ScenarioParams &params,
                           OutageConvention convention = OutageConvention::paper);

    /// Fraction of gains below sigma^2 gamma_th.
    double outage_empirical(std::span<const double> gain_samples, const ScenarioParams &params);

    /// Q(sqrt(2 Eb/N0)) for uncoded BPSK.
    double ber_bpsk(double snr_per_bit);

    /// Per-slot metrics of a scheme; rate and capacity are single-slot terms.
    MetricRecord make_record(std::size_t slot, Scheme scheme, cdouble effective, const CompositeMoments &moments,
                             const ScenarioParams &params, RateModel model, OutageConvention convention);

    std::vector<std::string> metric_record_header();
    std::vector<std::string> to_row(const MetricRecord &r);
}

#endif

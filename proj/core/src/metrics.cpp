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

#include "rishst/metrics.hpp"

#include <cmath>
#include <stdexcept>

#include "rishst/result_table.hpp"

namespace rishst
{
    std::string_view to_string(Scheme s)
    {
        switch (s)
        {
        case Scheme::bcd:
            return "bcd";
        case Scheme::random_phase:
            return "random_phase";
        case Scheme::no_ris:
            return "no_ris";
        }
        return "unknown";
    }

    std::string_view to_string(OutageConvention c)
    {
        return c == OutageConvention::paper ? "paper" : "standard";
    }

    std::string_view to_string(RateModel r)
    {
        return r == RateModel::gap ? "gap" : "multiplier";
    }

    double achievable_rate(std::span<const cdouble> effective, const ScenarioParams &params, RateModel model)
    {
        if (effective.empty())
            throw std::domain_error("achievable_rate: empty channel sequence");
        if (!(params.cap_gap >= 1.0))
            throw std::domain_error("achievable_rate: gap must be >= 1");

        double sum = 0.0;
        for (const cdouble h : effective)
        {
            const double snr = std::norm(h) / params.noise_power_w;
            sum += model == RateModel::gap ? std::log2(1.0 + snr / params.cap_gap)
                                           : rate_multiplier * std::log2(1.0 + snr);
        }
        return sum / double(effective.size());
    }

    double channel_capacity(std::span<const cdouble> effective, const ScenarioParams &params)
    {
        if (effective.empty())
            throw std::domain_error("channel_capacity: empty channel sequence");
        if (!(params.bandwidth_hz > 0.0))
            throw std::domain_error("channel_capacity: bandwidth must be positive");

        double sum = 0.0;
        for (const cdouble h : effective)
            sum += params.bandwidth_hz * std::log2(1.0 + std::norm(h) / params.noise_power_w);
        return sum / double(effective.size());
    }

    CompositeMoments composite_moments(const ChannelRealization &ch, const BeamformingState &state,
                                       const AlignmentScalars &scalars, const ScenarioParams &params)
    {
        const RicianWeights w = rician_weights(params.rician_k);
        const cdouble direct = ch.direct.combined.dot(state.tx_beam);
        const cdouble cascaded = scalars.cascaded_scalar * std::polar(1.0, scalars.alignment_phase);

        const double rho2 = w.los * w.los;
        const double varrho2 = w.nlos * w.nlos;

        CompositeMoments m;
        m.rician_weight_los = w.los;
        m.rician_weight_nlos = w.nlos;
        m.mean = w.los * direct + rho2 * cascaded;
        m.variance = varrho2 * std::norm(direct) + varrho2 * varrho2 * std::norm(cascaded);
        return m;
    }

    OutageParams outage_params(const CompositeMoments &m, const ScenarioParams &params, OutageConvention convention)
    {
        if (!(m.variance > 0.0))
            throw std::domain_error("outage_params: variance must be positive");
        const double scale = convention == OutageConvention::standard ? 2.0 : 1.0;
        OutageParams p;
        p.noncentrality = scale * std::norm(m.mean) / m.variance;
        p.threshold_norm = scale * params.noise_power_w * params.snr_threshold / m.variance;
        p.convention = convention;
        return p;
    }

    double outage_analytic(const CompositeMoments &m, const ScenarioParams &params, OutageConvention convention)
    {
        if (!(m.variance >= 0.0))
            throw std::domain_error("outage_analytic: negative variance");
        const double threshold = params.noise_power_w * params.snr_threshold;
        if (m.variance == 0.0)
            return std::norm(m.mean) < threshold ? 1.0 : 0.0;

        const OutageParams p = outage_params(m, params, convention);
        return clamp_probability(1.0 - marcum_q1(std::sqrt(p.noncentrality), std::sqrt(p.threshold_norm)));
    }

    double outage_empirical(std::span<const double> gain_samples, const ScenarioParams &params)
    {
        if (gain_samples.empty())
            throw std::domain_error("outage_empirical: no samples");
        const double threshold = params.noise_power_w * params.snr_threshold;
        std::size_t below = 0;
        for (const double g : gain_samples)
            below += g < threshold ? 1 : 0;
        return double(below) / double(gain_samples.size());
    }

    double ber_bpsk(double snr_per_bit)
    {
        if (!(snr_per_bit >= 0.0))
            throw std::domain_error("ber_bpsk: SNR must be non-negative");
        if (std::isinf(snr_per_bit))
            return 0.0;
        return gaussian_q(std::sqrt(2.0 * snr_per_bit));
    }

    MetricRecord make_record(std::size_t slot, Scheme scheme, cdouble effective, const CompositeMoments &moments,
                             const ScenarioParams &params, RateModel model, OutageConvention convention)
    {
        const std::span<const cdouble> one(&effective, 1);
        MetricRecord r;
        r.slot = slot;
        r.scheme = scheme;
        r.gain_linear = std::norm(effective);
        r.rate_bps_hz = achievable_rate(one, params, model);
        r.capacity_bps = channel_capacity(one, params);
        r.outage_prob = outage_analytic(moments, params, convention);
        r.ber = ber_bpsk(r.gain_linear / params.noise_power_w);
        return r;
    }

    std::vector<std::string> metric_record_header()
    {
        return {"slot", "scheme", "gain_linear", "rate_bps_hz", "capacity_bps", "outage_prob", "ber"};
    }

    std::vector<std::string> to_row(const MetricRecord &r)
    {
        return {std::to_string(r.slot), std::string(to_string(r.scheme)), format_double(r.gain_linear),
                format_double(r.rate_bps_hz), format_double(r.capacity_bps), format_double(r.outage_prob),
                format_double(r.ber)};
    }
}

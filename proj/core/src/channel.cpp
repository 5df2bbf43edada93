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

#include "rishst/channel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace rishst
{
    namespace
    {
        void require(bool ok, const std::string &message)
        {
            if (!ok)
                throw std::invalid_argument(message);
        }

        bool positive_finite(double x) { return x > 0.0 && std::isfinite(x); }

        void check_slot(std::size_t k, std::size_t num_slots)
        {
            if (k < 1 || k > num_slots)
                throw std::domain_error("slot index " + std::to_string(k) + " outside [1, " +
                                        std::to_string(num_slots) + "]");
        }

        double doppler_phase(std::size_t k, double doppler_hz, double slot_duration_s)
        {
            return two_pi * double(k) * doppler_hz * slot_duration_s;
        }

        bool in_half_plane(double angle)
        {
            return angle >= -pi / 2.0 && angle <= pi / 2.0;
        }
    }

    void ScenarioParams::validate() const
    {
        require(train_speed_mps >= 0.0 && std::isfinite(train_speed_mps), "train_speed_mps must be finite and >= 0");
        require(positive_finite(carrier_hz), "carrier_hz must be positive");
        require(positive_finite(bandwidth_hz), "bandwidth_hz must be positive");
        require(positive_finite(noise_power_w), "noise_power_w must be positive");
        require(positive_finite(tx_power_w), "tx_power_w must be positive");
        require(num_tx >= 1, "num_tx must be >= 1");
        require(ris_side >= 1, "ris_side must be >= 1");
        require(positive_finite(frame_s), "frame_s must be positive");
        require(num_slots >= 1, "num_slots must be >= 1");
        require(rician_k >= 0.0, "rician_k must be >= 0");
        require(positive_finite(ref_loss), "ref_loss must be positive");
        require(positive_finite(ref_distance_m), "ref_distance_m must be positive");
        require(std::isfinite(pl_exp_direct) && std::isfinite(pl_exp_bs_ris) && std::isfinite(pl_exp_ris_ap),
                "path-loss exponents must be finite");
        require(cap_gap >= 1.0 && std::isfinite(cap_gap), "cap_gap must be >= 1");
        require(snr_threshold >= 0.0 && std::isfinite(snr_threshold), "snr_threshold must be finite and >= 0");
        require(num_sinusoids >= 8, "num_sinusoids must be >= 8");
        require(bs_pos.allFinite() && ris_pos.allFinite() && ap_pos.allFinite(), "positions must be finite");
        require((bs_pos - ris_pos).norm() >= ref_distance_m, "BS-RIS distance below the reference distance");
        require((ris_pos - ap_pos).norm() >= ref_distance_m, "RIS-AP distance below the reference distance");
        require((bs_pos - ap_pos).norm() >= ref_distance_m, "BS-AP distance below the reference distance");
    }

    double doppler_frequency(const ScenarioParams &params)
    {
        if (!(params.train_speed_mps >= 0.0) || !(params.carrier_hz > 0.0))
            throw std::domain_error("doppler_frequency: need speed >= 0 and carrier > 0");
        return params.train_speed_mps * params.carrier_hz / speed_of_light;
    }

    Eigen::VectorXcd steering_ula(double angle, std::size_t m)
    {
        if (m == 0)
            throw std::domain_error("steering_ula: array size must be positive");
        const double s = std::sin(angle);
        Eigen::VectorXcd a(static_cast<Eigen::Index>(m));
        for (std::size_t i = 0; i < m; ++i)
            a[static_cast<Eigen::Index>(i)] = std::polar(1.0, pi * double(i) * s);
        return a;
    }

    Eigen::VectorXcd steering_upa(double azimuth, double elevation, std::size_t n)
    {
        if (n == 0)
            throw std::domain_error("steering_upa: array side must be positive");
        const double sy = std::sin(azimuth) * std::cos(elevation);
        const double sz = std::sin(elevation);

        Eigen::VectorXcd ay(static_cast<Eigen::Index>(n)), az(static_cast<Eigen::Index>(n));
        for (std::size_t i = 0; i < n; ++i)
        {
            ay[static_cast<Eigen::Index>(i)] = std::polar(1.0, pi * double(i) * sy);
            az[static_cast<Eigen::Index>(i)] = std::polar(1.0, pi * double(i) * sz);
        }

        Eigen::VectorXcd a(static_cast<Eigen::Index>(n * n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t l = 0; l < n; ++l)
                a[static_cast<Eigen::Index>(i * n + l)] = ay[static_cast<Eigen::Index>(i)] * az[static_cast<Eigen::Index>(l)];
        return a;
    }

    double path_loss(double distance_m, double exponent, const ScenarioParams &params)
    {
        if (!(distance_m >= params.ref_distance_m))
            throw std::domain_error("path_loss: distance below the reference distance");
        return params.ref_loss * std::pow(distance_m / params.ref_distance_m, -exponent);
    }

    Direction angles_from_geometry(const Eigen::Vector3d &a, const Eigen::Vector3d &b)
    {
        const Eigen::Vector3d d = b - a;
        if (d.norm() == 0.0)
            throw std::domain_error("angles_from_geometry: coincident points");
        const double horizontal = std::hypot(d.x(), d.y());
        Direction out;
        out.azimuth = (horizontal == 0.0) ? 0.0 : std::atan2(d.y(), d.x());
        out.elevation = std::atan2(d.z(), horizontal);
        return out;
    }

    double ula_angle_from_geometry(const Eigen::Vector3d &a, const Eigen::Vector3d &b)
    {
        const Eigen::Vector3d d = b - a;
        const double len = d.norm();
        if (len == 0.0)
            throw std::domain_error("ula_angle_from_geometry: coincident points");
        return std::asin(std::clamp(d.x() / len, -1.0, 1.0));
    }

    AngleSet geometric_angles(const ScenarioParams &params)
    {
        const Direction to_bs = angles_from_geometry(params.ris_pos, params.bs_pos);
        const Direction to_ap = angles_from_geometry(params.ris_pos, params.ap_pos);
        if (!in_half_plane(to_bs.azimuth))
            throw std::invalid_argument("geometry: BS lies behind the RIS (x must not be below the RIS x)");
        if (!in_half_plane(to_ap.azimuth))
            throw std::invalid_argument("geometry: AP lies behind the RIS (x must not be below the RIS x)");

        AngleSet angles;
        angles.bs_ris_azimuth = to_bs.azimuth;
        angles.bs_ris_elevation = to_bs.elevation;
        angles.ris_ap_azimuth = to_ap.azimuth;
        angles.ris_ap_elevation = to_ap.elevation;
        angles.bs_transmit = ula_angle_from_geometry(params.bs_pos, params.ris_pos);
        angles.bs_ap_transmit = ula_angle_from_geometry(params.bs_pos, params.ap_pos);
        return angles;
    }

    AngleSet stochastic_angles(RngStream &rng)
    {
        AngleSet angles;
        angles.bs_ris_azimuth = rng.uniform(-pi / 2.0, pi / 2.0);
        angles.bs_ris_elevation = rng.uniform(-pi / 2.0, pi / 2.0);
        angles.ris_ap_azimuth = rng.uniform(-pi / 2.0, pi / 2.0);
        angles.ris_ap_elevation = rng.uniform(-pi / 2.0, pi / 2.0);
        angles.bs_transmit = rng.uniform(-pi / 2.0, pi / 2.0);
        angles.bs_ap_transmit = rng.uniform(-pi / 2.0, pi / 2.0);
        return angles;
    }

    AngleSet draw_angles(const ScenarioParams &params, RngStream &rng)
    {
        return params.angle_mode == AngleMode::geometric ? geometric_angles(params) : stochastic_angles(rng);
    }

    RicianWeights rician_weights(double kappa)
    {
        if (!(kappa >= 0.0))
            throw std::domain_error("rician_weights: factor must be >= 0");
        if (std::isinf(kappa))
            return {1.0, 0.0};
        return {std::sqrt(kappa / (1.0 + kappa)), std::sqrt(1.0 / (1.0 + kappa))};
    }

    double bs_ris_gain_variance(const ScenarioParams &params)
    {
        return path_loss((params.bs_pos - params.ris_pos).norm(), params.pl_exp_bs_ris, params);
    }

    double ris_ap_gain_variance(const ScenarioParams &params)
    {
        const double exponent = params.paper_literal_pathloss ? -params.pl_exp_ris_ap : params.pl_exp_ris_ap;
        return path_loss((params.ris_pos - params.ap_pos).norm(), exponent, params);
    }

    double direct_gain_variance(const ScenarioParams &params)
    {
        if (!params.direct_link)
            return 0.0;
        return path_loss((params.bs_pos - params.ap_pos).norm(), params.pl_exp_direct, params);
    }

    BsRisLink bs_ris_channel(const ScenarioParams &params, const AngleSet &angles, cdouble alpha)
    {
        const Eigen::VectorXcd ris = steering_upa(angles.bs_ris_azimuth, angles.bs_ris_elevation, params.ris_side);
        const Eigen::VectorXcd bs = steering_ula(angles.bs_transmit, params.num_tx);
        BsRisLink link;
        link.alpha = alpha;
        link.matrix = alpha * ris * bs.adjoint();
        return link;
    }

    BsRisLink bs_ris_channel(const ScenarioParams &params, const AngleSet &angles, RngStream &rng)
    {
        const cdouble alpha = sample_cn(0.0, bs_ris_gain_variance(params), rng);
        return bs_ris_channel(params, angles, alpha);
    }

    NlosState draw_nlos(std::size_t rows, const ScenarioParams &params, double doppler_hz, RngStream &rng)
    {
        JakesProcess proc;
        proc.doppler_hz = doppler_hz;
        proc.slot_duration_s = params.slot_duration_s();
        proc.num_slots = params.num_slots;
        proc.num_sinusoids = params.num_sinusoids;

        NlosState state;
        state.samples.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(params.num_slots));
        for (std::size_t r = 0; r < rows; ++r)
        {
            const auto seq = jakes_sequence(proc, rng);
            for (std::size_t k = 0; k < seq.size(); ++k)
                state.samples(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(k)) = seq[k];
        }
        return state;
    }

    RicianLink ris_ap_channel(std::size_t k, const ScenarioParams &params, const AngleSet &angles,
                              cdouble beta, const NlosState &nlos)
    {
        check_slot(k, params.num_slots);
        const std::size_t n_el = params.num_elements();
        if (std::size_t(nlos.samples.rows()) != n_el || std::size_t(nlos.samples.cols()) < k)
            throw std::invalid_argument("ris_ap_channel: fading state does not match the RIS size");

        const double fd = doppler_frequency(params);
        const RicianWeights w = rician_weights(params.rician_k);
        const cdouble ramp = std::polar(1.0, doppler_phase(k, fd, params.slot_duration_s()));

        RicianLink link;
        link.los = (beta * ramp) * steering_upa(angles.ris_ap_azimuth, angles.ris_ap_elevation, params.ris_side);
        link.nlos = std::sqrt(ris_ap_gain_variance(params)) * nlos.samples.col(static_cast<Eigen::Index>(k - 1));
        link.combined = w.los * link.los + w.nlos * link.nlos;
        return link;
    }

    RicianLink direct_channel(std::size_t k, const ScenarioParams &params, const AngleSet &angles,
                              const NlosState &nlos)
    {
        check_slot(k, params.num_slots);
        const auto m = static_cast<Eigen::Index>(params.num_tx);
        if (nlos.samples.rows() != m || std::size_t(nlos.samples.cols()) < k)
            throw std::invalid_argument("direct_channel: fading state does not match the BS array");

        RicianLink link;
        if (!params.direct_link)
        {
            link.los = Eigen::VectorXcd::Zero(m);
            link.nlos = Eigen::VectorXcd::Zero(m);
            link.combined = Eigen::VectorXcd::Zero(m);
            return link;
        }

        const double amplitude = std::sqrt(direct_gain_variance(params));
        const double ramp_phase = params.direct_los_doppler
                                      ? doppler_phase(k, doppler_frequency(params), params.slot_duration_s())
                                      : 0.0;
        const RicianWeights w = rician_weights(params.rician_k);

        link.los = (amplitude * std::polar(1.0, ramp_phase)) * steering_ula(angles.bs_ap_transmit, params.num_tx);
        link.nlos = amplitude * nlos.samples.col(static_cast<Eigen::Index>(k - 1));
        link.combined = w.los * link.los + w.nlos * link.nlos;
        return link;
    }

    ChannelDrop draw_drop(const ScenarioParams &params, RngStream &rng)
    {
        params.validate();
        ChannelDrop drop;
        drop.doppler_hz = doppler_frequency(params);
        drop.angles = draw_angles(params, rng);
        drop.bs_ris = bs_ris_channel(params, drop.angles, rng);
        drop.beta = sample_cn(0.0, ris_ap_gain_variance(params), rng);
        drop.direct_nlos = draw_nlos(params.num_tx, params, drop.doppler_hz, rng);
        drop.ris_nlos = draw_nlos(params.num_elements(), params, drop.doppler_hz, rng);
        return drop;
    }

    ChannelRealization realize(const ChannelDrop &drop, const ScenarioParams &params, std::size_t k)
    {
        ChannelRealization ch;
        ch.slot_index = k;
        ch.direct = direct_channel(k, params, drop.angles, drop.direct_nlos);
        ch.bs_ris = drop.bs_ris.matrix;
        ch.ris_ap = ris_ap_channel(k, params, drop.angles, drop.beta, drop.ris_nlos);
        ch.path_gain_bs_ris = drop.bs_ris.alpha;
        ch.path_gain_ris_ap = drop.beta;
        ch.doppler_hz = drop.doppler_hz;
        ch.slot_duration_s = params.slot_duration_s();
        ch.weights = rician_weights(params.rician_k);
        return ch;
    }
}

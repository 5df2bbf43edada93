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

#ifndef RISHST_CHANNEL_HPP
#define RISHST_CHANNEL_HPP

#include "rishst/numerics.hpp"

#include <Eigen/Dense>

#include <cstddef>

namespace rishst
{
    inline constexpr double speed_of_light = 299792458.0;

    enum class AngleMode
    {
        geometric,  // angles follow from the node coordinates
        stochastic  // angles drawn uniformly from [-pi/2, pi/2] per drop
    };

    /// Physical constants and geometry of one scenario, all in linear SI units.
    ///
    /// Defaults reproduce the reference high-speed-train setup: 360 km/h at 5 GHz, 100 kHz
    /// bandwidth, -90 dBm noise, 40 dBm transmit power, a 2-antenna BS and a 40 x 40 RIS.
    struct ScenarioParams
    {
        double train_speed_mps = 100.0;
        double carrier_hz = 5.0e9;
        double bandwidth_hz = 1.0e5;
        double noise_power_w = 1.0e-12;
        double tx_power_w = 10.0;
        std::size_t num_tx = 2;
        std::size_t ris_side = 40;      // RIS is ris_side x ris_side
        double frame_s = 3.0e-3;
        std::size_t num_slots = 100;    // slots per frame
        double rician_k = 3.0;          // may be +inf (pure LOS)
        double ref_loss = 1.0e-3;       // path gain at the reference distance
        double ref_distance_m = 1.0;
        double pl_exp_direct = 3.8;
        double pl_exp_bs_ris = 2.2;
        double pl_exp_ris_ap = 2.8;
        Eigen::Vector3d bs_pos{0.0, 0.0, 30.0};
        Eigen::Vector3d ris_pos{0.0, 300.0, 30.0};
        Eigen::Vector3d ap_pos{20.0, 300.0, 0.0};
        double cap_gap = 1.25;          // SNR gap to capacity, >= 1
        double snr_threshold = 10.0;    // outage threshold (linear)
        AngleMode angle_mode = AngleMode::geometric;
        std::size_t num_sinusoids = 64; // Jakes generator size

        bool paper_literal_pathloss = false; // RIS-AP variance grows with distance when set
        bool direct_los_doppler = true;      // Doppler ramp on the direct LOS term
        bool direct_link = true;             // false zeroes the BS-AP link

        std::size_t num_elements() const noexcept { return ris_side * ris_side; }
        double slot_duration_s() const noexcept { return frame_s / double(num_slots); }

        /// Throws std::invalid_argument naming the offending field.
        void validate() const;
    };

    struct AngleSet
    {
        double bs_ris_azimuth = 0.0;   // arrival at the RIS from the BS
        double bs_ris_elevation = 0.0;
        double ris_ap_azimuth = 0.0;   // departure from the RIS towards the AP
        double ris_ap_elevation = 0.0;
        double bs_transmit = 0.0;      // BS array angle towards the RIS
        double bs_ap_transmit = 0.0;   // BS array angle towards the AP (direct LOS)
    };

    struct Direction
    {
        double azimuth = 0.0;
        double elevation = 0.0;
    };

    struct RicianWeights
    {
        double los = 1.0;
        double nlos = 0.0;
    };

    /// Rician link split into its unweighted parts: combined = w_los * los + w_nlos * nlos.
    struct RicianLink
    {
        Eigen::VectorXcd combined;
        Eigen::VectorXcd los;
        Eigen::VectorXcd nlos;
    };

    struct BsRisLink
    {
        Eigen::MatrixXcd matrix; // N_I x M, rank one
        cdouble alpha{0.0, 0.0};
    };

    // Unit-power fading samples, one row per antenna/element and one column per slot
    struct NlosState
    {
        Eigen::MatrixXcd samples;
    };

    /// Everything random about one drop: angles, path gains and the fading processes.
    struct ChannelDrop
    {
        AngleSet angles;
        BsRisLink bs_ris;
        cdouble beta{0.0, 0.0};
        NlosState direct_nlos;
        NlosState ris_nlos;
        double doppler_hz = 0.0;
    };

    /// Channel state of one slot.
    struct ChannelRealization
    {
        std::size_t slot_index = 1;      // k, 1-based
        RicianLink direct;               // length M
        Eigen::MatrixXcd bs_ris;         // N_I x M
        RicianLink ris_ap;               // length N_I
        cdouble path_gain_bs_ris{0.0, 0.0};
        cdouble path_gain_ris_ap{0.0, 0.0};
        double doppler_hz = 0.0;
        double slot_duration_s = 0.0;
        RicianWeights weights;

        std::size_t num_tx() const noexcept { return std::size_t(bs_ris.cols()); }
        std::size_t num_elements() const noexcept { return std::size_t(ris_ap.combined.size()); }
    };

    /// f_d = v f_c / c.
    double doppler_frequency(const ScenarioParams &params);

    /// ULA response, entry i = exp(j pi i sin(angle)).
    Eigen::VectorXcd steering_ula(double angle, std::size_t m);

    /// UPA response a_y(az, el) kron a_z(el) of length n^2.
    Eigen::VectorXcd steering_upa(double azimuth, double elevation, std::size_t n);

    /// C0 (d / d0)^(-exponent); distances below d0 are rejected.
    double path_loss(double distance_m, double exponent, const ScenarioParams &params);

    /// Azimuth and elevation of b as seen from a, measured from the +x broadside.
    ///
    /// Azimuth is atan2(dy, dx) in (-pi, pi], elevation is the angle above the horizontal
    /// plane in [-pi/2, pi/2]. Azimuths outside [-pi/2, pi/2] lie behind a y-z array.
    Direction angles_from_geometry(const Eigen::Vector3d &a, const Eigen::Vector3d &b);

    /// Angle of b seen from a for an x-axis ULA, asin of the x direction cosine.
    double ula_angle_from_geometry(const Eigen::Vector3d &a, const Eigen::Vector3d &b);

    /// Angles from the scenario coordinates; back-lobe geometry raises std::invalid_argument.
    AngleSet geometric_angles(const ScenarioParams &params);

    /// Every angle uniform on [-pi/2, pi/2].
    AngleSet stochastic_angles(RngStream &rng);

    AngleSet draw_angles(const ScenarioParams &params, RngStream &rng);

    RicianWeights rician_weights(double kappa);

    /// Variance of the BS-RIS path gain alpha.
    double bs_ris_gain_variance(const ScenarioParams &params);

    /// Variance of the RIS-AP path gain beta.
    double ris_ap_gain_variance(const ScenarioParams &params);

    /// Mean power per antenna of the direct link.
    double direct_gain_variance(const ScenarioParams &params);

    /// G = alpha (a_y kron a_z)(theta1, phi1) a_BS(bs_transmit)^H with a given alpha.
    BsRisLink bs_ris_channel(const ScenarioParams &params, const AngleSet &angles, cdouble alpha);

    /// Same, with alpha ~ CN(0, bs_ris_gain_variance) drawn from rng.
    BsRisLink bs_ris_channel(const ScenarioParams &params, const AngleSet &angles, RngStream &rng);

    /// Unit-power Jakes processes for `rows` independent branches over all slots.
    NlosState draw_nlos(std::size_t rows, const ScenarioParams &params, double doppler_hz, RngStream &rng);

    /// RIS-AP link in slot k (1-based) from the drop-level beta and fading state.
    RicianLink ris_ap_channel(std::size_t k, const ScenarioParams &params, const AngleSet &angles,
                              cdouble beta, const NlosState &nlos);

    /// BS-AP link in slot k (1-based) from the drop-level fading state.
    RicianLink direct_channel(std::size_t k, const ScenarioParams &params, const AngleSet &angles,
                              const NlosState &nlos);

    /// Draws one drop. Order of draws: angles, alpha, beta, direct fading, RIS fading.
    ChannelDrop draw_drop(const ScenarioParams &params, RngStream &rng);

    ChannelRealization realize(const ChannelDrop &drop, const ScenarioParams &params, std::size_t k);
}

#endif

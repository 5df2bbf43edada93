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

#ifndef RISHST_OPTIMIZER_HPP
#define RISHST_OPTIMIZER_HPP

#include "rishst/channel.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace rishst
{
    /// Thrown when a beamformer cannot be formed because the composite channel vanishes.
    class DegenerateChannelError : public std::runtime_error
    {
    public:
        explicit DegenerateChannelError(const std::string &what) : std::runtime_error(what) {}
    };

    enum class NoRisMode
    {
        remove,         // cascaded path excluded entirely
        identity_phase  // RIS present with all phases zero (specular reflection)
    };

    /// RIS phases and transmit beam for one slot.
    ///
    /// With ris_active == false the cascaded path is switched off and `phases` is ignored.
    struct BeamformingState
    {
        Eigen::VectorXd phases;   // [0, 2 pi), length N_I
        Eigen::VectorXcd tx_beam; // length M, ||w||^2 <= P
        bool ris_active = true;
    };

    struct BcdTrace
    {
        std::vector<double> objective_per_iteration;
        std::size_t iterations_used = 0;
        bool converged = false;
    };

    /// Scalars of the aligned end-to-end channel, effective = cascaded * e^{j phase} + direct.
    struct AlignmentScalars
    {
        cdouble cascaded_scalar{0.0, 0.0};
        double alignment_phase = 0.0;
        cdouble effective_channel{0.0, 0.0};
    };

    struct BcdResult
    {
        BeamformingState state;
        BcdTrace trace;
        AlignmentScalars scalars;
    };

    /// Row channel h_r^H diag(e^{j phases}) G + h_d^H.
    Eigen::RowVectorXcd composite_channel(const ChannelRealization &ch, const Eigen::VectorXd &phases,
                                          bool ris_active = true);

    /// F = |(h_r^H Phi G + h_d^H) w|^2.
    double channel_gain(const BeamformingState &state, const ChannelRealization &ch);

    /// RIS phases that co-phase the LOS cascaded terms and cancel the slot-k Doppler rotation.
    ///
    /// The per-element products u_n = conj(a_n) e^{-j 2 pi k f_d T_c} (G w)_n are rotated onto the
    /// real axis, so the LOS cascaded scalar becomes conj(beta) * sum |u_n| for every k. Only the
    /// phase of u_n is kept; for a rank-one G all |u_n| are equal anyway.
    Eigen::VectorXd doppler_phase_step(std::size_t k, const ChannelRealization &ch, const Eigen::VectorXcd &w,
                                       const AngleSet &angles);

    /// Common rotation that aligns the cascaded scalar with the direct scalar (arg(0) = 0).
    double alignment_phase_step(cdouble cascaded, cdouble direct);

    /// Doppler step followed by the global alignment rotation; phases wrapped into [0, 2 pi).
    Eigen::VectorXd optimize_phases(std::size_t k, const ChannelRealization &ch, const Eigen::VectorXcd &w,
                                    const AngleSet &angles);

    /// Same as optimize_phases, also returning the alignment scalars for the beam w.
    Eigen::VectorXd optimize_phases(std::size_t k, const ChannelRealization &ch, const Eigen::VectorXcd &w,
                                    const AngleSet &angles, AlignmentScalars &scalars);

    /// sqrt(P) h^H / ||h|| for the composite channel h; throws DegenerateChannelError when h = 0.
    Eigen::VectorXcd mrt_beamformer(const Eigen::RowVectorXcd &composite, double power);

    Eigen::VectorXcd mrt_beamformer(const ChannelRealization &ch, const Eigen::VectorXd &phases, double power);

    struct BcdOptions
    {
        double tol = 1e-8;
        std::size_t max_iter = 50;
    };

    /// Alternates the phase block and the MRT block until the relative objective change
    /// falls below tol or max_iter iterations have run. The trace is non-decreasing.
    BcdResult bcd_optimize(std::size_t k, const ChannelRealization &ch, const AngleSet &angles, double power,
                           double tol = 1e-8, std::size_t max_iter = 50);

    /// Uniform phases on [0, 2 pi).
    Eigen::VectorXd random_phases(std::size_t n, RngStream &rng);

    /// MRT against the composite channel formed with fixed (random) phases.
    BeamformingState baseline_random_phase(const ChannelRealization &ch, double power, const Eigen::VectorXd &phases);

    BeamformingState baseline_random_phase(const ChannelRealization &ch, double power, RngStream &rng);

    BeamformingState baseline_no_ris(const ChannelRealization &ch, double power, NoRisMode mode = NoRisMode::remove);

    /// Scalars of an arbitrary state: cascaded = h_r^H Phi G w, zero extra rotation.
    AlignmentScalars alignment_scalars(const BeamformingState &state, const ChannelRealization &ch);
}

#endif

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

#include "rishst/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace rishst
{
    namespace
    {
        void check_dimensions(const ChannelRealization &ch, Eigen::Index phases, Eigen::Index beam, bool ris_active)
        {
            const auto n_el = static_cast<Eigen::Index>(ch.num_elements());
            const auto m = static_cast<Eigen::Index>(ch.num_tx());
            if (ch.bs_ris.rows() != n_el || ch.direct.combined.size() != m)
                throw std::domain_error("channel realization has inconsistent dimensions");
            if (ris_active && phases != n_el)
                throw std::domain_error("phase vector length " + std::to_string(phases) + " does not match " +
                                        std::to_string(n_el) + " RIS elements");
            if (beam >= 0 && beam != m)
                throw std::domain_error("beam length " + std::to_string(beam) + " does not match " +
                                        std::to_string(m) + " transmit antennas");
        }

        std::size_t ris_side_of(std::size_t n_el)
        {
            const auto side = std::size_t(std::llround(std::sqrt(double(n_el))));
            if (side * side != n_el)
                throw std::domain_error("RIS element count " + std::to_string(n_el) + " is not a perfect square");
            return side;
        }

        // h_r^H diag(e^{j phases}) g for a column g = G w
        cdouble cascaded_scalar(const Eigen::VectorXcd &h_r, const Eigen::VectorXd &phases, const Eigen::VectorXcd &gw)
        {
            cdouble acc(0.0, 0.0);
            for (Eigen::Index n = 0; n < h_r.size(); ++n)
                acc += std::conj(h_r[n]) * std::polar(1.0, phases[n]) * gw[n];
            return acc;
        }
    }

    Eigen::RowVectorXcd composite_channel(const ChannelRealization &ch, const Eigen::VectorXd &phases, bool ris_active)
    {
        check_dimensions(ch, phases.size(), -1, ris_active);
        Eigen::RowVectorXcd h = ch.direct.combined.adjoint();
        if (!ris_active || ch.num_elements() == 0)
            return h;

        Eigen::VectorXcd reflected(ch.ris_ap.combined.size());
        for (Eigen::Index n = 0; n < reflected.size(); ++n)
            reflected[n] = std::conj(ch.ris_ap.combined[n]) * std::polar(1.0, phases[n]);
        h += reflected.transpose() * ch.bs_ris;
        return h;
    }

    double channel_gain(const BeamformingState &state, const ChannelRealization &ch)
    {
        check_dimensions(ch, state.phases.size(), state.tx_beam.size(), state.ris_active);
        const cdouble y = composite_channel(ch, state.phases, state.ris_active) * state.tx_beam;
        return std::norm(y);
    }

    Eigen::VectorXd doppler_phase_step(std::size_t k, const ChannelRealization &ch, const Eigen::VectorXcd &w,
                                       const AngleSet &angles)
    {
        check_dimensions(ch, static_cast<Eigen::Index>(ch.num_elements()), w.size(), true);
        if (w.squaredNorm() == 0.0)
            throw std::domain_error("doppler_phase_step: zero transmit beam");

        const std::size_t n_el = ch.num_elements();
        Eigen::VectorXd phases(static_cast<Eigen::Index>(n_el));
        if (n_el == 0)
            return phases;

        const Eigen::VectorXcd a = steering_upa(angles.ris_ap_azimuth, angles.ris_ap_elevation, ris_side_of(n_el));
        const Eigen::VectorXcd gw = ch.bs_ris * w;
        const double doppler = two_pi * double(k) * ch.doppler_hz * ch.slot_duration_s;
        const cdouble unramp = std::polar(1.0, -doppler);

        for (std::size_t n = 0; n < n_el; ++n)
        {
            const auto i = static_cast<Eigen::Index>(n);
            const cdouble u = std::conj(a[i]) * unramp * gw[i];
            phases[i] = wrap_phase(-safe_arg(u));
        }
        return phases;
    }

    double alignment_phase_step(cdouble cascaded, cdouble direct)
    {
        return -(safe_arg(cascaded) - safe_arg(direct));
    }

    Eigen::VectorXd optimize_phases(std::size_t k, const ChannelRealization &ch, const Eigen::VectorXcd &w,
                                    const AngleSet &angles, AlignmentScalars &scalars)
    {
        Eigen::VectorXd phases = doppler_phase_step(k, ch, w, angles);

        const Eigen::VectorXcd gw = ch.bs_ris * w;
        const cdouble cascaded = cascaded_scalar(ch.ris_ap.combined, phases, gw);
        const cdouble direct = ch.direct.combined.dot(w); // h_d^H w
        const double eps = alignment_phase_step(cascaded, direct);

        for (Eigen::Index n = 0; n < phases.size(); ++n)
            phases[n] = wrap_phase(phases[n] + eps);

        scalars.cascaded_scalar = cascaded;
        scalars.alignment_phase = eps;
        scalars.effective_channel = cascaded * std::polar(1.0, eps) + direct;
        return phases;
    }

    Eigen::VectorXd optimize_phases(std::size_t k, const ChannelRealization &ch, const Eigen::VectorXcd &w,
                                    const AngleSet &angles)
    {
        AlignmentScalars ignored;
        return optimize_phases(k, ch, w, angles, ignored);
    }

    Eigen::VectorXcd mrt_beamformer(const Eigen::RowVectorXcd &composite, double power)
    {
        if (!(power > 0.0))
            throw std::domain_error("mrt_beamformer: power must be positive");
        const double norm = composite.norm();
        if (!(norm > 0.0) || !std::isfinite(norm))
            throw DegenerateChannelError("mrt_beamformer: composite channel is zero");
        return (std::sqrt(power) / norm) * composite.adjoint();
    }

    Eigen::VectorXcd mrt_beamformer(const ChannelRealization &ch, const Eigen::VectorXd &phases, double power)
    {
        return mrt_beamformer(composite_channel(ch, phases), power);
    }

    BcdResult bcd_optimize(std::size_t k, const ChannelRealization &ch, const AngleSet &angles, double power,
                           double tol, std::size_t max_iter)
    {
        if (!(power > 0.0))
            throw std::domain_error("bcd_optimize: power must be positive");
        if (!(tol > 0.0))
            throw std::domain_error("bcd_optimize: tolerance must be positive");
        if (max_iter < 1)
            throw std::domain_error("bcd_optimize: need at least one iteration");

        const auto m = static_cast<Eigen::Index>(ch.num_tx());
        Eigen::VectorXcd w;
        const Eigen::RowVectorXcd direct_row = ch.direct.combined.adjoint();
        if (direct_row.norm() > 0.0)
            w = mrt_beamformer(direct_row, power);
        else
        {
            w = Eigen::VectorXcd::Zero(m);
            w[0] = std::sqrt(power);
        }

        BcdResult result;
        AlignmentScalars scalars;
        Eigen::VectorXd phases = optimize_phases(k, ch, w, angles, scalars);

        // Objective after the first phase update, before any MRT update.
        double previous = std::norm((composite_channel(ch, phases) * w).value());

        for (std::size_t it = 1; it <= max_iter; ++it)
        {
            if (it > 1)
                phases = optimize_phases(k, ch, w, angles, scalars);

            const Eigen::RowVectorXcd h = composite_channel(ch, phases);
            const Eigen::VectorXcd w_next = mrt_beamformer(h, power);
            const double objective = std::norm((h * w_next).value());

            // The rotation family searched by the phase block contains the previous iterate,
            // so a decrease here is rounding noise at the fixed point.
            if (it > 1 && objective < previous)
            {
                result.trace.converged = true;
                break;
            }

            result.state.phases = phases;
            result.state.tx_beam = w_next;
            result.state.ris_active = true;
            result.trace.objective_per_iteration.push_back(objective);

            const bool small_change =
                std::abs(objective - previous) <= tol * std::max(previous, std::numeric_limits<double>::min());
            previous = objective;
            w = w_next;

            // Scalars at the accepted state, measured with its own beam.
            const Eigen::VectorXd pre_rotation = [&]
            {
                Eigen::VectorXd p = phases;
                for (Eigen::Index n = 0; n < p.size(); ++n)
                    p[n] = wrap_phase(p[n] - scalars.alignment_phase);
                return p;
            }();
            const Eigen::VectorXcd gw = ch.bs_ris * w_next;
            result.scalars.cascaded_scalar = cascaded_scalar(ch.ris_ap.combined, pre_rotation, gw);
            result.scalars.alignment_phase = scalars.alignment_phase;
            result.scalars.effective_channel = (h * w_next).value();

            if (small_change)
            {
                result.trace.converged = true;
                break;
            }
        }
        result.trace.iterations_used = result.trace.objective_per_iteration.size();
        return result;
    }

    Eigen::VectorXd random_phases(std::size_t n, RngStream &rng)
    {
        Eigen::VectorXd phases(static_cast<Eigen::Index>(n));
        for (std::size_t i = 0; i < n; ++i)
            phases[static_cast<Eigen::Index>(i)] = rng.uniform(0.0, two_pi);
        return phases;
    }

    BeamformingState baseline_random_phase(const ChannelRealization &ch, double power, const Eigen::VectorXd &phases)
    {
        BeamformingState state;
        state.phases = phases;
        state.tx_beam = mrt_beamformer(ch, phases, power);
        state.ris_active = true;
        return state;
    }

    BeamformingState baseline_random_phase(const ChannelRealization &ch, double power, RngStream &rng)
    {
        return baseline_random_phase(ch, power, random_phases(ch.num_elements(), rng));
    }

    BeamformingState baseline_no_ris(const ChannelRealization &ch, double power, NoRisMode mode)
    {
        BeamformingState state;
        state.phases = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(ch.num_elements()));
        if (mode == NoRisMode::remove)
        {
            const Eigen::RowVectorXcd direct_row = ch.direct.combined.adjoint();
            if (!(direct_row.norm() > 0.0))
                throw DegenerateChannelError("baseline_no_ris: direct channel is zero");
            state.tx_beam = mrt_beamformer(direct_row, power);
            state.ris_active = false;
        }
        else
        {
            state.tx_beam = mrt_beamformer(ch, state.phases, power);
            state.ris_active = true;
        }
        return state;
    }

    AlignmentScalars alignment_scalars(const BeamformingState &state, const ChannelRealization &ch)
    {
        check_dimensions(ch, state.phases.size(), state.tx_beam.size(), state.ris_active);
        AlignmentScalars s;
        const cdouble direct = ch.direct.combined.dot(state.tx_beam);
        if (state.ris_active && ch.num_elements() > 0)
            s.cascaded_scalar = cascaded_scalar(ch.ris_ap.combined, state.phases, ch.bs_ris * state.tx_beam);
        s.alignment_phase = 0.0;
        s.effective_channel = s.cascaded_scalar + direct;
        return s;
    }
}

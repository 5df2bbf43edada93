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

#ifndef RISHST_NUMERICS_HPP
#define RISHST_NUMERICS_HPP

#include <complex>
#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace rishst
{
    using cdouble = std::complex<double>;

    inline constexpr double pi = 3.141592653589793238462643383279502884;
    inline constexpr double two_pi = 2.0 * pi;

    /// Reproducible random stream keyed by (seed, stream_id).
    ///
    /// The two keys are mixed through std::seed_seq, so every trial of a Monte Carlo run owns
    /// an independent generator and results do not depend on the order in which trials are
    /// executed. A stream must not be shared between threads; copy or move it instead.
    class RngStream
    {
    public:
        RngStream(std::uint64_t seed, std::uint64_t stream_id);

        std::uint64_t seed() const noexcept { return seed_; }
        std::uint64_t stream_id() const noexcept { return stream_id_; }

        double uniform();                       // [0, 1)
        double uniform(double lo, double hi);   // [lo, hi)
        double normal();                        // N(0, 1)

    private:
        std::uint64_t seed_;
        std::uint64_t stream_id_;
        std::mt19937_64 engine_;
        std::normal_distribution<double> normal_{0.0, 1.0};
    };

    // Parameters of a sum-of-sinusoids fading process with Jakes (Clarke) spectrum
    struct JakesProcess
    {
        double doppler_hz = 0.0;         // maximum Doppler shift f_d
        double slot_duration_s = 0.0;    // sample spacing T_c
        std::size_t num_slots = 1;       // K
        std::size_t num_sinusoids = 64;  // >= 8
    };

    /// Gaussian tail probability P(Z > x) for a standard normal Z.
    double gaussian_q(double x);

    /// First-order Marcum Q-function Q1(a, b).
    ///
    /// Uses the Neumann series in modified Bessel functions while a*b <= 30 and an adaptive
    /// Gauss-Kronrod integration of the Rician density for larger products. When a > b the
    /// complementary form is evaluated so that values close to one keep their absolute
    /// accuracy. The result is clamped to [0, 1].
    double marcum_q1(double a, double b);

    /// Bessel function of the first kind, order zero.
    double bessel_j0(double x);

    /// Exponentially scaled modified Bessel function exp(-|x|) * I_n(x) for x >= 0.
    double bessel_i_scaled(unsigned n, double x);

    /// One draw from CN(mean, variance).
    cdouble sample_cn(cdouble mean, double variance, RngStream &rng);

    /// K samples (at t = k * T_c, k = 1..K) of a unit-power sum-of-sinusoids fading process.
    ///
    /// Arrival angles and initial phases are drawn uniformly per call, which makes the
    /// ensemble autocorrelation equal J0(2 pi f_d tau).
    std::vector<cdouble> jakes_sequence(const JakesProcess &proc, RngStream &rng);

    /// Clamps a floating-point probability into [0, 1].
    constexpr double clamp_probability(double p) noexcept
    {
        return p < 0.0 ? 0.0 : (p > 1.0 ? 1.0 : p);
    }

    /// Phase of z in (-pi, pi], with arg(0) = 0.
    inline double safe_arg(cdouble z) noexcept
    {
        return (z.real() == 0.0 && z.imag() == 0.0) ? 0.0 : std::arg(z);
    }

    /// Wraps a phase into [0, 2 pi).
    double wrap_phase(double phi) noexcept;
}

#endif

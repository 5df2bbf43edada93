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

#include "rishst/numerics.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace rishst
{
    namespace
    {
        void require_finite(double x, const char *what)
        {
            if (!std::isfinite(x))
                throw std::domain_error(std::string(what) + ": argument must be finite");
        }

        // Above this argument std::cyl_bessel_i(n, x) approaches the double range.
        constexpr double bessel_asymptotic_limit = 600.0;

        // Switch from the Bessel series to quadrature when a * b exceeds this value.
        constexpr double marcum_series_limit = 30.0;

        double marcum_series(double a, double b)
        {
            const double x = a * b;
            const double envelope = std::exp(-0.5 * (a - b) * (a - b));

            if (a < b)
            {
                // Q1 = exp(-(a^2 + b^2) / 2) * sum_{k >= 0} (a / b)^k I_k(ab)
                const double ratio = a / b;
                double power = 1.0, sum = 0.0;
                for (unsigned k = 0; k < 2000; ++k)
                {
                    const double term = power * bessel_i_scaled(k, x);
                    sum += term;
                    if (term < 1e-18 * (sum > 1e-300 ? sum : 1.0) && double(k) > x)
                        break;
                    power *= ratio;
                }
                return envelope * sum;
            }

            // Q1 = 1 - exp(-(a^2 + b^2) / 2) * sum_{k >= 1} (b / a)^k I_k(ab)
            const double ratio = b / a;
            double power = ratio, sum = 0.0;
            for (unsigned k = 1; k < 2000; ++k)
            {
                const double term = power * bessel_i_scaled(k, x);
                sum += term;
                if (term < 1e-18 * (sum > 1e-300 ? sum : 1.0) && double(k) > x)
                    break;
                power *= ratio;
            }
            return 1.0 - envelope * sum;
        }

        double marcum_quadrature(double a, double b)
        {
            // Rician density in scaled form: t exp(-(t - a)^2 / 2) e^{-at} I0(at)
            auto density = [a](double t)
            {
                return t * std::exp(-0.5 * (t - a) * (t - a)) * bessel_i_scaled(0, a * t);
            };
            using boost::math::quadrature::gauss_kronrod;
            constexpr unsigned depth = 20;
            constexpr double tol = 1e-14;

            if (b >= a)
            {
                double upper = gauss_kronrod<double, 31>::integrate(density, b, b + 10.0, depth, tol);
                upper += gauss_kronrod<double, 31>::integrate(density, b + 10.0, b + 40.0, depth, tol);
                return upper;
            }
            const double lo = b > 40.0 ? b - 40.0 : 0.0;
            const double mid = b > 10.0 ? b - 10.0 : lo;
            double lower = gauss_kronrod<double, 31>::integrate(density, mid, b, depth, tol);
            if (mid > lo)
                lower += gauss_kronrod<double, 31>::integrate(density, lo, mid, depth, tol);
            return 1.0 - lower;
        }
    }

    RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
        : seed_(seed), stream_id_(stream_id)
    {
        std::seed_seq seq{std::uint32_t(seed & 0xffffffffu), std::uint32_t(seed >> 32),
                          std::uint32_t(stream_id & 0xffffffffu), std::uint32_t(stream_id >> 32),
                          0x52495348u};
        engine_.seed(seq);
    }

    double RngStream::uniform()
    {
        return double(engine_() >> 11) * 0x1.0p-53;
    }

    double RngStream::uniform(double lo, double hi)
    {
        return lo + (hi - lo) * uniform();
    }

    double RngStream::normal()
    {
        return normal_(engine_);
    }

    double gaussian_q(double x)
    {
        require_finite(x, "gaussian_q");
        return clamp_probability(0.5 * std::erfc(x / std::sqrt(2.0)));
    }

    double bessel_j0(double x)
    {
        require_finite(x, "bessel_j0");
        return std::cyl_bessel_j(0.0, std::abs(x));
    }

    double bessel_i_scaled(unsigned n, double x)
    {
        if (!(x >= 0.0))
            throw std::domain_error("bessel_i_scaled: argument must be non-negative");
        if (x == 0.0)
            return n == 0 ? 1.0 : 0.0;
        if (x <= bessel_asymptotic_limit)
            return std::cyl_bessel_i(double(n), x) * std::exp(-x);

        // Hankel expansion, e^{-x} I_n(x) ~ (2 pi x)^{-1/2} sum_j (-1)^j prod (mu - (2i-1)^2) / (j! (8x)^j)
        const double mu = 4.0 * double(n) * double(n);
        double term = 1.0, sum = 1.0;
        for (int j = 1; j < 30; ++j)
        {
            const double odd = 2.0 * j - 1.0;
            term *= -(mu - odd * odd) / (double(j) * 8.0 * x);
            sum += term;
            if (std::abs(term) < 1e-17 * std::abs(sum))
                break;
        }
        return sum / std::sqrt(two_pi * x);
    }

    double marcum_q1(double a, double b)
    {
        if (!(a >= 0.0) || !(b >= 0.0))
            throw std::domain_error("marcum_q1: arguments must be non-negative");
        if (std::isinf(a) || std::isinf(b))
        {
            if (std::isinf(b))
                return std::isinf(a) ? 0.5 : 0.0;
            return 1.0;
        }
        if (b == 0.0)
            return 1.0;
        if (a == 0.0)
            return std::exp(-0.5 * b * b);

        const double q = (a * b <= marcum_series_limit) ? marcum_series(a, b) : marcum_quadrature(a, b);
        return clamp_probability(q);
    }

    cdouble sample_cn(cdouble mean, double variance, RngStream &rng)
    {
        if (!(variance >= 0.0))
            throw std::domain_error("sample_cn: variance must be non-negative");
        if (variance == 0.0)
            return mean;
        const double sigma = std::sqrt(0.5 * variance);
        const double re = rng.normal();
        const double im = rng.normal();
        return mean + sigma * cdouble(re, im);
    }

    std::vector<cdouble> jakes_sequence(const JakesProcess &proc, RngStream &rng)
    {
        if (proc.num_slots == 0)
            throw std::domain_error("jakes_sequence: number of slots must be positive");
        if (proc.num_sinusoids < 8)
            throw std::domain_error("jakes_sequence: at least 8 sinusoids are required");
        if (!(proc.doppler_hz >= 0.0) || !std::isfinite(proc.doppler_hz))
            throw std::domain_error("jakes_sequence: Doppler frequency must be finite and non-negative");
        if (!(proc.slot_duration_s >= 0.0) || !std::isfinite(proc.slot_duration_s))
            throw std::domain_error("jakes_sequence: slot duration must be finite and non-negative");

        // Re-anchor the phasor recursion periodically to bound rounding drift.
        constexpr std::size_t anchor_every = 64;

        const std::size_t n_slots = proc.num_slots;
        const std::size_t n_sin = proc.num_sinusoids;
        std::vector<double> phase(n_sin), advance(n_sin), step_re(n_sin), step_im(n_sin), re(n_sin), im(n_sin);
        for (std::size_t s = 0; s < n_sin; ++s)
        {
            const double arrival = rng.uniform(0.0, two_pi);
            phase[s] = rng.uniform(0.0, two_pi);
            advance[s] = two_pi * proc.doppler_hz * std::cos(arrival) * proc.slot_duration_s;
            step_re[s] = std::cos(advance[s]);
            step_im[s] = std::sin(advance[s]);
        }

        // All sinusoids advance together so the recursion chains are independent. Real
        // arithmetic throughout; std::complex multiplication carries NaN recovery code.
        std::vector<double> acc_re(n_slots, 0.0), acc_im(n_slots, 0.0);
        for (std::size_t k = 0; k < n_slots; ++k)
        {
            if (k % anchor_every == 0)
                for (std::size_t s = 0; s < n_sin; ++s)
                {
                    const double theta = phase[s] + advance[s] * double(k + 1);
                    re[s] = std::cos(theta);
                    im[s] = std::sin(theta);
                }
            double sum_re = 0.0, sum_im = 0.0;
            for (std::size_t s = 0; s < n_sin; ++s)
            {
                sum_re += re[s];
                sum_im += im[s];
                const double next_re = re[s] * step_re[s] - im[s] * step_im[s];
                im[s] = re[s] * step_im[s] + im[s] * step_re[s];
                re[s] = next_re;
            }
            acc_re[k] = sum_re;
            acc_im[k] = sum_im;
        }
        const double scale = 1.0 / std::sqrt(double(proc.num_sinusoids));
        std::vector<cdouble> out(n_slots);
        for (std::size_t k = 0; k < n_slots; ++k)
            out[k] = cdouble(acc_re[k] * scale, acc_im[k] * scale);
        return out;
    }

    double wrap_phase(double phi) noexcept
    {
        double r = std::fmod(phi, two_pi);
        if (r < 0.0)
            r += two_pi;
        if (r >= two_pi)
            r = 0.0;
        return r;
    }
}

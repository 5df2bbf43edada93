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

#include "oracles.hpp"

#include <boost/math/distributions/non_central_chi_squared.hpp>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace oracle
{
    double marcum_q1_chi2(double a, double b)
    {
        if (b == 0.0)
            return 1.0;
        if (a == 0.0)
            return std::exp(-0.5 * b * b);
        const boost::math::non_central_chi_squared dist(2.0, a * a);
        return boost::math::cdf(boost::math::complement(dist, b * b));
    }

    long double bessel_i0_scaled_series(long double x)
    {
        if (x == 0.0L)
            return 1.0L;
        if (x > 11000.0L)
            throw std::domain_error("bessel_i0_scaled_series: exp(-x) underflows");
        // e^{-x} sum_k ((x/2)^2)^k / (k!)^2, terms by recurrence from e^{-x}
        const long double q = x * x / 4.0L;
        long double term = std::exp(-x), sum = term;
        for (int k = 1;; ++k)
        {
            term *= q / (static_cast<long double>(k) * k);
            sum += term;
            if (k > x && term < 1e-22L * sum)
                break;
        }
        return sum;
    }

    long double marcum_q1_quadrature(long double a, long double b, std::size_t panels)
    {
        // Integrand t exp(-(t - a)^2 / 2) [exp(-a t) I0(a t)]; mass sits within ~40 of t = a.
        auto f = [a](long double t)
        { return t * std::exp(-0.5L * (t - a) * (t - a)) * bessel_i0_scaled_series(a * t); };

        auto simpson = [&](long double lo, long double hi)
        {
            if (hi <= lo)
                return 0.0L;
            const std::size_t n = panels % 2 == 0 ? panels : panels + 1;
            const long double h = (hi - lo) / n;
            long double s = f(lo) + f(hi);
            for (std::size_t i = 1; i < n; ++i)
                s += f(lo + h * i) * (i % 2 == 1 ? 4.0L : 2.0L);
            return s * h / 3.0L;
        };

        const long double upper = std::max(a, b) + 40.0L;
        if (b >= a)
            return simpson(b, upper);
        return 1.0L - simpson(std::max(0.0L, a - 40.0L), b);
    }

    long double gaussian_q(long double x)
    {
        return 0.5L * std::erfc(x / std::sqrt(2.0L));
    }

    long double bessel_j0_series(long double x)
    {
        const long double q = -(x * x) / 4.0L;
        long double term = 1.0L, sum = 1.0L;
        for (int k = 1; k < 200; ++k)
        {
            term *= q / (static_cast<long double>(k) * k);
            sum += term;
            if (std::fabs(term) < 1e-24L)
                break;
        }
        return sum;
    }

    long double bpsk_snr_for_ber(long double ber)
    {
        long double lo = 0.0L, hi = 100.0L;
        for (int i = 0; i < 200; ++i)
        {
            const long double mid = 0.5L * (lo + hi);
            if (gaussian_q(std::sqrt(2.0L * mid)) > ber)
                lo = mid;
            else
                hi = mid;
        }
        return 0.5L * (lo + hi);
    }

    Eigen::RowVectorXcd naive_composite(const rishst::ChannelRealization &ch, const Eigen::VectorXd &phases)
    {
        const Eigen::Index m = ch.bs_ris.cols();
        const Eigen::Index n = ch.bs_ris.rows();
        Eigen::RowVectorXcd h(m);
        for (Eigen::Index j = 0; j < m; ++j)
        {
            std::complex<double> acc = std::conj(ch.direct.combined[j]);
            for (Eigen::Index i = 0; i < n; ++i)
            {
                // (h_r^H)_i (Phi)_{i,l} G_{l,j}, Phi diagonal
                for (Eigen::Index l = 0; l < n; ++l)
                {
                    const std::complex<double> phi =
                        i == l ? std::complex<double>(std::cos(phases[i]), std::sin(phases[i])) : 0.0;
                    acc += std::conj(ch.ris_ap.combined[i]) * phi * ch.bs_ris(l, j);
                }
            }
            h[j] = acc;
        }
        return h;
    }

    double grid_search_gain(const rishst::ChannelRealization &ch, double power, std::size_t levels)
    {
        const auto n = std::size_t(ch.bs_ris.rows());
        const auto m = ch.bs_ris.cols();
        std::vector<std::complex<double>> lut(levels);
        for (std::size_t q = 0; q < levels; ++q)
        {
            const double phi = 2.0 * M_PI * double(q) / double(levels);
            lut[q] = {std::cos(phi), std::sin(phi)};
        }
        // rows_i = conj(h_r,i) G_i,:
        std::vector<Eigen::RowVectorXcd> rows(n);
        for (std::size_t i = 0; i < n; ++i)
            rows[i] = std::conj(ch.ris_ap.combined[Eigen::Index(i)]) * ch.bs_ris.row(Eigen::Index(i));
        const Eigen::RowVectorXcd base = ch.direct.combined.adjoint();

        std::vector<std::size_t> idx(n, 0);
        double best = 0.0;
        Eigen::RowVectorXcd h(m);
        for (;;)
        {
            h = base;
            for (std::size_t i = 0; i < n; ++i)
                h += lut[idx[i]] * rows[i];
            best = std::max(best, power * h.squaredNorm());

            std::size_t d = 0;
            while (d < n && ++idx[d] == levels)
                idx[d++] = 0;
            if (d == n)
                break;
        }
        return best;
    }
}

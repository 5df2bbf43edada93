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

#include <catch_amalgamated.hpp>

#include "oracles.hpp"
#include "rishst/numerics.hpp"

#include <cmath>
#include <limits>

using Catch::Approx;
using namespace rishst;

namespace
{
    // Frozen from 50-digit evaluations; see tests/oracles.
    constexpr double q1_at_1_2 = 0.26901206003590999668;
    constexpr double q_at_1_2816 = 0.09999150009767516615;
}

TEST_CASE("gaussian_q basic values and identities", "[numerics]")
{
    CHECK(gaussian_q(0.0) == 0.5);
    CHECK(std::abs(gaussian_q(1.2816) - q_at_1_2816) < 1e-12);
    CHECK(std::abs(gaussian_q(1.2816) - 0.1) < 1e-4);

    for (double x = -8.0; x <= 8.0; x += 0.37)
    {
        CHECK(std::abs(gaussian_q(x) + gaussian_q(-x) - 1.0) < 1e-12);
        CHECK(std::abs(gaussian_q(x) - double(oracle::gaussian_q(x))) < 1e-15);
        if (x > -5.0) // below that Q(x) rounds to 1 - 1ulp
            CHECK(gaussian_q(x) > gaussian_q(x + 0.01));
    }
    CHECK_THROWS_AS(gaussian_q(std::numeric_limits<double>::infinity()), std::domain_error);
    CHECK_THROWS_AS(gaussian_q(std::nan("")), std::domain_error);
}

TEST_CASE("frozen oracle values agree with the live oracles", "[numerics][oracle]")
{
    CHECK(std::abs(double(oracle::marcum_q1_quadrature(1.0L, 2.0L)) - q1_at_1_2) < 1e-12);
    CHECK(std::abs(oracle::marcum_q1_chi2(1.0, 2.0) - q1_at_1_2) < 1e-13);
    CHECK(std::abs(double(oracle::gaussian_q(1.2816L)) - q_at_1_2816) < 1e-15);
}

TEST_CASE("marcum_q1 special cases", "[numerics][marcum]")
{
    for (double a : {0.0, 0.5, 3.0, 40.0})
        CHECK(marcum_q1(a, 0.0) == 1.0);
    for (double b : {0.0, 0.3, 1.0, 2.5, 7.0})
        CHECK(std::abs(marcum_q1(0.0, b) - std::exp(-b * b / 2.0)) < 1e-15);
    CHECK(std::abs(marcum_q1(1.0, 2.0) - q1_at_1_2) < 1e-10);
    CHECK_THROWS_AS(marcum_q1(-0.1, 1.0), std::domain_error);
    CHECK_THROWS_AS(marcum_q1(1.0, -0.1), std::domain_error);
}

TEST_CASE("marcum_q1 matches the chi-square oracle on both sides of the switchover", "[numerics][marcum]")
{
    double worst = 0.0;
    for (int i = 0; i < 40; ++i)
        for (int j = 0; j < 40; ++j)
        {
            const double a = 0.35 * i, b = 0.35 * j;
            worst = std::max(worst, std::abs(marcum_q1(a, b) - oracle::marcum_q1_chi2(a, b)));
        }
    CHECK(worst < 1e-9);

    // Large products go through the quadrature branch.
    for (double a : {8.0, 15.0, 30.0})
        for (double b : {a - 3.0, a - 0.5, a, a + 0.5, a + 3.0})
            CHECK(std::abs(marcum_q1(a, b) - oracle::marcum_q1_chi2(a, b)) < 1e-9);
}

TEST_CASE("marcum_q1 is a monotone probability", "[numerics][marcum][property]")
{
    RngStream rng(11, 0);
    for (int trial = 0; trial < 300; ++trial)
    {
        const double a = rng.uniform(0.0, 12.0);
        const double b1 = rng.uniform(0.0, 14.0);
        const double b2 = b1 + rng.uniform(0.0, 3.0);
        const double q1 = marcum_q1(a, b1), q2 = marcum_q1(a, b2);
        CHECK(q1 >= 0.0);
        CHECK(q1 <= 1.0);
        CHECK(q1 >= q2 - 1e-12);
        CHECK(marcum_q1(a + 0.5, b1) >= q1 - 1e-12);
    }
}

TEST_CASE("bessel_j0 against its power series", "[numerics]")
{
    CHECK(bessel_j0(0.0) == 1.0);
    CHECK(std::abs(bessel_j0(2.404826)) < 1e-6);
    for (double x = -15.0; x <= 15.0; x += 0.61)
    {
        CHECK(std::abs(bessel_j0(x) - double(oracle::bessel_j0_series(x))) < 1e-8);
        CHECK(bessel_j0(-x) == bessel_j0(x));
    }
    CHECK_THROWS_AS(bessel_j0(std::numeric_limits<double>::infinity()), std::domain_error);
}

TEST_CASE("bessel_i_scaled against the scaled series", "[numerics]")
{
    for (double x : {0.0, 0.1, 1.0, 5.0, 30.0, 120.0, 599.0})
        CHECK(bessel_i_scaled(0, x) == Approx(double(oracle::bessel_i0_scaled_series(x))).epsilon(1e-12));
    // Asymptotic branch, continuity across the cut-over.
    CHECK(bessel_i_scaled(0, 601.0) == Approx(double(oracle::bessel_i0_scaled_series(601.0))).epsilon(1e-10));
    CHECK(bessel_i_scaled(0, 5000.0) == Approx(double(oracle::bessel_i0_scaled_series(5000.0))).epsilon(1e-10));
}

TEST_CASE("RngStream reproducibility", "[numerics][rng]")
{
    RngStream a(42, 3), b(42, 3), c(42, 4);
    bool differs = false;
    for (int i = 0; i < 1000; ++i)
    {
        const double x = a.uniform();
        CHECK(x == b.uniform());
        CHECK(x >= 0.0);
        CHECK(x < 1.0);
        differs |= x != c.uniform();
    }
    CHECK(differs);
}

TEST_CASE("sample_cn moments", "[numerics][rng]")
{
    RngStream rng(5, 0);
    CHECK(sample_cn({1.5, -2.0}, 0.0, rng) == cdouble(1.5, -2.0));
    CHECK_THROWS_AS(sample_cn(0.0, -1.0, rng), std::domain_error);

    constexpr int n = 1000000;
    double sr = 0, si = 0;
    for (int i = 0; i < n; ++i)
    {
        const cdouble z = sample_cn(0.0, 1.0, rng);
        sr += z.real();
        si += z.imag();
    }
    CHECK(std::abs(sr / n) < 5e-3);
    CHECK(std::abs(si / n) < 5e-3);

    double p = 0, vr = 0;
    for (int i = 0; i < n; ++i)
    {
        const cdouble z = sample_cn(0.0, 2.0, rng);
        p += std::norm(z);
        vr += z.real() * z.real();
    }
    CHECK(std::abs(p / n - 2.0) < 0.04);
    CHECK(std::abs(vr / n - 1.0) < 0.02);
}

TEST_CASE("jakes_sequence statistics follow J0", "[numerics][jakes]")
{
    JakesProcess proc;
    proc.doppler_hz = 1667.82;
    proc.slot_duration_s = 3e-5;
    proc.num_slots = 8;

    constexpr int realizations = 10000;
    std::vector<cdouble> corr(6, 0.0);
    RngStream rng(9, 0);
    for (int r = 0; r < realizations; ++r)
    {
        const auto seq = jakes_sequence(proc, rng);
        REQUIRE(seq.size() == proc.num_slots);
        for (std::size_t lag = 0; lag < corr.size(); ++lag)
            corr[lag] += seq[lag] * std::conj(seq[0]);
    }
    for (std::size_t lag = 0; lag < corr.size(); ++lag)
    {
        const double expected = double(oracle::bessel_j0_series(2.0 * M_PI * proc.doppler_hz * lag * proc.slot_duration_s));
        CHECK(std::abs(corr[lag].real() / realizations - expected) < 0.02);
    }
}

TEST_CASE("jakes_sequence edge cases", "[numerics][jakes]")
{
    JakesProcess proc;
    proc.doppler_hz = 0.0;
    proc.slot_duration_s = 1e-3;
    proc.num_slots = 200;
    RngStream rng(1, 1);
    const auto seq = jakes_sequence(proc, rng);
    for (const auto &z : seq)
        CHECK(std::abs(z - seq[0]) < 1e-12);

    proc.doppler_hz = 900.0;
    RngStream r1(3, 8), r2(3, 8);
    CHECK(jakes_sequence(proc, r1) == jakes_sequence(proc, r2));

    proc.num_slots = 0;
    CHECK_THROWS_AS(jakes_sequence(proc, rng), std::domain_error);
    proc.num_slots = 4;
    proc.num_sinusoids = 4;
    CHECK_THROWS_AS(jakes_sequence(proc, rng), std::domain_error);
}

TEST_CASE("phase helpers", "[numerics]")
{
    CHECK(safe_arg(0.0) == 0.0);
    CHECK(wrap_phase(-0.5) == Approx(2.0 * M_PI - 0.5));
    CHECK(wrap_phase(7.0) == Approx(7.0 - 2.0 * M_PI));
    for (double x = -20.0; x < 20.0; x += 0.77)
    {
        const double w = wrap_phase(x);
        CHECK(w >= 0.0);
        CHECK(w < 2.0 * M_PI);
    }
    CHECK(clamp_probability(-1e-17) == 0.0);
    CHECK(clamp_probability(1.0 + 1e-16) == 1.0);
}

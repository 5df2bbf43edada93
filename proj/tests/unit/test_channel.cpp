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

#include "rishst/channel.hpp"

#include <cmath>
#include <limits>

using Catch::Approx;
using namespace rishst;

TEST_CASE("Doppler frequency of the reference scenario", "[channel]")
{
    ScenarioParams p;
    CHECK(doppler_frequency(p) == Approx(1667.8204759907603).epsilon(1e-14));
    p.train_speed_mps = 0.0;
    CHECK(doppler_frequency(p) == 0.0);
    p.carrier_hz = 0.0;
    CHECK_THROWS_AS(doppler_frequency(p), std::domain_error);
}

TEST_CASE("steering vectors", "[channel]")
{
    const auto ula0 = steering_ula(0.0, 4);
    for (Eigen::Index i = 0; i < 4; ++i)
        CHECK(std::abs(ula0[i] - cdouble(1.0, 0.0)) < 1e-15);

    const auto ula = steering_ula(0.3, 6);
    for (Eigen::Index i = 0; i < 6; ++i)
    {
        CHECK(std::abs(ula[i]) == Approx(1.0).epsilon(1e-15));
        CHECK(std::arg(ula[i] * std::conj(std::polar(1.0, M_PI * double(i) * std::sin(0.3)))) ==
              Approx(0.0).margin(1e-12));
    }

    const double az = 0.4, el = -0.7;
    const std::size_t n = 5;
    const auto upa = steering_upa(az, el, n);
    REQUIRE(upa.size() == Eigen::Index(n * n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < n; ++l)
        {
            const cdouble ay = std::polar(1.0, M_PI * double(i) * std::sin(az) * std::cos(el));
            const cdouble az_ = std::polar(1.0, M_PI * double(l) * std::sin(el));
            CHECK(std::abs(upa[Eigen::Index(i * n + l)] - ay * az_) < 1e-12);
        }
    CHECK_THROWS_AS(steering_ula(0.1, 0), std::domain_error);
    CHECK_THROWS_AS(steering_upa(0.1, 0.1, 0), std::domain_error);
}

TEST_CASE("path loss", "[channel]")
{
    ScenarioParams p;
    CHECK(path_loss(10.0, 2.2, p) == Approx(6.3095734448e-6).epsilon(1e-10));
    CHECK(path_loss(1.0, 3.8, p) == Approx(1e-3));
    CHECK_THROWS_AS(path_loss(0.5, 2.0, p), std::domain_error);
}

TEST_CASE("Rician weights", "[channel]")
{
    const auto w3 = rician_weights(3.0);
    CHECK(w3.los * w3.los == Approx(0.75).epsilon(1e-15));
    CHECK(w3.nlos * w3.nlos == Approx(0.25).epsilon(1e-15));
    const auto winf = rician_weights(std::numeric_limits<double>::infinity());
    CHECK(winf.los == 1.0);
    CHECK(winf.nlos == 0.0);
    const auto w0 = rician_weights(0.0);
    CHECK(w0.los == 0.0);
    CHECK(w0.nlos == 1.0);
    for (double k : {0.1, 1.0, 7.5, 1e6})
    {
        const auto w = rician_weights(k);
        CHECK(w.los * w.los + w.nlos * w.nlos == Approx(1.0).epsilon(1e-12));
    }
    CHECK_THROWS_AS(rician_weights(-1.0), std::domain_error);
}

TEST_CASE("geometric angles of the reference layout", "[channel]")
{
    ScenarioParams p;
    const auto a = geometric_angles(p);
    CHECK(a.bs_ris_azimuth == Approx(-M_PI / 2));
    CHECK(a.bs_ris_elevation == Approx(0.0).margin(1e-15));
    CHECK(a.ris_ap_azimuth == Approx(0.0).margin(1e-15));
    CHECK(a.ris_ap_elevation == Approx(std::atan2(-30.0, 20.0)));
    CHECK(a.bs_transmit == Approx(0.0).margin(1e-15));
    CHECK(a.bs_ap_transmit == Approx(std::asin(20.0 / std::sqrt(20.0 * 20 + 300.0 * 300 + 30.0 * 30))));

    p.ap_pos = {-5.0, 300.0, 0.0};
    CHECK_THROWS_AS(geometric_angles(p), std::invalid_argument);
}

TEST_CASE("stochastic angles stay in the half plane", "[channel]")
{
    RngStream rng(2, 0);
    for (int i = 0; i < 200; ++i)
    {
        const auto a = stochastic_angles(rng);
        for (double x : {a.bs_ris_azimuth, a.bs_ris_elevation, a.ris_ap_azimuth, a.ris_ap_elevation, a.bs_transmit,
                         a.bs_ap_transmit})
        {
            CHECK(x >= -M_PI / 2);
            CHECK(x <= M_PI / 2);
        }
    }
}

TEST_CASE("scenario validation", "[channel]")
{
    ScenarioParams p;
    CHECK_NOTHROW(p.validate());
    CHECK(p.slot_duration_s() == Approx(3e-5));
    CHECK(p.num_elements() == 1600);

    auto broken = [](auto mutate)
    {
        ScenarioParams q;
        mutate(q);
        return q;
    };
    CHECK_THROWS_AS(broken([](ScenarioParams &q) { q.num_tx = 0; }).validate(), std::invalid_argument);
    CHECK_THROWS_AS(broken([](ScenarioParams &q) { q.cap_gap = 0.9; }).validate(), std::invalid_argument);
    CHECK_THROWS_AS(broken([](ScenarioParams &q) { q.rician_k = -1.0; }).validate(), std::invalid_argument);
    CHECK_THROWS_AS(broken([](ScenarioParams &q) { q.noise_power_w = 0.0; }).validate(), std::invalid_argument);
    CHECK_THROWS_AS(broken([](ScenarioParams &q) { q.num_slots = 0; }).validate(), std::invalid_argument);
    CHECK_THROWS_AS(broken([](ScenarioParams &q) { q.ap_pos = q.ris_pos; }).validate(), std::invalid_argument);
}

TEST_CASE("one drop realized over a frame", "[channel]")
{
    ScenarioParams p;
    p.ris_side = 6;
    p.num_slots = 20;
    RngStream rng(17, 2);
    const ChannelDrop drop = draw_drop(p, rng);
    const RicianWeights w = rician_weights(p.rician_k);

    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(drop.bs_ris.matrix);
    const auto sv = svd.singularValues();
    CHECK(sv[1] <= 1e-12 * sv[0]);

    const ChannelRealization first = realize(drop, p, 1);
    for (std::size_t k : {std::size_t(1), std::size_t(7), std::size_t(20)})
    {
        const ChannelRealization ch = realize(drop, p, k);
        CHECK(ch.num_tx() == 2);
        CHECK(ch.num_elements() == 36);
        CHECK((ch.direct.combined - (w.los * ch.direct.los + w.nlos * ch.direct.nlos)).norm() == 0.0);
        CHECK((ch.ris_ap.combined - (w.los * ch.ris_ap.los + w.nlos * ch.ris_ap.nlos)).norm() == 0.0);

        // LOS parts rotate by the Doppler phase between slots and keep a constant modulus.
        const cdouble ramp = std::polar(1.0, 2.0 * M_PI * drop.doppler_hz * p.slot_duration_s() * double(k - 1));
        CHECK((ch.ris_ap.los - ramp * first.ris_ap.los).norm() < 1e-9 * first.ris_ap.los.norm());
        CHECK((ch.direct.los - ramp * first.direct.los).norm() < 1e-9 * first.direct.los.norm());
        for (Eigen::Index n = 0; n < ch.ris_ap.los.size(); ++n)
            CHECK(std::abs(ch.ris_ap.los[n]) == Approx(std::abs(drop.beta)).epsilon(1e-12));
    }
    CHECK_THROWS_AS(realize(drop, p, 0), std::domain_error);
    CHECK_THROWS_AS(realize(drop, p, 21), std::domain_error);
}

TEST_CASE("drops are reproducible and matched across RIS sizes", "[channel]")
{
    ScenarioParams small, large;
    small.ris_side = 3;
    small.num_slots = 10;
    large = small;
    large.ris_side = 8;

    RngStream r1(99, 5), r2(99, 5), r3(99, 5);
    const auto d1 = draw_drop(small, r1);
    const auto d2 = draw_drop(small, r2);
    const auto d3 = draw_drop(large, r3);
    CHECK(d1.bs_ris.alpha == d2.bs_ris.alpha);
    CHECK(d1.ris_nlos.samples == d2.ris_nlos.samples);
    // Direct-link draws come before the RIS fading, so they do not depend on the RIS size.
    CHECK(d1.bs_ris.alpha == d3.bs_ris.alpha);
    CHECK(d1.beta == d3.beta);
    CHECK(d1.direct_nlos.samples == d3.direct_nlos.samples);
}

TEST_CASE("path-gain variances and fading power", "[channel]")
{
    ScenarioParams p;
    CHECK(bs_ris_gain_variance(p) == Approx(1e-3 * std::pow(300.0, -2.2)));
    const double d_ra = std::sqrt(20.0 * 20.0 + 30.0 * 30.0);
    CHECK(ris_ap_gain_variance(p) == Approx(1e-3 * std::pow(d_ra, -2.8)));
    p.paper_literal_pathloss = true;
    CHECK(ris_ap_gain_variance(p) == Approx(1e-3 * std::pow(d_ra, 2.8)));
    p.paper_literal_pathloss = false;
    p.direct_link = false;
    CHECK(direct_gain_variance(p) == 0.0);

    p.ris_side = 4;
    p.num_slots = 5;
    RngStream rng(4, 4);
    double power = 0.0;
    std::size_t count = 0;
    for (int d = 0; d < 400; ++d)
    {
        const auto nlos = draw_nlos(16, p, doppler_frequency(p), rng);
        power += nlos.samples.squaredNorm();
        count += std::size_t(nlos.samples.size());
    }
    CHECK(power / double(count) == Approx(1.0).margin(0.02));
}

// SPDX-License-Identifier: Apache-2.0
//
// ris2t: two-timescale channel estimation for RIS-aided near-field MIMO
// Copyright (C) 2026 The ris2t Authors
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

#include <cmath>

#include <doctest.h>

#include "helpers.hpp"
#include "ris2t/channel_model.hpp"
#include "ris2t/spectral.hpp"

using namespace ris2t;

TEST_CASE("ula is centered, uniformly spaced and aligned with the y axis")
{
    const Vec3 c{3.0, -2.0, 7.0};
    const auto g = ula(5, c, 0.25);
    REQUIRE(g.count() == 5);
    CHECK(g.aperture_m == doctest::Approx(1.0));
    double ymean = 0.0;
    for (int i = 0; i < 5; ++i)
    {
        CHECK(g.element_positions[i][0] == c[0]);
        CHECK(g.element_positions[i][2] == c[2]);
        ymean += g.element_positions[i][1] / 5.0;
        if (i > 0)
            CHECK(g.element_positions[i][1] - g.element_positions[i - 1][1] == doctest::Approx(0.25));
    }
    CHECK(ymean == doctest::Approx(c[1]));
    CHECK_THROWS_AS(ula(0, c, 0.1), std::invalid_argument);
}

TEST_CASE("MIMO-ARD and MIMO-RD follow the aperture formulas")
{
    const auto cfg = paper_preset();
    const double lambda = speed_of_light / cfg.carrier_hz;
    const double d_bs = 127 * lambda / 2;
    const double d_ris = 511 * lambda / 2;
    CHECK(mimo_ard(cfg) == doctest::Approx(4 * d_bs * d_ris / lambda).epsilon(1e-12));
    CHECK(mimo_rd(cfg) == doctest::Approx(2 * d_ris * d_ris / lambda).epsilon(1e-12));
    CHECK(mimo_ard(cfg) > 185.0);
    CHECK(mimo_ard(cfg) < 205.0);
    // the BS sits inside the advanced Rayleigh distance of the RIS
    CHECK(distance(cfg.bs_position, cfg.ris_position) < mimo_ard(cfg));
}

TEST_CASE("LoS responses match the spherical-wave formula entrywise")
{
    const auto cfg = desk_preset();
    const auto bs = bs_array(cfg);
    const auto ris = ris_array(cfg);
    const double k = 2 * pi / cfg.wavelength();
    const auto a = los_matrix(bs, ris, k);
    for (int n : {0, 7, 31})
        for (int m : {0, 64, 127})
        {
            const auto &p = bs.element_positions[n];
            const auto &q = ris.element_positions[m];
            const double r = std::sqrt((p[0] - q[0]) * (p[0] - q[0]) + (p[1] - q[1]) * (p[1] - q[1]) +
                                       (p[2] - q[2]) * (p[2] - q[2]));
            const cplx expect = std::exp(cplx(0.0, k * r)) / r;
            CHECK(std::abs(a(n, m) - expect) < 1e-12 * std::abs(expect));
        }

    const Vec3 user{-25.0, -10.0, -5.0};
    const auto v = los_vector(ris, user, k);
    CHECK(std::abs(v(3)) == doctest::Approx(1.0 / distance(ris.element_positions[3], user)));
    CHECK_THROWS_AS(los_vector(ris, ris.element_positions[10], k), std::invalid_argument);
}

TEST_CASE("VR masks are binary Bernoulli draws")
{
    Rng rng(4);
    CHECK(sample_vr(6, 9, 1.0, rng).minCoeff() == 1.0);
    CHECK(sample_vr(6, 9, 0.0, rng).maxCoeff() == 0.0);
    const auto f = sample_vr(200, 200, 0.95, rng);
    CHECK(((f.array() == 0.0) || (f.array() == 1.0)).all());
    CHECK(f.mean() == doctest::Approx(0.95).epsilon(0.01));
    CHECK_THROWS_AS(sample_vr(3, 0.95 + 1.0, rng), std::invalid_argument);
    CHECK_THROWS_AS(sample_vr(3, -0.1, rng), std::invalid_argument);
}

TEST_CASE("NLoS paths carry the requested mean power relative to the LoS term")
{
    const auto cfg = desk_preset();
    const auto bs = bs_array(cfg);
    const auto ris = ris_array(cfg);
    const double los_power = 7.0;
    Rng rng(11);
    double acc = 0.0;
    const int draws = 600;
    for (int i = 0; i < draws; ++i)
        acc += nlos_matrix(bs, ris, cfg.bs_position, cfg.ris_position, 1, -15.0, los_power, cfg.wave_number(), rng)
                   .squaredNorm();
    // a single path has power exactly |g|^2 * target / E|g|^2, so the mean approaches the target
    CHECK(acc / draws == doctest::Approx(los_power * std::pow(10.0, -1.5)).epsilon(0.12));

    Rng rng2(12);
    CHECK(nlos_matrix(bs, ris, cfg.bs_position, cfg.ris_position, 0, -15.0, 1.0, cfg.wave_number(), rng2)
              .squaredNorm() == 0.0);
}

TEST_CASE("scatterers fall inside the spread box around the connecting segment")
{
    Rng rng(2);
    const Vec3 a{0, 0, 0}, b{10, 0, 0};
    for (int i = 0; i < 200; ++i)
    {
        const auto s = sample_scatterer(a, b, rng);
        CHECK(s[0] >= 1.0 - scatterer_spread_m);
        CHECK(s[0] <= 9.0 + scatterer_spread_m);
        CHECK(std::abs(s[1]) <= scatterer_spread_m);
        CHECK(std::abs(s[2]) <= scatterer_spread_m);
    }
}

TEST_CASE("effective channel equals H_rb diag(h) and the time-scaling identity holds")
{
    auto cfg = desk_preset();
    Rng rng(21);
    const auto r = assemble_channels(cfg, rng);
    REQUIRE(r.t_blocks() == cfg.t_blocks);
    REQUIRE(r.h_rb.rows() == cfg.n_bs);
    REQUIRE(r.h_rb.cols() == cfg.m_ris);
    for (int t = 0; t < r.t_blocks(); ++t)
    {
        CMatrix oracle(cfg.n_bs, cfg.m_ris);
        for (int n = 0; n < cfg.n_bs; ++n)
            for (int m = 0; m < cfg.m_ris; ++m)
                oracle(n, m) = r.h_rb(n, m) * r.h_ur_seq[t](m);
        CHECK(testutil::max_abs_diff(r.h_eff_seq[t], oracle) < 1e-15 * oracle.cwiseAbs().maxCoeff());
    }
    REQUIRE_FALSE(r.degenerate());
    CVector d(cfg.m_ris);
    for (int m = 0; m < cfg.m_ris; ++m)
        d(m) = r.h_ur_seq[2](m) / r.h_ur_seq[0](m);
    const CMatrix scaled = r.h_eff_seq[0] * d.asDiagonal();
    CHECK((scaled - r.h_eff_seq[2]).norm() < 1e-10 * r.h_eff_seq[2].norm());

    CHECK_THROWS_AS(effective_channel(r.h_rb, CVector::Ones(3)), std::invalid_argument);
}

TEST_CASE("user positions follow the configured geometry")
{
    const auto cfg = desk_preset();
    Rng rng(5);
    for (int i = 0; i < 50; ++i)
    {
        const auto u = sample_user(cfg, rng);
        CHECK(-u.position[0] >= cfg.user_distance_range.min);
        CHECK(-u.position[0] <= cfg.user_distance_range.max);
        CHECK(u.position[1] == cfg.user_y);
        CHECK(u.position[2] == cfg.user_z);
    }
}

TEST_CASE("sampling is deterministic in the seed")
{
    const auto cfg = desk_preset();
    Rng a(77), b(77), c(78);
    const auto ra = assemble_channels(cfg, a);
    const auto rb = assemble_channels(cfg, b);
    const auto rc = assemble_channels(cfg, c);
    CHECK(ra.h_rb == rb.h_rb);
    CHECK(ra.h_ur_seq.back() == rb.h_ur_seq.back());
    CHECK(ra.h_rb != rc.h_rb);
}

TEST_CASE("degenerate entries are reported by index")
{
    CVector h = CVector::Ones(6);
    h(4) = 0.0;
    const auto bad = degenerate_entries(h);
    REQUIRE(bad.size() == 1);
    CHECK(bad[0] == 4);
    CHECK(degenerate_entries(CVector::Ones(5)).empty());

    RisBsChannel rb{CMatrix::Ones(2, 6), RMatrix::Ones(2, 6)};
    UserChannel u;
    u.h_ur = h;
    u.vr_vector = RVector::Ones(6);
    const auto r = make_realization(rb, {u});
    CHECK(r.degenerate());
    CHECK(r.degenerate_indices == std::vector<int>{4});
}

TEST_CASE("comparison channels: sparse is low rank, Rayleigh is full rank")
{
    auto cfg = desk_preset();
    Rng rng(8);
    const auto sparse = sample_channel(ChannelModel::sparse, cfg, rng);
    CHECK(numerical_rank(sparse.h_rb, 1e-8) <= cfg.nlos_paths_rb + 1);
    CHECK(sparse.vr_matrix.minCoeff() == 1.0);
    const auto rayleigh = sample_channel(ChannelModel::rayleigh, cfg, rng);
    CHECK(numerical_rank(rayleigh.h_rb, 1e-8) == cfg.n_bs);
    CHECK(rayleigh.h_eff_seq.size() == static_cast<std::size_t>(cfg.t_blocks));

    const auto a = steering_vector(8, 0.3);
    CHECK(std::abs(a(5) - std::polar(1.0, pi * 5 * std::sin(0.3))) < 1e-14);

    CHECK(parse_channel_model("considered") == ChannelModel::near_field);
    CHECK(to_string(ChannelModel::rayleigh) == "rayleigh");
    CHECK_THROWS_AS(parse_channel_model("ricean"), std::invalid_argument);
    CHECK_THROWS_AS(sample_comparison_channel(ChannelModel::near_field, cfg, rng), std::invalid_argument);
}

TEST_CASE("realization dumps round-trip exactly")
{
    auto cfg = desk_preset();
    cfg.t_blocks = 2;
    Rng rng(31);
    const auto r = assemble_channels(cfg, rng);
    const auto back = realization_from_json(realization_to_json(r));
    CHECK(back.h_rb == r.h_rb);
    CHECK(back.vr_matrix == r.vr_matrix);
    REQUIRE(back.t_blocks() == 2);
    CHECK(back.h_ur_seq[1] == r.h_ur_seq[1]);
    CHECK(back.h_eff_seq[1] == r.h_eff_seq[1]);
    CHECK_THROWS_AS(realization_from_json(R"({"format": "other"})"), std::invalid_argument);
}

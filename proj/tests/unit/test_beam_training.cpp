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
#include "ris2t/beam_training.hpp"
#include "ris2t/two_timescale.hpp"

using namespace ris2t;

namespace
{
    ChannelRealization desk_realization(std::uint64_t seed, int t_blocks = 4)
    {
        auto cfg = desk_preset();
        cfg.t_blocks = t_blocks;
        Rng rng(seed);
        return assemble_channels(cfg, rng);
    }
} // namespace

TEST_CASE("unitary DFT matches the closed form and is unitary")
{
    for (int n : {1, 5, 8})
    {
        const auto f = unitary_dft(n);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                CHECK(std::abs(f(a, b) - testutil::dft_entry(a, b, n) / std::sqrt(double(n))) < 1e-14);
        CHECK((f * f.adjoint() - CMatrix::Identity(n, n)).norm() < 1e-12);
    }
    CHECK_THROWS_AS(unitary_dft(0), std::invalid_argument);
}

TEST_CASE("normalized Hadamard matrices are real, unitary and power-of-two only")
{
    const auto h = unitary_hadamard(8);
    CHECK((h * h.adjoint() - CMatrix::Identity(8, 8)).norm() < 1e-12);
    CHECK(h.imag().cwiseAbs().maxCoeff() == 0.0);
    CHECK(h.real().cwiseAbs().minCoeff() == doctest::Approx(1.0 / std::sqrt(8.0)));
    CHECK_THROWS_AS(unitary_hadamard(6), std::invalid_argument);
}

TEST_CASE("schedule obeys constant modulus, orthogonality and the piecewise construction")
{
    auto cfg = desk_preset();
    const auto s = build_schedule(cfg, 5);
    REQUIRE(s.b_subframes == 5);
    REQUIRE(s.m_sub() == cfg.m_sub());
    const int ms = cfg.m_sub();
    for (int b = 0; b < 5; ++b)
    {
        CHECK((s.subframe_vectors[b].cwiseAbs().array() - 1.0).abs().maxCoeff() < 1e-12);
        for (int m = 0; m < ms; ++m)
            CHECK(std::abs(s.subframe_vectors[b](m) - testutil::dft_entry(m, b, ms)) < 1e-12);
        for (int b2 = b + 1; b2 < 5; ++b2)
            CHECK(std::abs(s.subframe_vectors[b].dot(s.subframe_vectors[b2])) < 1e-10);
    }
    for (int r = 0; r < cfg.n_rf; ++r)
        for (int n = 0; n < cfg.n_bs; ++n)
            CHECK(std::abs(s.combiner(r, n) - testutil::dft_entry(r, n, cfg.n_bs) / std::sqrt(double(cfg.n_bs))) <
                  1e-14);

    const double sq = std::sqrt(double(cfg.q_pieces));
    for (int b : {0, 4})
        for (int i : {0, 3, 7})
        {
            const auto nu = s.reflection_vector(b, i);
            CHECK((nu.cwiseAbs().array() - 1.0).abs().maxCoeff() < 1e-12);
            for (int q = 0; q < cfg.q_pieces; ++q)
                CHECK((nu.segment(q * ms, ms) - sq * s.phi_q(q, i) * s.subframe_vectors[b]).cwiseAbs().maxCoeff() <
                      1e-12);
        }
    CHECK(s.subframe_matrix().cols() == 5);
    CHECK_THROWS_AS(s.reflection_vector(5, 0), std::out_of_range);
    CHECK_THROWS_AS(build_schedule(cfg, 0), std::invalid_argument);
    CHECK_THROWS_AS(build_schedule(cfg, ms + 1), std::invalid_argument);
}

TEST_CASE("single piece reflects v_b directly; combiner offset shifts the DFT rows")
{
    auto cfg = desk_preset();
    cfg.q_pieces = 1;
    cfg.combiner_row_offset = 3;
    const auto s = build_schedule(cfg, 2);
    CHECK(s.phi_q.size() == 1);
    CHECK(std::abs(s.phi_q(0, 0) - 1.0) < 1e-15);
    CHECK((s.reflection_vector(1, 0) - s.subframe_vectors[1]).norm() < 1e-12);
    CHECK(std::abs(s.combiner(0, 1) - testutil::dft_entry(3, 1, cfg.n_bs) / std::sqrt(double(cfg.n_bs))) < 1e-14);
}

TEST_CASE("noiseless de-spread observations equal W H_pw v_b")
{
    for (auto spreading : {Spreading::dft, Spreading::hadamard})
    {
        auto cfg = desk_preset();
        cfg.spreading = spreading;
        const auto r = desk_realization(3);
        const auto s = build_schedule(cfg, 4);
        const auto obs = simulate_and_despread(r, s, 2, 0.0, 9);
        const auto ranges = partition_indices(cfg.m_ris, cfg.q_pieces);
        REQUIRE(obs.z.size() == 4);
        for (int b = 0; b < 4; ++b)
            for (int q = 0; q < cfg.q_pieces; ++q)
            {
                const CMatrix piece = r.h_eff_seq[2].middleCols(ranges[q].begin, ranges[q].size);
                const CVector expect = testutil::naive_product(s.combiner, piece) * s.subframe_vectors[b];
                CHECK((obs.z[b][q] - expect).norm() < 1e-10 * expect.norm());
            }
    }
}

TEST_CASE("despread applies (1/sqrt(Q)) Y Phi^H")
{
    const CMatrix y = testutil::random_matrix(3, 4, 1);
    const auto phi = unitary_dft(4);
    CHECK((despread(y, phi) - y * phi.adjoint() / 2.0).norm() < 1e-14);
    CHECK_THROWS_AS(despread(testutil::random_matrix(3, 5, 1), phi), std::invalid_argument);
}

TEST_CASE("calibrated noise reproduces the requested SNR at the combiner output")
{
    auto cfg = desk_preset();
    const auto r = desk_realization(5);
    const auto s = build_schedule(cfg, 3);
    const double power = 2.0;
    const double snr_db = 13.0;
    const double sigma = calibrate_noise(r, s, snr_db, power);

    double signal = 0.0;
    long slots = 0;
    for (int t = 1; t < r.t_blocks(); ++t)
        for (int b = 0; b < 3; ++b)
            for (int i = 0; i < cfg.q_pieces; ++i)
            {
                signal += power * (s.combiner * r.h_eff_seq[t] * s.reflection_vector(b, i)).squaredNorm();
                ++slots;
            }
    signal /= slots;

    const CMatrix silent = CMatrix::Zero(cfg.n_bs, cfg.m_ris);
    double noise = 0.0;
    long count = 0;
    for (int t = 0; t < 200; ++t)
        for (int b = 0; b < 3; ++b)
        {
            // pilot-divided noise W n / sqrt(P); scale back to the received power
            noise += power * receive_subframe(silent, s, b, t, sigma, 17, power).colwise().squaredNorm().sum();
            count += cfg.q_pieces;
        }
    noise /= count;
    CHECK(10 * std::log10(signal / noise) == doctest::Approx(snr_db).epsilon(0.01));
    CHECK(calibrate_noise(r, s, snr_noiseless) == 0.0);
}

TEST_CASE("estimation blocks skip the initial block")
{
    CHECK(estimation_blocks(4) == std::vector<int>{1, 2, 3});
    CHECK(estimation_blocks(1) == std::vector<int>{0});
    CHECK(noise_sigma_for_snr(4.0, 2.0, 10.0) == doctest::Approx(std::sqrt(0.2)));
}

TEST_CASE("pilot noise is keyed by slot and seed")
{
    auto cfg = desk_preset();
    const auto r = desk_realization(2);
    const auto s = build_schedule(cfg, 2);
    const auto a = receive_subframe(r.h_eff_seq[1], s, 1, 1, 0.3, 44);
    CHECK(a == receive_subframe(r.h_eff_seq[1], s, 1, 1, 0.3, 44));
    CHECK(a != receive_subframe(r.h_eff_seq[1], s, 1, 1, 0.3, 45));
    CHECK(a != receive_subframe(r.h_eff_seq[1], s, 0, 1, 0.3, 44));
    CHECK(a != receive_subframe(r.h_eff_seq[1], s, 1, 2, 0.3, 44));
    CHECK(a.rows() == cfg.n_rf);
    CHECK(a.cols() == cfg.q_pieces);
    CHECK_THROWS_AS(receive_subframe(CMatrix::Zero(3, 3), s, 0, 0, 0.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(simulate_and_despread(r, s, 9, 0.0, 1), std::out_of_range);
}

TEST_CASE("full sweep recovers H exactly without noise and has NMSE 1/SNR with it")
{
    const auto r = desk_realization(8, 2);
    const auto clean = simulate_full_sweep(r.h_eff_seq[1], 8, 1, 0.0, 1);
    CHECK(clean.ris_configurations == 128);
    CHECK(clean.combiner_groups == 4);
    CHECK((clean.despread - r.h_eff_seq[1]).norm() < 1e-10 * r.h_eff_seq[1].norm());

    const double snr_db = 10.0;
    const double sigma = calibrate_full_sweep_noise(r, 8, snr_db, 1.0);
    double err = 0.0;
    const int reps = 40;
    for (int k = 0; k < reps; ++k)
        err += relative_error(simulate_full_sweep(r.h_eff_seq[1], 8, 1, sigma, 100 + k).despread, r.h_eff_seq[1]);
    CHECK(10 * std::log10(err / reps) == doctest::Approx(-snr_db).epsilon(0.01));
    CHECK_THROWS_AS(simulate_full_sweep(r.h_eff_seq[1], 0, 1, 0.0, 1), std::invalid_argument);
}

TEST_CASE("schedule csv lists every component")
{
    const auto s = build_schedule(desk_preset(), 1);
    const auto csv = schedule_to_csv(s);
    CHECK(csv.rfind("kind,row,col,re,im\n", 0) == 0);
    CHECK(csv.find("phi,") != std::string::npos);
    CHECK(csv.find("combiner,") != std::string::npos);
}

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
#include "ris2t/spectral.hpp"

using namespace ris2t;

namespace
{
    /// U diag(s) V^H with random unitary factors.
    CMatrix with_singular_values(const std::vector<double> &s, Eigen::Index rows, Eigen::Index cols,
                                 std::uint64_t seed)
    {
        const CMatrix u = testutil::random_matrix(rows, rows, seed).householderQr().householderQ();
        const CMatrix v = testutil::random_matrix(cols, cols, seed + 1).householderQr().householderQ();
        CMatrix d = CMatrix::Zero(rows, cols);
        for (std::size_t i = 0; i < s.size(); ++i)
            d(i, i) = s[i];
        return u * d * v.adjoint();
    }
} // namespace

TEST_CASE("eigenvalue ratios equal log10 of squared singular-value ratios")
{
    const std::vector<double> s{4.0, 2.0, 1.0, 0.1};
    const auto h = with_singular_values(s, 4, 9, 3);
    const auto rep = relative_eigenvalue_ratios(h);
    REQUIRE(rep.ratios.size() == 4);
    for (int i = 0; i < 4; ++i)
    {
        CHECK(rep.ratios[i] == doctest::Approx(std::log10(s[i] * s[i] / (s[0] * s[0]))).epsilon(1e-10));
        CHECK(rep.eigenvalues[i] == doctest::Approx(s[i] * s[i]).epsilon(1e-10));
    }
}

TEST_CASE("ratios are padded to N when N exceeds the column count")
{
    const auto h = testutil::random_matrix(6, 3, 9);
    const auto rep = relative_eigenvalue_ratios(h);
    REQUIRE(rep.ratios.size() == 6);
    CHECK(rep.ratios[3] == doctest::Approx(-15.0));
    CHECK(rep.ratios[5] == doctest::Approx(-15.0));
}

TEST_CASE("rank-one matrix has a single nonzero ratio")
{
    const CVector a = testutil::random_vector(8, 1);
    const CVector b = testutil::random_vector(5, 2);
    const auto rep = relative_eigenvalue_ratios(a * b.adjoint());
    CHECK(rep.ratios[0] == 0.0);
    for (std::size_t i = 1; i < rep.ratios.size(); ++i)
        CHECK(rep.ratios[i] <= -14.0);
}

TEST_CASE("identity channel has flat ratios and zero condition number")
{
    const auto rep = relative_eigenvalue_ratios(CMatrix::Identity(5, 5));
    for (double z : rep.ratios)
        CHECK(std::abs(z) < 1e-12);
    const auto k = condition_number(CMatrix::Identity(7, 7));
    CHECK(k.log10 == doctest::Approx(0.0));
    CHECK_FALSE(k.singular);
}

TEST_CASE("ratios are non-increasing")
{
    const auto rep = relative_eigenvalue_ratios(testutil::random_matrix(16, 40, 5));
    for (std::size_t i = 1; i < rep.ratios.size(); ++i)
        CHECK(rep.ratios[i] <= rep.ratios[i - 1] + 1e-12);
    CHECK_THROWS_AS(relative_eigenvalue_ratios(CMatrix::Zero(3, 3)), std::invalid_argument);
}

TEST_CASE("condition number of a diagonal Hermitian matrix")
{
    CMatrix g = CMatrix::Zero(3, 3);
    g.diagonal() << 10.0, 1.0, 0.01;
    CHECK(condition_number(g).log10 == doctest::Approx(3.0));

    const CMatrix a = testutil::random_matrix(4, 6, 2);
    const CMatrix psd = a.adjoint() * a; // rank 4 of 6
    const auto k = condition_number(psd);
    CHECK(k.singular);
    CHECK(k.log10 == singular_kappa_log10);

    CMatrix skew = CMatrix::Identity(2, 2);
    skew(0, 1) = 1.0;
    CHECK_THROWS_AS(condition_number(skew), std::invalid_argument);
    CHECK_THROWS_AS(condition_number(CMatrix(2, 3)), std::invalid_argument);
}

TEST_CASE("numerical rank counts singular values above the relative threshold")
{
    const auto h = with_singular_values({1.0, 1e-3, 1e-7, 1e-12}, 5, 5, 8);
    CHECK(numerical_rank(h, 1e-2) == 1);
    CHECK(numerical_rank(h, 1e-6) == 2);
    CHECK(numerical_rank(h, 1e-10) == 3);
    CHECK(numerical_rank(CMatrix::Zero(3, 3), 1e-10) == 0);
}

TEST_CASE("largest principal angle")
{
    CMatrix e1 = CMatrix::Zero(3, 1), e2 = CMatrix::Zero(3, 1), mixed(3, 1);
    e1(0, 0) = 1.0;
    e2(1, 0) = 1.0;
    const double theta = 0.3;
    mixed << std::cos(theta), std::sin(theta), 0.0;
    CHECK(max_principal_angle(e1, e2) == doctest::Approx(pi / 2));
    CHECK(max_principal_angle(e1, mixed) == doctest::Approx(theta));
    CHECK(max_principal_angle(e1, e1 * cplx(0.0, 1.0)) < 1e-12);

    // same span, different basis
    const CMatrix q = testutil::random_matrix(6, 3, 4).householderQr().householderQ() * CMatrix::Identity(6, 3);
    const CMatrix rot = testutil::random_matrix(3, 3, 5).householderQr().householderQ();
    CHECK(max_principal_angle(q, q * rot) < 1e-7);
    CHECK(max_principal_angle(q, q.leftCols(2)) == doctest::Approx(pi / 2));
}

TEST_CASE("spectrum csv has a header and 1-based orders")
{
    SpectrumReport r{{0.0, -1.5}, {2.0, 0.06}};
    const auto csv = spectrum_to_csv(r);
    CHECK(csv.rfind("n,zeta\n", 0) == 0);
    CHECK(csv.find("2,-1.5") != std::string::npos);
}

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

#ifndef RIS2T_TEST_HELPERS_HPP
#define RIS2T_TEST_HELPERS_HPP

#include <complex>
#include <cstdint>

#include "ris2t/common.hpp"
#include "ris2t/random.hpp"

namespace testutil
{
    inline ris2t::CMatrix random_matrix(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed)
    {
        ris2t::Rng rng(seed);
        return rng.complex_normal_matrix(rows, cols);
    }

    inline ris2t::CVector random_vector(Eigen::Index n, std::uint64_t seed)
    {
        ris2t::Rng rng(seed);
        return rng.complex_normal_vector(n);
    }

    inline double max_abs_diff(const ris2t::CMatrix &a, const ris2t::CMatrix &b)
    {
        return (a - b).cwiseAbs().maxCoeff();
    }

    /// Explicit triple-loop product, kept apart from Eigen's kernels.
    inline ris2t::CMatrix naive_product(const ris2t::CMatrix &a, const ris2t::CMatrix &b)
    {
        ris2t::CMatrix out = ris2t::CMatrix::Zero(a.rows(), b.cols());
        for (Eigen::Index i = 0; i < a.rows(); ++i)
            for (Eigen::Index j = 0; j < b.cols(); ++j)
                for (Eigen::Index k = 0; k < a.cols(); ++k)
                    out(i, j) += a(i, k) * b(k, j);
        return out;
    }

    inline ris2t::cplx dft_entry(long a, long b, long n)
    {
        const double angle = -2.0 * ris2t::pi * static_cast<double>((a * b) % n) / static_cast<double>(n);
        return {std::cos(angle), std::sin(angle)};
    }
} // namespace testutil

#endif

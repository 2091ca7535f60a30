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

#ifndef RIS2T_SPECTRAL_HPP
#define RIS2T_SPECTRAL_HPP

#include <string>
#include <vector>

#include "ris2t/common.hpp"

namespace ris2t
{
    /// Relative eigenvalue ratios of H H^H, log10 scale.
    struct SpectrumReport
    {
        std::vector<double> ratios;      // zeta_n, n = 1..N; ratios[0] == 0
        std::vector<double> eigenvalues; // descending, nonnegative
    };

    /// Eigenvalues below this fraction of the largest are clamped before the log.
    inline constexpr double eigen_ratio_floor = 1e-15;

    /// zeta_n = log10(lambda_n / lambda_1) for the eigenvalues of H H^H.
    /// Throws std::invalid_argument for an all-zero matrix.
    SpectrumReport relative_eigenvalue_ratios(const CMatrix &h);

    /// log10 of the 2-norm condition number of a Hermitian PSD matrix.
    struct ConditionNumber
    {
        double log10 = 0.0;
        bool singular = false;
    };

    /// Value reported for singular matrices, log10(1 / 1e-15).
    inline constexpr double singular_kappa_log10 = 15.0;

    /// lambda_max / lambda_min on the log10 scale. When lambda_min <= 1e-15 lambda_max
    /// the result is flagged singular and carries singular_kappa_log10.
    /// Throws std::invalid_argument if g is not Hermitian within 1e-10 (relative).
    ConditionNumber condition_number(const CMatrix &g);
    /// Same rule applied to eigenvalues already sorted in ascending order.
    ConditionNumber condition_number_from_eigenvalues(const RVector &ascending);

    /// Number of singular values >= rel_tol * sigma_max.
    int numerical_rank(const CMatrix &m, double rel_tol);

    /// Largest principal angle (radians) between the column spans of two
    /// matrices with orthonormal columns.
    double max_principal_angle(const CMatrix &q1, const CMatrix &q2);

    /// CSV rows "n,zeta" with 1-based n and a header line.
    std::string spectrum_to_csv(const SpectrumReport &report);

} // namespace ris2t

#endif

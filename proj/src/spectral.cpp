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

#include "ris2t/spectral.hpp"

#include <algorithm>
#include <sstream>

#include <Eigen/SVD>

namespace ris2t
{
    SpectrumReport relative_eigenvalue_ratios(const CMatrix &h)
    {
        if (h.size() == 0 || h.cwiseAbs().maxCoeff() == 0.0)
            throw std::invalid_argument("relative_eigenvalue_ratios: matrix is zero");

        // eig(H H^H) = sigma(H)^2, padded with zeros up to the row count
        Eigen::BDCSVD<CMatrix> svd(h);
        const RVector &s = svd.singularValues();
        SpectrumReport out;
        out.eigenvalues.assign(static_cast<std::size_t>(h.rows()), 0.0);
        for (Eigen::Index i = 0; i < s.size(); ++i)
            out.eigenvalues[i] = s(i) * s(i);

        const double top = out.eigenvalues.front();
        out.ratios.reserve(out.eigenvalues.size());
        for (double lambda : out.eigenvalues)
            out.ratios.push_back(std::log10(std::max(lambda / top, eigen_ratio_floor)));
        out.ratios.front() = 0.0;
        return out;
    }

    ConditionNumber condition_number(const CMatrix &g)
    {
        if (g.rows() != g.cols() || g.size() == 0)
            throw std::invalid_argument("condition_number: matrix must be square and nonempty");
        const double scale = std::max(1.0, g.cwiseAbs().maxCoeff());
        if ((g - g.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale)
            throw std::invalid_argument("condition_number: matrix is not Hermitian");

        Eigen::SelfAdjointEigenSolver<CMatrix> es(g, Eigen::EigenvaluesOnly);
        return condition_number_from_eigenvalues(es.eigenvalues());
    }

    ConditionNumber condition_number_from_eigenvalues(const RVector &ascending)
    {
        if (ascending.size() == 0)
            throw std::invalid_argument("condition_number: no eigenvalues");
        const double lmax = ascending(ascending.size() - 1);
        const double lmin = ascending(0);
        if (!(lmax > 0.0) || lmin <= eigen_ratio_floor * lmax)
            return {singular_kappa_log10, true};
        return {std::log10(lmax / lmin), false};
    }

    int numerical_rank(const CMatrix &m, double rel_tol)
    {
        if (m.size() == 0)
            return 0;
        Eigen::BDCSVD<CMatrix> svd(m);
        const RVector &s = svd.singularValues();
        if (s.size() == 0 || s(0) == 0.0)
            return 0;
        int r = 0;
        for (Eigen::Index i = 0; i < s.size(); ++i)
            if (s(i) >= rel_tol * s(0))
                ++r;
        return r;
    }

    double max_principal_angle(const CMatrix &q1, const CMatrix &q2)
    {
        if (q1.rows() != q2.rows())
            throw std::invalid_argument("max_principal_angle: ambient dimensions differ");
        // Subspaces of different dimension always contain a direction at 90 degrees.
        if (q1.cols() != q2.cols() || q1.cols() == 0)
            return 0.5 * pi;
        // sin of the largest angle is ||(I - Q1 Q1^H) Q2||_2; more accurate than acos for small angles
        const CMatrix residual = q2 - q1 * (q1.adjoint() * q2);
        Eigen::JacobiSVD<CMatrix> svd(residual);
        const double s = std::clamp(svd.singularValues()(0), 0.0, 1.0);
        return std::asin(s);
    }

    std::string spectrum_to_csv(const SpectrumReport &report)
    {
        std::ostringstream os;
        os.precision(17);
        os << "n,zeta\n";
        for (std::size_t i = 0; i < report.ratios.size(); ++i)
            os << (i + 1) << ',' << report.ratios[i] << '\n';
        return os.str();
    }

} // namespace ris2t

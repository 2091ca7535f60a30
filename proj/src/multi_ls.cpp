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

#include "ris2t/multi_ls.hpp"

#include <algorithm>
#include <limits>

#include <Eigen/Eigenvalues>

namespace ris2t
{
    CMatrix sensing_matrix(const CMatrix &combiner, const CMatrix &h_pw0, const CVector &v_b)
    {
        if (combiner.cols() != h_pw0.rows() || h_pw0.cols() != v_b.size())
            throw std::invalid_argument("sensing_matrix: dimension mismatch (W " + std::to_string(combiner.rows()) + "x" +
                                        std::to_string(combiner.cols()) + ", H " + std::to_string(h_pw0.rows()) + "x" +
                                        std::to_string(h_pw0.cols()) + ", v " + std::to_string(v_b.size()) + ")");
        return (combiner * h_pw0) * v_b.asDiagonal();
    }

    CMatrix gram_matrix(const std::vector<CMatrix> &sensing)
    {
        if (sensing.empty())
            throw std::invalid_argument("gram_matrix: need at least one sensing matrix");
        const auto cols = sensing.front().cols();
        CMatrix g = CMatrix::Zero(cols, cols);
        for (const auto &a : sensing)
        {
            if (a.cols() != cols)
                throw std::invalid_argument("gram_matrix: sensing matrices differ in column count");
            g.noalias() += a.adjoint() * a;
        }
        // exact Hermitian symmetry; the accumulated product drifts by rounding
        return 0.5 * (g + g.adjoint());
    }

    CMatrix gram_hadamard(const CMatrix &subframes, const CMatrix &combined_piece)
    {
        if (subframes.rows() != combined_piece.cols())
            throw std::invalid_argument("gram_hadamard: V_B rows must equal the piece width");
        const CMatrix spread = (subframes * subframes.adjoint()).conjugate();
        return spread.cwiseProduct(combined_piece.adjoint() * combined_piece);
    }

    int b_min(int m_ris, int q_pieces, int n_rf, const std::vector<int> &ranks)
    {
        if (m_ris < 1 || q_pieces < 1 || n_rf < 1 || ranks.empty())
            throw std::invalid_argument("b_min: inputs must be positive");
        int out = 0;
        for (int r : ranks)
        {
            if (r < 1)
                throw std::invalid_argument("b_min: ranks must be positive");
            const long denom = static_cast<long>(q_pieces) * std::min(n_rf, r);
            out = std::max(out, static_cast<int>((m_ris + denom - 1) / denom));
        }
        return out;
    }

    MultiLsProblem assemble_multi_ls(std::vector<CMatrix> sensing, const std::vector<CVector> &z, int piece)
    {
        if (sensing.empty() || z.empty())
            throw std::invalid_argument("assemble_multi_ls: no observations");
        if (sensing.size() != z.size())
            throw std::invalid_argument("assemble_multi_ls: " + std::to_string(sensing.size()) + " sensing matrices but " +
                                        std::to_string(z.size()) + " observations");
        MultiLsProblem p;
        p.piece = piece;
        p.gram = gram_matrix(sensing);
        p.rhs = CVector::Zero(p.gram.rows());
        for (std::size_t b = 0; b < sensing.size(); ++b)
        {
            if (z[b].size() != sensing[b].rows())
                throw std::invalid_argument("assemble_multi_ls: observation length does not match sensing rows");
            p.rhs.noalias() += sensing[b].adjoint() * z[b];
        }
        p.sensing = std::move(sensing);
        return p;
    }

    MultiLsSolution solve_multi_ls(const MultiLsProblem &problem, double ridge)
    {
        if (problem.sensing.empty() || problem.gram.size() == 0)
            throw std::invalid_argument("solve_multi_ls: empty problem");
        if (ridge < 0.0)
            throw std::invalid_argument("solve_multi_ls: ridge must be >= 0");

        const auto dim = problem.gram.rows();
        CMatrix g = problem.gram;
        if (ridge > 0.0)
            g.diagonal().array() += ridge * g.trace().real() / static_cast<double>(dim);

        MultiLsSolution out;
        auto &diag = out.diagnostics;
        diag.b_subframes = static_cast<int>(problem.sensing.size());
        // G is Hermitian PSD, so its eigenvalues are its singular values
        Eigen::SelfAdjointEigenSolver<CMatrix> spectrum(g, Eigen::EigenvaluesOnly);
        const RVector &ev = spectrum.eigenvalues();
        diag.kappa = condition_number_from_eigenvalues(ev);
        const double lmax = std::max(ev(dim - 1), 0.0);
        diag.rank = lmax > 0.0 ? static_cast<int>((ev.array() >= gram_rank_tolerance * lmax).count()) : 0;
        diag.unique = !diag.kappa.singular && diag.rank == dim;

        if (diag.unique)
        {
            Eigen::LLT<CMatrix> llt(g);
            if (llt.info() == Eigen::Success)
                out.d = llt.solve(problem.rhs);
            else
                out.d = g.ldlt().solve(problem.rhs);
        }
        else
        {
            // minimum-norm solution through the eigen-pseudo-inverse
            Eigen::SelfAdjointEigenSolver<CMatrix> es(g);
            const RVector &vals = es.eigenvalues();
            const double cutoff = gram_rank_tolerance * lmax;
            CVector coeff = es.eigenvectors().adjoint() * problem.rhs;
            for (Eigen::Index i = 0; i < dim; ++i)
                coeff(i) = vals(i) > cutoff ? coeff(i) / vals(i) : cplx(0.0);
            out.d = es.eigenvectors() * coeff;
        }
        diag.residual_norm = (problem.rhs - problem.gram * out.d).norm();
        return out;
    }

    double noise_amplification_bound(const CMatrix &gram, const CVector &noise_rhs)
    {
        Eigen::SelfAdjointEigenSolver<CMatrix> es(gram, Eigen::EigenvaluesOnly);
        const double lmin = es.eigenvalues()(0);
        if (!(lmin > 0.0))
            return std::numeric_limits<double>::infinity();
        return noise_rhs.norm() / lmin;
    }

    double subframe_subspace_angle(const CMatrix &combined_piece, const CVector &v1, const CVector &v2, int r)
    {
        const auto ms = combined_piece.cols();
        if (v1.size() != ms || v2.size() != ms || r < 1 || r > ms)
            throw std::invalid_argument("subframe_subspace_angle: dimension mismatch");
        Eigen::SelfAdjointEigenSolver<CMatrix> es(combined_piece.adjoint() * combined_piece);
        // eigenvalues ascend; the top r eigenvectors are the last r columns
        const CMatrix u = es.eigenvectors().rightCols(r);
        const CMatrix q1 = v1.conjugate().asDiagonal() * u;
        const CMatrix q2 = v2.conjugate().asDiagonal() * u;
        // diag(v*) is unitary up to the unit-modulus entries, so q1 and q2 stay orthonormal
        return max_principal_angle(q1, q2);
    }

    TspEstimate estimate_small_timescale(const PiecewiseDecomposition &decomp, const ReflectionSchedule &schedule,
                                         const BlockObservations &observations, double ridge)
    {
        const int q_count = decomp.q_pieces();
        if (q_count != schedule.q_pieces())
            throw std::invalid_argument("estimate_small_timescale: decomposition and schedule disagree on Q");
        if (static_cast<int>(observations.z.size()) != schedule.b_subframes)
            throw std::invalid_argument("estimate_small_timescale: observation count does not match B");

        TspEstimate out;
        out.d.block = observations.t;
        for (int q = 0; q < q_count; ++q)
        {
            const CMatrix x = schedule.combiner * decomp.pieces[q];
            std::vector<CMatrix> sensing;
            std::vector<CVector> z;
            for (int b = 0; b < schedule.b_subframes; ++b)
            {
                sensing.push_back(x * schedule.subframe_vectors[b].asDiagonal());
                z.push_back(observations.z[b][q]);
            }
            auto sol = solve_multi_ls(assemble_multi_ls(std::move(sensing), z, q), ridge);
            out.d.pieces.push_back(std::move(sol.d));
            out.diagnostics.push_back(sol.diagnostics);
        }
        return out;
    }

    std::vector<CMatrix> benchmark_small_timescale(BenchmarkMode mode, const std::vector<CMatrix> &subspaces,
                                                   const FullSweepObservation &observation)
    {
        if (subspaces.empty())
            throw std::invalid_argument("benchmark_small_timescale: no subspaces");
        if (mode == BenchmarkMode::clra && subspaces.size() != 1)
            throw std::invalid_argument("benchmark_small_timescale: clra uses a single subspace for the whole channel");

        const auto &y = observation.despread;
        const long m = y.cols();
        const long n = y.rows();
        if (observation.ris_configurations < m)
            throw InsufficientObservationsError("benchmark_small_timescale: need " + std::to_string(m) +
                                                    " RIS configurations, got " +
                                                    std::to_string(observation.ris_configurations),
                                                m);
        if (static_cast<long>(observation.combiner_groups) * observation.n_rf < n)
            throw InsufficientObservationsError("benchmark_small_timescale: combiner sweep covers " +
                                                    std::to_string(observation.combiner_groups * observation.n_rf) +
                                                    " of " + std::to_string(n) + " antennas",
                                                (n + observation.n_rf - 1) / std::max(observation.n_rf, 1));

        const auto ranges = partition_indices(static_cast<int>(m), static_cast<int>(subspaces.size()));
        std::vector<CMatrix> coeffs;
        coeffs.reserve(subspaces.size());
        for (std::size_t q = 0; q < subspaces.size(); ++q)
        {
            const CMatrix &s = subspaces[q];
            if (s.rows() != n)
                throw std::invalid_argument("benchmark_small_timescale: subspace row count differs from N");
            if (s.cols() > n)
                throw InsufficientObservationsError("benchmark_small_timescale: subspace rank exceeds N", s.cols());
            coeffs.push_back(s.householderQr().solve(y.middleCols(ranges[q].begin, ranges[q].size)));
        }
        return coeffs;
    }

    CMatrix benchmark_reconstruct(const std::vector<CMatrix> &subspaces, const std::vector<CMatrix> &coefficients)
    {
        if (subspaces.size() != coefficients.size() || subspaces.empty())
            throw std::invalid_argument("benchmark_reconstruct: factor lists differ in length");
        Eigen::Index cols = 0;
        for (const auto &t : coefficients)
            cols += t.cols();
        CMatrix h(subspaces.front().rows(), cols);
        Eigen::Index offset = 0;
        for (std::size_t q = 0; q < subspaces.size(); ++q)
        {
            h.middleCols(offset, coefficients[q].cols()) = subspaces[q] * coefficients[q];
            offset += coefficients[q].cols();
        }
        return h;
    }

    BenchmarkMode parse_benchmark_mode(const std::string &name)
    {
        if (name == "pwclra")
            return BenchmarkMode::pwclra;
        if (name == "clra")
            return BenchmarkMode::clra;
        throw std::invalid_argument("unknown benchmark mode '" + name + "'");
    }

} // namespace ris2t

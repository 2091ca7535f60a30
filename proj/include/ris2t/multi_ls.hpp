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

#ifndef RIS2T_MULTI_LS_HPP
#define RIS2T_MULTI_LS_HPP

#include <string>
#include <vector>

#include "ris2t/beam_training.hpp"
#include "ris2t/common.hpp"
#include "ris2t/spectral.hpp"
#include "ris2t/two_timescale.hpp"

namespace ris2t
{
    /// Relative singular-value cutoff for every rank decision in the estimator.
    inline constexpr double gram_rank_tolerance = 1e-10;

    /// A_[b,q] = W H_pw[q,0] diag(v_b), N_RF x M_sub.
    CMatrix sensing_matrix(const CMatrix &combiner, const CMatrix &h_pw0, const CVector &v_b);

    /// G = sum_b A_b^H A_b.
    CMatrix gram_matrix(const std::vector<CMatrix> &sensing);

    /// Same Gram matrix through the Hadamard factorization
    /// G = conj(V_B V_B^H) o (X^H X) with X = W H_pw[q,0].
    CMatrix gram_hadamard(const CMatrix &subframes, const CMatrix &combined_piece);

    /// max_q ceil(M / (Q min(N_RF, r_q))).
    int b_min(int m_ris, int q_pieces, int n_rf, const std::vector<int> &ranks);

    /// Normal equations of one piece, assembled from B subframes.
    struct MultiLsProblem
    {
        std::vector<CMatrix> sensing; // B matrices A_[b,q]
        CMatrix gram;                 // sum_b A_b^H A_b
        CVector rhs;                  // sum_b A_b^H z_b
        int piece = 0;
    };

    /// Throws std::invalid_argument on empty or mismatched observations.
    MultiLsProblem assemble_multi_ls(std::vector<CMatrix> sensing, const std::vector<CVector> &z, int piece = 0);

    struct MultiLsDiagnostics
    {
        ConditionNumber kappa;
        int rank = 0;
        double residual_norm = 0.0; // ||rhs - G d||
        bool unique = true;
        int b_subframes = 0;
    };

    struct MultiLsSolution
    {
        CVector d;
        MultiLsDiagnostics diagnostics;
    };

    /// d = G^{-1} rhs through a Hermitian solve when G is nonsingular; otherwise the
    /// minimum-norm least-squares solution with `unique` cleared. `ridge` adds
    /// ridge * trace(G) / M_sub to the diagonal and defaults to zero.
    MultiLsSolution solve_multi_ls(const MultiLsProblem &problem, double ridge = 0.0);

    /// ||G^{-1}||_2 * ||noise_rhs||_2, the bound on the estimation error caused by
    /// the noise term sum_b A_b^H u_b.
    double noise_amplification_bound(const CMatrix &gram, const CVector &noise_rhs);

    /// Largest principal angle between span(diag(v1*) U_r) and span(diag(v2*) U_r),
    /// where U_r holds the top-r eigenvectors of X^H X.
    double subframe_subspace_angle(const CMatrix &combined_piece, const CVector &v1, const CVector &v2, int r);

    /// Small-timescale estimate for one block from piecewise observations.
    struct TspEstimate
    {
        SmallTimescaleChannel d;
        std::vector<MultiLsDiagnostics> diagnostics; // per piece
    };

    TspEstimate estimate_small_timescale(const PiecewiseDecomposition &decomp, const ReflectionSchedule &schedule,
                                         const BlockObservations &observations, double ridge = 0.0);

    enum class BenchmarkMode
    {
        pwclra,
        clra
    };

    /// Coefficient estimates T_[q,t] = S_q^+ H_t(:, M_q) for known subspaces.
    /// clra is the single-piece case and requires exactly one subspace.
    /// Throws InsufficientObservationsError when the sweep does not cover all M
    /// RIS configurations and all N antennas.
    std::vector<CMatrix> benchmark_small_timescale(BenchmarkMode mode, const std::vector<CMatrix> &subspaces,
                                                   const FullSweepObservation &observation);

    /// [S_1 T_1 ... S_Q T_Q].
    CMatrix benchmark_reconstruct(const std::vector<CMatrix> &subspaces, const std::vector<CMatrix> &coefficients);

    BenchmarkMode parse_benchmark_mode(const std::string &name);

} // namespace ris2t

#endif

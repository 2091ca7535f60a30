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

#ifndef RIS2T_TWO_TIMESCALE_HPP
#define RIS2T_TWO_TIMESCALE_HPP

#include <optional>
#include <string>
#include <vector>

#include "ris2t/common.hpp"
#include "ris2t/config.hpp"
#include "ris2t/random.hpp"

namespace ris2t
{
    /// Contiguous, 0-based column range of one piece.
    struct IndexRange
    {
        int begin = 0;
        int size = 0;

        int end() const { return begin + size; }
        bool operator==(const IndexRange &) const = default;
    };

    /// Split [0, m_ris) into q_pieces contiguous blocks of m_ris / q_pieces columns.
    std::vector<IndexRange> partition_indices(int m_ris, int q_pieces);

    /// Per-piece small-timescale channel d_[q,t] = h_t(M_q) ./ h_0(M_q).
    struct SmallTimescaleChannel
    {
        int block = 0;
        std::vector<CVector> pieces;

        CVector concatenated() const;
        static SmallTimescaleChannel ones(const std::vector<IndexRange> &ranges, int block = 0);
        static SmallTimescaleChannel from_full(const CVector &d, const std::vector<IndexRange> &ranges, int block);
    };

    /// d = h_t ./ h_0, split by partition_indices(h0.size(), q_pieces).
    /// Throws DegenerateChannelError naming every index of h_0 below the degeneracy floor.
    SmallTimescaleChannel small_timescale_truth(const CVector &h0, const CVector &ht, int q_pieces, int block = 0);

    /// Truncated SVD factorization piece ~= subspace * coefficients.
    struct LowRankFactors
    {
        CMatrix subspace;     // N x r, orthonormal columns
        CMatrix coefficients; // r x M_sub
        int rank = 0;
        RVector singular_values; // full spectrum of the input piece
        double discarded_energy = 0.0; // sum of squared discarded singular values
    };

    /// Fixed rank keeps the top r triplets; threshold keeps sigma_i >= tau * sigma_max.
    /// Throws for a zero piece or a fixed rank above min(N, M_sub).
    LowRankFactors low_rank_decompose(const CMatrix &piece, const RankRule &rule);

    /// Large-timescale estimate split into Q low-rank pieces. `pieces[q]` is the
    /// product subspaces[q] * coefficients[q].
    struct PiecewiseDecomposition
    {
        std::vector<CMatrix> pieces;
        std::vector<CMatrix> subspaces;
        std::vector<CMatrix> coefficients;
        std::vector<int> ranks;
        std::vector<IndexRange> index_sets;

        int q_pieces() const { return static_cast<int>(pieces.size()); }
        CMatrix concatenated() const;
    };

    PiecewiseDecomposition decompose_initial(const CMatrix &h0_eff, int q_pieces, const RankRule &rule);

    /// [H_pw[1,0] diag(d_[1,t]) ... H_pw[Q,0] diag(d_[Q,t])].
    CMatrix reconstruct_effective(const PiecewiseDecomposition &decomp, const SmallTimescaleChannel &d);

    /// Large-timescale oracle error model. An empty target returns the input
    /// unchanged; otherwise adds i.i.d. complex Gaussian error rescaled so that
    /// ||E||_F^2 / ||H||_F^2 equals 10^(target/10) exactly. Rejects targets > 0 dB.
    CMatrix perturb_initial(const CMatrix &h0_eff, std::optional<double> target_ia_db, Rng &rng);

    /// ||estimate - truth||_F^2 / ||truth||_F^2.
    double relative_error(const CMatrix &estimate, const CMatrix &truth);

    std::string decomposition_to_json(const PiecewiseDecomposition &decomp);
    PiecewiseDecomposition decomposition_from_json(const std::string &text);

} // namespace ris2t

#endif

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

#include "ris2t/two_timescale.hpp"

#include <sstream>

#include <Eigen/SVD>

#include "json_util.hpp"
#include "ris2t/channel_model.hpp"

namespace ris2t
{
    std::vector<IndexRange> partition_indices(int m_ris, int q_pieces)
    {
        if (m_ris < 1 || q_pieces < 1 || m_ris % q_pieces != 0)
            throw std::invalid_argument("partition_indices: Q=" + std::to_string(q_pieces) +
                                        " does not divide M=" + std::to_string(m_ris));
        const int m_sub = m_ris / q_pieces;
        std::vector<IndexRange> out;
        out.reserve(q_pieces);
        for (int q = 0; q < q_pieces; ++q)
            out.push_back({q * m_sub, m_sub});
        return out;
    }

    CVector SmallTimescaleChannel::concatenated() const
    {
        Eigen::Index total = 0;
        for (const auto &p : pieces)
            total += p.size();
        CVector d(total);
        Eigen::Index offset = 0;
        for (const auto &p : pieces)
        {
            d.segment(offset, p.size()) = p;
            offset += p.size();
        }
        return d;
    }

    SmallTimescaleChannel SmallTimescaleChannel::ones(const std::vector<IndexRange> &ranges, int block)
    {
        SmallTimescaleChannel d;
        d.block = block;
        for (const auto &r : ranges)
            d.pieces.push_back(CVector::Ones(r.size));
        return d;
    }

    SmallTimescaleChannel SmallTimescaleChannel::from_full(const CVector &full, const std::vector<IndexRange> &ranges,
                                                           int block)
    {
        SmallTimescaleChannel d;
        d.block = block;
        for (const auto &r : ranges)
        {
            if (r.end() > full.size())
                throw std::invalid_argument("SmallTimescaleChannel: range exceeds vector length");
            d.pieces.push_back(full.segment(r.begin, r.size));
        }
        return d;
    }

    SmallTimescaleChannel small_timescale_truth(const CVector &h0, const CVector &ht, int q_pieces, int block)
    {
        if (h0.size() != ht.size())
            throw std::invalid_argument("small_timescale_truth: h0 and ht differ in length");
        const auto bad = degenerate_entries(h0);
        if (!bad.empty())
        {
            std::ostringstream os;
            os << "small_timescale_truth: h0 has " << bad.size() << " entries below the degeneracy floor at indices";
            for (std::size_t i = 0; i < bad.size() && i < 16; ++i)
                os << ' ' << bad[i];
            if (bad.size() > 16)
                os << " ...";
            throw DegenerateChannelError(os.str());
        }
        const CVector d = ht.cwiseQuotient(h0);
        return SmallTimescaleChannel::from_full(d, partition_indices(static_cast<int>(h0.size()), q_pieces), block);
    }

    LowRankFactors low_rank_decompose(const CMatrix &piece, const RankRule &rule)
    {
        if (piece.size() == 0 || piece.cwiseAbs().maxCoeff() == 0.0)
            throw std::invalid_argument("low_rank_decompose: piece is zero");
        const int full = static_cast<int>(std::min(piece.rows(), piece.cols()));

        Eigen::BDCSVD<CMatrix> svd(piece, Eigen::ComputeThinU | Eigen::ComputeThinV);
        const RVector &s = svd.singularValues();

        int r = 0;
        if (rule.kind == RankRule::Kind::fixed)
        {
            if (rule.rank < 1 || rule.rank > full)
                throw std::invalid_argument("low_rank_decompose: rank " + std::to_string(rule.rank) +
                                            " outside [1, " + std::to_string(full) + "]");
            r = rule.rank;
        }
        else
        {
            for (Eigen::Index i = 0; i < s.size(); ++i)
                if (s(i) >= rule.threshold * s(0))
                    ++r;
        }

        LowRankFactors out;
        out.rank = r;
        out.singular_values = s;
        out.subspace = svd.matrixU().leftCols(r);
        out.coefficients = s.head(r).cast<cplx>().asDiagonal() * svd.matrixV().leftCols(r).adjoint();
        out.discarded_energy = s.tail(s.size() - r).squaredNorm();
        return out;
    }

    CMatrix PiecewiseDecomposition::concatenated() const
    {
        if (pieces.empty())
            return {};
        Eigen::Index cols = 0;
        for (const auto &p : pieces)
            cols += p.cols();
        CMatrix h(pieces.front().rows(), cols);
        for (std::size_t q = 0; q < pieces.size(); ++q)
            h.middleCols(index_sets[q].begin, index_sets[q].size) = pieces[q];
        return h;
    }

    PiecewiseDecomposition decompose_initial(const CMatrix &h0_eff, int q_pieces, const RankRule &rule)
    {
        PiecewiseDecomposition out;
        out.index_sets = partition_indices(static_cast<int>(h0_eff.cols()), q_pieces);
        for (const auto &r : out.index_sets)
        {
            auto f = low_rank_decompose(h0_eff.middleCols(r.begin, r.size), rule);
            out.pieces.push_back(f.subspace * f.coefficients);
            out.subspaces.push_back(std::move(f.subspace));
            out.coefficients.push_back(std::move(f.coefficients));
            out.ranks.push_back(f.rank);
        }
        return out;
    }

    CMatrix reconstruct_effective(const PiecewiseDecomposition &decomp, const SmallTimescaleChannel &d)
    {
        if (d.pieces.size() != decomp.pieces.size())
            throw std::invalid_argument("reconstruct_effective: decomposition has " +
                                        std::to_string(decomp.pieces.size()) + " pieces, d has " +
                                        std::to_string(d.pieces.size()));
        CMatrix out = decomp.concatenated();
        for (std::size_t q = 0; q < d.pieces.size(); ++q)
        {
            const auto &r = decomp.index_sets[q];
            if (d.pieces[q].size() != r.size)
                throw std::invalid_argument("reconstruct_effective: piece " + std::to_string(q) +
                                            " length mismatch");
            out.middleCols(r.begin, r.size) = decomp.pieces[q] * d.pieces[q].asDiagonal();
        }
        return out;
    }

    CMatrix perturb_initial(const CMatrix &h0_eff, std::optional<double> target_ia_db, Rng &rng)
    {
        if (!target_ia_db)
            return h0_eff;
        if (*target_ia_db > 0.0)
            throw std::invalid_argument("perturb_initial: initial accuracy must be <= 0 dB");
        CMatrix e = rng.complex_normal_matrix(h0_eff.rows(), h0_eff.cols());
        const double scale = std::sqrt(db_to_linear(*target_ia_db) * h0_eff.squaredNorm() / e.squaredNorm());
        return h0_eff + scale * e;
    }

    double relative_error(const CMatrix &estimate, const CMatrix &truth)
    {
        if (estimate.rows() != truth.rows() || estimate.cols() != truth.cols())
            throw std::invalid_argument("relative_error: shape mismatch");
        return (estimate - truth).squaredNorm() / truth.squaredNorm();
    }

    std::string decomposition_to_json(const PiecewiseDecomposition &decomp)
    {
        using detail::json;
        json j;
        j["format"] = "ris2t-decomposition";
        j["version"] = 1;
        j["pieces"] = json::array();
        for (std::size_t q = 0; q < decomp.pieces.size(); ++q)
        {
            j["pieces"].push_back({{"begin", decomp.index_sets[q].begin},
                                   {"size", decomp.index_sets[q].size},
                                   {"rank", decomp.ranks[q]},
                                   {"subspace", detail::to_json(decomp.subspaces[q])},
                                   {"coefficients", detail::to_json(decomp.coefficients[q])}});
        }
        return j.dump();
    }

    PiecewiseDecomposition decomposition_from_json(const std::string &text)
    {
        using detail::json;
        const json j = json::parse(text);
        if (j.value("format", "") != "ris2t-decomposition")
            throw std::invalid_argument("not a ris2t decomposition dump");
        PiecewiseDecomposition out;
        for (const auto &p : j.at("pieces"))
        {
            out.index_sets.push_back({p.at("begin").get<int>(), p.at("size").get<int>()});
            out.ranks.push_back(p.at("rank").get<int>());
            out.subspaces.push_back(detail::cmatrix_from_json(p.at("subspace")));
            out.coefficients.push_back(detail::cmatrix_from_json(p.at("coefficients")));
            out.pieces.push_back(out.subspaces.back() * out.coefficients.back());
        }
        return out;
    }

} // namespace ris2t

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

#ifndef RIS2T_CHANNEL_MODEL_HPP
#define RIS2T_CHANNEL_MODEL_HPP

#include <string>
#include <vector>

#include "ris2t/common.hpp"
#include "ris2t/config.hpp"
#include "ris2t/random.hpp"

namespace ris2t
{
    /// Element positions of a uniform linear array.
    struct ArrayGeometry
    {
        std::vector<Vec3> element_positions;
        double aperture_m = 0.0;

        int count() const { return static_cast<int>(element_positions.size()); }
    };

    /// ULA of `count` elements along the y-axis, centered on `center`.
    ArrayGeometry ula(int count, const Vec3 &center, double spacing);

    ArrayGeometry bs_array(const SystemConfig &cfg);
    ArrayGeometry ris_array(const SystemConfig &cfg);

    /// MIMO advanced Rayleigh distance 4 D_bs D_ris / lambda.
    double mimo_ard(const SystemConfig &cfg);
    double mimo_ard(double bs_aperture, double ris_aperture, double wavelength);

    /// MIMO Rayleigh distance 2 D_ris^2 / lambda.
    double mimo_rd(const SystemConfig &cfg);
    double mimo_rd(double ris_aperture, double wavelength);

    /// Double-sided LoS matrix, A(n,m) = exp(j k r_nm) / r_nm.
    CMatrix los_matrix(const ArrayGeometry &bs, const ArrayGeometry &ris, double wave_number);

    /// Single-sided near-field response, a(m) = exp(j k r_m) / r_m.
    CVector los_vector(const ArrayGeometry &ris, const Vec3 &point, double wave_number);

    /// Binary blocking mask with i.i.d. Bernoulli(p) entries.
    RMatrix sample_vr(Eigen::Index rows, Eigen::Index cols, double p, Rng &rng);
    RVector sample_vr(Eigen::Index size, double p, Rng &rng);

    /// Sum of `paths` rank-one near-field responses through uniformly placed
    /// scatterers. Each path gain is complex Gaussian scaled so its mean power is
    /// `attenuation_db` below `los_power` (squared Frobenius norm of the LoS term).
    CMatrix nlos_matrix(const ArrayGeometry &bs, const ArrayGeometry &ris, const Vec3 &bs_anchor,
                        const Vec3 &ris_anchor, int paths, double attenuation_db, double los_power,
                        double wave_number, Rng &rng);
    CVector nlos_vector(const ArrayGeometry &ris, const Vec3 &ris_anchor, const Vec3 &user, int paths,
                        double attenuation_db, double los_power, double wave_number, Rng &rng);

    /// Scatterer placement: a uniform point on the segment between two anchors
    /// (fraction in [0.1, 0.9]) plus a uniform offset of up to this many meters per axis.
    inline constexpr double scatterer_spread_m = 5.0;
    Vec3 sample_scatterer(const Vec3 &from, const Vec3 &to, Rng &rng);

    /// Quasi-static RIS-BS link: H_rb = A o F + H_nlos.
    struct RisBsChannel
    {
        CMatrix h_rb;
        RMatrix vr_matrix;
    };

    /// One User-RIS draw: h = a o f + h_nlos.
    struct UserChannel
    {
        CVector h_ur;
        RVector vr_vector;
        Vec3 position{};
    };

    /// RIS-BS matrix plus T User-RIS vectors within one long coherence interval.
    struct ChannelRealization
    {
        CMatrix h_rb;
        std::vector<CVector> h_ur_seq;
        std::vector<CMatrix> h_eff_seq;
        RMatrix vr_matrix;
        std::vector<RVector> vr_vector_seq;
        /// Entries of h_ur_seq[0] below the degeneracy floor (0-based).
        std::vector<int> degenerate_indices;

        bool degenerate() const { return !degenerate_indices.empty(); }
        int t_blocks() const { return static_cast<int>(h_ur_seq.size()); }
    };

    /// Relative floor below which an h_0 entry cannot be inverted.
    inline constexpr double degeneracy_floor = 1e-12;

    /// Indices m with |h(m)| < floor * rms(h).
    std::vector<int> degenerate_entries(const CVector &h, double floor = degeneracy_floor);

    /// H_eff = H_rb diag(h).
    CMatrix effective_channel(const CMatrix &h_rb, const CVector &h_ur);

    RisBsChannel sample_ris_bs(const SystemConfig &cfg, Rng &rng);
    UserChannel sample_user(const SystemConfig &cfg, Rng &rng);

    /// Combine a fixed RIS-BS link with a sequence of user draws.
    ChannelRealization make_realization(const RisBsChannel &rb, const std::vector<UserChannel> &users);

    /// Full near-field draw: RIS-BS link then T independent user positions.
    ChannelRealization assemble_channels(const SystemConfig &cfg, Rng &rng);

    enum class ChannelModel
    {
        near_field,
        sparse,
        rayleigh
    };

    ChannelModel parse_channel_model(const std::string &name);
    std::string to_string(ChannelModel model);

    /// Far-field steering vector exp(j pi n sin(theta)), n = 0..count-1.
    CVector steering_vector(int count, double theta);

    /// Sparse far-field or i.i.d. Rayleigh channel with the same shape as the
    /// near-field draw. VR masks are all ones.
    ChannelRealization sample_comparison_channel(ChannelModel model, const SystemConfig &cfg, Rng &rng);

    /// Dispatch on the model; near_field goes to assemble_channels.
    ChannelRealization sample_channel(ChannelModel model, const SystemConfig &cfg, Rng &rng);

    /// JSON dump of a realization (complex entries as [re, im] pairs, column-major).
    std::string realization_to_json(const ChannelRealization &r);
    ChannelRealization realization_from_json(const std::string &text);

} // namespace ris2t

#endif

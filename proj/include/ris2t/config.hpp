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

#ifndef RIS2T_CONFIG_HPP
#define RIS2T_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "ris2t/common.hpp"

namespace ris2t
{
    struct Interval
    {
        double min = 0.0;
        double max = 0.0;
    };

    /// Spreading matrix family used across the Q pilots of a subframe.
    enum class Spreading
    {
        dft,
        hadamard
    };

    /// How the large-timescale oracle chooses the rank of each piece.
    struct RankRule
    {
        enum class Kind
        {
            fixed,
            threshold
        };
        Kind kind = Kind::threshold;
        int rank = 0;            // used when kind == fixed
        double threshold = 1e-12; // relative to the largest singular value

        static RankRule fixed_rank(int r) { return {Kind::fixed, r, 0.0}; }
        static RankRule relative(double tau) { return {Kind::threshold, 0, tau}; }
    };

    /// System, geometry and experiment parameters.
    ///
    /// Geometry follows the simulation scenario: BS and RIS are half-wavelength
    /// ULAs along the y-axis centered on their positions; the user sits at
    /// (-d, user_y, user_z) with d drawn uniformly from user_distance_range.
    struct SystemConfig
    {
        int n_bs = 32;
        int m_ris = 128;
        int n_rf = 8;
        int q_pieces = 8;
        double carrier_hz = 100e9;
        Vec3 bs_position{100.0, -5.0, 0.0};
        Vec3 ris_position{0.0, 0.0, 5.0};
        Interval user_distance_range{20.0, 30.0};
        double user_y = -10.0;
        double user_z = -5.0;
        double vr_prob = 0.95;
        int nlos_paths_rb = 8;
        int nlos_paths_ur = 8;
        double nlos_attenuation_db = -15.0;
        int t_blocks = 4;
        std::uint64_t seed = 1;

        // Estimation and experiment knobs.
        double snr_db = 20.0;
        int b_subframes = 0; // 0 selects 2 * B_min
        int trials = 200;
        int combiner_row_offset = 0;
        Spreading spreading = Spreading::dft;
        RankRule rank_rule{};
        std::optional<double> initial_accuracy_db; // empty means a perfect initial estimate
        double pilot_power = 1.0;

        double wavelength() const { return speed_of_light / carrier_hz; }
        double wave_number() const { return 2.0 * pi / wavelength(); }
        int m_sub() const { return m_ris / q_pieces; }

        /// Throws std::invalid_argument describing the first violated constraint.
        void validate() const;
    };

    /// N=32, M=128, N_RF=8, Q=8, T=4, 200 trials.
    SystemConfig desk_preset();

    /// N=128, M=512, N_RF=16, Q=16, T=4, 1000 trials.
    SystemConfig paper_preset();

    /// "desk" or "paper".
    SystemConfig preset(const std::string &name);

    /// Parse a JSON config. Unknown keys are rejected; missing keys keep the
    /// values of `base`.
    SystemConfig config_from_json(const std::string &text, const SystemConfig &base = desk_preset());
    SystemConfig load_config(const std::string &path, const SystemConfig &base = desk_preset());
    std::string config_to_json(const SystemConfig &cfg);

    /// Short stable hex digest of the canonical JSON form.
    std::string config_hash(const SystemConfig &cfg);

} // namespace ris2t

#endif

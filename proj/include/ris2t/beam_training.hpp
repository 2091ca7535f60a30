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

#ifndef RIS2T_BEAM_TRAINING_HPP
#define RIS2T_BEAM_TRAINING_HPP

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "ris2t/channel_model.hpp"
#include "ris2t/common.hpp"
#include "ris2t/config.hpp"

namespace ris2t
{
    /// n x n unitary DFT, F(a,b) = exp(-j 2 pi a b / n) / sqrt(n).
    CMatrix unitary_dft(int n);

    /// n x n normalized Sylvester-Hadamard matrix; n must be a power of two.
    CMatrix unitary_hadamard(int n);

    /// Piecewise reflection schedule for one time block.
    ///
    /// Pilot i of subframe b reflects with nu_[b,i], whose q-th block is
    /// sqrt(Q) Phi(q,i) v_b. The analog combiner W is fixed for all slots.
    struct ReflectionSchedule
    {
        CMatrix phi_q;                       // Q x Q unitary spreading matrix
        std::vector<CVector> subframe_vectors; // B vectors of length M_sub, unit modulus
        CMatrix combiner;                    // N_RF x N, entries of modulus 1/sqrt(N)
        int b_subframes = 0;

        int q_pieces() const { return static_cast<int>(phi_q.rows()); }
        int m_sub() const { return subframe_vectors.empty() ? 0 : static_cast<int>(subframe_vectors.front().size()); }

        /// Full M-element reflection vector for subframe b, pilot i (0-based).
        CVector reflection_vector(int b, int i) const;

        /// V_B = [v_1 ... v_B], M_sub x B.
        CMatrix subframe_matrix() const;
    };

    /// DFT (or Hadamard) spreading over Q pilots, the first B modulus-one DFT
    /// columns on M_sub points, and N_RF consecutive rows of the N-point unitary
    /// DFT starting at cfg.combiner_row_offset. Rejects B > M_sub.
    ReflectionSchedule build_schedule(const SystemConfig &cfg, int b_subframes);

    /// CSV dump: "kind,row,col,re,im" for phi, subframe vectors and combiner.
    std::string schedule_to_csv(const ReflectionSchedule &schedule);

    /// Sentinel for a noiseless run.
    inline constexpr double snr_noiseless = std::numeric_limits<double>::infinity();

    /// sigma^2 = P * mean_signal / (10^(snr/10) * mean_noise_gain), where
    /// mean_noise_gain is E||W n||^2 / sigma^2 averaged over slots.
    double noise_sigma_for_snr(double mean_signal_power, double mean_noise_gain, double snr_db);

    /// Blocks the SNR is averaged over: 1..T-1, or {0} for a single-block realization.
    std::vector<int> estimation_blocks(int t_blocks);

    /// Per-antenna noise standard deviation giving the requested SNR at the
    /// combiner output, averaged over every (b, i, t) pilot slot of the schedule
    /// in the estimation blocks. Returns 0 for snr_noiseless.
    double calibrate_noise(const ChannelRealization &realization, const ReflectionSchedule &schedule, double snr_db,
                           double pilot_power = 1.0);

    /// Raw pilot-divided receptions of one subframe, N_RF x Q (column i is y~_[b,i,t]).
    /// Noise for slot (t, b, i) is drawn from Rng::derive(noise_seed, {t, b, i}).
    CMatrix receive_subframe(const CMatrix &h_eff, const ReflectionSchedule &schedule, int b, int t, double sigma,
                             std::uint64_t noise_seed, double pilot_power = 1.0);

    /// Z = (1/sqrt(Q)) Y Phi^H.
    CMatrix despread(const CMatrix &received, const CMatrix &phi_q);

    /// Piecewise observations z_[b,q,t] for one block.
    struct BlockObservations
    {
        int t = 0;
        std::vector<std::vector<CVector>> z; // [b][q], each N_RF
    };

    struct PilotObservations
    {
        double noise_sigma = 0.0;
        double pilot_power = 1.0;
        std::vector<BlockObservations> blocks;
    };

    BlockObservations simulate_and_despread(const ChannelRealization &realization, const ReflectionSchedule &schedule,
                                            int t, double sigma, std::uint64_t noise_seed, double pilot_power = 1.0);

    /// De-spread observation of the whole effective channel used by the
    /// subspace benchmarks: the RIS sweeps all M modulus-one DFT columns while
    /// the combiner steps through ceil(N / N_RF) row groups of the N-point
    /// unitary DFT, so `despread` = H_t + noise.
    struct FullSweepObservation
    {
        CMatrix despread;
        int ris_configurations = 0;
        int combiner_groups = 0;
        int n_rf = 0;
    };

    FullSweepObservation simulate_full_sweep(const CMatrix &h_eff, int n_rf, int t, double sigma,
                                             std::uint64_t noise_seed, double pilot_power = 1.0);

    /// Same SNR definition as calibrate_noise, evaluated over the full-sweep slots.
    double calibrate_full_sweep_noise(const ChannelRealization &realization, int n_rf, double snr_db,
                                      double pilot_power = 1.0);

} // namespace ris2t

#endif

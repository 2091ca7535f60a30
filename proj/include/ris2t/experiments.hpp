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

#ifndef RIS2T_EXPERIMENTS_HPP
#define RIS2T_EXPERIMENTS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ris2t/channel_model.hpp"
#include "ris2t/config.hpp"

namespace ris2t
{
    /// One Monte Carlo measurement. Raw rows are never averaged in place.
    struct ResultRow
    {
        std::string series; // method, channel model, or "Q=<q>"
        double sweep_value = 0.0;
        int trial = 0;
        std::uint64_t seed = 0;
        std::string config_hash;
        double value = 0.0;
        int b_subframes = 0;
        int resamples = 0; // degenerate h_0 redraws before this trial was accepted
        bool flagged = false;
    };

    struct ExperimentResult
    {
        std::string experiment;
        std::string sweep_variable;
        std::vector<double> sweep_values;
        std::string metric; // nmse, kappa_log10, zeta, seconds
        int trials = 0;
        SystemConfig config;
        std::vector<ResultRow> rows;
        std::vector<double> wall_times; // seconds per solve, runtime experiments only
    };

    /// Reduction of all rows sharing (series, sweep_value).
    struct AggregateRow
    {
        std::string series;
        double sweep_value = 0.0;
        int count = 0;
        int flagged = 0;
        double mean = 0.0;
        double se = 0.0; // standard error of the mean
        double mean_db = 0.0; // nmse only
        double se_db = 0.0;   // first-order propagation of se to dB
    };

    std::vector<AggregateRow> aggregate(const ExperimentResult &result);
    const AggregateRow &find_aggregate(const std::vector<AggregateRow> &rows, const std::string &series,
                                       double sweep_value);

    std::string raw_csv(const ExperimentResult &result);
    std::string summary_csv(const ExperimentResult &result);

    enum class SweepKind
    {
        overhead, // values are pilot counts QB
        snr,      // dB
        n_rf,
        ia        // initial-accuracy dB; +inf means a perfect initial estimate
    };

    SweepKind parse_sweep_kind(const std::string &name);
    std::string to_string(SweepKind kind);

    struct RunOptions
    {
        int workers = 1;
        std::optional<int> trials; // overrides cfg.trials
    };

    /// Default grid for a sweep. Unless cfg.b_subframes is set, the n_rf sweep holds B at
    /// the base configuration's 2 B_min and the ia sweep runs at max(2 B_min, 3 M_sub / 4).
    std::vector<double> default_sweep_values(SweepKind kind, const SystemConfig &cfg);

    /// NMSE of each method at each sweep point. H_RB is drawn once from the master
    /// seed; every trial draws its own user sequence, initial-estimate error and
    /// pilot noise from substreams keyed by the trial index, shared across sweep points.
    /// Rows whose estimate is not unique (B below identifiability) are flagged.
    ExperimentResult run_nmse_sweep(const SystemConfig &cfg, SweepKind kind, const std::vector<double> &values,
                                     const std::vector<std::string> &methods, const RunOptions &options = {});

    /// Average log10 condition number of G_q over the pieces, one row per (model, B, trial).
    ExperimentResult run_condition_sweep(const SystemConfig &cfg, const std::vector<ChannelModel> &models,
                                         const std::vector<int> &b_values, const RunOptions &options = {});

    /// zeta_n of the initial effective channel, one row per (model, n, trial).
    ExperimentResult run_eigen_analysis(const SystemConfig &cfg, const std::vector<ChannelModel> &models,
                                        const RunOptions &options = {});

    /// Seconds per small-timescale estimate of one block (Gram, right-hand side and
    /// solve for every piece) over the (M, Q) grid. Each cell reports the minimum of
    /// `batches` batch means.
    ExperimentResult run_runtime_table(const SystemConfig &cfg, const std::vector<int> &m_values,
                                       const std::vector<int> &q_values, int batches = 5,
                                       double min_batch_seconds = 0.05);

    struct LawCheck
    {
        bool passed = true;
        std::vector<std::string> violations;
    };

    /// Runtime strictly increasing in M at fixed Q and strictly decreasing in Q at fixed M.
    LawCheck check_runtime_law(const ExperimentResult &runtime);

    /// Along the sweep order, every mean is at most the previous mean plus the
    /// combined standard error of the two points.
    LawCheck check_nonincreasing(const ExperimentResult &result, const std::string &series);

    struct OverheadReport
    {
        std::string method;
        long initial_block = 0; // Q ceil(N / N_RF) + M
        long per_block = 0;
        int b_subframes = 0; // tsp only
    };

    /// Pilot symbols for the initial block and each later block. tsp uses
    /// cfg.b_subframes, or 2 B_min with nominal ranks min(N_RF, M_sub, N) when zero.
    OverheadReport report_overhead(const SystemConfig &cfg, const std::string &method);

    /// Rank kept by the single-piece benchmark.
    int clra_rank(const SystemConfig &cfg);

} // namespace ris2t

#endif

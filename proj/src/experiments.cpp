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

#include "ris2t/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <iomanip>
#include <limits>
#include <map>
#include <sstream>
#include <thread>

#include "ris2t/beam_training.hpp"
#include "ris2t/multi_ls.hpp"
#include "ris2t/spectral.hpp"
#include "ris2t/two_timescale.hpp"

namespace ris2t
{
    namespace
    {
        constexpr std::uint64_t tag_ris_bs = 0x72697362;
        constexpr std::uint64_t tag_user = 0x75736572;
        constexpr std::uint64_t tag_noise = 0x6e6f6973;
        constexpr std::uint64_t tag_initial = 0x696e6974;
        constexpr std::uint64_t tag_model = 0x6d6f646c;
        constexpr std::uint64_t tag_runtime = 0x74696d65;
        constexpr int max_redraws = 64;

        /// Runs body(trial) for every trial on `workers` threads; results land in trial order.
        template <typename T, typename Body>
        std::vector<T> for_each_trial(int trials, int workers, Body body)
        {
            std::vector<T> out(static_cast<std::size_t>(trials));
            workers = std::clamp(workers, 1, std::max(trials, 1));
            if (workers == 1)
            {
                for (int k = 0; k < trials; ++k)
                    out[k] = body(k);
                return out;
            }
            std::vector<std::exception_ptr> errors(workers);
            std::vector<std::thread> pool;
            for (int w = 0; w < workers; ++w)
                pool.emplace_back([&, w] {
                    try
                    {
                        for (int k = w; k < trials; k += workers)
                            out[k] = body(k);
                    }
                    catch (...)
                    {
                        errors[w] = std::current_exception();
                    }
                });
            for (auto &t : pool)
                t.join();
            for (auto &e : errors)
                if (e)
                    std::rethrow_exception(e);
            return out;
        }

        int trial_count(const SystemConfig &cfg, const RunOptions &options)
        {
            const int n = options.trials.value_or(cfg.trials);
            if (n < 1)
                throw std::invalid_argument("trial count must be >= 1");
            return n;
        }

        struct TrialChannel
        {
            ChannelRealization realization;
            int resamples = 0;
        };

        /// User sequence for one trial over a fixed RIS-BS link, redrawn while h_0 is degenerate.
        TrialChannel draw_trial(const SystemConfig &cfg, const RisBsChannel &rb, int trial)
        {
            for (int attempt = 0; attempt < max_redraws; ++attempt)
            {
                std::vector<UserChannel> users;
                for (int t = 0; t < cfg.t_blocks; ++t)
                {
                    Rng rng = Rng::derive(cfg.seed, {tag_user, std::uint64_t(trial), std::uint64_t(attempt),
                                                     std::uint64_t(t)});
                    users.push_back(sample_user(cfg, rng));
                }
                auto realization = make_realization(rb, users);
                if (!realization.degenerate())
                    return {std::move(realization), attempt};
            }
            throw DegenerateChannelError("trial " + std::to_string(trial) + ": h_0 stayed degenerate after " +
                                         std::to_string(max_redraws) + " draws");
        }

        std::vector<int> nominal_ranks(const SystemConfig &cfg)
        {
            return std::vector<int>(cfg.q_pieces, std::min({cfg.n_rf, cfg.m_sub(), cfg.n_bs}));
        }

        int default_b(const SystemConfig &cfg, const std::vector<int> &ranks)
        {
            return std::min(2 * b_min(cfg.m_ris, cfg.q_pieces, cfg.n_rf, ranks), cfg.m_sub());
        }

        int ia_sweep_b(const SystemConfig &cfg)
        {
            return std::max(default_b(cfg, nominal_ranks(cfg)), 3 * cfg.m_sub() / 4);
        }

        SystemConfig point_config(const SystemConfig &base, SweepKind kind, double value)
        {
            SystemConfig cfg = base;
            switch (kind)
            {
            case SweepKind::overhead:
            {
                const double b = value / base.q_pieces;
                if (b < 1.0 || b != std::floor(b))
                    throw std::invalid_argument("overhead " + std::to_string(value) + " is not a positive multiple of Q");
                cfg.b_subframes = static_cast<int>(b);
                break;
            }
            case SweepKind::snr:
                cfg.snr_db = value;
                break;
            case SweepKind::n_rf:
                cfg.n_rf = static_cast<int>(value);
                if (cfg.n_rf != value)
                    throw std::invalid_argument("n_rf sweep values must be integers");
                // the pilot overhead stays at the base configuration's value
                if (cfg.b_subframes == 0)
                    cfg.b_subframes = default_b(base, nominal_ranks(base));
                break;
            case SweepKind::ia:
                if (cfg.b_subframes == 0)
                    cfg.b_subframes = ia_sweep_b(base);
                if (std::isinf(value))
                    cfg.initial_accuracy_db.reset();
                else
                    cfg.initial_accuracy_db = value;
                break;
            }
            cfg.validate();
            return cfg;
        }

        struct MethodOutcome
        {
            double nmse = 0.0;
            int b_subframes = 0;
            bool flagged = false;
        };

        MethodOutcome run_tsp(const SystemConfig &cfg, const ChannelRealization &real,
                              const PiecewiseDecomposition &decomp, std::uint64_t noise_seed)
        {
            const int b = cfg.b_subframes > 0 ? cfg.b_subframes : default_b(cfg, decomp.ranks);
            const auto schedule = build_schedule(cfg, b);
            const double sigma = calibrate_noise(real, schedule, cfg.snr_db, cfg.pilot_power);
            MethodOutcome out;
            out.b_subframes = b;
            const auto blocks = estimation_blocks(real.t_blocks());
            for (int t : blocks)
            {
                const auto obs = simulate_and_despread(real, schedule, t, sigma, noise_seed, cfg.pilot_power);
                const auto est = estimate_small_timescale(decomp, schedule, obs);
                for (const auto &d : est.diagnostics)
                    out.flagged = out.flagged || !d.unique;
                out.nmse += relative_error(reconstruct_effective(decomp, est.d), real.h_eff_seq[t]);
            }
            out.nmse /= static_cast<double>(blocks.size());
            return out;
        }

        std::vector<FullSweepObservation> full_sweeps(const SystemConfig &cfg, const ChannelRealization &real,
                                                      std::uint64_t noise_seed)
        {
            const double sigma = calibrate_full_sweep_noise(real, cfg.n_rf, cfg.snr_db, cfg.pilot_power);
            std::vector<FullSweepObservation> out;
            for (int t : estimation_blocks(real.t_blocks()))
                out.push_back(simulate_full_sweep(real.h_eff_seq[t], cfg.n_rf, t, sigma, noise_seed, cfg.pilot_power));
            return out;
        }

        MethodOutcome run_benchmark(BenchmarkMode mode, const ChannelRealization &real,
                                    const std::vector<CMatrix> &subspaces,
                                    const std::vector<FullSweepObservation> &observations)
        {
            MethodOutcome out;
            const auto blocks = estimation_blocks(real.t_blocks());
            for (std::size_t k = 0; k < blocks.size(); ++k)
            {
                const auto coeffs = benchmark_small_timescale(mode, subspaces, observations[k]);
                out.nmse += relative_error(benchmark_reconstruct(subspaces, coeffs), real.h_eff_seq[blocks[k]]);
            }
            out.nmse /= static_cast<double>(blocks.size());
            return out;
        }

        std::string format_double(double v)
        {
            if (std::isinf(v))
                return v > 0 ? "inf" : "-inf";
            if (std::isnan(v))
                return "nan";
            std::ostringstream os;
            os << std::setprecision(12) << v;
            return os.str();
        }

        bool same_point(double a, double b)
        {
            return a == b || (std::isinf(a) && std::isinf(b) && (a > 0) == (b > 0));
        }
    } // namespace

    std::vector<AggregateRow> aggregate(const ExperimentResult &result)
    {
        std::vector<AggregateRow> out;
        std::vector<std::vector<double>> samples;
        for (const auto &row : result.rows)
        {
            auto it = std::find_if(out.begin(), out.end(), [&](const AggregateRow &a) {
                return a.series == row.series && same_point(a.sweep_value, row.sweep_value);
            });
            if (it == out.end())
            {
                out.push_back({row.series, row.sweep_value});
                samples.emplace_back();
                it = out.end() - 1;
            }
            auto &s = samples[it - out.begin()];
            s.push_back(row.value);
            it->flagged += row.flagged ? 1 : 0;
        }
        for (std::size_t k = 0; k < out.size(); ++k)
        {
            const auto &s = samples[k];
            auto &a = out[k];
            a.count = static_cast<int>(s.size());
            double sum = 0.0;
            for (double v : s)
                sum += v;
            a.mean = sum / a.count;
            double ss = 0.0;
            for (double v : s)
                ss += (v - a.mean) * (v - a.mean);
            a.se = a.count > 1 ? std::sqrt(ss / (a.count - 1) / a.count) : 0.0;
            if (result.metric == "nmse")
            {
                a.mean_db = linear_to_db(a.mean);
                a.se_db = a.mean > 0.0 ? 10.0 / std::log(10.0) * a.se / a.mean : 0.0;
            }
        }
        return out;
    }

    const AggregateRow &find_aggregate(const std::vector<AggregateRow> &rows, const std::string &series,
                                       double sweep_value)
    {
        for (const auto &r : rows)
            if (r.series == series && same_point(r.sweep_value, sweep_value))
                return r;
        throw std::out_of_range("no aggregate for series '" + series + "' at " + format_double(sweep_value));
    }

    std::string raw_csv(const ExperimentResult &result)
    {
        std::ostringstream os;
        os << "experiment,series," << result.sweep_variable
           << ",trial,seed,config_hash,metric,value,b_subframes,resamples,flagged\n";
        for (const auto &r : result.rows)
            os << result.experiment << ',' << r.series << ',' << format_double(r.sweep_value) << ',' << r.trial << ','
               << r.seed << ',' << r.config_hash << ',' << result.metric << ',' << format_double(r.value) << ','
               << r.b_subframes << ',' << r.resamples << ',' << (r.flagged ? 1 : 0) << '\n';
        return os.str();
    }

    std::string summary_csv(const ExperimentResult &result)
    {
        std::ostringstream os;
        os << "experiment,series," << result.sweep_variable << ",metric,trials,flagged,mean,se";
        const bool db = result.metric == "nmse";
        if (db)
            os << ",mean_db,se_db";
        os << ",seed,config_hash\n";
        const auto hash = config_hash(result.config);
        for (const auto &a : aggregate(result))
        {
            os << result.experiment << ',' << a.series << ',' << format_double(a.sweep_value) << ',' << result.metric
               << ',' << a.count << ',' << a.flagged << ',' << format_double(a.mean) << ',' << format_double(a.se);
            if (db)
                os << ',' << format_double(a.mean_db) << ',' << format_double(a.se_db);
            os << ',' << result.config.seed << ',' << hash << '\n';
        }
        return os.str();
    }

    SweepKind parse_sweep_kind(const std::string &name)
    {
        if (name == "overhead")
            return SweepKind::overhead;
        if (name == "snr")
            return SweepKind::snr;
        if (name == "n_rf" || name == "rf")
            return SweepKind::n_rf;
        if (name == "ia")
            return SweepKind::ia;
        throw std::invalid_argument("unknown sweep '" + name + "'");
    }

    std::string to_string(SweepKind kind)
    {
        switch (kind)
        {
        case SweepKind::overhead:
            return "overhead_qb";
        case SweepKind::snr:
            return "snr_db";
        case SweepKind::n_rf:
            return "n_rf";
        case SweepKind::ia:
            return "ia_db";
        }
        return "unknown";
    }

    std::vector<double> default_sweep_values(SweepKind kind, const SystemConfig &cfg)
    {
        std::vector<double> out;
        switch (kind)
        {
        case SweepKind::overhead:
        {
            const int bmin = b_min(cfg.m_ris, cfg.q_pieces, cfg.n_rf, nominal_ranks(cfg));
            for (int b : {bmin, 2 * bmin, 3 * bmin, 4 * bmin, cfg.m_sub()})
                if (b <= cfg.m_sub() && (out.empty() || b * cfg.q_pieces > out.back()))
                    out.push_back(double(b) * cfg.q_pieces);
            break;
        }
        case SweepKind::snr:
            out = {0.0, 10.0, 20.0, 30.0};
            break;
        case SweepKind::n_rf:
            for (int n = 4; n <= cfg.n_bs; n *= 2)
                out.push_back(n);
            break;
        case SweepKind::ia:
            out = {-10.0, -20.0, -30.0, std::numeric_limits<double>::infinity()};
            break;
        }
        return out;
    }

    ExperimentResult run_nmse_sweep(const SystemConfig &cfg, SweepKind kind, const std::vector<double> &values,
                                     const std::vector<std::string> &methods, const RunOptions &options)
    {
        cfg.validate();
        if (values.empty())
            throw std::invalid_argument("run_nmse_sweep: empty sweep");
        if (methods.empty())
            throw std::invalid_argument("run_nmse_sweep: no methods");
        for (const auto &m : methods)
            if (m != "tsp" && m != "pwclra" && m != "clra")
                throw std::invalid_argument("unknown method '" + m + "'");

        const int trials = trial_count(cfg, options);
        std::vector<SystemConfig> point_cfgs;
        for (double v : values)
            point_cfgs.push_back(point_config(cfg, kind, v));

        ExperimentResult result;
        result.experiment = "nmse-" + std::string(kind == SweepKind::overhead ? "overhead"
                                                  : kind == SweepKind::snr    ? "snr"
                                                  : kind == SweepKind::n_rf   ? "rf"
                                                                              : "ia");
        result.sweep_variable = to_string(kind);
        result.sweep_values = values;
        result.metric = "nmse";
        result.trials = trials;
        result.config = cfg;
        const auto hash = config_hash(cfg);

        Rng rb_rng = Rng::derive(cfg.seed, {tag_ris_bs});
        const RisBsChannel rb = sample_ris_bs(cfg, rb_rng);

        const std::size_t cells = values.size() * methods.size();
        const bool needs_clra = std::find(methods.begin(), methods.end(), "clra") != methods.end();
        const bool needs_benchmark =
            needs_clra || std::find(methods.begin(), methods.end(), "pwclra") != methods.end();
        auto per_trial = for_each_trial<std::vector<ResultRow>>(trials, options.workers, [&](int trial) {
            std::vector<ResultRow> rows(cells);
            const auto drawn = draw_trial(cfg, rb, trial);
            const auto &real = drawn.realization;
            const std::uint64_t noise_seed = Rng::derive(cfg.seed, {tag_noise, std::uint64_t(trial)}).engine()();
            const std::uint64_t initial_seed =
                Rng::derive(cfg.seed, {tag_initial, std::uint64_t(trial)}).engine()();

            // the initial estimate only changes along the IA sweep
            std::map<double, PiecewiseDecomposition> decomps;
            std::map<double, std::vector<CMatrix>> single_subspaces;
            for (std::size_t p = 0; p < values.size(); ++p)
            {
                const auto &pc = point_cfgs[p];
                const double ia_key = pc.initial_accuracy_db.value_or(std::numeric_limits<double>::infinity());
                if (!decomps.count(ia_key))
                {
                    Rng ia_rng(initial_seed);
                    const CMatrix h0_hat = perturb_initial(real.h_eff_seq[0], pc.initial_accuracy_db, ia_rng);
                    decomps[ia_key] = decompose_initial(h0_hat, pc.q_pieces, pc.rank_rule);
                    if (needs_clra)
                        single_subspaces[ia_key] =
                            decompose_initial(h0_hat, 1, RankRule::fixed_rank(clra_rank(pc))).subspaces;
                }
                const auto &decomp = decomps[ia_key];
                std::vector<FullSweepObservation> sweeps;
                if (needs_benchmark)
                    sweeps = full_sweeps(pc, real, noise_seed);
                for (std::size_t k = 0; k < methods.size(); ++k)
                {
                    MethodOutcome outcome;
                    const auto &method = methods[k];
                    if (method == "tsp")
                        outcome = run_tsp(pc, real, decomp, noise_seed);
                    else if (method == "pwclra")
                        outcome = run_benchmark(BenchmarkMode::pwclra, real, decomp.subspaces, sweeps);
                    else
                        outcome = run_benchmark(BenchmarkMode::clra, real, single_subspaces[ia_key], sweeps);
                    if (kind == SweepKind::overhead && method != "tsp")
                        outcome.flagged = values[p] < report_overhead(pc, method).per_block;

                    auto &row = rows[k * values.size() + p];
                    row.series = method;
                    row.sweep_value = values[p];
                    row.trial = trial;
                    row.seed = cfg.seed;
                    row.config_hash = hash;
                    row.value = outcome.nmse;
                    row.b_subframes = outcome.b_subframes;
                    row.resamples = drawn.resamples;
                    row.flagged = outcome.flagged;
                }
            }
            return rows;
        });

        result.rows.reserve(cells * trials);
        for (std::size_t c = 0; c < cells; ++c)
            for (int trial = 0; trial < trials; ++trial)
                result.rows.push_back(std::move(per_trial[trial][c]));
        return result;
    }

    ExperimentResult run_condition_sweep(const SystemConfig &cfg, const std::vector<ChannelModel> &models,
                                         const std::vector<int> &b_values, const RunOptions &options)
    {
        cfg.validate();
        if (models.empty() || b_values.empty())
            throw std::invalid_argument("run_condition_sweep: empty model or B list");
        std::vector<ReflectionSchedule> schedules;
        for (int b : b_values)
        {
            if (b < 1 || b > cfg.m_sub())
                throw std::invalid_argument("run_condition_sweep: B=" + std::to_string(b) + " outside [1, M_sub]");
            schedules.push_back(build_schedule(cfg, b));
        }
        const int trials = trial_count(cfg, options);

        ExperimentResult result;
        result.experiment = "cond";
        result.sweep_variable = "b_subframes";
        for (int b : b_values)
            result.sweep_values.push_back(b);
        result.metric = "kappa_log10";
        result.trials = trials;
        result.config = cfg;
        const auto hash = config_hash(cfg);

        for (std::size_t mi = 0; mi < models.size(); ++mi)
        {
            const auto model = models[mi];
            auto per_trial = for_each_trial<std::vector<ResultRow>>(trials, options.workers, [&](int trial) {
                Rng rng = Rng::derive(cfg.seed, {tag_model, std::uint64_t(model), std::uint64_t(trial)});
                const auto real = sample_channel(model, cfg, rng);
                const auto decomp = decompose_initial(real.h_eff_seq[0], cfg.q_pieces, cfg.rank_rule);
                std::vector<ResultRow> rows;
                for (std::size_t bi = 0; bi < b_values.size(); ++bi)
                {
                    const auto &schedule = schedules[bi];
                    double sum = 0.0;
                    bool singular = false;
                    for (int q = 0; q < decomp.q_pieces(); ++q)
                    {
                        const CMatrix x = schedule.combiner * decomp.pieces[q];
                        std::vector<CMatrix> sensing;
                        for (const auto &v : schedule.subframe_vectors)
                            sensing.push_back(x * v.asDiagonal());
                        const auto kappa = condition_number(gram_matrix(sensing));
                        sum += kappa.log10;
                        singular = singular || kappa.singular;
                    }
                    ResultRow row;
                    row.series = to_string(model);
                    row.sweep_value = b_values[bi];
                    row.trial = trial;
                    row.seed = cfg.seed;
                    row.config_hash = hash;
                    row.value = sum / decomp.q_pieces();
                    row.b_subframes = b_values[bi];
                    row.flagged = singular;
                    rows.push_back(std::move(row));
                }
                return rows;
            });
            for (std::size_t bi = 0; bi < b_values.size(); ++bi)
                for (int trial = 0; trial < trials; ++trial)
                    result.rows.push_back(std::move(per_trial[trial][bi]));
        }
        return result;
    }

    ExperimentResult run_eigen_analysis(const SystemConfig &cfg, const std::vector<ChannelModel> &models,
                                        const RunOptions &options)
    {
        cfg.validate();
        if (models.empty())
            throw std::invalid_argument("run_eigen_analysis: no channel models");
        const int trials = trial_count(cfg, options);

        ExperimentResult result;
        result.experiment = "eigen";
        result.sweep_variable = "order";
        for (int n = 1; n <= cfg.n_bs; ++n)
            result.sweep_values.push_back(n);
        result.metric = "zeta";
        result.trials = trials;
        result.config = cfg;
        const auto hash = config_hash(cfg);

        for (const auto model : models)
        {
            auto per_trial = for_each_trial<std::vector<double>>(trials, options.workers, [&](int trial) {
                Rng rng = Rng::derive(cfg.seed, {tag_model, std::uint64_t(model), std::uint64_t(trial)});
                const auto real = sample_channel(model, cfg, rng);
                return relative_eigenvalue_ratios(real.h_eff_seq[0]).ratios;
            });
            for (int n = 0; n < cfg.n_bs; ++n)
                for (int trial = 0; trial < trials; ++trial)
                {
                    ResultRow row;
                    row.series = to_string(model);
                    row.sweep_value = n + 1;
                    row.trial = trial;
                    row.seed = cfg.seed;
                    row.config_hash = hash;
                    row.value = per_trial[trial][n];
                    result.rows.push_back(std::move(row));
                }
        }
        return result;
    }

    ExperimentResult run_runtime_table(const SystemConfig &cfg, const std::vector<int> &m_values,
                                       const std::vector<int> &q_values, int batches, double min_batch_seconds)
    {
        if (m_values.empty() || q_values.empty())
            throw std::invalid_argument("run_runtime_table: empty grid");
        if (batches < 1)
            throw std::invalid_argument("run_runtime_table: batches must be >= 1");
        using clock = std::chrono::steady_clock;

        ExperimentResult result;
        result.experiment = "runtime";
        result.sweep_variable = "m_ris";
        for (int m : m_values)
            result.sweep_values.push_back(m);
        result.metric = "seconds";
        result.trials = batches;
        result.config = cfg;

        for (int q : q_values)
            for (int m : m_values)
            {
                SystemConfig cell = cfg;
                cell.m_ris = m;
                cell.q_pieces = q;
                if (q < 1 || m % q != 0)
                    throw std::invalid_argument("run_runtime_table: Q=" + std::to_string(q) + " does not divide M=" +
                                                std::to_string(m));
                cell.b_subframes = 0;
                cell.validate();

                ChannelRealization real;
                for (int attempt = 0;; ++attempt)
                {
                    Rng rng = Rng::derive(cfg.seed, {tag_runtime, std::uint64_t(m), std::uint64_t(attempt)});
                    real = assemble_channels(cell, rng);
                    if (!real.degenerate())
                        break;
                    if (attempt + 1 == max_redraws)
                        throw DegenerateChannelError("run_runtime_table: degenerate h_0 for M=" + std::to_string(m));
                }
                const auto decomp = decompose_initial(real.h_eff_seq[0], q, cell.rank_rule);
                const int b = default_b(cell, decomp.ranks);
                const auto schedule = build_schedule(cell, b);
                const int t = real.t_blocks() > 1 ? 1 : 0;
                const double sigma = calibrate_noise(real, schedule, cell.snr_db, cell.pilot_power);
                const auto obs = simulate_and_despread(real, schedule, t, sigma, cfg.seed, cell.pilot_power);

                auto run_once = [&] { return estimate_small_timescale(decomp, schedule, obs).d.pieces.size(); };
                auto start = clock::now();
                std::size_t sink = run_once();
                const double first = std::chrono::duration<double>(clock::now() - start).count();
                const int reps = std::max(1, static_cast<int>(std::ceil(min_batch_seconds / std::max(first, 1e-9))));

                double best = std::numeric_limits<double>::infinity();
                for (int batch = 0; batch < batches; ++batch)
                {
                    start = clock::now();
                    for (int r = 0; r < reps; ++r)
                        sink += run_once();
                    const double mean = std::chrono::duration<double>(clock::now() - start).count() / reps;
                    result.wall_times.push_back(mean);
                    best = std::min(best, mean);
                }
                if (sink == 0)
                    throw Error("run_runtime_table: estimator returned no pieces");

                ResultRow row;
                row.series = "Q=" + std::to_string(q);
                row.sweep_value = m;
                row.trial = reps;
                row.seed = cfg.seed;
                row.config_hash = config_hash(cell);
                row.value = best;
                row.b_subframes = b;
                result.rows.push_back(std::move(row));
            }
        return result;
    }

    LawCheck check_runtime_law(const ExperimentResult &runtime)
    {
        LawCheck out;
        std::map<int, std::map<int, double>> table; // q -> m -> seconds
        for (const auto &row : runtime.rows)
            table[std::stoi(row.series.substr(2))][static_cast<int>(row.sweep_value)] = row.value;
        auto fail = [&](const std::string &msg) {
            out.passed = false;
            out.violations.push_back(msg);
        };
        for (const auto &[q, by_m] : table)
            for (auto it = std::next(by_m.begin()); it != by_m.end(); ++it)
                if (!(it->second > std::prev(it)->second))
                    fail("Q=" + std::to_string(q) + ": M=" + std::to_string(it->first) + " not slower than M=" +
                         std::to_string(std::prev(it)->first));
        for (auto qi = table.begin(); qi != table.end(); ++qi)
        {
            const auto next = std::next(qi);
            if (next == table.end())
                break;
            for (const auto &[m, secs] : qi->second)
            {
                const auto found = next->second.find(m);
                if (found != next->second.end() && !(found->second < secs))
                    fail("M=" + std::to_string(m) + ": Q=" + std::to_string(next->first) + " not faster than Q=" +
                         std::to_string(qi->first));
            }
        }
        return out;
    }

    LawCheck check_nonincreasing(const ExperimentResult &result, const std::string &series)
    {
        LawCheck out;
        const auto agg = aggregate(result);
        for (std::size_t k = 1; k < result.sweep_values.size(); ++k)
        {
            const auto &prev = find_aggregate(agg, series, result.sweep_values[k - 1]);
            const auto &cur = find_aggregate(agg, series, result.sweep_values[k]);
            const double slack = std::hypot(prev.se, cur.se);
            if (cur.mean > prev.mean + slack)
            {
                out.passed = false;
                out.violations.push_back(series + ": " + format_double(cur.mean) + " at " +
                                         format_double(cur.sweep_value) + " exceeds " + format_double(prev.mean) +
                                         " at " + format_double(prev.sweep_value) + " by more than " +
                                         format_double(slack));
            }
        }
        return out;
    }

    int clra_rank(const SystemConfig &cfg) { return std::min(cfg.n_rf, cfg.n_bs); }

    OverheadReport report_overhead(const SystemConfig &cfg, const std::string &method)
    {
        cfg.validate();
        OverheadReport out;
        out.method = method;
        const long groups = (cfg.n_bs + cfg.n_rf - 1) / cfg.n_rf;
        out.initial_block = static_cast<long>(cfg.q_pieces) * groups + cfg.m_ris;
        if (method == "tsp")
        {
            out.b_subframes = cfg.b_subframes > 0 ? cfg.b_subframes : default_b(cfg, nominal_ranks(cfg));
            out.per_block = static_cast<long>(cfg.q_pieces) * out.b_subframes;
        }
        else if (method == "pwclra")
            out.per_block = cfg.m_ris;
        else if (method == "clra")
        {
            const long r = clra_rank(cfg);
            out.per_block = (r + cfg.n_rf - 1) / cfg.n_rf * cfg.m_ris;
        }
        else
            throw std::invalid_argument("unknown method '" + method + "'");
        return out;
    }

} // namespace ris2t

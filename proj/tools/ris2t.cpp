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

#include <cmath>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ris2t/config.hpp"
#include "ris2t/experiments.hpp"
#include "ris2t/multi_ls.hpp"

namespace
{
    struct Common
    {
        std::string config_path;
        std::string preset = "desk";
        std::uint64_t seed = 0;
        bool seed_set = false;
        int trials = 0;
        int workers = 1;
        std::string out;
        std::string summary;
        std::vector<std::string> methods;
        std::vector<std::string> models;
        std::vector<double> values;
        bool verify = false;
    };

    ris2t::SystemConfig resolve_config(const Common &c)
    {
        auto cfg = ris2t::preset(c.preset);
        if (!c.config_path.empty())
            cfg = ris2t::load_config(c.config_path, cfg);
        if (c.seed_set)
            cfg.seed = c.seed;
        if (c.trials > 0)
            cfg.trials = c.trials;
        cfg.validate();
        return cfg;
    }

    void write_text(const std::string &path, const std::string &text)
    {
        if (path.empty() || path == "-")
        {
            std::cout << text;
            return;
        }
        std::ofstream f(path);
        if (!f)
            throw std::runtime_error("cannot open '" + path + "' for writing");
        f << text;
    }

    void emit(const Common &c, const ris2t::ExperimentResult &result)
    {
        if (!c.out.empty())
            write_text(c.out, ris2t::raw_csv(result));
        write_text(c.summary, ris2t::summary_csv(result));
    }

    std::vector<ris2t::ChannelModel> parse_models(const std::vector<std::string> &names)
    {
        std::vector<ris2t::ChannelModel> out;
        for (const auto &n : names)
            out.push_back(ris2t::parse_channel_model(n));
        return out;
    }

    /// Every row carries provenance and only flagged rows may hold NaN.
    bool schema_ok(const ris2t::ExperimentResult &result)
    {
        bool ok = true;
        for (const auto &r : result.rows)
            if (r.config_hash.empty() || (std::isnan(r.value) && !r.flagged))
            {
                std::cerr << "verify: malformed row for " << r.series << " at " << r.sweep_value << '\n';
                ok = false;
            }
        return ok;
    }

    bool report(const ris2t::LawCheck &check, const std::string &what)
    {
        for (const auto &v : check.violations)
            std::cerr << "verify: " << what << ": " << v << '\n';
        return check.passed;
    }

    int run_nmse(const Common &c, ris2t::SweepKind kind)
    {
        const auto cfg = resolve_config(c);
        const auto values = c.values.empty() ? ris2t::default_sweep_values(kind, cfg) : c.values;
        const auto methods = c.methods.empty() ? std::vector<std::string>{"tsp"} : c.methods;
        ris2t::RunOptions opts;
        opts.workers = c.workers;
        const auto result = ris2t::run_nmse_sweep(cfg, kind, values, methods, opts);
        emit(c, result);
        if (!c.verify)
            return 0;
        bool ok = schema_ok(result);
        for (const auto &m : methods)
            if (m == "tsp")
                ok = report(ris2t::check_nonincreasing(result, m), "tsp trend") && ok;
        return ok ? 0 : 1;
    }
} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"ris2t: two-timescale channel estimation experiments"};
    app.require_subcommand(1);
    Common c;

    auto add_common = [&](CLI::App *sub) {
        sub->add_option("--config", c.config_path, "JSON config overlaid on the preset")->check(CLI::ExistingFile);
        sub->add_option("--preset", c.preset, "Base configuration")->check(CLI::IsMember({"desk", "paper"}));
        sub->add_option_function<std::uint64_t>(
            "--seed", [&](const std::uint64_t &s) { c.seed = s; c.seed_set = true; }, "Master seed");
        sub->add_option("--trials", c.trials, "Monte Carlo trials")->check(CLI::PositiveNumber);
        sub->add_option("--workers", c.workers, "Worker threads")->check(CLI::PositiveNumber);
        sub->add_option("--out", c.out, "Raw per-trial CSV");
        sub->add_option("--summary", c.summary, "Aggregated CSV (default stdout)");
        sub->add_flag("--verify", c.verify, "Exit nonzero when an invariant fails");
    };

    auto nmse_sub = [&](const std::string &name, const std::string &help, ris2t::SweepKind kind) {
        auto *sub = app.add_subcommand(name, help);
        add_common(sub);
        sub->add_option("--methods", c.methods, "Subset of tsp,pwclra,clra")
            ->delimiter(',')
            ->check(CLI::IsMember({"tsp", "pwclra", "clra"}));
        sub->add_option("--values", c.values, "Sweep grid")->delimiter(',');
        sub->callback([&c, kind] { throw CLI::RuntimeError(run_nmse(c, kind)); });
    };
    nmse_sub("nmse-overhead", "NMSE versus pilot overhead QB", ris2t::SweepKind::overhead);
    nmse_sub("nmse-snr", "NMSE versus SNR (dB)", ris2t::SweepKind::snr);
    nmse_sub("nmse-rf", "NMSE versus RF chains at fixed overhead", ris2t::SweepKind::n_rf);
    nmse_sub("nmse-ia", "NMSE versus initial-estimate accuracy (dB; inf = perfect)", ris2t::SweepKind::ia);

    auto *eigen = app.add_subcommand("eigen", "Relative eigenvalue ratios per channel model");
    add_common(eigen);
    eigen->add_option("--models", c.models, "near_field,sparse,rayleigh")->delimiter(',');
    eigen->callback([&] {
        const auto cfg = resolve_config(c);
        ris2t::RunOptions opts;
        opts.workers = c.workers;
        const auto models = parse_models(c.models.empty() ? std::vector<std::string>{"near_field", "sparse", "rayleigh"}
                                                           : c.models);
        const auto result = ris2t::run_eigen_analysis(cfg, models, opts);
        emit(c, result);
        bool ok = !c.verify || schema_ok(result);
        if (c.verify)
            for (const auto &r : result.rows)
                if (r.value > 1e-12)
                {
                    std::cerr << "verify: positive eigen ratio " << r.value << '\n';
                    ok = false;
                }
        throw CLI::RuntimeError(ok ? 0 : 1);
    });

    auto *cond = app.add_subcommand("cond", "Gram condition number versus B per channel model");
    add_common(cond);
    cond->add_option("--models", c.models, "near_field,sparse,rayleigh")->delimiter(',');
    cond->add_option("--values", c.values, "B grid")->delimiter(',');
    cond->callback([&] {
        const auto cfg = resolve_config(c);
        ris2t::RunOptions opts;
        opts.workers = c.workers;
        const auto models = parse_models(c.models.empty() ? std::vector<std::string>{"near_field", "sparse", "rayleigh"}
                                                           : c.models);
        std::vector<int> bs;
        for (double v : c.values)
            bs.push_back(static_cast<int>(v));
        if (bs.empty())
            for (int b = 1; b <= std::min(cfg.m_sub(), 8); ++b)
                bs.push_back(b);
        const auto result = ris2t::run_condition_sweep(cfg, models, bs, opts);
        emit(c, result);
        throw CLI::RuntimeError(!c.verify || schema_ok(result) ? 0 : 1);
    });

    auto *overhead = app.add_subcommand("overhead", "Pilot symbols per block for each method");
    add_common(overhead);
    overhead->add_option("--methods", c.methods, "Subset of tsp,pwclra,clra")
        ->delimiter(',')
        ->check(CLI::IsMember({"tsp", "pwclra", "clra"}));
    overhead->callback([&] {
        const auto cfg = resolve_config(c);
        const auto methods = c.methods.empty() ? std::vector<std::string>{"tsp", "pwclra", "clra"} : c.methods;
        std::string csv = "method,initial_block,per_block,b_subframes,seed,config_hash\n";
        bool ok = true;
        const long groups = (cfg.n_bs + cfg.n_rf - 1) / cfg.n_rf;
        for (const auto &m : methods)
        {
            const auto r = ris2t::report_overhead(cfg, m);
            csv += m + "," + std::to_string(r.initial_block) + "," + std::to_string(r.per_block) + "," +
                   std::to_string(r.b_subframes) + "," + std::to_string(cfg.seed) + "," + ris2t::config_hash(cfg) +
                   "\n";
            ok = ok && r.initial_block == cfg.q_pieces * groups + cfg.m_ris;
            if (m == "tsp")
                ok = ok && r.per_block == static_cast<long>(cfg.q_pieces) * r.b_subframes;
        }
        write_text(c.out.empty() ? c.summary : c.out, csv);
        if (c.verify && !ok)
            std::cerr << "verify: overhead ledger inconsistent\n";
        throw CLI::RuntimeError(!c.verify || ok ? 0 : 1);
    });

    std::vector<int> m_values{128, 256, 512};
    std::vector<int> q_values{1, 4, 16};
    int batches = 5;
    auto *runtime = app.add_subcommand("runtime", "Multi-LS solve time over an (M, Q) grid");
    add_common(runtime);
    runtime->add_option("--m-values", m_values, "RIS sizes")->delimiter(',');
    runtime->add_option("--q-values", q_values, "Piece counts")->delimiter(',');
    runtime->add_option("--batches", batches, "Timing batches per cell")->check(CLI::PositiveNumber);
    runtime->callback([&] {
        const auto cfg = resolve_config(c);
        const auto result = ris2t::run_runtime_table(cfg, m_values, q_values, batches);
        emit(c, result);
        throw CLI::RuntimeError(!c.verify || report(ris2t::check_runtime_law(result), "runtime law") ? 0 : 1);
    });

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        return app.exit(e);
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}

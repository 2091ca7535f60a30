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

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ris2t/beam_training.hpp"
#include "ris2t/channel_model.hpp"
#include "ris2t/config.hpp"
#include "ris2t/experiments.hpp"
#include "ris2t/multi_ls.hpp"
#include "ris2t/spectral.hpp"
#include "ris2t/two_timescale.hpp"

namespace py = pybind11;
using namespace ris2t;

namespace
{
    RankRule rank_rule_from(py::object rank, double threshold)
    {
        if (rank.is_none())
            return RankRule::relative(threshold);
        return RankRule::fixed_rank(rank.cast<int>());
    }

    py::dict overhead_dict(const OverheadReport &r)
    {
        py::dict d;
        d["method"] = r.method;
        d["initial_block"] = r.initial_block;
        d["per_block"] = r.per_block;
        d["b_subframes"] = r.b_subframes;
        return d;
    }
} // namespace

PYBIND11_MODULE(_ris2t, m)
{
    m.doc() = "Two-timescale channel estimation for RIS-aided near-field MIMO";

    py::register_exception<DegenerateChannelError>(m, "DegenerateChannelError", PyExc_RuntimeError);
    py::register_exception<InsufficientObservationsError>(m, "InsufficientObservationsError", PyExc_RuntimeError);

    py::class_<SystemConfig>(m, "SystemConfig")
        .def(py::init<>())
        .def_readwrite("n_bs", &SystemConfig::n_bs)
        .def_readwrite("m_ris", &SystemConfig::m_ris)
        .def_readwrite("n_rf", &SystemConfig::n_rf)
        .def_readwrite("q_pieces", &SystemConfig::q_pieces)
        .def_readwrite("carrier_hz", &SystemConfig::carrier_hz)
        .def_readwrite("vr_prob", &SystemConfig::vr_prob)
        .def_readwrite("t_blocks", &SystemConfig::t_blocks)
        .def_readwrite("seed", &SystemConfig::seed)
        .def_readwrite("snr_db", &SystemConfig::snr_db)
        .def_readwrite("b_subframes", &SystemConfig::b_subframes)
        .def_readwrite("trials", &SystemConfig::trials)
        .def_readwrite("initial_accuracy_db", &SystemConfig::initial_accuracy_db)
        .def_property_readonly("m_sub", &SystemConfig::m_sub)
        .def_property_readonly("wavelength", &SystemConfig::wavelength)
        .def("validate", &SystemConfig::validate)
        .def("to_json", [](const SystemConfig &c) { return config_to_json(c); })
        .def("hash", [](const SystemConfig &c) { return config_hash(c); })
        .def_static(
            "from_json", [](const std::string &text, const std::string &base) { return config_from_json(text, preset(base)); },
            py::arg("text"), py::arg("base") = "desk");

    m.def("preset", &preset, py::arg("name"));
    m.def("mimo_ard", py::overload_cast<const SystemConfig &>(&mimo_ard));
    m.def("mimo_rd", py::overload_cast<const SystemConfig &>(&mimo_rd));

    py::class_<ChannelRealization>(m, "ChannelRealization")
        .def_readonly("h_rb", &ChannelRealization::h_rb)
        .def_readonly("h_ur_seq", &ChannelRealization::h_ur_seq)
        .def_readonly("h_eff_seq", &ChannelRealization::h_eff_seq)
        .def_readonly("degenerate_indices", &ChannelRealization::degenerate_indices)
        .def_property_readonly("t_blocks", &ChannelRealization::t_blocks)
        .def("to_json", [](const ChannelRealization &r) { return realization_to_json(r); });

    m.def(
        "sample_channel",
        [](const SystemConfig &cfg, const std::string &model, std::uint64_t seed) {
            Rng rng(seed);
            return sample_channel(parse_channel_model(model), cfg, rng);
        },
        py::arg("config"), py::arg("model") = "near_field", py::arg("seed") = 1);

    m.def(
        "relative_eigenvalue_ratios", [](const CMatrix &h) { return relative_eigenvalue_ratios(h).ratios; },
        py::arg("h"));
    m.def(
        "condition_number",
        [](const CMatrix &g) {
            const auto k = condition_number(g);
            return py::make_tuple(k.log10, k.singular);
        },
        py::arg("gram"));
    m.def("numerical_rank", &numerical_rank, py::arg("matrix"), py::arg("rel_tol"));

    m.def(
        "partition_indices",
        [](int m_ris, int q) {
            std::vector<std::pair<int, int>> out;
            for (const auto &r : partition_indices(m_ris, q))
                out.emplace_back(r.begin, r.size);
            return out;
        },
        py::arg("m_ris"), py::arg("q_pieces"));

    py::class_<PiecewiseDecomposition>(m, "PiecewiseDecomposition")
        .def_readonly("pieces", &PiecewiseDecomposition::pieces)
        .def_readonly("subspaces", &PiecewiseDecomposition::subspaces)
        .def_readonly("coefficients", &PiecewiseDecomposition::coefficients)
        .def_readonly("ranks", &PiecewiseDecomposition::ranks)
        .def("concatenated", &PiecewiseDecomposition::concatenated);

    m.def(
        "decompose_initial",
        [](const CMatrix &h0, int q, py::object rank, double threshold) {
            return decompose_initial(h0, q, rank_rule_from(rank, threshold));
        },
        py::arg("h0_eff"), py::arg("q_pieces"), py::arg("rank") = py::none(), py::arg("threshold") = 1e-12);

    m.def(
        "small_timescale_truth",
        [](const CVector &h0, const CVector &ht, int q) { return small_timescale_truth(h0, ht, q).concatenated(); },
        py::arg("h0"), py::arg("ht"), py::arg("q_pieces"));

    m.def(
        "reconstruct_effective",
        [](const PiecewiseDecomposition &decomp, const CVector &d) {
            return reconstruct_effective(decomp, SmallTimescaleChannel::from_full(d, decomp.index_sets, 0));
        },
        py::arg("decomposition"), py::arg("d"));

    m.def("relative_error", &relative_error, py::arg("estimate"), py::arg("truth"));
    m.def("b_min", &b_min, py::arg("m_ris"), py::arg("q_pieces"), py::arg("n_rf"), py::arg("ranks"));

    py::class_<ReflectionSchedule>(m, "ReflectionSchedule")
        .def_readonly("phi_q", &ReflectionSchedule::phi_q)
        .def_readonly("subframe_vectors", &ReflectionSchedule::subframe_vectors)
        .def_readonly("combiner", &ReflectionSchedule::combiner)
        .def_readonly("b_subframes", &ReflectionSchedule::b_subframes)
        .def("reflection_vector", &ReflectionSchedule::reflection_vector, py::arg("b"), py::arg("i"))
        .def("subframe_matrix", &ReflectionSchedule::subframe_matrix);

    m.def("build_schedule", &build_schedule, py::arg("config"), py::arg("b_subframes"));
    m.def("calibrate_noise", &calibrate_noise, py::arg("realization"), py::arg("schedule"), py::arg("snr_db"),
          py::arg("pilot_power") = 1.0);
    m.def("sensing_matrix", &sensing_matrix, py::arg("combiner"), py::arg("h_pw0"), py::arg("v_b"));
    m.def("gram_matrix", &gram_matrix, py::arg("sensing"));

    m.def(
        "estimate_block",
        [](const PiecewiseDecomposition &decomp, const ReflectionSchedule &schedule,
           const ChannelRealization &realization, int t, double sigma, std::uint64_t noise_seed) {
            const auto obs = simulate_and_despread(realization, schedule, t, sigma, noise_seed);
            const auto est = estimate_small_timescale(decomp, schedule, obs);
            py::list diags;
            for (const auto &d : est.diagnostics)
            {
                py::dict row;
                row["kappa_log10"] = d.kappa.log10;
                row["singular"] = d.kappa.singular;
                row["rank"] = d.rank;
                row["unique"] = d.unique;
                diags.append(row);
            }
            return py::make_tuple(est.d.concatenated(), diags);
        },
        py::arg("decomposition"), py::arg("schedule"), py::arg("realization"), py::arg("t"), py::arg("sigma"),
        py::arg("noise_seed") = 1,
        "Simulate the pilots of block t, de-spread, and solve the multi-LS problem of every piece.");

    m.def(
        "report_overhead", [](const SystemConfig &cfg, const std::string &method) {
            return overhead_dict(report_overhead(cfg, method));
        },
        py::arg("config"), py::arg("method"));

    py::class_<ResultRow>(m, "ResultRow")
        .def_readonly("series", &ResultRow::series)
        .def_readonly("sweep_value", &ResultRow::sweep_value)
        .def_readonly("trial", &ResultRow::trial)
        .def_readonly("seed", &ResultRow::seed)
        .def_readonly("config_hash", &ResultRow::config_hash)
        .def_readonly("value", &ResultRow::value)
        .def_readonly("flagged", &ResultRow::flagged);

    py::class_<AggregateRow>(m, "AggregateRow")
        .def_readonly("series", &AggregateRow::series)
        .def_readonly("sweep_value", &AggregateRow::sweep_value)
        .def_readonly("count", &AggregateRow::count)
        .def_readonly("flagged", &AggregateRow::flagged)
        .def_readonly("mean", &AggregateRow::mean)
        .def_readonly("se", &AggregateRow::se)
        .def_readonly("mean_db", &AggregateRow::mean_db)
        .def_readonly("se_db", &AggregateRow::se_db);

    py::class_<ExperimentResult>(m, "ExperimentResult")
        .def_readonly("experiment", &ExperimentResult::experiment)
        .def_readonly("sweep_variable", &ExperimentResult::sweep_variable)
        .def_readonly("sweep_values", &ExperimentResult::sweep_values)
        .def_readonly("metric", &ExperimentResult::metric)
        .def_readonly("rows", &ExperimentResult::rows)
        .def_readonly("wall_times", &ExperimentResult::wall_times)
        .def("aggregate", [](const ExperimentResult &r) { return aggregate(r); })
        .def("raw_csv", [](const ExperimentResult &r) { return raw_csv(r); })
        .def("summary_csv", [](const ExperimentResult &r) { return summary_csv(r); });

    m.def(
        "run_nmse_sweep",
        [](const SystemConfig &cfg, const std::string &sweep, std::vector<double> values,
           const std::vector<std::string> &methods, std::optional<int> trials, int workers) {
            const auto kind = parse_sweep_kind(sweep);
            if (values.empty())
                values = default_sweep_values(kind, cfg);
            RunOptions opts;
            opts.trials = trials;
            opts.workers = workers;
            py::gil_scoped_release release;
            return run_nmse_sweep(cfg, kind, values, methods, opts);
        },
        py::arg("config"), py::arg("sweep"), py::arg("values") = std::vector<double>{},
        py::arg("methods") = std::vector<std::string>{"tsp"}, py::arg("trials") = py::none(), py::arg("workers") = 1);

    m.def(
        "run_condition_sweep",
        [](const SystemConfig &cfg, const std::vector<std::string> &models, const std::vector<int> &b_values,
           std::optional<int> trials) {
            std::vector<ChannelModel> parsed;
            for (const auto &name : models)
                parsed.push_back(parse_channel_model(name));
            RunOptions opts;
            opts.trials = trials;
            py::gil_scoped_release release;
            return run_condition_sweep(cfg, parsed, b_values, opts);
        },
        py::arg("config"), py::arg("models"), py::arg("b_values"), py::arg("trials") = py::none());

    m.def(
        "run_eigen_analysis",
        [](const SystemConfig &cfg, const std::vector<std::string> &models, std::optional<int> trials) {
            std::vector<ChannelModel> parsed;
            for (const auto &name : models)
                parsed.push_back(parse_channel_model(name));
            RunOptions opts;
            opts.trials = trials;
            py::gil_scoped_release release;
            return run_eigen_analysis(cfg, parsed, opts);
        },
        py::arg("config"), py::arg("models"), py::arg("trials") = py::none());

    m.def(
        "run_runtime_table",
        [](const SystemConfig &cfg, const std::vector<int> &m_values, const std::vector<int> &q_values, int batches) {
            py::gil_scoped_release release;
            return run_runtime_table(cfg, m_values, q_values, batches);
        },
        py::arg("config"), py::arg("m_values"), py::arg("q_values"), py::arg("batches") = 5);
}

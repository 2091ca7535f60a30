# SPDX-License-Identifier: Apache-2.0
#
# ris2t: two-timescale channel estimation for RIS-aided near-field MIMO
# Copyright (C) 2026 The ris2t Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
# http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
# ------------------------------------------------------------------------

import math

import numpy as np
import pytest

import ris2t


def desk():
    return ris2t.preset("desk")


def test_version_and_presets():
    assert ris2t.__version__
    cfg = ris2t.preset("paper")
    assert (cfg.n_bs, cfg.m_ris, cfg.n_rf, cfg.q_pieces) == (128, 512, 16, 16)
    assert 185.0 <= ris2t.mimo_ard(cfg) <= 205.0
    assert ris2t.b_min(512, 16, 16, [16] * 16) == 2


def test_channel_shapes_and_time_scaling():
    cfg = desk()
    real = ris2t.sample_channel(cfg, "near_field", 5)
    assert real.h_rb.shape == (32, 128)
    assert len(real.h_eff_seq) == cfg.t_blocks
    h0, h1 = real.h_ur_seq[0], real.h_ur_seq[1]
    d = ris2t.small_timescale_truth(h0, h1, cfg.q_pieces)
    np.testing.assert_allclose(real.h_eff_seq[0] * d[None, :], real.h_eff_seq[1], rtol=1e-10, atol=1e-14)


def test_noiseless_block_estimate():
    cfg = desk()
    real = ris2t.sample_channel(cfg, "near_field", 7)
    decomp = ris2t.decompose_initial(real.h_eff_seq[0], cfg.q_pieces)
    bmin = ris2t.b_min(cfg.m_ris, cfg.q_pieces, cfg.n_rf, decomp.ranks)
    schedule = ris2t.build_schedule(cfg, 2 * bmin)
    d, diags = ris2t.estimate_block(decomp, schedule, real, 1, 0.0)
    truth = real.h_ur_seq[1] / real.h_ur_seq[0]
    assert np.linalg.norm(d - truth) < 1e-8 * np.linalg.norm(truth)
    assert all(row["unique"] for row in diags)
    rebuilt = ris2t.reconstruct_effective(decomp, d)
    assert ris2t.relative_error(rebuilt, real.h_eff_seq[1]) < 1e-16


def test_gram_matches_numpy():
    cfg = desk()
    real = ris2t.sample_channel(cfg, "rayleigh", 3)
    decomp = ris2t.decompose_initial(real.h_eff_seq[0], cfg.q_pieces)
    schedule = ris2t.build_schedule(cfg, 3)
    sensing = [ris2t.sensing_matrix(schedule.combiner, decomp.pieces[0], v) for v in schedule.subframe_vectors]
    expected = sum(a.conj().T @ a for a in sensing)
    np.testing.assert_allclose(ris2t.gram_matrix(sensing), expected, rtol=1e-10, atol=1e-12)
    kappa, singular = ris2t.condition_number(expected)
    assert not singular
    assert math.isclose(kappa, math.log10(np.linalg.cond(expected)), abs_tol=1e-6)


def test_overhead_and_small_sweep():
    cfg = ris2t.preset("paper")
    cfg.b_subframes = 2
    assert ris2t.report_overhead(cfg, "tsp") == {
        "method": "tsp", "initial_block": 640, "per_block": 32, "b_subframes": 2}
    result = ris2t.run_nmse_sweep(desk(), "snr", [10.0, 30.0], ["tsp", "pwclra"], trials=3)
    agg = {(a.series, a.sweep_value): a for a in result.aggregate()}
    assert agg[("pwclra", 30.0)].mean < agg[("pwclra", 10.0)].mean
    assert result.raw_csv().startswith("experiment,series,snr_db,")
    assert len(result.rows) == 2 * 2 * 3


def test_invalid_input_raises():
    cfg = desk()
    cfg.q_pieces = 7
    with pytest.raises(ValueError):
        cfg.validate()
    with pytest.raises(ValueError):
        ris2t.build_schedule(desk(), 99)

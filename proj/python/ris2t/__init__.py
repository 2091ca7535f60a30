# SPDX-License-Identifier: Apache-2.0
"""Two-timescale channel estimation for RIS-aided near-field MIMO."""

from ._ris2t import (
    AggregateRow,
    ChannelRealization,
    DegenerateChannelError,
    ExperimentResult,
    InsufficientObservationsError,
    PiecewiseDecomposition,
    ReflectionSchedule,
    ResultRow,
    SystemConfig,
    b_min,
    build_schedule,
    calibrate_noise,
    condition_number,
    decompose_initial,
    estimate_block,
    gram_matrix,
    mimo_ard,
    mimo_rd,
    numerical_rank,
    partition_indices,
    preset,
    reconstruct_effective,
    relative_eigenvalue_ratios,
    relative_error,
    report_overhead,
    run_condition_sweep,
    run_eigen_analysis,
    run_nmse_sweep,
    run_runtime_table,
    sample_channel,
    sensing_matrix,
    small_timescale_truth,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"

from .asymptotics import (
    F_TW,
    Centering,
    F_alpha,
    TWConstants,
    action_S,
    gumbel_cdf,
    interpolation_argument,
    thm1_center,
    thm1_level,
    thm1_limit_params,
    thm2_center,
    thm4_scale,
    tw_constants,
)
from .config import ExperimentConfig, read_config_file
from .errors import BudgetExceededError, NumericalError, ParameterError, WorkbenchError
from .exact import (
    enumerate_pp,
    macmahon_count,
    mb_slice_weight,
    partition_fn,
    pp_weight,
    pushforward_weights,
    schur_combinatorial_oracle,
    schur_measure_weight,
    schur_principal,
)
from .fields import (
    GeomField,
    ModelParams,
    PowField,
    RandomSeed,
    geom_param,
    pow_param,
    sample_coupled_fields,
    sample_geom_field,
    sample_pow_field,
    truncation_box,
)
from .fredholm import FredholmResult, discrete_cdf, fdet_discrete, fdet_interval, fdet_semiinfinite, fdet_series_oracle
from .harness import EmpiricalCDF, ExperimentReport, Sampler, experiment, ks_distance, run_mc
from .kernels import (
    ContourSpec,
    KernelFn,
    airy_kernel,
    bessel_kernel,
    kc_eval,
    kd_eval,
    kd_kernel,
    kd_oracle,
    khe_integral,
    khe_series,
    khe_tilde,
)
from .lpp import PathMode, lpp_log_values, lpp_oracle, lpp_value
from .tableaux import (
    InterlacingSequence,
    Partition,
    PlanePartition,
    burge_column_insert,
    diagonal_slices,
    greene_check,
    rsk_row_insert,
)

__all__ = [
    "F_TW",
    "BudgetExceededError",
    "Centering",
    "ContourSpec",
    "EmpiricalCDF",
    "ExperimentConfig",
    "ExperimentReport",
    "F_alpha",
    "FredholmResult",
    "GeomField",
    "InterlacingSequence",
    "KernelFn",
    "ModelParams",
    "NumericalError",
    "ParameterError",
    "Partition",
    "PathMode",
    "PlanePartition",
    "PowField",
    "RandomSeed",
    "Sampler",
    "TWConstants",
    "WorkbenchError",
    "action_S",
    "airy_kernel",
    "bessel_kernel",
    "burge_column_insert",
    "diagonal_slices",
    "discrete_cdf",
    "enumerate_pp",
    "experiment",
    "fdet_discrete",
    "fdet_interval",
    "fdet_semiinfinite",
    "fdet_series_oracle",
    "geom_param",
    "greene_check",
    "gumbel_cdf",
    "interpolation_argument",
    "kc_eval",
    "kd_eval",
    "kd_kernel",
    "kd_oracle",
    "khe_integral",
    "khe_series",
    "khe_tilde",
    "ks_distance",
    "lpp_log_values",
    "lpp_oracle",
    "lpp_value",
    "macmahon_count",
    "mb_slice_weight",
    "partition_fn",
    "pow_param",
    "pp_weight",
    "pushforward_weights",
    "read_config_file",
    "rsk_row_insert",
    "run_mc",
    "sample_coupled_fields",
    "sample_geom_field",
    "sample_pow_field",
    "schur_combinatorial_oracle",
    "schur_measure_weight",
    "schur_principal",
    "thm1_center",
    "thm1_level",
    "thm1_limit_params",
    "thm2_center",
    "thm4_scale",
    "truncation_box",
    "tw_constants",
]

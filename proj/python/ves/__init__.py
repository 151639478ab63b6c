"""Variable elasticity of substitution production function toolkit."""

from ves._core import (
    Bundle,
    CheckResult,
    ConstraintViolation,
    Error,
    FitResult,
    NoConvergence,
    Params,
    Report,
    SigmaLimits,
    aggregate_output,
    benchmark_params,
    classify_reduction,
    eval_bundle,
    eval_f,
    eval_fprime,
    eval_fsecond,
    eval_mrs,
    eval_shares,
    eval_sigma,
    eval_sigma_prime,
    fit,
    integrate_reduced_ode,
    limits_fprime,
    make_grid,
    residuals,
    run_all,
    shares_limits,
    sigma_limits,
    sigma_turning_point,
    synth_data,
    validate_params,
)

__version__ = "0.1.0"

__all__ = [
    "Bundle",
    "CheckResult",
    "ConstraintViolation",
    "Error",
    "FitResult",
    "NoConvergence",
    "Params",
    "Report",
    "SigmaLimits",
    "aggregate_output",
    "benchmark_params",
    "classify_reduction",
    "eval_bundle",
    "eval_f",
    "eval_fprime",
    "eval_fsecond",
    "eval_mrs",
    "eval_shares",
    "eval_sigma",
    "eval_sigma_prime",
    "fit",
    "integrate_reduced_ode",
    "limits_fprime",
    "make_grid",
    "residuals",
    "run_all",
    "shares_limits",
    "sigma_limits",
    "sigma_turning_point",
    "synth_data",
    "validate_params",
]

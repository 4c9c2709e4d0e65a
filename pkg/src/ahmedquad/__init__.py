"""Precision-parametric quadrature with a mechanically verified target.

The package integrates definite integrals at two precision tiers
(NATIVE64: machine doubles, ~16 significant digits; DOUBLEWORD:
double-word arithmetic, ~31 significant digits), and uses that
machinery to verify, step by numerically checked step, the identity

    integral[0,1] arctan(sqrt(2 + x^2)) / ((1 + x^2) sqrt(2 + x^2)) dx
        = 5 pi^2 / 96.
"""

__version__ = "0.1.0"

from .errors import (
    AhmedQuadError,
    ConfigError,
    ConvergenceError,
    DomainError,
    NonFiniteError,
    TierMismatchError,
)
from .scalar import Real, Tier, add, atan, build_info, cos, div, exp, mul, pi, sin, sqrt, sub, two_prod, two_sum
from .integrands import (
    Integrand,
    Interval,
    closed_form,
    closed_form_of,
    domain_of,
    eval_integrand,
    ids,
)
from .quad import (
    AdaptiveSimpson,
    EngineConfig,
    GaussLegendre,
    Mode,
    NodeTable,
    QuadResult,
    TanhSinh,
    gl_nodes,
    integrate_1d,
    integrate_2d,
    tanh_sinh_abscissas,
)
from .verify import (
    CombinationQ,
    ClosedFormQ,
    ConstantQ,
    Integral1DQ,
    Integral2DQ,
    Step,
    StepReport,
    builtin_chain,
    check_eq3,
    evaluate,
    reports_to_csv,
    reports_to_json,
    run_chain,
    run_step,
    seeded_a_values,
)
from .bench import BenchRow, bench_rows, correct_digits, rows_to_csv, write_plot_files

__all__ = [
    "__version__",
    "AhmedQuadError",
    "ConfigError",
    "ConvergenceError",
    "DomainError",
    "NonFiniteError",
    "TierMismatchError",
    "Real",
    "Tier",
    "add",
    "sub",
    "mul",
    "div",
    "sqrt",
    "atan",
    "sin",
    "cos",
    "exp",
    "pi",
    "two_sum",
    "two_prod",
    "build_info",
    "Integrand",
    "Interval",
    "ids",
    "closed_form",
    "closed_form_of",
    "domain_of",
    "eval_integrand",
    "Mode",
    "GaussLegendre",
    "TanhSinh",
    "AdaptiveSimpson",
    "EngineConfig",
    "QuadResult",
    "NodeTable",
    "gl_nodes",
    "tanh_sinh_abscissas",
    "integrate_1d",
    "integrate_2d",
    "ClosedFormQ",
    "ConstantQ",
    "Integral1DQ",
    "Integral2DQ",
    "CombinationQ",
    "Step",
    "StepReport",
    "evaluate",
    "builtin_chain",
    "run_step",
    "run_chain",
    "check_eq3",
    "seeded_a_values",
    "reports_to_json",
    "reports_to_csv",
    "BenchRow",
    "bench_rows",
    "correct_digits",
    "rows_to_csv",
    "write_plot_files",
]

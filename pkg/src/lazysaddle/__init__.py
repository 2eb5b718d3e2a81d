"""Saddle-point solvers built around lazily refactorized second-order steps."""

from .core import (
    CostWeights,
    NonFiniteError,
    OracleTally,
    ProblemOracle,
    tally_modeled_cost,
    weighted_average,
)
from .data import (
    LibsvmFormatError,
    SparseDataset,
    dump_libsvm,
    extract_protected,
    normalize_features,
    parse_libsvm,
    synthetic_fairness_text,
)
from .linalg import (
    LinalgError,
    NearSingularShiftError,
    SchurFactorization,
    dense_shifted_solve,
    schur_factorize,
    shifted_solve,
)
from .problems import (
    CubicBilinearProblem,
    FairnessProblem,
    ScScProblem,
    fd_check,
    make_cubic,
    make_fairness,
    make_scsc,
)
from .solvers import (
    IterationRecord,
    RestartConfig,
    RunResult,
    SolverConfig,
    eg_solve,
    len_restart_solve,
    len_solve,
    npe_solve,
    restart_schedule,
)
from .subproblem import (
    CrnResult,
    SubproblemError,
    crn_step_exact,
    crn_step_inexact,
    phi,
)

__version__ = "0.1.0"

__all__ = [
    "CostWeights",
    "CrnResult",
    "CubicBilinearProblem",
    "FairnessProblem",
    "IterationRecord",
    "LibsvmFormatError",
    "LinalgError",
    "NearSingularShiftError",
    "NonFiniteError",
    "OracleTally",
    "ProblemOracle",
    "RestartConfig",
    "RunResult",
    "ScScProblem",
    "SchurFactorization",
    "SolverConfig",
    "SparseDataset",
    "crn_step_exact",
    "crn_step_inexact",
    "dense_shifted_solve",
    "dump_libsvm",
    "eg_solve",
    "extract_protected",
    "fd_check",
    "len_restart_solve",
    "len_solve",
    "make_cubic",
    "make_fairness",
    "make_scsc",
    "normalize_features",
    "npe_solve",
    "parse_libsvm",
    "phi",
    "restart_schedule",
    "schur_factorize",
    "shifted_solve",
    "synthetic_fairness_text",
    "tally_modeled_cost",
    "weighted_average",
    "__version__",
]

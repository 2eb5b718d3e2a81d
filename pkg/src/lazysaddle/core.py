"""Shared primitives: the problem interface, evaluation counters, and the work model.

Every solver in this package talks to a problem through two callables, the field
F(z) and its Jacobian, and reports work through an OracleTally.  Counts are kept
separate from prices: CostWeights turns a tally into the modeled cost the
benchmark CLI reports, so traces stay comparable across machines.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields, replace

import numpy as np

# A point is a flat float64 vector over the joint (x, y) space.
Point = np.ndarray


class NonFiniteError(FloatingPointError):
    """An iterate, field value, or Jacobian picked up a NaN or Inf."""


def ensure_finite(arr, label: str) -> None:
    if not np.all(np.isfinite(arr)):
        bad = int(np.count_nonzero(~np.isfinite(np.asarray(arr))))
        raise NonFiniteError(f"{label}: {bad} non-finite entries")


def as_point(coords, label: str = "point") -> Point:
    z = np.asarray(coords, dtype=float)
    if z.ndim != 1:
        raise ValueError(f"{label}: expected a flat vector, got shape {z.shape}")
    ensure_finite(z, label)
    return z


class ProblemOracle:
    """Base class for saddle problems seen as a field on R^(dim_x + dim_y).

    Subclasses set ``dim_x`` and ``dim_y`` and implement ``field(z)`` returning
    (grad_x, -grad_y) of the underlying objective, and ``jacobian(z)`` returning
    the dense derivative of that field.  Optional extras, used when present:

    - ``objective(z)``: scalar value, enables the field-vs-objective check;
    - ``saddle``: a known stationary point of the field;
    - ``strong_monotonicity``: modulus mu, 0.0 when merely monotone;
    - ``rho``: Lipschitz bound on the Jacobian, feeds the default step scale;
    - ``data_nnz``: nonzeros in the problem data, feeds the default work weights;
    - ``monotone``: False for empirical problems with no monotonicity guarantee.
    """

    dim_x: int
    dim_y: int
    saddle: Point | None = None
    strong_monotonicity: float = 0.0
    rho: float | None = None
    data_nnz: int = 0
    monotone: bool = True

    @property
    def dim(self) -> int:
        return self.dim_x + self.dim_y

    def split(self, z: Point) -> tuple[np.ndarray, np.ndarray]:
        return z[: self.dim_x], z[self.dim_x :]

    def field(self, z: Point) -> np.ndarray:
        raise NotImplementedError

    def jacobian(self, z: Point) -> np.ndarray:
        raise NotImplementedError


@dataclass
class OracleTally:
    """Mutable counters for everything the solvers are charged for."""

    grad_calls: int = 0
    jac_calls: int = 0
    factorizations: int = 0
    triangular_solves: int = 0
    dense_solves: int = 0
    subproblem_newton_steps: int = 0

    def copy(self) -> "OracleTally":
        return replace(self)

    def as_dict(self) -> dict[str, int]:
        return {f.name: getattr(self, f.name) for f in fields(self)}


@dataclass(frozen=True)
class CostWeights:
    """Prices for the work model: one field evaluation costs ``n_data`` units.

    ``n_data`` plays the role of the data-pass size; Jacobian evaluations cost
    ``n_data * dim``, factorizations ``dim**3``, triangular solves ``dim**2``.
    Dense reference solves and scalar subproblem bookkeeping are not priced;
    they exist for verification, not for the benchmark.
    """

    n_data: int
    dim: int

    def __post_init__(self):
        if self.n_data < 1 or self.dim < 1:
            raise ValueError("cost weights must be positive integers")

    @classmethod
    def for_problem(cls, problem: ProblemOracle) -> "CostWeights":
        d = problem.dim
        nnz = getattr(problem, "data_nnz", 0)
        return cls(n_data=max(1, math.ceil(nnz / d)), dim=d)


def tally_modeled_cost(tally: OracleTally, weights: CostWeights) -> int:
    n, d = weights.n_data, weights.dim
    return (
        n * tally.grad_calls
        + n * d * tally.jac_calls
        + d**3 * tally.factorizations
        + d**2 * tally.triangular_solves
    )


def oracle_field(problem: ProblemOracle, z: Point, tally: OracleTally) -> np.ndarray:
    """Evaluate the field and charge one gradient call."""
    tally.grad_calls += 1
    value = np.asarray(problem.field(z), dtype=float)
    ensure_finite(value, "field value")
    return value


def oracle_jacobian(problem: ProblemOracle, z: Point, tally: OracleTally) -> np.ndarray:
    """Evaluate the field Jacobian and charge one Jacobian call."""
    tally.jac_calls += 1
    jac = np.asarray(problem.jacobian(z), dtype=float)
    ensure_finite(jac, "jacobian")
    return jac


def weighted_average(points, weights) -> Point:
    """Convex combination sum_i (w_i / sum_j w_j) p_i.

    Weights must be positive and finite.  Normalizing before accumulating keeps
    the one-point case exact: a single point comes back unchanged, bit for bit.
    """
    w = np.asarray(weights, dtype=float)
    if w.size == 0:
        raise ValueError("weighted_average: empty input")
    if w.ndim != 1 or len(points) != w.size:
        raise ValueError("weighted_average: need one weight per point")
    if not np.all(np.isfinite(w)) or np.any(w <= 0.0):
        raise ValueError("weighted_average: weights must be positive and finite")
    coeff = w / w.sum()
    out = np.zeros_like(np.asarray(points[0], dtype=float))
    for c, p in zip(coeff, points):
        out += c * np.asarray(p, dtype=float)
    return out

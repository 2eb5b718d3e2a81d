"""Benchmark problems.

Two synthetic families with known saddle points, one empirical model:

- CubicBilinearProblem: a cubically regularized bilinear game whose coupling
  matrix is unit upper bidiagonal, so the saddle point falls out of two
  bidiagonal substitutions.
- ScScProblem: the same game shifted by mu * z, making the field strongly
  monotone; its saddle is computed once by a damped Newton solve.
- FairnessProblem: logistic loss on labeled rows minus a weighted logistic
  head on a protected attribute, concave in the scalar multiplier y.  No
  monotonicity guarantee; it is here as an empirical benchmark.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dataclass_field

import numpy as np
import scipy.linalg
from scipy.special import expit

from .core import Point, ProblemOracle, as_point

SADDLE_RESIDUAL_TOL = 1e-10


def _unit_upper_bidiagonal(n: int) -> np.ndarray:
    a = np.eye(n)
    a[np.arange(n - 1), np.arange(1, n)] = -1.0
    return a


@dataclass(eq=False)
class CubicBilinearProblem(ProblemOracle):
    """min_x max_y  (rho/6)|x|^3 + y.(A x - b)  with unit upper bidiagonal A."""

    coupling: np.ndarray
    offset: np.ndarray
    rho: float

    def __post_init__(self):
        self.coupling = np.asarray(self.coupling, dtype=float)
        self.offset = as_point(self.offset, "offset")
        n = self.offset.size
        if self.coupling.shape != (n, n):
            raise ValueError("coupling matrix and offset sizes disagree")
        if not (self.rho > 0.0 and np.isfinite(self.rho)):
            raise ValueError(f"rho must be positive, got {self.rho!r}")
        self.dim_x = n
        self.dim_y = n
        self.data_nnz = int(np.count_nonzero(self.coupling) + np.count_nonzero(self.offset))
        self.saddle = self._solve_saddle()

    def _solve_saddle(self) -> Point:
        # A x = b by back substitution, then A^T y = -(rho/2)|x| x forward.
        x = scipy.linalg.solve_triangular(self.coupling, self.offset, lower=False)
        rhs = -0.5 * self.rho * np.linalg.norm(x) * x
        y = scipy.linalg.solve_triangular(self.coupling.T, rhs, lower=True)
        z = np.concatenate([x, y])
        residual = float(np.linalg.norm(self.field(z)))
        if residual > SADDLE_RESIDUAL_TOL * (1.0 + float(np.linalg.norm(z))):
            raise ArithmeticError(f"computed saddle fails stationarity: residual {residual:.3e}")
        return z

    def objective(self, z: Point) -> float:
        x, y = self.split(z)
        nx = float(np.linalg.norm(x))
        return self.rho / 6.0 * nx**3 + float(y @ (self.coupling @ x - self.offset))

    def field(self, z: Point) -> np.ndarray:
        x, y = self.split(z)
        nx = float(np.linalg.norm(x))
        fx = 0.5 * self.rho * nx * x + self.coupling.T @ y
        fy = self.offset - self.coupling @ x
        return np.concatenate([fx, fy])

    def jacobian(self, z: Point) -> np.ndarray:
        x, _ = self.split(z)
        n = self.dim_x
        nx = float(np.linalg.norm(x))
        if nx > 0.0:
            hxx = 0.5 * self.rho * (nx * np.eye(n) + np.outer(x, x) / nx)
        else:
            # |x|^(3) has exactly zero curvature at the origin.
            hxx = np.zeros((n, n))
        top = np.hstack([hxx, self.coupling.T])
        bottom = np.hstack([-self.coupling, np.zeros((n, n))])
        return np.vstack([top, bottom])


def make_cubic(n: int, seed: int) -> CubicBilinearProblem:
    """Size-n instance with +-1 offsets drawn from the seed and rho = 1/(20 n)."""
    if n < 1:
        raise ValueError("n must be at least 1")
    rng = np.random.default_rng(seed)
    offset = rng.choice([-1.0, 1.0], size=n)
    return CubicBilinearProblem(_unit_upper_bidiagonal(n), offset, 1.0 / (20.0 * n))


@dataclass(eq=False)
class ScScProblem(ProblemOracle):
    """Cubic bilinear game plus (mu/2)|x|^2 - (mu/2)|y|^2: field shifted by mu z."""

    base: CubicBilinearProblem
    mu: float

    def __post_init__(self):
        if not (self.mu > 0.0 and np.isfinite(self.mu)):
            raise ValueError(f"mu must be positive, got {self.mu!r}")
        self.dim_x = self.base.dim_x
        self.dim_y = self.base.dim_y
        self.rho = self.base.rho
        self.data_nnz = self.base.data_nnz
        self.strong_monotonicity = self.mu
        self.saddle = self._solve_saddle()

    def objective(self, z: Point) -> float:
        x, y = self.split(z)
        return self.base.objective(z) + 0.5 * self.mu * (float(x @ x) - float(y @ y))

    def field(self, z: Point) -> np.ndarray:
        return self.base.field(z) + self.mu * z

    def jacobian(self, z: Point) -> np.ndarray:
        return self.base.jacobian(z) + self.mu * np.eye(self.dim)

    def _solve_saddle(self) -> Point:
        # The shift moves the saddle off the closed form, so solve F(z) = 0 by
        # damped Newton; the mu I term keeps every Jacobian nonsingular.
        z = np.zeros(self.dim)
        for _ in range(200):
            f = self.field(z)
            residual = float(np.linalg.norm(f))
            if residual <= 1e-13 * (1.0 + float(np.linalg.norm(z))):
                break
            step = np.linalg.solve(self.jacobian(z), f)
            scale = 1.0
            while True:
                trial = z - scale * step
                if float(np.linalg.norm(self.field(trial))) < residual or scale < 1e-8:
                    z = trial
                    break
                scale *= 0.5
        else:
            raise ArithmeticError("saddle solve for the shifted problem stalled")
        residual = float(np.linalg.norm(self.field(z)))
        if residual > SADDLE_RESIDUAL_TOL * (1.0 + float(np.linalg.norm(z))):
            raise ArithmeticError(f"shifted saddle fails stationarity: residual {residual:.3e}")
        return z


def make_scsc(n: int, mu: float, seed: int) -> ScScProblem:
    return ScScProblem(make_cubic(n, seed), mu)


def _softplus_neg(t: np.ndarray) -> np.ndarray:
    # log(1 + exp(-t)) evaluated stably on both tails
    out = np.empty_like(t)
    pos = t >= 0
    out[pos] = np.log1p(np.exp(-t[pos]))
    out[~pos] = -t[~pos] + np.log1p(np.exp(t[~pos]))
    return out


@dataclass(eq=False)
class FairnessProblem(ProblemOracle):
    """Logistic accuracy head minus a protected-attribute head, scalar dual.

    Objective over x in R^d, y in R:
        mean_i[ loss(b_i a_i.x) - beta * loss(c_i y a_i.x) ] + lam |x|^2 - gamma_reg y^2
    with loss(t) = log(1 + exp(-t)), labels b and protected flags c in {-1, +1}.
    """

    features: np.ndarray
    labels: np.ndarray
    protected: np.ndarray
    beta: float = 0.5
    lam: float = 1e-4
    gamma_reg: float = 1e-4
    monotone: bool = dataclass_field(default=False, init=False)

    def __post_init__(self):
        self.features = np.asarray(self.features, dtype=float)
        self.labels = np.asarray(self.labels, dtype=float)
        self.protected = np.asarray(self.protected, dtype=float)
        n, d = self.features.shape
        if self.labels.shape != (n,) or self.protected.shape != (n,):
            raise ValueError("labels and protected flags must match the feature rows")
        if not set(np.unique(self.labels)) <= {-1.0, 1.0}:
            raise ValueError("labels must be +-1")
        if not set(np.unique(self.protected)) <= {-1.0, 1.0}:
            raise ValueError("protected flags must be +-1")
        self.n_rows = n
        self.dim_x = d
        self.dim_y = 1
        self.data_nnz = int(np.count_nonzero(self.features))

    def objective(self, z: Point) -> float:
        x, y = self.split(z)
        y0 = float(y[0])
        s = self.features @ x
        losses = _softplus_neg(self.labels * s) - self.beta * _softplus_neg(self.protected * y0 * s)
        return (
            float(np.mean(losses))
            + self.lam * float(x @ x)
            - self.gamma_reg * y0**2
        )

    def field(self, z: Point) -> np.ndarray:
        x, y = self.split(z)
        y0 = float(y[0])
        n = self.n_rows
        s = self.features @ x
        u = self.protected * y0 * s
        # loss'(t) = -expit(-t)
        w = -self.labels * expit(-self.labels * s) + self.beta * self.protected * y0 * expit(-u)
        fx = self.features.T @ w / n + 2.0 * self.lam * x
        grad_y = self.beta / n * float(np.sum(self.protected * s * expit(-u))) - 2.0 * self.gamma_reg * y0
        return np.concatenate([fx, [-grad_y]])

    def jacobian(self, z: Point) -> np.ndarray:
        x, y = self.split(z)
        y0 = float(y[0])
        n = self.n_rows
        s = self.features @ x
        u = self.protected * y0 * s
        curv_label = expit(self.labels * s) * expit(-self.labels * s)
        curv_prot = expit(u) * expit(-u)
        dvec = curv_label - self.beta * y0**2 * curv_prot
        hxx = self.features.T @ (dvec[:, None] * self.features) / n + 2.0 * self.lam * np.eye(self.dim_x)
        # d/dy of grad_x: -(beta/n) sum_i c_i [loss'(u_i) + c_i y s_i loss''(u_i)] a_i
        vvec = -self.protected * expit(-u) + y0 * s * curv_prot
        hxy = -self.beta / n * (self.features.T @ vvec)
        hyy = -self.beta / n * float(np.sum(s**2 * curv_prot)) - 2.0 * self.gamma_reg
        top = np.hstack([hxx, hxy[:, None]])
        bottom = np.concatenate([-hxy, [-hyy]])
        return np.vstack([top, bottom[None, :]])


def make_fairness(
    features,
    labels,
    protected,
    beta: float = 0.5,
    lam: float = 1e-4,
    gamma_reg: float = 1e-4,
) -> FairnessProblem:
    return FairnessProblem(
        features=np.asarray(features, dtype=float),
        labels=np.asarray(labels, dtype=float),
        protected=np.asarray(protected, dtype=float),
        beta=beta,
        lam=lam,
        gamma_reg=gamma_reg,
    )


def fd_check(
    problem: ProblemOracle,
    z: Point,
    delta: float = 1e-5,
    seed: int = 0,
    max_axes: int = 50,
) -> tuple[float, float]:
    """Central-difference consistency probe; returns (field_err, jac_err).

    jac_err compares every Jacobian column against the differenced field.
    field_err compares the field against the differenced scalar objective,
    with the dual block sign-flipped, and is nan when the problem exposes no
    objective.  Above max_axes coordinates a seeded random subset is probed.
    """
    if not (1e-8 <= delta <= 1e-2):
        raise ValueError(f"delta {delta!r} outside the supported range [1e-8, 1e-2]")
    z = as_point(z, "fd_check point")
    d = z.size
    if d <= max_axes:
        axes = np.arange(d)
    else:
        axes = np.sort(np.random.default_rng(seed).choice(d, size=max_axes, replace=False))

    jac = np.asarray(problem.jacobian(z), dtype=float)
    base_field = np.asarray(problem.field(z), dtype=float)
    jac_err = 0.0
    field_err = float("nan")
    has_objective = hasattr(problem, "objective")
    if has_objective:
        field_err = 0.0
    for k in axes:
        bump = np.zeros(d)
        bump[k] = delta
        diff_col = (problem.field(z + bump) - problem.field(z - bump)) / (2.0 * delta)
        err = float(np.max(np.abs(jac[:, k] - diff_col))) / (1.0 + float(np.max(np.abs(diff_col))))
        jac_err = max(jac_err, err)
        if has_objective:
            slope = (problem.objective(z + bump) - problem.objective(z - bump)) / (2.0 * delta)
            expected = base_field[k] if k < problem.dim_x else -base_field[k]
            field_err = max(field_err, abs(expected - slope) / (1.0 + abs(slope)))
    return field_err, jac_err

"""Extragradient-style solvers with frozen-slope Newton half-steps.

len_solve keeps one Schur factorization alive for m iterations.  Each iteration
takes the regularized Newton half-step against the frozen Jacobian, with the
shift chosen by the subproblem search, then corrects with a plain extragradient
step scaled by 1/gamma.  The returned point is the half-point average weighted
by those same 1/gamma stepsizes.  len_restart_solve wraps this in
distance-halving epochs for strongly monotone problems, eg_solve is the
first-order baseline, and npe_solve is the m = 1 special case.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, replace

import numpy as np

from .core import (
    NonFiniteError,
    OracleTally,
    Point,
    as_point,
    ensure_finite,
    oracle_field,
    oracle_jacobian,
    weighted_average,
)
from .linalg import LinalgError, schur_factorize
from .subproblem import BAND_SLACK, SubproblemError, crn_step_exact, crn_step_inexact

DIVERGENCE_GUARD = 1e12


@dataclass
class SolverConfig:
    """Knobs shared by the Newton-type solvers and the extragradient baseline.

    ``reg`` is the step-size scale coupling the shift to the displacement; when
    unset it resolves to 3 * rho * m from ``rho`` (or the problem's own bound).
    ``alpha`` widens the acceptance band; exactly 1.0 selects the exact root
    hunt instead.  ``eta0`` fixes the probe stepsize; None warm-starts each
    iteration from the previous accepted one.  ``stepsize`` is only read by
    eg_solve.
    """

    m: int = 1
    reg: float | None = None
    rho: float | None = None
    alpha: float = 2.0
    max_iters: int = 1000
    stop_tol: float = 1e-8
    crn_rel_tol: float = 1e-10
    eta0: float | None = None
    max_bisections: int = 64
    stepsize: float | None = None

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("m must be at least 1")
        if self.alpha < 1.0:
            raise ValueError("alpha below 1 makes the acceptance band empty")
        if self.alpha != 1.0 and self.alpha <= 1.0 + 1e-3:
            raise ValueError("alpha must be exactly 1 (exact mode) or exceed 1.001")
        if self.max_iters < 1:
            raise ValueError("max_iters must be positive")
        if self.stop_tol < 0.0:
            raise ValueError("stop_tol must be nonnegative")
        if self.crn_rel_tol <= 0.0:
            raise ValueError("crn_rel_tol must be positive")
        for name in ("reg", "rho", "eta0", "stepsize"):
            value = getattr(self, name)
            if value is not None and not (np.isfinite(value) and value > 0.0):
                raise ValueError(f"{name} must be positive when given, got {value!r}")
        if self.max_bisections < 1:
            raise ValueError("max_bisections must be positive")

    def resolve_reg(self, problem=None) -> float:
        if self.reg is not None:
            return float(self.reg)
        rho = self.rho
        if rho is None and problem is not None:
            rho = getattr(problem, "rho", None)
        if rho is None:
            raise ValueError("no reg given and no rho available to derive it from")
        return 3.0 * float(rho) * self.m


@dataclass
class RestartConfig:
    """Distance-halving schedule: epoch length from (reg, r0, mu), epoch count from target_eps."""

    mu: float
    r0: float
    target_eps: float = 1e-12
    inner: SolverConfig = None  # type: ignore[assignment]

    def __post_init__(self):
        if not (np.isfinite(self.mu) and self.mu > 0.0):
            raise ValueError("mu must be positive")
        if not (np.isfinite(self.r0) and self.r0 > 0.0):
            raise ValueError("r0 must be positive")
        if not 0.0 < self.target_eps < 0.5:
            raise ValueError("target_eps must sit in (0, 0.5) for the schedule to make sense")
        if self.inner is None:
            self.inner = SolverConfig()


def restart_schedule(reg: float, r0: float, mu: float, target_eps: float) -> tuple[int, int]:
    """Epoch length and epoch count for the restart wrapper."""
    inner_iters = math.ceil((2.0 * reg * r0 / mu) ** (2.0 / 3.0))
    epochs = math.ceil(math.log(math.log2(1.0 / target_eps)) / math.log(1.5))
    return max(inner_iters, 1), max(epochs, 1)


@dataclass
class IterationRecord:
    """One completed iteration, with the cumulative tally snapshot after it."""

    t: int
    gamma: float
    eta: float
    field_norm: float  # |F| at the half-point driving the correction step
    start_field_norm: float  # |F| at the iterate opening the iteration
    displacement: float
    snapshot_age: int
    newton_steps: int
    bracket_ratio: float
    accepted_by: str
    wall_seconds: float
    dist_to_saddle: float
    half_dist_to_saddle: float
    tally: OracleTally


@dataclass
class RunResult:
    status: str  # "converged" | "max_iters" | "error"
    final_point: Point
    last_point: Point
    avg_point: Point | None
    records: list[IterationRecord]
    tally: OracleTally
    resolved: dict
    diagnostic: str = ""
    half_points: list | None = None


def _saddle_distance(saddle, point) -> float:
    if saddle is None:
        return float("nan")
    return float(np.linalg.norm(point - saddle))


def _check_step_scale(step, reg: float, alpha: float, crn_rel_tol: float, t: int) -> None:
    # Runtime guard, not a test-time nicety: a step outside its contract means
    # the search returned garbage and every later iterate would inherit it.
    scaled = reg * step.displacement_norm
    if alpha == 1.0:
        ok = abs(scaled - step.gamma) <= crn_rel_tol * step.gamma
        label = f"|reg*disp - gamma| <= {crn_rel_tol:g}*gamma"
    else:
        ok = scaled * (1.0 - BAND_SLACK) <= step.gamma <= alpha * scaled * (1.0 + BAND_SLACK)
        label = "reg*disp <= gamma <= alpha*reg*disp"
    if not ok:
        raise RuntimeError(
            f"iteration {t}: accepted step violates {label} "
            f"(gamma={step.gamma:.6e}, reg*disp={scaled:.6e}, alpha={alpha})"
        )


def len_solve(
    problem,
    z0,
    config: SolverConfig,
    tally: OracleTally | None = None,
    on_record=None,
    t_offset: int = 0,
    wall_offset: float = 0.0,
) -> RunResult:
    """Newton-type extragradient loop with a factorization refreshed every m iterations.

    Stopping is checked on |F(z_t)| before any factorization or subproblem
    work, so a run that converges on a refresh boundary is not charged for a
    Jacobian it never used.  ``t_offset`` and ``wall_offset`` let the restart
    wrapper keep one global trace across epochs.
    """
    z = as_point(z0, "z0").copy()
    if tally is None:
        tally = OracleTally()
    reg = config.resolve_reg(problem)
    exact = config.alpha == 1.0
    saddle = getattr(problem, "saddle", None)
    started = time.perf_counter()

    factorization = None
    warm_eta: float | None = None
    half_points: list[Point] = []
    etas: list[float] = []
    records: list[IterationRecord] = []
    status = "max_iters"
    diagnostic = ""
    t = 0
    try:
        while t < config.max_iters:
            g = oracle_field(problem, z, tally)
            start_norm = float(np.linalg.norm(g))
            if start_norm <= config.stop_tol:
                status = "converged"
                break
            if t % config.m == 0:
                jac = oracle_jacobian(problem, z, tally)
                factorization = schur_factorize(jac)
                tally.factorizations += 1
            if exact:
                gamma0 = 1.0 / warm_eta if warm_eta is not None else reg
                step = crn_step_exact(
                    factorization,
                    z,
                    g,
                    reg,
                    rel_tol=config.crn_rel_tol,
                    gamma0=gamma0,
                    tally=tally,
                )
            else:
                if config.eta0 is not None:
                    eta0 = config.eta0
                else:
                    eta0 = warm_eta if warm_eta is not None else 1.0 / reg
                step = crn_step_inexact(
                    factorization,
                    z,
                    g,
                    reg,
                    config.alpha,
                    eta0,
                    max_bisections=config.max_bisections,
                    tally=tally,
                )
            _check_step_scale(step, reg, config.alpha, config.crn_rel_tol, t)
            z_half = step.step_point
            ensure_finite(z_half, f"half-point at iteration {t}")
            g_half = oracle_field(problem, z_half, tally)
            z_next = z - g_half / step.gamma
            ensure_finite(z_next, f"iterate after iteration {t}")

            half_points.append(z_half)
            etas.append(step.eta)
            warm_eta = step.eta
            record = IterationRecord(
                t=t + t_offset,
                gamma=step.gamma,
                eta=step.eta,
                field_norm=float(np.linalg.norm(g_half)),
                start_field_norm=start_norm,
                displacement=step.displacement_norm,
                snapshot_age=t % config.m,
                newton_steps=step.newton_steps,
                bracket_ratio=step.bracket_ratio,
                accepted_by=step.accepted_by,
                wall_seconds=wall_offset + time.perf_counter() - started,
                dist_to_saddle=_saddle_distance(saddle, z_next),
                half_dist_to_saddle=_saddle_distance(saddle, z_half),
                tally=tally.copy(),
            )
            records.append(record)
            if on_record is not None:
                on_record(record)
            z = z_next
            t += 1
    except (LinalgError, SubproblemError, NonFiniteError) as exc:
        status = "error"
        diagnostic = f"iteration {t + t_offset}: {exc}"

    avg = weighted_average(half_points, etas) if half_points else None
    if status == "converged" or avg is None:
        final = z.copy()
    else:
        final = avg
    return RunResult(
        status=status,
        final_point=final,
        last_point=z.copy(),
        avg_point=avg,
        records=records,
        tally=tally,
        resolved={
            "reg": reg,
            "m": config.m,
            "alpha": config.alpha,
            "mode": "exact" if exact else "band",
        },
        diagnostic=diagnostic,
        half_points=half_points,
    )


def npe_solve(problem, z0, config: SolverConfig, **kwargs) -> RunResult:
    """The m = 1 reduction: refactorize every iteration, everything else identical."""
    return len_solve(problem, z0, replace(config, m=1), **kwargs)


def len_restart_solve(problem, z0, restart: RestartConfig, tally: OracleTally | None = None, on_record=None) -> RunResult:
    """Run fixed-length epochs of len_solve, feeding each average into the next start.

    Requires strong monotonicity; the epoch length is chosen so each epoch
    at least halves the squared distance to the saddle, which compounds into
    faster-than-geometric decay of the epoch distances.  Inner runs get an
    effectively-zero stopping tolerance so every epoch spends exactly its
    budget unless the field norm underflows.
    """
    mu = getattr(problem, "strong_monotonicity", 0.0)
    if not mu or mu <= 0.0:
        raise ValueError("len_restart_solve needs a strongly monotone problem")
    if tally is None:
        tally = OracleTally()
    reg = restart.inner.resolve_reg(problem)
    inner_iters, epochs = restart_schedule(reg, restart.r0, restart.mu, restart.target_eps)
    inner_config = replace(
        restart.inner,
        reg=reg,
        max_iters=inner_iters,
        stop_tol=float(np.finfo(float).tiny),
    )
    saddle = getattr(problem, "saddle", None)
    z = as_point(z0, "z0").copy()
    records: list[IterationRecord] = []
    epoch_distances: list[float] = []
    status = "converged"
    diagnostic = ""
    last_point = z.copy()
    wall = 0.0
    for epoch in range(epochs):
        result = len_solve(
            problem,
            z,
            inner_config,
            tally=tally,
            on_record=on_record,
            t_offset=epoch * inner_iters,
            wall_offset=wall,
        )
        records.extend(result.records)
        last_point = result.last_point
        if result.records:
            wall = result.records[-1].wall_seconds
        z = result.final_point.copy()
        epoch_distances.append(_saddle_distance(saddle, z))
        if result.status == "error":
            status = "error"
            diagnostic = f"epoch {epoch}: {result.diagnostic}"
            break
    return RunResult(
        status=status,
        final_point=z,
        last_point=last_point,
        avg_point=z.copy(),
        records=records,
        tally=tally,
        resolved={
            "reg": reg,
            "m": restart.inner.m,
            "alpha": restart.inner.alpha,
            "mode": "exact" if restart.inner.alpha == 1.0 else "band",
            "inner_iters": inner_iters,
            "epochs": epochs,
            "mu": restart.mu,
            "r0": restart.r0,
            "target_eps": restart.target_eps,
            "epoch_distances": epoch_distances,
        },
        diagnostic=diagnostic,
    )


def eg_solve(problem, z0, config: SolverConfig, tally: OracleTally | None = None, on_record=None) -> RunResult:
    """Plain extragradient with a fixed stepsize; the first-order baseline.

    Two field evaluations per iteration, no curvature anywhere.  A divergence
    guard aborts once the iterate norm passes 1e12; with a bad stepsize on an
    unbounded field that is a matter of a few dozen iterations.
    """
    if config.stepsize is None:
        raise ValueError("eg_solve needs config.stepsize")
    step_size = config.stepsize
    z = as_point(z0, "z0").copy()
    if tally is None:
        tally = OracleTally()
    saddle = getattr(problem, "saddle", None)
    started = time.perf_counter()
    records: list[IterationRecord] = []
    status = "max_iters"
    diagnostic = ""
    t = 0
    try:
        while t < config.max_iters:
            if float(np.linalg.norm(z)) > DIVERGENCE_GUARD:
                status = "error"
                diagnostic = f"iteration {t}: iterate norm passed {DIVERGENCE_GUARD:g}, diverging"
                break
            g = oracle_field(problem, z, tally)
            start_norm = float(np.linalg.norm(g))
            if start_norm <= config.stop_tol:
                status = "converged"
                break
            z_half = z - step_size * g
            ensure_finite(z_half, f"half-point at iteration {t}")
            g_half = oracle_field(problem, z_half, tally)
            z_next = z - step_size * g_half
            ensure_finite(z_next, f"iterate after iteration {t}")
            record = IterationRecord(
                t=t,
                gamma=float("nan"),
                eta=step_size,
                field_norm=float(np.linalg.norm(g_half)),
                start_field_norm=start_norm,
                displacement=float(np.linalg.norm(z_half - z)),
                snapshot_age=0,
                newton_steps=0,
                bracket_ratio=float("nan"),
                accepted_by="fixed_step",
                wall_seconds=time.perf_counter() - started,
                dist_to_saddle=_saddle_distance(saddle, z_next),
                half_dist_to_saddle=_saddle_distance(saddle, z_half),
                tally=tally.copy(),
            )
            records.append(record)
            if on_record is not None:
                on_record(record)
            z = z_next
            t += 1
    except NonFiniteError as exc:
        status = "error"
        diagnostic = f"iteration {t}: {exc}"
    return RunResult(
        status=status,
        final_point=z.copy(),
        last_point=z.copy(),
        avg_point=None,
        records=records,
        tally=tally,
        resolved={"stepsize": step_size},
        diagnostic=diagnostic,
    )

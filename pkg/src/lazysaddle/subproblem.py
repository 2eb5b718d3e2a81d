"""Step-size search for the regularized Newton half-step.

Each iteration must pick a shift gamma consistent with the displacement it
induces: writing delta(gamma) for the solution of (J + gamma I) delta = -F(z),
the target is gamma = reg * |delta(gamma)|.  The exact path hunts that root of
the scalar residual phi.  The banded path settles for any gamma with
reg * |delta| <= gamma <= alpha * reg * |delta|, which a probe plus a geometric
bisection finds in two or three solves in practice.  Both report how many
linear solves they spent, since that is the quantity the lazy scheme trades
against factorizations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import OracleTally, Point
from .linalg import SchurFactorization, shifted_solve

# Band membership uses closed comparisons with this relative slack so an exact
# boundary hit in floating point cannot make the search loop forever.
BAND_SLACK = 1e-12

# Bracket expansion limits for the exact root hunt.
GAMMA_CAP = 1e30
GAMMA_FLOOR = 1e-30


class SubproblemError(RuntimeError):
    """The step-size search failed to terminate inside its contract."""


@dataclass
class CrnResult:
    """One accepted half-step: the point, its shift, and the search cost."""

    step_point: Point
    gamma: float
    eta: float
    displacement_norm: float
    newton_steps: int
    accepted_by: str  # "exact_root" | "bracketing" | "bisection"
    bracket_ratio: float  # c+/c- after the probe; nan for the exact path


def phi(
    fact: SchurFactorization,
    g,
    gamma: float,
    reg: float,
    tally: OracleTally | None = None,
) -> float:
    """Residual reg * |delta(gamma)| - gamma; strictly decreasing in gamma."""
    h = shifted_solve(fact, gamma, g, tally=tally)
    return reg * float(np.linalg.norm(h)) - gamma


def _displacement(fact, z, g, gamma, tally):
    # z_half - z = -(J + gamma I)^{-1} F(z)
    delta = -shifted_solve(fact, gamma, g, tally=tally)
    return delta, float(np.linalg.norm(delta))


def crn_step_exact(
    fact: SchurFactorization,
    z: Point,
    g,
    reg: float,
    rel_tol: float = 1e-10,
    gamma0: float | None = None,
    max_steps: int = 200,
    tally: OracleTally | None = None,
) -> CrnResult:
    """Drive |reg * |delta(gamma)| - gamma| below rel_tol * gamma.

    Brackets the root by doubling or halving from the warm start, then bisects
    in log scale.  Termination is on the residual itself, not the bracket
    width, so the returned gamma honors the advertised tolerance directly.
    """
    if reg <= 0.0 or not np.isfinite(reg):
        raise ValueError(f"crn_step_exact: reg must be positive, got {reg!r}")
    if float(np.linalg.norm(g)) == 0.0:
        raise SubproblemError("crn_step_exact: field is zero; no positive root exists")

    gamma = float(gamma0) if gamma0 is not None and np.isfinite(gamma0) and gamma0 > 0 else reg
    steps = 0

    def residual(at):
        nonlocal steps
        delta, dn = _displacement(fact, z, g, at, tally)
        steps += 1
        return reg * dn - at, delta, dn

    def accept(at, delta, dn):
        if tally is not None:
            tally.subproblem_newton_steps += steps
        return CrnResult(
            step_point=z + delta,
            gamma=at,
            eta=1.0 / at,
            displacement_norm=dn,
            newton_steps=steps,
            accepted_by="exact_root",
            bracket_ratio=float("nan"),
        )

    r, delta, dn = residual(gamma)
    if abs(r) <= rel_tol * gamma:
        return accept(gamma, delta, dn)

    # phi > 0 means gamma sits left of the root; grow, otherwise shrink.
    if r > 0.0:
        lo = gamma
        hi = gamma
        while r > 0.0:
            hi *= 2.0
            if hi > GAMMA_CAP:
                raise SubproblemError(f"exact root bracket grew past {GAMMA_CAP:g}")
            r, delta, dn = residual(hi)
            if abs(r) <= rel_tol * hi:
                return accept(hi, delta, dn)
            if r > 0.0:
                lo = hi
    else:
        hi = gamma
        lo = gamma
        while r < 0.0:
            lo /= 2.0
            if lo < GAMMA_FLOOR:
                raise SubproblemError(f"exact root bracket shrank past {GAMMA_FLOOR:g}")
            r, delta, dn = residual(lo)
            if abs(r) <= rel_tol * lo:
                return accept(lo, delta, dn)
            if r < 0.0:
                hi = lo

    for _ in range(max_steps):
        mid = math.sqrt(lo * hi)
        r, delta, dn = residual(mid)
        if abs(r) <= rel_tol * mid:
            return accept(mid, delta, dn)
        if r > 0.0:
            lo = mid
        else:
            hi = mid
    raise SubproblemError(f"exact root hunt did not converge within {max_steps} bisections")


def crn_step_inexact(
    fact: SchurFactorization,
    z: Point,
    g,
    reg: float,
    alpha: float,
    eta0: float,
    max_bisections: int = 64,
    tally: OracleTally | None = None,
) -> CrnResult:
    """Find eta with 1/(alpha*reg) <= eta * |delta(1/eta)| <= 1/reg.

    Probes the warm start first.  A miss pins a bracket [c_lo, c_hi] whose
    endpoints come from the probe displacement itself, then geometric bisection
    walks the test value into the band.  The bracket ratio after the probe
    bounds the number of solves doubly logarithmically, which is what makes the
    banded path cheap enough to run every iteration.
    """
    if alpha <= 1.0 + 1e-3:
        raise ValueError("crn_step_inexact: alpha must exceed 1.001; use the exact path for alpha=1")
    if not (np.isfinite(eta0) and eta0 > 0.0):
        raise ValueError(f"crn_step_inexact: eta0 must be positive, got {eta0!r}")
    if reg <= 0.0 or not np.isfinite(reg):
        raise ValueError(f"crn_step_inexact: reg must be positive, got {reg!r}")

    lo_edge = 1.0 / (alpha * reg)
    hi_edge = 1.0 / reg

    def in_band(value):
        return lo_edge * (1.0 - BAND_SLACK) <= value <= hi_edge * (1.0 + BAND_SLACK)

    def accept(eta, delta, dn, steps, how, ratio):
        if tally is not None:
            tally.subproblem_newton_steps += steps
        return CrnResult(
            step_point=z + delta,
            gamma=1.0 / eta,
            eta=eta,
            displacement_norm=dn,
            newton_steps=steps,
            accepted_by=how,
            bracket_ratio=ratio,
        )

    delta, dn = _displacement(fact, z, g, 1.0 / eta0, tally)
    steps = 1
    if dn == 0.0:
        raise SubproblemError("crn_step_inexact: zero displacement; field already stationary")
    probe = eta0 * dn
    ratio = max(1.0 / (eta0 * reg * dn), alpha * reg * eta0 * dn)
    if in_band(probe):
        return accept(eta0, delta, dn, steps, "bracketing", ratio)
    if probe <= lo_edge:
        c_lo, c_hi = eta0, 1.0 / (reg * dn)
    else:
        c_lo, c_hi = 1.0 / (alpha * reg * dn), eta0

    for _ in range(max_bisections):
        eta = math.sqrt(c_lo * c_hi)
        delta, dn = _displacement(fact, z, g, 1.0 / eta, tally)
        steps += 1
        value = eta * dn
        if in_band(value):
            return accept(eta, delta, dn, steps, "bisection", ratio)
        if value > hi_edge:
            c_hi = eta
        else:
            c_lo = eta
    raise SubproblemError(
        f"band search did not settle within {max_bisections} bisections "
        f"(bracket ratio {ratio:.3e}, alpha {alpha})"
    )

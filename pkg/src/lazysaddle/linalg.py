"""Schur machinery for repeated shifted solves against one frozen matrix.

The solvers refresh the Jacobian only every few iterations, so each frozen
matrix is reduced once to complex Schur form (an O(d^3) pass) and every later
solve against (J + gamma I) costs two unitary multiplies plus one triangular
back substitution, O(d^2).  Real input with complex eigenvalues forces the
complex form; the real part is extracted at the end and the imaginary residue
is treated as an error signal, not noise to be discarded silently.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .core import OracleTally, ensure_finite

# Tolerances for the factorization contract.  Reconstruction is checked at
# build time because a silently bad factorization poisons every later solve.
UNITARY_TOL = 1e-8
STRICT_LOWER_TOL = 1e-10
RECONSTRUCTION_TOL = 1e-8
IMAG_LEAK_TOL = 1e-8
DIAGONAL_FLOOR = 1e-14


class LinalgError(RuntimeError):
    """A factorization or solve violated its numerical contract."""


class NearSingularShiftError(LinalgError):
    """The shifted triangular factor has a diagonal entry too close to zero."""


@dataclass(frozen=True)
class SchurFactorization:
    """J = unitary @ triangular @ unitary^H with complex upper-triangular factor."""

    unitary: np.ndarray
    triangular: np.ndarray
    dim: int


def schur_factorize(jac) -> SchurFactorization:
    """Reduce a real square matrix to complex Schur form.

    The caller owns the factorization counter; this function only builds and
    validates the factors.  Reconstruction failure raises instead of returning
    factors that would corrupt every shifted solve built on top of them.
    """
    jac = np.asarray(jac, dtype=float)
    if jac.ndim != 2 or jac.shape[0] != jac.shape[1]:
        raise ValueError(f"schur_factorize: expected a square matrix, got {jac.shape}")
    ensure_finite(jac, "schur_factorize input")
    triangular, unitary = scipy.linalg.schur(jac, output="complex")
    residual = np.linalg.norm(unitary @ triangular @ unitary.conj().T - jac)
    if residual > RECONSTRUCTION_TOL * (1.0 + np.linalg.norm(jac)):
        raise LinalgError(f"schur reconstruction residual {residual:.3e} out of contract")
    return SchurFactorization(unitary=unitary, triangular=triangular, dim=jac.shape[0])


def shifted_solve(
    fact: SchurFactorization, gamma: float, g, tally: OracleTally | None = None
) -> np.ndarray:
    """Solve (J + gamma I) h = g through the Schur factors; returns a real vector.

    Cost is one back substitution plus two unitary multiplies.  The imaginary
    part of the lifted solution must vanish to rounding; anything larger means
    the factorization and the right-hand side disagree and the run must stop.
    """
    if not (np.isfinite(gamma) and gamma > 0.0):
        raise ValueError(f"shifted_solve: gamma must be positive and finite, got {gamma!r}")
    g = np.asarray(g, dtype=float)
    if g.shape != (fact.dim,):
        raise ValueError(f"shifted_solve: rhs shape {g.shape} does not match dim {fact.dim}")
    ensure_finite(g, "shifted_solve rhs")

    shifted_diag = fact.triangular.diagonal() + gamma
    smallest = float(np.min(np.abs(shifted_diag)))
    if smallest <= DIAGONAL_FLOOR:
        raise NearSingularShiftError(
            f"shifted diagonal entry {smallest:.3e} at gamma={gamma:.6e}; "
            "matrix is numerically singular under this shift"
        )

    shifted = fact.triangular.copy()
    np.fill_diagonal(shifted, shifted_diag)
    w = fact.unitary.conj().T @ g
    y = scipy.linalg.solve_triangular(shifted, w, lower=False, check_finite=False)
    lifted = fact.unitary @ y

    imag = float(np.linalg.norm(lifted.imag))
    if imag > IMAG_LEAK_TOL * (1.0 + float(np.linalg.norm(lifted))):
        raise LinalgError(
            f"imaginary residue {imag:.3e} in shifted solve at gamma={gamma:.6e}"
        )
    h = np.ascontiguousarray(lifted.real)
    ensure_finite(h, "shifted_solve result")
    if tally is not None:
        tally.triangular_solves += 1
    return h


def dense_shifted_solve(jac, gamma: float, g, tally: OracleTally | None = None) -> np.ndarray:
    """LU reference route for (J + gamma I) h = g; prices as a dense solve.

    Kept deliberately independent of the Schur path so the two can be compared
    against each other in tests.
    """
    jac = np.asarray(jac, dtype=float)
    g = np.asarray(g, dtype=float)
    if not (np.isfinite(gamma) and gamma > 0.0):
        raise ValueError(f"dense_shifted_solve: gamma must be positive and finite, got {gamma!r}")
    h = np.linalg.solve(jac + gamma * np.eye(jac.shape[0]), g)
    ensure_finite(h, "dense_shifted_solve result")
    if tally is not None:
        tally.dense_solves += 1
    return h

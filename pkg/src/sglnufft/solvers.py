"""Conjugate-gradient normal-equation solvers and the iterative inverse.

``cgnr`` minimizes ||b - A x||_2 through the normal equations of the first
kind (over-determined systems); ``cgne`` finds the minimum-norm solution of
a consistent under-determined system through the second kind.  Both operate
on a matrix-free operator pair and only ever call apply/apply_adjoint.

``invert`` assembles the operator pair from a transform plan and recovers
expansion coefficients from scattered samples; the regime (CGNR vs CGNE) is
picked by comparing the sample count with the coefficient count unless
overridden.  An optional ground-truth vector enables per-iteration error
tracking: the residual can keep decreasing while the coefficient error
grows, and the report keeps the two histories strictly apart.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import transform
from .indexing import coeff_count


@dataclass
class LinearOperatorPair:
    """Matrix-free operator with its conjugate transpose."""

    apply: Callable[[np.ndarray], np.ndarray]
    apply_adjoint: Callable[[np.ndarray], np.ndarray]
    domain_dim: int
    codomain_dim: int

    def pairing_defect(self, x: np.ndarray, y: np.ndarray) -> float:
        """|<Ax, y> - <x, A^H y>| / (||x|| ||y||), a consistency check."""
        lhs = np.vdot(y, self.apply(x))
        rhs = np.vdot(self.apply_adjoint(y), x)
        return float(abs(lhs - rhs) / (np.linalg.norm(x) * np.linalg.norm(y)))


def operator_from_matrix(a: np.ndarray) -> LinearOperatorPair:
    a = np.asarray(a)
    return LinearOperatorPair(
        apply=lambda x: a @ x,
        apply_adjoint=lambda y: a.conj().T @ y,
        domain_dim=a.shape[1],
        codomain_dim=a.shape[0],
    )


@dataclass
class SolveReport:
    """Outcome of an iterative solve."""

    solution: np.ndarray
    iterations: int
    converged: bool
    residual_history: list[float] = field(default_factory=list)
    abs_error_history: list[float] | None = None
    rel_error_history: list[float] | None = None


def _norm_sq(x: np.ndarray, compensated: bool) -> float:
    if compensated:
        return math.fsum(np.abs(x.ravel()) ** 2)
    return float(np.real(np.vdot(x, x)))


def cgnr(
    op: LinearOperatorPair,
    rhs: np.ndarray,
    x0: np.ndarray | None = None,
    max_iter: int = 100,
    tol: float = 1e-12,
    compensated: bool = False,
    monitor: Callable[[np.ndarray], None] | None = None,
) -> SolveReport:
    """Least-squares solve of A x = rhs via CG on A^H A x = A^H rhs.

    Stops when the relative normal-equation residual ||A^H r|| / ||A^H rhs||
    drops below ``tol`` or after ``max_iter`` steps.  The recorded residual
    history holds ||rhs - A x_k||, which is non-increasing on consistent
    systems.  With ``compensated`` the step-size inner products are summed
    with compensated (exact) accumulation.
    """
    rhs = np.asarray(rhs, dtype=complex)
    if rhs.shape != (op.codomain_dim,):
        raise ValueError("right-hand side length does not match the operator")
    x = np.zeros(op.domain_dim, dtype=complex) if x0 is None else np.array(x0, dtype=complex)
    if x.shape != (op.domain_dim,):
        raise ValueError("initial guess length does not match the operator")
    r = rhs - op.apply(x)
    z = op.apply_adjoint(r)
    p = z.copy()
    z_sq = _norm_sq(z, compensated)
    ref = np.sqrt(_norm_sq(op.apply_adjoint(rhs), compensated)) or 1.0
    history = [float(np.linalg.norm(r))]
    if monitor is not None:
        monitor(x)
    converged = np.sqrt(z_sq) / ref <= tol
    it = 0
    while it < max_iter and not converged:
        w = op.apply(p)
        alpha = z_sq / _norm_sq(w, compensated)
        x += alpha * p
        r -= alpha * w
        z = op.apply_adjoint(r)
        z_sq_next = _norm_sq(z, compensated)
        p = z + (z_sq_next / z_sq) * p
        z_sq = z_sq_next
        it += 1
        history.append(float(np.linalg.norm(r)))
        if monitor is not None:
            monitor(x)
        converged = np.sqrt(z_sq) / ref <= tol
    return SolveReport(solution=x, iterations=it, converged=bool(converged),
                       residual_history=history)


def cgne(
    op: LinearOperatorPair,
    rhs: np.ndarray,
    max_iter: int = 100,
    tol: float = 1e-12,
    compensated: bool = False,
    monitor: Callable[[np.ndarray], None] | None = None,
) -> SolveReport:
    """Minimum-norm solve of the consistent system A x = rhs (second kind).

    Starts from zero, so the iterates stay in the row space and the limit is
    the minimum-2-norm solution.  Stops on ||rhs - A x|| / ||rhs|| <= tol.
    """
    rhs = np.asarray(rhs, dtype=complex)
    if rhs.shape != (op.codomain_dim,):
        raise ValueError("right-hand side length does not match the operator")
    x = np.zeros(op.domain_dim, dtype=complex)
    r = rhs.copy()
    p = op.apply_adjoint(r)
    r_sq = _norm_sq(r, compensated)
    ref = np.sqrt(r_sq) or 1.0
    history = [float(np.sqrt(r_sq))]
    if monitor is not None:
        monitor(x)
    converged = history[-1] / ref <= tol
    it = 0
    while it < max_iter and not converged:
        alpha = r_sq / _norm_sq(p, compensated)
        x += alpha * p
        r -= alpha * op.apply(p)
        r_sq_next = _norm_sq(r, compensated)
        p = op.apply_adjoint(r) + (r_sq_next / r_sq) * p
        r_sq = r_sq_next
        it += 1
        history.append(float(np.sqrt(r_sq)))
        if monitor is not None:
            monitor(x)
        converged = history[-1] / ref <= tol
    return SolveReport(solution=x, iterations=it, converged=bool(converged),
                       residual_history=history)


def midpoint_initial_guess(
    values: np.ndarray,
    points: np.ndarray,
    B: int,
    kappa: float,
    grid_n: int,
    weight: str = "cell",
) -> np.ndarray:
    """Riemann-sum estimate of the coefficients from Cartesian-grid samples.

    One weighted adjoint pass over the grid: coefficients of f are
    approximated by w * sum_i f(x_i) conj(H(x_i)) exp(-r_i^2).
    ``weight='cell'`` uses the cell volume (2 kappa / N)^3;
    ``weight='eight-over-n'`` uses the prefactor 8/N instead, which is off
    by a kappa-dependent factor but harmless as a CG seed.
    """
    values = np.asarray(values, dtype=complex)
    points = np.atleast_2d(np.asarray(points, dtype=float))
    if weight == "cell":
        w = (2.0 * kappa / grid_n) ** 3
    elif weight == "eight-over-n":
        w = 8.0 / grid_n
    else:
        raise ValueError("weight must be 'cell' or 'eight-over-n'")
    damped = values * np.exp(-points[:, 0] ** 2)
    return w * transform.evaluate_direct_adjoint(damped, B, points)


def operator_from_plan(p: transform.SglPlan) -> LinearOperatorPair:
    """Forward/adjoint transform pair of a plan as a matrix-free operator."""
    return LinearOperatorPair(
        apply=lambda x: transform.forward(p, x),
        apply_adjoint=lambda y: transform.adjoint(p, y),
        domain_dim=coeff_count(p.B),
        codomain_dim=p.m_points,
    )


def invert(
    points: np.ndarray,
    values: np.ndarray,
    B: int,
    sigma: int = 2,
    q: int = 16,
    solver: str = "auto",
    max_iter: int = 500,
    tol: float = 1e-12,
    x0_mode: str = "zero",
    exact_last_stage: bool = False,
    rho: float | None = None,
    kappa: float | None = None,
    grid_n: int | None = None,
    true_coeffs: np.ndarray | None = None,
    compensated: bool = False,
    backend: str = "auto",
) -> SolveReport:
    """Recover expansion coefficients from scattered samples by CG iteration.

    ``solver='auto'`` picks CGNR when the sample count is at least the
    coefficient count and CGNE otherwise; an explicit choice against the
    regime only warns (the first-kind equations remain usable at square
    size).  ``x0_mode='midpoint'`` seeds CGNR with the Riemann-sum guess and
    requires ``kappa`` and ``grid_n``.  Passing ``true_coeffs`` records the
    max-abs and max-rel coefficient error after every iteration.
    """
    points = np.atleast_2d(np.asarray(points, dtype=float))
    values = np.asarray(values, dtype=complex)
    count = coeff_count(B)
    m = points.shape[0]
    p = transform.plan(B, points, sigma=sigma, q=q, rho=rho,
                       exact_last_stage=exact_last_stage, backend=backend)
    op = operator_from_plan(p)
    if solver == "auto":
        solver = "cgnr" if m >= count else "cgne"
    elif solver == "cgnr" and m < count:
        warnings.warn("CGNR requested on an under-determined system", stacklevel=2)
    elif solver == "cgne" and m > count:
        warnings.warn("CGNE requested on an over-determined system", stacklevel=2)
    if solver not in ("cgnr", "cgne"):
        raise ValueError("solver must be 'auto', 'cgnr' or 'cgne'")
    abs_hist: list[float] = []
    rel_hist: list[float] = []
    monitor = None
    if true_coeffs is not None:
        truth = np.asarray(true_coeffs, dtype=complex)

        def monitor(xk, _t=truth):
            d = np.abs(xk - _t)
            abs_hist.append(float(np.max(d)))
            rel_hist.append(float(np.max(d / np.abs(_t))))

    if x0_mode == "midpoint":
        if kappa is None or grid_n is None:
            raise ValueError("midpoint initialization requires kappa and grid_n")
        x0 = midpoint_initial_guess(values, points, B, kappa, grid_n)
    elif x0_mode == "zero":
        x0 = None
    else:
        raise ValueError("x0_mode must be 'zero' or 'midpoint'")
    if solver == "cgnr":
        report = cgnr(op, values, x0=x0, max_iter=max_iter, tol=tol,
                      compensated=compensated, monitor=monitor)
    else:
        if x0 is not None:
            warnings.warn("CGNE ignores the initial guess (minimum-norm start)",
                          stacklevel=2)
        report = cgne(op, values, max_iter=max_iter, tol=tol,
                      compensated=compensated, monitor=monitor)
    if true_coeffs is not None:
        report.abs_error_history = abs_hist
        report.rel_error_history = rel_hist
    return report

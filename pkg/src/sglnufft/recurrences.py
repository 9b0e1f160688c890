"""Clenshaw summation, its adjoint, and the discrete Legendre transform.

Works for any function family f_0, f_1, ... obeying a three-term recurrence

    f_{k+1}(x) = alpha_k(x) f_k(x) + beta_k(x) f_{k-1}(x),    k >= 1,

given the coefficient functions and the two seeds.  Instances are provided
for Chebyshev polynomials, associated Legendre functions P_{l,m} seeded at
l = |m| (optionally divided by sqrt(1-x^2), which keeps the odd-order
weighting of the spherical stage free of small denominators), and the
normalized Laguerre radial functions of the basis.

``precise=True`` runs the recursions in numpy longdouble (80-bit extended
on x86-64), the closest portable stand-in for doing these accumulations in
hardware extended precision.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.special import gammaln

from .dct import chebyshev_nodes
from .special import legendre_seeds


@dataclass(frozen=True)
class ThreeTermRecurrence:
    """Coefficient functions and seeds of a recurrent function family."""

    alpha: Callable[[int, np.ndarray], np.ndarray]
    beta: Callable[[int, np.ndarray], np.ndarray]
    f0: Callable[[np.ndarray], np.ndarray]
    f1: Callable[[np.ndarray], np.ndarray]

    def table(self, n: int, xs: np.ndarray) -> np.ndarray:
        """Dense (n, len(xs)) table of f_0..f_{n-1} by direct upward recurrence."""
        xs = np.asarray(xs, dtype=float)
        out = np.empty((n, xs.size), dtype=float)
        if n > 0:
            out[0] = self.f0(xs)
        if n > 1:
            out[1] = self.f1(xs)
        for k in range(2, n):
            out[k] = self.alpha(k - 1, xs) * out[k - 1] + self.beta(k - 1, xs) * out[k - 2]
        return out


def chebyshev_recurrence() -> ThreeTermRecurrence:
    return ThreeTermRecurrence(
        alpha=lambda k, x: 2.0 * x,
        beta=lambda k, x: np.full_like(x, -1.0),
        f0=lambda x: np.ones_like(x),
        f1=lambda x: x,
    )


def legendre_recurrence(m: int, over_sin: bool = False) -> ThreeTermRecurrence:
    """Family f_k = P_{|m|+k, m}, optionally divided by sqrt(1-x^2).

    The degree recurrence (l+1-m) P_{l+1,m} = (2l+1) x P_{lm} - (l+m) P_{l-1,m}
    is unchanged by the sqrt weighting.
    """
    am = abs(m)

    def alpha(k, x, _am=am, _m=m):
        l = _am + k
        return (2 * l + 1) * x / (l + 1 - _m)

    def beta(k, x, _am=am, _m=m):
        l = _am + k
        return np.full_like(x, -(l + _m) / (l + 1 - _m))

    return ThreeTermRecurrence(
        alpha=alpha,
        beta=beta,
        f0=lambda x: legendre_seeds(m, x, over_sin)[0],
        f1=lambda x: legendre_seeds(m, x, over_sin)[1],
    )


def radial_recurrence(l: int) -> ThreeTermRecurrence:
    """Normalized radial family f_k(r) = N(k+l+1, l) L_k^{(l+1/2)}(r^2) r^l.

    Folding the normalization into the recurrence keeps the values bounded
    where the raw Laguerre recurrence would overflow.
    """
    a = l + 0.5
    c0 = np.exp(0.5 * (np.log(2.0) - gammaln(l + 1.5)))

    def alpha(k, r, _a=a):
        return (2 * k + 1 + _a - r * r) / (k + 1) * np.sqrt((k + 1) / (k + 1 + _a))

    def beta(k, r, _a=a):
        return np.full_like(r, -np.sqrt(k * (k + _a) / ((k + 1) * (k + 1 + _a))))

    def f0(r, _c0=c0, _l=l):
        return _c0 * r**_l

    def f1(r, _c0=c0, _l=l, _a=a):
        return _c0 / np.sqrt(1 + _a) * (1 + _a - r * r) * r**_l

    return ThreeTermRecurrence(alpha=alpha, beta=beta, f0=f0, f1=f1)


def clenshaw_eval(
    rec: ThreeTermRecurrence,
    gamma: np.ndarray,
    xs: np.ndarray,
    precise: bool = False,
) -> np.ndarray:
    """Sums S_j = sum_k gamma[..., k] f_k(x_j) by the backward recursion.

    ``gamma`` has shape (..., n) and the result (..., len(xs)); auxiliary
    storage is O(batch * len(xs)).
    """
    gamma = np.asarray(gamma)
    xs = np.asarray(xs, dtype=np.longdouble if precise else float)
    n = gamma.shape[-1]
    if n == 0:
        raise ValueError("empty coefficient vector")
    if precise:
        gamma = gamma.astype(
            np.clongdouble if np.iscomplexobj(gamma) else np.longdouble
        )
    f0 = rec.f0(xs)
    if n == 1:
        out = gamma[..., 0, None] * f0
        return out.astype(complex if np.iscomplexobj(gamma) else float)
    # b_k = gamma_k + alpha_k b_{k+1} + beta_{k+1} b_{k+2}, k = n-1 .. 1
    b1 = np.zeros(gamma.shape[:-1] + xs.shape, dtype=gamma.dtype)
    b2 = np.zeros_like(b1)
    for k in range(n - 1, 0, -1):
        b1, b2 = gamma[..., k, None] + rec.alpha(k, xs) * b1 + rec.beta(k + 1, xs) * b2, b1
    out = gamma[..., 0, None] * f0 + rec.f1(xs) * b1 + rec.beta(1, xs) * f0 * b2
    return out.astype(complex if np.iscomplexobj(gamma) else float)


def clenshaw_adjoint(
    rec: ThreeTermRecurrence,
    data: np.ndarray,
    xs: np.ndarray,
    n: int,
    precise: bool = False,
) -> np.ndarray:
    """Transposed sums out_k = sum_j data[..., j] f_k(x_j), k = 0..n-1.

    Runs the recurrence upward over the point values, accumulating one
    inner product per degree; O(len(xs)) auxiliary storage.
    """
    data = np.asarray(data)
    xs = np.asarray(xs, dtype=np.longdouble if precise else float)
    if n < 1:
        raise ValueError("output length must be >= 1")
    if precise:
        data = data.astype(np.clongdouble if np.iscomplexobj(data) else np.longdouble)
    out = np.empty(data.shape[:-1] + (n,), dtype=data.dtype)
    f_prev = rec.f0(xs)
    out[..., 0] = data @ f_prev
    if n == 1:
        return out.astype(complex if np.iscomplexobj(data) else float)
    f_cur = rec.f1(xs)
    out[..., 1] = data @ f_cur
    for k in range(2, n):
        f_cur, f_prev = rec.alpha(k - 1, xs) * f_cur + rec.beta(k - 1, xs) * f_prev, f_cur
        out[..., k] = data @ f_cur
    return out.astype(complex if np.iscomplexobj(data) else float)


def legendre_angles(n: int) -> np.ndarray:
    """Node angles (2j+1) pi / 4n, j = 0..2n-1, all inside (0, pi)."""
    return chebyshev_nodes(2 * n)


def legendre_matrix(m: int, n: int) -> np.ndarray:
    """Dense (n-|m|) x 2n matrix [P_{lm}(cos theta_j)], the reference path."""
    if abs(m) >= n:
        raise ValueError(f"|m| = {abs(m)} must be below n = {n}")
    return legendre_recurrence(m).table(n - abs(m), np.cos(legendre_angles(n)))


def dlt(m: int, n: int, data: np.ndarray, precise: bool = False) -> np.ndarray:
    """Discrete Legendre transform: coeff_l = sum_j P_{lm}(cos theta_j) data_j.

    ``data`` has shape (..., 2n); the result (..., n-|m|) covers degrees
    l = |m|..n-1.
    """
    if abs(m) >= n:
        raise ValueError(f"|m| = {abs(m)} must be below n = {n}")
    data = np.asarray(data)
    if data.shape[-1] != 2 * n:
        raise ValueError("data length must be 2n")
    xs = np.cos(legendre_angles(n))
    return clenshaw_adjoint(legendre_recurrence(m), data, xs, n - abs(m), precise)


def dlt_adjoint(
    m: int,
    n: int,
    coeffs: np.ndarray,
    weight_odd: bool = False,
    precise: bool = False,
) -> np.ndarray:
    """Transpose of :func:`dlt`: data_j = w_j sum_l coeffs_l P_{lm}(cos theta_j).

    With ``weight_odd`` the weight is w_j = 1/sin(theta_j), fused into the
    recurrence seeds so no explicit division by a small sine occurs; all
    node angles are interior to (0, pi), so the weighting is well defined.
    """
    if abs(m) >= n:
        raise ValueError(f"|m| = {abs(m)} must be below n = {n}")
    coeffs = np.asarray(coeffs)
    if coeffs.shape[-1] != n - abs(m):
        raise ValueError("coefficient length must be n - |m|")
    xs = np.cos(legendre_angles(n))
    return clenshaw_eval(legendre_recurrence(m, over_sin=weight_odd), coeffs, xs, precise)


def dlt_weighted(m: int, n: int, data: np.ndarray, weight_odd: bool = False,
                 precise: bool = False) -> np.ndarray:
    """Adjoint of :func:`dlt_adjoint`: the transform applied to w_j data_j."""
    if abs(m) >= n:
        raise ValueError(f"|m| = {abs(m)} must be below n = {n}")
    data = np.asarray(data)
    if data.shape[-1] != 2 * n:
        raise ValueError("data length must be 2n")
    xs = np.cos(legendre_angles(n))
    return clenshaw_adjoint(
        legendre_recurrence(m, over_sin=weight_odd), data, xs, n - abs(m), precise
    )

"""Special functions for the spherical Gauss-Laguerre basis.

The basis functions evaluated here are products of a normalized radial part

    N(n,l) * L_{n-l-1}^{(l+1/2)}(r^2) * r^l,      N(n,l) = sqrt(2 (n-l-1)! / Gamma(n+1/2)),

and a spherical harmonic

    Y_{lm}(theta, phi) = Q(l,m) * P_{lm}(cos theta) * exp(i m phi),

with Q(l,m) = sqrt((2l+1)/(4 pi) * (l-m)!/(l+m)!).  Everything is evaluated
by upward three-term recurrences; factorial/Gamma ratios go through
log-gamma so that large orders do not overflow.  The associated Legendre
functions carry the Condon-Shortley phase (-1)^m.

All functions broadcast over their point arguments and are pure.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np
from scipy.special import gammaln


class SglIndex(NamedTuple):
    """Basis triple (n, l, m) with |m| <= l < n."""

    n: int
    l: int
    m: int


def _check_index(n: int, l: int, m: int) -> None:
    if not (0 <= l < n and abs(m) <= l):
        raise ValueError(f"invalid basis index (n, l, m) = ({n}, {l}, {m})")


def laguerre(k: int, alpha: float, x):
    """Generalized Laguerre polynomial L_k^(alpha)(x) by upward recurrence.

    Uses (k+1) L_{k+1} = (2k+1+alpha-x) L_k - (k+alpha) L_{k-1} starting
    from L_0 = 1, L_1 = 1 + alpha - x.  No rescaling is applied; for very
    large arguments the recurrence loses accuracy (see README notes).
    """
    if k < 0:
        raise ValueError("degree k must be >= 0")
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)):
        raise ValueError("non-finite evaluation point")
    p_prev = np.zeros_like(x)
    p = np.ones_like(x)
    for j in range(k):
        p, p_prev = ((2 * j + 1 + alpha - x) * p - (j + alpha) * p_prev) / (j + 1), p
    return p if p.ndim else float(p)


def _double_factorial_log(m: int) -> float:
    """log((2m-1)!!) for m >= 0, via (2m)!/(2^m m!)."""
    if m == 0:
        return 0.0
    return gammaln(2 * m + 1) - m * np.log(2.0) - gammaln(m + 1)


def legendre_seeds(m: int, x, over_sqrt1mx2: bool = False):
    """Seed values P_{|m|,m}(x) and P_{|m|+1,m}(x) for the degree recurrence.

    With ``over_sqrt1mx2`` both seeds are divided by sqrt(1-x^2), which is
    exact for |m| >= 1 (the factor (1-x^2)^{|m|/2} loses half a power) and
    keeps the odd-order weighting free of small denominators.

    Negative orders follow P_{l,-m} = (-1)^m (l-m)!/(l+m)! P_{lm}.
    """
    x = np.asarray(x, dtype=float)
    am = abs(m)
    if over_sqrt1mx2 and am < 1:
        raise ValueError("sqrt weighting requires |m| >= 1")
    if m >= 0:
        log_c = _double_factorial_log(am)
        sign = -1.0 if am % 2 else 1.0
    else:
        # P_{m,-m} = (1-x^2)^{m/2} / (2m)!!  with  (2m)!! = 2^m m!
        log_c = -(am * np.log(2.0) + gammaln(am + 1))
        sign = 1.0
    half_power = am - 1 if over_sqrt1mx2 else am
    s2 = np.clip(1.0 - x * x, 0.0, None)
    f0 = sign * np.exp(log_c) * s2 ** (half_power / 2.0)
    f1 = (2 * am + 1 if m > 0 else 1) * x * f0
    return f0, f1


def assoc_legendre(l: int, m: int, x):
    """Associated Legendre function P_{lm}(x), Condon-Shortley convention.

    Upward recurrence in the degree,
    (l+1-m) P_{l+1,m} = (2l+1) x P_{lm} - (l+m) P_{l-1,m},
    seeded at l = |m|.
    """
    if abs(m) > l:
        raise ValueError(f"order |m| = {abs(m)} exceeds degree l = {l}")
    x = np.asarray(x, dtype=float)
    if np.any(np.abs(x) > 1 + 1e-12):
        raise ValueError("argument outside [-1, 1]")
    am = abs(m)
    p, p_next = legendre_seeds(m, x)
    if l == am:
        out = p
    elif l == am + 1:
        out = p_next
    else:
        for ll in range(am + 1, l):
            p_next, p = ((2 * ll + 1) * x * p_next - (ll + m) * p) / (ll + 1 - m), p_next
        out = p_next
    return out if out.ndim else float(out)


def chebyshev(k: int, x):
    """Chebyshev polynomial of the first kind, T_k(x) = cos(k arccos x)."""
    if k < 0:
        raise ValueError("degree k must be >= 0")
    x = np.asarray(x, dtype=float)
    out = np.cos(k * np.arccos(np.clip(x, -1.0, 1.0)))
    return out if out.ndim else float(out)


def sgl_norm(n: int, l: int) -> float:
    """Radial normalization sqrt(2 (n-l-1)! / Gamma(n+1/2)), in log space."""
    _check_index(n, l, 0)
    return float(np.exp(0.5 * (np.log(2.0) + gammaln(n - l) - gammaln(n + 0.5))))


def sph_norm(l: int, m: int) -> float:
    """Spherical-harmonic normalization sqrt((2l+1)/(4 pi) (l-m)!/(l+m)!)."""
    if abs(m) > l:
        raise ValueError(f"order |m| = {abs(m)} exceeds degree l = {l}")
    return float(
        np.exp(
            0.5
            * (
                np.log((2 * l + 1) / (4.0 * np.pi))
                + gammaln(l - m + 1)
                - gammaln(l + m + 1)
            )
        )
    )


def radial_part(n: int, l: int, r):
    """Unnormalized radial factor L_{n-l-1}^{(l+1/2)}(r^2) * r^l."""
    _check_index(n, l, 0)
    r = np.asarray(r, dtype=float)
    if np.any(r < 0):
        raise ValueError("radius must be nonnegative")
    out = laguerre(n - l - 1, l + 0.5, r * r) * r**l
    return out if np.ndim(out) else float(out)


def spherical_harmonic(l: int, m: int, theta, phi):
    """Orthonormal spherical harmonic Q(l,m) P_{lm}(cos theta) e^{i m phi}."""
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    out = (
        sph_norm(l, m)
        * assoc_legendre(l, m, np.cos(theta))
        * np.exp(1j * m * phi)
    )
    return out if np.ndim(out) else complex(out)


def sgl_basis_eval(idx: SglIndex | tuple, point) -> complex | np.ndarray:
    """Evaluate the basis function of index (n, l, m) at (r, theta, phi).

    ``point`` is a length-3 sequence or an (..., 3) array of spherical
    coordinates.
    """
    n, l, m = idx
    _check_index(n, l, m)
    p = np.asarray(point, dtype=float)
    r, theta, phi = p[..., 0], p[..., 1], p[..., 2]
    out = sgl_norm(n, l) * radial_part(n, l, r) * spherical_harmonic(l, m, theta, phi)
    return out if np.ndim(out) else complex(out)

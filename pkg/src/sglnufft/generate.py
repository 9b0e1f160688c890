"""Seeded generation of test coefficients, random ball points, and grids.

All randomness goes through numpy's PCG64 bit generator, so a given integer
seed produces identical data on every platform.  Draw order is fixed and
documented per function; callers may also pass a Generator (or SeedSequence)
directly, which the experiment harness uses to derive independent
per-repetition streams.
"""

from __future__ import annotations

import numpy as np

from .indexing import coeff_count


def _rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.Generator(np.random.PCG64(seed))


def gen_coeffs(B: int, seed) -> np.ndarray:
    """Random coefficients with real and imaginary parts uniform in [-1, 1].

    Draw order: one block of real parts, then one block of imaginary parts.
    """
    rng = _rng(seed)
    count = coeff_count(B)
    re = rng.uniform(-1.0, 1.0, count)
    im = rng.uniform(-1.0, 1.0, count)
    return re + 1j * im


def gen_points_ball(M: int, kappa: float, seed) -> np.ndarray:
    """M points uniform w.r.t. volume in the ball of radius kappa.

    Spherical rows (r, theta, phi): r = kappa * U^{1/3}, cos(theta) uniform
    in [-1, 1], phi uniform in [0, 2pi).  Draw order: radii, cosines, phis.
    """
    if M < 1:
        raise ValueError("need at least one point")
    if kappa <= 0:
        raise ValueError("ball radius must be positive")
    rng = _rng(seed)
    r = kappa * rng.random(M) ** (1.0 / 3.0)
    ct = rng.uniform(-1.0, 1.0, M)
    phi = rng.uniform(0.0, 2.0 * np.pi, M)
    return np.column_stack([r, np.arccos(ct), phi])


def gen_grid(N: int, kappa: float) -> np.ndarray:
    """The N^3 Cartesian grid kappa * (2j/N - 1) per axis, as spherical rows.

    Point order: axis 0 slowest (j, then k, then l).  The corner radius is
    kappa * sqrt(3).
    """
    if N < 1:
        raise ValueError("grid extent must be >= 1")
    if kappa <= 0:
        raise ValueError("kappa must be positive")
    g = kappa * (2.0 * np.arange(N) / N - 1.0)
    x, y, z = np.meshgrid(g, g, g, indexing="ij")
    return cartesian_to_spherical(np.column_stack([x.ravel(), y.ravel(), z.ravel()]))


def cartesian_to_spherical(xyz: np.ndarray) -> np.ndarray:
    """(..., 3) Cartesian to (r, theta, phi) with phi in [0, 2pi)."""
    xyz = np.asarray(xyz, dtype=float)
    r = np.linalg.norm(xyz, axis=-1)
    with np.errstate(invalid="ignore", divide="ignore"):
        ct = np.where(r > 0, xyz[..., 2] / np.where(r > 0, r, 1.0), 1.0)
    theta = np.arccos(np.clip(ct, -1.0, 1.0))
    phi = np.mod(np.arctan2(xyz[..., 1], xyz[..., 0]), 2.0 * np.pi)
    return np.stack([r, theta, phi], axis=-1)


def spherical_to_cartesian(points: np.ndarray) -> np.ndarray:
    """(..., 3) spherical rows (r, theta, phi) to Cartesian."""
    points = np.asarray(points, dtype=float)
    r, theta, phi = points[..., 0], points[..., 1], points[..., 2]
    st = np.sin(theta)
    return np.stack([r * st * np.cos(phi), r * st * np.sin(phi), r * np.cos(theta)], axis=-1)

"""Orthogonal cosine transform at the shifted Chebyshev nodes.

The transform is y = D_n C_n x with C_n[i, j] = cos(i w_j) at the nodes
w_j = (2j+1) pi / 2n, and D_n = diag(1/sqrt(n), sqrt(2/n), ..., sqrt(2/n)).
It is orthogonal, so the inverse is the transpose.  This is exactly the
orthonormal DCT-II, which scipy.fft evaluates through an O(n log n) FFT
reduction; complex vectors are transformed componentwise.

Applying D_n once more to the transform of samples p(cos w_j) yields the
Chebyshev coefficients of a polynomial p of degree < n.
"""

from __future__ import annotations

import numpy as np
import scipy.fft


def chebyshev_nodes(n: int) -> np.ndarray:
    """Angles w_j = (2j+1) pi / 2n, j = 0..n-1."""
    if n < 1:
        raise ValueError("length must be >= 1")
    return (2 * np.arange(n) + 1) * np.pi / (2 * n)


def _scale(n: int) -> np.ndarray:
    d = np.full(n, np.sqrt(2.0 / n))
    d[0] = 1.0 / np.sqrt(n)
    return d


def dct_forward(x: np.ndarray, axis: int = -1) -> np.ndarray:
    """Apply D_n C_n along ``axis``."""
    x = np.asarray(x)
    if x.shape[axis] < 1:
        raise ValueError("empty transform")
    return scipy.fft.dct(x, type=2, axis=axis, norm="ortho")


def dct_inverse(y: np.ndarray, axis: int = -1) -> np.ndarray:
    """Apply the transpose (= inverse) of D_n C_n along ``axis``."""
    y = np.asarray(y)
    if y.shape[axis] < 1:
        raise ValueError("empty transform")
    return scipy.fft.idct(y, type=2, axis=axis, norm="ortho")


def dct_matrix(n: int) -> np.ndarray:
    """Dense D_n C_n, the O(n^2) reference path."""
    return _scale(n)[:, None] * np.cos(np.outer(np.arange(n), chebyshev_nodes(n)))


def chebyshev_coefficients(samples: np.ndarray, axis: int = -1) -> np.ndarray:
    """Chebyshev coefficients of p from samples p(cos w_j).

    Returns alpha with p = sum_k alpha_k T_k; equals D_n applied to the
    forward transform of the samples.
    """
    samples = np.asarray(samples)
    n = samples.shape[axis]
    y = dct_forward(samples, axis=axis)
    shape = [1] * y.ndim
    shape[axis] = n
    return y * _scale(n).reshape(shape)


def chebyshev_coefficients_adjoint(alpha: np.ndarray, axis: int = -1) -> np.ndarray:
    """Transpose of :func:`chebyshev_coefficients` (real coefficients matrix)."""
    alpha = np.asarray(alpha)
    n = alpha.shape[axis]
    shape = [1] * alpha.ndim
    shape[axis] = n
    return dct_inverse(alpha * _scale(n).reshape(shape), axis=axis)

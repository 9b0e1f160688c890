"""Window gather/scatter loops for the gridding stage of the NFFT.

The oversampled grid is wrap-padded by the window half-width on every axis
so the per-node loops run on contiguous slices without modular indexing.
Two interchangeable backends: serial numba kernels (default, deterministic)
and a pure-numpy path that doubles as a cross-check oracle in the tests.
Grids are 3-d complex arrays; lower dimensions use size-1 dummy axes
upstream.
"""

from __future__ import annotations

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        def wrap(f):
            return f

        return wrap if not (args and callable(args[0])) else args[0]


def pad_wrap(grid: np.ndarray, pads: tuple[int, int, int]) -> np.ndarray:
    """Periodically extend the grid by the per-axis window half-widths."""
    return np.pad(grid, [(p, p) for p in pads], mode="wrap")


def fold_wrap(padded: np.ndarray, pads: tuple[int, int, int]) -> np.ndarray:
    """Adjoint of :func:`pad_wrap`: accumulate the borders back periodically."""
    arr = padded
    for ax, p in enumerate(pads):
        if p == 0:
            continue
        n = arr.shape[ax] - 2 * p

        def _sl(s):
            full = [slice(None)] * arr.ndim
            full[ax] = s
            return tuple(full)

        arr[_sl(slice(p, 2 * p))] += arr[_sl(slice(p + n, p + n + p))]
        arr[_sl(slice(n, n + p))] += arr[_sl(slice(0, p))]
        arr = arr[_sl(slice(p, p + n))]
    return arr


@njit(cache=True, fastmath=True)
def _gather_kernel(grid, b0, b1, b2, w0, w1, w2, out):
    m = b0.shape[0]
    p0 = w0.shape[1]
    p1 = w1.shape[1]
    p2 = w2.shape[1]
    for i in range(m):
        acc = 0.0 + 0.0j
        i0 = b0[i]
        i1 = b1[i]
        i2 = b2[i]
        for a in range(p0):
            wa = w0[i, a]
            if wa == 0.0:
                continue
            for b in range(p1):
                wab = wa * w1[i, b]
                s = 0.0 + 0.0j
                for c in range(p2):
                    s += w2[i, c] * grid[i0 + a, i1 + b, i2 + c]
                acc += wab * s
        out[i] = acc


@njit(cache=True, fastmath=True)
def _scatter_kernel(grid, b0, b1, b2, w0, w1, w2, values):
    m = b0.shape[0]
    p0 = w0.shape[1]
    p1 = w1.shape[1]
    p2 = w2.shape[1]
    for i in range(m):
        v = values[i]
        i0 = b0[i]
        i1 = b1[i]
        i2 = b2[i]
        for a in range(p0):
            wa = w0[i, a]
            if wa == 0.0:
                continue
            for b in range(p1):
                wabv = wa * w1[i, b] * v
                for c in range(p2):
                    grid[i0 + a, i1 + b, i2 + c] += w2[i, c] * wabv


def gather_numba(padded, base, w):
    out = np.empty(base[0].shape[0], dtype=np.complex128)
    _gather_kernel(padded, base[0], base[1], base[2], w[0], w[1], w[2], out)
    return out


def scatter_numba(padded, base, w, values):
    _scatter_kernel(padded, base[0], base[1], base[2], w[0], w[1], w[2],
                    np.ascontiguousarray(values, dtype=np.complex128))


def gather_numpy(padded, base, w, chunk: int = 64):
    m = base[0].shape[0]
    offs = [np.arange(wi.shape[1]) for wi in w]
    out = np.empty(m, dtype=np.complex128)
    for s in range(0, m, chunk):
        e = min(s + chunk, m)
        sub = padded[
            (base[0][s:e, None] + offs[0])[:, :, None, None],
            (base[1][s:e, None] + offs[1])[:, None, :, None],
            (base[2][s:e, None] + offs[2])[:, None, None, :],
        ]
        out[s:e] = np.einsum(
            "nabc,na,nb,nc->n", sub, w[0][s:e], w[1][s:e], w[2][s:e], optimize=True
        )
    return out


def scatter_numpy(padded, base, w, values, chunk: int = 64):
    m = base[0].shape[0]
    offs = [np.arange(wi.shape[1]) for wi in w]
    for s in range(0, m, chunk):
        e = min(s + chunk, m)
        block = np.einsum(
            "n,na,nb,nc->nabc",
            values[s:e],
            w[0][s:e],
            w[1][s:e],
            w[2][s:e],
            optimize=True,
        )
        np.add.at(
            padded,
            (
                (base[0][s:e, None] + offs[0])[:, :, None, None],
                (base[1][s:e, None] + offs[1])[:, None, :, None],
                (base[2][s:e, None] + offs[2])[:, None, None, :],
            ),
            block,
        )

"""Non-equispaced discrete and fast Fourier transforms on the torus.

Evaluates trigonometric polynomials

    p(t) = sum_{k in I_n^d} w_k exp(+i <k, t>),      t in [0, 2pi)^d,

at scattered nodes (``ndft`` exactly, ``nfft_execute`` approximately), and
the adjoint sums c_k = sum_i v_i exp(-i <k, t_i>).  The fast path combines
deconvolution by the Fourier coefficients of a periodized Gaussian, an
oversampled inverse FFT, and window sums restricted to (2q+1)^d grid points
around each node, where q is the cutoff parameter.

Per axis, the oversampled length is the next power of two at or above
sigma * n; the effective oversampling factors and window spreads

    lambda_j = sigma_j q / ((2 sigma_j - 1) pi)

are stored in the plan.  ``nfft_error_bound`` evaluates the exact-arithmetic
worst-case bound for this window; measured errors satisfy it up to a small
round-off allowance.

Coefficient arrays use the centered layout: position p on axis j holds
frequency p - n_j/2.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _gridding


def _as_axes(value, d: int, name: str) -> tuple[int, ...]:
    if np.ndim(value) == 0:
        return (int(value),) * d
    out = tuple(int(v) for v in value)
    if len(out) != d:
        raise ValueError(f"{name} must be scalar or length-{d}")
    return out


def _phase_matrices(n_axis, nodes):
    return [
        np.exp(1j * np.outer(nodes[:, j], np.arange(n) - n // 2))
        for j, n in enumerate(n_axis)
    ]


def ndft(d: int, n_axis, coeffs: np.ndarray, nodes: np.ndarray) -> np.ndarray:
    """Exact sums p(t_i) = sum_k coeffs_k e^{i<k,t_i>} over I_n^d, d <= 3."""
    n_axis = _as_axes(n_axis, d, "n_axis")
    coeffs = np.asarray(coeffs, dtype=complex)
    if coeffs.shape != n_axis:
        raise ValueError(f"coefficient shape {coeffs.shape} != {n_axis}")
    nodes = np.atleast_2d(np.asarray(nodes, dtype=float))
    E = _phase_matrices(n_axis, nodes)
    if d == 1:
        return E[0] @ coeffs
    if d == 2:
        return np.einsum("ab,ma,mb->m", coeffs, E[0], E[1], optimize=True)
    if d == 3:
        t = np.tensordot(coeffs, E[2], axes=([2], [1]))  # (n0, n1, m)
        t = np.einsum("abm,mb->am", t, E[1])
        return np.einsum("am,ma->m", t, E[0])
    raise ValueError("only d <= 3 supported")


def ndft_adjoint(d: int, n_axis, values: np.ndarray, nodes: np.ndarray) -> np.ndarray:
    """Exact adjoint sums c_k = sum_i values_i e^{-i<k,t_i>}, d <= 3."""
    n_axis = _as_axes(n_axis, d, "n_axis")
    values = np.asarray(values, dtype=complex)
    nodes = np.atleast_2d(np.asarray(nodes, dtype=float))
    E = [np.conj(e) for e in _phase_matrices(n_axis, nodes)]
    if d == 1:
        return E[0].T @ values
    if d == 2:
        return np.einsum("m,ma,mb->ab", values, E[0], E[1], optimize=True)
    if d == 3:
        return np.einsum("m,ma,mb,mc->abc", values, E[0], E[1], E[2], optimize=True)
    raise ValueError("only d <= 3 supported")


def nfft_error_bound(d: int, sigma: float, q: int, l1_norm: float) -> float:
    """Worst-case max-abs error of the Gaussian-window fast transform.

    Valid for sigma >= (sqrt(d)+1)/2; decays at least exponentially in q.
    """
    s = float(sigma)
    if s < (np.sqrt(d) + 1) / 2:
        raise ValueError("oversampling factor too small for the bound")
    aliasing = (2.0**d - 1.0) * (2.0 + 1.0 / (np.pi * q)) ** d
    trunc = (3.0**d - 1.0) / q ** (d / 2.0) * (
        np.sqrt((2 * s - 1) / (2 * s)) + np.sqrt(2 * s / (2 * s - 1)) / (2 * np.pi)
    ) ** d
    expo = np.exp(-q * np.pi * (1.0 - (1.0 + d / (2 * s - 1)) / (2 * s)))
    return float(l1_norm * (aliasing + trunc) * expo)


@dataclass(frozen=True)
class NfftPlan:
    """Frozen per-node-set precomputation; safe to share across threads."""

    d: int
    n_axis: tuple[int, ...]
    sigma: tuple[int, ...]
    q: int
    grid_shape: tuple[int, ...]           # oversampled lengths, powers of two
    sigma_eff: tuple[float, ...]
    lam: tuple[float, ...]
    nodes: np.ndarray
    deconv: list[np.ndarray]              # per-axis 1/phi-hat over I_n
    idx: tuple[np.ndarray, ...] | None    # per-axis base index into the padded grid
    win: tuple[np.ndarray, ...] | None    # per-axis window weights
    backend: str

    @property
    def m(self) -> int:
        return self.nodes.shape[0]


def _window_tables(plan_nodes, grid_shape, lam, q):
    """Per-axis pad-grid base indices and truncated-Gaussian window weights.

    The base index addresses a grid wrap-padded by q cells, so that the
    2q+1 window offsets never leave the array.
    """
    base, win = [], []
    for j, big_n in enumerate(grid_shape):
        tau = plan_nodes[:, j]
        u = big_n * tau / (2 * np.pi)
        lo = np.floor(u).astype(np.int64)
        offs = np.arange(2 * q + 1)
        delta = u[:, None] - (lo[:, None] - q + offs[None, :])  # grid-cell units
        a = big_n / (2 * np.pi)
        w = a / np.sqrt(2 * np.pi * lam[j]) * np.exp(
            -(2 * np.pi / big_n) ** 2 * delta**2 * a**2 / (2 * lam[j])
        )
        # truncation: the support is |delta| <= q; only the left edge can fall out
        w[np.abs(delta) > q] = 0.0
        base.append(lo)  # position in the padded grid of offset 0
        win.append(np.ascontiguousarray(w))
    return tuple(base), tuple(win)


def nfft_plan(
    d: int,
    n_axis,
    sigma,
    q: int,
    nodes: np.ndarray,
    precompute: bool = True,
    backend: str = "auto",
) -> NfftPlan:
    """Build the per-node-set precomputation for the fast transform pair.

    ``nodes`` is (m, d) and is reduced into [0, 2pi)^d.  ``sigma`` is an
    integer >= 2 (or one per axis); the oversampled length per axis is the
    next power of two at or above sigma * n.  Requires 1 <= q and q below
    every oversampled length.  Set ``precompute=False`` to rebuild window
    tables on the fly in each execute call (saves O(m q) memory).
    """
    if d < 1 or d > 3:
        raise ValueError("only d <= 3 supported")
    n_axis = _as_axes(n_axis, d, "n_axis")
    sigma = _as_axes(sigma, d, "sigma")
    if any(n < 2 or n % 2 for n in n_axis):
        raise ValueError("per-axis degree must be even and >= 2")
    if any(s < 2 for s in sigma):
        raise ValueError("oversampling factor must be an integer >= 2")
    if q < 1:
        raise ValueError("cutoff parameter must be >= 1")
    grid_shape = tuple(int(2 ** np.ceil(np.log2(s * n))) for s, n in zip(sigma, n_axis))
    if any(q >= big_n for big_n in grid_shape):
        raise ValueError(f"cutoff q = {q} must be below sigma*n = {min(grid_shape)}")
    nodes = np.mod(np.atleast_2d(np.asarray(nodes, dtype=float)), 2 * np.pi)
    nodes[nodes >= 2 * np.pi] = 0.0  # np.mod can round tiny negatives onto 2 pi
    if nodes.shape[1] != d:
        raise ValueError("nodes must be (m, d)")
    sigma_eff = tuple(big_n / n for big_n, n in zip(grid_shape, n_axis))
    lam = tuple(s * q / ((2 * s - 1) * np.pi) for s in sigma_eff)
    deconv = [
        np.exp(2 * lam[j] * (np.pi * (np.arange(n) - n // 2) / grid_shape[j]) ** 2)
        for j, n in enumerate(n_axis)
    ]
    if backend == "auto":
        backend = "numba" if _gridding.HAVE_NUMBA else "numpy"
    if backend not in ("numba", "numpy"):
        raise ValueError("backend must be 'auto', 'numba' or 'numpy'")
    idx = win = None
    if precompute:
        idx, win = _window_tables(nodes, grid_shape, lam, q)
    return NfftPlan(
        d=d,
        n_axis=n_axis,
        sigma=sigma,
        q=q,
        grid_shape=grid_shape,
        sigma_eff=sigma_eff,
        lam=lam,
        nodes=nodes,
        deconv=deconv,
        idx=idx,
        win=win,
        backend=backend,
    )


def _tables(plan: NfftPlan):
    if plan.idx is not None:
        return plan.idx, plan.win
    return _window_tables(plan.nodes, plan.grid_shape, plan.lam, plan.q)


def _deconvolve(plan: NfftPlan, coeffs: np.ndarray) -> np.ndarray:
    out = coeffs * (2 * np.pi) ** plan.d
    for j in range(plan.d):
        shape = [1] * plan.d
        shape[j] = plan.n_axis[j]
        out = out * plan.deconv[j].reshape(shape)
    return out


def _embed_3d(plan: NfftPlan, base, win):
    """Extend per-axis tables to three axes with size-1 dummies."""
    m = plan.m
    pads = tuple(plan.q if j < plan.d else 0 for j in range(3))
    base3 = list(base) + [np.zeros(m, dtype=np.int64)] * (3 - plan.d)
    win3 = list(win) + [np.ones((m, 1))] * (3 - plan.d)
    return pads, base3, win3


def nfft_execute(plan: NfftPlan, coeffs: np.ndarray) -> np.ndarray:
    """Approximate p(t_i) for coefficients on I_n^d (centered layout)."""
    coeffs = np.asarray(coeffs, dtype=complex)
    if coeffs.shape != plan.n_axis:
        raise ValueError(f"coefficient shape {coeffs.shape} != {plan.n_axis}")
    padded = np.zeros(plan.grid_shape, dtype=complex)
    sl = tuple(
        slice(big_n // 2 - n // 2, big_n // 2 + n // 2)
        for big_n, n in zip(plan.grid_shape, plan.n_axis)
    )
    padded[sl] = _deconvolve(plan, coeffs)
    grid = np.fft.ifftn(np.fft.ifftshift(padded))
    base, win = _tables(plan)
    pads, base3, win3 = _embed_3d(plan, base, win)
    grid3 = _gridding.pad_wrap(grid.reshape(plan.grid_shape + (1,) * (3 - plan.d)), pads)
    if plan.backend == "numba":
        return _gridding.gather_numba(grid3, base3, win3)
    return _gridding.gather_numpy(grid3, base3, win3)


def nfft_adjoint_execute(plan: NfftPlan, values: np.ndarray) -> np.ndarray:
    """Approximate adjoint sums c_k = sum_i values_i e^{-i<k,t_i>}."""
    values = np.asarray(values, dtype=complex)
    if values.shape != (plan.m,):
        raise ValueError("values length must match the plan's node count")
    base, win = _tables(plan)
    pads, base3, win3 = _embed_3d(plan, base, win)
    shape3 = plan.grid_shape + (1,) * (3 - plan.d)
    grid3 = np.zeros(tuple(s + 2 * p for s, p in zip(shape3, pads)), dtype=complex)
    if plan.backend == "numba":
        _gridding.scatter_numba(grid3, base3, win3, values)
    else:
        _gridding.scatter_numpy(grid3, base3, win3, values)
    grid = _gridding.fold_wrap(grid3, pads).reshape(plan.grid_shape)
    ghat = np.fft.fftshift(np.fft.fftn(grid)) / np.prod(plan.grid_shape)
    sl = tuple(
        slice(big_n // 2 - n // 2, big_n // 2 + n // 2)
        for big_n, n in zip(plan.grid_shape, plan.n_axis)
    )
    return _deconvolve(plan, ghat[sl])

"""Spherical Gauss-Laguerre transforms for scattered points in R^3.

``evaluate_direct`` sums the basis expansion point by point and is the
ground-truth oracle.  The fast path factors the evaluation into

    radial stage      per (l, m): sample the radial polynomial at 2B
                      Chebyshev-mapped radii, expand in Chebyshev
                      coefficients, fold into exponential coefficients;
    spherical stage   per (kappa0, m): weighted Legendre sums over l at 2B
                      angles, Chebyshev expansion, fold into exponential
                      coefficients (a sine-weighted variant for odd m);
    assembly          embed into a coefficient volume on the centered
                      frequency box 4B x 4B x 2B;
    evaluation        one 3-d non-equispaced Fourier transform at the
                      warped points (arccos((2r - rho)/rho), theta, phi).

Every stage except the last is an exact linear factor, so running the
pipeline with the exact transform in the final stage reproduces the direct
sums to round-off; with the fast transform the deviation obeys the window
error bound.  The adjoint runs the conjugate-transposed stages in reverse
order, sharing the plan.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dct import chebyshev_coefficients, chebyshev_coefficients_adjoint, chebyshev_nodes
from .indexing import coeff_count, nlm_to_mu
from .nfft import NfftPlan, ndft, ndft_adjoint, nfft_plan, nfft_execute, \
    nfft_adjoint_execute
from .recurrences import clenshaw_adjoint, clenshaw_eval, dlt_adjoint, dlt_weighted, \
    legendre_recurrence, radial_recurrence
from .special import sph_norm


def choose_rho(points: np.ndarray) -> float:
    """Largest sample radius; 1.0 if all points sit at the origin."""
    points = np.atleast_2d(np.asarray(points, dtype=float))
    r = float(np.max(points[:, 0])) if points.size else 0.0
    return r if r > 0 else 1.0


def transform_points(points: np.ndarray, rho: float) -> np.ndarray:
    """Warp (r, theta, phi) to torus nodes (arccos((2r-rho)/rho), theta, phi)."""
    points = np.atleast_2d(np.asarray(points, dtype=float))
    r = points[:, 0]
    if np.any(r > rho * (1 + 1e-12)):
        raise ValueError("point radius exceeds the radial parameter rho")
    gamma = np.clip((2 * r - rho) / rho, -1.0, 1.0)
    out = points.copy()
    out[:, 0] = np.arccos(gamma)
    return out


# ---------------------------------------------------------------------------
# direct (naive) transform pair


def _radial_tables(B: int, r: np.ndarray) -> list[np.ndarray]:
    """tables[l][k] = N(k+l+1, l) L_k^{(l+1/2)}(r^2) r^l over the points."""
    return [radial_recurrence(l).table(B - l, r) for l in range(B)]


def _legendre_tables(B: int, ct: np.ndarray) -> list[np.ndarray]:
    """tables[m][l - m] = P_{lm}(cos theta) for m = 0..B-1."""
    return [legendre_recurrence(m).table(B - m, ct) for m in range(B)]


def _coeff_gather_indices(B: int) -> list[np.ndarray]:
    """idx[l][m + l, n - l - 1] = mu(n, l, m)."""
    out = []
    for l in range(B):
        block = np.empty((2 * l + 1, B - l), dtype=np.int64)
        for m in range(-l, l + 1):
            for n in range(l + 1, B + 1):
                block[m + l, n - l - 1] = nlm_to_mu(n, l, m)
        out.append(block)
    return out


def _sph_norm_signed(B: int, m: int) -> np.ndarray:
    """Q(l, |m|) for l = |m|..B-1, negated for odd negative m.

    Uses Q(l,-m) P_{l,-m} = (-1)^m Q(l,m) P_{lm}, so only |m| tables are
    needed downstream.
    """
    am = abs(m)
    q = np.array([sph_norm(l, am) for l in range(am, B)])
    return -q if (m < 0 and am % 2) else q


def evaluate_direct(coeffs: np.ndarray, B: int, points: np.ndarray) -> np.ndarray:
    """Direct summation of the basis expansion at each point (the oracle)."""
    coeffs = np.asarray(coeffs, dtype=complex)
    if coeffs.shape != (coeff_count(B),):
        raise ValueError("coefficient length does not match the bandwidth")
    points = np.atleast_2d(np.asarray(points, dtype=float))
    r, theta, phi = points[:, 0], points[:, 1], points[:, 2]
    rad = _radial_tables(B, r)
    leg = _legendre_tables(B, np.cos(theta))
    idx = _coeff_gather_indices(B)
    # g[l(l+1)+m, i] = sum_n coeffs * (normalized radial part)
    g = np.empty((B * B, points.shape[0]), dtype=complex)
    for l in range(B):
        g[l * l : (l + 1) * (l + 1)] = coeffs[idx[l]] @ rad[l]
    values = np.zeros(points.shape[0], dtype=complex)
    for m in range(-(B - 1), B):
        am = abs(m)
        rows = np.arange(am, B) * np.arange(am + 1, B + 1) + m
        q = _sph_norm_signed(B, m)
        values += np.exp(1j * m * phi) * np.einsum(
            "li,l,li->i", g[rows], q, leg[am], optimize=True
        )
    return values


def evaluate_direct_adjoint(values: np.ndarray, B: int, points: np.ndarray) -> np.ndarray:
    """Direct adjoint sums c_mu = sum_i values_i conj(H_mu(x_i))."""
    values = np.asarray(values, dtype=complex)
    points = np.atleast_2d(np.asarray(points, dtype=float))
    if values.shape != (points.shape[0],):
        raise ValueError("values length does not match the point count")
    r, theta, phi = points[:, 0], points[:, 1], points[:, 2]
    rad = _radial_tables(B, r)
    leg = _legendre_tables(B, np.cos(theta))
    idx = _coeff_gather_indices(B)
    gt = np.zeros((B * B, points.shape[0]), dtype=complex)
    for m in range(-(B - 1), B):
        am = abs(m)
        rows = np.arange(am, B) * np.arange(am + 1, B + 1) + m
        q = _sph_norm_signed(B, m)
        gt[rows] = (q[:, None] * leg[am]) * (values * np.exp(-1j * m * phi))
    out = np.empty(coeff_count(B), dtype=complex)
    for l in range(B):
        out[idx[l]] = gt[l * l : (l + 1) * (l + 1)] @ rad[l].T
    return out


def design_matrix(B: int, points: np.ndarray) -> np.ndarray:
    """Dense (M, count) evaluation matrix; small-problem reference only."""
    count = coeff_count(B)
    eye = np.eye(count, dtype=complex)
    return np.column_stack([evaluate_direct(eye[:, j], B, points) for j in range(count)])


# ---------------------------------------------------------------------------
# exact stage factors: Chebyshev coefficients -> exponential coefficients


def _cheb_to_exp_even(alpha: np.ndarray) -> np.ndarray:
    """n Chebyshev coefficients to 2n exponential coefficients (centered).

    out[n] = a_0; out[n +- k] = a_k / 2; out[0] = 0.
    """
    n = alpha.shape[-1]
    out = np.zeros(alpha.shape[:-1] + (2 * n,), dtype=np.complex128)
    out[..., n] = alpha[..., 0]
    out[..., n + 1 :] = alpha[..., 1:] / 2
    out[..., n - 1 : 0 : -1] = alpha[..., 1:] / 2
    return out


def _cheb_to_exp_even_adjoint(beta: np.ndarray) -> np.ndarray:
    n = beta.shape[-1] // 2
    out = np.empty(beta.shape[:-1] + (n,), dtype=np.complex128)
    out[..., 0] = beta[..., n]
    out[..., 1:] = (beta[..., n + 1 :] + beta[..., n - 1 : 0 : -1]) / 2
    return out


def _cheb_to_exp_odd(eps: np.ndarray) -> np.ndarray:
    """Sine-weighted fold: exponential coefficients of sum_k e_k sin(w) T_k.

    The last Chebyshev coefficient never enters (its row of the factor is
    zero); the output is antisymmetric about the center with zero at the
    center and at the left edge.
    """
    n = eps.shape[-1]
    e = np.array(eps, dtype=np.complex128)
    e[..., n - 1] = 0
    epad = np.zeros(eps.shape[:-1] + (n + 2,), dtype=np.complex128)
    epad[..., :n] = e
    # t[k] = c_{k-1} e_{k-1} - e_{k+1} for k = 1..n-1, c_0 = 2, c_j = 1 otherwise
    t = np.zeros(eps.shape[:-1] + (n,), dtype=np.complex128)
    t[..., 1] = 2 * e[..., 0] - epad[..., 2]
    if n > 2:
        t[..., 2:] = e[..., 1 : n - 1] - epad[..., 3 : n + 1]
    out = np.zeros(eps.shape[:-1] + (2 * n,), dtype=np.complex128)
    quarter = 1.0 / 4.0j
    out[..., n + 1 :] = quarter * t[..., 1:]
    out[..., n - 1 : 0 : -1] = -quarter * t[..., 1:]
    return out


def _cheb_to_exp_odd_adjoint(zeta: np.ndarray) -> np.ndarray:
    n = zeta.shape[-1] // 2
    # tt[k-1] = conj(1/4i) (zeta[n+k] - zeta[n-k]), k = 1..n-1
    tt = np.conj(1.0 / 4.0j) * (zeta[..., n + 1 :] - zeta[..., n - 1 : 0 : -1])
    out = np.zeros(zeta.shape[:-1] + (n,), dtype=np.complex128)
    out[..., 0] = 2 * tt[..., 0]
    if n > 2:
        out[..., 1 : n - 1] = tt[..., 1:]
        out[..., 2 : n - 1] -= tt[..., : n - 3]
    return out


# ---------------------------------------------------------------------------
# staged pipeline


def _radial_stage(coeffs, B, rho, r_nodes, idx, precise):
    samples = np.zeros((B * B, 2 * B), dtype=complex)
    for l in range(B):
        samples[l * l : (l + 1) * (l + 1)] = clenshaw_eval(
            radial_recurrence(l), coeffs[idx[l]], r_nodes, precise
        )
    return _cheb_to_exp_even(chebyshev_coefficients(samples, axis=1))


def _spherical_stage(beta, B, lam_rows, q_norms, precise):
    zeta = np.empty((4 * B, 4 * B, 2 * B - 1), dtype=complex)
    for m in range(-(B - 1), B):
        hc = beta[lam_rows[m]].T * q_norms[m]  # (4B, B-|m|)
        odd = abs(m) % 2 == 1
        t = dlt_adjoint(m, B, hc, weight_odd=odd, precise=precise)
        eps = chebyshev_coefficients(t, axis=1)
        zeta[:, :, m + B - 1] = _cheb_to_exp_odd(eps) if odd else _cheb_to_exp_even(eps)
    return zeta


def radial_coefficients(coeffs: np.ndarray, B: int, rho: float,
                        precise: bool = False) -> np.ndarray:
    """Exponential coefficients of the radial polynomials, (B^2, 4B).

    Row l(l+1)+m holds the coefficients over the centered range
    kappa = -2B..2B-1 (position kappa + 2B); rows with l < |m| are zero.
    Reconstruction: g_lm(r) = sum_kappa beta e^{i kappa arccos((2r-rho)/rho)}
    with g_lm the radial polynomial of the (l, m) sub-series.
    """
    coeffs = np.asarray(coeffs, dtype=complex)
    if coeffs.shape != (coeff_count(B),):
        raise ValueError("coefficient length does not match the bandwidth")
    if rho <= 0:
        raise ValueError("rho must be positive")
    r_nodes = rho * (1 + np.cos(chebyshev_nodes(2 * B))) / 2
    return _radial_stage(coeffs, B, rho, r_nodes, _coeff_gather_indices(B), precise)


def spherical_coefficients(beta: np.ndarray, B: int, precise: bool = False) -> np.ndarray:
    """Exponential coefficients of the polar sums, (4B, 4B, 2B-1).

    Entry [kappa0 pos, kappa1 pos, m + B - 1] reconstructs
    h_{kappa0, m}(cos t) = sum_kappa1 zeta e^{i kappa1 t}, the weighted
    Legendre sum over degrees at radial frequency kappa0 and order m.
    """
    beta = np.asarray(beta, dtype=complex)
    if beta.shape != (B * B, 4 * B):
        raise ValueError("beta must have shape (B^2, 4B)")
    lam_rows, q_norms = _order_rows(B)
    return _spherical_stage(beta, B, lam_rows, q_norms, precise)


def assemble_trig_volume(zeta: np.ndarray, B: int, compact_k1: bool = False) -> np.ndarray:
    """Embed the polar coefficients into the centered frequency box.

    Output axes are (4B, 4B, 2B) (or (4B, 2B, 2B) with ``compact_k1``); the
    order index m becomes the third frequency, zero-padded to the |k2| < B
    support.
    """
    zeta = np.asarray(zeta, dtype=complex)
    if zeta.shape != (4 * B, 4 * B, 2 * B - 1):
        raise ValueError("zeta must have shape (4B, 4B, 2B-1)")
    z = zeta[:, B : 3 * B, :] if compact_k1 else zeta
    eta = np.zeros(z.shape[:2] + (2 * B,), dtype=complex)
    eta[:, :, 1:] = z
    return eta


def _order_rows(B: int):
    lam_rows = {}
    q_norms = {}
    for m in range(-(B - 1), B):
        ls = np.arange(abs(m), B)
        lam_rows[m] = ls * (ls + 1) + m
        q_norms[m] = np.array([sph_norm(l, m) for l in ls])
    return lam_rows, q_norms


@dataclass
class SglPlan:
    """Per-point-set precomputation for the fast transform pair.

    Treat instances as immutable; they can be shared freely between
    concurrent forward/adjoint calls.
    """

    B: int
    rho: float
    sigma: int
    q: int | None
    exact: bool
    compact_k1: bool
    points: np.ndarray
    nodes: np.ndarray
    n_axis: tuple[int, int, int]
    nfft: NfftPlan | None
    r_nodes: np.ndarray
    idx: list[np.ndarray]
    lam_rows: dict[int, np.ndarray]
    q_norms: dict[int, np.ndarray]

    @property
    def m_points(self) -> int:
        return self.points.shape[0]


def plan(
    B: int,
    points: np.ndarray,
    sigma: int = 2,
    q: int | None = 16,
    rho: float | None = None,
    exact_last_stage: bool = False,
    compact_k1: bool = False,
    backend: str = "auto",
    precompute: bool = True,
) -> SglPlan:
    """Prepare a fast-transform plan for one scattered point set.

    ``rho`` defaults to the largest point radius.  ``exact_last_stage``
    replaces the approximate final evaluation by the exact one (slow; for
    verification).  ``compact_k1`` shrinks the middle frequency axis to 2B,
    sufficient in exact arithmetic.  When the cutoff does not fit below an
    oversampled axis length, that axis is oversampled further (the nominal
    requirement is q < 4*sigma*B).
    """
    if B < 1:
        raise ValueError("bandwidth must be >= 1")
    points = np.atleast_2d(np.asarray(points, dtype=float))
    if points.ndim != 2 or points.shape[1] != 3:
        raise ValueError("points must be (M, 3) spherical coordinates")
    if rho is None:
        rho = choose_rho(points)
    if rho <= 0:
        raise ValueError("rho must be positive")
    nodes = transform_points(points, rho)
    n_axis = (4 * B, 2 * B if compact_k1 else 4 * B, 2 * B)
    plan_nfft = None
    if not exact_last_stage:
        if q is None or q < 1:
            raise ValueError("cutoff parameter q must be >= 1")
        if q >= 4 * sigma * B:
            raise ValueError(f"cutoff q = {q} must be below 4*sigma*B = {4 * sigma * B}")
        sig_axes = []
        for n in n_axis:
            s = int(sigma)
            while 2 ** int(np.ceil(np.log2(s * n))) <= q:
                s *= 2
            sig_axes.append(s)
        plan_nfft = nfft_plan(3, n_axis, tuple(sig_axes), q, nodes,
                              precompute=precompute, backend=backend)
    r_nodes = rho * (1 + np.cos(chebyshev_nodes(2 * B))) / 2
    lam_rows, q_norms = _order_rows(B)
    return SglPlan(
        B=B,
        rho=float(rho),
        sigma=int(sigma),
        q=None if exact_last_stage else int(q),
        exact=exact_last_stage,
        compact_k1=compact_k1,
        points=points,
        nodes=nodes,
        n_axis=n_axis,
        nfft=plan_nfft,
        r_nodes=r_nodes,
        idx=_coeff_gather_indices(B),
        lam_rows=lam_rows,
        q_norms=q_norms,
    )


def forward(p: SglPlan, coeffs: np.ndarray, precise: bool = False) -> np.ndarray:
    """Evaluate the band-limited expansion at the plan's points."""
    coeffs = np.asarray(coeffs, dtype=complex)
    if coeffs.shape != (coeff_count(p.B),):
        raise ValueError("coefficient length does not match the bandwidth")
    beta = _radial_stage(coeffs, p.B, p.rho, p.r_nodes, p.idx, precise)
    zeta = _spherical_stage(beta, p.B, p.lam_rows, p.q_norms, precise)
    eta = assemble_trig_volume(zeta, p.B, p.compact_k1)
    if p.exact:
        return ndft(3, p.n_axis, eta, p.nodes)
    return nfft_execute(p.nfft, eta)


def adjoint(p: SglPlan, values: np.ndarray, precise: bool = False) -> np.ndarray:
    """Apply the conjugate transpose of :func:`forward`."""
    values = np.asarray(values, dtype=complex)
    if values.shape != (p.m_points,):
        raise ValueError("values length does not match the plan")
    B = p.B
    if p.exact:
        eta = ndft_adjoint(3, p.n_axis, values, p.nodes)
    else:
        eta = nfft_adjoint_execute(p.nfft, values)
    zeta_t = np.zeros((4 * B, 4 * B, 2 * B - 1), dtype=complex)
    if p.compact_k1:
        zeta_t[:, B : 3 * B, :] = eta[:, :, 1:]
    else:
        zeta_t[:, :, :] = eta[:, :, 1:]
    beta_t = np.zeros((B * B, 4 * B), dtype=complex)
    for m in range(-(B - 1), B):
        odd = abs(m) % 2 == 1
        z = zeta_t[:, :, m + B - 1]
        eps_t = _cheb_to_exp_odd_adjoint(z) if odd else _cheb_to_exp_even_adjoint(z)
        t = chebyshev_coefficients_adjoint(eps_t, axis=1)
        hc = dlt_weighted(m, B, t, weight_odd=odd, precise=precise)
        beta_t[p.lam_rows[m]] = (hc * p.q_norms[m]).T
    alpha_t = _cheb_to_exp_even_adjoint(beta_t)
    samples_t = chebyshev_coefficients_adjoint(alpha_t, axis=1)
    out = np.empty(coeff_count(B), dtype=complex)
    for l in range(B):
        out[p.idx[l]] = clenshaw_adjoint(
            radial_recurrence(l), samples_t[l * l : (l + 1) * (l + 1)],
            p.r_nodes, B - l, precise
        )
    return out


# ---------------------------------------------------------------------------
# error certificate


def growth_threshold(rho: float) -> float:
    """Bandwidth below which the small-radius branch of the bound applies."""
    if not 0 < rho < 1:
        raise ValueError("threshold is defined for 0 < rho < 1")
    e = np.e
    return float(
        (np.exp(2 / e) * (rho ** (2 / e) - 1) / (2 * np.log(rho))) ** (1 - 1 / e) - 0.5
    )


def error_bound(B: int, rho: float, q: int, l1_norm: float) -> float:
    """Scaling certificate for the fast-path maximum absolute error.

    Evaluates the analytic envelope with unit leading constant; useful for
    trend checks (decay in q, growth in rho and B), not as an absolute
    acceptance threshold.
    """
    e = np.e
    small = rho < 1 and B <= growth_threshold(rho)
    a = 1.0 if small else 1.0 / rho
    b = np.exp(2 / e) / 2 * (1.0 if small else rho ** (2 / e))
    return float(
        B ** 3.5
        * a
        * np.exp(b * (B + 0.5) ** (1 - 1 / e) + rho**2 / 2 - q * np.pi / 2)
        * l1_norm
    )

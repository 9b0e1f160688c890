"""Index bijections and resorting permutations for the transform pipeline.

Coefficient vectors are stored linearly in "mu order": the triple
(n, l, m), |m| <= l < n <= B, sits at

    mu = n(n-1)(2n-1)/6 + l(l+1) + m,

which enumerates triples lexicographically in (n, l, m).  Frequency grids
use the centered index set I_n^d = {-n/2, ..., n/2-1}^d linearized with the
first axis fastest.  The three permutations below are the index functions
of the block-resort steps of the factorized transform; they are never
materialized as matrices.
"""

from __future__ import annotations

import numpy as np

from .special import SglIndex


def coeff_count(B: int) -> int:
    """Number of basis triples with n <= B."""
    if B < 1:
        raise ValueError("bandwidth must be >= 1")
    return B * (B + 1) * (2 * B + 1) // 6


def _tetra(n: int) -> int:
    """Block offset n(n-1)(2n-1)/6 of principal order n."""
    return n * (n - 1) * (2 * n - 1) // 6


def nlm_to_mu(n: int, l: int, m: int) -> int:
    """Linear storage index of the triple (n, l, m)."""
    if not (0 <= l < n and abs(m) <= l):
        raise ValueError(f"invalid triple ({n}, {l}, {m})")
    return _tetra(n) + l * (l + 1) + m


def mu_to_nlm(mu: int, B: int) -> SglIndex:
    """Inverse of nlm_to_mu on [0, coeff_count(B)).

    The closed form for n(mu) goes through cosh/arcosh and lands exactly on
    a block boundary whenever mu starts a new n-block, where round-off can
    push the floor off by one; the candidate is probed against the defining
    inequality tetra(n) <= mu < tetra(n+1) and corrected.
    """
    mu = int(mu)
    if not (0 <= mu < coeff_count(B)):
        raise ValueError(f"mu = {mu} out of range for B = {B}")
    if mu == 0:
        n = 1
    else:
        n = int(np.floor(np.cosh(np.arccosh(36.0 * np.sqrt(3.0) * mu) / 3.0) / np.sqrt(3.0) + 0.5))
        n = max(n, 1)
        while _tetra(n) > mu:
            n -= 1
        while _tetra(n + 1) <= mu:
            n += 1
    rem = mu - _tetra(n)
    # rem = l(l+1) + m lies in [l^2, (l+1)^2 - 1]
    l = int(np.floor(np.sqrt(rem)))
    while l * l > rem:
        l -= 1
    while (l + 1) * (l + 1) <= rem:
        l += 1
    m = rem - l * (l + 1)
    return SglIndex(n, l, m)


def mu_to_nlm_array(B: int) -> np.ndarray:
    """(count, 3) array of all triples in mu order."""
    out = np.empty((coeff_count(B), 3), dtype=np.int64)
    pos = 0
    for n in range(1, B + 1):
        for l in range(n):
            for m in range(-l, l + 1):
                out[pos] = (n, l, m)
                pos += 1
    return out


def k_to_chi(k, d: int, n: int) -> int:
    """Linearize a centered frequency multi-index, first axis fastest."""
    k = tuple(int(v) for v in k)
    if len(k) != d:
        raise ValueError("dimension mismatch")
    chi = 0
    for j in reversed(range(d)):
        if not (-n // 2 <= k[j] < n // 2):
            raise ValueError(f"index {k[j]} outside I_{n}")
        chi = chi * n + (k[j] + n // 2)
    return chi


def chi_to_k(chi: int, d: int, n: int) -> tuple[int, ...]:
    """Centered frequency multi-index of a linearized position."""
    chi = int(chi)
    if not (0 <= chi < n**d):
        raise ValueError(f"chi = {chi} out of range")
    return tuple((chi // n**j) % n - n // 2 for j in range(d))


def perm_nlm_to_lmn(mu: int, B: int) -> int:
    """Position of mu's triple when triples are resorted by (l, m, n).

    Output ordering: l = 0..B-1 outer, then m = -l..l, then n = l+1..B.
    """
    n, l, m = mu_to_nlm(mu, B)
    # entries before block l: sum_{l'<l} (2l'+1)(B-l') = B l^2 - l(l-1)(4l+1)/6
    return B * l * l - l * (l - 1) * (4 * l + 1) // 6 + (B - l) * (l + m) + n - l - 1


def perm_lmk_to_kml(psi: int, B: int) -> int:
    """Resort (l, m, kappa) blocks to (kappa, m, l) blocks on [0, 4B^3).

    Input ordering: l = 0..B-1; m = -l..l; kappa position 0..4B-1 innermost.
    Output ordering: kappa position outer; m = 1-B..B-1; l = |m|..B-1.
    sgn(0) = 0, which matches the sort-based resort semantics.
    """
    psi = int(psi)
    if not (0 <= psi < 4 * B**3):
        raise ValueError(f"psi = {psi} out of range")
    kappa = psi % (4 * B)
    lam = (psi - kappa) // (4 * B)
    l = int(np.floor(np.sqrt(lam)))
    while l * l > lam:
        l -= 1
    while (l + 1) * (l + 1) <= lam:
        l += 1
    m = lam - l * (l + 1)
    sgn = (m > 0) - (m < 0)
    # block prefix of order m inside one kappa slab; m(m+1) is even
    return B * B * kappa + B * (B - 1) // 2 + B * m - sgn * (m * (m + 1)) // 2 + l


def perm_mk_to_km(iota: int, B: int) -> int:
    """Resort (m, kappa) pairs to (kappa, m) pairs on [0, 4B(2B-1)).

    Input ordering: m = 1-B..B-1 outer, kappa = -2B..2B-1 inner.
    """
    iota = int(iota)
    if not (0 <= iota < 4 * B * (2 * B - 1)):
        raise ValueError(f"iota = {iota} out of range")
    kappa = iota % (4 * B) - 2 * B
    m = (iota - kappa - 2 * B) // (4 * B) - B + 1
    return B + (2 * B + kappa) * (2 * B - 1) + m - 1

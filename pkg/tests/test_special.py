import mpmath
import numpy as np
import pytest
from numpy.polynomial.legendre import leggauss
from scipy.special import eval_genlaguerre, gammaln, lpmv, roots_genlaguerre

from sglnufft.special import (
    assoc_legendre,
    chebyshev,
    laguerre,
    radial_part,
    sgl_basis_eval,
    sgl_norm,
    sph_norm,
    spherical_harmonic,
)


class TestLaguerre:
    def test_degree_zero_is_one(self):
        assert laguerre(0, 0.5, 3.7) == 1.0

    def test_degree_one_closed_form(self):
        # recurrence with L_{-1} = 0 gives L_1 = 1 + alpha - x
        assert laguerre(1, 1.5, 2.0) == pytest.approx(0.5, abs=1e-15)

    def test_against_extended_precision_oracle(self):
        # frozen from mpmath at 50 digits
        v = laguerre(5, 0.5, 1.0)
        ref = float(mpmath.laguerre(5, 0.5, 1.0))
        assert v == pytest.approx(ref, rel=1e-13)
        bound = np.exp(gammaln(5 + 0.5 + 1) - gammaln(6) - gammaln(1.5)) * np.exp(0.5)
        assert abs(v) <= bound

    @pytest.mark.parametrize("k", [0, 1, 2, 5, 13, 40])
    @pytest.mark.parametrize("alpha", [0.5, 1.5, 7.5])
    def test_against_scipy(self, k, alpha):
        x = np.linspace(0.0, 30.0, 17)
        assert laguerre(k, alpha, x) == pytest.approx(
            eval_genlaguerre(k, alpha, x), rel=1e-10, abs=1e-10
        )

    def test_rejects_bad_input(self):
        with pytest.raises(ValueError):
            laguerre(-1, 0.5, 1.0)
        with pytest.raises(ValueError):
            laguerre(2, 0.5, np.nan)


class TestAssocLegendre:
    def test_trivials(self):
        assert assoc_legendre(0, 0, 0.3) == 1.0
        x = np.linspace(-1, 1, 7)
        assert assoc_legendre(1, 0, x) == pytest.approx(x)

    def test_closed_form_p21(self):
        assert assoc_legendre(2, 1, 0.5) == pytest.approx(
            -3 * 0.5 * np.sqrt(1 - 0.25), rel=1e-14
        )

    @pytest.mark.parametrize("l", [0, 1, 2, 3, 7, 12])
    def test_against_scipy_all_orders(self, l):
        x = np.linspace(-0.99, 0.99, 13)
        for m in range(-l, l + 1):
            assert assoc_legendre(l, m, x) == pytest.approx(
                lpmv(m, l, x), rel=1e-10, abs=1e-12
            ), (l, m)

    def test_rejects_bad_order(self):
        with pytest.raises(ValueError):
            assoc_legendre(1, 2, 0.0)


class TestChebyshev:
    def test_values(self):
        assert chebyshev(0, 0.7) == 1.0
        assert chebyshev(1, 0.7) == pytest.approx(0.7)
        assert chebyshev(2, 0.5) == pytest.approx(-0.5)

    def test_cosine_identity(self):
        w = np.linspace(0.01, np.pi - 0.01, 37)
        for k in range(0, 129, 8):
            assert chebyshev(k, np.cos(w)) == pytest.approx(np.cos(k * w), abs=1e-12)


class TestNorms:
    def test_radial_norm_values(self):
        assert sgl_norm(1, 0) == pytest.approx(2 / np.pi**0.25, rel=1e-14)
        assert sgl_norm(2, 1) == pytest.approx(
            np.sqrt(2 / (3 * np.sqrt(np.pi) / 4)), rel=1e-14
        )

    def test_radial_norm_finite_large_orders(self):
        for n in (2, 17, 64, 200, 256):
            v = sgl_norm(n, n // 2)
            assert np.isfinite(v) and v > 0

    def test_spherical_norm_values(self):
        assert sph_norm(0, 0) == pytest.approx(1 / (2 * np.sqrt(np.pi)), rel=1e-14)
        assert sph_norm(1, 0) == pytest.approx(np.sqrt(3 / (4 * np.pi)), rel=1e-14)

    def test_spherical_norm_sign_flip(self):
        for l, m in [(3, 1), (5, 4), (9, 9)]:
            ratio = np.exp(gammaln(l + m + 1) - gammaln(l - m + 1))
            assert sph_norm(l, -m) == pytest.approx(sph_norm(l, m) * ratio, rel=1e-12)


class TestRadialPart:
    def test_ground_state_constant(self):
        r = np.array([0.0, 0.5, 2.0, 7.0])
        assert radial_part(1, 0, r) == pytest.approx(np.ones(4))

    def test_first_excited(self):
        assert radial_part(2, 0, 1.0) == pytest.approx(0.5)
        assert radial_part(2, 1, 2.0) == pytest.approx(2.0)


class TestSphericalHarmonic:
    def test_constant_harmonic(self):
        assert spherical_harmonic(0, 0, 0.7, 1.3) == pytest.approx(
            1 / (2 * np.sqrt(np.pi))
        )

    def test_y10(self):
        th = np.linspace(0, np.pi, 9)
        assert spherical_harmonic(1, 0, th, 0.0) == pytest.approx(
            np.sqrt(3 / (4 * np.pi)) * np.cos(th)
        )

    def test_orthonormality_on_sphere(self):
        # Gauss-Legendre in cos(theta) x trapezoid in phi
        ct, wt = leggauss(16)
        nphi = 16
        phi = 2 * np.pi * np.arange(nphi) / nphi
        pairs = [(l, m) for l in range(5) for m in range(-l, l + 1)]
        th = np.arccos(ct)
        tables = {
            p: np.array([spherical_harmonic(p[0], p[1], t, phi) for t in th])
            for p in pairs
        }
        for a in pairs:
            for b in pairs:
                g = np.einsum("j,jk->", wt, tables[a] * np.conj(tables[b]))
                g *= 2 * np.pi / nphi
                expect = 1.0 if a == b else 0.0
                assert abs(g - expect) < 1e-10, (a, b)


class TestBasisFunction:
    def test_ground_state_value(self):
        v = sgl_basis_eval((1, 0, 0), (2.2, 1.0, 3.0))
        assert v == pytest.approx(np.pi**-0.75, rel=1e-14)

    def test_factor_composition(self):
        r, th, ph = 1.7, 0.6, 2.0
        v = sgl_basis_eval((2, 1, 0), (r, th, ph))
        expect = sgl_norm(2, 1) * r * np.sqrt(3 / (4 * np.pi)) * np.cos(th)
        assert v == pytest.approx(expect, rel=1e-13)

    def test_weighted_orthonormality(self):
        # radial Gauss-Laguerre (alpha = 1/2) x sphere quadrature, weight e^{-r^2}
        s_nodes, s_w = roots_genlaguerre(24, 0.5)
        ct, wt = leggauss(24)
        nphi = 24
        phi = 2 * np.pi * np.arange(nphi) / nphi
        r = np.sqrt(s_nodes)
        idxs = [(n, l, m) for n in range(1, 4) for l in range(n) for m in range(-l, l + 1)]
        vals = {}
        for t in idxs:
            v = np.empty((r.size, ct.size, nphi), dtype=complex)
            for i, rr in enumerate(r):
                for j, c in enumerate(ct):
                    pts = np.column_stack(
                        [np.full(nphi, rr), np.full(nphi, np.arccos(c)), phi]
                    )
                    v[i, j] = sgl_basis_eval(t, pts)
            vals[t] = v
        for a, ta in enumerate(idxs):
            for b, tb in enumerate(idxs):
                g = 0.5 * np.einsum("i,j,ijk->", s_w, wt, vals[ta] * np.conj(vals[tb]))
                g *= 2 * np.pi / nphi
                expect = 1.0 if a == b else 0.0
                assert abs(g - expect) < 1e-8, (ta, tb)


class TestAnalyticBounds:
    """Property boxes for the bounds the error analysis relies on."""

    def test_laguerre_growth_bound(self):
        x = np.linspace(0.0, 50.0, 26)
        for k in range(0, 65, 4):
            for alpha in np.arange(0.5, 11.0, 1.0):
                bound = np.exp(
                    gammaln(k + alpha + 1) - gammaln(k + 1) - gammaln(alpha + 1)
                ) * np.exp(x / 2)
                assert np.all(np.abs(laguerre(k, alpha, x)) <= bound * (1 + 1e-12))

    def test_legendre_normalized_bound(self):
        x = np.linspace(-1.0, 1.0, 21)
        for l in range(0, 65, 4):
            for m in range(-l, l + 1):
                scale = np.exp(0.5 * (gammaln(l - m + 1) - gammaln(l + m + 1)))
                assert np.max(scale * np.abs(assoc_legendre(l, m, x))) <= 1 + 1e-12

    def test_over_sine_recurrence_identity(self):
        # P_lm / sqrt(1-x^2) expressed through order l+1 neighbors
        x = np.linspace(-0.95, 0.95, 11)
        s = np.sqrt(1 - x * x)
        for l in range(1, 33):
            for m in [-l, -(l + 1) // 2, -1, 1, (l + 1) // 2, l]:
                if not 1 <= abs(m) <= l:
                    continue
                lhs = assoc_legendre(l, m, x) / s
                rhs = -(1 / (2 * m)) * (
                    assoc_legendre(l + 1, m + 1, x)
                    + (l - m + 1) * (l - m + 2) * assoc_legendre(l + 1, m - 1, x)
                )
                denom = np.maximum(np.maximum(np.abs(lhs), np.abs(rhs)), 1e-30)
                assert np.max(np.abs(lhs - rhs) / denom) < 1e-9, (l, m)

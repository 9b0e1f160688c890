import numpy as np
import pytest

from sglnufft.generate import (
    cartesian_to_spherical,
    gen_coeffs,
    gen_grid,
    gen_points_ball,
    spherical_to_cartesian,
)


class TestCoefficients:
    def test_lengths(self):
        assert gen_coeffs(1, 0).shape == (1,)
        assert gen_coeffs(4, 0).shape == (30,)

    def test_range(self):
        c = gen_coeffs(8, 11)
        assert np.all(np.abs(c.real) <= 1) and np.all(np.abs(c.imag) <= 1)

    def test_seed_determinism(self):
        assert np.array_equal(gen_coeffs(5, 42), gen_coeffs(5, 42))
        assert not np.array_equal(gen_coeffs(5, 42), gen_coeffs(5, 43))


class TestBallPoints:
    def test_within_ball(self):
        pts = gen_points_ball(500, 3.5, 0)
        assert np.all(pts[:, 0] <= 3.5)
        assert np.all((pts[:, 1] >= 0) & (pts[:, 1] <= np.pi))
        assert np.all((pts[:, 2] >= 0) & (pts[:, 2] < 2 * np.pi))

    def test_mean_radius(self):
        pts = gen_points_ball(100_000, 2.0, 7)
        assert np.mean(pts[:, 0]) == pytest.approx(2.0 * 0.75, rel=0.02)

    def test_reproducible(self):
        assert np.array_equal(gen_points_ball(50, 1.0, 3), gen_points_ball(50, 1.0, 3))

    def test_validation(self):
        with pytest.raises(ValueError):
            gen_points_ball(0, 1.0, 0)
        with pytest.raises(ValueError):
            gen_points_ball(5, -1.0, 0)


class TestGrid:
    def test_single_point(self):
        pts = gen_grid(1, 2.0)
        assert pts.shape == (1, 3)
        xyz = spherical_to_cartesian(pts)
        assert xyz[0] == pytest.approx([-2.0, -2.0, -2.0])

    def test_two_per_axis_coordinates(self):
        xyz = spherical_to_cartesian(gen_grid(2, 1.0))
        vals = np.unique(np.round(xyz, 12))
        assert set(vals) == {-1.0, 0.0}

    def test_count_and_corner_radius(self):
        pts = gen_grid(5, 2.0)
        assert pts.shape == (125, 3)
        assert np.max(pts[:, 0]) == pytest.approx(2.0 * np.sqrt(3))


class TestCoordinateMaps:
    def test_roundtrip(self):
        rng = np.random.default_rng(0)
        xyz = rng.normal(size=(40, 3))
        back = spherical_to_cartesian(cartesian_to_spherical(xyz))
        assert back == pytest.approx(xyz)

    def test_origin(self):
        sph = cartesian_to_spherical(np.zeros((1, 3)))
        assert sph[0, 0] == 0.0
        assert np.isfinite(sph).all()

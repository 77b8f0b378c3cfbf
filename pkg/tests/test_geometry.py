import math

import numpy as np
import pytest

from erasim.geometry import ArrayGeometry, DirectionAngle, spatial_angles, steering_vector


def random_geometry(rng) -> ArrayGeometry:
    return ArrayGeometry(
        n_horizontal=int(rng.integers(1, 6)),
        n_vertical=int(rng.integers(1, 6)),
        spacing_wavelengths=float(rng.uniform(0.1, 1.0)),
    )


def random_direction(rng) -> DirectionAngle:
    return DirectionAngle(float(rng.uniform(0, 2 * math.pi)), float(rng.uniform(0, math.pi)))


class TestDirectionAngle:
    def test_canonical_ranges(self):
        d = DirectionAngle(-0.5, 0.5)
        assert 0 <= d.azimuth_rad < 2 * math.pi
        assert 0 <= d.elevation_rad <= math.pi

    def test_elevation_fold(self):
        # a polar angle past pi points backwards: fold and flip azimuth
        d = DirectionAngle(0.0, 1.5 * math.pi)
        assert d.elevation_rad == pytest.approx(0.5 * math.pi)
        assert d.azimuth_rad == pytest.approx(math.pi)

    def test_degree_round_trip(self):
        d = DirectionAngle.from_degrees(135.0, 90.0)
        assert d.azimuth_deg == pytest.approx(135.0, abs=1e-12)
        assert d.elevation_deg == pytest.approx(90.0, abs=1e-12)

    def test_unit_vector_is_unit(self):
        rng = np.random.default_rng(1)
        for _ in range(100):
            d = random_direction(rng)
            assert np.linalg.norm(d.unit_vector()) == pytest.approx(1.0, abs=1e-12)


class TestArrayGeometry:
    def test_validation(self):
        with pytest.raises(ValueError):
            ArrayGeometry(0, 1)
        with pytest.raises(ValueError):
            ArrayGeometry(1, 1, spacing_wavelengths=-0.5)

    def test_num_elements(self):
        assert ArrayGeometry(3, 4).num_elements == 12
        assert ArrayGeometry.linear(12).num_elements == 12
        assert ArrayGeometry.linear(12).n_vertical == 1


class TestSpatialAngles:
    def test_broadside(self):
        geom = ArrayGeometry(2, 2, 0.5)
        th, tv = spatial_angles(geom, DirectionAngle(0.0, math.pi / 2))
        assert th == pytest.approx(0.0, abs=1e-15)
        assert tv == pytest.approx(0.0, abs=1e-15)

    def test_endfire(self):
        geom = ArrayGeometry(2, 2, 0.5)
        th, tv = spatial_angles(geom, DirectionAngle(math.pi / 2, math.pi / 2))
        assert th == pytest.approx(0.5, abs=1e-15)
        assert tv == pytest.approx(0.0, abs=1e-15)

    def test_oblique_value(self):
        geom = ArrayGeometry(2, 2, 0.5)
        th, tv = spatial_angles(geom, DirectionAngle(3 * math.pi / 4, math.pi / 2))
        # 0.5 * sin(135 deg), frozen from an independent high-precision evaluation
        assert th == pytest.approx(0.35355339059327373, abs=1e-15)

    def test_bounded_by_spacing(self):
        rng = np.random.default_rng(2)
        for _ in range(200):
            geom = random_geometry(rng)
            th, tv = spatial_angles(geom, random_direction(rng))
            assert abs(th) <= geom.spacing_wavelengths + 1e-15
            assert abs(tv) <= geom.spacing_wavelengths + 1e-15

    def test_elevation_reflection(self):
        # mirroring el across the horizon flips theta_v and keeps theta_h
        geom = ArrayGeometry(2, 2, 0.5)
        rng = np.random.default_rng(3)
        for _ in range(100):
            az = float(rng.uniform(0, 2 * math.pi))
            el = float(rng.uniform(0, math.pi))
            a = spatial_angles(geom, DirectionAngle(az, el))
            b = spatial_angles(geom, DirectionAngle(az, math.pi - el))
            assert a.theta_h == pytest.approx(b.theta_h, abs=1e-12)
            assert a.theta_v == pytest.approx(-b.theta_v, abs=1e-12)


class TestSteeringVector:
    def test_single_element(self):
        geom = ArrayGeometry(1, 1)
        rng = np.random.default_rng(4)
        for _ in range(10):
            a = steering_vector(geom, random_direction(rng))
            assert a.shape == (1,)
            assert a[0] == 1.0 + 0.0j

    def test_alternating_ula(self):
        # half-wavelength ULA seen from endfire: pi phase step per element
        geom = ArrayGeometry.linear(4, 0.5)
        a = steering_vector(geom, DirectionAngle(math.pi / 2, math.pi / 2))
        expected = 0.5 * np.array([1, -1, 1, -1], dtype=complex)
        np.testing.assert_allclose(a, expected, atol=1e-14)

    def test_first_entry_exact(self):
        rng = np.random.default_rng(5)
        for _ in range(50):
            geom = random_geometry(rng)
            a = steering_vector(geom, random_direction(rng))
            assert a[0] == 1.0 / math.sqrt(geom.num_elements)

    def test_planar_oblique_oracle(self):
        # 2x2, d/lambda=0.5, az=3pi/4, el=pi/3; frozen from a scalar-loop oracle
        geom = ArrayGeometry(2, 2, 0.5)
        a = steering_vector(geom, DirectionAngle(3 * math.pi / 4, math.pi / 3))
        expected = np.array(
            [
                0.5 + 0.0j,
                -1.9142843494634747e-16 - 0.5j,
                -0.1728705221743898 - 0.46916498437453086j,
                -0.46916498437453086 + 0.1728705221743899j,
            ]
        )
        np.testing.assert_allclose(a, expected, atol=1e-12)

    def test_unit_norm_randomized(self):
        rng = np.random.default_rng(6)
        for _ in range(1000):
            geom = random_geometry(rng)
            a = steering_vector(geom, random_direction(rng))
            assert abs(np.linalg.norm(a) - 1.0) <= 1e-12

    def test_kronecker_order(self):
        # flat entry h*n_v + v carries the phase of (theta_h*h + theta_v*v)
        rng = np.random.default_rng(7)
        for _ in range(50):
            geom = random_geometry(rng)
            d = random_direction(rng)
            th, tv = spatial_angles(geom, d)
            a = steering_vector(geom, d)
            scale = 1.0 / math.sqrt(geom.num_elements)
            for h in range(geom.n_horizontal):
                for v in range(geom.n_vertical):
                    expected = scale * np.exp(-2j * np.pi * (th * h + tv * v))
                    assert abs(a[h * geom.n_vertical + v] - expected) <= 1e-12

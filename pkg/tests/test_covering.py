import math

import numpy as np
import pytest

from conftest import random_antipodal_base, random_rotation
from xraycap.covering import (
    AntipodalConfig,
    covering_radius_exact,
    covering_radius_sampled,
    verify_antipodal,
)
from xraycap.constructions import cross_polytope_config, hexagon_pair_config
from xraycap.errors import DegenerateInputError, InvalidConfigError
from xraycap.sphere import geodesic_distance


class TestExact:
    @pytest.mark.parametrize("d", [2, 3, 4, 6])
    def test_cross_polytope(self, d):
        result = covering_radius_exact(cross_polytope_config(d))
        assert result.radius == pytest.approx(math.acos(math.sqrt(1 / d)), abs=1e-12)

    def test_cross_polytope_d3_degrees(self):
        result = covering_radius_exact(cross_polytope_config(3))
        assert math.degrees(result.radius) == pytest.approx(54.7356, abs=1e-4)

    def test_hexagon_pair(self):
        result = covering_radius_exact(hexagon_pair_config())
        assert result.radius == pytest.approx(math.acos(math.sqrt(3 / 8)), abs=1e-12)
        assert math.degrees(result.radius) == pytest.approx(52.2388, abs=1e-4)

    def test_two_antipodal_points_on_circle(self):
        result = covering_radius_exact(np.array([[1.0, 0.0], [-1.0, 0.0]]))
        assert result.radius == pytest.approx(math.pi / 2, abs=1e-12)

    def test_witness_realizes_radius(self, rng):
        cfg = AntipodalConfig(3, random_antipodal_base(5, 3, rng))
        result = covering_radius_exact(cfg)
        nearest = min(
            geodesic_distance(result.witness_direction, p) for p in cfg.expanded()
        )
        assert nearest == pytest.approx(result.radius, abs=1e-8)

    def test_origin_not_interior_rejected(self):
        shifted = np.array([[0.0, 0.0, 1.0], [0.6, 0.0, 0.8], [0.0, 0.6, 0.8], [-0.6, 0.0, 0.8]])
        with pytest.raises(DegenerateInputError):
            covering_radius_exact(shifted)

    def test_rotation_invariance(self, rng):
        cfg = AntipodalConfig(4, random_antipodal_base(6, 4, rng))
        r1 = covering_radius_exact(cfg).radius
        r2 = covering_radius_exact(cfg.rotated(random_rotation(4, rng))).radius
        assert r2 == pytest.approx(r1, abs=1e-8)

    def test_adding_point_never_increases(self, rng):
        base = random_antipodal_base(5, 3, rng)
        r1 = covering_radius_exact(AntipodalConfig(3, base)).radius
        more = np.vstack([base, random_antipodal_base(1, 3, rng)])
        r2 = covering_radius_exact(AntipodalConfig(3, more)).radius
        assert r2 <= r1 + 1e-12


class TestSampled:
    def test_cross_polytope_lower_bound(self):
        cfg = cross_polytope_config(3)
        result = covering_radius_sampled(cfg, 1_000_000, seed=7)
        exact = math.acos(math.sqrt(1 / 3))
        assert math.radians(54.6) <= result.radius <= exact + 1e-12

    def test_hexagon_pair_close_to_exact(self):
        cfg = hexagon_pair_config()
        result = covering_radius_sampled(cfg, 1_000_000, seed=3)
        exact = math.acos(math.sqrt(3 / 8))
        assert exact - math.radians(0.5) <= result.radius <= exact + 1e-12

    def test_single_pair_approaches_half_pi(self):
        cfg = AntipodalConfig(3, np.array([[0.0, 0.0, 1.0]]))
        result = covering_radius_sampled(cfg, 200_000, seed=0)
        assert result.radius == pytest.approx(math.pi / 2, abs=0.02)

    def test_deterministic_given_seed(self):
        cfg = cross_polytope_config(3)
        a = covering_radius_sampled(cfg, 50_000, seed=11)
        b = covering_radius_sampled(cfg, 50_000, seed=11)
        assert a.radius == b.radius
        assert np.array_equal(a.witness_direction, b.witness_direction)

    def test_sampled_below_exact_random_configs(self, rng):
        for d in (3, 4):
            for _ in range(5):
                cfg = AntipodalConfig(d, random_antipodal_base(d + 2, d, rng))
                exact = covering_radius_exact(cfg).radius
                sampled = covering_radius_sampled(cfg, 20_000, seed=1).radius
                assert sampled <= exact + 1e-12


class TestAntipodal:
    def test_cross_polytope_set(self):
        assert verify_antipodal(np.vstack([np.eye(4), -np.eye(4)]))

    def test_non_antipodal(self):
        assert not verify_antipodal(np.eye(3)[:2])

    def test_hexagon_pair_expanded(self):
        assert verify_antipodal(hexagon_pair_config().expanded())

    def test_odd_count(self):
        assert not verify_antipodal(np.eye(3))


class TestAntipodalConfig:
    def test_rejects_duplicate_pair(self):
        with pytest.raises(InvalidConfigError):
            AntipodalConfig(3, np.array([[0.0, 0.0, 1.0], [0.0, 0.0, -1.0]]))

    def test_rejects_dimension_mismatch(self):
        with pytest.raises(InvalidConfigError):
            AntipodalConfig(4, np.eye(3))

    def test_radius_below_half_pi_iff_origin_interior(self, rng):
        spanning = AntipodalConfig(3, np.eye(3))
        assert covering_radius_exact(spanning).radius < math.pi / 2

import json
import math

import numpy as np
import pytest

from xraycap.constructions import (
    cross_polytope_config,
    hexagon_pair_config,
    join_16gon_s2_config,
    join_covering_radius,
    join_s2_s2_config,
    load_config,
    optimized_s2_config,
    orthogonal_join,
    regular_polygon_config,
    save_config,
)
from xraycap.covering import covering_radius_exact, verify_antipodal
from xraycap.errors import InvalidConfigError


class TestNamedConstructions:
    @pytest.mark.parametrize("d,expected", [(2, math.pi / 4), (3, None), (6, None)])
    def test_cross_polytope_radius(self, d, expected):
        cfg = cross_polytope_config(d)
        expected = expected if expected is not None else math.acos(math.sqrt(1 / d))
        assert cfg.covering_radius == pytest.approx(expected, abs=1e-15)
        assert covering_radius_exact(cfg).radius == pytest.approx(expected, abs=1e-12)

    @pytest.mark.parametrize(
        "k,expected_deg", [(16, 11.25), (6, 30.0), (4, 45.0)]
    )
    def test_regular_polygon_radius(self, k, expected_deg):
        cfg = regular_polygon_config(k)
        assert math.degrees(cfg.covering_radius) == pytest.approx(expected_deg)
        assert covering_radius_exact(cfg).radius == pytest.approx(
            cfg.covering_radius, abs=1e-12
        )

    def test_polygon_odd_rejected(self):
        with pytest.raises(InvalidConfigError):
            regular_polygon_config(5)

    def test_square_equals_cross_polytope_2(self):
        assert regular_polygon_config(4).covering_radius == pytest.approx(
            cross_polytope_config(2).covering_radius
        )

    def test_hexagon_pair(self):
        cfg = hexagon_pair_config()
        assert cfg.dimension == 4
        assert cfg.pairs == 6
        assert verify_antipodal(cfg.expanded())
        assert covering_radius_exact(cfg).radius == pytest.approx(
            math.acos(math.sqrt(3 / 8)), abs=1e-12
        )

    def test_hexagon_pair_is_join_of_hexagons(self):
        hexagon = regular_polygon_config(6)
        joined = orthogonal_join(hexagon, hexagon)
        assert np.allclose(joined.base_points, hexagon_pair_config().base_points)


class TestJoinFormula:
    def test_hexagon_hexagon(self):
        r = join_covering_radius(math.radians(30), math.radians(30))
        assert math.degrees(r) == pytest.approx(52.2388, abs=1e-4)
        assert r == pytest.approx(math.acos(math.sqrt(3 / 8)), abs=1e-12)

    def test_d5_value(self):
        r = join_covering_radius(math.radians(11.25), math.radians(33.547))
        assert math.degrees(r) == pytest.approx(50.572, abs=5e-3)

    def test_d6_value(self):
        r = join_covering_radius(math.radians(22.690), math.radians(22.690))
        assert math.degrees(r) == pytest.approx(49.278, abs=5e-3)

    def test_two_equation_cross_check(self):
        # the closed form solves cos x = cos a cos y and cos x = cos b sin y
        a, b = math.radians(11.25), math.radians(33.547)
        x = join_covering_radius(a, b)
        y = math.atan2(math.cos(a), math.cos(b))
        assert math.cos(x) == pytest.approx(math.cos(a) * math.cos(y), abs=1e-12)
        assert math.cos(x) == pytest.approx(math.cos(b) * math.sin(y), abs=1e-12)

    def test_symmetry_and_monotonicity(self):
        a, b = 0.3, 0.7
        assert join_covering_radius(a, b) == join_covering_radius(b, a)
        assert join_covering_radius(a + 0.1, b) > join_covering_radius(a, b)
        assert join_covering_radius(a, b + 0.1) > join_covering_radius(a, b)

    def test_rejects_half_pi(self):
        with pytest.raises(ValueError):
            join_covering_radius(math.pi / 2, 0.3)

    @pytest.mark.parametrize(
        "factory",
        [
            lambda: orthogonal_join(regular_polygon_config(6), regular_polygon_config(6)),
            lambda: orthogonal_join(regular_polygon_config(16), regular_polygon_config(16)),
        ],
    )
    def test_formula_matches_exact_for_rigid_factors(self, factory):
        joined = factory()
        exact = covering_radius_exact(joined).radius
        # both factors are regular polygons with per_factor antipodal pairs,
        # so each factor's covering radius is pi / (2 * per_factor)
        per_factor = joined.pairs // 2
        factor_radius = math.pi / (2 * per_factor)
        predicted = join_covering_radius(factor_radius, factor_radius)
        assert exact == pytest.approx(predicted, abs=1e-6)


class TestShippedFactors:
    def test_16_point_factor(self):
        cfg = optimized_s2_config(8)
        assert cfg.dimension == 3 and cfg.pairs == 8
        exact = covering_radius_exact(cfg).radius
        assert math.degrees(exact) <= 33.547 + 0.1
        assert verify_antipodal(cfg.expanded())

    def test_32_point_factor(self):
        cfg = optimized_s2_config(16)
        exact = covering_radius_exact(cfg).radius
        assert math.degrees(exact) <= 22.690 + 0.1
        assert verify_antipodal(cfg.expanded())

    def test_d5_join_has_32_points(self):
        cfg = join_16gon_s2_config()
        assert cfg.dimension == 5
        assert cfg.pairs == 16

    def test_d6_join_has_64_points(self):
        cfg = join_s2_s2_config()
        assert cfg.dimension == 6
        assert cfg.pairs == 32

    def test_missing_factor_size(self):
        with pytest.raises(InvalidConfigError):
            optimized_s2_config(5)


class TestConfigIO:
    def test_round_trip(self, tmp_path):
        cfg = hexagon_pair_config()
        path = tmp_path / "hex.json"
        save_config(cfg, path)
        loaded = load_config(path)
        assert np.max(np.abs(loaded.base_points - cfg.base_points)) <= 1e-15
        assert loaded.covering_radius == pytest.approx(cfg.covering_radius)

    def test_non_unit_normalized_on_load(self, tmp_path):
        path = tmp_path / "cfg.json"
        payload = {
            "dim": 3,
            "antipodal": True,
            "base_points": [[2.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]],
            "covering_radius_rad": None,
            "provenance": "test",
        }
        path.write_text(json.dumps(payload))
        cfg = load_config(path)
        assert np.linalg.norm(cfg.base_points[0]) == pytest.approx(1.0, abs=1e-12)

    def test_duplicate_pair_rejected(self, tmp_path):
        path = tmp_path / "bad.json"
        payload = {
            "dim": 3,
            "antipodal": True,
            "base_points": [[1.0, 0.0, 0.0], [-1.0, 0.0, 0.0]],
        }
        path.write_text(json.dumps(payload))
        with pytest.raises(InvalidConfigError):
            load_config(path)

    def test_malformed_rejected(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"dim": 3}))
        with pytest.raises(InvalidConfigError):
            load_config(path)

    def test_shape_mismatch_rejected(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(
            json.dumps({"dim": 4, "antipodal": True, "base_points": [[1.0, 0.0, 0.0]]})
        )
        with pytest.raises(InvalidConfigError):
            load_config(path)

"""Explicit antipodal configurations and the orthogonal-join combinator.

The two S^2 factor configurations used by the d=5 and d=6 joins (16 and
32 antipodal points) are not hard-coded: they are produced by the
optimizer and shipped as versioned JSON data files together with their
certified covering radii.
"""

from __future__ import annotations

import json
import math
from importlib import resources

import numpy as np

from .covering import AntipodalConfig
from .errors import InvalidConfigError

CONFIG_SCHEMA_KEYS = {"dim", "antipodal", "base_points"}


def cross_polytope_config(d: int) -> AntipodalConfig:
    """Vertices of the cross-polytope inscribed in S^(d-1): {±e_1..±e_d}.

    Covering radius arccos(sqrt(1/d)).
    """
    if d < 2:
        raise ValueError("dimension must be >= 2")
    return AntipodalConfig(
        dimension=d,
        base_points=np.eye(d),
        covering_radius=math.acos(math.sqrt(1.0 / d)),
        provenance="constructed",
    )


def regular_polygon_config(k: int) -> AntipodalConfig:
    """k points of a regular k-gon on the circle S^1 (k even, >= 4).

    Covering radius pi/k (half the central angle of an edge).
    """
    if k % 2 != 0:
        raise InvalidConfigError("a regular k-gon is antipodal only for even k")
    if k < 4:
        raise ValueError("need k >= 4")
    m = k // 2
    angles = 2.0 * math.pi * np.arange(m) / k
    pts = np.column_stack([np.cos(angles), np.sin(angles)])
    return AntipodalConfig(
        dimension=2,
        base_points=pts,
        covering_radius=math.pi / k,
        provenance="constructed",
    )


def orthogonal_join(left: AntipodalConfig, right: AntipodalConfig) -> AntipodalConfig:
    """Union of the two configs embedded in orthogonal coordinate blocks.

    Left occupies coordinates 1..k, right occupies k+1..d.
    """
    d = left.dimension + right.dimension
    lpts = np.hstack([left.base_points, np.zeros((left.pairs, right.dimension))])
    rpts = np.hstack([np.zeros((right.pairs, left.dimension)), right.base_points])
    return AntipodalConfig(
        dimension=d,
        base_points=np.vstack([lpts, rpts]),
        provenance="constructed",
    )


def hexagon_pair_config() -> AntipodalConfig:
    """Two unit-edge regular hexagons in orthogonal 2-planes of E^4.

    12 points on S^3 with exact covering radius arccos(sqrt(3/8)).
    """
    cfg = orthogonal_join(regular_polygon_config(6), regular_polygon_config(6))
    cfg.covering_radius = math.acos(math.sqrt(3.0 / 8.0))
    return cfg


def join_covering_radius(r_left: float, r_right: float) -> float:
    """Covering radius of an orthogonal join from its factor radii.

    For a point cos(t)u + sin(t)v the distances to the two embedded factors
    satisfy cos x = cos t * cos r_left and cos x = sin t * cos r_right at the
    worst balance point; eliminating t gives
    cos x = cos r_left * cos r_right / sqrt(cos^2 r_left + cos^2 r_right).
    """
    for r in (r_left, r_right):
        if not 0.0 < r < math.pi / 2:
            raise ValueError("factor covering radii must lie in (0, pi/2)")
    cl, cr = math.cos(r_left), math.cos(r_right)
    return math.acos(cl * cr / math.hypot(cl, cr))


def save_config(config: AntipodalConfig, path) -> None:
    """Write a config to the interchange JSON format (17 significant digits)."""
    payload = {
        "dim": config.dimension,
        "antipodal": True,
        "base_points": [[float(x) for x in row] for row in config.base_points],
        "covering_radius_rad": config.covering_radius,
        "provenance": config.provenance,
    }
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")


def config_from_payload(payload: dict) -> tuple[AntipodalConfig, list[str]]:
    """Build a config from parsed JSON; returns (config, warnings)."""
    missing = CONFIG_SCHEMA_KEYS - payload.keys()
    if missing:
        raise InvalidConfigError(f"config JSON missing keys: {sorted(missing)}")
    pts = np.asarray(payload["base_points"], dtype=float)
    if pts.ndim != 2 or pts.shape[1] != payload["dim"]:
        raise InvalidConfigError("base_points shape does not match dim")
    warnings = []
    norms = np.linalg.norm(pts, axis=1)
    if np.any(np.abs(norms - 1.0) > 1e-12):
        warnings.append("non-unit base points were normalized on load")
    if not payload.get("antipodal", False):
        raise InvalidConfigError("config files must declare antipodal: true")
    # AntipodalConfig rejects antipodal duplicates among the base points
    # (a full 2m-point set stored by mistake trips this)
    cfg = AntipodalConfig(
        dimension=int(payload["dim"]),
        base_points=pts,
        covering_radius=payload.get("covering_radius_rad"),
        provenance=payload.get("provenance", "loaded"),
    )
    return cfg, warnings


def load_config(path) -> AntipodalConfig:
    """Load a config JSON file, validating norms and antipodality."""
    with open(path) as fh:
        payload = json.load(fh)
    cfg, _ = config_from_payload(payload)
    return cfg


def optimized_s2_config(pairs: int) -> AntipodalConfig:
    """Shipped optimizer output on S^2 with the given number of pairs (8 or 16)."""
    name = f"s2_{2 * pairs}pt.json"
    try:
        text = resources.files("xraycap.data").joinpath(name).read_text()
    except FileNotFoundError:
        raise InvalidConfigError(f"no shipped S^2 configuration with {pairs} pairs")
    cfg, _ = config_from_payload(json.loads(text))
    return cfg


def join_16gon_s2_config() -> AntipodalConfig:
    """32 antipodal points on S^4: regular 16-gon joined with the 16-point S^2 factor."""
    return orthogonal_join(regular_polygon_config(16), optimized_s2_config(8))


def join_s2_s2_config() -> AntipodalConfig:
    """64 antipodal points on S^5: two copies of the 32-point S^2 factor joined."""
    f = optimized_s2_config(16)
    return orthogonal_join(f, f)

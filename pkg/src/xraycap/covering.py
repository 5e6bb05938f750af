"""Covering radii of finite point sets on S^(d-1); antipodal configurations.

The exact route goes through the convex hull: when the origin is interior,
the farthest point of the sphere from the set is a spherical Voronoi
vertex, and those are exactly the normalized feet of the hull facet
hyperplanes. The covering radius is therefore arccos of the smallest
facet support offset.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .errors import DegenerateInputError, InvalidConfigError
from .hull import contains_origin_interior, convex_hull_facets
from .sphere import unit_rows

PAIRING_TOL = 1e-9


@dataclass
class AntipodalConfig:
    """m base points on S^(d-1) standing for 2m pairwise antipodal points."""

    dimension: int
    base_points: np.ndarray
    covering_radius: float | None = None
    provenance: str = "constructed"

    def __post_init__(self):
        pts = unit_rows(self.base_points)
        if pts.shape[1] != self.dimension:
            raise InvalidConfigError(
                f"base points have dimension {pts.shape[1]}, expected {self.dimension}"
            )
        self.base_points = pts
        expanded = self.expanded()
        diff = expanded[:, None, :] - expanded[None, :, :]
        dist = np.linalg.norm(diff, axis=2)
        np.fill_diagonal(dist, np.inf)
        if dist.min() < PAIRING_TOL:
            raise InvalidConfigError(
                "expanded configuration has coincident points (within 1e-9)"
            )

    @property
    def pairs(self) -> int:
        return self.base_points.shape[0]

    def expanded(self) -> np.ndarray:
        """The full 2m-point set {p_i, -p_i}."""
        return np.vstack([self.base_points, -self.base_points])

    def rotated(self, q: np.ndarray) -> "AntipodalConfig":
        return replace(self, base_points=self.base_points @ q.T)


@dataclass(frozen=True)
class CoveringRadiusResult:
    radius: float
    witness_direction: np.ndarray
    method: str  # "exact" | "sampled"
    sample_count: int | None = None
    facet_count: int | None = field(default=None, repr=False)


def _as_points(config) -> np.ndarray:
    if isinstance(config, AntipodalConfig):
        return config.expanded()
    return unit_rows(config)


def covering_radius_exact(config) -> CoveringRadiusResult:
    """Exact covering radius via hull facets; needs the origin interior."""
    pts = _as_points(config)
    # a single antipodal pair spans no hull; its covering radius is pi/2,
    # witnessed by any orthogonal direction
    if np.linalg.matrix_rank(pts, tol=1e-10) == 1 and verify_antipodal(pts):
        p = pts[0]
        i = int(np.argmin(np.abs(p)))
        w = np.eye(len(p))[i] - p[i] * p
        witness = w / np.linalg.norm(w)
        result = CoveringRadiusResult(
            radius=np.pi / 2, witness_direction=witness, method="exact"
        )
        if isinstance(config, AntipodalConfig):
            config.covering_radius = result.radius
        return result
    facets = convex_hull_facets(pts)
    if not contains_origin_interior(facets):
        raise DegenerateInputError(
            "origin is not interior to the hull; use covering_radius_sampled"
        )
    worst = min(facets, key=lambda f: f.support_offset)
    radius = float(np.arccos(np.clip(worst.support_offset, -1.0, 1.0)))
    result = CoveringRadiusResult(
        radius=radius,
        witness_direction=worst.outward_normal.copy(),
        method="exact",
        facet_count=len(facets),
    )
    if isinstance(config, AntipodalConfig):
        config.covering_radius = radius
    return result


def covering_radius_sampled(config, sample_count: int, seed: int = 0) -> CoveringRadiusResult:
    """Monte-Carlo lower bound on the covering radius; deterministic per seed.

    Samples are drawn in blocks with per-block seeds so block-parallel
    evaluation would reproduce the same stream.
    """
    if sample_count < 1:
        raise ValueError("sample_count must be >= 1")
    pts = _as_points(config)
    d = pts.shape[1]
    block = 65536
    seeds = np.random.SeedSequence(seed).spawn((sample_count + block - 1) // block)
    best = -1.0
    witness = pts[0]
    done = 0
    for ss in seeds:
        n = min(block, sample_count - done)
        rng = np.random.default_rng(ss)
        x = rng.standard_normal((n, d))
        x /= np.linalg.norm(x, axis=1)[:, None]
        cosdist = np.max(x @ pts.T, axis=1)  # nearest config point per sample
        i = int(np.argmin(cosdist))
        r = float(np.arccos(np.clip(cosdist[i], -1.0, 1.0)))
        if r > best:
            best = r
            witness = x[i].copy()
        done += n
    return CoveringRadiusResult(
        radius=best, witness_direction=witness, method="sampled", sample_count=sample_count
    )


def verify_antipodal(points, tol: float = PAIRING_TOL) -> bool:
    """True iff the point set is closed under negation (within pairing tol)."""
    pts = unit_rows(points)
    if pts.shape[0] % 2 == 1:
        return False
    for p in pts:
        if np.min(np.linalg.norm(pts + p, axis=1)) > tol:
            return False
    return True

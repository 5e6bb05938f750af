"""Facet enumeration for convex hulls of finite point sets in E^d (d <= 8).

Backed by qhull (scipy.spatial.ConvexHull). Qhull triangulates, so
coplanar simplices are coalesced back into a single facet and flagged;
that keeps the facet list combinatorially faithful for the highly
symmetric configurations this toolkit works with.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.spatial import ConvexHull, QhullError

from .errors import DegenerateInputError

COPLANAR_TOL = 1e-10
JOGGLE_SCALE = 1e-10


@dataclass(frozen=True)
class HullFacet:
    """One facet of the hull: its vertices, outward unit normal and offset.

    ``support_offset`` is the signed distance from the origin to the facet
    hyperplane, positive when the origin lies on the inner side.
    ``triangulated`` marks facets that qhull reported as several coplanar
    simplices (non-simplicial facets of the true hull).
    """

    vertex_indices: tuple
    outward_normal: np.ndarray
    support_offset: float
    triangulated: bool = False
    simplices: tuple = field(default=(), repr=False)


def _affine_dimension(points: np.ndarray, tol: float = 1e-9) -> int:
    centered = points - points.mean(axis=0)
    if len(points) < 2:
        return 0
    s = np.linalg.svd(centered, compute_uv=False)
    scale = s[0] if s[0] > 0 else 1.0
    return int(np.sum(s > tol * scale))


def _facet_plane(points: np.ndarray, interior: np.ndarray) -> tuple[np.ndarray, float]:
    """Hyperplane through ``points``, normal oriented away from ``interior``."""
    base = points[0]
    rel = points[1:] - base
    _, _, vt = np.linalg.svd(rel)
    normal = vt[-1]
    offset = float(np.dot(normal, base))
    if np.dot(normal, interior) > offset:
        normal, offset = -normal, -offset
    return normal, offset


def convex_hull_facets(points) -> list[HullFacet]:
    """Complete facet list of the convex hull of ``points``.

    Raises DegenerateInputError (carrying the detected affine dimension)
    for flat input. Normals point away from the input centroid.
    """
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    n, d = pts.shape
    if d < 2 or d > 8:
        raise DegenerateInputError(f"supported ambient dimensions are 2..8, got {d}")
    if n < d + 1:
        raise DegenerateInputError(
            f"need at least d+1={d + 1} points, got {n}",
            affine_dim=_affine_dimension(pts),
        )
    adim = _affine_dimension(pts)
    if adim < d:
        raise DegenerateInputError(
            f"input is flat: affine dimension {adim} < {d}", affine_dim=adim
        )

    work = pts
    try:
        hull = ConvexHull(work)
    except QhullError:
        # symmetric inputs can defeat qhull's merged-facet handling; retry
        # on deterministically joggled points, planes are refit from the
        # original coordinates below
        rng = np.random.default_rng(20240331)
        work = pts + JOGGLE_SCALE * rng.standard_normal(pts.shape)
        hull = ConvexHull(work, qhull_options="QJ")

    centroid = pts.mean(axis=0)
    # refit each simplex hyperplane from the original points, then group
    # coplanar simplices into one facet
    planes = []
    for simplex in hull.simplices:
        normal, offset = _facet_plane(pts[simplex], centroid)
        planes.append((tuple(sorted(int(i) for i in simplex)), normal, offset))

    groups: list[dict] = []
    for simplex, normal, offset in planes:
        placed = False
        for g in groups:
            if (
                abs(offset - g["offset"]) <= COPLANAR_TOL
                and np.linalg.norm(normal - g["normal"]) <= COPLANAR_TOL * 10
            ):
                g["vertices"].update(simplex)
                g["simplices"].append(simplex)
                placed = True
                break
        if not placed:
            groups.append(
                {
                    "normal": normal,
                    "offset": offset,
                    "vertices": set(simplex),
                    "simplices": [simplex],
                }
            )

    facets = []
    for g in groups:
        facets.append(
            HullFacet(
                vertex_indices=tuple(sorted(g["vertices"])),
                outward_normal=g["normal"],
                support_offset=g["offset"],
                triangulated=len(g["simplices"]) > 1,
                simplices=tuple(g["simplices"]),
            )
        )
    facets.sort(key=lambda f: f.vertex_indices)
    return facets


def contains_origin_interior(facets, tol: float = 1e-10) -> bool:
    """True iff every facet hyperplane has the origin strictly inside."""
    return all(f.support_offset > tol for f in facets)


def hull_vertex_indices(facets) -> set:
    """Indices of input points that are hull vertices."""
    out: set = set()
    for f in facets:
        out.update(f.vertex_indices)
    return out

"""Floating-point primitives on the unit sphere S^(d-1).

All angles are radians. Points are numpy arrays of unit Euclidean norm;
``unit_vector`` is the canonical constructor and normalizes its input.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linprog

from .errors import DegenerateInputError, DimensionMismatchError, NoHemisphereError

NORM_TOL = 1e-12
HEMISPHERE_TOL = 1e-10


def unit_vector(coords) -> np.ndarray:
    """Normalize ``coords`` to a point of S^(d-1), d >= 2."""
    v = np.asarray(coords, dtype=float)
    if v.ndim != 1 or v.size < 2:
        raise DegenerateInputError("a unit vector needs at least 2 coordinates")
    n = np.linalg.norm(v)
    if n < NORM_TOL:
        raise DegenerateInputError("cannot normalize a (near-)zero vector")
    return v / n


def unit_rows(points) -> np.ndarray:
    """Stack points into an (n, d) array of unit rows."""
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    if pts.shape[1] < 2:
        raise DegenerateInputError("points need at least 2 coordinates")
    norms = np.linalg.norm(pts, axis=1)
    if np.any(norms < NORM_TOL):
        raise DegenerateInputError("cannot normalize a (near-)zero vector")
    return pts / norms[:, None]


@dataclass(frozen=True)
class SphericalCap:
    """Closed spherical cap: all points within geodesic ``radius`` of ``center``."""

    center: np.ndarray
    radius: float

    def contains(self, point, tol: float = 1e-9) -> bool:
        return geodesic_distance(self.center, point) <= self.radius + tol


def geodesic_distance(p, q) -> float:
    """Arc length between two unit vectors, in [0, pi].

    The inner product is clamped to [-1, 1] before arccos; drift past the
    clamp is at most machine epsilon for unit inputs.
    """
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    if p.shape != q.shape:
        raise DimensionMismatchError(
            f"dimension mismatch: {p.shape} vs {q.shape}"
        )
    return float(np.arccos(np.clip(np.dot(p, q), -1.0, 1.0)))


def in_open_hemisphere(points, tol: float = HEMISPHERE_TOL) -> bool:
    """True iff some direction c has <c, p_i> > tol for every point.

    Solved as a linear feasibility problem: maximize t subject to
    P c >= t, -1 <= c_j <= 1, t <= 1.
    """
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    n, d = pts.shape
    # variables (c_1..c_d, t); minimize -t
    c_obj = np.zeros(d + 1)
    c_obj[-1] = -1.0
    a_ub = np.hstack([-pts, np.ones((n, 1))])
    b_ub = np.zeros(n)
    bounds = [(-1.0, 1.0)] * d + [(None, 1.0)]
    res = linprog(c_obj, A_ub=a_ub, b_ub=b_ub, bounds=bounds, method="highs")
    return bool(res.success and -res.fun > tol)


def circumcenter(points) -> tuple[np.ndarray, float]:
    """Equidistant spherical center of 2..d unit points, with its radius.

    The center lies in the linear span of the inputs, on their side of the
    origin. Requires affinely independent points inside an open hemisphere.
    """
    pts = unit_rows(points)
    k, d = pts.shape
    if not 2 <= k <= d:
        raise DegenerateInputError(f"need between 2 and d={d} points, got {k}")
    if not in_open_hemisphere(pts):
        raise NoHemisphereError("circumcenter inputs span a closed hemisphere")
    gram = pts @ pts.T
    try:
        w = np.linalg.solve(gram, np.ones(k))
    except np.linalg.LinAlgError:
        w = None
    if w is None or np.linalg.cond(gram) > 1e12:
        raise DegenerateInputError(
            "affinely dependent input: no unique equidistant center in the span"
        )
    c = pts.T @ w
    norm = np.linalg.norm(c)
    if norm < 1e-12:
        raise NoHemisphereError("equidistant center degenerates to the origin")
    c = c / norm
    if np.dot(c, pts[0]) < 0:
        c = -c
    radius = geodesic_distance(c, pts[0])
    return c, radius


def _ball_through(points: np.ndarray) -> tuple[np.ndarray, float]:
    """Smallest Euclidean ball with all of ``points`` on its boundary.

    Center is constrained to the affine hull of the points, which makes it
    unique for affinely independent boundary sets (the Welzl support sets).
    """
    k = points.shape[0]
    if k == 0:
        return np.zeros(points.shape[1]), -1.0
    if k == 1:
        return points[0].copy(), 0.0
    base = points[0]
    rel = points[1:] - base
    # c = base + rel.T @ lam with |c - p_i| equal for all i
    gram = rel @ rel.T
    rhs = 0.5 * np.einsum("ij,ij->i", rel, rel)
    lam, *_ = np.linalg.lstsq(gram, rhs, rcond=None)
    center = base + rel.T @ lam
    return center, float(np.linalg.norm(center - base))


def _welzl(points: np.ndarray, boundary: list, n: int) -> tuple[np.ndarray, float]:
    if n == 0 or len(boundary) == points.shape[1] + 1:
        return _ball_through(np.array(boundary) if boundary else np.empty((0, points.shape[1])))
    p = points[n - 1]
    center, radius = _welzl(points, boundary, n - 1)
    if radius >= 0 and np.linalg.norm(p - center) <= radius + 1e-12:
        return center, radius
    return _welzl(points, boundary + [p], n - 1)


def euclidean_min_ball(points, seed: int = 0) -> tuple[np.ndarray, float]:
    """Welzl's minimal enclosing ball, with a seeded shuffle for determinism."""
    pts = np.atleast_2d(np.asarray(points, dtype=float)).copy()
    rng = np.random.default_rng(seed)
    rng.shuffle(pts, axis=0)
    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 4 * len(pts) + 100))
    try:
        center, radius = _welzl(pts, [], pts.shape[0])
    finally:
        sys.setrecursionlimit(old)
    return center, radius


def min_enclosing_cap(points) -> SphericalCap:
    """Smallest spherical cap containing all points (open-hemisphere sets).

    Computed from the Euclidean minimal enclosing ball: for points on the
    sphere the normalized ball center is equidistant from the ball's support
    set and maximizes the minimum inner product, so central projection gives
    the optimal cap center.
    """
    pts = unit_rows(points)
    if pts.shape[0] == 1:
        return SphericalCap(center=pts[0].copy(), radius=0.0)
    if not in_open_hemisphere(pts):
        raise NoHemisphereError("points are not contained in any open hemisphere")
    center, _ = euclidean_min_ball(pts)
    norm = np.linalg.norm(center)
    if norm < 1e-12:
        raise NoHemisphereError("enclosing-ball center degenerates to the origin")
    c = center / norm
    radius = float(np.max(np.arccos(np.clip(pts @ c, -1.0, 1.0))))
    return SphericalCap(center=c, radius=radius)


def random_unit_vectors(n: int, d: int, rng: np.random.Generator) -> np.ndarray:
    """n uniform points on S^(d-1) via normalized Gaussians."""
    x = rng.standard_normal((n, d))
    return x / np.linalg.norm(x, axis=1)[:, None]

"""Polytope-side machinery: normal cones, X-ray line verification and search,
antipodality and weak neighbourliness.

Verification only ever checks vertex normal cones: every face's cone is
contained in each incident vertex's cone, so one-sidedness of the larger
generator set implies it for the face. This avoids enumerating the
(exponentially many) faces.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linprog

from .errors import DegenerateInputError, NotAFaceError
from .hull import convex_hull_facets, hull_vertex_indices

STRICT_TOL = 1e-10
MARGINAL_TOL = 1e-8
PARALLEL_TOL = 1e-9
EXACT_COVER_LIMIT = 20


class Polytope:
    """Full-dimensional polytope given by its vertices (convex position)."""

    def __init__(self, vertices):
        self.vertices = np.atleast_2d(np.asarray(vertices, dtype=float))
        self.dimension = self.vertices.shape[1]
        self.facets = convex_hull_facets(self.vertices)
        on_hull = hull_vertex_indices(self.facets)
        if on_hull != set(range(len(self.vertices))):
            interior = sorted(set(range(len(self.vertices))) - on_hull)
            raise DegenerateInputError(
                f"vertices {interior} are not in convex position"
            )
        self.vertex_facets = {
            i: [k for k, f in enumerate(self.facets) if i in f.vertex_indices]
            for i in range(len(self.vertices))
        }

    @property
    def vertex_count(self) -> int:
        return len(self.vertices)

    def to_dict(self) -> dict:
        return {
            "dim": self.dimension,
            "vertices": [[float(x) for x in row] for row in self.vertices],
        }


@dataclass(frozen=True)
class NormalCone:
    """Generators (outward facet normals) of a face's Gauss image."""

    face_vertices: tuple
    generators: np.ndarray


@dataclass
class LineSet:
    """Unoriented lines through the origin, one unit direction each."""

    directions: np.ndarray

    def __post_init__(self):
        dirs = np.atleast_2d(np.asarray(self.directions, dtype=float))
        dirs = dirs / np.linalg.norm(dirs, axis=1)[:, None]
        keep = []
        for v in dirs:
            if all(1.0 - abs(np.dot(v, w)) > PARALLEL_TOL for w in keep):
                keep.append(v)
        self.directions = np.array(keep)

    def __len__(self) -> int:
        return len(self.directions)


@dataclass
class XrayReport:
    ok: bool
    uncovered_vertices: list
    marginal_vertices: list = field(default_factory=list)


@dataclass
class WnaReport:
    is_weakly_neighbourly: bool
    is_antipodal: bool
    vertex_count: int
    dimension: int
    conjecture_bound: int  # 3 * 2^(d-2)
    danzer_grunbaum_bound: int  # 2^d
    xray_lower_bound: int | None
    conjecture_violated: bool

    def to_dict(self) -> dict:
        return {
            "is_weakly_neighbourly": self.is_weakly_neighbourly,
            "is_antipodal": self.is_antipodal,
            "vertex_count": self.vertex_count,
            "dimension": self.dimension,
            "conjecture_bound": self.conjecture_bound,
            "danzer_grunbaum_bound": self.danzer_grunbaum_bound,
            "xray_lower_bound": self.xray_lower_bound,
            "conjecture_violated": self.conjecture_violated,
        }


def normal_cone(p: Polytope, face_vertices) -> NormalCone:
    """Cone of the face identified by its vertex set."""
    face = frozenset(int(i) for i in face_vertices)
    if not face or not face <= set(range(p.vertex_count)):
        raise NotAFaceError(f"invalid vertex indices: {sorted(face_vertices)}")
    containing = [f for f in p.facets if face <= set(f.vertex_indices)]
    if not containing:
        raise NotAFaceError(f"{sorted(face)} is not contained in any facet")
    common = set(containing[0].vertex_indices)
    for f in containing[1:]:
        common &= set(f.vertex_indices)
    if common != face:
        raise NotAFaceError(
            f"{sorted(face)} is not a face (its facet intersection is {sorted(common)})"
        )
    return NormalCone(
        face_vertices=tuple(sorted(face)),
        generators=np.array([f.outward_normal for f in containing]),
    )


def line_xrays_face(cone: NormalCone, direction, tol: float = STRICT_TOL) -> bool:
    """True iff the line spanned by ``direction`` X-rays the face.

    The face is X-rayed iff its Gauss image misses the hyperplane through
    the origin orthogonal to the line, i.e. iff all generator inner
    products with the direction are strictly one-sided.
    """
    dots = cone.generators @ np.asarray(direction, dtype=float)
    return bool(np.all(dots > tol) or np.all(dots < -tol))


def _vertex_cones(p: Polytope) -> list[NormalCone]:
    return [
        NormalCone(
            face_vertices=(i,),
            generators=np.array([p.facets[k].outward_normal for k in p.vertex_facets[i]]),
        )
        for i in range(p.vertex_count)
    ]


def verify_xray_lines(p: Polytope, lines: LineSet) -> XrayReport:
    """Check that every face of the polytope is X-rayed by some line.

    Checking vertices suffices (their cones contain all incident faces').
    Vertices with a near-zero generator product against some line are
    flagged marginal, prompting a perturbation of the line set.
    """
    uncovered = []
    marginal = []
    for cone in _vertex_cones(p):
        covered = False
        for direction in lines.directions:
            dots = cone.generators @ direction
            if np.any(np.abs(dots) < MARGINAL_TOL):
                marginal.append(cone.face_vertices[0])
            if np.all(dots > STRICT_TOL) or np.all(dots < -STRICT_TOL):
                covered = True
        if not covered:
            uncovered.append(cone.face_vertices[0])
    return XrayReport(
        ok=not uncovered,
        uncovered_vertices=uncovered,
        marginal_vertices=sorted(set(marginal)),
    )


def _candidate_pool(p: Polytope, pool_size: int, seed: int) -> np.ndarray:
    from .sphere import min_enclosing_cap
    from .errors import NoHemisphereError

    cands = [f.outward_normal for f in p.facets]
    centroid = p.vertices.mean(axis=0)
    for v in p.vertices:
        rel = v - centroid
        n = np.linalg.norm(rel)
        if n > 1e-12:
            cands.append(rel / n)
    for cone in _vertex_cones(p):
        try:
            cands.append(min_enclosing_cap(cone.generators).center)
        except NoHemisphereError:
            pass
    rng = np.random.default_rng(seed)
    n_random = max(0, pool_size - len(cands))
    if n_random:
        x = rng.standard_normal((n_random, p.dimension))
        cands.extend(x / np.linalg.norm(x, axis=1)[:, None])
    return np.array(cands)


def _min_cover(coverage: list, n_vertices: int) -> list | None:
    """Minimum set cover over coverage bitsets; exact for small pools."""
    universe = frozenset(range(n_vertices))
    # dominance pruning: drop lines whose coverage is contained in another's
    order = sorted(range(len(coverage)), key=lambda i: -len(coverage[i]))
    kept = []
    for i in order:
        if coverage[i] and not any(coverage[i] <= coverage[j] for j in kept):
            kept.append(i)
    covered_all = frozenset().union(*[coverage[i] for i in kept]) if kept else frozenset()
    if covered_all != universe:
        return None

    def greedy() -> list:
        chosen, left = [], set(universe)
        while left:
            i = max(kept, key=lambda k: len(coverage[k] & left))
            if not coverage[i] & left:
                return []
            chosen.append(i)
            left -= coverage[i]
        return chosen

    greedy_pick = greedy()
    if not greedy_pick:
        return None
    if len(kept) > EXACT_COVER_LIMIT:
        return greedy_pick
    for k in range(1, len(greedy_pick)):
        for combo in itertools.combinations(kept, k):
            hit = set()
            for i in combo:
                hit |= coverage[i]
            if hit == universe:
                return list(combo)
    return greedy_pick


def xray_upper_bound(
    p: Polytope, candidate_pool_size: int = 200, seed: int = 0
) -> tuple[int, LineSet]:
    """Verified upper bound on the X-ray number via set cover over a line pool.

    Pool: facet normals, vertex directions, Gauss-image cap centers and
    seeded random directions. Exact minimum cover for small pruned pools,
    greedy otherwise; the returned line set is re-verified.
    """
    pool = LineSet(_candidate_pool(p, candidate_pool_size, seed))
    cones = _vertex_cones(p)
    coverage = []
    for direction in pool.directions:
        covered = frozenset(
            i for i, cone in enumerate(cones) if line_xrays_face(cone, direction)
        )
        coverage.append(covered)
    chosen = _min_cover(coverage, p.vertex_count)
    if chosen is None:
        uncoverable = sorted(
            set(range(p.vertex_count)) - set().union(*coverage)
        )
        raise DegenerateInputError(
            f"candidate pool cannot cover vertices {uncoverable}"
        )
    lines = LineSet(pool.directions[sorted(chosen)])
    report = verify_xray_lines(p, lines)
    if not report.ok:
        raise DegenerateInputError(
            f"internal: selected lines fail re-verification on {report.uncovered_vertices}"
        )
    return len(lines), lines


def is_antipodal_pair(p: Polytope, u: int, v: int) -> bool:
    """True iff vertices u, v lie on distinct parallel supporting hyperplanes.

    Linear feasibility: exists c with <c,u> >= <c,x> >= <c,v> for all
    vertices x, normalized by <c, u-v> = 1.
    """
    if u == v:
        raise ValueError("vertices must be distinct")
    verts = p.vertices
    pu, pv = verts[u], verts[v]
    rows = []
    for x in verts:
        rows.append(x - pu)  # <c, x-u> <= 0
        rows.append(pv - x)  # <c, v-x> <= 0
    a_ub = np.array(rows)
    b_ub = np.zeros(len(rows))
    a_eq = (pu - pv)[None, :]
    b_eq = np.array([1.0])
    res = linprog(
        np.zeros(p.dimension),
        A_ub=a_ub,
        b_ub=b_ub,
        A_eq=a_eq,
        b_eq=b_eq,
        bounds=[(None, None)] * p.dimension,
        method="highs",
    )
    return bool(res.success)


def on_common_face(p: Polytope, u: int, v: int) -> bool:
    """True iff u and v lie on a common proper face (equivalently, facet)."""
    if u == v:
        raise ValueError("vertices must be distinct")
    return bool(set(p.vertex_facets[u]) & set(p.vertex_facets[v]))


def wna_check(p: Polytope) -> WnaReport:
    """Weak-neighbourliness and antipodality report with vertex-count bounds.

    A polytope passing both tests has X-ray number at least its vertex
    count; a WNA polytope with more than 3*2^(d-2) vertices would be a
    counterexample to the standing conjecture and is reported loudly.
    """
    n, d = p.vertex_count, p.dimension
    weakly = all(
        on_common_face(p, u, v) for u, v in itertools.combinations(range(n), 2)
    )
    antipodal = all(
        is_antipodal_pair(p, u, v) for u, v in itertools.combinations(range(n), 2)
    )
    conjecture_bound = 3 * 2 ** (d - 2)
    lower = n if (weakly and antipodal) else None
    violated = bool(weakly and antipodal and n > conjecture_bound)
    return WnaReport(
        is_weakly_neighbourly=weakly,
        is_antipodal=antipodal,
        vertex_count=n,
        dimension=d,
        conjecture_bound=conjecture_bound,
        danzer_grunbaum_bound=2**d,
        xray_lower_bound=lower,
        conjecture_violated=violated,
    )


# ---------------------------------------------------------------------------
# corpus generators and JSON interchange


def cube_polytope(d: int = 3) -> Polytope:
    corners = np.array(list(itertools.product([-1.0, 1.0], repeat=d)))
    return Polytope(corners)


def cross_polytope(d: int = 3) -> Polytope:
    return Polytope(np.vstack([np.eye(d), -np.eye(d)]))


def simplex_polytope(d: int) -> Polytope:
    """Regular d-simplex centered at the origin."""
    basis = np.eye(d + 1)
    centered = basis - basis.mean(axis=0)
    # orthonormal basis of the hyperplane sum(x)=0
    q, _ = np.linalg.qr(np.ones((d + 1, 1)), mode="complete")
    proj = q[:, 1:]
    return Polytope(centered @ proj)


def triangle_polytope() -> Polytope:
    angles = np.deg2rad([90.0, 210.0, 330.0])
    return Polytope(np.column_stack([np.cos(angles), np.sin(angles)]))


def cube_minus_face_polytope(d: int) -> Polytope:
    """Hull of the cube's vertices with one (d-2)-face removed.

    The extremal example for the X-ray Conjecture: 3*2^(d-2) vertices.
    """
    if d < 3:
        raise ValueError("defined for d >= 3")
    corners = itertools.product([-1.0, 1.0], repeat=d)
    # drop the (d-2)-face x_1 = x_2 = 1
    keep = [c for c in corners if not (c[0] == 1.0 and c[1] == 1.0)]
    return Polytope(np.array(keep))


def load_polytope(path) -> Polytope:
    with open(path) as fh:
        payload = json.load(fh)
    verts = np.asarray(payload["vertices"], dtype=float)
    if verts.ndim != 2 or verts.shape[1] != payload["dim"]:
        raise DegenerateInputError("vertices shape does not match dim")
    return Polytope(verts)


def save_polytope(p: Polytope, path) -> None:
    with open(path, "w") as fh:
        json.dump(p.to_dict(), fh, indent=2)
        fh.write("\n")

"""Simulated annealing for antipodal cap coverings of S^(d-1).

Only the m base points are stored, so antipodal symmetry is maintained
structurally. The objective is the covering radius of the expanded
2m-point set, evaluated exactly through the hull for small instances and
by sampling otherwise; the final answer is always re-scored exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field, asdict

import numpy as np
from scipy.spatial import ConvexHull, QhullError

from .covering import AntipodalConfig, covering_radius_exact, covering_radius_sampled
from .errors import DegenerateInputError

HISTORY_CAP = 1000


@dataclass(frozen=True)
class Schedule:
    """Search schedule; defaults are recorded in every run artifact.

    Each restart runs annealing for global exploration, then a staged
    descent that pulls the points bounding the worst Voronoi vertex toward
    it, then a coordinate pattern search for the last digits.
    """

    iterations: int = 4000
    restarts: int = 16
    initial_temperature: float = float(np.deg2rad(5.0))
    cooling_factor: float = 0.98  # applied every cooling_interval proposals
    cooling_interval: int = 100
    initial_step: float = 0.5
    min_step: float = 1e-4
    pull_stages: tuple = ((4000, 0.15), (3000, 0.02), (3000, 0.004))
    pull_decay: float = 0.999
    polish_sweeps: int = 40

    def to_dict(self) -> dict:
        d = asdict(self)
        d["pull_stages"] = [list(s) for s in self.pull_stages]
        return d


@dataclass
class OptimizerRun:
    dimension: int
    pairs: int
    seed: int
    schedule: Schedule
    objective_mode: str  # "exact" | "sampled(N)"
    best: AntipodalConfig
    best_radius: float
    history: list  # (iteration, radius), non-increasing, decimated
    restart_radii: list

    def to_dict(self) -> dict:
        return {
            "dimension": self.dimension,
            "pairs": self.pairs,
            "seed": self.seed,
            "schedule": self.schedule.to_dict(),
            "objective_mode": self.objective_mode,
            "best_radius_rad": self.best_radius,
            "base_points": [[float(x) for x in row] for row in self.best.base_points],
            "history": [[int(i), float(r)] for i, r in self.history],
            "restart_radii": [float(r) for r in self.restart_radii],
        }


def _use_exact(d: int, m: int) -> bool:
    return d <= 4 or 2 * m <= 40


def _exact_radius(expanded: np.ndarray) -> float:
    """Covering radius from hull support offsets; > pi/2 when origin not interior."""
    try:
        hull = ConvexHull(expanded)
    except QhullError:
        return np.pi
    min_offset = float(np.min(-hull.equations[:, -1]))
    return float(np.arccos(np.clip(min_offset, -1.0, 1.0)))


def _sampled_radius(expanded: np.ndarray, directions: np.ndarray) -> float:
    cosdist = np.max(directions @ expanded.T, axis=1)
    return float(np.arccos(np.clip(np.min(cosdist), -1.0, 1.0)))


class _Objective:
    def __init__(self, d: int, m: int, sample_count: int, rng: np.random.Generator):
        self.exact = _use_exact(d, m)
        if self.exact:
            self.mode = "exact"
            self.directions = None
        else:
            self.mode = f"sampled({sample_count})"
            x = rng.standard_normal((sample_count, d))
            self.directions = x / np.linalg.norm(x, axis=1)[:, None]

    def __call__(self, base: np.ndarray) -> float:
        expanded = np.vstack([base, -base])
        if self.exact:
            return _exact_radius(expanded)
        return _sampled_radius(expanded, self.directions)


def _radius_and_worst(base: np.ndarray):
    """(radius, worst facet simplex, worst Voronoi vertex) of the expanded set."""
    expanded = np.vstack([base, -base])
    try:
        hull = ConvexHull(expanded)
    except QhullError:
        return np.pi, None, None
    offsets = -hull.equations[:, -1]
    k = int(np.argmin(offsets))
    normal = hull.equations[k, :-1]
    normal = normal / np.linalg.norm(normal)
    return (
        float(np.arccos(np.clip(offsets[k], -1.0, 1.0))),
        hull.simplices[k],
        normal,
    )


def _pull_descent(
    base: np.ndarray, iterations: int, step0: float, decay: float
) -> tuple[np.ndarray, float]:
    """Repeatedly pull the worst facet's points toward its Voronoi vertex.

    The covering radius is realized at the Voronoi vertex over the least
    supported hull facet; nudging exactly the points that bound it shrinks
    that facet's circumradius. Steps decay geometrically; the best iterate
    is kept (the walk itself is not monotone).
    """
    m = base.shape[0]
    cur = base.copy()
    r, simplex, vertex = _radius_and_worst(cur)
    best, best_r = cur.copy(), r
    step = step0
    for _ in range(iterations):
        if simplex is None:
            break
        nxt = cur.copy()
        for idx in simplex:
            i = idx % m
            sign = 1.0 if idx < m else -1.0
            q = nxt[i] + step * (sign * vertex - nxt[i])
            nxt[i] = q / np.linalg.norm(q)
        r, simplex, vertex = _radius_and_worst(nxt)
        cur = nxt
        if r < best_r:
            best, best_r = nxt.copy(), r
        step *= decay
    return best, best_r


def _perturb(base: np.ndarray, i: int, step: float, rng: np.random.Generator) -> np.ndarray:
    out = base.copy()
    v = out[i] + step * rng.standard_normal(base.shape[1])
    out[i] = v / np.linalg.norm(v)
    return out


def _anneal(
    base: np.ndarray,
    objective: _Objective,
    schedule: Schedule,
    rng: np.random.Generator,
) -> tuple[np.ndarray, float, list]:
    m = base.shape[0]
    current = base
    current_r = objective(current)
    best, best_r = current, current_r
    history = [(0, best_r)]
    temperature = schedule.initial_temperature
    step = schedule.initial_step
    for it in range(1, schedule.iterations + 1):
        cand = _perturb(current, rng.integers(m), step, rng)
        cand_r = objective(cand)
        delta = cand_r - current_r
        if delta <= 0 or rng.random() < np.exp(-delta / max(temperature, 1e-12)):
            current, current_r = cand, cand_r
            if current_r < best_r:
                best, best_r = current, current_r
                history.append((it, best_r))
        if it % schedule.cooling_interval == 0:
            temperature *= schedule.cooling_factor
            step = max(
                schedule.min_step,
                schedule.initial_step * temperature / schedule.initial_temperature,
            )
    return best, best_r, history


def _pattern_search(
    base: np.ndarray,
    objective,
    sweeps: int,
    initial_step: float = 0.05,
    min_step: float = 1e-7,
) -> tuple[np.ndarray, float]:
    """Coordinate-wise pattern search with shrinking steps; never worsens."""
    current = base.copy()
    current_r = objective(current)
    step = initial_step
    sweep = 0
    m, d = current.shape
    while step > min_step and sweep < sweeps:
        improved = False
        for i in range(m):
            for j in range(d):
                for sign in (1.0, -1.0):
                    cand = current.copy()
                    v = cand[i].copy()
                    v[j] += sign * step
                    cand[i] = v / np.linalg.norm(v)
                    cand_r = objective(cand)
                    if cand_r < current_r - 1e-15:
                        current, current_r = cand, cand_r
                        improved = True
                        break
        sweep += 1
        if not improved:
            step *= 0.5
    return current, current_r


def optimize_antipodal_covering(
    d: int,
    m: int,
    seed: int = 0,
    schedule: Schedule | None = None,
    sample_count: int = 20000,
) -> OptimizerRun:
    """Search for m antipodal pairs on S^(d-1) with small covering radius.

    Multi-restart annealing followed by pattern-search polish; deterministic
    for a given (d, m, seed, schedule). The reported radius is the exact
    re-scored value of the returned configuration.
    """
    if m < d:
        raise ValueError(f"need at least m=d={d} pairs for an interior origin, got {m}")
    schedule = schedule or Schedule()
    if schedule.iterations < 1:
        raise ValueError("iteration budget must be >= 1")

    master = np.random.SeedSequence(seed)
    restart_seeds = master.spawn(schedule.restarts)
    results = []
    mode = None
    for idx, ss in enumerate(restart_seeds):
        rng = np.random.default_rng(ss)
        objective = _Objective(d, m, sample_count, rng)
        mode = objective.mode
        x = rng.standard_normal((m, d))
        base = x / np.linalg.norm(x, axis=1)[:, None]
        best, best_r, history = _anneal(base, objective, schedule, rng)
        if objective.exact:
            for iters, step0 in schedule.pull_stages:
                best, best_r = _pull_descent(best, iters, step0, schedule.pull_decay)
                history.append((history[-1][0] + iters, best_r))
        best, best_r = _pattern_search(best, objective, schedule.polish_sweeps)
        history.append((history[-1][0] + 1, best_r))
        results.append((best_r, idx, best, history))

    # deterministic merge: best radius, ties broken by restart index
    results.sort(key=lambda t: (t[0], t[1]))
    _, _, best_base, history = results[0]

    config = AntipodalConfig(dimension=d, base_points=best_base, provenance="optimized")
    try:
        exact = covering_radius_exact(config)
        final_r = exact.radius
    except DegenerateInputError:
        final_r = covering_radius_sampled(config, 1_000_000, seed=seed).radius
    config.covering_radius = final_r

    if len(history) > HISTORY_CAP:
        stride = int(np.ceil(len(history) / HISTORY_CAP))
        history = history[::stride] + [history[-1]]
    return OptimizerRun(
        dimension=d,
        pairs=m,
        seed=seed,
        schedule=schedule,
        objective_mode=mode,
        best=config,
        best_radius=final_r,
        history=history,
        restart_radii=[t[0] for t in results],
    )


def polish(config: AntipodalConfig, seed: int = 0) -> AntipodalConfig:
    """Local pattern-search refinement of an existing configuration."""
    rng = np.random.default_rng(seed)
    objective = _Objective(config.dimension, config.pairs, 20000, rng)
    base = config.base_points
    if objective.exact:
        for iters, step0 in ((2000, 0.02), (2000, 0.004), (1000, 0.001)):
            base, _ = _pull_descent(base, iters, step0, 0.999)
    base, _ = _pattern_search(base, objective, sweeps=200)
    out = AntipodalConfig(
        dimension=config.dimension, base_points=base, provenance="optimized"
    )
    try:
        out.covering_radius = covering_radius_exact(out).radius
    except DegenerateInputError:
        pass
    return out

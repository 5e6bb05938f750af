"""Covering certificates: from antipodal coverings to X-ray and illumination bounds.

A certificate for a body class asserts X(K) <= m (and hence I(K) <= 2m)
whenever the class's face-Gauss-image radius bound r plus the covering
radius R of a 2m-point antipodal configuration stays within pi/2.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, asdict

import numpy as np

from . import __version__
from .covering import AntipodalConfig, covering_radius_exact, covering_radius_sampled
from .errors import DegenerateInputError, DimensionMismatchError, InvalidConfigError

TIGHT_TOL = 1e-9
VALID_TOL = 1e-9

BODY_KINDS = ("almost_smooth", "constant_width")

TIGHT_NOTE = (
    "tight certificate: validity relies on a generic rotation of the great "
    "spheres avoiding finitely many prohibited positions"
)

CORRIGENDUM_NOTE = (
    "for constant-width bodies in d=5,6 the illumination count is sometimes "
    "quoted as 2^(d-1) alongside X(W) <= 2^(d-1); the general relation is "
    "I <= 2X, so this certificate reports X <= m and I <= 2m"
)


@dataclass(frozen=True)
class BodyClass:
    kind: str  # "almost_smooth" | "constant_width"
    dimension: int

    def __post_init__(self):
        if self.kind not in BODY_KINDS:
            raise ValueError(f"unknown body class kind: {self.kind!r}")
        if self.dimension < 3:
            raise ValueError("body classes are defined for dimension >= 3")

    def gauss_image_radius(self) -> float:
        if self.kind == "almost_smooth":
            return jung_radius(self.dimension)
        return constant_width_radius(self.dimension)


@dataclass
class CoveringCertificate:
    body_kind: str
    dimension: int
    m: int
    covering_radius: float  # R
    class_radius: float  # r
    threshold: float  # pi/2
    margin: float  # pi/2 - (r + R)
    tight: bool
    valid: bool
    conclusion_xray: int  # X <= m
    conclusion_illumination: int  # I <= 2m
    radius_method: str
    sampling_penalty: float
    config_reference: str
    config_hash: str
    toolkit_version: str
    notes: list

    def to_dict(self) -> dict:
        return asdict(self)


def jung_radius(d: int) -> float:
    """Spherical Jung bound arccos(sqrt((d-1)/d)) for almost smooth bodies."""
    if d < 3:
        raise ValueError("defined for d >= 3")
    return math.acos(math.sqrt((d - 1.0) / d))


def constant_width_radius(d: int) -> float:
    """Circumradius arccos(sqrt((d+1)/(2d))) of the regular spherical
    (d-1)-simplex of edge pi/3, the Gauss-image bound for constant width."""
    if d < 3:
        raise ValueError("defined for d >= 3")
    return math.acos(math.sqrt((d + 1.0) / (2.0 * d)))


def schramm_bound(d: int) -> float:
    """Schramm's illumination bound 5 d sqrt(d) (4 + ln d) (3/2)^(d/2).

    Comparison column only; always far above the constructive bounds here.
    """
    if d < 3:
        raise ValueError("defined for d >= 3")
    return 5.0 * d * math.sqrt(d) * (4.0 + math.log(d)) * (1.5) ** (d / 2.0)


def config_hash(config: AntipodalConfig) -> str:
    raw = np.ascontiguousarray(config.base_points, dtype=float).tobytes()
    return hashlib.sha256(raw).hexdigest()


# sampling with n points on S^(d-1) cannot miss a cap of radius much larger
# than the sample dispersion; this heuristic penalty keeps sampled
# certificates conservative without being uselessly loose
def _sampling_penalty(sample_count: int, d: int) -> float:
    return float(np.pi * sample_count ** (-1.0 / (d - 1)))


def certify(
    body_class: BodyClass,
    config: AntipodalConfig,
    config_reference: str = "",
    sample_count: int = 1_000_000,
    seed: int = 0,
) -> CoveringCertificate:
    """Emit an X-ray/illumination certificate for a body class from a covering.

    Uses the exact covering radius when the configuration spans and has the
    origin interior; otherwise falls back to sampling and penalizes the
    margin by the sampling bound so the certificate stays conservative.
    """
    if config.dimension != body_class.dimension:
        raise DimensionMismatchError(
            f"config dimension {config.dimension} != class dimension {body_class.dimension}"
        )
    from .covering import verify_antipodal

    if not verify_antipodal(config.expanded()):
        raise InvalidConfigError("configuration failed the antipodality check")

    penalty = 0.0
    try:
        result = covering_radius_exact(config)
    except DegenerateInputError:
        result = covering_radius_sampled(config, sample_count, seed=seed)
        penalty = _sampling_penalty(sample_count, config.dimension)

    r = body_class.gauss_image_radius()
    big_r = result.radius + penalty
    margin = math.pi / 2.0 - (r + big_r)
    tight = abs(margin) <= TIGHT_TOL
    valid = margin >= -VALID_TOL
    notes = []
    if tight:
        notes.append(TIGHT_NOTE)
    if body_class.kind == "constant_width" and body_class.dimension in (5, 6):
        notes.append(CORRIGENDUM_NOTE)

    return CoveringCertificate(
        body_kind=body_class.kind,
        dimension=body_class.dimension,
        m=config.pairs,
        covering_radius=result.radius,
        class_radius=r,
        threshold=math.pi / 2.0,
        margin=margin,
        tight=tight,
        valid=valid,
        conclusion_xray=config.pairs,
        conclusion_illumination=2 * config.pairs,
        radius_method=result.method,
        sampling_penalty=penalty,
        config_reference=config_reference,
        config_hash=config_hash(config),
        toolkit_version=__version__,
        notes=notes,
    )

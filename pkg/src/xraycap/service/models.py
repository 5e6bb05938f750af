"""Pydantic request/response models for the HTTP service.

These mirror the JSON interchange formats: configs store radians and full
precision coordinates; responses embed a run manifest.
"""

from __future__ import annotations

from pydantic import BaseModel, Field


class ConfigPayload(BaseModel):
    dim: int
    antipodal: bool = True
    base_points: list[list[float]]
    covering_radius_rad: float | None = None
    provenance: str = "loaded"


class PolytopePayload(BaseModel):
    dim: int
    vertices: list[list[float]]


class LineSetPayload(BaseModel):
    dim: int
    directions: list[list[float]]


class Manifest(BaseModel):
    command: str
    arguments: dict
    seed: int | None = None
    tolerance_overrides: dict = Field(default_factory=dict)
    toolkit_version: str
    input_hashes: dict = Field(default_factory=dict)
    output_paths: list = Field(default_factory=list)


class ConstructRequest(BaseModel):
    name: str
    dimension: int | None = None  # cross-polytope
    sides: int | None = None  # polygon
    left: ConfigPayload | None = None  # join
    right: ConfigPayload | None = None


class ConstructResponse(BaseModel):
    config: ConfigPayload
    covering_radius_deg: float | None = None
    manifest: Manifest


class RadiusRequest(BaseModel):
    config: ConfigPayload
    method: str = "exact"  # "exact" | "sampled"
    samples: int = 1_000_000
    seed: int = 0


class RadiusResponse(BaseModel):
    radius_rad: float
    radius_deg: float
    witness_direction: list[float]
    method: str
    sample_count: int | None = None
    manifest: Manifest


class CertifyRequest(BaseModel):
    kind: str  # "almost_smooth" | "constant_width"
    dimension: int
    config: ConfigPayload
    config_reference: str = ""
    samples: int = 1_000_000
    seed: int = 0


class CertifyResponse(BaseModel):
    certificate: dict
    manifest: Manifest


class ScheduleOverrides(BaseModel):
    iterations: int | None = None
    restarts: int | None = None
    polish_sweeps: int | None = None


class OptimizeRequest(BaseModel):
    dimension: int
    pairs: int
    seed: int = 0
    schedule: ScheduleOverrides = Field(default_factory=ScheduleOverrides)


class OptimizeResponse(BaseModel):
    run: dict
    best_radius_deg: float
    config: ConfigPayload
    manifest: Manifest


class PolytopeCheckRequest(BaseModel):
    polytope: PolytopePayload


class PolytopeCheckResponse(BaseModel):
    report: dict
    manifest: Manifest


class XrayVerifyRequest(BaseModel):
    polytope: PolytopePayload
    lines: LineSetPayload


class XrayVerifyResponse(BaseModel):
    ok: bool
    uncovered_vertices: list[int]
    marginal_vertices: list[int]
    manifest: Manifest


class XraySearchRequest(BaseModel):
    polytope: PolytopePayload
    candidate_pool_size: int = 200
    seed: int = 0


class XraySearchResponse(BaseModel):
    count: int
    lines: LineSetPayload
    manifest: Manifest


class ThresholdRow(BaseModel):
    dimension: int
    jung_radius_rad: float
    jung_radius_deg: float
    constant_width_radius_rad: float
    constant_width_radius_deg: float
    constant_width_threshold_rad: float
    constant_width_threshold_deg: float
    schramm_bound: float


class ThresholdsResponse(BaseModel):
    rows: list[ThresholdRow]
    manifest: Manifest

"""FastAPI service wrapping the core toolkit.

Each endpoint has a plain handler function taking/returning pydantic
models; the CLI calls these handlers in process, the HTTP routes add only
error mapping. Deterministic given the request (seeds are explicit).
"""

from __future__ import annotations

import math

import numpy as np
from fastapi import FastAPI, HTTPException

from .. import __version__
from ..certify import (
    BodyClass,
    certify,
    constant_width_radius,
    jung_radius,
    schramm_bound,
)
from ..constructions import (
    config_from_payload,
    cross_polytope_config,
    hexagon_pair_config,
    join_16gon_s2_config,
    join_s2_s2_config,
    optimized_s2_config,
    orthogonal_join,
    regular_polygon_config,
)
from ..covering import AntipodalConfig, covering_radius_exact, covering_radius_sampled
from ..errors import XraycapError
from ..manifest import build_manifest
from ..optimize import Schedule, optimize_antipodal_covering
from ..polytope import LineSet, Polytope, verify_xray_lines, wna_check, xray_upper_bound
from . import models as m

CONSTRUCTION_NAMES = (
    "cross-polytope",
    "polygon",
    "hexagon-pair",
    "s2-16pt",
    "s2-32pt",
    "join-16gon-s2",
    "join-s2-s2",
    "join",
)


def config_to_payload(cfg: AntipodalConfig) -> m.ConfigPayload:
    return m.ConfigPayload(
        dim=cfg.dimension,
        antipodal=True,
        base_points=[[float(x) for x in row] for row in cfg.base_points],
        covering_radius_rad=cfg.covering_radius,
        provenance=cfg.provenance,
    )


def config_from_model(payload: m.ConfigPayload) -> AntipodalConfig:
    cfg, _ = config_from_payload(payload.model_dump())
    return cfg


def _manifest(command: str, arguments: dict, seed=None, inputs=None) -> m.Manifest:
    return m.Manifest(**build_manifest(command, arguments, seed=seed, input_payloads=inputs))


def handle_construct(req: m.ConstructRequest) -> m.ConstructResponse:
    name = req.name
    if name == "cross-polytope":
        if req.dimension is None:
            raise ValueError("cross-polytope needs a dimension")
        cfg = cross_polytope_config(req.dimension)
    elif name == "polygon":
        if req.sides is None:
            raise ValueError("polygon needs a side count")
        cfg = regular_polygon_config(req.sides)
    elif name == "hexagon-pair":
        cfg = hexagon_pair_config()
    elif name == "s2-16pt":
        cfg = optimized_s2_config(8)
    elif name == "s2-32pt":
        cfg = optimized_s2_config(16)
    elif name == "join-16gon-s2":
        cfg = join_16gon_s2_config()
    elif name == "join-s2-s2":
        cfg = join_s2_s2_config()
    elif name == "join":
        if req.left is None or req.right is None:
            raise ValueError("join needs both factor configs")
        cfg = orthogonal_join(config_from_model(req.left), config_from_model(req.right))
    else:
        raise ValueError(f"unknown construction {name!r}; known: {CONSTRUCTION_NAMES}")
    args = req.model_dump(exclude_none=True, exclude={"left", "right"})
    return m.ConstructResponse(
        config=config_to_payload(cfg),
        covering_radius_deg=(
            math.degrees(cfg.covering_radius) if cfg.covering_radius is not None else None
        ),
        manifest=_manifest("construct", args),
    )


def handle_radius(req: m.RadiusRequest) -> m.RadiusResponse:
    cfg = config_from_model(req.config)
    if req.method == "exact":
        result = covering_radius_exact(cfg)
    elif req.method == "sampled":
        result = covering_radius_sampled(cfg, req.samples, seed=req.seed)
    else:
        raise ValueError("method must be 'exact' or 'sampled'")
    return m.RadiusResponse(
        radius_rad=result.radius,
        radius_deg=math.degrees(result.radius),
        witness_direction=[float(x) for x in result.witness_direction],
        method=result.method,
        sample_count=result.sample_count,
        manifest=_manifest(
            "radius",
            {"method": req.method, "samples": req.samples},
            seed=req.seed,
            inputs={"config": req.config.model_dump()},
        ),
    )


def handle_certify(req: m.CertifyRequest) -> m.CertifyResponse:
    cfg = config_from_model(req.config)
    cert = certify(
        BodyClass(req.kind, req.dimension),
        cfg,
        config_reference=req.config_reference,
        sample_count=req.samples,
        seed=req.seed,
    )
    return m.CertifyResponse(
        certificate=cert.to_dict(),
        manifest=_manifest(
            "certify",
            {"kind": req.kind, "dimension": req.dimension},
            seed=req.seed,
            inputs={"config": req.config.model_dump()},
        ),
    )


def handle_optimize(req: m.OptimizeRequest) -> m.OptimizeResponse:
    overrides = {k: v for k, v in req.schedule.model_dump().items() if v is not None}
    schedule = Schedule(**overrides)
    run = optimize_antipodal_covering(req.dimension, req.pairs, seed=req.seed, schedule=schedule)
    return m.OptimizeResponse(
        run=run.to_dict(),
        best_radius_deg=math.degrees(run.best_radius),
        config=config_to_payload(run.best),
        manifest=_manifest(
            "optimize",
            {"dimension": req.dimension, "pairs": req.pairs, "schedule": schedule.to_dict()},
            seed=req.seed,
        ),
    )


def handle_polytope_check(req: m.PolytopeCheckRequest) -> m.PolytopeCheckResponse:
    p = Polytope(np.asarray(req.polytope.vertices, dtype=float))
    report = wna_check(p)
    return m.PolytopeCheckResponse(
        report=report.to_dict(),
        manifest=_manifest(
            "polytope-check", {}, inputs={"polytope": req.polytope.model_dump()}
        ),
    )


def handle_xray_verify(req: m.XrayVerifyRequest) -> m.XrayVerifyResponse:
    p = Polytope(np.asarray(req.polytope.vertices, dtype=float))
    lines = LineSet(np.asarray(req.lines.directions, dtype=float))
    report = verify_xray_lines(p, lines)
    return m.XrayVerifyResponse(
        ok=report.ok,
        uncovered_vertices=report.uncovered_vertices,
        marginal_vertices=report.marginal_vertices,
        manifest=_manifest(
            "polytope-xray-verify",
            {},
            inputs={
                "polytope": req.polytope.model_dump(),
                "lines": req.lines.model_dump(),
            },
        ),
    )


def handle_xray_search(req: m.XraySearchRequest) -> m.XraySearchResponse:
    p = Polytope(np.asarray(req.polytope.vertices, dtype=float))
    count, lines = xray_upper_bound(p, req.candidate_pool_size, seed=req.seed)
    return m.XraySearchResponse(
        count=count,
        lines=m.LineSetPayload(
            dim=p.dimension,
            directions=[[float(x) for x in row] for row in lines.directions],
        ),
        manifest=_manifest(
            "polytope-xray-search",
            {"candidate_pool_size": req.candidate_pool_size},
            seed=req.seed,
            inputs={"polytope": req.polytope.model_dump()},
        ),
    )


def handle_thresholds(d_min: int, d_max: int) -> m.ThresholdsResponse:
    if d_min < 3 or d_max < d_min:
        raise ValueError("need 3 <= d_min <= d_max")
    rows = []
    for d in range(d_min, d_max + 1):
        jr = jung_radius(d)
        cw = constant_width_radius(d)
        th = math.pi / 2 - cw
        rows.append(
            m.ThresholdRow(
                dimension=d,
                jung_radius_rad=jr,
                jung_radius_deg=math.degrees(jr),
                constant_width_radius_rad=cw,
                constant_width_radius_deg=math.degrees(cw),
                constant_width_threshold_rad=th,
                constant_width_threshold_deg=math.degrees(th),
                schramm_bound=schramm_bound(d),
            )
        )
    return m.ThresholdsResponse(
        rows=rows, manifest=_manifest("thresholds", {"d_min": d_min, "d_max": d_max})
    )


def create_app() -> FastAPI:
    app = FastAPI(title="xraycap", version=__version__)

    def wrap(handler, req):
        try:
            return handler(req)
        except (XraycapError, ValueError) as exc:
            raise HTTPException(status_code=422, detail=str(exc))

    @app.post("/construct", response_model=m.ConstructResponse)
    def construct(req: m.ConstructRequest):
        return wrap(handle_construct, req)

    @app.post("/radius", response_model=m.RadiusResponse)
    def radius(req: m.RadiusRequest):
        return wrap(handle_radius, req)

    @app.post("/certify", response_model=m.CertifyResponse)
    def certify_endpoint(req: m.CertifyRequest):
        return wrap(handle_certify, req)

    @app.post("/optimize", response_model=m.OptimizeResponse)
    def optimize(req: m.OptimizeRequest):
        return wrap(handle_optimize, req)

    @app.post("/polytope/check", response_model=m.PolytopeCheckResponse)
    def polytope_check(req: m.PolytopeCheckRequest):
        return wrap(handle_polytope_check, req)

    @app.post("/polytope/xray-verify", response_model=m.XrayVerifyResponse)
    def xray_verify(req: m.XrayVerifyRequest):
        return wrap(handle_xray_verify, req)

    @app.post("/polytope/xray-search", response_model=m.XraySearchResponse)
    def xray_search(req: m.XraySearchRequest):
        return wrap(handle_xray_search, req)

    @app.get("/thresholds", response_model=m.ThresholdsResponse)
    def thresholds(d_min: int, d_max: int):
        try:
            return handle_thresholds(d_min, d_max)
        except (XraycapError, ValueError) as exc:
            raise HTTPException(status_code=422, detail=str(exc))

    @app.get("/health")
    def health():
        return {"status": "ok", "version": __version__}

    return app


app = create_app()

"""Command-line client for the toolkit.

The CLI is a thin client over the service layer: it builds the same
pydantic requests the HTTP endpoints take and either calls the handlers
in process (default) or POSTs them to a running server (``--server``).
JSON artifacts store radians only; the console prints degrees alongside.

Exit codes: 0 success, 1 usage/IO error, 2 certificate invalid,
3 verification failed.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from pydantic import BaseModel

from .errors import XraycapError
from .service import models as m
from .service.app import (
    CONSTRUCTION_NAMES,
    handle_certify,
    handle_construct,
    handle_optimize,
    handle_polytope_check,
    handle_radius,
    handle_thresholds,
    handle_xray_search,
    handle_xray_verify,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_CERT_INVALID = 2
EXIT_VERIFY_FAILED = 3


class Client:
    """Dispatches requests in process or to a remote server."""

    def __init__(self, server: str | None = None):
        self.server = server.rstrip("/") if server else None

    def post(self, path: str, handler, request: BaseModel, response_model):
        if self.server is None:
            return handler(request)
        import httpx

        resp = httpx.post(
            f"{self.server}{path}", json=request.model_dump(), timeout=3600.0
        )
        if resp.status_code != 200:
            raise XraycapError(f"server returned {resp.status_code}: {resp.text}")
        return response_model.model_validate(resp.json())

    def thresholds(self, d_min: int, d_max: int) -> m.ThresholdsResponse:
        if self.server is None:
            return handle_thresholds(d_min, d_max)
        import httpx

        resp = httpx.get(
            f"{self.server}/thresholds", params={"d_min": d_min, "d_max": d_max}
        )
        if resp.status_code != 200:
            raise XraycapError(f"server returned {resp.status_code}: {resp.text}")
        return m.ThresholdsResponse.model_validate(resp.json())


def _read_json(path) -> dict:
    with open(path) as fh:
        return json.load(fh)


def _write_artifact(payload: dict, out: str | None) -> None:
    if out:
        payload.setdefault("manifest", {})["output_paths"] = [out]
        with open(out, "w") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")


def _fmt_angle(rad: float) -> str:
    return f"{math.degrees(rad):.4f} deg ({rad:.6f} rad)"


def cmd_construct(args, client: Client) -> int:
    req = m.ConstructRequest(
        name=args.name,
        dimension=args.dimension,
        sides=args.sides,
        left=m.ConfigPayload(**_read_json(args.left)) if args.left else None,
        right=m.ConfigPayload(**_read_json(args.right)) if args.right else None,
    )
    resp = client.post("/construct", handle_construct, req, m.ConstructResponse)
    cfg = resp.config
    print(f"construction: {args.name}")
    print(f"dimension: {cfg.dim}, antipodal pairs: {len(cfg.base_points)}")
    if cfg.covering_radius_rad is not None:
        print(f"covering radius: {_fmt_angle(cfg.covering_radius_rad)}")
    payload = resp.model_dump()
    if args.out:
        artifact = cfg.model_dump()
        artifact["manifest"] = payload["manifest"]
        _write_artifact(artifact, args.out)
        print(f"wrote {args.out}")
    return EXIT_OK


def cmd_radius(args, client: Client) -> int:
    method = "sampled" if args.samples else "exact"
    req = m.RadiusRequest(
        config=m.ConfigPayload(**_read_json(args.config)),
        method=method,
        samples=args.samples or 1_000_000,
        seed=args.seed,
    )
    resp = client.post("/radius", handle_radius, req, m.RadiusResponse)
    print(f"covering radius ({resp.method}): {_fmt_angle(resp.radius_rad)}")
    _write_artifact(resp.model_dump(), args.out)
    return EXIT_OK


def cmd_certify(args, client: Client) -> int:
    req = m.CertifyRequest(
        kind=args.body_class,
        dimension=args.dimension,
        config=m.ConfigPayload(**_read_json(args.config)),
        config_reference=args.config,
        samples=args.samples,
        seed=args.seed,
    )
    resp = client.post("/certify", handle_certify, req, m.CertifyResponse)
    cert = resp.certificate
    status = "VALID" if cert["valid"] else "INVALID"
    tight = " (tight)" if cert["tight"] else ""
    print(f"certificate {status}{tight}: {cert['body_kind']} in dimension {cert['dimension']}")
    print(f"covering radius R: {_fmt_angle(cert['covering_radius'])}")
    print(f"class radius r:    {_fmt_angle(cert['class_radius'])}")
    print(f"margin pi/2-(r+R): {_fmt_angle(cert['margin'])}")
    print(f"conclusion: X <= {cert['conclusion_xray']}, I <= {cert['conclusion_illumination']}")
    for note in cert["notes"]:
        print(f"note: {note}")
    _write_artifact(resp.model_dump(), args.out)
    return EXIT_OK if cert["valid"] else EXIT_CERT_INVALID


def cmd_optimize(args, client: Client) -> int:
    overrides = m.ScheduleOverrides(iterations=args.budget, restarts=args.restarts)
    req = m.OptimizeRequest(
        dimension=args.dimension, pairs=args.pairs, seed=args.seed, schedule=overrides
    )
    resp = client.post("/optimize", handle_optimize, req, m.OptimizeResponse)
    print(f"best covering radius: {_fmt_angle(resp.run['best_radius_rad'])}")
    print(f"pairs: {args.pairs}, dimension: {args.dimension}, seed: {args.seed}")
    payload = resp.model_dump()
    _write_artifact(payload, args.out)
    if args.plot_data:
        with open(args.plot_data, "w") as fh:
            fh.write("iteration,radius_rad\n")
            for it, rad in resp.run["history"]:
                fh.write(f"{it},{rad:.17g}\n")
        print(f"wrote {args.plot_data}")
    return EXIT_OK


def cmd_polytope(args, client: Client) -> int:
    poly = m.PolytopePayload(**_read_json(args.path))
    if args.action == "check":
        resp = client.post(
            "/polytope/check",
            handle_polytope_check,
            m.PolytopeCheckRequest(polytope=poly),
            m.PolytopeCheckResponse,
        )
        rep = resp.report
        print(f"vertices: {rep['vertex_count']} (dimension {rep['dimension']})")
        print(f"weakly neighbourly: {rep['is_weakly_neighbourly']}")
        print(f"antipodal: {rep['is_antipodal']}")
        print(f"vertex-count bounds: conjecture 3*2^(d-2) = {rep['conjecture_bound']}, "
              f"Danzer-Grunbaum 2^d = {rep['danzer_grunbaum_bound']}")
        if rep["xray_lower_bound"] is not None:
            print(f"X-ray lower bound: {rep['xray_lower_bound']}")
        if rep["conjecture_violated"]:
            print("*** CONJECTURE VIOLATION: weakly neighbourly antipodal polytope "
                  f"with {rep['vertex_count']} > {rep['conjecture_bound']} vertices ***")
        _write_artifact(resp.model_dump(), args.out)
        return EXIT_OK
    if args.action == "xray-verify":
        if not args.lines:
            raise XraycapError("xray-verify needs --lines")
        resp = client.post(
            "/polytope/xray-verify",
            handle_xray_verify,
            m.XrayVerifyRequest(
                polytope=poly, lines=m.LineSetPayload(**_read_json(args.lines))
            ),
            m.XrayVerifyResponse,
        )
        print(f"verification: {'PASS' if resp.ok else 'FAIL'}")
        if resp.uncovered_vertices:
            print(f"uncovered vertices: {resp.uncovered_vertices}")
        if resp.marginal_vertices:
            print(f"marginal vertices (perturb the lines): {resp.marginal_vertices}")
        _write_artifact(resp.model_dump(), args.out)
        return EXIT_OK if resp.ok else EXIT_VERIFY_FAILED
    # xray-search
    resp = client.post(
        "/polytope/xray-search",
        handle_xray_search,
        m.XraySearchRequest(polytope=poly, seed=args.seed),
        m.XraySearchResponse,
    )
    print(f"verified X-ray upper bound: {resp.count} lines")
    _write_artifact(resp.model_dump(), args.out)
    if args.lines_out:
        with open(args.lines_out, "w") as fh:
            json.dump(resp.lines.model_dump(), fh, indent=2)
            fh.write("\n")
        print(f"wrote {args.lines_out}")
    return EXIT_OK


def cmd_thresholds(args, client: Client) -> int:
    d_max = args.d_max if args.d_max is not None else args.d_min
    resp = client.thresholds(args.d_min, d_max)
    header = f"{'d':>3} {'jung(deg)':>12} {'cw-radius(deg)':>15} {'cw-threshold(deg)':>18} {'schramm':>12}"
    print(header)
    for row in resp.rows:
        print(
            f"{row.dimension:>3} {row.jung_radius_deg:>12.4f} "
            f"{row.constant_width_radius_deg:>15.4f} "
            f"{row.constant_width_threshold_deg:>18.4f} {row.schramm_bound:>12.1f}"
        )
    _write_artifact(resp.model_dump(), args.out)
    return EXIT_OK


def cmd_serve(args, client: Client) -> int:
    import uvicorn

    from .service import app

    uvicorn.run(app, host=args.host, port=args.port)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="xraycap",
        description="Antipodal spherical cap coverings and X-ray certificates",
    )
    parser.add_argument("--server", help="base URL of a running service; default in-process")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build a named antipodal configuration")
    p.add_argument("name", choices=CONSTRUCTION_NAMES)
    p.add_argument("--dimension", "-d", type=int, help="dimension for cross-polytope")
    p.add_argument("--sides", "-k", type=int, help="side count for polygon")
    p.add_argument("--left", help="left factor config JSON (join)")
    p.add_argument("--right", help="right factor config JSON (join)")
    p.add_argument("--out", help="write config JSON here")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("radius", help="covering radius of a config file")
    p.add_argument("config")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--exact", action="store_true", help="exact radius (default)")
    group.add_argument("--samples", type=int, help="Monte-Carlo with this many samples")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_radius)

    p = sub.add_parser("certify", help="emit an X-ray/illumination certificate")
    p.add_argument("body_class", choices=["almost_smooth", "constant_width"])
    p.add_argument("dimension", type=int)
    p.add_argument("--config", required=True)
    p.add_argument("--samples", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("optimize", help="search for low-covering-radius antipodal sets")
    p.add_argument("dimension", type=int)
    p.add_argument("pairs", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, help="annealing iterations per restart")
    p.add_argument("--restarts", type=int)
    p.add_argument("--out")
    p.add_argument("--plot-data", help="write CSV history (iteration,radius_rad)")
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("polytope", help="polytope-side checks and X-ray search")
    p.add_argument("action", choices=["check", "xray-verify", "xray-search"])
    p.add_argument("path", help="polytope JSON file")
    p.add_argument("--lines", help="line set JSON (for xray-verify)")
    p.add_argument("--lines-out", help="write the found line set here (xray-search)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_polytope)

    p = sub.add_parser("thresholds", help="jung / constant-width / Schramm table")
    p.add_argument("d_min", type=int)
    p.add_argument("d_max", type=int, nargs="?")
    p.add_argument("--out")
    p.set_defaults(func=cmd_thresholds)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    client = Client(args.server)
    try:
        return args.func(args, client)
    except (XraycapError, ValueError) as exc:
        print(f"xraycap: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"xraycap: io-error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

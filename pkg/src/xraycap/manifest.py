"""Run manifests embedded in every JSON artifact for reproducibility."""

from __future__ import annotations

import hashlib
import json

from . import __version__


def _canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def hash_payload(obj) -> str:
    return hashlib.sha256(_canonical(obj).encode()).hexdigest()


def build_manifest(
    command: str,
    arguments: dict,
    seed: int | None = None,
    tolerance_overrides: dict | None = None,
    input_payloads: dict | None = None,
    output_paths: list | None = None,
) -> dict:
    """Manifest dict: re-running the same manifest reproduces the artifact."""
    return {
        "command": command,
        "arguments": arguments,
        "seed": seed,
        "tolerance_overrides": tolerance_overrides or {},
        "toolkit_version": __version__,
        "input_hashes": {
            name: hash_payload(payload)
            for name, payload in (input_payloads or {}).items()
        },
        "output_paths": output_paths or [],
    }

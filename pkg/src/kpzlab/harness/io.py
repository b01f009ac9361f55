"""Deterministic artifact output: CSV data files with JSON sidecar manifests.

Single-worker runs (and, because all randomness is tied to per-seed
substreams merged in index order, multi-worker runs as well) write
byte-identical files for identical configurations.  Nothing
non-deterministic (timestamps, hostnames, memory addresses) is written.
"""

from __future__ import annotations

import json
import subprocess
from pathlib import Path

import numpy as np

from kpzlab import __version__
from kpzlab.errors import InvalidConfigError

__all__ = ["format_value", "write_csv", "write_manifest", "read_config"]


def format_value(v) -> str:
    """Shortest round-trip decimal representation (deterministic)."""
    if isinstance(v, (bool, np.bool_)):
        return "1" if v else "0"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    if isinstance(v, complex):
        return f"{v.real!r}{'+' if v.imag >= 0 else ''}{v.imag!r}j"
    return str(v)


def write_csv(path, header, rows) -> Path:
    """Write rows of scalars as CSV with a header line; returns the path."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [",".join(header)]
    for row in rows:
        if len(row) != len(header):
            raise InvalidConfigError(
                f"row width {len(row)} does not match header width {len(header)}")
        lines.append(",".join(format_value(v) for v in row))
    path.write_text("\n".join(lines) + "\n")
    return path


def _git_describe() -> str:
    try:
        out = subprocess.run(
            ["git", "describe", "--always", "--dirty"],
            capture_output=True, text=True, timeout=10,
            cwd=Path(__file__).resolve().parent,
        )
        if out.returncode == 0:
            return out.stdout.strip()
    except OSError:
        pass
    return "unknown"


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (bool, int, float, str)) or obj is None:
        return obj
    return str(obj)


def write_manifest(path, payload: dict) -> Path:
    """Write a JSON sidecar describing a run (config, seeds, versions)."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    body = {"kpzlab_version": __version__, "git": _git_describe()}
    body.update(_jsonable(payload))
    path.write_text(json.dumps(body, indent=2, sort_keys=True) + "\n")
    return path


def read_config(path) -> dict:
    """Load a JSON config file; must contain a single object."""
    path = Path(path)
    if not path.exists():
        raise InvalidConfigError(f"config file not found: {path}")
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise InvalidConfigError(f"config file {path} is not valid JSON: {exc}")
    if not isinstance(data, dict):
        raise InvalidConfigError(f"config file {path} must hold a JSON object")
    return data

"""Config file resolution and deterministic JSON serialization.

Named configs ship inside the package under ``configs/``. Setting the
``KICKOUT_CONFIG_DIR`` environment variable points the loader at a directory
whose files override the packaged ones (matched by file name).
"""

from __future__ import annotations

import json
import os
from importlib import resources
from pathlib import Path

from .errors import ConfigError

CONFIG_ENV_VAR = "KICKOUT_CONFIG_DIR"
CSV_SCHEMA_LINE = "# schema=1"


def resolve_config(name: str) -> str:
    """Return the JSON text for a named config file.

    ``name`` may be a bare packaged name like ``court_nba.json`` or a
    filesystem path. The env override directory is consulted first.
    """
    p = Path(name)
    if p.suffix == "" and "/" not in name:
        p = Path(name + ".json")
    if p.exists():
        return p.read_text()
    override = os.environ.get(CONFIG_ENV_VAR)
    if override:
        candidate = Path(override) / p.name
        if candidate.exists():
            return candidate.read_text()
    pkg_files = resources.files("kickout") / "configs" / p.name
    if pkg_files.is_file():
        return pkg_files.read_text()
    raise ConfigError(f"config not found: {name!r} (no file, no {CONFIG_ENV_VAR} entry, not packaged)")


def load_config(name: str) -> dict:
    try:
        doc = json.loads(resolve_config(name))
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {name!r} is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ConfigError(f"config {name!r} must be a JSON object")
    if "schema_version" not in doc:
        raise ConfigError(f"config {name!r} is missing the required schema_version field")
    return doc


def dumps_canonical(obj) -> str:
    """Serialize to JSON deterministically: sorted keys, fixed separators, trailing newline.

    Floats use Python repr (shortest round-trip), so equal inputs always give
    byte-identical output.
    """
    return json.dumps(obj, sort_keys=True, separators=(",", ": "), indent=2) + "\n"

"""Content-addressed JSON result cache.

Entries are keyed by a hash of (toolkit version, command, degree, pool
fingerprint, constraints); each lives in its own file so cached artifacts
stay diff-able.  Entries written by other toolkit versions are ignored
because the version participates in the key material.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Optional

from .certificates import canonical_json, fingerprint


class ResultCache:
    def __init__(self, root: str | Path, version: str):
        self.root = Path(root)
        self.version = version
        self.root.mkdir(parents=True, exist_ok=True)

    def _path(self, descriptor: dict) -> Path:
        key = fingerprint({"version": self.version, **descriptor})
        return self.root / f"{key}.json"

    def get(self, descriptor: dict) -> Optional[dict]:
        path = self._path(descriptor)
        if not path.exists():
            return None
        try:
            return json.loads(path.read_text())
        except (OSError, json.JSONDecodeError):
            return None

    def put(self, descriptor: dict, payload: dict) -> Path:
        path = self._path(descriptor)
        path.write_text(canonical_json(payload) + "\n")
        return path

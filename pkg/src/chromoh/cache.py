"""On-disk read-through cache for computed report fragments.

Entries are JSON files named by the sha256 of the canonical text
serialization of the graph, so the edge order is part of the key.
"""
from __future__ import annotations

import hashlib
import json
import logging
import os
import tempfile
from pathlib import Path
from typing import Any, Optional

from .graph import Graph
from .io import SCHEMA_VERSION, to_text

log = logging.getLogger(__name__)

ENV_VAR = "CHROMOH_CACHE"


def cache_key(G: Graph) -> str:
    return hashlib.sha256(to_text(G).encode()).hexdigest()


class ResultCache:
    """A directory of ``<key>.json`` files; ``None`` directory disables it."""

    def __init__(self, directory: Optional[str | Path]):
        self.directory: Optional[Path] = None
        if directory is None:
            return
        path = Path(directory)
        try:
            path.mkdir(parents=True, exist_ok=True)
            probe = tempfile.NamedTemporaryFile(dir=path, prefix=".probe-", delete=True)
            probe.close()
        except OSError as exc:
            log.warning("cache directory %s is not writable (%s); caching disabled", path, exc)
            return
        self.directory = path

    @classmethod
    def from_env(cls, flag: Optional[str] = None) -> "ResultCache":
        return cls(flag if flag is not None else os.environ.get(ENV_VAR) or None)

    @property
    def enabled(self) -> bool:
        return self.directory is not None

    def _path(self, G: Graph) -> Path:
        assert self.directory is not None
        return self.directory / f"{cache_key(G)}.json"

    def get(self, G: Graph) -> dict[str, Any]:
        """Cached fragment for ``G``; empty on miss, stale schema or corruption."""
        if not self.enabled:
            return {}
        path = self._path(G)
        try:
            entry = json.loads(path.read_text())
        except FileNotFoundError:
            return {}
        except (OSError, ValueError):
            log.warning("ignoring unreadable cache entry %s", path.name)
            return {}
        if (
            not isinstance(entry, dict)
            or entry.get("schema") != SCHEMA_VERSION
            or entry.get("graph") != to_text(G)
            or not isinstance(entry.get("fragment"), dict)
        ):
            return {}
        return entry["fragment"]

    def put(self, G: Graph, fragment: dict[str, Any]) -> None:
        if not self.enabled:
            return
        path = self._path(G)
        entry = {"schema": SCHEMA_VERSION, "graph": to_text(G), "fragment": fragment}
        try:
            fd, tmp = tempfile.mkstemp(dir=self.directory, prefix=".tmp-", suffix=".json")
            with os.fdopen(fd, "w") as fh:
                json.dump(entry, fh, sort_keys=True)
            os.replace(tmp, path)
        except OSError as exc:
            log.warning("could not write cache entry %s: %s", path.name, exc)

"""Append-only JSON-lines cache of F(m) results (``fcache.jsonl``)."""
from __future__ import annotations

import json
import os
from pathlib import Path

ENV_VAR = "SDFKIT_CACHE"
DEFAULT_PATH = "fcache.jsonl"
FIELDS = ("m", "F", "exact", "witness")


def dumps(record: dict) -> str:
    return json.dumps({k: record[k] for k in FIELDS})


def resolve_path(path: str | os.PathLike | None = None) -> Path:
    """The env var wins over the configured path, which wins over the default."""
    return Path(os.environ.get(ENV_VAR) or path or DEFAULT_PATH)


class FCache:
    def __init__(self, path: str | os.PathLike | None = None):
        self.path = resolve_path(path)
        self._lines: dict[int, str] = {}
        self._exact: dict[int, bool] = {}
        if self.path.exists():
            for line in self.path.read_text().splitlines():
                if line.strip():
                    self._index(line)

    def _index(self, line: str):
        rec = json.loads(line)
        m = rec["m"]
        # a later exact record supersedes anything; a non-exact one never replaces an exact one
        if rec["exact"] or not self._exact.get(m, False):
            self._lines[m] = line
            self._exact[m] = bool(rec["exact"])

    def get_line(self, m: int) -> str | None:
        return self._lines.get(m)

    def get(self, m: int) -> dict | None:
        line = self._lines.get(m)
        return None if line is None else json.loads(line)

    def put(self, record: dict) -> str:
        line = dumps(record)
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with open(self.path, "a") as fh:
            fh.write(line + "\n")
        self._index(line)
        return line

    def __contains__(self, m: int) -> bool:
        return m in self._lines

    def __len__(self):
        return len(self._lines)

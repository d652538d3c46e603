"""``key = value`` configuration for caps and budgets; command-line flags override it."""
from __future__ import annotations

import configparser
from dataclasses import dataclass, fields, replace
from pathlib import Path

from .core import VERTEX_CAP
from .search import DEFAULT_BUDGET_NODES, DEFAULT_BUDGET_SECS


@dataclass(frozen=True)
class Config:
    budget_nodes: int = DEFAULT_BUDGET_NODES
    budget_secs: float = DEFAULT_BUDGET_SECS
    vertex_cap: int = VERTEX_CAP
    cache: str = "fcache.jsonl"
    c: str = "0.2"
    units_only: bool = False

    def override(self, **kw) -> "Config":
        return replace(self, **{k: v for k, v in kw.items() if v is not None})


def _coerce(kind, raw: str):
    raw = raw.strip().strip('"').strip("'")
    if kind is bool or kind == "bool":
        return raw.lower() in ("1", "true", "yes", "on")
    if kind is int or kind == "int":
        return int(float(raw)) if "e" in raw.lower() else int(raw.replace("_", ""))
    if kind is float or kind == "float":
        return float(raw)
    return raw


def load_config(path: str | Path | None) -> Config:
    if path is None:
        return Config()
    parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    parser.read_string("[sdfkit]\n" + Path(path).read_text())
    known = {f.name: f.type for f in fields(Config)}
    values = {}
    for key, raw in parser["sdfkit"].items():
        key = key.replace("-", "_")
        if key not in known:
            raise ValueError(f"unknown config key {key!r}")
        values[key] = _coerce(known[key], raw)
    return Config(**values)

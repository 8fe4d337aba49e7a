"""Versioned JSON run reports."""

from __future__ import annotations

import hashlib
import json
import math
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .graph import Graph
from .io import emit_edge_list

SCHEMA_VERSION = "1.0"


def graph_digest(g: Graph) -> str:
    """sha256 of the canonical edge-list text (labels as given, edges sorted)."""
    return hashlib.sha256(emit_edge_list(g).encode()).hexdigest()


def text_digest(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()


def jsonable(obj: Any) -> Any:
    """Recursively convert to plain JSON types; infinities become ``None``."""
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating, float)):
        f = float(obj)
        if math.isinf(f) or math.isnan(f):
            return None
        return int(f) if f.is_integer() else f
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.ndarray):
        return jsonable(obj.tolist())
    return obj


@dataclass
class RunReport:
    command: dict
    inputs: dict = field(default_factory=dict)
    results: dict = field(default_factory=dict)
    errors: list = field(default_factory=list)
    timings: dict = field(default_factory=dict)
    include_timings: bool = True

    @contextmanager
    def timed(self, name: str):
        t0 = time.perf_counter()
        try:
            yield
        finally:
            self.timings[name] = round(time.perf_counter() - t0, 6)

    def error(self, item: str, exc: BaseException) -> None:
        self.errors.append({"item": item, "type": type(exc).__name__, "message": str(exc)})

    @property
    def ok(self) -> bool:
        return not self.errors

    def to_dict(self) -> dict:
        out = {
            "schema_version": SCHEMA_VERSION,
            "command": self.command,
            "inputs": self.inputs,
            "results": self.results,
            "errors": self.errors,
            "complete": self.ok,
        }
        if self.include_timings:
            out["timings"] = self.timings
        return jsonable(out)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2, ensure_ascii=False) + "\n"

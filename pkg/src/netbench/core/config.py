"""Flat key=value configuration files for the CLI.

Example::

    app = routing
    num_queries = 300
    levels = 1,2,3
    seed = 0
    max_turns = 20
    agent = oracle
    safety_rule = strict

Lines starting with ``#`` are comments; unknown keys are rejected so a
typo cannot silently fall back to a default.
"""

from __future__ import annotations

from pathlib import Path

from ..errors import ParseError
from .types import BenchmarkConfig

_INT_KEYS = ("num_queries", "seed", "max_turns", "parallelism")
_KNOWN = ("app", "num_queries", "levels", "seed", "max_turns", "agent",
          "parallelism", "safety_rule")


def parse_config(text: str) -> BenchmarkConfig:
    values = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ParseError(f"line {lineno}: expected key = value, got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key not in _KNOWN:
            raise ParseError(f"line {lineno}: unknown key {key!r}")
        if key in values:
            raise ParseError(f"line {lineno}: duplicate key {key!r}")
        values[key] = value

    if "app" not in values:
        raise ParseError("missing required key 'app'")
    kwargs = {"app": values.pop("app")}
    for key, value in values.items():
        if key in _INT_KEYS:
            try:
                kwargs[key] = int(value)
            except ValueError:
                raise ParseError(f"key {key!r} needs an integer, got {value!r}") from None
        elif key == "levels":
            try:
                kwargs[key] = tuple(int(p) for p in value.split(",") if p.strip())
            except ValueError:
                raise ParseError(f"key 'levels' needs integers, got {value!r}") from None
        else:
            kwargs[key] = value
    try:
        return BenchmarkConfig(**kwargs)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def load_config(path) -> BenchmarkConfig:
    return parse_config(Path(path).read_text(encoding="utf-8"))

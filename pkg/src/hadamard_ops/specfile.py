"""JSON spec files: named distributions, test functions and config overrides.

Example::

    {
      "version": "1",
      "d": 1,
      "distributions": {
        "unit": [{"type": "point", "location": [1.0]}],
        "box": [{"type": "density",
                 "density": {"name": "indicator", "params": {"lo": [1.0], "hi": [2.0]}}}]
      },
      "test_functions": {
        "phi": [{"coeff": 1.0, "gamma": [0], "m": [1.5], "s": [0.6]}]
      },
      "config": {"rel_tol": 1e-9}
    }
"""
from __future__ import annotations

import json
from dataclasses import dataclass, fields, replace
from pathlib import Path

import jsonschema

from .dist import Distribution
from .foundation import DomainError, PairingConfig
from .testfn import TestFunction

__all__ = ["SPEC_SCHEMA", "SpecFile", "load_spec", "parse_spec"]

_NUMBER_OR_PAIR = {
    "oneOf": [
        {"type": "number"},
        {"type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 2},
    ]
}

_ATOM = {
    "type": "object",
    "required": ["type"],
    "properties": {
        "type": {"enum": ["density", "deriv", "euler", "point"]},
        "density": {"type": "object"},
        "beta": {"type": "array", "items": {"type": "integer", "minimum": 0}},
        "operator": {"type": "object"},
        "location": {"type": "array", "items": {"type": "number"}},
        "coeff": _NUMBER_OR_PAIR,
    },
    "additionalProperties": False,
}

_TERM = {
    "type": "object",
    "required": ["m", "s"],
    "properties": {
        "coeff": _NUMBER_OR_PAIR,
        "gamma": {"type": "array", "items": {"type": "integer", "minimum": 0}},
        "m": {"type": "array", "items": {"type": "number"}},
        "s": {"type": "array", "items": {"type": "number", "exclusiveMinimum": 0}},
    },
    "additionalProperties": False,
}

SPEC_SCHEMA = {
    "type": "object",
    "required": ["version", "d"],
    "properties": {
        "version": {"enum": ["1"]},
        "d": {"type": "integer", "minimum": 1, "maximum": 2},
        "distributions": {"type": "object", "additionalProperties": {"type": "array", "items": _ATOM, "minItems": 1}},
        "test_functions": {"type": "object", "additionalProperties": {"type": "array", "items": _TERM, "minItems": 1}},
        "config": {
            "type": "object",
            "properties": {
                "rel_tol": {"type": "number", "exclusiveMinimum": 0},
                "abs_tol": {"type": "number", "exclusiveMinimum": 0},
                "max_subdivisions": {"type": "integer", "minimum": 1},
                "truncation_radius": {"type": "number", "exclusiveMinimum": 0},
            },
            "additionalProperties": False,
        },
    },
    "additionalProperties": False,
}


@dataclass(frozen=True)
class SpecFile:
    version: str
    d: int
    distributions: dict[str, Distribution]
    test_functions: dict[str, TestFunction]
    config: PairingConfig

    def distribution(self, name: str) -> Distribution:
        if name not in self.distributions:
            raise DomainError(f"no distribution named {name!r}; known: {sorted(self.distributions)}")
        return self.distributions[name]

    def test_function(self, name: str) -> TestFunction:
        if name not in self.test_functions:
            raise DomainError(f"no test function named {name!r}; known: {sorted(self.test_functions)}")
        return self.test_functions[name]

    def to_json(self) -> dict:
        cfg = {f.name: getattr(self.config, f.name) for f in fields(PairingConfig) if f.name in _CONFIG_KEYS}
        return {
            "version": self.version,
            "d": self.d,
            "distributions": {k: v.to_json() for k, v in self.distributions.items()},
            "test_functions": {k: v.to_json() for k, v in self.test_functions.items()},
            "config": {k: v for k, v in cfg.items() if v is not None},
        }


_CONFIG_KEYS = ("rel_tol", "abs_tol", "max_subdivisions", "truncation_radius")


def parse_spec(obj: dict) -> SpecFile:
    """Validate against :data:`SPEC_SCHEMA`, then build every object."""
    try:
        jsonschema.validate(obj, SPEC_SCHEMA)
    except jsonschema.ValidationError as exc:
        path = "/".join(str(p) for p in exc.absolute_path)
        raise DomainError(f"spec file invalid at '{path}': {exc.message}") from exc
    d = obj["d"]
    dists = {k: Distribution.from_json(v) for k, v in obj.get("distributions", {}).items()}
    tfs = {k: TestFunction.from_json(v) for k, v in obj.get("test_functions", {}).items()}
    for name, T in dists.items():
        if T.d != d:
            raise DomainError(f"distribution {name!r} has dimension {T.d}, spec declares {d}")
    for name, phi in tfs.items():
        if phi.d != d:
            raise DomainError(f"test function {name!r} has dimension {phi.d}, spec declares {d}")
    cfg = replace(PairingConfig(), **obj.get("config", {}))
    return SpecFile(obj["version"], d, dists, tfs, cfg)


def load_spec(path) -> SpecFile:
    with open(Path(path), encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise DomainError(f"spec file is not valid JSON: {exc}") from exc
    return parse_spec(obj)

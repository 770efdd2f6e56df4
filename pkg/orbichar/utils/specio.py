# ============================================================================
# JOB-SPEC I/O MODULE
# ============================================================================
# Reads and writes the JSON job specs the CLI runs on.
#
# SPEC LAYOUT:
# {
#   "name":     "a3",                          ← optional, defaults to "custom"
#   "gram":     [[2,-1,0],[-1,2,-1],[0,-1,2]],  ← required, integer rows
#   "isometry": [[0,0,1],[0,1,0],[1,0,0]],      ← required, integer rows
#   "options":  {                               ← optional
#       "tol": 1e-12,
#       "n_terms": 10,
#       "taus": [{"re": 0, "im": 1}, {"re": 0.3, "im": 0.8}],
#       "format": "table"
#   }
# }
#
# Parsing has two failure modes:
# - ParseError       → not JSON, or a field is missing / has the wrong shape
# - ValidationError  → it parsed, but the lattice or isometry is invalid
#
# Last updated: 17 October 2026
# ============================================================================

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from orbichar.exceptions import IsometryError, LatticeError, ParseError, ValidationError
from orbichar.isometry import Isometry, new_isometry
from orbichar.lattice import Lattice, new_lattice
from orbichar.utils.tables import complex_from_json, complex_to_json

logger = logging.getLogger(__name__)

__all__ = [
    "JobSpec",
    "OPTION_KEYS",
    "parse_spec",
    "load_spec",
    "save_spec",
    "spec_to_json",
    "spec_from_objects",
]

OPTION_KEYS = ("tol", "n_terms", "taus", "format", "p", "t", "jobs")


@dataclass(frozen=True)
class JobSpec:
    name: str
    gram: tuple[tuple[int, ...], ...]
    isometry: tuple[tuple[int, ...], ...]
    options: dict[str, Any] = field(default_factory=dict, compare=False)

    def build(self) -> tuple[Lattice, Isometry]:
        """
        Validate and construct the lattice and isometry.

        Raises:
            ValidationError: wraps the LatticeError / IsometryError
        """
        try:
            L = new_lattice(self.gram)
            return L, new_isometry(L, self.isometry)
        except (LatticeError, IsometryError) as e:
            raise ValidationError(f"invalid spec '{self.name}': {e}", cause=e) from e


# ----------------------------------------------------------------------------
# PARSING
# ----------------------------------------------------------------------------

def _integer_matrix(value: Any, name: str) -> tuple[tuple[int, ...], ...]:
    """Shape check only; squareness and the rest belong to the validators."""
    if not isinstance(value, list) or not value:
        raise ParseError("expected a non-empty list of integer rows", field=name)
    rows = []
    for i, row in enumerate(value):
        if not isinstance(row, list):
            raise ParseError(f"row {i} is not a list", field=name)
        for x in row:
            if isinstance(x, bool) or not isinstance(x, int):
                raise ParseError(f"row {i} holds a non-integer entry {x!r}", field=name)
        rows.append(tuple(row))
    return tuple(rows)


def _parse_tau(obj: Any, i: int) -> complex:
    if isinstance(obj, dict) and {"re", "im"} <= set(obj):
        return complex_from_json(obj)
    if isinstance(obj, list) and len(obj) == 2:
        return complex(obj[0], obj[1])
    raise ParseError(f"tau #{i} must be {{\"re\": x, \"im\": y}} or [x, y]", field="options.taus")


def _parse_options(value: Any) -> dict[str, Any]:
    if value is None:
        return {}
    if not isinstance(value, dict):
        raise ParseError("expected an object", field="options")
    unknown = sorted(set(value) - set(OPTION_KEYS))
    if unknown:
        raise ParseError(f"unknown option(s) {', '.join(unknown)}", field="options")
    options = dict(value)
    if "taus" in options:
        if not isinstance(options["taus"], list):
            raise ParseError("expected a list", field="options.taus")
        options["taus"] = tuple(_parse_tau(t, i) for i, t in enumerate(options["taus"]))
    if "format" in options and options["format"] not in ("table", "json", "csv"):
        raise ParseError(f"format must be table, json or csv, not {options['format']!r}", field="options.format")
    return options


def parse_spec(text: str, validate: bool = True) -> JobSpec:
    """
    Parse a JSON job spec.

    Args:
        text: the spec document
        validate: also build the lattice and isometry

    Returns:
        JobSpec

    Raises:
        ParseError, ValidationError

    Example:
        >>> parse_spec('{"gram": [[2]], "isometry": [[-1]]}').name
        'custom'
    """
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e.msg}", position=e.pos) from e
    if not isinstance(obj, dict):
        raise ParseError("the spec must be a JSON object", position=0)
    for required in ("gram", "isometry"):
        if required not in obj:
            raise ParseError("missing required field", field=required)
    name = obj.get("name", "custom")
    if not isinstance(name, str):
        raise ParseError("expected a string", field="name")
    spec = JobSpec(
        name=name,
        gram=_integer_matrix(obj["gram"], "gram"),
        isometry=_integer_matrix(obj["isometry"], "isometry"),
        options=_parse_options(obj.get("options")),
    )
    if validate:
        spec.build()
    logger.debug("parsed spec %s (rank %d)", spec.name, len(spec.gram))
    return spec


def load_spec(path: str | Path) -> JobSpec:
    return parse_spec(Path(path).read_text(encoding="utf-8"))


# ----------------------------------------------------------------------------
# WRITING
# ----------------------------------------------------------------------------

def spec_from_objects(name: str, L: Lattice, sigma: Isometry, options: dict[str, Any] | None = None) -> JobSpec:
    return JobSpec(name, L.gram, sigma.matrix, dict(options or {}))


def spec_to_json(spec: JobSpec) -> str:
    options = dict(spec.options)
    if "taus" in options:
        options["taus"] = [complex_to_json(t) for t in options["taus"]]
    payload = {
        "name": spec.name,
        "gram": [list(row) for row in spec.gram],
        "isometry": [list(row) for row in spec.isometry],
        "options": options,
    }
    return json.dumps(payload, indent=2, sort_keys=False)


def save_spec(spec: JobSpec, path: str | Path) -> Path:
    """Write `spec` as UTF-8 JSON; parse_spec(load) gives it back."""
    path = Path(path)
    path.write_text(spec_to_json(spec) + "\n", encoding="utf-8")
    return path

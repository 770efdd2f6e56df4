# ============================================================================
# TABLES MODULE
# ============================================================================
# Turns classification, dimension, matrix and q-expansion results into
# pandas DataFrames, and renders them as text, CSV or JSON-ready records.
#
# TABLES WE BUILD:
# 1. classification_table → one row per irreducible module
# 2. dimension_table      → asymptotic and quantum dimension per module
# 3. matrix_frame         → an S- or T-matrix with labelled rows/columns
# 4. qexpansion_table     → exponent / coefficient pairs of a q-series
#
# NUMBER FORMATS:
# - complex   → "a+bi" with Config.print_digits significant digits (text)
#               {"re": a, "im": b} (JSON)
# - Fraction  → "p/q"
#
# Last updated: 17 October 2026
# ============================================================================

from __future__ import annotations

import math
from fractions import Fraction
from typing import Any

import pandas as pd

from orbichar.config import Config
from orbichar.utils.qseries import CycloInt, QSeries

__all__ = [
    "format_complex",
    "format_fraction",
    "complex_to_json",
    "complex_from_json",
    "fraction_to_json",
    "jsonable",
    "classification_table",
    "dimension_table",
    "matrix_frame",
    "qexpansion_table",
    "render",
]


# ----------------------------------------------------------------------------
# NUMBER FORMATTING
# ----------------------------------------------------------------------------

def _clean(x: float, digits: int) -> float:
    """Round to `digits` significant digits and turn -0.0 into 0.0."""
    if x == 0 or not math.isfinite(x):
        return 0.0 if x == 0 else x
    y = float(f"{x:.{digits}g}")
    return 0.0 if y == 0 else y


def format_complex(z: complex, digits: int | None = None) -> str:
    """
    Fixed significant-digit rendering of a complex number.

    Example:
        >>> format_complex(0.25 + 0j)
        '0.25'
        >>> format_complex(1j * 2 ** -0.5, 4)
        '0.7071i'
    """
    digits = digits or Config.print_digits
    z = complex(z)
    re, im = _clean(z.real, digits), _clean(z.imag, digits)
    # noise far below the printed precision is dropped
    scale = max(abs(re), abs(im), 1.0)
    if abs(re) < scale * 10 ** -digits:
        re = 0.0
    if abs(im) < scale * 10 ** -digits:
        im = 0.0
    if im == 0:
        return f"{re:.{digits}g}"
    if re == 0:
        return f"{im:.{digits}g}i"
    sign = "+" if im > 0 else "-"
    return f"{re:.{digits}g}{sign}{abs(im):.{digits}g}i"


def format_fraction(x) -> str:
    return str(Fraction(x))


def complex_to_json(z: complex, digits: int | None = None) -> dict[str, float]:
    digits = digits or Config.print_digits
    z = complex(z)
    return {"re": _clean(z.real, digits), "im": _clean(z.imag, digits)}


def complex_from_json(obj: dict[str, float]) -> complex:
    return complex(obj["re"], obj["im"])


def fraction_to_json(x) -> str:
    return format_fraction(x)


def jsonable(value: Any) -> Any:
    """Recursively convert results to JSON-safe types (complex, Fraction, CycloInt, numpy)."""
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, Fraction):
        return fraction_to_json(value) if value.denominator != 1 else int(value)
    if isinstance(value, int):
        return value
    if isinstance(value, CycloInt):
        return complex_to_json(complex(value))
    if isinstance(value, complex):
        return complex_to_json(value)
    if isinstance(value, float):
        return _clean(value, Config.print_digits)
    if hasattr(value, "tolist"):
        return jsonable(value.tolist())
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    return str(value)


# ----------------------------------------------------------------------------
# RESULT TABLES
# ----------------------------------------------------------------------------

def classification_table(cls, weights: dict[int, Fraction] | None = None) -> pd.DataFrame:
    """
    One row per module in classification order.

    Args:
        cls: a characters.Classification
        weights: optional {position: conformal weight}

    Returns:
        pandas.DataFrame: columns name, type, vector, j, l, zeta (+ weight)
    """
    rows = []
    for i, label in enumerate(cls.labels):
        row = {
            "name": label.display_name,
            "type": label.kind,
            "vector": "(" + ",".join(format_fraction(x) for x in label.vector) + ")",
            "j": label.j,
            "l": label.l,
            "zeta": label.zeta,
        }
        if weights is not None:
            row["weight"] = format_fraction(weights[i])
        rows.append(row)
    return pd.DataFrame(rows)


def dimension_table(report) -> pd.DataFrame:
    """Asymptotic and quantum dimensions from a transforms.DimensionReport."""
    return pd.DataFrame({
        "name": list(report.labels),
        "asymptotic": [_clean(x, Config.print_digits) for x in report.asymptotic],
        "quantum": [_clean(x, Config.print_digits) for x in report.quantum],
    })


def matrix_frame(matrix, as_text: bool = True) -> pd.DataFrame:
    """
    A TransformMatrix as a labelled square DataFrame.

    Args:
        matrix: transforms.TransformMatrix
        as_text: format entries with format_complex (otherwise raw complex)
    """
    entries = matrix.entries
    if as_text:
        data = [[format_complex(z) for z in row] for row in entries]
    else:
        data = entries
    return pd.DataFrame(data, index=list(matrix.labels), columns=list(matrix.labels))


def qexpansion_table(series: QSeries, shift: Fraction = Fraction(0)) -> pd.DataFrame:
    """
    Nonzero terms of a q-series, exponents shifted by `shift` (pass c/24 to
    list conformal weights instead of q-exponents).
    """
    rows = []
    for e, c in sorted(series.terms().items()):
        rows.append({
            "exponent": format_fraction(e + shift),
            "coefficient": str(c) if isinstance(c, int) else format_complex(complex(c)),
            "exact": repr(c),
        })
    return pd.DataFrame(rows, columns=["exponent", "coefficient", "exact"])


def render(frame: pd.DataFrame, fmt: str = "table") -> str:
    """table → aligned text, csv → DataFrame.to_csv, json → records."""
    if fmt == "csv":
        return frame.to_csv()
    if fmt == "json":
        return frame.to_json(orient="split")
    with pd.option_context("display.max_rows", None, "display.max_columns", None, "display.width", 200):
        return frame.to_string()

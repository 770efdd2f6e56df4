"""
Configuration for orbichar
==========================
All tunable constants in one place, with environment overrides.

ENVIRONMENT VARIABLES:
----------------------
- ORBICHAR_PRECISION_BITS  -> switch numeric evaluation to mpmath at this many bits
- ORBICHAR_ENUM_CAP        -> maximum number of lattice vectors one enumeration may return
- ORBICHAR_LOG_LEVEL       -> default level for the "orbichar" logger (e.g. DEBUG)

Last updated: 17 October 2026
"""

from __future__ import annotations

import contextlib
import logging
import os
from typing import Iterator

import mpmath

__all__ = [
    "Config",
    "configure_logging",
]


# =============================================================================
# CONSTANTS
# =============================================================================
class Config:
    """Global defaults. Read as class attributes; override via from_env()."""

    # Series evaluation
    abs_tol: float = 1e-12
    max_terms: int = 10_000
    default_n_terms: int = 10

    # Sample points for numeric certification: one S-fixed point, one generic
    sample_taus: tuple[complex, ...] = (1j, 0.3 + 0.8j)

    # Lattice and isometry caps
    order_cap: int = 1000
    enum_cap: int = 2_000_000

    # Transform checks
    verify_tol: float = 1e-8
    unitarity_tol: float = 1e-8
    fusion_round_tol: float = 1e-6
    snap_tol: float = 1e-8
    qexp_rank_terms: int = 20

    # Output
    print_digits: int = 12

    # None means numpy double precision
    _precision_bits: int | None = None

    @classmethod
    def from_env(cls) -> type["Config"]:
        """Apply the ORBICHAR_* environment overrides (idempotent)."""
        bits = os.environ.get("ORBICHAR_PRECISION_BITS")
        if bits:
            cls._precision_bits = int(bits)
        cap = os.environ.get("ORBICHAR_ENUM_CAP")
        if cap:
            cls.enum_cap = int(cap)
        return cls

    @classmethod
    def precision_bits(cls) -> int | None:
        return cls._precision_bits

    @classmethod
    def set_precision_bits(cls, bits: int | None) -> None:
        cls._precision_bits = bits

    @classmethod
    def high_precision(cls) -> bool:
        return cls._precision_bits is not None

    @classmethod
    @contextlib.contextmanager
    def mp_context(cls) -> Iterator[None]:
        """Working-precision context for mpmath evaluation (no-op in double mode)."""
        if cls._precision_bits is None:
            yield
            return
        with mpmath.workprec(cls._precision_bits):
            yield


# =============================================================================
# LOGGING
# =============================================================================
_LOG_FORMAT = "%(levelname)s %(name)s: %(message)s"


def configure_logging(level: int | str | None = None) -> logging.Logger:
    """
    Attach a single stderr handler to the package logger.

    Args:
        level: logging level; falls back to ORBICHAR_LOG_LEVEL, then WARNING

    Returns:
        logging.Logger: the "orbichar" logger
    """
    if level is None:
        level = os.environ.get("ORBICHAR_LOG_LEVEL", "WARNING")
    if isinstance(level, str):
        level = logging.getLevelName(level.upper())
        if not isinstance(level, int):
            level = logging.WARNING

    logger = logging.getLogger("orbichar")
    # Replace rather than stack handlers when called twice (tests, repeated CLI runs)
    logger.handlers = []
    handler = logging.StreamHandler()
    handler.setFormatter(logging.Formatter(_LOG_FORMAT))
    logger.addHandler(handler)
    logger.setLevel(level)
    return logger


Config.from_env()

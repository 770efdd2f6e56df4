# ============================================================================
# CATALOG MODULE
# ============================================================================
# Built-in worked examples: a lattice plus an isometry, ready for classify().
#
# THE EXAMPLES:
# - a2      A₂ root lattice with the diagram swap α₁ ↔ α₂ (p = 2, Q ≠ Q̄)
# - a2bar   Q̄ of the above, rewritten in a Q̄ basis         → 20 modules
# - a3      A₃ with the diagram automorphism α₁ ↔ α₃          →  9 modules
# - d4      D₄ with the triality 3-cycle of the outer legs    → 10 modules
# - perm    Zα^⊕p, |α|² = 2t, with the cyclic shift           → 20 for p=3, t=1
#
# a2 is listed so the QbarMismatch path can be reached from the CLI.
#
# Last updated: 17 October 2026
# ============================================================================

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable

from orbichar.characters import permutation_lattice
from orbichar.isometry import Isometry, new_isometry, restrict_to_qbar
from orbichar.lattice import Lattice, new_lattice

logger = logging.getLogger(__name__)

__all__ = [
    "Example",
    "EXAMPLES",
    "example",
    "example_names",
    "a2",
    "a2bar",
    "a3",
    "d4",
    "perm",
]

A2_GRAM = ((2, -1), (-1, 2))
A3_GRAM = ((2, -1, 0), (-1, 2, -1), (0, -1, 2))
# the last basis vector is the central node
D4_GRAM = ((2, 0, 0, -1), (0, 2, 0, -1), (0, 0, 2, -1), (-1, -1, -1, 2))


@dataclass(frozen=True)
class Example:
    name: str
    description: str
    builder: Callable[..., tuple[Lattice, Isometry]]
    takes_parameters: bool = False


def a2() -> tuple[Lattice, Isometry]:
    L = new_lattice(A2_GRAM)
    return L, new_isometry(L, [[0, 1], [1, 0]])


def a2bar() -> tuple[Lattice, Isometry]:
    """Q̄(A₂) with the induced swap; Q̄ has index 2 in A₂."""
    _, sigma = a2()
    return restrict_to_qbar(sigma)


def a3() -> tuple[Lattice, Isometry]:
    L = new_lattice(A3_GRAM)
    return L, new_isometry(L, [[0, 0, 1], [0, 1, 0], [1, 0, 0]])


def d4() -> tuple[Lattice, Isometry]:
    """Triality: cycles the three outer nodes, fixes the centre."""
    L = new_lattice(D4_GRAM)
    return L, new_isometry(L, [[0, 0, 1, 0], [1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1]])


def perm(p: int = 3, t: int = 1) -> tuple[Lattice, Isometry]:
    """
    Permutation orbifold of a rank-one lattice.

    Args:
        p: prime number of summands
        t: |α|² = 2t

    Raises:
        NotPrime, ValueError
    """
    if t < 1:
        raise ValueError(f"t = {t} must be a positive integer")
    return permutation_lattice(new_lattice(((2 * t,),)), p)


EXAMPLES: dict[str, Example] = {
    "a2": Example("a2", "A2 with the diagram swap (needs restricting to Qbar)", a2),
    "a2bar": Example("a2bar", "Qbar of A2 with the induced swap", a2bar),
    "a3": Example("a3", "A3 with the diagram automorphism", a3),
    "d4": Example("d4", "D4 with the triality 3-cycle", d4),
    "perm": Example("perm", "Z(alpha)^p, |alpha|^2 = 2t, cyclic shift", perm, takes_parameters=True),
}


def example_names() -> list[str]:
    return sorted(EXAMPLES)


def example(name: str, p: int = 3, t: int = 1) -> tuple[Lattice, Isometry]:
    """
    Look up and build a catalog example.

    Raises:
        KeyError: unknown name

    Example:
        >>> L, sigma = example("a3")
        >>> sigma.order
        2
    """
    key = name.lower()
    if key not in EXAMPLES:
        raise KeyError(f"unknown example '{name}'; choose from {', '.join(example_names())}")
    entry = EXAMPLES[key]
    logger.debug("building example %s", key)
    if entry.takes_parameters:
        return entry.builder(p=p, t=t)
    return entry.builder()

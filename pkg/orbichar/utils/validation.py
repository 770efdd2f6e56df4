"""
Input validation for orbichar
=============================
Checks that run before any heavy computation, so a bad Gram matrix or a
malformed isometry is reported with a friendly message instead of a
traceback from deep inside the linear algebra.

Each check returns (is_valid, message); the typed constructors in
lattice.py / isometry.py turn a failed check into the matching exception.

Last updated: 17 October 2026
"""

from __future__ import annotations

from typing import Sequence

import sympy

__all__ = [
    "validate_square_matrix",
    "validate_gram",
    "validate_isometry_matrix",
    "validate_tau",
    "validate_prime",
]


# =============================================================================
# MATRIX SHAPES
# =============================================================================
def validate_square_matrix(matrix, name: str = "matrix") -> tuple[bool, str]:
    """
    Validate that `matrix` is a non-empty square matrix of integers.

    Args:
        matrix: nested sequence to check
        name: field name used in the message

    Returns:
        tuple: (is_valid: bool, error_message: str)
    """
    if not isinstance(matrix, (list, tuple)) or not matrix:
        return False, f"'{name}' must be a non-empty list of rows"

    n = len(matrix)
    for i, row in enumerate(matrix):
        if not isinstance(row, (list, tuple)):
            return False, f"'{name}' row {i} is not a list"
        if len(row) != n:
            return False, f"'{name}' must be square: row {i} has {len(row)} entries, expected {n}"
        for j, x in enumerate(row):
            # bool is an int subclass; reject it explicitly
            if isinstance(x, bool) or not isinstance(x, int):
                return False, f"'{name}'[{i}][{j}] = {x!r} is not an integer"

    return True, ""


def validate_gram(gram: Sequence[Sequence[int]]) -> tuple[bool, str | None, str]:
    """
    Validate a Gram matrix: square, symmetric, even, positive definite.

    Returns:
        tuple: (is_valid, problem, message) where problem is one of
        "symmetric", "even", "positive" (None when valid)

    Example:
        >>> validate_gram([[1]])[:2]
        (False, 'even')
    """
    ok, message = validate_square_matrix(gram, "gram")
    if not ok:
        return False, "symmetric", message

    n = len(gram)
    for i in range(n):
        for j in range(i + 1, n):
            if gram[i][j] != gram[j][i]:
                return False, "symmetric", f"gram is not symmetric: entry ({i},{j}) = {gram[i][j]} but ({j},{i}) = {gram[j][i]}"

    for i in range(n):
        if gram[i][i] % 2:
            return False, "even", f"gram diagonal entry {i} is {gram[i][i]}; an even lattice needs even norms"

    # Sylvester's criterion with exact minors
    m = sympy.Matrix(gram)
    for k in range(1, n + 1):
        minor = m[:k, :k].det()
        if minor <= 0:
            return False, "positive", f"gram is not positive definite: leading minor of size {k} is {minor}"

    return True, None, ""


def validate_isometry_matrix(matrix, rank: int) -> tuple[bool, str]:
    """Shape check for an isometry matrix against the lattice rank."""
    ok, message = validate_square_matrix(matrix, "isometry")
    if not ok:
        return ok, message
    if len(matrix) != rank:
        return False, f"isometry is {len(matrix)}×{len(matrix)} but the lattice has rank {rank}"
    return True, ""


# =============================================================================
# NUMERIC ARGUMENTS
# =============================================================================
def validate_tau(tau: complex) -> tuple[bool, str]:
    if complex(tau).imag <= 0:
        return False, f"tau = {tau} is not in the upper half-plane"
    return True, ""


def validate_prime(p: int) -> tuple[bool, str]:
    if not isinstance(p, int) or not sympy.isprime(p):
        return False, f"p = {p} is not a prime"
    return True, ""

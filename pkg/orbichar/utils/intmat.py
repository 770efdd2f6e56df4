# ============================================================================
# EXACT INTEGER / RATIONAL MATRIX MODULE
# ============================================================================
# Small exact linear algebra over Z and Q used by the lattice code.
#
# WHAT IS A SMITH NORMAL FORM?
# For an integer matrix A there are unimodular U, V with U·A·V = D diagonal,
# D = diag(d1, d2, ...) and d1 | d2 | ... . The d_i describe the finite
# group Z^n / A·Z^n, which is exactly how we get the discriminant group
# Q*/Q out of a Gram matrix.
#
# WHAT IS A HERMITE NORMAL FORM?
# A canonical triangular basis of an integer lattice: positive pivots,
# off-pivot entries reduced into [0, pivot). Two generating sets span the
# same lattice iff their HNFs agree.
#
# MATRICES:
# Plain lists of rows. Integer routines use Python ints (arbitrary size).
# Rational routines use fractions.Fraction. sympy does determinants,
# inverses and ranks through Matrix, and both normal forms through
# sympy.polys.matrices.normalforms on ZZ DomainMatrices.
# ============================================================================

from __future__ import annotations

import logging
from fractions import Fraction
from math import lcm
from typing import Sequence

import sympy
from sympy.polys.domains import ZZ
from sympy.polys.matrices import DM, DomainMatrix, normalforms

logger = logging.getLogger(__name__)

IntRows = list[list[int]]
RatRows = list[list[Fraction]]


# ----------------------------------------------------------------------------
# BASIC HELPERS
# ----------------------------------------------------------------------------

def eye(n: int) -> IntRows:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def transpose(rows: Sequence[Sequence]) -> list[list]:
    if not rows:
        return []
    return [list(col) for col in zip(*rows)]


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def mat_vec(a: Sequence[Sequence], v: Sequence) -> list:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def vec_mat(v: Sequence, a: Sequence[Sequence]) -> list:
    return [sum(v[i] * a[i][j] for i in range(len(v))) for j in range(len(a[0]))] if a else []


def common_denominator(values) -> int:
    """Least common multiple of the denominators of a flat iterable of rationals."""
    den = 1
    for x in values:
        den = lcm(den, Fraction(x).denominator)
    return den


def is_integral(values) -> bool:
    return all(Fraction(x).denominator == 1 for x in values)


def to_sympy(rows: Sequence[Sequence]) -> sympy.Matrix:
    """Exact sympy matrix from int/Fraction rows."""
    return sympy.Matrix([[sympy.Rational(Fraction(x).numerator, Fraction(x).denominator)
                          for x in row] for row in rows])


def from_sympy(m: sympy.Matrix) -> RatRows:
    return [[Fraction(int(sympy.fraction(x)[0]), int(sympy.fraction(x)[1]))
             for x in m.row(i)] for i in range(m.rows)]


def rational_det(rows: Sequence[Sequence]) -> Fraction:
    if not rows:
        return Fraction(1)
    d = to_sympy(rows).det()
    return Fraction(int(sympy.fraction(d)[0]), int(sympy.fraction(d)[1]))


def rational_inverse(rows: Sequence[Sequence]) -> RatRows:
    return from_sympy(to_sympy(rows).inv())


def rational_rank(rows: Sequence[Sequence]) -> int:
    if not rows:
        return 0
    return to_sympy(rows).rank()


# ----------------------------------------------------------------------------
# SMITH NORMAL FORM
# ----------------------------------------------------------------------------

def _domain_matrix(rows: Sequence[Sequence[int]]) -> DomainMatrix:
    return DM([[int(x) for x in row] for row in rows], ZZ)


def _int_rows(m: DomainMatrix) -> IntRows:
    return [[int(x) for x in row] for row in m.to_list()]


def smith_normal_decomp(rows: Sequence[Sequence[int]]) -> tuple[list[int], IntRows, IntRows]:
    """
    Smith normal form with transforms.

    Args:
        rows: m×n integer matrix

    Returns:
        (diag, U, V): diag has min(m, n) nonnegative entries with
        diag[i] | diag[i+1] (zeros last), and U·A·V = D.

    Example:
        >>> smith_normal_decomp([[2, 0], [0, 6]])[0]
        [2, 6]
    """
    m = len(rows)
    n = len(rows[0]) if m else 0
    if not m or not n:
        return [], eye(m), eye(n)
    smf, u, v = normalforms.smith_normal_decomp(_domain_matrix(rows))
    d = _int_rows(smf)
    diag = [d[i][i] for i in range(min(smf.shape))]
    logger.debug("SNF invariant factors %s", diag)
    return diag, _int_rows(u), _int_rows(v)


# ----------------------------------------------------------------------------
# HERMITE NORMAL FORM AND KERNELS
# ----------------------------------------------------------------------------

def hnf_rows(rows: Sequence[Sequence[int]]) -> IntRows:
    """
    Hermite normal form basis of the Z-span of the input rows.

    sympy reduces column spans, so the rows go in as columns and come back
    out as rows. Zero rows are dropped.

    Example:
        >>> len(hnf_rows([[2, 4], [1, 1], [3, 5]]))
        2
    """
    a = [[int(x) for x in r] for r in rows if any(r)]
    if not a:
        return []
    n = len(a[0])
    # sympy only reduces the last min(m, n) coordinates; zero generators make that all of them
    a += [[0] * n for _ in range(n - len(a))]
    hnf = normalforms.hermite_normal_form(_domain_matrix(transpose(a)))
    return transpose(_int_rows(hnf))


def integer_kernel(rows: Sequence[Sequence[int]], ncols: int | None = None) -> IntRows:
    """
    Basis (HNF rows) of {x in Z^n : A x = 0}.

    Args:
        rows: m×n integer matrix A (may be empty if ncols is given)
        ncols: n, needed when rows is empty
    """
    if not rows:
        return eye(ncols or 0)
    diag, _, v = smith_normal_decomp(rows)
    n = len(rows[0])
    rank = sum(1 for d in diag if d)
    basis = [[v[i][j] for i in range(n)] for j in range(rank, n)]
    return hnf_rows(basis)


def solve_integer(rows: Sequence[Sequence[int]], rhs: Sequence[int]) -> list[int] | None:
    """One integer solution x of A x = b, or None if there is none."""
    m = len(rows)
    n = len(rows[0]) if m else 0
    diag, u, v = smith_normal_decomp(rows)
    c = mat_vec(u, rhs)
    y = [0] * n
    for i in range(m):
        d = diag[i] if i < len(diag) else 0
        if d == 0:
            if c[i] != 0:
                return None
        else:
            if c[i] % d:
                return None
            y[i] = c[i] // d
    return mat_vec(v, y)


# ----------------------------------------------------------------------------
# RATIONAL LATTICES
# ----------------------------------------------------------------------------

def rational_hnf(rows: Sequence[Sequence]) -> RatRows:
    """HNF basis of the Z-span of rational rows (scaled to integers and back)."""
    rows = [list(map(Fraction, r)) for r in rows]
    if not rows:
        return []
    den = common_denominator(x for r in rows for x in r)
    scaled = [[int(x * den) for x in r] for r in rows]
    return [[Fraction(x, den) for x in r] for r in hnf_rows(scaled)]


def coordinates_in(basis: Sequence[Sequence], vectors: Sequence[Sequence]) -> RatRows | None:
    """
    Rational coefficients C with C·basis = vectors, or None if some vector
    lies outside the rational span of basis.
    """
    if not vectors:
        return []
    if not basis:
        return None if any(any(v) for v in vectors) else [[] for _ in vectors]
    b = to_sympy(basis)
    gram = b * b.T
    coeffs = to_sympy(vectors) * b.T * gram.inv()
    if coeffs * b != to_sympy(vectors):
        return None
    return from_sympy(coeffs)

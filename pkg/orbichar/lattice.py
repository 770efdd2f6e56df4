# ============================================================================
# LATTICE MODULE
# ============================================================================
# Exact arithmetic on positive-definite even integral lattices.
#
# WHAT IS A LATTICE HERE?
# A Gram matrix G (r×r, symmetric, integer, even diagonal, positive
# definite). Vectors are never embedded in R^r: a vector is just its
# coordinate tuple in the lattice basis, and (v|w) = vᵀ·G·w.
#
# VECTOR KINDS:
# - LatticeVector → tuple of ints        (an element of Q)
# - DualVector    → tuple of Fractions   (an element of Q ⊗ Q, e.g. of Q*)
#
# WHAT IS THE DISCRIMINANT GROUP?
# Q*/Q, a finite abelian group of order det(G). We read it off the Smith
# normal form U·G·V = D: the generators are V·e_i/d_i and a dual vector v
# has coordinates (U·G·v)_i mod d_i. Coset representatives are listed in
# lexicographic order of these coordinates, so every listing downstream
# (modules, matrices, tables) is reproducible.
#
# Last updated: 17 October 2026
# ============================================================================

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterator, Sequence

import numpy as np

from orbichar.config import Config
from orbichar.exceptions import (
    BoundTooLarge,
    DimensionMismatch,
    NotEven,
    NotPositiveDefinite,
    NotSublattice,
    NotSymmetric,
    RankMismatch,
)
from orbichar.utils import intmat
from orbichar.utils.validation import validate_gram

logger = logging.getLogger(__name__)

__all__ = [
    "Lattice",
    "LatticeVector",
    "DualVector",
    "DiscriminantGroup",
    "Sublattice",
    "new_lattice",
    "bilinear",
    "norm",
    "dual_vector",
    "discriminant_group",
    "enumerate_vectors",
    "enumerate_with_norms",
    "box_enumerate_vectors",
    "min_norm_representative",
    "sublattice",
    "span_sublattice",
    "sublattice_index",
    "intersect",
    "direct_sum",
]

LatticeVector = tuple[int, ...]
DualVector = tuple[Fraction, ...]


# ----------------------------------------------------------------------------
# LATTICE TYPE AND CONSTRUCTION
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class Lattice:
    """An even positive-definite integral lattice given by its Gram matrix."""

    gram: tuple[tuple[int, ...], ...]

    @property
    def rank(self) -> int:
        return len(self.gram)

    @cached_property
    def determinant(self) -> int:
        return int(intmat.rational_det(self.gram))

    @cached_property
    def gram_inverse(self) -> tuple[tuple[Fraction, ...], ...]:
        return tuple(tuple(row) for row in intmat.rational_inverse(self.gram))

    @cached_property
    def gram_array(self) -> np.ndarray:
        return np.array(self.gram, dtype=float)

    def basis_vector(self, i: int) -> DualVector:
        return tuple(Fraction(int(i == j)) for j in range(self.rank))


def new_lattice(gram: Sequence[Sequence[int]]) -> Lattice:
    """
    Validate a Gram matrix and wrap it as a Lattice.

    Raises:
        NotSymmetric, NotEven, NotPositiveDefinite

    Example:
        >>> new_lattice([[2, -1], [-1, 2]]).rank
        2
    """
    ok, problem, message = validate_gram(gram)
    if not ok:
        raise {"symmetric": NotSymmetric, "even": NotEven,
               "positive": NotPositiveDefinite}[problem](message)
    return Lattice(tuple(tuple(int(x) for x in row) for row in gram))


def direct_sum(*lattices: Lattice) -> Lattice:
    """Block-diagonal orthogonal sum."""
    r = sum(L.rank for L in lattices)
    gram = [[0] * r for _ in range(r)]
    at = 0
    for L in lattices:
        for i in range(L.rank):
            for j in range(L.rank):
                gram[at + i][at + j] = L.gram[i][j]
        at += L.rank
    return Lattice(tuple(tuple(row) for row in gram))


def dual_vector(coords: Sequence) -> DualVector:
    return tuple(Fraction(x) for x in coords)


# ----------------------------------------------------------------------------
# BILINEAR FORM
# ----------------------------------------------------------------------------

def bilinear(L: Lattice, v: Sequence, w: Sequence) -> Fraction:
    """
    (v|w) = vᵀ·G·w as an exact rational.

    Example:
        >>> bilinear(new_lattice([[2, -1], [-1, 2]]), (1, 0), (0, 1))
        Fraction(-1, 1)
    """
    if len(v) != L.rank or len(w) != L.rank:
        raise DimensionMismatch(f"expected vectors of length {L.rank}, got {len(v)} and {len(w)}")
    total = Fraction(0)
    for i, vi in enumerate(v):
        if vi:
            row = L.gram[i]
            total += Fraction(vi) * sum(row[j] * Fraction(wj) for j, wj in enumerate(w) if wj)
    return total


def norm(L: Lattice, v: Sequence) -> Fraction:
    return bilinear(L, v, v)


def pairing_with_basis(L: Lattice, v: Sequence) -> list[Fraction]:
    """G·v, the pairings (b_i|v). v is in Q* iff all of these are integers."""
    return [sum(L.gram[i][j] * Fraction(v[j]) for j in range(L.rank)) for i in range(L.rank)]


def in_dual(L: Lattice, v: Sequence) -> bool:
    return intmat.is_integral(pairing_with_basis(L, v))


# ----------------------------------------------------------------------------
# DISCRIMINANT GROUP
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class DiscriminantGroup:
    """Q*/Q with SNF generators and canonical coset representatives."""

    lattice: Lattice
    orders: tuple[int, ...]
    generators: tuple[DualVector, ...]
    # Rows of U for the non-trivial invariant factors (coordinate functionals)
    _coord_rows: tuple[tuple[int, ...], ...] = field(repr=False)

    @property
    def cardinality(self) -> int:
        return math.prod(self.orders)

    def coordinates(self, v: Sequence) -> tuple[int, ...]:
        """Generator coordinates of v + Q, each reduced mod its order."""
        gv = pairing_with_basis(self.lattice, v)
        if not intmat.is_integral(gv):
            raise ValueError(f"{tuple(v)} is not in the dual lattice")
        gv = [int(x) for x in gv]
        return tuple(sum(u * x for u, x in zip(row, gv)) % d
                     for row, d in zip(self._coord_rows, self.orders))

    def from_coordinates(self, coords: Sequence[int]) -> DualVector:
        r = self.lattice.rank
        out = [Fraction(0)] * r
        for c, g in zip(coords, self.generators):
            if c:
                for i in range(r):
                    out[i] += c * g[i]
        return tuple(out)

    def canonical(self, v: Sequence) -> DualVector:
        """Canonical representative of v + Q (fundamental-domain coordinates)."""
        return self.from_coordinates(self.coordinates(v))

    def elements(self) -> Iterator[DualVector]:
        """All canonical representatives in lexicographic coordinate order."""
        for coords in itertools.product(*(range(d) for d in self.orders)):
            yield self.from_coordinates(coords)

    def index(self, v: Sequence) -> int:
        """Position of v + Q in elements() order."""
        idx = 0
        for c, d in zip(self.coordinates(v), self.orders):
            idx = idx * d + c
        return idx

    def same_coset(self, v: Sequence, w: Sequence) -> bool:
        return intmat.is_integral(Fraction(a) - Fraction(b) for a, b in zip(v, w))


def discriminant_group(L: Lattice) -> DiscriminantGroup:
    """
    Q*/Q from the Smith normal form of the Gram matrix.

    Example:
        >>> discriminant_group(new_lattice([[2, 0], [0, 6]])).orders
        (2, 6)
    """
    diag, u, v = intmat.smith_normal_decomp(L.gram)
    orders, gens, rows = [], [], []
    for i, d in enumerate(diag):
        if d > 1:
            orders.append(d)
            gens.append(tuple(Fraction(v[k][i], d) for k in range(L.rank)))
            rows.append(tuple(u[i]))
    return DiscriminantGroup(L, tuple(orders), tuple(gens), tuple(rows))


# ----------------------------------------------------------------------------
# VECTOR ENUMERATION
# ----------------------------------------------------------------------------
# Fincke–Pohst: write q(y) = Σ_i d_i (y_i + Σ_{j>i} m_ij y_j)² from a
# Cholesky factor and walk the coordinates from last to first, keeping
# only the interval each coordinate can still occupy. The float intervals
# get a little slack and every survivor is re-checked with exact integers.

_SLACK = 1e-9


def _exact_norm(L: Lattice, shift_num: Sequence[int], den: int, x: Sequence[int]) -> Fraction:
    y = [s + den * xi for s, xi in zip(shift_num, x)]
    total = 0
    for i, yi in enumerate(y):
        if yi:
            row = L.gram[i]
            total += yi * sum(row[j] * yj for j, yj in enumerate(y) if yj)
    return Fraction(total, den * den)


def enumerate_with_norms(L: Lattice, coset_shift: Sequence, norm_bound) -> list[tuple[DualVector, Fraction]]:
    """
    All (γ, |γ|²) with γ ∈ coset_shift + L and |γ|² <= norm_bound, sorted
    lexicographically by γ.
    """
    bound = Fraction(norm_bound)
    if bound < 0:
        return []
    r = L.rank
    shift = [Fraction(x) for x in coset_shift]
    if len(shift) != r:
        raise DimensionMismatch(f"shift has length {len(shift)}, lattice rank is {r}")
    den = intmat.common_denominator(shift)
    shift_num = [int(s * den) for s in shift]

    chol = np.linalg.cholesky(L.gram_array).T  # upper triangular R with G = RᵀR
    diag = np.diag(chol) ** 2
    mu = chol / np.diag(chol)[:, None]
    s_float = np.array([float(s) for s in shift])
    b_float = float(bound) * (1 + _SLACK) + _SLACK
    cap = Config.enum_cap

    found: list[tuple[DualVector, Fraction]] = []
    y = np.zeros(r)
    x = [0] * r

    def walk(i: int, remaining: float) -> None:
        center = -float(np.dot(mu[i, i + 1:], y[i + 1:]))
        radius = math.sqrt(max(remaining, 0.0) / diag[i])
        lo = math.ceil(center - radius - s_float[i] - _SLACK)
        hi = math.floor(center + radius - s_float[i] + _SLACK)
        for xi in range(lo, hi + 1):
            yi = s_float[i] + xi
            rest = remaining - diag[i] * (yi - center) ** 2
            if rest < -_SLACK * (1 + b_float):
                continue
            x[i] = xi
            y[i] = yi
            if i == 0:
                n = _exact_norm(L, shift_num, den, x)
                if n <= bound:
                    found.append((tuple(shift[k] + x[k] for k in range(r)), n))
                    if len(found) > cap:
                        raise BoundTooLarge(bound, cap)
            else:
                walk(i - 1, rest)
        y[i] = 0.0

    if r:
        walk(r - 1, b_float)
    else:
        found.append(((), Fraction(0)))
    found.sort(key=lambda item: item[0])
    logger.debug("enumerated %d vectors of norm <= %s (rank %d)", len(found), bound, r)
    return found


def enumerate_vectors(L: Lattice, coset_shift: Sequence, norm_bound) -> list[DualVector]:
    """
    All γ ∈ coset_shift + L with (γ|γ) <= norm_bound, each once, in
    lexicographic coordinate order.

    Raises:
        BoundTooLarge: more than Config.enum_cap vectors

    Example:
        >>> len(enumerate_vectors(new_lattice([[2, -1], [-1, 2]]), (0, 0), 2))
        7
    """
    return [v for v, _ in enumerate_with_norms(L, coset_shift, norm_bound)]


def box_enumerate_vectors(L: Lattice, coset_shift: Sequence, norm_bound) -> list[DualVector]:
    """
    Naive box search oracle: |y_i| <= sqrt(B·(G⁻¹)_ii) bounds every
    coordinate of a vector of norm <= B.
    """
    bound = Fraction(norm_bound)
    shift = [Fraction(x) for x in coset_shift]
    ranges = []
    for i in range(L.rank):
        half = math.sqrt(float(bound * L.gram_inverse[i][i])) + 1e-9
        lo = math.ceil(-half - float(shift[i]))
        hi = math.floor(half - float(shift[i]))
        ranges.append(range(lo, hi + 1))
    out = []
    for x in itertools.product(*ranges):
        v = tuple(s + xi for s, xi in zip(shift, x))
        if norm(L, v) <= bound:
            out.append(v)
    return sorted(out)


def min_norm_representative(L: Lattice, coset_shift: Sequence) -> tuple[DualVector, Fraction]:
    """
    Minimal-norm element of coset_shift + L (lexicographically first on ties)
    together with its norm.
    """
    shift = [Fraction(x) for x in coset_shift]
    # Any element gives an upper bound; reduce the shift into [0,1) first
    start = tuple(s - math.floor(s) for s in shift)
    bound = norm(L, start)
    candidates = enumerate_with_norms(L, start, bound)
    best = min(n for _, n in candidates)
    vec = min(v for v, n in candidates if n == best)
    return vec, best


# ----------------------------------------------------------------------------
# SUBLATTICES
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class Sublattice:
    """
    A (possibly rational) lattice spanned by the rows of `basis`, written in
    ambient basis coordinates.
    """

    ambient: Lattice
    basis: tuple[DualVector, ...]

    @property
    def rank(self) -> int:
        return len(self.basis)

    @cached_property
    def gram(self) -> tuple[tuple[Fraction, ...], ...]:
        return tuple(tuple(bilinear(self.ambient, a, b) for b in self.basis) for a in self.basis)

    @cached_property
    def determinant(self) -> Fraction:
        return intmat.rational_det(self.gram)

    def contains(self, v: Sequence) -> bool:
        coeffs = intmat.coordinates_in(self.basis, [list(v)])
        return coeffs is not None and intmat.is_integral(coeffs[0])

    def coordinates(self, v: Sequence) -> tuple[Fraction, ...] | None:
        """Coefficients of v in this basis, or None if v is outside the span."""
        coeffs = intmat.coordinates_in(self.basis, [list(v)])
        return None if coeffs is None else tuple(coeffs[0])

    def to_ambient(self, coeffs: Sequence) -> DualVector:
        out = [Fraction(0)] * self.ambient.rank
        for c, b in zip(coeffs, self.basis):
            if c:
                for i in range(len(out)):
                    out[i] += Fraction(c) * b[i]
        return tuple(out)

    def dual_in_span(self) -> "Sublattice":
        """Basis of {v in span : (v|s) ∈ Z for all s in self}."""
        if not self.basis:
            return self
        inv = intmat.rational_inverse(self.gram)
        rows = intmat.mat_mul(inv, [list(b) for b in self.basis])
        return Sublattice(self.ambient, tuple(tuple(r) for r in rows))

    def as_lattice(self, scale: int = 1) -> Lattice:
        """The Gram matrix scale·(b_i|b_j) as a standalone integral lattice."""
        rows = [[scale * x for x in row] for row in self.gram]
        if not intmat.is_integral(x for row in rows for x in row):
            raise ValueError(f"scaled Gram matrix {rows} is not integral")
        return Lattice(tuple(tuple(int(x) for x in row) for row in rows))


def sublattice(L: Lattice, rows: Sequence[Sequence]) -> Sublattice:
    """Wrap independent rows as a Sublattice (no reduction)."""
    basis = tuple(dual_vector(r) for r in rows)
    if intmat.rational_rank(basis) != len(basis):
        raise ValueError("sublattice basis rows are linearly dependent")
    return Sublattice(L, basis)


def span_sublattice(L: Lattice, generators: Sequence[Sequence]) -> Sublattice:
    """Sublattice spanned by arbitrary (possibly dependent) rational generators, HNF basis."""
    return Sublattice(L, tuple(tuple(r) for r in intmat.rational_hnf(generators)))


def sublattice_index(S: Sublattice, T: Sublattice) -> int:
    """
    |S/T| for T ⊆ S of equal rank.

    Raises:
        RankMismatch, NotSublattice

    Example:
        >>> A3 = new_lattice([[2, -1, 0], [-1, 2, -1], [0, -1, 2]])
        >>> S = sublattice(A3, [(Fraction(1, 2), 0, Fraction(1, 2)), (0, 1, 0)])
        >>> T = sublattice(A3, [(1, 0, 1), (0, 1, 0)])
        >>> sublattice_index(S, T)
        2
    """
    if S.rank != T.rank:
        raise RankMismatch(f"ranks differ: {S.rank} vs {T.rank}")
    if S.rank == 0:
        return 1
    change = intmat.coordinates_in(S.basis, T.basis)
    if change is None or not intmat.is_integral(x for row in change for x in row):
        raise NotSublattice("second lattice is not contained in the first")
    return abs(int(intmat.rational_det(change)))


def intersect(S: Sublattice, T: Sublattice) -> Sublattice:
    """
    S ∩ T via the integer kernel of [S; -T].

    Example:
        >>> L = new_lattice([[2, 0], [0, 2]])
        >>> intersect(sublattice(L, [(1, 0)]), sublattice(L, [(0, 1)])).rank
        0
    """
    if not S.basis or not T.basis:
        return Sublattice(S.ambient, ())
    rows = [list(b) for b in S.basis] + [[-x for x in b] for b in T.basis]
    den = intmat.common_denominator(x for r in rows for x in r)
    cols = intmat.transpose([[int(x * den) for x in r] for r in rows])
    kernel = intmat.integer_kernel(cols)
    gens = [intmat.vec_mat(k[:S.rank], [list(b) for b in S.basis]) for k in kernel]
    return span_sublattice(S.ambient, gens)

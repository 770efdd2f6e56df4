# ============================================================================
# ISOMETRY MODULE
# ============================================================================
# Finite-order isometries σ of a lattice Q and everything derived from them.
#
# CONVENTIONS:
# - σ is an integer matrix U acting on coordinate columns: σ(v) = U·v.
#   It is an isometry when Uᵀ·G·U = G.
# - h₀ is the fixed space of σ, h_⊥ its orthogonal complement.
#   π₀ = (1/N)·Σ σ^m is the orthogonal projection onto h₀.
# - M = Q ∩ h₀ (fixed sublattice), Q ∩ h_⊥ (perp sublattice).
# - For prime order p every non-trivial eigenvalue has the same
#   multiplicity; we call it `dperp` (= dim h_{1/p}), so
#   dim h_⊥ = (p-1)·dperp and r₀ = dim h₀.
#
# WHAT IS Q-BAR?
# For even order the lift of σ to the vertex algebra may have order 2N.
# Q̄ is the index ≤ 2 sublattice of α with Σ_m (α|σ^m α) even, on which
# the lift keeps order N. For odd N it is all of Q.
#
# WHAT IS THE DEFECT?
# d(σ)² = |(Q ∩ h_⊥) / (Q ∩ (1-σ)Q*)|. It is 1 whenever
# (1-σ)Q already equals Q ∩ h_⊥.
#
# Last updated: 17 October 2026
# ============================================================================

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Sequence

import sympy

from orbichar.config import Config
from orbichar.exceptions import (
    InfiniteOrder,
    NonIntegerCardinality,
    NotIsometry,
    NotPerfectSquare,
    UnsupportedOrder,
)
from orbichar.lattice import (
    DiscriminantGroup,
    DualVector,
    Lattice,
    Sublattice,
    discriminant_group,
    intersect,
    new_lattice,
    span_sublattice,
    sublattice_index,
)
from orbichar.utils import intmat
from orbichar.utils.validation import validate_isometry_matrix

logger = logging.getLogger(__name__)

__all__ = [
    "Isometry",
    "EigenData",
    "OrbitDecomposition",
    "SigmaData",
    "new_isometry",
    "fixed_projector",
    "fixed_sublattice",
    "perp_sublattice",
    "projected_lattice",
    "qbar_sublattice",
    "restrict_to_qbar",
    "qbar_index",
    "defect",
    "delta_sigma",
    "eigen_data",
    "trace_s",
    "det_perp",
    "orbit_decomposition",
    "z_mu_cardinality",
    "fixed_representative",
    "sigma_data",
]


# ----------------------------------------------------------------------------
# ISOMETRY TYPE
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class Isometry:
    """A finite-order isometry of `lattice`, acting on coordinate columns."""

    lattice: Lattice
    matrix: tuple[tuple[int, ...], ...]
    order: int

    @property
    def is_prime_order(self) -> bool:
        return sympy.isprime(self.order)

    def power_matrix(self, k: int) -> list[list[int]]:
        k %= self.order
        out = intmat.eye(self.lattice.rank)
        for _ in range(k):
            out = intmat.mat_mul(self.matrix, out)
        return out

    def apply(self, v: Sequence, k: int = 1) -> DualVector:
        """σ^k(v)."""
        return tuple(Fraction(x) for x in intmat.mat_vec(self.power_matrix(k), [Fraction(y) for y in v]))

    def power(self, l: int) -> "Isometry":
        """σ^l as an Isometry (same order when l is coprime to N)."""
        m = self.power_matrix(l)
        return new_isometry(self.lattice, m)


def new_isometry(L: Lattice, U: Sequence[Sequence[int]]) -> Isometry:
    """
    Validate an integer matrix as an isometry of L and compute its order.

    Raises:
        NotIsometry: wrong shape or Uᵀ·G·U != G
        InfiniteOrder: no power up to Config.order_cap is the identity

    Example:
        >>> A2 = new_lattice([[2, -1], [-1, 2]])
        >>> new_isometry(A2, [[0, 1], [1, 0]]).order
        2
    """
    ok, message = validate_isometry_matrix(U, L.rank)
    if not ok:
        raise NotIsometry(message)
    m = [list(map(int, row)) for row in U]
    ut = intmat.transpose(m)
    if intmat.mat_mul(intmat.mat_mul(ut, [list(r) for r in L.gram]), m) != [list(r) for r in L.gram]:
        raise NotIsometry("matrix does not preserve the Gram form (Uᵀ·G·U != G)")

    ident = intmat.eye(L.rank)
    power = m
    for n in range(1, Config.order_cap + 1):
        if power == ident:
            return Isometry(L, tuple(tuple(r) for r in m), n)
        power = intmat.mat_mul(m, power)
    raise InfiniteOrder(f"no power up to {Config.order_cap} is the identity")


# ----------------------------------------------------------------------------
# PROJECTOR AND SUBLATTICES
# ----------------------------------------------------------------------------

def fixed_projector(sigma: Isometry) -> list[list[Fraction]]:
    """
    π₀ = (1/N)·Σ_m σ^m as an exact rational matrix.

    Example:
        >>> A2 = new_lattice([[2, -1], [-1, 2]])
        >>> fixed_projector(new_isometry(A2, [[0, 1], [1, 0]]))[0]
        [Fraction(1, 2), Fraction(1, 2)]
    """
    total = _power_sum(sigma)
    n = sigma.order
    return [[Fraction(x, n) for x in row] for row in total]


def _power_sum(sigma: Isometry) -> list[list[int]]:
    r = sigma.lattice.rank
    total = [[0] * r for _ in range(r)]
    power = intmat.eye(r)
    for _ in range(sigma.order):
        total = [[a + b for a, b in zip(x, y)] for x, y in zip(total, power)]
        power = intmat.mat_mul(sigma.matrix, power)
    return total


def fixed_sublattice(sigma: Isometry) -> Sublattice:
    """M = Q ∩ h₀, the integer kernel of (1 - σ)."""
    r = sigma.lattice.rank
    rows = [[sigma.matrix[i][j] - int(i == j) for j in range(r)] for i in range(r)]
    return Sublattice(sigma.lattice, tuple(tuple(Fraction(x) for x in b) for b in intmat.integer_kernel(rows)))


def perp_sublattice(sigma: Isometry) -> Sublattice:
    """Q ∩ h_⊥ = {α ∈ Q : Σ_m σ^m α = 0}."""
    basis = intmat.integer_kernel(_power_sum(sigma))
    return Sublattice(sigma.lattice, tuple(tuple(Fraction(x) for x in b) for b in basis))


def projected_lattice(sigma: Isometry, which: str = "Q") -> Sublattice:
    """
    π₀(Q) or π₀(Q*) as a rational lattice inside h₀ (HNF basis).

    Args:
        which: "Q" or "Q*"
    """
    pi0 = fixed_projector(sigma)
    r = sigma.lattice.rank
    if which == "Q":
        cols = [[Fraction(int(i == j)) for i in range(r)] for j in range(r)]
    elif which in ("Q*", "Qstar", "dual"):
        inv = sigma.lattice.gram_inverse
        cols = [[inv[i][j] for i in range(r)] for j in range(r)]
    else:
        raise ValueError(f"which must be 'Q' or 'Q*', got {which!r}")
    gens = [intmat.mat_vec(pi0, c) for c in cols]
    return span_sublattice(sigma.lattice, gens)


def _full_lattice(L: Lattice) -> Sublattice:
    return Sublattice(L, tuple(L.basis_vector(i) for i in range(L.rank)))


def _parity(sigma: Isometry, v: Sequence[int]) -> int:
    """Σ_m (v|σ^m v) mod 2."""
    total = 0
    for m in range(sigma.order):
        w = intmat.mat_vec(sigma.power_matrix(m), v)
        total += sum(v[i] * sigma.lattice.gram[i][j] * w[j]
                     for i in range(len(v)) for j in range(len(v)))
    return total % 2


def qbar_sublattice(sigma: Isometry) -> Sublattice:
    """
    Q̄: kernel of the parity character α ↦ Σ_m (α|σ^m α) mod 2.

    Returns Q itself for odd order.
    """
    L = sigma.lattice
    if sigma.order % 2:
        return _full_lattice(L)
    basis = [[int(i == j) for j in range(L.rank)] for i in range(L.rank)]
    failing = [b for b in basis if _parity(sigma, b)]
    if not failing:
        return _full_lattice(L)
    # The parity map is additive mod 2, so its kernel is generated by the
    # passing basis vectors, b_j + b_0 for the failing ones, and 2·b_0
    b0 = failing[0]
    gens = [b for b in basis if not _parity(sigma, b)]
    gens += [[x + y for x, y in zip(b, b0)] for b in failing[1:]]
    gens.append([2 * x for x in b0])
    return span_sublattice(L, gens)


def qbar_index(sigma: Isometry) -> int:
    """|Q / Q̄|, which is 1 or 2."""
    return sublattice_index(_full_lattice(sigma.lattice), qbar_sublattice(sigma))


def restrict_to_qbar(sigma: Isometry) -> tuple[Lattice, Isometry]:
    """
    Rewrite (Q, σ) in a basis of Q̄: returns the Gram matrix of Q̄ and the
    induced isometry. A no-op basis change when Q = Q̄.
    """
    qbar = qbar_sublattice(sigma)
    rows = [list(b) for b in qbar.basis]
    new_gram = [[int(x) for x in row] for row in qbar.gram]
    images = [intmat.mat_vec(sigma.matrix, b) for b in rows]
    coords = intmat.coordinates_in(rows, images)
    # column i of the new matrix = coordinates of σ(b_i)
    new_matrix = [[int(coords[j][i]) for j in range(len(rows))] for i in range(len(rows))]
    L = new_lattice(new_gram)
    return L, new_isometry(L, new_matrix)


# ----------------------------------------------------------------------------
# EIGEN DATA
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class EigenData:
    """
    Dimensions of the eigenspaces h_{j/N}.

    For prime order: dims = [r0, dperp, ..., dperp] and the permutation-style
    orbit counts e (singletons) and d (p-orbits) satisfy e = r0 - dperp,
    d = dperp. For non-permutation σ, e may be negative.
    """

    dims: tuple[int, ...]
    r0: int
    dperp: int | None
    singleton_orbits: int | None
    p_orbits: int | None


def eigen_data(sigma: Isometry) -> EigenData:
    """Eigenspace dimensions from the ranks of Φ_m(σ) for m | N."""
    n = sigma.order
    r = sigma.lattice.rank
    u = sympy.Matrix(sigma.matrix)
    x = sympy.symbols("x")
    mult: dict[int, int] = {}
    for m in sympy.divisors(n):
        poly = sympy.Poly(sympy.cyclotomic_poly(m, x), x)
        value = sympy.zeros(r, r)
        for c in poly.all_coeffs():
            value = value * u + c * sympy.eye(r)
        nullity = r - value.rank()
        mult[m] = nullity // sympy.totient(m)
    dims = tuple(int(mult[n // math.gcd(j, n)]) for j in range(n))
    r0 = dims[0]
    if sympy.isprime(n):
        dperp = dims[1]
        return EigenData(dims, r0, dperp, r0 - dperp, dperp)
    return EigenData(dims, r0, None, None, None)


def trace_s(sigma: Isometry) -> Fraction:
    """tr s with s = -j/N on h_{j/N}; equals -½·dim h_⊥."""
    data = eigen_data(sigma)
    n = sigma.order
    return -sum(Fraction(j, n) * data.dims[j] for j in range(1, n))


def delta_sigma(sigma: Isometry) -> Fraction:
    """
    Δ_σ = ¼·Σ_{j=1}^{N-1} (j/N)(1 - j/N)·dim h_{j/N}.

    Example:
        >>> A3 = new_lattice([[2, -1, 0], [-1, 2, -1], [0, -1, 2]])
        >>> delta_sigma(new_isometry(A3, [[0, 0, 1], [0, 1, 0], [1, 0, 0]]))
        Fraction(1, 16)
    """
    data = eigen_data(sigma)
    n = sigma.order
    return sum((Fraction(j, n) * (1 - Fraction(j, n)) * data.dims[j] for j in range(1, n)),
               Fraction(0)) / 4


def det_perp(sigma: Isometry, k: int) -> Fraction:
    """det of (1 - σ^k) restricted to h_⊥ (exact)."""
    perp = perp_sublattice(sigma)
    if not perp.basis:
        return Fraction(1)
    r = sigma.lattice.rank
    pk = sigma.power_matrix(k)
    op = [[int(i == j) - pk[i][j] for j in range(r)] for i in range(r)]
    images = [intmat.mat_vec(op, b) for b in perp.basis]
    coords = intmat.coordinates_in(perp.basis, images)
    return intmat.rational_det(intmat.transpose(coords))


# ----------------------------------------------------------------------------
# DEFECT AND CARDINALITIES
# ----------------------------------------------------------------------------

def _one_minus_sigma(sigma: Isometry, vectors: Sequence[Sequence]) -> list[list[Fraction]]:
    return [[Fraction(x) - y for x, y in zip(v, intmat.mat_vec(sigma.matrix, [Fraction(t) for t in v]))]
            for v in vectors]


def defect(sigma: Isometry) -> int:
    """
    d(σ) with d² = |(Q ∩ h_⊥)/(Q ∩ (1-σ)Q*)|.

    Raises:
        NotPerfectSquare: the index is not a square (inconsistent data)
    """
    L = sigma.lattice
    perp = perp_sublattice(sigma)
    if not perp.basis:
        return 1
    ident = [L.basis_vector(i) for i in range(L.rank)]
    one_minus_q = span_sublattice(L, _one_minus_sigma(sigma, ident))
    if intmat.rational_hnf(one_minus_q.basis) == intmat.rational_hnf(perp.basis):
        return 1
    dual_basis = [[L.gram_inverse[i][j] for i in range(L.rank)] for j in range(L.rank)]
    one_minus_qstar = span_sublattice(L, _one_minus_sigma(sigma, dual_basis))
    q_sigma = intersect(_full_lattice(L), one_minus_qstar)
    index = sublattice_index(perp, q_sigma)
    root = math.isqrt(index)
    if root * root != index:
        raise NotPerfectSquare(f"defect index {index} is not a perfect square")
    return root


def z_mu_cardinality(sigma: Isometry) -> int:
    """
    |Z_μ| = p^{dperp} / (d(σ)²·|π₀(Q)/M|), an integer power of p.

    Raises:
        UnsupportedOrder, NonIntegerCardinality
    """
    p = sigma.order
    if not sympy.isprime(p):
        raise UnsupportedOrder(p, "z_mu_cardinality")
    dperp = eigen_data(sigma).dperp
    index = sublattice_index(projected_lattice(sigma, "Q"), fixed_sublattice(sigma))
    d = defect(sigma)
    value = Fraction(p ** dperp, d * d * index)
    if value.denominator != 1:
        raise NonIntegerCardinality(f"|Z_mu| = {value} is not an integer")
    z = int(value)
    if not _is_power_of(z, p):
        raise NonIntegerCardinality(f"|Z_mu| = {z} is not a power of {p}")
    logger.debug("|Z_mu| = %d from p^dperp = %d, d = %d, |pi0Q/M| = %d", z, p ** dperp, d, index)
    return z


def _is_power_of(n: int, p: int) -> bool:
    while n > 1 and n % p == 0:
        n //= p
    return n == 1


# ----------------------------------------------------------------------------
# ORBITS ON THE DISCRIMINANT GROUP
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class OrbitDecomposition:
    """σ-fixed cosets of Q*/Q and one representative per orbit of order N."""

    fixed: tuple[DualVector, ...]
    orbits: tuple[DualVector, ...]
    # canonical coset index -> index (in elements order) of its orbit representative
    representative_index: dict[int, int] = field(repr=False, compare=False, hash=False)


def orbit_decomposition(sigma: Isometry) -> OrbitDecomposition:
    """
    Split Q*/Q into fixed cosets and order-p orbits.

    Raises:
        UnsupportedOrder: non-prime order
    """
    if not sigma.is_prime_order:
        raise UnsupportedOrder(sigma.order, "orbit_decomposition")
    group = discriminant_group(sigma.lattice)
    elements = list(group.elements())
    rep_index: dict[int, int] = {}
    fixed, orbits = [], []
    for idx, lam in enumerate(elements):
        if idx in rep_index:
            continue
        members = {idx}
        image = lam
        for _ in range(sigma.order - 1):
            image = sigma.apply(image)
            members.add(group.index(image))
        rep = min(members)
        for m in members:
            rep_index[m] = rep
        if len(members) == 1:
            fixed.append(lam)
        else:
            orbits.append(elements[rep])
    if len(fixed) + sigma.order * len(orbits) != group.cardinality:
        raise RuntimeError("orbit partition does not cover Q*/Q")
    return OrbitDecomposition(tuple(fixed), tuple(orbits), rep_index)


def fixed_representative(sigma: Isometry, lam: Sequence) -> DualVector | None:
    """
    A σ-fixed element of lam + Q, or None if (lam + Q) ∩ h₀ is empty.

    Solves (U - 1)·x = (1 - U)·lam over the integers.
    """
    r = sigma.lattice.rank
    lam = [Fraction(x) for x in lam]
    rows = [[sigma.matrix[i][j] - int(i == j) for j in range(r)] for i in range(r)]
    rhs = [-x for x in intmat.mat_vec(rows, lam)]
    if not intmat.is_integral(rhs):
        return None
    x = intmat.solve_integer(rows, [int(t) for t in rhs])
    if x is None:
        return None
    return tuple(a + b for a, b in zip(lam, x))


# ----------------------------------------------------------------------------
# CACHED σ-DATA SNAPSHOT
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class SigmaData:
    """Lazily computed bundle of everything the character formulas need."""

    sigma: Isometry

    @property
    def lattice(self) -> Lattice:
        return self.sigma.lattice

    @property
    def p(self) -> int:
        return self.sigma.order

    @property
    def rank(self) -> int:
        return self.sigma.lattice.rank

    @cached_property
    def eigen(self) -> EigenData:
        return eigen_data(self.sigma)

    @property
    def r0(self) -> int:
        return self.eigen.r0

    @property
    def dperp(self) -> int:
        return self.eigen.dperp or 0

    @cached_property
    def delta(self) -> Fraction:
        return delta_sigma(self.sigma)

    @cached_property
    def defect(self) -> int:
        return defect(self.sigma)

    @cached_property
    def z_mu(self) -> int:
        return z_mu_cardinality(self.sigma)

    @cached_property
    def group(self) -> DiscriminantGroup:
        return discriminant_group(self.lattice)

    @cached_property
    def orbits(self) -> OrbitDecomposition:
        return orbit_decomposition(self.sigma)

    @cached_property
    def fixed_lattice(self) -> Sublattice:
        return fixed_sublattice(self.sigma)

    @cached_property
    def perp_lattice(self) -> Sublattice:
        return perp_sublattice(self.sigma)

    @cached_property
    def pi0_q(self) -> Sublattice:
        return projected_lattice(self.sigma, "Q")

    @cached_property
    def pi0_qstar(self) -> Sublattice:
        return projected_lattice(self.sigma, "Q*")

    @cached_property
    def projector(self) -> list[list[Fraction]]:
        return fixed_projector(self.sigma)

    @cached_property
    def index_pi0q_m(self) -> int:
        return sublattice_index(self.pi0_q, self.fixed_lattice)

    @cached_property
    def index_mstar_m(self) -> int:
        """|M*/M| = det of the Gram matrix of M."""
        return int(self.fixed_lattice.determinant)

    @cached_property
    def fixed_reps(self) -> dict[int, DualVector | None]:
        """Fixed coset index -> σ-fixed representative (None if none exists)."""
        return {self.group.index(lam): fixed_representative(self.sigma, lam)
                for lam in self.orbits.fixed}

    @cached_property
    def scaled_lattice(self) -> Lattice:
        """√p·π₀(Q) as a standalone even lattice, in the π₀(Q) HNF basis."""
        return self.pi0_q.as_lattice(scale=self.p)


@lru_cache(maxsize=64)
def sigma_data(sigma: Isometry) -> SigmaData:
    return SigmaData(sigma)

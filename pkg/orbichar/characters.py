# ============================================================================
# CHARACTERS MODULE
# ============================================================================
# Irreducible V_Q^σ-modules for σ of prime order p, and their characters.
#
# THE THREE KINDS OF MODULE:
# - Type 1  V[λ]^j      λ + Q a σ-fixed coset, j ∈ 0..p-1 the eigenvalue
#                       ω^j of the lifted σ (p modules per fixed coset)
# - Type 2  V[γ]        a σ-orbit of p distinct cosets; the module is the
#                       untwisted V_{γ+Q} itself
# - Type 3  M[μ,ζ;σ^l]^j  σ^l-twisted modules, μ ∈ π₀(Q*)/π₀(Q),
#                       ζ ∈ 1..|Z_μ|, l ∈ 1..p-1, j the eigenvalue of σ^l
#
# TRACE FUNCTIONS:
# Every character is a projector average of trace functions
#   U(λ, m) = χ^{1,σ^m}_{λ+Q}         (σ^m inserted in an untwisted trace)
#   W(μ, l, m) = χ^{σ^l,σ^m}_μ        (σ^m inserted in a σ^l-twisted trace)
# identified by a TraceKey. W does not depend on ζ, so keys drop it.
#
#   V[λ]^j        = (1/p)·Σ_m ω^{jm}·U(λ, m)
#   V[γ]          = U(γ, 0)
#   M[μ,ζ;σ^l]^j  = (1/p)·Σ_k ω^{jk}·W(μ, l, l·k)
#
# Numeric values go through modular_functions.theta / p_denominator;
# exact q-expansions divide exact theta series by exact denominators.
#
# Last updated: 17 October 2026
# ============================================================================

from __future__ import annotations

import cmath
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from orbichar.exceptions import (
    CharacterError,
    DimensionMismatch,
    InvalidTwist,
    NotPrime,
    NotProjected,
    QbarMismatch,
    UnsupportedOrder,
)
from orbichar.isometry import Isometry, SigmaData, fixed_representative, new_isometry, qbar_index, sigma_data
from orbichar.lattice import (
    DualVector,
    Lattice,
    direct_sum,
    discriminant_group,
    enumerate_with_norms,
    min_norm_representative,
    norm,
)
from orbichar.modular_functions import (
    ModularPoint,
    eta,
    p_denominator,
    p_denominator_leading_exponent,
    p_denominator_qseries,
    theta,
    theta_qseries,
)
from orbichar.utils.qseries import CycloInt, QSeries
from orbichar.utils.validation import validate_prime

logger = logging.getLogger(__name__)

__all__ = [
    "TYPE1",
    "TYPE2",
    "TYPE3",
    "OrbifoldModuleLabel",
    "TwistedCoset",
    "Classification",
    "ConformalWeight",
    "TraceKey",
    "classify",
    "twisted_cosets",
    "char_untwisted_trace",
    "char_twisted_trace",
    "char_orbifold",
    "trace_value",
    "untwisted_trace_qseries",
    "twisted_trace_qseries",
    "trace_qexpansion",
    "char_orbifold_qexpansion",
    "conformal_weight",
    "label_traces",
    "trace_to_labels",
    "permutation_lattice",
    "permutation_orbifold",
    "permutation_untwisted_trace",
    "permutation_twisted_trace",
    "format_vector",
]

TYPE1 = "type1"
TYPE2 = "type2"
TYPE3 = "type3"


def format_vector(v: Sequence) -> str:
    """(1/2,0,1/2) style rendering of a rational coordinate vector."""
    return "(" + ",".join(str(Fraction(x)) for x in v) + ")"


def _as_point(point) -> ModularPoint:
    return point if isinstance(point, ModularPoint) else ModularPoint(complex(point))


def _omega(p: int, k: int) -> complex:
    return cmath.exp(2j * math.pi * (k % p) / p)


# ----------------------------------------------------------------------------
# LABELS AND CLASSIFICATION
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class OrbifoldModuleLabel:
    """
    One irreducible V_Q^σ-module.

    `vector` is the minimal-norm representative (λ, γ or μ, in lattice
    coordinates); `coset` its position in the discriminant group (Types 1
    and 2) or in the list of twisted cosets (Type 3).
    """

    kind: str
    vector: DualVector
    coset: int
    j: int = 0
    l: int = 0
    zeta: int = 0
    sigma: Isometry | None = field(default=None, compare=False, repr=False)

    @property
    def display_name(self) -> str:
        v = format_vector(self.vector)
        if self.kind == TYPE1:
            return f"V[{v}]^{self.j}"
        if self.kind == TYPE2:
            return f"V[{v}]"
        return f"M[{v},{self.zeta};σ^{self.l}]^{self.j}"

    @property
    def is_vacuum(self) -> bool:
        return self.kind == TYPE1 and self.j == 0 and not any(self.vector)


@dataclass(frozen=True)
class TwistedCoset:
    """μ + π₀(Q) with μ of minimal norm; `coords` are its √p·π₀(Q) coordinates."""

    vector: DualVector
    coords: DualVector
    norm: Fraction


@dataclass(frozen=True)
class ConformalWeight:
    value: Fraction


@dataclass(frozen=True)
class TraceKey:
    """U(coset, m) when kind == "U"; W(coset, l, m) when kind == "W"."""

    kind: str
    coset: int
    l: int
    m: int

    def __str__(self) -> str:
        if self.kind == "U":
            return f"U({self.coset}; σ^{self.m})"
        return f"W({self.coset}; σ^{self.l}, σ^{self.m})"


@dataclass(frozen=True)
class Classification:
    """Ordered label list plus the σ-data it was built from."""

    data: SigmaData
    labels: tuple[OrbifoldModuleLabel, ...]
    mus: tuple[TwistedCoset, ...]
    counts: dict = field(compare=False, hash=False)

    @property
    def sigma(self) -> Isometry:
        return self.data.sigma

    @property
    def p(self) -> int:
        return self.data.p

    @property
    def total(self) -> int:
        return len(self.labels)

    @cached_property
    def elements(self) -> tuple[DualVector, ...]:
        return tuple(self.data.group.elements())

    @cached_property
    def _positions(self) -> dict[tuple, int]:
        return {(lab.kind, lab.coset, lab.j, lab.l, lab.zeta): i for i, lab in enumerate(self.labels)}

    def position(self, kind: str, coset: int, j: int = 0, l: int = 0, zeta: int = 0) -> int:
        return self._positions[(kind, coset, j, l, zeta)]

    def index(self, label: OrbifoldModuleLabel) -> int:
        return self.position(label.kind, label.coset, label.j, label.l, label.zeta)

    def untwisted_index(self, lam: Sequence) -> int:
        return self.data.group.index(lam)

    def twisted_index(self, mu: Sequence) -> int:
        """Position of the coset μ + π₀(Q) among `mus`."""
        for i, coset in enumerate(self.mus):
            if self.data.pi0_q.contains(tuple(Fraction(a) - b for a, b in zip(mu, coset.vector))):
                return i
        raise NotProjected(f"{format_vector(mu)} is not in π₀(Q*)")

    def is_fixed_coset(self, coset: int) -> bool:
        return coset in self.data.fixed_reps


def twisted_cosets(data: SigmaData) -> tuple[TwistedCoset, ...]:
    """
    π₀(Q*)/π₀(Q), read off the discriminant group of √p·π₀(Q) and
    filtered to π₀(Q*), each coset with its minimal-norm μ.
    """
    scaled = data.scaled_lattice
    out = []
    for z in discriminant_group(scaled).elements():
        nu = data.pi0_q.to_ambient(z)
        if not data.pi0_qstar.contains(nu):
            continue
        zmin, n = min_norm_representative(scaled, z)
        out.append(TwistedCoset(data.pi0_q.to_ambient(zmin), zmin, n / data.p))
    return tuple(out)


def _canonical_twisted(data: SigmaData, mu: Sequence) -> TwistedCoset:
    mu = tuple(Fraction(x) for x in mu)
    if not data.pi0_qstar.contains(mu):
        raise NotProjected(f"{format_vector(mu)} is not in π₀(Q*)")
    z = data.pi0_q.coordinates(mu)
    zmin, n = min_norm_representative(data.scaled_lattice, z)
    return TwistedCoset(data.pi0_q.to_ambient(zmin), zmin, n / data.p)


def classify(L: Lattice, sigma: Isometry) -> Classification:
    """
    The complete list of irreducible V_Q^σ-modules.

    Args:
        L: the lattice Q
        sigma: an isometry of L of prime order p (for p = 2, Q must equal Q̄)

    Returns:
        Classification: labels ordered Type 1 (coset, j), Type 2 (orbit),
        Type 3 (μ, ζ, l, j)

    Raises:
        UnsupportedOrder, QbarMismatch

    Example:
        >>> A3 = new_lattice([[2, -1, 0], [-1, 2, -1], [0, -1, 2]])
        >>> classify(A3, new_isometry(A3, [[0, 0, 1], [0, 1, 0], [1, 0, 0]])).total
        9
    """
    if sigma.lattice != L:
        raise DimensionMismatch("the isometry is defined on a different lattice")
    if not sigma.is_prime_order:
        raise UnsupportedOrder(sigma.order, "classify")
    data = sigma_data(sigma)
    p = data.p
    if p == 2 and qbar_index(sigma) != 1:
        raise QbarMismatch("for p = 2 the lattice must equal Q̄; rewrite it with restrict_to_qbar(sigma) first")

    group = data.group
    labels: list[OrbifoldModuleLabel] = []
    for lam in data.orbits.fixed:
        vec, _ = min_norm_representative(L, lam)
        idx = group.index(lam)
        labels.extend(OrbifoldModuleLabel(TYPE1, vec, idx, j=j, sigma=sigma) for j in range(p))
    for gam in data.orbits.orbits:
        vec, _ = min_norm_representative(L, gam)
        labels.append(OrbifoldModuleLabel(TYPE2, vec, group.index(gam), sigma=sigma))

    mus = twisted_cosets(data)
    z_mu = data.z_mu
    for i, coset in enumerate(mus):
        for zeta in range(1, z_mu + 1):
            for l in range(1, p):
                labels.extend(OrbifoldModuleLabel(TYPE3, coset.vector, i, j=j, l=l, zeta=zeta, sigma=sigma)
                              for j in range(p))

    counts = {
        TYPE1: p * len(data.orbits.fixed),
        TYPE2: len(data.orbits.orbits),
        TYPE3: p * (p - 1) * z_mu * len(mus),
    }
    if sum(counts.values()) != len(labels):
        raise RuntimeError(f"label count {len(labels)} does not match {counts}")
    logger.debug("classified %d modules: %s", len(labels), counts)
    return Classification(data, tuple(labels), mus, counts)


# ----------------------------------------------------------------------------
# NUMERIC TRACE FUNCTIONS
# ----------------------------------------------------------------------------

def _h_coordinates(sub, h, scale: int = 1):
    """Coordinates of h ∈ h₀ in the basis of `sub`, divided by `scale`."""
    if h is None:
        return None
    coords = sub.coordinates(tuple(Fraction(x) for x in h))
    if coords is None:
        raise CharacterError(f"h = {tuple(h)} does not lie in the fixed space h₀")
    return tuple(float(c) / scale for c in coords)


def _check_fixed(data: SigmaData, lam: Sequence) -> None:
    if not data.group.same_coset(data.sigma.apply(lam), lam):
        raise InvalidTwist(f"(1-σ){format_vector(lam)} is not in Q; σ^k cannot be inserted")


def char_untwisted_trace(sigma: Isometry, lam: Sequence, k: int, point, tol=None) -> complex:
    """
    χ^{1,σ^k}_{λ+Q}(τ, h).

    k = 0 gives θ_{λ+Q}(τ,h)/η(τ)^r. For k ≠ 0 the coset is shifted to a
    σ-fixed representative λ' and the trace is θ_{λ'+M}(τ,h)/P_{1,σ}(τ);
    it is 0 when λ + Q meets h₀ nowhere.

    Raises:
        InvalidTwist: k ≠ 0 on a coset that σ moves
    """
    data = sigma_data(sigma)
    point = _as_point(point)
    k %= data.p
    if k == 0:
        return theta(data.lattice, lam, point, tol) / p_denominator(data, 0, point.tau, tol, twist=0)
    if not sigma.is_prime_order:
        raise UnsupportedOrder(sigma.order, "char_untwisted_trace with k != 0")
    _check_fixed(data, lam)
    rep = fixed_representative(sigma, lam)
    if rep is None:
        return 0j
    fixed = data.fixed_lattice
    inner = ModularPoint(point.tau, _h_coordinates(fixed, point.z), point.u)
    value = theta(fixed.as_lattice(), fixed.coordinates(rep), inner, tol)
    return value / p_denominator(data, k, point.tau, tol, twist=0)


def char_twisted_trace(sigma: Isometry, mu: Sequence, l: int, k: int, point, tol=None) -> complex:
    """
    χ^{σ^l,σ^k}_μ(τ, h) = χ^{σ,σ^k'}_μ with k' = k·l⁻¹ mod p, where

        χ^{σ,σ^k'}_μ = d(σ)·e^{-πik'|μ|²}·θ_{√pμ+√pπ₀(Q)}((τ+k')/p, h/√p) / P_{σ,σ^k'}(τ)

    and μ is the minimal-norm representative of μ + π₀(Q).

    Raises:
        NotProjected, InvalidTwist, UnsupportedOrder
    """
    if not sigma.is_prime_order:
        raise UnsupportedOrder(sigma.order, "char_twisted_trace")
    data = sigma_data(sigma)
    p = data.p
    if l % p == 0:
        raise InvalidTwist("a twisted trace needs 1 <= l <= p-1")
    coset = _canonical_twisted(data, mu)
    kk = (k * pow(l, -1, p)) % p
    point = _as_point(point)
    tau = complex(point.tau)
    inner = ModularPoint((tau + kk) / p, _h_coordinates(data.pi0_q, point.z, scale=p), point.u)
    value = theta(data.scaled_lattice, coset.coords, inner, tol)
    phase = cmath.exp(-1j * math.pi * kk * float(coset.norm))
    return data.defect * phase * value / p_denominator(data, kk, tau, tol, twist=1)


def trace_value(cls: Classification, key: TraceKey, point, tol=None) -> complex:
    if key.kind == "U":
        return char_untwisted_trace(cls.sigma, cls.elements[key.coset], key.m, point, tol)
    return char_twisted_trace(cls.sigma, cls.mus[key.coset].vector, key.l, key.m, point, tol)


def label_traces(cls: Classification, label: OrbifoldModuleLabel) -> dict[TraceKey, complex]:
    """The projector: label character as a combination of trace functions."""
    p = cls.p
    if label.kind == TYPE2:
        return {TraceKey("U", label.coset, 0, 0): 1 + 0j}
    if label.kind == TYPE1:
        return {TraceKey("U", label.coset, 0, m): _omega(p, label.j * m) / p for m in range(p)}
    return {TraceKey("W", label.coset, label.l, (label.l * k) % p): _omega(p, label.j * k) / p
            for k in range(p)}


def trace_to_labels(cls: Classification, key: TraceKey) -> dict[int, complex]:
    """
    A trace function as a combination of label characters (by position):

        U(γ, 0)      = Σ_j V[γ]^j         (γ + Q fixed)   or  V[orbit of γ]
        U(λ, m)      = Σ_j ω^{-jm}·V[λ]^j                 (m ≠ 0)
        W(μ, l, m)   = (1/|Z_μ|)·Σ_ζ Σ_j ω^{-jk}·M[μ,ζ;σ^l]^j   (k = m·l⁻¹)

    Raises:
        InvalidTwist: U(λ, m ≠ 0) on a non-fixed coset
    """
    p = cls.p
    if key.kind == "U":
        m = key.m % p
        if cls.is_fixed_coset(key.coset):
            return {cls.position(TYPE1, key.coset, j=j): _omega(p, -j * m) for j in range(p)}
        if m:
            raise InvalidTwist(f"coset {key.coset} is not σ-fixed")
        rep = cls.data.orbits.representative_index[key.coset]
        return {cls.position(TYPE2, rep): 1 + 0j}
    k = (key.m * pow(key.l, -1, p)) % p
    z_mu = cls.data.z_mu
    return {cls.position(TYPE3, key.coset, j=j, l=key.l % p, zeta=zeta): _omega(p, -j * k) / z_mu
            for zeta in range(1, z_mu + 1) for j in range(p)}


def char_orbifold(label: OrbifoldModuleLabel, point, tol=None) -> complex:
    """
    Character of one irreducible V_Q^σ-module at (τ, h).

    Example:
        >>> cls = classify(A3, sigma)
        >>> abs(char_orbifold(cls.labels[0], 1j)) > 0
        True
    """
    if label.sigma is None:
        raise CharacterError("label carries no isometry; build it with classify()")
    sigma = label.sigma
    p = sigma.order
    if label.kind == TYPE2:
        return char_untwisted_trace(sigma, label.vector, 0, point, tol)
    if label.kind == TYPE1:
        return sum(_omega(p, label.j * m) * char_untwisted_trace(sigma, label.vector, m, point, tol)
                   for m in range(p)) / p
    return sum(_omega(p, label.j * k) * char_twisted_trace(sigma, label.vector, label.l, label.l * k, point, tol)
               for k in range(p)) / p


# ----------------------------------------------------------------------------
# EXACT q-EXPANSIONS
# ----------------------------------------------------------------------------

def _divide(numerator: QSeries, data: SigmaData, k: int, twist: int, t_theta: Fraction) -> QSeries:
    """numerator / P_{σ^twist,σ^k}, exact below t_theta - (leading exponent of P)."""
    lead = p_denominator_leading_exponent(data, k, twist)
    span = t_theta - numerator.offset
    if span <= 0 or not numerator.coeffs:
        return QSeries(numerator.offset - lead, numerator.denom, (), numerator.ring_order)
    return numerator / p_denominator_qseries(data, k, span, twist)


def untwisted_trace_qseries(sigma: Isometry, lam: Sequence, k: int, truncation) -> QSeries:
    """Exact U(λ, k) below `truncation`."""
    data = sigma_data(sigma)
    truncation = Fraction(truncation)
    k %= data.p
    L = data.lattice
    _, n0 = min_norm_representative(L, lam)
    t_theta = truncation + p_denominator_leading_exponent(data, k, 0)
    if k == 0:
        return _divide(theta_qseries(L, lam, t_theta, offset=n0 / 2), data, 0, 0, t_theta)
    _check_fixed(data, lam)
    rep = fixed_representative(sigma, lam)
    if rep is None:
        return QSeries.from_terms({}, truncation, offset=n0 / 2 - Fraction(data.rank, 24), denom=1)
    fixed = data.fixed_lattice
    M = fixed.as_lattice()
    coords = fixed.coordinates(rep)
    _, n1 = min_norm_representative(M, coords)
    return _divide(theta_qseries(M, coords, t_theta, offset=n1 / 2), data, k, 0, t_theta)


def twisted_trace_qseries(sigma: Isometry, mu: Sequence, l: int, k: int, truncation) -> QSeries:
    """
    Exact W(μ, l, k) below `truncation`. The theta part is

        Σ_{γ ∈ μ+π₀(Q)} ω^{k'·p(|γ|²-|μ|²)/2} q^{|γ|²/2}

    with integer exponents of ω, so the coefficients stay in Z[ω].
    """
    data = sigma_data(sigma)
    p = data.p
    coset = _canonical_twisted(data, mu)
    kk = (k * pow(l, -1, p)) % p
    truncation = Fraction(truncation)
    t_theta = truncation + p_denominator_leading_exponent(data, kk, 1)
    n_mu = coset.norm * p
    terms: dict[Fraction, CycloInt] = {}
    for _, n in enumerate_with_norms(data.scaled_lattice, coset.coords, 2 * p * t_theta):
        e = n / (2 * p)
        if e >= t_theta:
            continue
        a = kk * (n - n_mu) / 2
        if a.denominator != 1:
            raise RuntimeError(f"non-integral root-of-unity exponent {a}")
        terms[e] = terms.get(e, CycloInt.zero(p)) + CycloInt.root(p, int(a))
    numerator = QSeries.from_terms(terms, t_theta, ring_order=p, offset=n_mu / (2 * p), denom=p)
    return _divide(numerator, data, kk, 1, t_theta).scale(data.defect)


def trace_qexpansion(cls: Classification, key: TraceKey, truncation) -> QSeries:
    if key.kind == "U":
        return untwisted_trace_qseries(cls.sigma, cls.elements[key.coset], key.m, truncation)
    return twisted_trace_qseries(cls.sigma, cls.mus[key.coset].vector, key.l, key.m, truncation)


def _base_weight(label: OrbifoldModuleLabel) -> Fraction:
    data = sigma_data(label.sigma)
    if label.kind == TYPE3:
        return data.delta + _canonical_twisted(data, label.vector).norm / 2
    return norm(data.lattice, label.vector) / 2


def char_orbifold_qexpansion(label: OrbifoldModuleLabel, n_terms: int) -> QSeries:
    """
    Exact q-expansion of a module character, holding every state of
    weight below floor(lowest weight of its sector) + n_terms.
    """
    if n_terms < 1:
        raise ValueError("n_terms must be at least 1")
    sigma = label.sigma
    p = sigma.order
    r = sigma.lattice.rank
    truncation = -Fraction(r, 24) + math.floor(_base_weight(label)) + n_terms
    if label.kind == TYPE2:
        return untwisted_trace_qseries(sigma, label.vector, 0, truncation)
    if label.kind == TYPE1:
        parts = [untwisted_trace_qseries(sigma, label.vector, m, truncation).scale(CycloInt.root(p, label.j * m))
                 for m in range(p)]
    else:
        parts = [twisted_trace_qseries(sigma, label.vector, label.l, label.l * k, truncation)
                 .scale(CycloInt.root(p, label.j * k)) for k in range(p)]
    total = parts[0]
    for part in parts[1:]:
        total = total + part
    series = total.exact_div(p)
    logger.debug("%s expanded to q^%s", label.display_name, series.truncation_order)
    return series


def conformal_weight(label: OrbifoldModuleLabel) -> ConformalWeight:
    """
    Lowest L₀-eigenvalue of the module.

    Closed forms for Type 2 and the j = 0 components (½·min|λ+Q|² and
    Δ_σ + ½·min|μ+π₀(Q)|²); other components are read off the exact
    expansion.
    """
    if label.kind == TYPE2 or label.j == 0:
        return ConformalWeight(_base_weight(label))
    r = label.sigma.lattice.rank
    n_terms = 2
    while n_terms <= 64:
        lead = char_orbifold_qexpansion(label, n_terms).leading_exponent()
        if lead is not None:
            return ConformalWeight(lead + Fraction(r, 24))
        n_terms *= 2
    raise CharacterError(f"no states found for {label.display_name} below weight 64")


# ----------------------------------------------------------------------------
# PERMUTATION ORBIFOLDS
# ----------------------------------------------------------------------------
# Q = Q₀^⊕p with σ moving summand i to summand i+1. The closed forms below
# only use Q₀ and η, so they serve as independent checks of the general
# trace functions:
#   U((λ₀,…,λ₀), k≠0) = θ_{λ₀+Q₀}(pτ) / η(pτ)^{rank Q₀}
#   W(π₀λ₀, 1, k)    = e^{-πik|λ₀|²/p}·θ_{λ₀+Q₀}((τ+k)/p) / P_{σ,σ^k}(τ)
#   P_{σ,σ^k}(τ)     = e^{-2πik·rank/(24p)}·η((τ+k)/p)^{rank}

def permutation_lattice(Q0: Lattice, p: int) -> tuple[Lattice, Isometry]:
    """Q₀^⊕p and the cyclic shift of its summands."""
    ok, message = validate_prime(p)
    if not ok:
        raise NotPrime(message)
    n = Q0.rank
    L = direct_sum(*([Q0] * p))
    size = n * p
    matrix = [[0] * size for _ in range(size)]
    for block in range(p):
        for a in range(n):
            matrix[((block + 1) % p) * n + a][block * n + a] = 1
    return L, new_isometry(L, matrix)


def permutation_orbifold(Q0: Lattice, p: int) -> tuple[Lattice, Isometry, Classification]:
    """
    Raises:
        NotPrime

    Example:
        >>> _, _, cls = permutation_orbifold(Lattice(((2,),)), 3)
        >>> cls.total
        20
    """
    L, sigma = permutation_lattice(Q0, p)
    return L, sigma, classify(L, sigma)


def permutation_untwisted_trace(Q0: Lattice, p: int, lam0: Sequence, point, tol=None) -> complex:
    tau = complex(_as_point(point).tau)
    return theta(Q0, lam0, ModularPoint(p * tau), tol) / eta(p * tau, tol) ** Q0.rank


def permutation_twisted_trace(Q0: Lattice, p: int, lam0: Sequence, k: int, point, tol=None) -> complex:
    """λ₀ should be the minimal-norm representative of λ₀ + Q₀."""
    tau = complex(_as_point(point).tau)
    shifted = (tau + k) / p
    d = Q0.rank
    phase = cmath.exp(-1j * math.pi * k * float(norm(Q0, lam0)) / p)
    denominator = cmath.exp(-2j * math.pi * k * d / (24 * p)) * eta(shifted, tol) ** d
    return phase * theta(Q0, lam0, ModularPoint(shifted), tol) / denominator

# ============================================================================
# TRANSFORMS MODULE
# ============================================================================
# Modular data of the orbifold characters: the T-matrix, the S-coefficient
# matrix, asymptotic / quantum dimensions, Verlinde fusion numbers and a
# numeric certificate for all of it.
#
# HOW THE S-MATRIX IS ASSEMBLED:
#   label ──projector──▶ trace functions ──S-law──▶ trace functions ──inversion──▶ labels
# label_traces / trace_to_labels live in characters.py; the S-law of each
# trace function is trace_s_image below:
#   U(λ,0)    → |Q*/Q|^{-1/2} Σ_γ e^{-2πi(λ|γ)} U(γ,0)
#   U(λ,m)    → D_λ Σ_μ e^{-2πi(λ'|μ)} W(μ,m,0)                      (m ≠ 0)
#   W(μ,l,0)  → v₀ Σ_{λ'} e^{-2πi(λ'|μ)} U(λ',-l)
#   W(μ,l,m)  → ε κ⁻¹ e^{-πik|μ|²} Σ_z R_{x,z} e^{πik'|ν_z|²} W(ν_z,m,-l)  (k = m·l⁻¹ ≠ 0)
# where R is a row of the Weil representation of √p·π₀(Q) for
# A = [[k,-m'],[p,-k']] (k·k' + 1 = m'·p), computed step by step from the
# theta S- and T-laws (weil_word / weil_row).
#
# WHAT IS v_k?
# The constant in front of θ_{√pπ₀(Q)}(A_k τ'): v_k = e^{πi|β₀|²}·R_{0,β₀}.
# It is checked against closed forms: c_{β₀}/|D| for p = 2, and
# conj(c₀)/|D|, (-i)^{r₀}·c₀/|D| for k = ±1 at odd p.
#
# Last updated: 17 October 2026
# ============================================================================

from __future__ import annotations

import cmath
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from orbichar.characters import (
    TYPE1,
    TYPE2,
    TYPE3,
    Classification,
    TraceKey,
    char_orbifold,
    char_orbifold_qexpansion,
    label_traces,
    trace_to_labels,
)
from orbichar.config import Config
from orbichar.exceptions import (
    DegenerateBasis,
    InconsistentSamples,
    NoSolution,
    NotUnitary,
    TransformError,
    UnsupportedOrder,
)
from orbichar.isometry import Isometry, SigmaData, sigma_data
from orbichar.lattice import DualVector, Lattice, bilinear, discriminant_group, norm
from orbichar.modular_functions import (
    ModularPoint,
    p_denominator_s_constant,
    principal_power,
    snap_root_of_unity,
    theta,
)

logger = logging.getLogger(__name__)

__all__ = [
    "TransformMatrix",
    "VkConstants",
    "DimensionReport",
    "FusionTensor",
    "VerificationReport",
    "WeilData",
    "t_matrix",
    "beta0_vector",
    "weil_data",
    "weil_word",
    "weil_row",
    "weil_automorphy",
    "automorphy_root",
    "twist_matrix",
    "c_constant",
    "v_constants",
    "trace_s_image",
    "s_coefficients",
    "characters_independent",
    "dimensions",
    "verlinde_fusion",
    "verify_transforms",
]


# ----------------------------------------------------------------------------
# RESULT TYPES
# ----------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class TransformMatrix:
    """An S- or T-matrix in the Classification's label order."""

    entries: np.ndarray
    kind: str
    labels: tuple[str, ...]
    # None: not checked; False: characters are linearly dependent
    independent: bool | None = None

    @property
    def size(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True)
class VkConstants:
    values: dict
    beta0: DualVector
    c_beta0: complex
    modulus: float
    closed_forms: dict


@dataclass(frozen=True)
class DimensionReport:
    labels: tuple[str, ...]
    asymptotic: tuple[float, ...]
    quantum: tuple[float, ...]

    @property
    def sum_rule(self) -> float:
        """Σ (asymptotic dimension)², which must be 1."""
        return float(sum(a * a for a in self.asymptotic))


@dataclass(frozen=True, eq=False)
class FusionTensor:
    """N[i][j][k] = multiplicity of module k in module i ⊠ module j."""

    N: np.ndarray
    labels: tuple[str, ...]

    def product(self, i: int, j: int) -> dict[int, int]:
        return {k: int(n) for k, n in enumerate(self.N[i, j]) if n}


@dataclass(frozen=True)
class VerificationReport:
    labels: tuple[str, ...]
    s_residuals: tuple[float, ...]
    t_residuals: tuple[float, ...]
    sum_rule_residual: float
    tol: float

    @property
    def passed(self) -> bool:
        return (max(self.s_residuals + self.t_residuals, default=0.0) < self.tol
                and self.sum_rule_residual < self.tol)


# ----------------------------------------------------------------------------
# T-MATRIX
# ----------------------------------------------------------------------------

def _require_prime(cls: Classification, operation: str) -> None:
    if not cls.sigma.is_prime_order:
        raise UnsupportedOrder(cls.p, operation)


def t_matrix(cls: Classification) -> TransformMatrix:
    """
    Diagonal T: e^{πi(|λ|²-r/12)} for Types 1 and 2 and
    ω^{-j}·e^{2πiΔ_σ}·e^{πi(|μ|²-r/12)} for Type 3.
    """
    _require_prime(cls, "t_matrix")
    data = cls.data
    p, r = data.p, data.rank
    phases = []
    for label in cls.labels:
        if label.kind == TYPE3:
            mu_norm = cls.mus[label.coset].norm
            phase = (-Fraction(label.j, p) + data.delta) * 2 + mu_norm - Fraction(r, 12)
        else:
            phase = norm(data.lattice, label.vector) - Fraction(r, 12)
        phases.append(cmath.exp(1j * math.pi * float(phase % 2)))
    return TransformMatrix(np.diag(phases), "T", tuple(l.display_name for l in cls.labels))


# ----------------------------------------------------------------------------
# WEIL REPRESENTATION OF A DISCRIMINANT FORM
# ----------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class WeilData:
    """Discriminant group of L with its norms mod 2 and pairing matrix."""

    lattice: Lattice
    elements: tuple[DualVector, ...]
    norms: tuple[Fraction, ...]
    s_matrix: np.ndarray
    t_phases: np.ndarray

    @property
    def size(self) -> int:
        return len(self.elements)

    def index(self, v: Sequence) -> int:
        return discriminant_group(self.lattice).index(v)


@lru_cache(maxsize=32)
def weil_data(L: Lattice) -> WeilData:
    group = discriminant_group(L)
    elements = tuple(group.elements())
    norms = tuple(norm(L, z) % 2 for z in elements)
    n = len(elements)
    pairing = np.array([[float(bilinear(L, z, w) % 1) for w in elements] for z in elements])
    s_matrix = np.exp(-2j * np.pi * pairing) / math.sqrt(n)
    t_phases = np.exp(1j * np.pi * np.array([float(x) for x in norms]))
    return WeilData(L, elements, norms, s_matrix, t_phases)


def weil_word(A: Sequence[Sequence[int]]) -> tuple[tuple[str, int], ...]:
    """
    Write A ∈ SL₂(Z) as a word in T^q and S (left to right), up to ±1.

    Euclid on the first column: peel T^q with q = a // c, then factor out S
    via A' = S·[[c, d], [-a', -b']]. The last step is τ ↦ τ + a·b.

    Example:
        >>> weil_word([[1, -1], [2, -1]])
        (('S', 0), ('T', -2), ('S', 0), ('T', -1))
    """
    (a, b), (c, d) = A
    if a * d - b * c != 1:
        raise ValueError(f"{A} is not in SL2(Z)")
    steps: list[tuple[str, int]] = []
    while c != 0:
        q = a // c
        if q:
            steps.append(("T", q))
            a, b = a - q * c, b - q * d
        steps.append(("S", 0))
        a, b, c, d = c, d, -a, -b
    if a * b:
        steps.append(("T", a * b))
    return tuple(steps)


def weil_row(L: Lattice, A: Sequence[Sequence[int]], x: Sequence) -> np.ndarray:
    """
    R with θ_x(Aτ) = J(A,τ)·Σ_z R[z]·θ_z(τ), indexed by weil_data(L).elements.

    Each T^q multiplies by e^{πiq|z|²}; each S applies
    |D|^{-1/2}·e^{-2πi(z|w)}.
    """
    data = weil_data(L)
    row = np.zeros(data.size, dtype=complex)
    row[data.index(x)] = 1
    for step, q in weil_word(A):
        if step == "T":
            row = row * data.t_phases ** q
        else:
            row = row @ data.s_matrix
    return row


def weil_automorphy(A: Sequence[Sequence[int]], tau: complex, rank: int) -> complex:
    """J(A,τ): product of the (-i·w)^{rank/2} factors met at the S steps."""
    cur = complex(tau)
    total = 1 + 0j
    for step, q in reversed(weil_word(A)):
        if step == "T":
            cur += q
        else:
            total *= principal_power(-1j * cur, Fraction(rank, 2))
            cur = -1 / cur
    return total


def twist_matrix(p: int, k: int) -> tuple[tuple[int, int], tuple[int, int]]:
    """A_k = [[k, -m], [p, -k']] with k·k' + 1 = m·p, 0 <= k' < p."""
    k_dual = (-pow(k, -1, p)) % p
    m = (k * k_dual + 1) // p
    return (k, -m), (p, -k_dual)


def _apply(A, tau: complex) -> complex:
    (a, b), (c, d) = A
    return (a * tau + b) / (c * tau + d)


@lru_cache(maxsize=256)
def automorphy_root(p: int, k: int, rank: int, rotated: bool = False) -> complex:
    """
    J(A_k, τ') / w^{rank/2} as an exact 8th root of unity, τ' = (τ+k')/p.

    w = τ by default and w = -iτ when `rotated`; either way the ratio is
    constant in τ and is read off at the configured sample points.

    Raises:
        InconsistentSamples: the sampled ratios snap to different roots
    """
    A = twist_matrix(p, k)
    k_dual = -A[1][1]
    ratios = []
    for tau in Config.sample_taus:
        tau_p = (tau + k_dual) / p
        w = -1j * tau if rotated else tau
        ratios.append(weil_automorphy(A, tau_p, rank) / principal_power(w, Fraction(rank, 2)))
    exps = {snap_root_of_unity(x, 8)[0] for x in ratios}
    if len(exps) != 1:
        raise InconsistentSamples(f"automorphy factor of {A} is not constant: {ratios}")
    return cmath.exp(2j * math.pi * exps.pop() / 8)


# ----------------------------------------------------------------------------
# β₀ AND THE v_k CONSTANTS
# ----------------------------------------------------------------------------

def beta0_vector(L: Lattice, c: int) -> DualVector:
    """
    β₀ ∈ ½L with (ν|β₀) ≡ (c/2)·|ν|² (mod 1) for every ν ∈ L* with cν ∈ L.

    β₀ = 0 for odd c; otherwise the solution of least norm (then
    lexicographically first) among the representatives of ½L/L.

    Raises:
        NoSolution

    Example:
        >>> beta0_vector(Lattice(((2,),)), 2)
        (Fraction(1, 2),)
    """
    r = L.rank
    zero = tuple(Fraction(0) for _ in range(r))
    if c % 2:
        return zero
    nus = [v for v in discriminant_group(L).elements() if all((c * x).denominator == 1 for x in v)]
    candidates = []
    for bits in range(2 ** r):
        beta = tuple(Fraction((bits >> i) & 1, 2) for i in range(r))
        if all((bilinear(L, nu, beta) - Fraction(c, 2) * norm(L, nu)).denominator == 1 for nu in nus):
            candidates.append((norm(L, beta), beta))
    if not candidates:
        raise NoSolution(f"no β₀ in ½L/L for c = {c}")
    return min(candidates)[1]


def c_constant(L: Lattice, p: int, beta0: Sequence | None = None) -> complex:
    """
    c_{β₀} = Σ_{y ∈ L*/L} e^{-2πi(|y|² + (y|β₀))} for p = 2,
    c₀ = Σ_{y ∈ L*/L} e^{πip|y|²} for odd p.
    """
    total = 0j
    for y in discriminant_group(L).elements():
        if p == 2:
            beta0 = beta0 if beta0 is not None else tuple(Fraction(0) for _ in y)
            phase = -2 * (norm(L, y) + bilinear(L, y, beta0))
        else:
            phase = p * norm(L, y)
        total += cmath.exp(1j * math.pi * float(phase % 2))
    return total


def _v0(data: SigmaData) -> float:
    return (data.defect * data.p ** (-data.dperp / 2) * data.index_pi0q_m
            / math.sqrt(data.index_mstar_m))


def _kp_check(L: Lattice, A, samples: Sequence[complex], tol=None) -> None:
    """θ_L(A·τ') against J·Σ R θ_z(τ') at τ' with cτ'+d = each sample."""
    (_, _), (c, d) = A
    zero = tuple(Fraction(0) for _ in range(L.rank))
    row = weil_row(L, A, zero)
    elements = weil_data(L).elements
    for s in samples:
        tau_p = (s - d) / c
        lhs = theta(L, zero, ModularPoint(_apply(A, tau_p)), tol)
        rhs = weil_automorphy(A, tau_p, L.rank) * sum(
            coef * theta(L, z, ModularPoint(tau_p), tol) for coef, z in zip(row, elements) if abs(coef) > 1e-14)
        if abs(lhs - rhs) > Config.verify_tol * max(1.0, abs(lhs)):
            raise InconsistentSamples(f"theta transformation for {A} fails at tau' = {tau_p}: {lhs} vs {rhs}")


def v_constants(L: Lattice, sigma: Isometry, verify: bool = True) -> VkConstants:
    """
    v₀ and v_k (k = 1..p-1) for the twisted-sector transformations.

    Args:
        L: the lattice Q (must be sigma's lattice)
        sigma: prime-order isometry
        verify: also run the two-sample numeric theta check for each A_k

    Raises:
        UnsupportedOrder, InconsistentSamples
    """
    if not sigma.is_prime_order:
        raise UnsupportedOrder(sigma.order, "v_constants")
    data = sigma_data(sigma)
    p = data.p
    scaled = data.scaled_lattice
    beta0 = beta0_vector(scaled, p)
    weil = weil_data(scaled)
    size = weil.size
    values = {0: complex(_v0(data))}
    zero = tuple(Fraction(0) for _ in range(scaled.rank))
    for k in range(1, p):
        A = twist_matrix(p, k)
        row = weil_row(scaled, A, zero)
        values[k] = (automorphy_root(p, k, scaled.rank)
                     * cmath.exp(1j * math.pi * float(norm(scaled, beta0))) * row[weil.index(beta0)])
        if verify:
            _kp_check(scaled, A, (1j, 0.3 + 1.1j))

    c_value = c_constant(scaled, p, beta0)
    closed = {}
    if p == 2:
        closed[1] = c_value / size
    else:
        closed[1] = c_value.conjugate() / size
        closed[p - 1] = (-1j) ** data.r0 * c_value / size
    for k, expected in closed.items():
        if abs(values[k] - expected) > Config.snap_tol:
            raise InconsistentSamples(f"v_{k} = {values[k]} disagrees with the closed form {expected}")

    image_size = len({weil.index(tuple(p * x for x in z)) for z in weil.elements})
    modulus = image_size ** -0.5
    for k in range(1, p):
        if abs(abs(values[k]) - modulus) > 1e-10:
            logger.warning("|v_%d| = %.12f but |(L+pL*)/L|^(-1/2) = %.12f", k, abs(values[k]), modulus)
    logger.debug("v constants %s, beta0 %s", values, beta0)
    return VkConstants(values, beta0, c_value, modulus, closed)


# ----------------------------------------------------------------------------
# TRACE-LEVEL S-LAWS
# ----------------------------------------------------------------------------

@lru_cache(maxsize=256)
def _twisted_constants(cls: Classification, k: int) -> tuple[complex, complex]:
    """(ε, κ_k) for the k-th twisted S-law."""
    data = cls.data
    epsilon = automorphy_root(data.p, k, data.r0, rotated=True)
    kappa = p_denominator_s_constant(data, k)
    return epsilon, kappa


@lru_cache(maxsize=8)
def _mu_by_element(cls: Classification) -> dict[int, int]:
    """Weil element index -> twisted coset index, for elements inside π₀(Q*)."""
    data = cls.data
    weil = weil_data(data.scaled_lattice)
    out = {}
    for idx, z in enumerate(weil.elements):
        nu = data.pi0_q.to_ambient(z)
        if data.pi0_qstar.contains(nu):
            out[idx] = cls.twisted_index(nu)
    return out


def trace_s_image(cls: Classification, key: TraceKey) -> dict[TraceKey, complex]:
    """
    The trace function `key` evaluated at -1/τ, as a combination of trace
    functions at τ.

    Raises:
        TransformError: a Weil coefficient outside π₀(Q*) does not vanish
    """
    data = cls.data
    p = data.p
    out: dict[TraceKey, complex] = {}

    def add(k: TraceKey, c: complex) -> None:
        out[k] = out.get(k, 0j) + c

    if key.kind == "U":
        lam = cls.elements[key.coset]
        m = key.m % p
        if m == 0:
            scale = 1 / math.sqrt(data.group.cardinality)
            for g, gam in enumerate(cls.elements):
                phase = float(bilinear(data.lattice, lam, gam) % 1)
                add(TraceKey("U", g, 0, 0), scale * cmath.exp(-2j * math.pi * phase))
            return out
        rep = data.fixed_reps.get(key.coset)
        if rep is None:
            return out
        d_lam = data.p ** (data.dperp / 2) / (math.sqrt(data.index_mstar_m) * data.defect)
        for i, coset in enumerate(cls.mus):
            phase = float(bilinear(data.lattice, rep, coset.vector) % 1)
            add(TraceKey("W", i, m, 0), d_lam * cmath.exp(-2j * math.pi * phase))
        return out

    coset = cls.mus[key.coset]
    l = key.l % p
    k = (key.m * pow(l, -1, p)) % p
    if k == 0:
        v0 = _v0(data)
        for c_idx, rep in data.fixed_reps.items():
            if rep is None:
                continue
            phase = float(bilinear(data.lattice, rep, coset.vector) % 1)
            add(TraceKey("U", c_idx, 0, (-l) % p), v0 * cmath.exp(-2j * math.pi * phase))
        return out

    scaled = data.scaled_lattice
    A = twist_matrix(p, k)
    k_dual = -A[1][1]
    row = weil_row(scaled, A, coset.coords)
    epsilon, kappa = _twisted_constants(cls, k)
    lead = epsilon / kappa * cmath.exp(-1j * math.pi * k * float(coset.norm))
    mu_index = _mu_by_element(cls)
    for idx, coef in enumerate(row):
        if abs(coef) < 1e-12:
            continue
        if idx not in mu_index:
            if abs(coef) > 1e-9:
                raise TransformError(f"Weil coefficient {coef} outside π₀(Q*) does not vanish")
            continue
        target = mu_index[idx]
        nu_norm = float(cls.mus[target].norm)
        add(TraceKey("W", target, key.m % p, (-l) % p),
            lead * coef * cmath.exp(1j * math.pi * k_dual * nu_norm))
    return out


# ----------------------------------------------------------------------------
# S-COEFFICIENT MATRIX
# ----------------------------------------------------------------------------

def characters_independent(cls: Classification, n_terms: int | None = None) -> bool:
    """Rank test on the exact q-expansions of all module characters."""
    n_terms = n_terms or max(2, math.ceil(Config.qexp_rank_terms / cls.p))
    series = [char_orbifold_qexpansion(label, n_terms) for label in cls.labels]
    cutoff = min(s.truncation_order for s in series)
    columns = sorted({e for s in series for e in s.terms() if e < cutoff})
    matrix = np.array([[complex(s.terms().get(e, 0)) for e in columns] for s in series])
    rank = int(np.linalg.matrix_rank(matrix, tol=1e-8)) if columns else 0
    independent = rank == len(cls.labels)
    if not independent:
        logger.warning("orbifold characters are linearly dependent (rank %d of %d)", rank, len(cls.labels))
    return independent


def s_coefficients(cls: Classification, check_independence: bool = True) -> TransformMatrix:
    """
    C with χ_j(-1/τ) = Σ_k C_{jk}·χ_k(τ).

    When the characters are linearly dependent C is one valid choice and
    `independent` is False.

    Example:
        >>> S = s_coefficients(classify(A3, sigma))
        >>> round(S.entries[0, 0].real, 12)
        0.25
    """
    _require_prime(cls, "s_coefficients")
    n = cls.total
    entries = np.zeros((n, n), dtype=complex)
    images: dict[TraceKey, dict[TraceKey, complex]] = {}
    inverses: dict[TraceKey, dict[int, complex]] = {}
    for i, label in enumerate(cls.labels):
        for key, c in label_traces(cls, label).items():
            if key not in images:
                images[key] = trace_s_image(cls, key)
            for key2, c2 in images[key].items():
                if key2 not in inverses:
                    inverses[key2] = trace_to_labels(cls, key2)
                for pos, c3 in inverses[key2].items():
                    entries[i, pos] += c * c2 * c3
    entries[np.abs(entries) < 1e-14] = 0
    independent = characters_independent(cls) if check_independence else None
    return TransformMatrix(entries, "S", tuple(l.display_name for l in cls.labels), independent)


# ----------------------------------------------------------------------------
# DIMENSIONS AND FUSION
# ----------------------------------------------------------------------------

def dimensions(cls: Classification) -> DimensionReport:
    """
    Asymptotic dimensions
        Type 1: 1/(p·|Q*/Q|^{1/2}),  Type 2: 1/|Q*/Q|^{1/2},
        Type 3: p^{dperp/2} / (p·|Z_μ|·d(σ)·|M*/M|^{1/2}),
    and quantum dimensions asdim·p·|Q*/Q|^{1/2}.
    """
    _require_prime(cls, "dimensions")
    data = cls.data
    p = data.p
    disc = math.sqrt(data.group.cardinality)
    twisted = p ** (data.dperp / 2) / (p * data.z_mu * data.defect * math.sqrt(data.index_mstar_m))
    asdim = []
    for label in cls.labels:
        if label.kind == TYPE1:
            asdim.append(1 / (p * disc))
        elif label.kind == TYPE2:
            asdim.append(1 / disc)
        else:
            asdim.append(twisted)
    qdim = tuple(a * p * disc for a in asdim)
    return DimensionReport(tuple(l.display_name for l in cls.labels), tuple(asdim), qdim)


def verlinde_fusion(S: TransformMatrix) -> FusionTensor:
    """
    N_{ij}^k = Σ_l S_il·S_jl·conj(S_kl) / S_0l, rounded to integers.

    Raises:
        DegenerateBasis: the characters are linearly dependent
        NotUnitary: S·S^† differs from the identity
    """
    if S.independent is False:
        raise DegenerateBasis("characters are linearly dependent; the coefficient matrix is not a unique S-matrix")
    s = S.entries
    n = S.size
    err = float(np.abs(s @ s.conj().T - np.eye(n)).max())
    if err > Config.unitarity_tol:
        raise NotUnitary(f"S·S^† deviates from the identity by {err:.3e}")
    raw = np.einsum("il,jl,kl->ijk", s, s, s.conj() / s[0])
    rounded = np.rint(raw.real)
    drift = max(float(np.abs(raw - rounded).max()), 0.0)
    if drift > Config.fusion_round_tol:
        raise TransformError(f"fusion coefficients are not integral (max deviation {drift:.3e})")
    if (rounded < 0).any():
        raise TransformError("negative fusion coefficient")
    return FusionTensor(rounded.astype(int), S.labels)


# ----------------------------------------------------------------------------
# NUMERIC CERTIFICATION
# ----------------------------------------------------------------------------

def _character_vector(cls: Classification, tau: complex, tol, jobs: int) -> np.ndarray:
    point = ModularPoint(tau)
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            values = list(pool.map(lambda label: char_orbifold(label, point, tol), cls.labels))
    else:
        values = [char_orbifold(label, point, tol) for label in cls.labels]
    return np.array(values, dtype=complex)


def verify_transforms(cls: Classification, taus: Sequence[complex] | None = None, tol=None,
                      jobs: int = 1, S: TransformMatrix | None = None) -> VerificationReport:
    """
    Check χ(-1/τ) = S·χ(τ) and χ(τ+1) = T·χ(τ) for every label at every
    sample τ, plus Σ|S_0j|² = 1. Failures are reported, not raised.
    """
    taus = tuple(taus or Config.sample_taus)
    S = S if S is not None else s_coefficients(cls, check_independence=False)
    T = t_matrix(cls)
    n = cls.total
    s_res = np.zeros(n)
    t_res = np.zeros(n)
    for tau in taus:
        tau = complex(tau)
        chi = _character_vector(cls, tau, tol, jobs)
        chi_s = _character_vector(cls, -1 / tau, tol, jobs)
        chi_t = _character_vector(cls, tau + 1, tol, jobs)
        s_res = np.maximum(s_res, np.abs(chi_s - S.entries @ chi))
        t_res = np.maximum(t_res, np.abs(chi_t - T.entries @ chi))
        logger.debug("tau = %s: max S residual %.3e, max T residual %.3e", tau, s_res.max(), t_res.max())
    sum_rule = abs(float(np.sum(np.abs(S.entries[0]) ** 2)) - 1)
    return VerificationReport(tuple(l.display_name for l in cls.labels), tuple(float(x) for x in s_res),
                              tuple(float(x) for x in t_res), sum_rule, Config.verify_tol)

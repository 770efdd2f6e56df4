# ============================================================================
# MODULAR FUNCTIONS MODULE
# ============================================================================
# Error-controlled evaluation of the functions every character is built
# from: η, lattice theta functions θ_{λ+L}, the rank-one K_l, the triple
# product P(τ,ζ) and the twisted denominators P_{σ,σ^k}.
#
# TWO KINDS OF OUTPUT:
# - numeric values at a point τ of the upper half-plane, each with a
#   rigorous bound on the neglected tail (SeriesValue)
# - exact truncated q-expansions (QSeries) with rational exponents and
#   integer / cyclotomic-integer coefficients
#
# PRECISION:
# numpy double precision by default. When ORBICHAR_PRECISION_BITS is set
# the same sums and products run through mpmath at that precision and the
# result is converted back to a Python complex at the end.
#
# WHAT IS P_{σ,σ^k}?
# The "Fock space denominator" of a twisted trace:
#     P_{σ,σ^k}(τ) = q^(-Δ_σ + r/24) · Π_{m≥1} det_h(1 - σ^k q^(m+s))
# where s = -j/N on the eigenspace h_{j/N}. We store it as a list of
# factor families  Π_{m≥1} (1 - ω^a q^(step·m + shift))^power  so that the
# numeric product, the log-sum check and the exact expansion all walk the
# same data.
#
# Last updated: 17 October 2026
# ============================================================================

from __future__ import annotations

import cmath
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import mpmath
import numpy as np

from orbichar.config import Config
from orbichar.exceptions import InconsistentSamples, NotUpperHalfPlane, UnsupportedOrder
from orbichar.isometry import Isometry, SigmaData, sigma_data
from orbichar.lattice import Lattice, enumerate_with_norms, min_norm_representative, pairing_with_basis
from orbichar.utils import intmat
from orbichar.utils.qseries import CycloInt, QSeries
from orbichar.utils.validation import validate_tau

logger = logging.getLogger(__name__)

__all__ = [
    "ModularPoint",
    "SeriesTolerance",
    "SeriesValue",
    "eta",
    "eta_series",
    "theta",
    "theta_series",
    "theta_qexpansion",
    "theta_qseries",
    "k_function",
    "p_triple",
    "p_triple_sum",
    "p_denominator",
    "p_denominator_series",
    "p_denominator_qexpansion",
    "p_denominator_qseries",
    "p_denominator_s_constant",
    "p_denominator_leading_exponent",
    "snap_root_of_unity",
    "principal_power",
]


# ----------------------------------------------------------------------------
# POINT, TOLERANCE AND RESULT TYPES
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class ModularPoint:
    """
    A point (τ, z, u) for theta evaluation.

    `z` is a vector in lattice coordinates (None means 0). Tail bounds
    assume z is real.
    """

    tau: complex
    z: tuple | None = None
    u: complex = 0j

    def __post_init__(self):
        ok, _ = validate_tau(self.tau)
        if not ok:
            raise NotUpperHalfPlane(self.tau)

    @property
    def q(self) -> complex:
        return cmath.exp(2j * math.pi * complex(self.tau))


@dataclass(frozen=True)
class SeriesTolerance:
    abs_tol: float = field(default_factory=lambda: Config.abs_tol)
    max_terms: int = field(default_factory=lambda: Config.max_terms)

    def __post_init__(self):
        if not self.abs_tol > 0:
            raise ValueError(f"abs_tol must be positive, got {self.abs_tol}")
        if self.max_terms < 1:
            raise ValueError(f"max_terms must be positive, got {self.max_terms}")


@dataclass(frozen=True)
class SeriesValue:
    """A truncated sum or product with a bound on what was left out."""

    value: complex
    error_bound: float
    terms: int

    def __complex__(self) -> complex:
        return complex(self.value)


def _tolerance(tol) -> SeriesTolerance:
    if tol is None:
        return SeriesTolerance()
    if isinstance(tol, SeriesTolerance):
        return tol
    return SeriesTolerance(abs_tol=float(tol))


def _point(point) -> ModularPoint:
    return point if isinstance(point, ModularPoint) else ModularPoint(complex(point))


def _check_tau(tau) -> complex:
    tau = complex(tau)
    ok, _ = validate_tau(tau)
    if not ok:
        raise NotUpperHalfPlane(tau)
    return tau


def principal_power(x: complex, exponent) -> complex:
    """x^exponent on the principal branch (argument in (-π, π])."""
    if x == 0:
        return 0j
    return cmath.exp(float(exponent) * cmath.log(x))


def snap_root_of_unity(value: complex, order: int) -> tuple[int, float]:
    """
    Nearest e^(2πi·a/order) to `value`.

    Returns:
        tuple: (a mod order, |value - e^(2πi·a/order)|)

    Raises:
        InconsistentSamples: residual above Config.snap_tol
    """
    a = round(cmath.phase(value) * order / (2 * math.pi)) % order
    residual = abs(value - cmath.exp(2j * math.pi * a / order))
    if residual > Config.snap_tol:
        raise InconsistentSamples(
            f"{value} is not a {order}-th root of unity (closest residual {residual:.3e})")
    if residual > Config.snap_tol / 100:
        logger.warning("snapped %s to e^(2πi·%d/%d) with residual %.3e", value, a, order, residual)
    else:
        logger.debug("snapped %s to e^(2πi·%d/%d), residual %.3e", value, a, order, residual)
    return a, residual


# ----------------------------------------------------------------------------
# PRODUCT FAMILIES (shared by η, P(τ,ζ) and P_{σ,σ^k})
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class _Family:
    """Π_{m≥1} (1 - c·q^(step·m + shift))^power with c = e^(2πi·root/order)."""

    root: int
    order: int
    step: int
    shift: Fraction
    power: int

    @property
    def coefficient(self) -> complex:
        return cmath.exp(2j * math.pi * self.root / self.order)


def _family_tail(families: Sequence[_Family], absq: float, n: int) -> float:
    """Σ_f |power_f|·Σ_{m>n} |a_m|/(1-|a_m|): bounds |log(tail product)|."""
    total = 0.0
    for f in families:
        if not f.power:
            continue
        first = absq ** (f.step * (n + 1) + float(f.shift))
        ratio = absq ** f.step
        total += abs(f.power) * first / ((1 - ratio) * (1 - first))
    return total


def _family_terms(families: Sequence[_Family], absq: float, tol: SeriesTolerance) -> tuple[int, float]:
    """Number of factors per family so that the relative tail is below tol."""
    n = 1
    tail = _family_tail(families, absq, n)
    while math.expm1(tail) > tol.abs_tol and n < tol.max_terms:
        n = min(2 * n, tol.max_terms)
        tail = _family_tail(families, absq, n)
    if math.expm1(tail) > tol.abs_tol:
        logger.warning("product truncated at max_terms=%d with relative tail %.3e", n, math.expm1(tail))
    return n, tail


def _family_product(tau: complex, families: Sequence[_Family], n: int, method: str = "product") -> complex:
    if Config.high_precision():
        with Config.mp_context():
            t = mpmath.mpc(tau.real, tau.imag)
            total = mpmath.mpc(1)
            for f in families:
                if not f.power:
                    continue
                c = mpmath.expjpi(mpmath.mpf(2 * f.root) / f.order)
                shift = mpmath.mpf(f.shift.numerator) / f.shift.denominator
                factors = [1 - c * mpmath.expjpi(2 * t * (f.step * m + shift)) for m in range(1, n + 1)]
                if method == "log":
                    total *= mpmath.exp(f.power * mpmath.fsum(mpmath.log(x) for x in factors))
                else:
                    total *= mpmath.fprod(factors) ** f.power
            return complex(total)

    log_total = 0j
    total = 1 + 0j
    m = np.arange(1, n + 1, dtype=float)
    for f in families:
        if not f.power:
            continue
        factors = 1 - f.coefficient * np.exp(2j * np.pi * tau * (f.step * m + float(f.shift)))
        if method == "log":
            log_total += f.power * np.sum(np.log(factors))
        else:
            total *= np.prod(factors) ** f.power
    return complex(total * np.exp(log_total))


def _q_power(tau: complex, exponent) -> complex:
    """e^(2πiτ·exponent) for a rational exponent."""
    if Config.high_precision():
        with Config.mp_context():
            e = Fraction(exponent)
            t = mpmath.mpc(tau.real, tau.imag)
            return complex(mpmath.expjpi(2 * t * mpmath.mpf(e.numerator) / e.denominator))
    return cmath.exp(2j * math.pi * tau * float(exponent))


def _evaluate_families(tau: complex, offset: Fraction, families: Sequence[_Family],
                       tol, method: str = "product") -> SeriesValue:
    tau = _check_tau(tau)
    tol = _tolerance(tol)
    absq = math.exp(-2 * math.pi * tau.imag)
    n, tail = _family_terms(families, absq, tol)
    value = _q_power(tau, offset) * _family_product(tau, families, n, method)
    return SeriesValue(value, abs(value) * math.expm1(tail), n)


# ----------------------------------------------------------------------------
# DEDEKIND ETA
# ----------------------------------------------------------------------------

_ETA = (_Family(0, 1, 1, Fraction(0), 1),)


def eta_series(tau: complex, tol=None) -> SeriesValue:
    """
    η(τ) = q^(1/24)·Π(1 - qⁿ) with the bound on the omitted factors.

    Args:
        tau: point of the upper half-plane
        tol: absolute/relative tolerance (float or SeriesTolerance)

    Returns:
        SeriesValue: value, error bound and number of factors used

    Example:
        >>> round(abs(eta_series(1j).value), 12)
        0.768225422326
    """
    return _evaluate_families(tau, Fraction(1, 24), _ETA, tol)


def eta(tau: complex, tol=None) -> complex:
    return eta_series(tau, tol).value


# ----------------------------------------------------------------------------
# LATTICE THETA FUNCTIONS
# ----------------------------------------------------------------------------
# Tail bound. With λ_min the smallest eigenvalue of the Gram matrix,
#   Σ_{|γ|²>B} e^{-πy|γ|²} ≤ e^{-πyB/2} · Σ_γ e^{-πy|γ|²/2}
#                          ≤ e^{-πyB/2} · (2 + sqrt(2/(y·λ_min)))^r,
# so B = (2/(πy))·(ln C - ln tol) suffices.

def _theta_constant(L: Lattice, y: float) -> float:
    if not L.rank:
        return 1.0
    lam_min = float(np.linalg.eigvalsh(L.gram_array).min())
    return (2 + math.sqrt(2 / (y * lam_min))) ** L.rank


def _theta_bound(L: Lattice, y: float, tol: float) -> float:
    c = _theta_constant(L, y)
    return max(0.0, 2 / (math.pi * y) * (math.log(c) - math.log(tol)))


def theta_series(L: Lattice, shift: Sequence, point, tol=None) -> SeriesValue:
    """
    θ_{shift+L}(τ, z, u) = e^(2πiu)·Σ_γ e^(2πi(γ|z))·q^(|γ|²/2), with the
    Gaussian tail bound above.

    Raises:
        NotUpperHalfPlane
    """
    point = _point(point)
    tol = _tolerance(tol)
    tau = complex(point.tau)
    y = tau.imag
    prefactor = abs(cmath.exp(2j * math.pi * complex(point.u)))
    bound = _theta_bound(L, y, tol.abs_tol / max(prefactor, 1e-300))
    found = enumerate_with_norms(L, shift, Fraction(bound).limit_denominator(10 ** 6) + 1)
    tail = prefactor * math.exp(-math.pi * y * bound / 2) * _theta_constant(L, y)

    z = point.z
    if Config.high_precision():
        with Config.mp_context():
            t = mpmath.mpc(tau.real, tau.imag)
            terms = []
            for vec, n in found:
                phase = 0
                if z is not None:
                    pair = sum(float(vec[i]) * L.gram[i][j] * complex(z[j])
                               for i in range(L.rank) for j in range(L.rank))
                    phase = 2 * mpmath.mpc(pair.real, pair.imag)
                terms.append(mpmath.expjpi(t * mpmath.mpf(n.numerator) / n.denominator + phase))
            u = complex(point.u)
            value = complex(mpmath.expjpi(2 * mpmath.mpc(u.real, u.imag)) * mpmath.fsum(terms))
    else:
        norms = np.array([float(n) for _, n in found])
        exponent = 1j * np.pi * tau * norms
        if z is not None and found:
            coords = np.array([[float(x) for x in vec] for vec, _ in found])
            zz = np.array([complex(x) for x in z])
            exponent = exponent + 2j * np.pi * (coords @ L.gram_array @ zz)
        value = complex(cmath.exp(2j * math.pi * complex(point.u)) * np.sum(np.exp(exponent)))
    return SeriesValue(value, tail, len(found))


def theta(L: Lattice, shift: Sequence, point, tol=None) -> complex:
    return theta_series(L, shift, point, tol).value


def theta_qseries(L: Lattice, shift: Sequence, truncation_order, offset=None) -> QSeries:
    """
    Exact expansion Σ_γ q^(|γ|²/2) of θ_{shift+L}, complete below
    `truncation_order`. Pass `offset` (a point of the exponent grid) to
    pin where the series starts, e.g. when it may be empty.
    """
    truncation = Fraction(truncation_order)
    found = enumerate_with_norms(L, shift, 2 * truncation)
    counts: dict[Fraction, int] = {}
    for _, n in found:
        e = n / 2
        if e < truncation:
            counts[e] = counts.get(e, 0) + 1
    return QSeries.from_terms(counts, truncation, offset=offset, denom=_theta_denominator(L, shift))


def _theta_denominator(L: Lattice, shift: Sequence) -> int:
    # |γ|²/2 runs through |shift|²/2 + (1/D)Z where D clears the pairings (shift|b_i)
    den = intmat.common_denominator(pairing_with_basis(L, shift))
    return max(den, 1)


def theta_qexpansion(L: Lattice, shift: Sequence, n_terms: int) -> QSeries:
    """
    θ_{shift+L} as an exact q-series holding its first n_terms distinct
    exponents; the truncation order is the next distinct exponent.

    Example:
        >>> A1 = Lattice(((2,),))
        >>> theta_qexpansion(A1, (0,), 4).terms()
        {Fraction(0, 1): 1, Fraction(1, 1): 2, Fraction(4, 1): 2, Fraction(9, 1): 2}
    """
    if n_terms < 1:
        raise ValueError("n_terms must be at least 1")
    _, start = min_norm_representative(L, shift)
    bound = start + 4
    while True:
        found = enumerate_with_norms(L, shift, bound)
        exponents = sorted({n / 2 for _, n in found})
        if len(exponents) > n_terms:
            break
        bound = 2 * bound + 2
    truncation = exponents[n_terms]
    logger.debug("theta q-expansion truncated at q^%s (%d vectors)", truncation, len(found))
    counts: dict[Fraction, int] = {}
    for _, n in found:
        if n / 2 < truncation:
            counts[n / 2] = counts.get(n / 2, 0) + 1
    return QSeries.from_terms(counts, truncation, offset=exponents[0],
                              denom=_theta_denominator(L, shift))


# ----------------------------------------------------------------------------
# RANK-ONE FUNCTIONS: K_l AND THE TRIPLE PRODUCT
# ----------------------------------------------------------------------------

def k_function(l: int, tau: complex, zeta: complex = 0j, m: int = 2, tol=None) -> complex:
    """
    K_l(τ, ζ; m) = θ_{(l/m)α + Zα}(τ, (ζ/2)α, 0) / η(τ) with |α|² = m.

    Example:
        >>> abs(k_function(1, 1j, 0, 4) - k_function(-1, 1j, 0, 4)) < 1e-12
        True
    """
    if m < 1:
        raise ValueError(f"m must be a positive integer, got {m}")
    tau = _check_tau(tau)
    line = Lattice(((m,),))
    point = ModularPoint(tau, (complex(zeta) / 2,), 0j)
    return theta(line, (Fraction(l, m),), point, tol) / eta(tau, tol)


def p_triple(tau: complex, zeta: complex, tol=None) -> complex:
    """P(τ,ζ) = q^(1/12)·Π_{n≥1} (1 - e^(-2πiζ)qⁿ)(1 - e^(2πiζ)q^(n-1))."""
    tau = _check_tau(tau)
    tol = _tolerance(tol)
    zeta = complex(zeta)
    z = cmath.exp(2j * math.pi * zeta)
    absq = math.exp(-2 * math.pi * tau.imag)
    az = abs(z)
    n = 1
    while n < tol.max_terms and absq ** n * max(az, 1 / az) / (1 - absq) > tol.abs_tol:
        n += 1
    if Config.high_precision():
        with Config.mp_context():
            t = mpmath.mpc(tau.real, tau.imag)
            w = mpmath.expjpi(2 * mpmath.mpc(zeta.real, zeta.imag))
            q = mpmath.expjpi(2 * t)
            value = mpmath.expjpi(t / 6) * mpmath.fprod(
                (1 - q ** k / w) * (1 - w * q ** (k - 1)) for k in range(1, n + 1))
            return complex(value)
    k = np.arange(1, n + 1, dtype=float)
    factors = (1 - np.exp(2j * np.pi * tau * k) / z) * (1 - z * np.exp(2j * np.pi * tau * (k - 1)))
    return complex(cmath.exp(1j * math.pi * tau / 6) * np.prod(factors))


def p_triple_sum(tau: complex, zeta: complex, tol=None) -> complex:
    """The same function through Jacobi's triple product: (q^(1/8)/η)·Σ(-z)^m q^(m(m-1)/2)."""
    tau = _check_tau(tau)
    tol = _tolerance(tol)
    zeta = complex(zeta)
    y = tau.imag
    bound = 1
    # |(-z)^m q^{m(m-1)/2}| decays like a Gaussian in m
    while bound < tol.max_terms:
        worst = max(math.exp(-2 * math.pi * (y * bound * (bound - 1) / 2 + s * bound * zeta.imag))
                    for s in (1, -1))
        if worst < tol.abs_tol * 1e-3:
            break
        bound += 1
    m = np.arange(-bound, bound + 2, dtype=float)
    signs = np.where(m % 2, -1.0, 1.0)
    total = np.sum(signs * np.exp(2j * np.pi * (m * zeta + tau * m * (m - 1) / 2)))
    return complex(cmath.exp(1j * math.pi * tau / 4) * total / eta(tau, tol))


# ----------------------------------------------------------------------------
# TWISTED DENOMINATORS P_{σ^l, σ^k}
# ----------------------------------------------------------------------------

def _data(sigma: Isometry | SigmaData) -> SigmaData:
    return sigma if isinstance(sigma, SigmaData) else sigma_data(sigma)


def _denominator_families(data: SigmaData, k: int, twist: int) -> tuple[Fraction, tuple[_Family, ...]]:
    """
    Prefactor exponent and factor families of P_{σ^twist, σ^k}.

    twist = 0 is the untwisted row P_{1,σ^k}; twist = l ≠ 0 reduces to
    P_{σ, σ^(k·l⁻¹)}.
    """
    n = data.p
    r = data.rank
    dims = data.eigen.dims
    k %= n
    twist %= n
    prime = data.sigma.is_prime_order
    if k and not prime:
        raise UnsupportedOrder(n, "p_denominator with k != 0")

    if twist == 0:
        if k == 0:
            return Fraction(r, 24), (_Family(0, 1, 1, Fraction(0), r),)
        # det_h(1 - σ^k q^m) = (1 - q^m)^{r0} · Π_j (1 - ω^{-jk} q^m)^{dim h_{j/p}}
        families = [_Family(0, 1, 1, Fraction(0), dims[0])]
        families += [_Family((-j * k) % n, n, 1, Fraction(0), dims[j]) for j in range(1, n)]
        return Fraction(r, 24), tuple(families)

    if math.gcd(twist, n) != 1:
        raise UnsupportedOrder(n, f"twist σ^{twist} not coprime to the order")
    if k:
        k = (k * pow(twist, -1, n)) % n
    families = [_Family(0, 1, 1, Fraction(0), dims[0])]
    families += [_Family((-j * k) % n, n, 1, -Fraction(j, n), dims[j]) for j in range(1, n)]
    return -data.delta + Fraction(r, 24), tuple(families)


def p_denominator_series(sigma: Isometry | SigmaData, k: int, tau: complex, tol=None,
                         twist: int = 1, method: str = "product") -> SeriesValue:
    """
    P_{σ^twist, σ^k}(τ) with its tail bound.

    Args:
        sigma: isometry (or its cached data)
        k: power of σ inserted in the trace
        tau: point of the upper half-plane
        tol: tolerance
        twist: 0 for the untwisted row P_{1,σ^k}, l for the σ^l-twisted row
        method: "product" multiplies the factors, "log" sums their logarithms

    Raises:
        NotUpperHalfPlane, UnsupportedOrder
    """
    data = _data(sigma)
    offset, families = _denominator_families(data, k, twist)
    return _evaluate_families(tau, offset, families, tol, method)


def p_denominator(sigma: Isometry | SigmaData, k: int, tau: complex, tol=None, twist: int = 1) -> complex:
    """
    P_{σ,σ^k}(τ); twist=0 gives P_{1,σ^k} (η^r for k = 0).

    Example:
        >>> A3 = new_lattice([[2, -1, 0], [-1, 2, -1], [0, -1, 2]])
        >>> sigma = new_isometry(A3, [[0, 0, 1], [0, 1, 0], [1, 0, 0]])
        >>> abs(p_denominator(sigma, 0, 1j, twist=0) - eta(1j) ** 3) < 1e-12
        True
    """
    return p_denominator_series(sigma, k, tau, tol, twist).value


def p_denominator_qseries(sigma: Isometry | SigmaData, k: int, span, twist: int = 1) -> QSeries:
    """
    Exact expansion of P_{σ^twist, σ^k} on [offset, offset + span).

    Coefficients live in Z[ω] (ω = e^(2πi/p)); they are rational when k = 0.
    """
    data = _data(sigma)
    offset, families = _denominator_families(data, k, twist)
    n = data.p
    denom = n if twist % n else (n if k % n else 1)
    nslots = math.ceil(Fraction(span) * denom)
    ring = n if any(f.root for f in families) else 1
    series = QSeries.one(max(nslots, 0), denom, ring)
    for f in families:
        if not f.power:
            continue
        coefficient = CycloInt.root(f.order, f.root) if ring > 1 else CycloInt.from_int(1, 1)
        m = 1
        while True:
            slots = (f.step * m + f.shift) * denom
            if slots >= nslots:
                break
            series = series.mul_binomial(coefficient, int(slots), f.power)
            m += 1
    logger.debug("P_{σ^%d,σ^%d} expanded to q^%s", twist, k, offset + Fraction(nslots, denom))
    return series.shift(offset)


def p_denominator_qexpansion(sigma: Isometry | SigmaData, k: int, n_terms: int, twist: int = 1) -> QSeries:
    """
    Exact expansion of P_{σ^twist, σ^k} with n_terms slots on its natural
    grid: (1/p)Z for twisted rows and for untwisted rows with k ≠ 0, Z for
    P_{1,1}.
    """
    if n_terms < 1:
        raise ValueError("n_terms must be at least 1")
    data = _data(sigma)
    n = data.p
    denom = n if (twist % n or k % n) else 1
    return p_denominator_qseries(data, k, Fraction(n_terms, denom), twist)


def p_denominator_s_constant(sigma: Isometry | SigmaData, k: int, samples: Sequence[complex] | None = None,
                             tol=None) -> complex:
    """
    The constant in the S-law of a twisted denominator.

    - k = 0:  P_{σ,1}(-1/τ) = p^(dperp/2)·(-iτ)^(r0/2)·P_{1,σ}(τ); returns p^(dperp/2).
    - k ≠ 0:  P_{σ,σ^k}(-1/τ) = κ·(-iτ)^(r0/2)·P_{σ,σ^k'}(τ) with k·k' ≡ -1 mod p;
      returns κ, snapped to a 24p-th root of unity.

    Both are checked numerically at every sample τ.

    Raises:
        UnsupportedOrder, InconsistentSamples
    """
    data = _data(sigma)
    p = data.p
    if not data.sigma.is_prime_order:
        raise UnsupportedOrder(p, "p_denominator_s_constant")
    samples = tuple(samples or Config.sample_taus)
    k %= p
    ratios = []
    for tau in samples:
        tau = _check_tau(tau)
        lhs = p_denominator(data, k, -1 / tau, tol, twist=1)
        if k == 0:
            rhs = p_denominator(data, 1, tau, tol, twist=0)
        else:
            k_dual = (-pow(k, -1, p)) % p
            rhs = p_denominator(data, k_dual, tau, tol, twist=1)
        ratios.append(lhs / (principal_power(-1j * tau, Fraction(data.r0, 2)) * rhs))

    if k == 0:
        expected = p ** (data.dperp / 2)
        worst = max(abs(x - expected) for x in ratios)
        if worst > Config.snap_tol * max(1.0, expected):
            raise InconsistentSamples(f"P_(σ,1) S-law constant {ratios} differs from {expected}")
        return complex(expected)

    if max(abs(x - ratios[0]) for x in ratios) > Config.snap_tol:
        raise InconsistentSamples(f"P_(σ,σ^{k}) S-law constants disagree across samples: {ratios}")
    a, _ = snap_root_of_unity(ratios[0], 24 * p)
    return cmath.exp(2j * math.pi * a / (24 * p))


def p_denominator_leading_exponent(sigma: Isometry | SigmaData, k: int, twist: int = 1) -> Fraction:
    """-Δ_σ + r/24 for twisted rows, r/24 for the untwisted row."""
    return _denominator_families(_data(sigma), k, twist)[0]

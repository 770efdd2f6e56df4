# ============================================================================
# EXACT q-SERIES MODULE
# ============================================================================
# Truncated q-expansions with exact exponents and exact coefficients.
#
# WHAT IS STORED?
# A series  q^offset · Σ_n c_n q^(n/denom)  known exactly for n < len(c).
# So every exponent is  offset + n/denom  (an exact Fraction) and the
# truncation order is  offset + len(c)/denom.
#
# WHY CYCLOTOMIC COEFFICIENTS?
# Twisted traces carry p-th roots of unity ω = e^(2πi/p). To stay exact
# we store each coefficient as an element of Z[ω] written in the basis
# 1, ω, ..., ω^(p-2) (the ω^(p-1) slot is always folded away using
# 1 + ω + ... + ω^(p-1) = 0). Plain integer series use p = 1.
# ============================================================================

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable

import numpy as np

__all__ = [
    "CycloInt",
    "QSeries",
]


# ----------------------------------------------------------------------------
# CYCLOTOMIC INTEGERS
# ----------------------------------------------------------------------------

class CycloInt:
    """
    Element of Z[ω], ω = e^(2πi/p) for p prime (or p = 1 for plain Z).

    Example:
        >>> w = CycloInt.root(3, 1)
        >>> (w * w * w) == CycloInt.from_int(3, 1)
        True
    """

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs: Iterable[int]):
        c = [int(x) for x in coeffs]
        if len(c) != order:
            raise ValueError(f"expected {order} coefficients, got {len(c)}")
        if order > 1 and c[-1]:
            # Fold the top power away: ω^(p-1) = -(1 + ω + ... + ω^(p-2))
            top = c[-1]
            c = [x - top for x in c]
        self.order = order
        self.coeffs = tuple(c)

    # Constructors -------------------------------------------------------

    @classmethod
    def from_int(cls, order: int, value: int) -> "CycloInt":
        return cls(order, [value] + [0] * (order - 1))

    @classmethod
    def zero(cls, order: int) -> "CycloInt":
        return cls(order, [0] * order)

    @classmethod
    def root(cls, order: int, k: int) -> "CycloInt":
        """ω^k."""
        c = [0] * order
        c[k % order] = 1
        return cls(order, c)

    def lift(self, order: int) -> "CycloInt":
        if order == self.order:
            return self
        if self.order != 1:
            raise ValueError(f"cannot lift Z[ω_{self.order}] into Z[ω_{order}]")
        return CycloInt.from_int(order, self.coeffs[0])

    # Arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "CycloInt":
        if isinstance(other, CycloInt):
            if other.order == self.order:
                return other
            if other.order == 1:
                return other.lift(self.order)
            if self.order == 1:
                raise _PromoteLeft(other.order)
            raise ValueError("mismatched cyclotomic orders")
        if isinstance(other, int):
            return CycloInt.from_int(self.order, other)
        return NotImplemented

    def __add__(self, other):
        try:
            o = self._coerce(other)
        except _PromoteLeft as up:
            return self.lift(up.order) + other
        if o is NotImplemented:
            return NotImplemented
        return CycloInt(self.order, [x + y for x, y in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CycloInt(self.order, [-x for x in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return CycloInt(self.order, [x * other for x in self.coeffs])
        try:
            o = self._coerce(other)
        except _PromoteLeft as up:
            return self.lift(up.order) * other
        if o is NotImplemented:
            return NotImplemented
        p = self.order
        out = [0] * p
        for i, x in enumerate(self.coeffs):
            if not x:
                continue
            for j, y in enumerate(o.coeffs):
                if y:
                    out[(i + j) % p] += x * y
        return CycloInt(p, out)

    __rmul__ = __mul__

    def exact_div(self, n: int) -> "CycloInt":
        if any(x % n for x in self.coeffs):
            raise ValueError(f"{self} is not divisible by {n}")
        return CycloInt(self.order, [x // n for x in self.coeffs])

    # Predicates and conversion -------------------------------------------

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_int(self) -> int:
        if not self.is_rational():
            raise ValueError(f"{self} is not a rational integer")
        return self.coeffs[0]

    def __complex__(self) -> complex:
        p = self.order
        return complex(sum(x * cmath.exp(2j * cmath.pi * k / p) for k, x in enumerate(self.coeffs) if x))

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = CycloInt.from_int(self.order, other)
        if not isinstance(other, CycloInt):
            return NotImplemented
        if other.order != self.order:
            if self.is_rational() and other.is_rational():
                return self.coeffs[0] == other.coeffs[0]
            return False
        return self.coeffs == other.coeffs

    def __hash__(self):
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash((self.order, self.coeffs))

    def __repr__(self) -> str:
        if self.is_rational():
            return str(self.coeffs[0])
        parts = []
        for k, x in enumerate(self.coeffs):
            if x:
                parts.append(f"{x}" if k == 0 else f"{x}*w^{k}")
        return "(" + " + ".join(parts) + ")"


class _PromoteLeft(Exception):
    def __init__(self, order: int):
        self.order = order


# ----------------------------------------------------------------------------
# TRUNCATED q-SERIES
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class QSeries:
    """
    q^offset · Σ_n coeffs[n] q^(n/denom), exact for exponents below
    truncation_order.
    """

    offset: Fraction
    denom: int
    coeffs: tuple[CycloInt, ...]
    ring_order: int = 1

    # Construction -------------------------------------------------------

    @classmethod
    def from_terms(cls, terms: dict, truncation_order: Fraction, ring_order: int = 1,
                   offset: Fraction | None = None, denom: int | None = None) -> "QSeries":
        """Build from {exponent: coefficient}; all exponents must be < truncation_order."""
        exps = [Fraction(e) for e in terms]
        if offset is None:
            offset = min(exps) if exps else Fraction(truncation_order)
        if denom is None:
            denom = 1
            for e in exps:
                denom = lcm(denom, (e - offset).denominator)
            denom = lcm(denom, (Fraction(truncation_order) - offset).denominator)
        nslots_f = (Fraction(truncation_order) - offset) * denom
        nslots = max(0, int(nslots_f) if nslots_f.denominator == 1 else int(nslots_f) + 1)
        coeffs = [CycloInt.zero(ring_order)] * nslots
        for e, c in terms.items():
            n = (Fraction(e) - offset) * denom
            if n.denominator != 1 or n < 0:
                raise ValueError(f"exponent {e} is not on the grid {offset} + Z/{denom}")
            if n >= nslots:
                raise ValueError(f"exponent {e} is not below the truncation order")
            c = c if isinstance(c, CycloInt) else CycloInt.from_int(1, c)
            coeffs[int(n)] = c.lift(ring_order)
        return cls(Fraction(offset), denom, tuple(coeffs), ring_order)

    @classmethod
    def one(cls, nslots: int, denom: int = 1, ring_order: int = 1) -> "QSeries":
        coeffs = [CycloInt.zero(ring_order)] * nslots
        if nslots:
            coeffs[0] = CycloInt.from_int(ring_order, 1)
        return cls(Fraction(0), denom, tuple(coeffs), ring_order)

    # Properties ---------------------------------------------------------

    @property
    def truncation_order(self) -> Fraction:
        return self.offset + Fraction(len(self.coeffs), self.denom)

    def exponent(self, n: int) -> Fraction:
        return self.offset + Fraction(n, self.denom)

    def terms(self) -> dict:
        """Nonzero terms {exponent: coefficient}; rational coefficients come back as int."""
        out = {}
        for n, c in enumerate(self.coeffs):
            if not c.is_zero():
                out[self.exponent(n)] = c.to_int() if c.is_rational() else c
        return out

    def leading_exponent(self) -> Fraction | None:
        for n, c in enumerate(self.coeffs):
            if not c.is_zero():
                return self.exponent(n)
        return None

    def is_rational(self) -> bool:
        return all(c.is_rational() for c in self.coeffs)

    # Grid manipulation --------------------------------------------------

    def regrid(self, denom: int) -> "QSeries":
        """Same series on a finer grid (denom must be a multiple of self.denom)."""
        if denom == self.denom:
            return self
        if denom % self.denom:
            raise ValueError(f"cannot regrid 1/{self.denom} onto 1/{denom}")
        step = denom // self.denom
        zero = CycloInt.zero(self.ring_order)
        coeffs = [zero] * (len(self.coeffs) * step)
        for n, c in enumerate(self.coeffs):
            coeffs[n * step] = c
        return QSeries(self.offset, denom, tuple(coeffs), self.ring_order)

    def lift(self, ring_order: int) -> "QSeries":
        if ring_order == self.ring_order:
            return self
        return QSeries(self.offset, self.denom, tuple(c.lift(ring_order) for c in self.coeffs), ring_order)

    def shift(self, delta: Fraction) -> "QSeries":
        """Multiply by q^delta."""
        return QSeries(self.offset + Fraction(delta), self.denom, self.coeffs, self.ring_order)

    # Arithmetic ---------------------------------------------------------

    def _align(self, other: "QSeries") -> tuple["QSeries", "QSeries"]:
        denom = lcm(self.denom, other.denom)
        ring = max(self.ring_order, other.ring_order)
        return self.regrid(denom).lift(ring), other.regrid(denom).lift(ring)

    def __add__(self, other: "QSeries") -> "QSeries":
        a, b = self._align(other)
        lo = min(a.offset, b.offset)
        hi = min(a.truncation_order, b.truncation_order)
        nslots = int((hi - lo) * a.denom)
        zero = CycloInt.zero(a.ring_order)
        out = [zero] * max(nslots, 0)
        for s in (a, b):
            start = (s.offset - lo) * a.denom
            if start.denominator != 1:
                raise ValueError("series offsets are not on a common grid")
            start = int(start)
            for n, c in enumerate(s.coeffs):
                if start + n < nslots:
                    out[start + n] = out[start + n] + c
        return QSeries(lo, a.denom, tuple(out), a.ring_order)

    def scale(self, factor) -> "QSeries":
        """Multiply every coefficient by an int or CycloInt."""
        if isinstance(factor, CycloInt) and factor.order != self.ring_order:
            s = self.lift(factor.order)
        else:
            s = self
        return QSeries(s.offset, s.denom, tuple(c * factor for c in s.coeffs), s.ring_order)

    def __neg__(self) -> "QSeries":
        return self.scale(-1)

    def __sub__(self, other: "QSeries") -> "QSeries":
        return self + (-other)

    def __mul__(self, other: "QSeries") -> "QSeries":
        a, b = self._align(other)
        n = min(len(a.coeffs), len(b.coeffs))
        zero = CycloInt.zero(a.ring_order)
        out = [zero] * n
        for i in range(n):
            ci = a.coeffs[i]
            if ci.is_zero():
                continue
            for j in range(n - i):
                cj = b.coeffs[j]
                if not cj.is_zero():
                    out[i + j] = out[i + j] + ci * cj
        return QSeries(a.offset + b.offset, a.denom, tuple(out), a.ring_order)

    def __truediv__(self, other: "QSeries") -> "QSeries":
        """Series division; the divisor's first slot must be exactly 1."""
        a, b = self._align(other)
        if not b.coeffs or b.coeffs[0] != 1:
            raise ValueError("divisor must have leading coefficient 1")
        n = min(len(a.coeffs), len(b.coeffs))
        out: list[CycloInt] = []
        for k in range(n):
            acc = a.coeffs[k]
            for j in range(1, k + 1):
                if not b.coeffs[j].is_zero() and not out[k - j].is_zero():
                    acc = acc - b.coeffs[j] * out[k - j]
            out.append(acc)
        return QSeries(a.offset - b.offset, a.denom, tuple(out), a.ring_order)

    def exact_div(self, n: int) -> "QSeries":
        return QSeries(self.offset, self.denom, tuple(c.exact_div(n) for c in self.coeffs), self.ring_order)

    def mul_binomial(self, coefficient: CycloInt, slots: int, power: int = 1) -> "QSeries":
        """Multiply by (1 - coefficient·q^(slots/denom))^power, in place on a copy."""
        coeffs = list(self.lift(coefficient.order if coefficient.order > 1 else self.ring_order).coeffs)
        ring = max(self.ring_order, coefficient.order)
        c = coefficient.lift(ring)
        for _ in range(power):
            for i in range(len(coeffs) - 1, slots - 1, -1):
                if not coeffs[i - slots].is_zero():
                    coeffs[i] = coeffs[i] - c * coeffs[i - slots]
        return QSeries(self.offset, self.denom, tuple(coeffs), ring)

    # Evaluation ---------------------------------------------------------

    def evaluate(self, tau: complex) -> complex:
        """Partial sum Σ c_n e^(2πiτ·exponent_n) in double precision."""
        if not self.coeffs:
            return 0j
        exps = np.array([float(self.exponent(n)) for n in range(len(self.coeffs))])
        vals = np.array([complex(c) for c in self.coeffs])
        return complex(np.sum(vals * np.exp(2j * np.pi * tau * exps)))

    def __repr__(self) -> str:
        parts = [f"{c}*q^({e})" for e, c in self.terms().items()]
        body = " + ".join(parts) if parts else "0"
        return f"QSeries({body} + O(q^({self.truncation_order})))"

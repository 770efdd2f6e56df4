"""
Shared fixtures: the built-in examples (classified once per session) and
brute-force oracles the fast code paths are checked against.
"""

import cmath
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from types import SimpleNamespace

import numpy as np
import pytest

from orbichar.catalog import example
from orbichar.characters import TYPE1, TYPE2, TYPE3, Classification, classify
from orbichar.config import Config
from orbichar.isometry import Isometry
from orbichar.lattice import Lattice, box_enumerate_vectors, norm

F = Fraction

A3_LAMBDA1 = (F(3, 4), F(1, 2), F(1, 4))
A3_LAMBDA2 = (F(1, 2), F(1), F(1, 2))
A3_HALF_ALPHA2 = (F(0), F(1, 2), F(0))


@dataclass(frozen=True)
class Case:
    L: Lattice
    sigma: Isometry
    cls: Classification


def _case(name, **kwargs) -> Case:
    L, sigma = example(name, **kwargs)
    return Case(L, sigma, classify(L, sigma))


@pytest.fixture(scope="session")
def a2bar() -> Case:
    return _case("a2bar")


@pytest.fixture(scope="session")
def a3() -> Case:
    return _case("a3")


@pytest.fixture(scope="session")
def d4() -> Case:
    return _case("d4")


@pytest.fixture(scope="session")
def perm31() -> Case:
    return _case("perm", p=3, t=1)


@pytest.fixture
def rng():
    return np.random.default_rng(20261017)


@pytest.fixture(autouse=True)
def _restore_precision():
    bits = Config.precision_bits()
    yield
    Config.set_precision_bits(bits)


# ----------------------------------------------------------------------------
# A3 IN THE PUBLISHED BASIS ORDER
# ----------------------------------------------------------------------------
# [χ_0^+, χ_0^-, χ_Λ1, χ_Λ2^+, χ_Λ2^-, χ_0^{σ,+}, χ_0^{σ,-}, χ_{α2/2}^{σ,+}, χ_{α2/2}^{σ,-}]
# with "+" the j = 0 component.

A3_S = np.array([
    [1, 1, 2, 1, 1, math.sqrt(2), math.sqrt(2), math.sqrt(2), math.sqrt(2)],
    [1, 1, 2, 1, 1, -math.sqrt(2), -math.sqrt(2), -math.sqrt(2), -math.sqrt(2)],
    [2, 2, 0, -2, -2, 0, 0, 0, 0],
    [1, 1, -2, 1, 1, math.sqrt(2), math.sqrt(2), -math.sqrt(2), -math.sqrt(2)],
    [1, 1, -2, 1, 1, -math.sqrt(2), -math.sqrt(2), math.sqrt(2), math.sqrt(2)],
    [math.sqrt(2), -math.sqrt(2), 0, math.sqrt(2), -math.sqrt(2), 0, 0, 2, -2],
    [math.sqrt(2), -math.sqrt(2), 0, math.sqrt(2), -math.sqrt(2), 0, 0, -2, 2],
    [math.sqrt(2), -math.sqrt(2), 0, -math.sqrt(2), math.sqrt(2), 2, -2, 0, 0],
    [math.sqrt(2), -math.sqrt(2), 0, -math.sqrt(2), math.sqrt(2), -2, 2, 0, 0],
]) / 4

_E8 = cmath.exp(1j * math.pi / 8)
A3_T = cmath.exp(-1j * math.pi / 4) * np.diag(
    [1, 1, cmath.exp(3j * math.pi / 4), -1, -1, _E8, -_E8, 1j * _E8, -1j * _E8])


@pytest.fixture(scope="session")
def a3_order(a3):
    """Positions of the published A3 basis inside the classification."""
    cls = a3.cls
    zero = cls.untwisted_index((0, 0, 0))
    lam1 = cls.data.orbits.representative_index[cls.untwisted_index(A3_LAMBDA1)]
    lam2 = cls.untwisted_index(A3_LAMBDA2)
    mu0 = cls.twisted_index((0, 0, 0))
    mu2 = cls.twisted_index(A3_HALF_ALPHA2)
    return [
        cls.position(TYPE1, zero, j=0),
        cls.position(TYPE1, zero, j=1),
        cls.position(TYPE2, lam1),
        cls.position(TYPE1, lam2, j=0),
        cls.position(TYPE1, lam2, j=1),
        cls.position(TYPE3, mu0, j=0, l=1, zeta=1),
        cls.position(TYPE3, mu0, j=1, l=1, zeta=1),
        cls.position(TYPE3, mu2, j=0, l=1, zeta=1),
        cls.position(TYPE3, mu2, j=1, l=1, zeta=1),
    ]


# ----------------------------------------------------------------------------
# ORACLES
# ----------------------------------------------------------------------------

def naive_theta(L: Lattice, shift, tau: complex, z=None, bound: int = 40) -> complex:
    """Σ e^{2πi(γ|z)} e^{πiτ|γ|²} over a box search of the coset."""
    total = 0j
    for v in box_enumerate_vectors(L, shift, bound):
        phase = 0j
        if z is not None:
            phase = 2j * math.pi * sum(float(v[i]) * L.gram[i][j] * z[j]
                                       for i in range(L.rank) for j in range(L.rank))
        total += cmath.exp(1j * math.pi * tau * float(norm(L, v)) + phase)
    return total


def colored_partitions(colors: int, n: int) -> list[int]:
    """Coefficients of Π_m (1 - q^m)^(-colors) below q^n."""
    counts = [1] + [0] * (n - 1)
    for part in range(1, n):
        for _ in range(colors):
            for m in range(part, n):
                counts[m] += counts[m - part]
    return counts


def theta_counts(L: Lattice, shift, below) -> dict[Fraction, int]:
    """q-expansion coefficients of θ_{shift+L} below q^below, by box search."""
    counts = Counter()
    for v in box_enumerate_vectors(L, shift, 2 * below):
        exponent = norm(L, v) / 2
        if exponent < below:
            counts[exponent] += 1
    return dict(counts)


def random_even_gram(rng, rank: int) -> tuple[tuple[int, ...], ...]:
    """2·BᵀB for a random unimodular-ish B = 1 + small noise (nonsingular)."""
    while True:
        b = np.eye(rank, dtype=int) + rng.integers(-1, 2, size=(rank, rank))
        if round(abs(np.linalg.det(b))) >= 1:
            gram = 2 * b.T @ b
            return tuple(tuple(int(x) for x in row) for row in gram)


@pytest.fixture(scope="session")
def oracles():
    return SimpleNamespace(naive_theta=naive_theta, colored_partitions=colored_partitions, theta_counts=theta_counts,
                           random_even_gram=random_even_gram)


@pytest.fixture(scope="session")
def a3_published():
    return SimpleNamespace(S=A3_S, T=A3_T, lambda1=A3_LAMBDA1, lambda2=A3_LAMBDA2,
                           half_alpha2=A3_HALF_ALPHA2)

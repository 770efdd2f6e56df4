import cmath
import math
from collections import defaultdict
from fractions import Fraction

import pytest

from orbichar.catalog import a2, example
from orbichar.characters import (
    TYPE1,
    TYPE2,
    TYPE3,
    OrbifoldModuleLabel,
    TraceKey,
    char_orbifold,
    char_orbifold_qexpansion,
    char_twisted_trace,
    char_untwisted_trace,
    classify,
    conformal_weight,
    label_traces,
    permutation_lattice,
    permutation_orbifold,
    permutation_twisted_trace,
    permutation_untwisted_trace,
    trace_qexpansion,
    trace_to_labels,
    trace_value,
    untwisted_trace_qseries,
)
from orbichar.exceptions import (
    CharacterError,
    DimensionMismatch,
    InvalidTwist,
    NotPrime,
    NotProjected,
    QbarMismatch,
    UnsupportedOrder,
)
from orbichar.isometry import delta_sigma, new_isometry
from orbichar.lattice import Lattice, discriminant_group, new_lattice
from orbichar.modular_functions import ModularPoint, theta_qseries

F = Fraction
TAU = 0.1 + 0.9j
A1 = Lattice(((2,),))


class TestClassify:
    @pytest.mark.parametrize("case, total, counts", [
        ("a2bar", 20, (8, 4, 8)),
        ("a3", 9, (4, 1, 4)),
        ("d4", 10, (3, 1, 6)),
        ("perm31", 20, (6, 2, 12)),
    ])
    def test_counts(self, request, case, total, counts):
        cls = request.getfixturevalue(case).cls
        assert cls.total == total
        assert (cls.counts[TYPE1], cls.counts[TYPE2], cls.counts[TYPE3]) == counts
        assert [lab.kind for lab in cls.labels].count(TYPE3) == counts[2]

    @pytest.mark.parametrize("t, total", [(1, 20), (2, 56)])
    def test_permutation_count_formula(self, t, total):
        cls = classify(*example("perm", p=3, t=t))
        assert cls.total == total == 18 * t + F(2, 3) * (4 * t ** 3 - t)

    def test_vacuum_first_and_names(self, a3, a3_order):
        cls = a3.cls
        assert cls.labels[0].is_vacuum
        assert cls.labels[0].display_name == "V[(0,0,0)]^0"
        assert cls.labels[a3_order[1]].display_name == "V[(0,0,0)]^1"
        assert cls.labels[a3_order[5]].display_name == "M[(0,0,0),1;σ^1]^0"
        assert cls.index(cls.labels[a3_order[7]]) == a3_order[7]

    def test_twisted_cosets(self, a3, a2bar):
        assert len(a3.cls.mus) == 2
        assert sorted(c.norm for c in a3.cls.mus) == [0, F(1, 2)]
        assert a2bar.cls.data.z_mu == 2
        zetas = {lab.zeta for lab in a2bar.cls.labels if lab.kind == TYPE3}
        assert zetas == {1, 2}

    def test_qbar_mismatch(self):
        with pytest.raises(QbarMismatch):
            classify(*a2())

    def test_lattice_mismatch(self, a3, d4):
        with pytest.raises(DimensionMismatch):
            classify(d4.L, a3.sigma)

    def test_non_prime_order(self):
        L = new_lattice([[2, 0], [0, 2]])
        with pytest.raises(UnsupportedOrder):
            classify(L, new_isometry(L, [[0, -1], [1, 0]]))

    def test_twisted_index_rejects_foreign_vectors(self, a3):
        with pytest.raises(NotProjected):
            a3.cls.twisted_index((F(1, 3), 0, 0))


class TestConformalWeights:
    def test_a3(self, a3, a3_order):
        labels = [a3.cls.labels[i] for i in a3_order]
        expected = [0, 1, F(3, 8), F(1, 2), F(1, 2), F(1, 16), F(9, 16), F(5, 16)]
        for label, h in zip(labels, expected):
            assert conformal_weight(label).value == h, label.display_name

    def test_twisted_sector_starts_at_delta(self, d4):
        delta = delta_sigma(d4.sigma)
        for label in d4.cls.labels:
            if label.kind == TYPE3 and label.j == 0:
                assert conformal_weight(label).value >= delta


class TestTraceFunctions:
    def test_error_paths(self, a3, a3_published):
        sigma = a3.sigma
        with pytest.raises(InvalidTwist):
            char_untwisted_trace(sigma, a3_published.lambda1, 1, TAU)
        with pytest.raises(InvalidTwist):
            char_twisted_trace(sigma, (0, 0, 0), 2, 0, TAU)
        with pytest.raises(NotProjected):
            char_twisted_trace(sigma, (F(1, 3), 0, 0), 1, 0, TAU)
        with pytest.raises(CharacterError):
            char_orbifold(OrbifoldModuleLabel(TYPE1, (0, 0, 0), 0), TAU)
        with pytest.raises(CharacterError):
            char_untwisted_trace(sigma, (0, 0, 0), 1, ModularPoint(TAU, (0.1, 0, 0)))

    def test_zero_h_is_no_h(self, a3):
        plain = char_untwisted_trace(a3.sigma, (0, 0, 0), 1, TAU)
        with_h = char_untwisted_trace(a3.sigma, (0, 0, 0), 1, ModularPoint(TAU, (0, 0, 0)))
        assert abs(plain - with_h) < 1e-12

    def test_sum_over_eigenvalues(self, a3):
        cls = a3.cls
        zero = cls.untwisted_index((0, 0, 0))
        total = sum(char_orbifold(cls.labels[cls.position(TYPE1, zero, j=j)], TAU) for j in range(2))
        assert abs(total - char_untwisted_trace(a3.sigma, (0, 0, 0), 0, TAU)) < 1e-11
        mu = cls.mus[1].vector
        twisted = sum(char_orbifold(cls.labels[cls.position(TYPE3, 1, j=j, l=1, zeta=1)], TAU) for j in range(2))
        assert abs(twisted - char_twisted_trace(a3.sigma, mu, 1, 0, TAU)) < 1e-11

    @pytest.mark.parametrize("case", ["a2bar", "a3", "d4", "perm31"])
    def test_fixed_coset_characters_are_degenerate(self, request, rng, case):
        data = request.getfixturevalue(case)
        cls, sigma = data.cls, data.sigma
        p = sigma.order
        tau = complex(rng.uniform(-0.5, 0.5), rng.uniform(0.8, 1.4))
        for lam in cls.data.orbits.fixed:
            coset = cls.untwisted_index(lam)
            plain = char_untwisted_trace(sigma, lam, 0, tau)
            twisted = char_untwisted_trace(sigma, lam, 1, tau)
            for k in range(2, p):
                assert abs(char_untwisted_trace(sigma, lam, k, tau) - twisted) < 1e-12 * max(1.0, abs(twisted))
            values = [char_orbifold(cls.labels[cls.position(TYPE1, coset, j=j)], tau) for j in range(p)]
            scale = max(1.0, abs(plain))
            assert abs(values[0] - (plain + (p - 1) * twisted) / p) < 1e-10 * scale, lam
            for j in range(1, p):
                assert abs(values[j] - (plain - twisted) / p) < 1e-10 * scale, (lam, j)

    @pytest.mark.parametrize("case", ["a2bar", "d4", "perm31"])
    def test_twisted_characters_depend_only_on_coset_and_eigenvalue(self, request, case):
        cls = request.getfixturevalue(case).cls
        p = cls.p
        for c in range(len(cls.mus)):
            for j in range(p):
                reference = char_orbifold(cls.labels[cls.position(TYPE3, c, j=j, l=1, zeta=1)], TAU)
                for l in range(1, p):
                    for zeta in range(1, cls.data.z_mu + 1):
                        label = cls.labels[cls.position(TYPE3, c, j=j, l=l, zeta=zeta)]
                        assert abs(char_orbifold(label, TAU) - reference) < 1e-11 * max(1.0, abs(reference))

    @pytest.mark.parametrize("case", ["a3", "d4", "a2bar"])
    def test_projector_inverts_trace_expansion(self, request, case):
        cls = request.getfixturevalue(case).cls
        z_mu = cls.data.z_mu
        for i, label in enumerate(cls.labels):
            back = defaultdict(complex)
            for key, coefficient in label_traces(cls, label).items():
                for position, weight in trace_to_labels(cls, key).items():
                    back[position] += coefficient * weight
            for position, value in back.items():
                other = cls.labels[position]
                if position == i:
                    expected = 1 / z_mu if label.kind == TYPE3 else 1
                elif label.kind == TYPE3 and (other.coset, other.l, other.j) == (label.coset, label.l, label.j):
                    expected = 1 / z_mu
                else:
                    expected = 0
                assert abs(value - expected) < 1e-12

    def test_translation_moves_the_twist(self, d4):
        sigma = d4.sigma
        delta = delta_sigma(sigma)
        for coset in d4.cls.mus:
            for k in (1, 2):
                phase = cmath.exp(-1j * math.pi * k * float(coset.norm)) \
                    * cmath.exp(2j * math.pi * k * float(F(4, 24) - delta))
                lhs = char_twisted_trace(sigma, coset.vector, 1, k, TAU)
                rhs = phase * char_twisted_trace(sigma, coset.vector, 1, 0, TAU + k)
                assert abs(lhs - rhs) < 1e-10

    def test_trace_value_matches_expansion(self, d4):
        cls = d4.cls
        tau = 0.05 + 1.1j
        for key in (TraceKey("U", 0, 0, 1), TraceKey("W", 0, 1, 2), TraceKey("W", 0, 2, 1)):
            series = trace_qexpansion(cls, key, 12)
            assert abs(series.evaluate(tau) - trace_value(cls, key, tau)) < 1e-10


class TestExpansions:
    @pytest.mark.parametrize("name", ["a2", "a3"])
    def test_vacuum_trace_counts_colored_partitions(self, name, oracles):
        L, sigma = example(name)
        r = L.rank
        n_terms = 15
        series = untwisted_trace_qseries(sigma, (0,) * r, 0, F(-r, 24) + n_terms)
        theta = oracles.theta_counts(L, (0,) * r, n_terms)
        partitions = oracles.colored_partitions(r, n_terms)
        expected = {}
        for n in range(n_terms):
            expected[F(-r, 24) + n] = sum(theta.get(a, 0) * partitions[n - a] for a in range(n + 1))
        assert series.terms() == expected
        if name == "a3":
            assert series.terms()[F(7, 8)] == 15

    @pytest.mark.parametrize("name", ["a2", "a3"])
    def test_theta_expansions_match_box_search(self, name, oracles):
        L, _ = example(name)
        for lam in discriminant_group(L).elements():
            assert theta_qseries(L, lam, 15).terms() == oracles.theta_counts(L, lam, 15), lam

    @pytest.mark.parametrize("case", ["a2bar", "a3", "d4", "perm31"])
    def test_coefficients_are_nonnegative_integers(self, request, case):
        cls = request.getfixturevalue(case).cls
        for label in cls.labels:
            terms = char_orbifold_qexpansion(label, 4).terms()
            assert terms, label.display_name
            assert all(isinstance(c, int) and c > 0 for c in terms.values()), label.display_name

    def test_vacuum_expansion_starts_at_one(self, a3):
        series = char_orbifold_qexpansion(a3.cls.labels[0], 3)
        assert series.leading_exponent() == F(-1, 8)
        assert series.terms()[F(-1, 8)] == 1
        with pytest.raises(ValueError):
            char_orbifold_qexpansion(a3.cls.labels[0], 0)

    @pytest.mark.parametrize("case", ["a3", "d4"])
    def test_exact_matches_numeric(self, request, case):
        cls = request.getfixturevalue(case).cls
        tau = 0.1 + 1.5j
        for label in cls.labels:
            exact = char_orbifold_qexpansion(label, 10).evaluate(tau)
            assert abs(exact - char_orbifold(label, tau)) < 1e-9, label.display_name


class TestPermutationOrbifolds:
    def test_not_prime(self):
        with pytest.raises(NotPrime):
            permutation_lattice(A1, 4)

    def test_orbifold_builder(self):
        L, sigma, cls = permutation_orbifold(A1, 3)
        assert L.rank == 3
        assert sigma.order == 3
        assert cls.total == 20

    @pytest.mark.parametrize("lam0", [0, F(1, 2)])
    def test_untwisted_closed_form(self, perm31, lam0):
        general = char_untwisted_trace(perm31.sigma, (lam0,) * 3, 1, TAU)
        assert abs(general - permutation_untwisted_trace(A1, 3, (lam0,), TAU)) < 1e-11

    @pytest.mark.parametrize("lam0", [0, F(1, 2)])
    @pytest.mark.parametrize("k", [0, 1, 2])
    def test_twisted_closed_form(self, perm31, lam0, k):
        mu = (F(lam0) / 3,) * 3
        general = char_twisted_trace(perm31.sigma, mu, 1, k, TAU)
        assert abs(general - permutation_twisted_trace(A1, 3, (lam0,), k, TAU)) < 1e-10

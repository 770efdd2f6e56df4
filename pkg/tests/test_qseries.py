import cmath
import math
from fractions import Fraction

import pytest

from orbichar.utils.qseries import CycloInt, QSeries


class TestCycloInt:
    def test_root_of_unity_relations(self):
        for p in (2, 3, 5):
            w = CycloInt.root(p, 1)
            power = CycloInt.from_int(p, 1)
            for _ in range(p):
                power = power * w
            assert power == 1
            total = sum((CycloInt.root(p, k) for k in range(p)), CycloInt.zero(p))
            assert total.is_zero()

    def test_complex_value(self):
        w = CycloInt.root(3, 2)
        assert abs(complex(w) - cmath.exp(4j * math.pi / 3)) < 1e-12
        assert complex(CycloInt.from_int(1, 7)) == 7

    def test_mixed_orders_promote(self):
        w = CycloInt.root(5, 2)
        assert (CycloInt.from_int(1, 3) + w) == (w + 3)
        assert (CycloInt.from_int(1, 2) * w) == w * 2
        with pytest.raises(ValueError):
            CycloInt.root(3, 1) + CycloInt.root(5, 1)

    def test_rational_conversion(self):
        assert CycloInt.from_int(3, 4).to_int() == 4
        assert CycloInt.root(2, 1).to_int() == -1
        with pytest.raises(ValueError):
            CycloInt.root(3, 1).to_int()

    def test_exact_div(self):
        assert CycloInt(3, [4, 2, 0]).exact_div(2) == CycloInt(3, [2, 1, 0])
        with pytest.raises(ValueError):
            CycloInt(3, [3, 2, 0]).exact_div(2)


class TestQSeries:
    def test_geometric_series_by_division(self):
        one_minus_q = QSeries.from_terms({0: 1, 1: -1}, Fraction(6))
        series = QSeries.one(6) / one_minus_q
        assert series.terms() == {Fraction(n): 1 for n in range(6)}
        assert series.truncation_order == 6

    def test_mul_binomial_matches_product(self):
        one = QSeries.one(8)
        by_binomial = one.mul_binomial(CycloInt.from_int(1, 1), 2, power=2)
        one_minus_q2 = QSeries.from_terms({0: 1, 2: -1}, Fraction(8))
        assert by_binomial.terms() == (one_minus_q2 * one_minus_q2).terms()
        assert by_binomial.terms() == {0: 1, 2: -2, 4: 1}

    def test_addition_aligns_grids(self):
        a = QSeries.from_terms({Fraction(1, 2): 1}, Fraction(3))
        b = QSeries.from_terms({Fraction(1, 3): 2}, Fraction(3))
        total = a + b
        assert total.terms() == {Fraction(1, 3): 2, Fraction(1, 2): 1}
        assert total.truncation_order == 3

    def test_truncation_is_the_smaller_one(self):
        a = QSeries.from_terms({0: 1}, Fraction(2))
        b = QSeries.from_terms({0: 1}, Fraction(5))
        assert (a + b).truncation_order == 2
        assert (a * b).truncation_order == 2

    def test_off_grid_exponent_rejected(self):
        with pytest.raises(ValueError):
            QSeries.from_terms({Fraction(1, 3): 1}, Fraction(2), offset=Fraction(0), denom=2)
        with pytest.raises(ValueError):
            QSeries.from_terms({Fraction(3): 1}, Fraction(2))

    def test_cyclotomic_coefficients(self):
        w = CycloInt.root(3, 1)
        series = QSeries.from_terms({0: 1}, Fraction(3)).scale(w)
        assert series.ring_order == 3
        assert not series.is_rational()
        assert abs(series.evaluate(1j) - complex(w)) < 1e-12

    def test_shift_and_leading_exponent(self):
        series = QSeries.from_terms({Fraction(0): 0, Fraction(1): 3}, Fraction(4)).shift(Fraction(-1, 8))
        assert series.leading_exponent() == Fraction(7, 8)
        assert series.truncation_order == Fraction(31, 8)

    def test_evaluate_partial_sum(self):
        series = QSeries.from_terms({0: 1, 1: 2, 4: 2}, Fraction(9))
        tau = 0.5j
        expected = 1 + 2 * cmath.exp(2j * math.pi * tau) + 2 * cmath.exp(8j * math.pi * tau)
        assert abs(series.evaluate(tau) - expected) < 1e-14

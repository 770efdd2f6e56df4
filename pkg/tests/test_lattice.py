from fractions import Fraction

import pytest

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
from orbichar.lattice import (
    Lattice,
    bilinear,
    box_enumerate_vectors,
    direct_sum,
    discriminant_group,
    enumerate_vectors,
    enumerate_with_norms,
    in_dual,
    intersect,
    min_norm_representative,
    new_lattice,
    norm,
    span_sublattice,
    sublattice,
    sublattice_index,
)

F = Fraction
A1 = Lattice(((2,),))
A2 = new_lattice([[2, -1], [-1, 2]])
A3 = new_lattice([[2, -1, 0], [-1, 2, -1], [0, -1, 2]])
D4 = new_lattice([[2, 0, 0, -1], [0, 2, 0, -1], [0, 0, 2, -1], [-1, -1, -1, 2]])


class TestNewLattice:
    def test_valid(self):
        assert A2.rank == 2
        assert A2.determinant == 3
        assert new_lattice([[2]]).rank == 1

    @pytest.mark.parametrize("gram, error", [
        ([[1]], NotEven),
        ([[2, 1], [0, 2]], NotSymmetric),
        ([[2, 0, 0], [0, 2, 0]], NotSymmetric),
        ([[2, 3], [3, 2]], NotPositiveDefinite),
        ([[-2]], NotPositiveDefinite),
    ])
    def test_invalid(self, gram, error):
        with pytest.raises(error):
            new_lattice(gram)

    def test_direct_sum(self):
        L = direct_sum(A1, A2)
        assert L.gram == ((2, 0, 0), (0, 2, -1), (0, -1, 2))


class TestBilinear:
    def test_a2_pairings(self):
        assert bilinear(A2, (1, 0), (0, 1)) == -1
        assert bilinear(A2, (0, 0), (F(1, 3), 5)) == 0
        # the Qbar(A2) basis α = α1 + α2, β = α1 - α2
        assert bilinear(A2, (1, 1), (1, -1)) == 0
        assert norm(A2, (1, 1)) == 2
        assert norm(A2, (1, -1)) == 6

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            bilinear(A2, (1, 0, 0), (1, 0))

    def test_duality(self):
        inv = A3.gram_inverse
        for j in range(3):
            column = tuple(inv[i][j] for i in range(3))
            assert in_dual(A3, column)
        assert not in_dual(A2, (F(1, 2), 0))


class TestDiscriminantGroup:
    @pytest.mark.parametrize("L, orders", [
        (A2, (3,)),
        (A3, (4,)),
        (D4, (2, 2)),
        (new_lattice([[2, 0], [0, 6]]), (2, 6)),
        (new_lattice([[2, 2], [2, 8]]), (2, 6)),
    ])
    def test_orders(self, L, orders):
        group = discriminant_group(L)
        assert group.orders == orders
        assert group.cardinality == L.determinant

    def test_generators_and_elements(self):
        group = discriminant_group(A3)
        for g, d in zip(group.generators, group.orders):
            assert in_dual(A3, g)
            assert all((d * x).denominator == 1 for x in g)
        elements = list(group.elements())
        assert len(elements) == 4
        assert elements[0] == (0, 0, 0)
        assert sorted(group.index(v) for v in elements) == [0, 1, 2, 3]

    def test_canonical_representatives(self):
        group = discriminant_group(A3)
        lam = (F(3, 4), F(1, 2), F(1, 4))
        shifted = tuple(x + y for x, y in zip(lam, (1, -2, 3)))
        assert group.canonical(lam) == group.canonical(shifted)
        assert group.same_coset(lam, shifted)
        with pytest.raises(ValueError):
            group.coordinates((F(1, 3), 0, 0))


class TestEnumeration:
    def test_small_counts(self):
        assert len(enumerate_vectors(A1, (0,), 2)) == 3
        assert enumerate_vectors(A1, (F(1, 2),), F(1, 2)) == [(F(-1, 2),), (F(1, 2),)]
        assert len(enumerate_vectors(A2, (0, 0), 2)) == 7
        assert len(enumerate_vectors(D4, (0, 0, 0, 0), 2)) == 25
        assert enumerate_vectors(A2, (0, 0), -1) == []

    def test_norms_are_exact(self):
        for v, n in enumerate_with_norms(A3, (F(1, 2), 1, F(1, 2)), 3):
            assert n == norm(A3, v)
            assert n <= 3

    def test_agrees_with_box_search(self, rng, oracles):
        for rank in (1, 2, 3):
            for _ in range(3):
                L = new_lattice(oracles.random_even_gram(rng, rank))
                shift = tuple(F(int(x), 6) for x in rng.integers(0, 6, size=rank))
                bound = F(int(rng.integers(2, 9)), 1)
                assert enumerate_vectors(L, shift, bound) == box_enumerate_vectors(L, shift, bound)
        assert enumerate_vectors(D4, (F(1, 2), 0, 0, 0), 5) == box_enumerate_vectors(D4, (F(1, 2), 0, 0, 0), 5)

    def test_cap(self, monkeypatch):
        monkeypatch.setattr(Config, "enum_cap", 10)
        with pytest.raises(BoundTooLarge):
            enumerate_vectors(A2, (0, 0), 20)

    def test_min_norm_representative(self):
        vec, n = min_norm_representative(A3, (F(3, 4), F(1, 2), F(1, 4)))
        assert n == F(3, 4)
        assert norm(A3, vec) == n
        assert min_norm_representative(A3, (1, 2, 3)) == ((0, 0, 0), 0)


class TestSublattices:
    def test_index_examples(self):
        Z = Lattice(((2,),))
        assert sublattice_index(sublattice(Z, [(1,)]), sublattice(Z, [(2,)])) == 2
        S = sublattice(A3, [(F(1, 2), 0, F(1, 2)), (0, 1, 0)])
        T = sublattice(A3, [(1, 0, 1), (0, 1, 0)])
        assert sublattice_index(S, T) == 2
        assert sublattice_index(S, S) == 1

    def test_index_multiplicative(self):
        full = sublattice(A3, [(1, 0, 0), (0, 1, 0), (0, 0, 1)])
        middle = sublattice(A3, [(1, 0, 0), (0, 2, 0), (0, 0, 1)])
        small = sublattice(A3, [(2, 0, 0), (0, 2, 0), (0, 0, 2)])
        assert sublattice_index(full, small) == 8
        assert sublattice_index(full, small) == sublattice_index(full, middle) * sublattice_index(middle, small)

    def test_index_errors(self):
        S = sublattice(A3, [(1, 0, 1), (0, 1, 0)])
        with pytest.raises(RankMismatch):
            sublattice_index(S, sublattice(A3, [(0, 1, 0)]))
        with pytest.raises(NotSublattice):
            sublattice_index(S, sublattice(A3, [(F(1, 2), 0, F(1, 2)), (0, 1, 0)]))

    def test_intersect(self):
        L = new_lattice([[2, 0], [0, 2]])
        assert intersect(sublattice(L, [(1, 0)]), sublattice(L, [(0, 1)])).rank == 0
        meet = intersect(sublattice(L, [(2, 0), (0, 1)]), sublattice(L, [(1, 0), (0, 3)]))
        assert meet.rank == 2
        assert sublattice_index(sublattice(L, [(1, 0), (0, 1)]), meet) == 6
        assert intersect(meet, meet).rank == 2

    def test_contains_and_coordinates(self):
        S = span_sublattice(A3, [(1, 0, 1), (0, 1, 0), (2, 1, 2)])
        assert S.rank == 2
        assert S.contains((3, 2, 3))
        assert not S.contains((1, 0, 0))
        assert S.coordinates((1, 0, 0)) is None
        assert S.to_ambient(S.coordinates((3, 2, 3))) == (3, 2, 3)

    def test_as_lattice(self):
        with pytest.raises(ValueError):
            sublattice(A3, [(F(1, 2), 0, 0)]).as_lattice()
        S = sublattice(A3, [(F(1, 2), 0, F(1, 2)), (0, 1, 0)])
        assert S.as_lattice().gram == ((1, -1), (-1, 2))
        assert S.as_lattice(scale=2).gram == ((2, -2), (-2, 4))

    def test_dependent_rows_rejected(self):
        with pytest.raises(ValueError):
            sublattice(A2, [(1, 0), (2, 0)])

import math
from collections import Counter
from fractions import Fraction

import pytest

from orbichar.catalog import a2, a2bar, a3, d4, perm
from orbichar.config import Config
from orbichar.exceptions import InfiniteOrder, NotIsometry, UnsupportedOrder
from orbichar.isometry import (
    defect,
    delta_sigma,
    det_perp,
    eigen_data,
    fixed_projector,
    fixed_representative,
    fixed_sublattice,
    new_isometry,
    orbit_decomposition,
    perp_sublattice,
    projected_lattice,
    qbar_index,
    restrict_to_qbar,
    sigma_data,
    trace_s,
    z_mu_cardinality,
)
from orbichar.lattice import discriminant_group, new_lattice, norm

F = Fraction


def _rotation():
    L = new_lattice([[2, 0], [0, 2]])
    return new_isometry(L, [[0, -1], [1, 0]])


class TestNewIsometry:
    @pytest.mark.parametrize("builder, order", [(a2, 2), (a3, 2), (d4, 3), (perm, 3)])
    def test_orders(self, builder, order):
        _, sigma = builder()
        assert sigma.order == order
        assert sigma.is_prime_order

    def test_identity_has_order_one(self):
        L, sigma = a3()
        assert sigma.power(0).order == 1
        assert sigma.power(1) == sigma
        assert sigma.power(3) == sigma

    @pytest.mark.parametrize("matrix", [
        [[1, 1], [0, 1]],
        [[1, 0]],
        [[2, 0], [0, 1]],
    ])
    def test_not_an_isometry(self, matrix):
        L, _ = a2()
        with pytest.raises(NotIsometry):
            new_isometry(L, matrix)

    def test_order_cap(self, monkeypatch):
        L, sigma = d4()
        monkeypatch.setattr(Config, "order_cap", 2)
        with pytest.raises(InfiniteOrder):
            new_isometry(L, sigma.matrix)

    def test_apply(self):
        _, sigma = a3()
        assert sigma.apply((1, 2, 3)) == (3, 2, 1)
        assert sigma.apply((F(3, 4), F(1, 2), F(1, 4)), k=2) == (F(3, 4), F(1, 2), F(1, 4))


class TestProjectorAndSublattices:
    def test_a2_projector(self):
        _, sigma = a2()
        assert fixed_projector(sigma) == [[F(1, 2), F(1, 2)], [F(1, 2), F(1, 2)]]

    def test_d4_projector_is_idempotent(self):
        _, sigma = d4()
        pi0 = fixed_projector(sigma)
        square = [[sum(pi0[i][k] * pi0[k][j] for k in range(4)) for j in range(4)] for i in range(4)]
        assert square == pi0
        assert pi0[3] == [0, 0, 0, 1]
        assert pi0[0][:3] == [F(1, 3)] * 3

    def test_fixed_and_perp(self):
        _, sigma = a3()
        fixed = fixed_sublattice(sigma)
        perp = perp_sublattice(sigma)
        assert fixed.rank == 2 and perp.rank == 1
        assert fixed.contains((1, 0, 1)) and fixed.contains((0, 1, 0))
        assert perp.contains((1, 0, -1))
        L = sigma.lattice
        for a in fixed.basis:
            for b in perp.basis:
                assert sum(a[i] * L.gram[i][j] * b[j] for i in range(3) for j in range(3)) == 0

    def test_projected_lattices(self):
        _, sigma = a3()
        pi0_q = projected_lattice(sigma, "Q")
        assert pi0_q.contains((F(1, 2), 0, F(1, 2)))
        assert not pi0_q.contains((F(1, 4), 0, F(1, 4)))
        pi0_qstar = projected_lattice(sigma, "Q*")
        assert pi0_qstar.contains((F(1, 2), F(1, 2), F(1, 2)))
        with pytest.raises(ValueError):
            projected_lattice(sigma, "M")

    def test_sigma_data_indices(self, a3, d4, a2bar):
        assert sigma_data(a3.sigma).index_pi0q_m == 2
        assert sigma_data(d4.sigma).index_pi0q_m == 3
        assert sigma_data(a2bar.sigma).index_pi0q_m == 1
        scaled = sigma_data(a3.sigma).scaled_lattice
        assert scaled.rank == 2
        assert scaled.determinant == 4
        assert sigma_data(a3.sigma) is sigma_data(a3.sigma)


class TestQbar:
    @pytest.mark.parametrize("builder, index", [(a2, 2), (a3, 1), (d4, 1), (perm, 1)])
    def test_index(self, builder, index):
        _, sigma = builder()
        assert qbar_index(sigma) == index

    def test_restriction_of_a2(self):
        L, sigma = a2bar()
        assert L.determinant == 12
        assert discriminant_group(L).orders == (2, 6)
        assert sigma.order == 2
        assert qbar_index(sigma) == 1

    def test_restriction_is_trivial_when_q_equals_qbar(self):
        L, sigma = a3()
        M, tau = restrict_to_qbar(sigma)
        assert M.determinant == L.determinant
        assert tau.order == 2


class TestEigenData:
    def test_a3(self):
        _, sigma = a3()
        data = eigen_data(sigma)
        assert data.dims == (2, 1)
        assert (data.r0, data.dperp) == (2, 1)
        assert trace_s(sigma) == F(-1, 2)

    def test_permutation_orbit_counts(self):
        _, sigma = perm()
        data = eigen_data(sigma)
        assert data.dims == (1, 1, 1)
        assert (data.singleton_orbits, data.p_orbits) == (0, 1)

    @pytest.mark.parametrize("builder, delta", [(a3, F(1, 16)), (d4, F(1, 9)), (perm, F(1, 9))])
    def test_delta(self, builder, delta):
        _, sigma = builder()
        assert delta_sigma(sigma) == delta

    def test_trace_s_is_half_the_perp_dimension(self):
        for builder in (a3, d4, perm):
            _, sigma = builder()
            data = eigen_data(sigma)
            assert trace_s(sigma) == -F(sigma.lattice.rank - data.r0, 2)

    def test_non_prime_order(self):
        sigma = _rotation()
        assert sigma.order == 4
        data = eigen_data(sigma)
        assert data.dims == (0, 1, 0, 1)
        assert data.dperp is None
        assert delta_sigma(sigma) == F(3, 32)
        assert trace_s(sigma) == -1
        with pytest.raises(UnsupportedOrder):
            z_mu_cardinality(sigma)
        with pytest.raises(UnsupportedOrder):
            orbit_decomposition(sigma)


class TestDefectAndOrbits:
    @pytest.mark.parametrize("builder, z_mu", [(a2bar, 2), (a3, 1), (d4, 1), (perm, 1)])
    def test_z_mu_and_defect(self, builder, z_mu):
        _, sigma = builder()
        assert defect(sigma) == 1
        assert z_mu_cardinality(sigma) == z_mu

    @pytest.mark.parametrize("builder", [a2bar, a3, d4, perm])
    def test_defect_is_unchanged_by_coprime_powers(self, builder):
        _, sigma = builder()
        p = sigma.order
        for l in range(1, 2 * p):
            if math.gcd(l, p) == 1:
                assert defect(sigma.power(l)) == defect(sigma), l

    @pytest.mark.parametrize("t", [1, 2, 3])
    def test_permutation_orbit_classes(self, t):
        # orbits of the cyclic shift on (Z/2t)^3, by the pattern of a rotation d, e, f
        _, sigma = perm(3, t)
        n = 2 * t
        classes = Counter()
        for gamma in orbit_decomposition(sigma).orbits:
            d = tuple(int(x * n) % n for x in gamma)
            rotations = [d[i:] + d[:i] for i in range(3)]
            if any(a == b < c for a, b, c in rotations):
                classes["d=e<f"] += 1
            elif any(a < b == c for a, b, c in rotations):
                classes["d<e=f"] += 1
            elif any(a < b < c for a, b, c in rotations):
                classes["d<e<f"] += 1
            else:
                classes["d<f<e"] += 1
        pair = 2 * t * t - t
        triple = (2 * t - 2) * (2 * t - 1) * (2 * t) // 6
        expected = {"d=e<f": pair, "d<e=f": pair, "d<e<f": triple, "d<f<e": triple}
        assert dict(classes) == {k: v for k, v in expected.items() if v}
        assert sum(classes.values()) == F(2, 3) * (4 * t ** 3 - t)

    def test_det_perp(self):
        assert det_perp(a3()[1], 1) == 2
        assert det_perp(d4()[1], 1) == 3
        assert det_perp(d4()[1], 2) == 3

    @pytest.mark.parametrize("builder, fixed, orbits", [
        (a2bar, 4, 4),
        (a3, 2, 1),
        (d4, 1, 1),
        (perm, 2, 2),
    ])
    def test_orbit_counts(self, builder, fixed, orbits):
        L, sigma = builder()
        decomposition = orbit_decomposition(sigma)
        assert len(decomposition.fixed) == fixed
        assert len(decomposition.orbits) == orbits
        assert len(decomposition.fixed) + sigma.order * len(decomposition.orbits) == L.determinant

    def test_fixed_representative(self):
        L, sigma = a3()
        group = discriminant_group(L)
        lam2 = (F(1, 2), F(1), F(1, 2))
        rep = fixed_representative(sigma, lam2)
        assert rep is not None
        assert sigma.apply(rep) == rep
        assert group.same_coset(rep, lam2)
        assert fixed_representative(sigma, (F(3, 4), F(1, 2), F(1, 4))) is None

    def test_fixed_representative_for_permutation(self):
        L, sigma = perm()
        half = (F(1, 2), F(1, 2), F(1, 2))
        rep = fixed_representative(sigma, half)
        assert rep is not None
        assert sigma.apply(rep) == rep
        assert norm(L, rep) % 2 == norm(L, half) % 2

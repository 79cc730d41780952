from math import gcd

import pytest

from hypercover.errors import PreconditionError
from hypercover.hypergraph import Hypergraph, incidence_matrix
from hypercover.invariants import (
    ColoringCertificate,
    covering_stabilizing_index,
    cyclic_index,
    divisors_of,
    inverse_mod,
    permutation_matrix,
    rho2_matrix,
    signed_hypergraph,
    signed_incidence_matrix,
    stabilizing_index,
    transition_matrix,
    twisted_incidence,
    verify_block_decomposition,
    verify_coloring,
    voltage_layer_matrices,
)
from hypercover.matrix import IntegerMatrix
from hypercover.permutation import Permutation
from hypercover.voltage import VoltageAssignment, derive
from hypercover.zmod import enumerate_kernel_zm, zm_invariant_divisors

from conftest import T12, fixture_a, fixture_b, phi_a, phi_b
from oracles import det, kernel_bruteforce


def single_edge(m):
    ids = [str(i) for i in range(1, m + 1)]
    return Hypergraph(m, ids, [ids])


class TestStabilizingIndex:
    def test_fixtures(self):
        assert stabilizing_index(fixture_a()).s == 3
        rep = stabilizing_index(fixture_b())
        assert rep.s == 32 == 2 * 4**2
        assert rep.divisors.divisors == (1, 1, 2) and rep.r == 3

    @pytest.mark.parametrize("m", [3, 4, 5])
    def test_single_edge(self, m):
        # PS_0 brute force: x_1 = 0 and x_2 + ... + x_m = 0, so m^(m-2) vectors
        expected = len(kernel_bruteforce([[1] * m], m, fix_first_zero=True))
        assert expected == m ** (m - 2)
        assert stabilizing_index(single_edge(m)).s == expected

    def test_disconnected(self):
        with pytest.raises(PreconditionError):
            stabilizing_index(Hypergraph(3, "123456", ["123", "456"]))

    def test_formula_matches_ps0(self, random_suite):
        for inst in random_suite[:60]:
            H = inst.H
            if H.m ** (H.n - 1) > 10**5:
                continue
            assert stabilizing_index(H).s == len(enumerate_kernel_zm(incidence_matrix(H), H.m, True))


class TestCyclicIndex:
    def test_fixture_a(self):
        c, cert = cyclic_index(fixture_a())
        assert c == 3 and verify_coloring(fixture_a(), cert)

    def test_fixture_b(self):
        c, cert = cyclic_index(fixture_b())
        assert c == 2 and verify_coloring(fixture_b(), cert)
        assert verify_coloring(fixture_b(), ColoringCertificate(2, dict(zip("123456", (3, 0, 3, 0, 3, 0)))))

    @pytest.mark.parametrize("m", [2, 3, 4, 6])
    def test_single_edge(self, m):
        assert cyclic_index(single_edge(m))[0] == m

    def test_verify_coloring(self):
        A = fixture_a()
        assert verify_coloring(A, ColoringCertificate(3, dict(zip("1234", (1, 0, 0, 1)))))
        assert not verify_coloring(A, ColoringCertificate(3, dict(zip("1234", (1, 1, 1, 1)))))
        assert verify_coloring(fixture_b(), ColoringCertificate(1, dict.fromkeys("123456", 0)))
        with pytest.raises(PreconditionError):
            verify_coloring(A, ColoringCertificate(2, dict.fromkeys("1234", 0)))

    def test_maximality(self, random_suite):
        from hypercover.zmod import solve_linear_zm

        for inst in random_suite[:60]:
            H = inst.H
            c, cert = cyclic_index(H)
            assert H.m % c == 0 and verify_coloring(H, cert)
            for ell in divisors_of(H.m):
                if ell > c:
                    assert solve_linear_zm(incidence_matrix(H), [H.m // ell] * H.num_edges, H.m) is None


class TestSigned:
    def test_fixture_a_signs(self):
        assert signed_hypergraph(fixture_a(), phi_a()).signs == (-1, 1)

    def test_fixture_b_signs(self):
        assert signed_hypergraph(fixture_b(), phi_b()).signs == (1, 1, 1)

    def test_identity(self):
        H = fixture_b()
        assert signed_hypergraph(H, VoltageAssignment.identity(H, 3)).signs == (1, 1, 1)

    def test_signed_incidence(self):
        assert signed_incidence_matrix(fixture_a(), phi_a()).tolist() == [[1, -1, 1, 0], [0, 1, 1, 1]]
        S = signed_incidence_matrix(fixture_b(), phi_b())
        assert S.row(0) == (1, 1, -1, -1, 0, 0)
        assert S.tolist()[1:] == incidence_matrix(fixture_b()).tolist()[1:]
        H = fixture_a()
        assert signed_incidence_matrix(H, VoltageAssignment.identity(H, 2)) == incidence_matrix(H)

    def test_signed_incidence_needs_k2(self):
        H = fixture_a()
        with pytest.raises(PreconditionError):
            signed_incidence_matrix(H, VoltageAssignment.identity(H, 3))


class TestRepresentation:
    def test_rho2_values(self):
        assert rho2_matrix(Permutation.identity(4)) == IntegerMatrix.identity(3)
        assert rho2_matrix(T12).tolist() == [[-1]]
        assert rho2_matrix(Permutation.from_cycles(3, (1, 2, 3))).tolist() == [[-1, -1], [1, 0]]

    def test_transition_matrix(self):
        assert transition_matrix(1).tolist() == [[1]]
        assert transition_matrix(2).tolist() == [[1, 1], [1, -1]]
        assert transition_matrix(3).tolist() == [[1, 1, 1], [1, -1, 0], [1, 0, -1]]
        assert det(transition_matrix(2).tolist()) == -2 and det(transition_matrix(3).tolist()) == 3
        for k in range(1, 7):
            assert abs(det(transition_matrix(k).tolist())) == k

    @pytest.mark.parametrize("k", [2, 3, 4])
    def test_conjugation_splits_every_permutation(self, k):
        # over Z, T P_g = T (1 (+) rho_2(g)) ... checked as P_g T = T (1 (+) rho_2(g))
        from itertools import permutations

        T = transition_matrix(k)
        for img in permutations(range(k)):
            g = Permutation(img)
            block = IntegerMatrix.identity(1).direct_sum(rho2_matrix(g))
            assert permutation_matrix(g) @ T == T @ block

    def test_rho2_is_a_homomorphism(self):
        from itertools import permutations, product

        S3 = [Permutation(p) for p in permutations(range(3))]
        for g, h in product(S3, S3):
            assert rho2_matrix(g * h) == rho2_matrix(g) @ rho2_matrix(h)

    def test_inverse_mod(self):
        T = transition_matrix(3)
        Ti = inverse_mod(T, 4)
        assert (Ti @ T).mod(4) == IntegerMatrix.identity(3)
        with pytest.raises(PreconditionError):
            inverse_mod(T, 6)


class TestTwisted:
    def test_layers_fixture_a(self):
        layers = voltage_layer_matrices(fixture_a(), phi_a())
        ident = Permutation.identity(2)
        assert set(layers) == {ident, T12}
        assert sum(map(sum, layers[ident])) == 5
        assert layers[T12].tolist() == [[0, 1, 0, 0], [0, 0, 0, 0]]

    def test_layers_fixture_b(self):
        layers = voltage_layer_matrices(fixture_b(), phi_b())
        assert layers[T12].tolist() == [[0, 0, 1, 1, 0, 0], [0] * 6, [0] * 6]

    def test_layers_sum_to_incidence(self, random_suite):
        for inst in random_suite[:80]:
            layers = list(voltage_layer_matrices(inst.H, inst.phi).values())
            total = layers[0]
            for L in layers[1:]:
                total = total + L
            assert total == incidence_matrix(inst.H)

    def test_twisted_fixture_a(self):
        Z = twisted_incidence(fixture_a(), phi_a())
        assert Z.tolist() == [[1, -1, 1, 0], [0, 1, 1, 1]]
        assert zm_invariant_divisors(Z, 3).divisors == (1, 1)

    def test_twisted_fixture_b(self):
        Z = twisted_incidence(fixture_b(), phi_b())
        assert Z == signed_incidence_matrix(fixture_b(), phi_b())
        assert zm_invariant_divisors(Z, 4).divisors == (1, 1)

    def test_twisted_identity_k3(self):
        H = fixture_b()
        assert twisted_incidence(H, VoltageAssignment.identity(H, 3)) == incidence_matrix(H).kron(
            IntegerMatrix.identity(2)
        )

    def test_twisted_equals_signed_for_k2(self, random_suite):
        for inst in random_suite:
            if inst.k == 2:
                assert twisted_incidence(inst.H, inst.phi) == signed_incidence_matrix(inst.H, inst.phi)


class TestBlockDecomposition:
    def test_fixture_a(self):
        assert verify_block_decomposition(fixture_a(), phi_a())

    def test_identity(self):
        H = fixture_a()
        assert verify_block_decomposition(H, VoltageAssignment.identity(H, 2))
        assert verify_block_decomposition(fixture_b(), VoltageAssignment.identity(fixture_b(), 3))

    def test_fixture_b_rejected(self):
        with pytest.raises(PreconditionError, match=r"gcd\(m,k\) != 1"):
            verify_block_decomposition(fixture_b(), phi_b())

    def test_random(self, random_suite):
        hits = 0
        for inst in random_suite:
            if gcd(inst.m, inst.k) == 1:
                assert verify_block_decomposition(inst.H, inst.phi)
                hits += 1
        assert hits > 50


class TestCoveringFormula:
    def test_fixture_a(self):
        assert covering_stabilizing_index(fixture_a(), phi_a()) == 27 == 3 * 3 ** (4 - 2)
        assert stabilizing_index(derive(fixture_a(), phi_a()).hypergraph).s == 27

    def test_fixture_b_even_m(self):
        with pytest.raises(PreconditionError, match="gcd"):
            covering_stabilizing_index(fixture_b(), phi_b())
        direct = stabilizing_index(derive(fixture_b(), phi_b()).hypergraph).s
        assert direct == 4096 == 4**6
        assert direct != 32 * 4**4

    def test_disconnected_cover(self):
        H = single_edge(3)
        with pytest.raises(PreconditionError, match="not connected"):
            covering_stabilizing_index(H, VoltageAssignment.identity(H, 2))

    def test_matches_direct_k3(self, random_suite):
        seen_k3 = 0
        for inst in random_suite:
            if gcd(inst.m, inst.k) == 1:
                direct = stabilizing_index(derive(inst.H, inst.phi).hypergraph).s
                assert covering_stabilizing_index(inst.H, inst.phi) == direct
                seen_k3 += inst.k == 3
        assert seen_k3 > 10

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracle
from digmorse.chains import (
    Chain,
    PathComplex,
    boundary,
    boundary_terms,
    homology,
    induced_inclusion,
    omega_basis,
)
from digmorse.digraph import Digraph
from digmorse.errors import DigraphError
from strategies import digraphs

TRIANGLE = Digraph(3, [(0, 1), (1, 2), (0, 2)])
SQUARE = Digraph(4, [(0, 1), (0, 2), (1, 3), (2, 3)])


def cycle(n):
    return Digraph(n, [(i, (i + 1) % n) for i in range(n)])


class TestChain:
    def test_arithmetic(self):
        a = Chain.of((0, 1)) + Chain.of((1, 2), 2)
        b = a - Chain.of((0, 1))
        assert b == Chain(1, {(1, 2): 2})
        assert (-b)[(1, 2)] == -2
        assert (Fraction(1, 2) * b)[(1, 2)] == 1
        assert not (a - a)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            Chain.of((0,)) + Chain.of((0, 1))

    def test_formal_boundary_keeps_degenerate_terms(self):
        # v0 v1 v0 -> v1 v0 - v0 v0 + v0 v1
        assert boundary_terms((0, 1, 0)) == {(1, 0): 1, (0, 0): -1, (0, 1): 1}

    @given(digraphs(max_n=4), st.integers(1, 3))
    def test_boundary_squared_zero(self, G, n):
        for p in G.allowed_paths(n):
            assert not boundary(boundary(Chain.of(p)))


class TestOmega:
    def test_square_generator(self):
        gens = omega_basis(SQUARE, 2).generators
        assert len(gens) == 1
        g = gens[0]
        assert set(g.support()) == {(0, 1, 3), (0, 2, 3)}
        assert g[(0, 1, 3)] == -g[(0, 2, 3)]

    def test_transitive_is_path_basis(self):
        pc = PathComplex(TRIANGLE)
        assert all(pc.is_path_basis(n) for n in range(4))

    def test_two_cycle_difference(self):
        # two 2-cycles sharing a vertex: aba - aca lies in Omega_2
        G = Digraph(3, [(0, 1), (1, 0), (0, 2), (2, 0)])
        assert len(PathComplex(G).omega(2)) >= 1

    @given(digraphs(max_n=4), st.integers(0, 3))
    def test_dims_match_oracle(self, G, n):
        assert len(PathComplex(G).omega(n)) == oracle.omega_dims(G, n)[n]

    @given(digraphs(max_n=4), st.integers(1, 3))
    def test_generators_are_invariant(self, G, n):
        for g in omega_basis(G, n).generators:
            assert all(G.is_allowed(q) for q in boundary(g).support())

    @given(digraphs(max_n=4), st.integers(1, 3))
    def test_integer_generators_span_same_space(self, G, n):
        q = PathComplex(G).omega(n)
        z = PathComplex(G, "integer").omega(n)
        assert len(q) == len(z)
        assert all(all(isinstance(x, int) for x in v.values()) for v in z)


class TestHomology:
    @pytest.mark.parametrize("G", [TRIANGLE, SQUARE], ids=["triangle", "square"])
    def test_contractible(self, G):
        assert homology(G, 3).betti == (1, 0, 0, 0)

    @pytest.mark.parametrize("n", range(3, 9))
    def test_cycles(self, n):
        h = homology(cycle(n), 2)
        assert h.betti == (1, 1, 0)
        assert h.omega_dims[2] == 0

    def test_two_cycle(self):
        h = homology(cycle(2), 3, "integer")
        assert h.betti == (1, 1, 0, 0)
        assert h.invariant_factors == ((0,), (0,), (), ())

    def test_disconnected(self):
        G = Digraph(4, [(0, 1), (2, 3)])
        assert homology(G, 2).betti == (2, 0, 0)

    def test_euler_characteristic(self):
        h = homology(SQUARE, 4)
        assert h.euler_characteristic() == sum((-1) ** n * d for n, d in enumerate(h.omega_dims))

    @given(digraphs(max_n=4))
    def test_betti_matches_oracle(self, G):
        assert homology(G, 3).betti == oracle.betti(G, 3)

    @given(digraphs(max_n=4))
    def test_integer_mode_matches_oracle(self, G):
        h = homology(G, 2, "integer")
        assert h.betti == homology(G, 2).betti
        assert h.invariant_factors == oracle.invariant_factors(G, 2)


class TestInclusion:
    def test_collapse_is_iso(self):
        sub = Digraph(3, [(0, 1), (1, 2), (0, 2)]).remove_vertex(1)
        rep = induced_inclusion(sub, TRIANGLE, 2)
        assert rep.isomorphism

    def test_cycle_created(self):
        # a path inside a 4-cycle misses the 1-cycle
        C = cycle(4)
        sub = C.remove_edges([(3, 0)])
        rep = induced_inclusion(sub, C, 2)
        d1 = rep.degrees[1]
        assert d1.injective and not d1.surjective
        assert rep.degrees[0].isomorphism

    def test_spanning_tree(self):
        # a spanning tree of the square: both sides are contractible
        sub = SQUARE.remove_edges([(1, 3)])
        rep = induced_inclusion(sub, SQUARE, 2)
        assert rep.isomorphism

    def test_not_a_subdigraph(self):
        with pytest.raises(DigraphError):
            induced_inclusion(TRIANGLE, SQUARE, 1)

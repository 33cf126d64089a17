from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracle
from digmorse.chains import Chain
from digmorse.digraph import Digraph, decompose_path, loop_vertices
from digmorse.errors import MatchingError, MorseError
from digmorse.morse import (
    Matching,
    MatchPair,
    MorseFunction,
    build_matching,
    check_acyclic,
    critical_paths,
    equal_weight_cofaces,
    equal_weight_faces,
    generate_morse,
    grad,
    is_critical,
    path_weight,
    validate_morse,
)
from strategies import digraphs, morse_pairs

TRIANGLE = Digraph(3, [(0, 1), (1, 2), (0, 2)])
TRI_F = (1, 0, 2)


class TestFunction:
    def test_coercion(self):
        f = MorseFunction((1, Fraction(1, 2), 0))
        assert f.values == (1, Fraction(1, 2), 0)
        assert f.zeros == [2]
        assert path_weight(f, (0, 1)) == Fraction(3, 2)

    def test_negative_rejected(self):
        with pytest.raises(MorseError):
            MorseFunction((1, -1))


class TestValidation:
    def test_triangle_weights_valid(self):
        rep = validate_morse(TRIANGLE, TRI_F)
        assert rep.valid and rep.verdict == "valid"
        assert rep.paths_checked == 7

    def test_zero_reachability(self):
        rep = validate_morse(TRIANGLE, (0, 0, 1))
        assert not rep.valid and rep.kind == "zero-reachability"
        assert rep.witness == (0, 1)
        assert rep.zero_faces == 2

    def test_zero_on_loop(self):
        rep = validate_morse(Digraph(2, [(0, 1), (1, 0)]), (0, 1))
        assert not rep.valid and rep.kind == "zero-on-loop"
        assert rep.witness == (0, 1, 0)

    def test_coface_violation(self):
        # two zero middles between the same endpoints
        G = Digraph(4, [(0, 1), (1, 3), (0, 2), (2, 3), (0, 3)])
        rep = validate_morse(G, (1, 0, 0, 2))
        assert not rep.valid and rep.kind == "coface"
        assert rep.witness == (0,)
        assert rep.witness_pair == ((0, 1), (0, 2))
        assert rep.zero_cofaces == 2

    def test_restriction_need_not_extend(self):
        # valid on the sub-digraph, invalid once v0 -> v2 is added
        Gs = Digraph(4, [(0, 1), (0, 3), (1, 2)])
        G = Digraph(4, [(0, 1), (0, 3), (1, 2), (0, 2)])
        f = (1, 2, 0, 0)
        assert validate_morse(Gs, f).valid
        assert not validate_morse(G, f).valid

    def test_trivial_always_valid(self):
        G = Digraph(3, [(0, 1), (1, 2), (2, 0)])
        assert validate_morse(G, (1, 2, 3)).valid

    @given(digraphs(max_n=4), st.lists(st.integers(0, 2), min_size=4, max_size=4))
    def test_matches_brute_force(self, G, vals):
        f = vals[: G.num_vertices]
        L = G.num_vertices + 1
        assert validate_morse(G, f, L).valid == oracle.morse_conditions(G, f, L)


class TestLemmas:
    """Consequences of the Morse conditions on validated functions."""

    @given(morse_pairs())
    def test_zeros_avoid_loops(self, pair):
        G, f = pair
        assert not set(f.zeros) & loop_vertices(G)

    @given(morse_pairs())
    def test_loops_have_no_equal_weight_face_or_interior_coface(self, pair):
        G, f = pair
        for n in range(1, G.num_vertices + 1):
            for p in G.allowed_paths(n):
                if p[0] != p[-1]:
                    continue
                assert not equal_weight_faces(G, f, p)
                for q in equal_weight_cofaces(G, f, p):
                    # only a zero vertex glued on at an end can match a loop
                    assert q[1:] == p or q[:-1] == p

    def test_loop_with_zero_appended_is_not_critical(self):
        # v2 v1 v2 is a directed loop, yet v2 v1 v2 v0 has the same weight
        G = Digraph(3, [(1, 2), (2, 0), (2, 1)])
        f = (0, 2, 3)
        assert validate_morse(G, f).valid
        assert oracle.morse_conditions(G, f, 6)
        assert equal_weight_cofaces(G, f, (2, 1, 2)) == [(2, 1, 2, 0)]
        assert not is_critical(G, f, (2, 1, 2))

    @given(morse_pairs())
    def test_at_most_one_zero_per_path(self, pair):
        G, f = pair
        for n in range(G.num_vertices + 1):
            for p in G.allowed_paths(n):
                assert sum(1 for v in p if f[v] == 0) <= 1

    @given(morse_pairs())
    def test_not_both_face_and_coface(self, pair):
        G, f = pair
        for n in range(G.num_vertices + 1):
            for p in G.allowed_paths(n):
                assert not (equal_weight_faces(G, f, p) and equal_weight_cofaces(G, f, p))

    @given(morse_pairs())
    def test_noncritical_has_noncritical_simplicial_piece(self, pair):
        G, f = pair
        for n in range(1, G.num_vertices + 1):
            for p in G.allowed_paths(n):
                if is_critical(G, f, p):
                    continue
                d = decompose_path(p)
                pieces = [b for b in d.betas]
                assert any(not is_critical(G, f, b) for b in pieces)


class TestCritical:
    def test_worked_triangle(self):
        assert critical_paths(TRIANGLE, TRI_F, 0) == [(1,)]
        assert critical_paths(TRIANGLE, TRI_F, 1) == []
        assert not is_critical(TRIANGLE, TRI_F, (0, 1, 2))

    def test_triangle_weights_on_subdigraph(self):
        line = Digraph(3, [(0, 1), (1, 2)])
        assert is_critical(line, TRI_F, (0, 1, 2))

    @given(morse_pairs())
    def test_critical_in_g_stays_critical_in_subdigraph(self, pair):
        G, f = pair
        if not G.edges:
            return
        drop = sorted(G.edges)[0]
        H = G.remove_edges([drop])
        for n in range(3):
            for p in critical_paths(G, f, n):
                if H.is_allowed(p):
                    assert is_critical(H, f, p)


class TestMatching:
    def test_triangle_pairs(self):
        M = build_matching(TRIANGLE, TRI_F, 2)
        got = sorted((p.lower, p.upper, p.coefficient) for p in M)
        assert got == [((0,), (0, 1), -1), ((0, 2), (0, 1, 2), -1), ((2,), (1, 2), 1)]
        assert check_acyclic(M).acyclic

    def test_rejects_overlap_and_non_units(self):
        with pytest.raises(MatchingError):
            Matching((MatchPair((0,), (0, 1), -1), MatchPair((0,), (0, 2), -1)))
        with pytest.raises(MatchingError):
            Matching((MatchPair((0,), (0, 1), 2),))

    def test_cycle_detected(self):
        # a1 < b1 > a2 < b2 > a1 through the two 2-loops of a 2-cycle
        M = Matching((MatchPair((0, 1), (0, 1, 0), 1), MatchPair((1, 0), (1, 0, 1), 1)))
        rep = check_acyclic(M)
        assert not rep.acyclic
        assert rep.cycle[0] == rep.cycle[-1]
        assert len(rep.cycle) == 5

    @given(morse_pairs())
    def test_every_path_in_at_most_one_pair_and_acyclic(self, pair):
        G, f = pair
        M = build_matching(G, f, G.num_vertices)
        assert check_acyclic(M).acyclic
        for pr in M:
            assert path_weight(f, pr.lower) == path_weight(f, pr.upper)

    @given(morse_pairs())
    def test_grad_squared_zero(self, pair):
        G, f = pair
        M = build_matching(G, f, G.num_vertices + 1)
        for n in range(G.num_vertices):
            for p in G.allowed_paths(n):
                assert not grad(M, grad(M, Chain.of(p)))

    def test_grad_value(self):
        M = build_matching(TRIANGLE, TRI_F, 2)
        assert grad(M, Chain.of((0,))) == Chain(1, {(0, 1): 1})
        assert not grad(M, Chain.of((1,)))


class TestGeneration:
    def test_deterministic(self):
        G = Digraph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)])
        for strategy in ("trivial", "single-zero", "multi-zero"):
            a = generate_morse(G, 3, strategy)
            assert a == generate_morse(G, 3, strategy)
            assert a.validation.valid

    def test_single_zero_triangle(self):
        f = generate_morse(TRIANGLE, 1, "single-zero")
        assert f.zeros == [1] and f.strategy == "single-zero"

    def test_loop_falls_back(self):
        f = generate_morse(Digraph(2, [(0, 1), (1, 0)]), 0, "single-zero")
        assert f.strategy == "trivial" and not f.zeros

    def test_unknown_strategy(self):
        with pytest.raises(ValueError):
            generate_morse(TRIANGLE, 0, "bogus")

    @given(digraphs(max_n=6), st.integers(0, 10**6), st.sampled_from(["trivial", "single-zero", "multi-zero"]))
    def test_always_valid(self, G, seed, strategy):
        f = generate_morse(G, seed, strategy)
        assert f.validation.valid
        assert sorted(x for x in f.values if x) == sorted(set(x for x in f.values if x))

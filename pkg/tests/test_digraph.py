import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracle
from digmorse.digraph import (
    ConsecutiveRemoval,
    Digraph,
    addable_vertices,
    box_product,
    build_digraph,
    check_digraph_map,
    cofaces,
    contains_triangle_or_square,
    decompose_path,
    face,
    faces,
    find_intermediate,
    has_square,
    has_triangle,
    insert_vertex,
    is_elementary,
    is_transitive,
    loop_vertices,
    on_directed_loop,
    reachable_from,
    removable_vertices,
    shortest_walk,
)
from digmorse.errors import DigraphError, ResourceLimitError
from strategies import digraphs, vertex_sequences


def tri():
    return build_digraph(["v0", "v1", "v2"], [("v0", "v1"), ("v1", "v2"), ("v0", "v2")])


class TestConstruction:
    def test_labels_and_ids(self):
        G = tri()
        assert G.labels == ("v0", "v1", "v2")
        assert G.index("v2") == 2
        assert G.successors(0) == (1, 2)
        assert G.predecessors(2) == (0, 1)
        assert G.out_degree(0) == 2 and G.in_degree(0) == 0

    @pytest.mark.parametrize(
        "vertices, edges",
        [
            (["v0"], [("v0", "v0")]),
            (["v0", "v1"], [("v0", "v1"), ("v0", "v1")]),
            (["v0"], [("v0", "v9")]),
            (["v0", "v0"], []),
        ],
    )
    def test_rejects_bad_input(self, vertices, edges):
        with pytest.raises(DigraphError):
            build_digraph(vertices, edges)

    def test_equality_uses_labels(self):
        assert tri() == Digraph(3, [(0, 1), (1, 2), (0, 2)])
        assert tri() != Digraph(3, [(0, 1), (1, 2)])

    def test_remove_vertex_renumbers(self):
        H = tri().remove_vertex(1)
        assert H.labels == ("v0", "v2")
        assert H.edges == {(0, 1)}
        assert H.is_subdigraph_of(tri())
        assert H.embedding_into(tri()) == [0, 2]
        assert not tri().is_subdigraph_of(H)


class TestPaths:
    def test_triangle(self):
        G = tri()
        assert G.allowed_paths(0) == [(0,), (1,), (2,)]
        assert G.allowed_paths(1) == [(0, 1), (0, 2), (1, 2)]
        assert G.allowed_paths(2) == [(0, 1, 2)]
        assert G.allowed_paths(3) == []

    def test_two_cycle_has_paths_of_every_length(self):
        G = Digraph(2, [(0, 1), (1, 0)])
        assert G.allowed_paths(3) == [(0, 1, 0, 1), (1, 0, 1, 0)]

    def test_budget(self):
        G = Digraph(3, [(a, b) for a in range(3) for b in range(3) if a != b])
        G.path_budget = 50
        with pytest.raises(ResourceLimitError):
            G.allowed_paths(6)

    @given(digraphs(max_n=4), st.integers(0, 4))
    def test_matches_brute_force(self, G, n):
        assert G.allowed_paths(n) == oracle.allowed(G, n)
        assert all(is_elementary(p) for p in G.allowed_paths(n))


class TestFaces:
    def test_removable_example(self):
        # v1 removable in v0 v1 v2; v2 not removable in v0 v2 v0 nor in v1 v2 v0
        G = Digraph(3, [(0, 1), (1, 2), (0, 2), (2, 0)])
        assert 1 in removable_vertices(G, (0, 1, 2))
        assert 1 not in removable_vertices(G, (0, 2, 0))
        assert 1 not in removable_vertices(G, (1, 2, 0))

    def test_face_edge_cases(self):
        G = tri()
        assert face(G, (0,), 0) is None
        assert face(G, (0, 1, 2), 1) == (0, 2)
        with pytest.raises(IndexError):
            face(G, (0, 1), 2)

    def test_cofaces_triangle(self):
        G = tri()
        assert cofaces(G, (0, 2)) == [(0, 1, 2)]
        assert addable_vertices(G, (0, 2)) == {(1, 0)}
        assert insert_vertex((0, 2), 1, 0) == (0, 1, 2)
        assert insert_vertex((0, 2), 1, -1) == (1, 0, 2)

    @given(digraphs(max_n=4), st.integers(1, 3))
    def test_removable_iff_face(self, G, n):
        for p in G.allowed_paths(n):
            rem = removable_vertices(G, p)
            for i in range(len(p)):
                assert (i in rem) == (face(G, p, i) is not None)
                if i in rem:
                    assert G.is_allowed(face(G, p, i))

    @given(digraphs(max_n=4), st.integers(0, 2))
    def test_cofaces_are_exactly_the_paths_with_p_as_face(self, G, n):
        for p in G.allowed_paths(n):
            expected = sorted(q for q in G.allowed_paths(n + 1) if p in faces(G, q))
            assert cofaces(G, p) == expected


class TestIntermediate:
    def test_consecutive_removal_example(self):
        G = Digraph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (2, 3)])
        out = find_intermediate(G, (0, 1, 2, 3), (0, 3), (0, 2, 3))
        assert out == ConsecutiveRemoval(1, (1, 2))

    def test_alternative_found(self):
        G = Digraph(4, [(a, b) for a, b in itertools.combinations(range(4), 2)])
        assert find_intermediate(G, (0, 1, 2, 3), (0, 3), (0, 2, 3)) == (0, 1, 3)

    def test_rejects_unrelated(self):
        with pytest.raises(ValueError):
            find_intermediate(tri(), (0, 1, 2), (0,), (1, 2))

    @given(digraphs(max_n=5), st.integers(1, 3))
    def test_dichotomy(self, G, n):
        for alpha in G.allowed_paths(n + 1):
            for gamma in set(faces(G, alpha)):
                for beta in set(faces(G, gamma)):
                    out = find_intermediate(G, alpha, beta, gamma)
                    if isinstance(out, ConsecutiveRemoval):
                        i = out.index
                        assert alpha[:i] + alpha[i + 2:] == beta
                    else:
                        assert out != gamma and out in faces(G, alpha) and beta in faces(G, out)


class TestReachability:
    def test_cycle(self):
        G = Digraph(3, [(0, 1), (1, 2), (2, 0)])
        assert shortest_walk(G, 0, 0) == (0, 1, 2, 0)
        assert on_directed_loop(G, 1)
        assert loop_vertices(G) == {0, 1, 2}

    def test_dag(self):
        G = tri()
        assert shortest_walk(G, 0, 2) == (0, 2)
        assert shortest_walk(G, 2, 0) is None
        assert not loop_vertices(G)
        assert reachable_from(G, 0) == {1, 2}

    @given(digraphs(max_n=5))
    def test_loop_membership_matches_paths(self, G):
        # a vertex is on a directed loop iff some allowed path starts and ends there
        for v in G.vertices:
            closed = any(
                p[0] == v and p[-1] == v for n in range(1, G.num_vertices + 1) for p in G.allowed_paths(n)
            )
            assert on_directed_loop(G, v) == closed


class TestDecomposition:
    def test_worked_example(self):
        d = decompose_path((0, 1, 2, 3, 4, 3, 5, 4, 2))
        assert d.betas == ((0, 1, 2, 3), (3, 5, 4, 2))
        assert d.loops == ((3, 4, 3),)

    def test_simplicial(self):
        d = decompose_path((0, 1, 2))
        assert d.betas == ((0, 1, 2),) and d.loops == ()

    def test_back_to_back_loops(self):
        d = decompose_path((0, 1, 0, 1, 0))
        assert d.concatenate() == (0, 1, 0, 1, 0)
        assert d.loops == ((0, 1, 0), (0, 1, 0))

    @given(vertex_sequences())
    def test_round_trip(self, p):
        d = decompose_path(p)
        assert d.concatenate() == p
        for beta in d.betas:
            assert len(set(beta)) == len(beta)
        for loop in d.loops:
            assert loop[0] == loop[-1] and len(loop) >= 3
            assert len(set(loop[:-1])) == len(loop) - 1
        assert decompose_path(p) == d


class TestMapsAndProducts:
    def test_box_product_counts(self):
        G, I1 = tri(), Digraph(2, [(0, 1)], ["0", "1"])
        B = box_product(G, I1)
        assert B.num_vertices == 6
        assert len(B.edges) == 3 * 2 + 3 * 1
        assert B.label(3) == "(v1,1)"

    def test_digraph_maps(self):
        G = tri()
        assert check_digraph_map(G, G, [0, 1, 2])
        assert check_digraph_map(G, G, [0, 2, 2])
        assert not check_digraph_map(G, G, [2, 1, 0])
        with pytest.raises(ValueError):
            check_digraph_map(G, G, [0, 1, 7])
        with pytest.raises(ValueError):
            check_digraph_map(G, G, {0: 0})


class TestShapes:
    def test_known(self):
        sq = Digraph(4, [(0, 1), (0, 2), (1, 3), (2, 3)])
        c4 = Digraph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
        assert is_transitive(tri()) and has_triangle(tri())
        assert has_square(sq) and not has_triangle(sq) and not is_transitive(sq)
        assert not contains_triangle_or_square(c4)
        assert not is_transitive(Digraph(2, [(0, 1), (1, 0)]))

    @given(digraphs(max_n=5))
    def test_transitive_matches_oracle(self, G):
        assert is_transitive(G) == oracle.is_transitive(G)

    @given(digraphs(max_n=5))
    def test_triangle_square_brute_force(self, G):
        E = G.edges
        tri_ = any(
            (a, b) in E and (b, c) in E and (a, c) in E
            for a, b, c in itertools.permutations(G.vertices, 3)
        )
        sq_ = any(
            (a, b) in E and (b, d) in E and (a, c) in E and (c, d) in E
            for a, b, c, d in itertools.permutations(G.vertices, 4)
        )
        assert has_triangle(G) == tri_
        assert has_square(G) == sq_

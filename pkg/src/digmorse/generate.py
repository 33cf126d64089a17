"""Seeded digraph families and randomized test suites."""

from __future__ import annotations

import itertools
import random
from typing import Iterator

from .digraph import Digraph, contains_triangle_or_square, reachable_from
from .errors import PreconditionError, ResourceLimitError
from .morse import MorseFunction, generate_morse, validate_morse

MAX_VERTICES = 12
KINDS = ("transitive-dag", "random", "cycle", "line", "triangle", "square")


def triangle() -> Digraph:
    return Digraph(3, [(0, 1), (1, 2), (0, 2)])


def square() -> Digraph:
    return Digraph(4, [(0, 1), (0, 2), (1, 3), (2, 3)])


def cycle(n: int) -> Digraph:
    if n < 2:
        raise PreconditionError("a directed cycle needs at least 2 vertices")
    return Digraph(n, [(i, (i + 1) % n) for i in range(n)])


def line(n: int) -> Digraph:
    if n < 1:
        raise PreconditionError("a line needs at least 1 vertex")
    return Digraph(n, [(i, i + 1) for i in range(n - 1)])


def random_dag(n: int, p: float, rng: random.Random) -> Digraph:
    """Edges ``i -> j`` for ``i < j`` in a random vertex order."""
    order = list(range(n))
    rng.shuffle(order)
    edges = [(order[i], order[j]) for i, j in itertools.combinations(range(n), 2) if rng.random() < p]
    return Digraph(n, edges)


def transitive_closure(G: Digraph) -> Digraph:
    edges = [(v, w) for v in G.vertices for w in reachable_from(G, v) if w != v]
    return Digraph(G.num_vertices, edges, G.labels)


def random_oriented(n: int, p: float, rng: random.Random) -> Digraph:
    """Random digraph with at most one direction per vertex pair."""
    edges = []
    for i, j in itertools.combinations(range(n), 2):
        if rng.random() < p:
            edges.append((i, j) if rng.random() < 0.5 else (j, i))
    return Digraph(n, edges)


def gen_instance(
    kind: str, n: int | None = None, seed: int = 0, p: float = 0.4, max_vertices: int = MAX_VERTICES
) -> Digraph:
    if kind not in KINDS:
        raise PreconditionError(f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}")
    if kind == "triangle":
        return triangle()
    if kind == "square":
        return square()
    if n is None:
        n = 4
    if n > max_vertices:
        raise PreconditionError(f"{n} vertices exceeds the cap of {max_vertices}")
    if not 0 <= p <= 1:
        raise PreconditionError("edge probability must lie in [0, 1]")
    rng = random.Random(seed)
    if kind == "cycle":
        return cycle(n)
    if kind == "line":
        return line(n)
    if kind == "transitive-dag":
        return transitive_closure(random_dag(n, p, rng))
    return random_oriented(n, p, rng)


STRATEGIES = ("trivial", "single-zero", "multi-zero")


def transitive_suite(count: int, seed: int, max_n: int = 8) -> Iterator[tuple[Digraph, MorseFunction]]:
    """Transitive closures of random DAGs with Morse functions of mixed strategy."""
    rng = random.Random(seed)
    for k in range(count):
        n = rng.randint(min(3, max_n), max_n)
        G = transitive_closure(random_dag(n, rng.uniform(0.2, 0.8), rng))
        f = generate_morse(G, rng.randrange(2**32), STRATEGIES[k % 3])
        yield G, f


def triangle_square_free_suite(
    count: int, seed: int, max_n: int = 8
) -> Iterator[tuple[Digraph, MorseFunction]]:
    """Oriented digraphs with no triangle and no square, by rejection."""
    rng = random.Random(seed)
    k = 0
    while k < count:
        n = rng.randint(min(3, max_n), max_n)
        G = random_oriented(n, rng.uniform(0.15, 0.5), rng)
        if contains_triangle_or_square(G):
            continue
        yield G, generate_morse(G, rng.randrange(2**32), STRATEGIES[k % 3])
        k += 1


def collapse_instance(rng: random.Random, max_n: int = 8) -> tuple[Digraph, MorseFunction]:
    """Random digraph with zero vertices spliced in as ``u -> v -> w``.

    Most splices go along an existing edge ``u -> w`` so they collapse;
    some go between non-adjacent vertices and stay put.
    """
    while True:
        base_n = rng.randint(2, max_n - 1)
        H = random_oriented(base_n, rng.uniform(0.3, 0.7), rng)
        zeros = rng.randint(1, max(1, min(3, max_n - base_n)))
        edges = set(H.edges)
        n = base_n
        for _ in range(zeros):
            if edges and rng.random() < 0.8:
                u, w = rng.choice(sorted(edges))
            else:
                u, w = rng.sample(range(base_n), 2)
            edges |= {(u, n), (n, w)}
            n += 1
        positives = list(range(1, base_n + 1))
        rng.shuffle(positives)
        G = Digraph(n, sorted(edges))
        f = MorseFunction(tuple(positives) + (0,) * (n - base_n))
        if all(G.in_degree(v) == 1 and G.out_degree(v) == 1 for v in f.zeros):
            try:
                report = validate_morse(G, f)
            except ResourceLimitError:
                continue
            if report.valid:
                return G, MorseFunction(f.values, report)


def collapse_suite(count: int, seed: int, max_n: int = 8) -> Iterator[tuple[Digraph, MorseFunction]]:
    rng = random.Random(seed)
    for _ in range(count):
        yield collapse_instance(rng, max_n)

"""Digraphs, elementary paths and the combinatorics of faces and insertions.

Vertices are dense integer ids ``0..n-1`` assigned in declaration order;
string labels are carried along as metadata and are the stable identity
when digraphs are compared across vertex removals.  Paths are plain
tuples of vertex ids.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import DigraphError, ResourceLimitError

Path = tuple[int, ...]

#: Default cap on the total number of allowed paths a digraph will enumerate.
PATH_BUDGET = 10**6


class Digraph:
    """A finite digraph without self-loops.

    Instances are immutable; allowed-path enumerations are cached on the
    instance because every higher-level operation starts from them.
    """

    def __init__(
        self,
        num_vertices: int,
        edges: Iterable[tuple[int, int]],
        labels: Sequence[str] | None = None,
    ):
        if num_vertices < 0:
            raise DigraphError("negative vertex count")
        if labels is None:
            labels = [f"v{i}" for i in range(num_vertices)]
        labels = tuple(str(x) for x in labels)
        if len(labels) != num_vertices:
            raise DigraphError("label count does not match vertex count")
        if len(set(labels)) != len(labels):
            raise DigraphError("vertex labels must be unique")

        edge_set = set()
        for u, v in edges:
            if not (0 <= u < num_vertices and 0 <= v < num_vertices):
                raise DigraphError(f"edge ({u}, {v}) has an undeclared endpoint")
            if u == v:
                raise DigraphError(f"self-loop at vertex {labels[u]!r}")
            if (u, v) in edge_set:
                raise DigraphError(f"duplicate edge {labels[u]!r} -> {labels[v]!r}")
            edge_set.add((u, v))

        self._n = num_vertices
        self._labels = labels
        self._index = {lab: i for i, lab in enumerate(labels)}
        self._edges = frozenset(edge_set)
        succ: list[list[int]] = [[] for _ in range(num_vertices)]
        pred: list[list[int]] = [[] for _ in range(num_vertices)]
        for u, v in edge_set:
            succ[u].append(v)
            pred[v].append(u)
        self._succ = tuple(tuple(sorted(s)) for s in succ)
        self._pred = tuple(tuple(sorted(p)) for p in pred)
        self._path_cache: dict[int, list[Path]] = {}
        self._path_total = 0
        self.path_budget = PATH_BUDGET

    # -- basic structure -------------------------------------------------

    @property
    def num_vertices(self) -> int:
        return self._n

    @property
    def vertices(self) -> range:
        return range(self._n)

    @property
    def labels(self) -> tuple[str, ...]:
        return self._labels

    @property
    def edges(self) -> frozenset[tuple[int, int]]:
        return self._edges

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self._edges)

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise DigraphError(f"unknown vertex label {label!r}") from None

    def label(self, v: int) -> str:
        return self._labels[v]

    def has_edge(self, u: int, v: int) -> bool:
        return (u, v) in self._edges

    def successors(self, v: int) -> tuple[int, ...]:
        return self._succ[v]

    def predecessors(self, v: int) -> tuple[int, ...]:
        return self._pred[v]

    def out_degree(self, v: int) -> int:
        return len(self._succ[v])

    def in_degree(self, v: int) -> int:
        return len(self._pred[v])

    def __eq__(self, other):
        if not isinstance(other, Digraph):
            return NotImplemented
        return self._labels == other._labels and self._edges == other._edges

    def __hash__(self):
        return hash((self._labels, self._edges))

    def __repr__(self):
        arrows = ", ".join(
            f"{self._labels[u]}->{self._labels[v]}" for u, v in self.sorted_edges()
        )
        return f"Digraph([{', '.join(self._labels)}], [{arrows}])"

    # -- derived digraphs ------------------------------------------------

    def remove_vertex(self, v: int) -> "Digraph":
        """Delete ``v`` and its incident edges; surviving ids are renumbered."""
        keep = [x for x in self.vertices if x != v]
        new_id = {x: i for i, x in enumerate(keep)}
        edges = [(new_id[a], new_id[b]) for a, b in self._edges if a != v and b != v]
        return Digraph(len(keep), edges, [self._labels[x] for x in keep])

    def remove_edges(self, drop: Iterable[tuple[int, int]]) -> "Digraph":
        drop = set(drop)
        return Digraph(self._n, [e for e in self._edges if e not in drop], self._labels)

    def is_subdigraph_of(self, other: "Digraph") -> bool:
        """Label-wise containment of vertices and edges."""
        if not set(self._labels) <= set(other._index):
            return False
        return all(
            other.has_edge(other._index[self._labels[a]], other._index[self._labels[b]])
            for a, b in self._edges
        )

    def embedding_into(self, other: "Digraph") -> list[int]:
        """Vertex ids in ``other`` of each vertex of ``self`` (matched by label)."""
        if not self.is_subdigraph_of(other):
            raise DigraphError("not a sub-digraph")
        return [other._index[lab] for lab in self._labels]

    # -- paths -----------------------------------------------------------

    def allowed_paths(self, n: int) -> list[Path]:
        """All allowed elementary ``n``-paths, in lexicographic order."""
        if n < 0:
            return []
        cached = self._path_cache.get(n)
        if cached is not None:
            return cached
        if n == 0:
            paths = [(v,) for v in self.vertices]
        else:
            shorter = self.allowed_paths(n - 1)
            paths = [p + (w,) for p in shorter for w in self._succ[p[-1]]]
        self._path_total += len(paths)
        if self._path_total > self.path_budget:
            raise ResourceLimitError(
                f"allowed-path budget of {self.path_budget} exceeded at dimension {n}"
            )
        self._path_cache[n] = paths
        return paths

    def is_allowed(self, p: Sequence[int]) -> bool:
        if len(p) == 0 or any(not 0 <= v < self._n for v in p):
            return False
        return all((p[i], p[i + 1]) in self._edges for i in range(len(p) - 1))

    def render(self, p: Sequence[int]) -> str:
        return " ".join(self._labels[v] for v in p)


def build_digraph(vertex_list: Sequence[str], edge_list: Iterable[tuple[str, str]]) -> Digraph:
    """Build a digraph from vertex labels and label pairs."""
    index: dict[str, int] = {}
    for lab in vertex_list:
        lab = str(lab)
        if lab in index:
            raise DigraphError(f"duplicate vertex label {lab!r}")
        index[lab] = len(index)
    edges = []
    for a, b in edge_list:
        if str(a) not in index or str(b) not in index:
            raise DigraphError(f"edge ({a!r}, {b!r}) references an undeclared vertex")
        edges.append((index[str(a)], index[str(b)]))
    return Digraph(len(index), edges, list(index))


def enumerate_allowed_paths(G: Digraph, n: int) -> list[Path]:
    return list(G.allowed_paths(n))


def is_elementary(p: Sequence[int]) -> bool:
    return len(p) > 0 and all(p[i] != p[i + 1] for i in range(len(p) - 1))


def face(G: Digraph, p: Path, i: int) -> Path | None:
    """Remove the ``i``-th vertex of ``p`` if the result is an allowed path.

    Endpoint removals always succeed for ``dim p >= 1``.  A 0-path has no
    faces, so ``None`` is returned for it.
    """
    n = len(p) - 1
    if not 0 <= i <= n:
        raise IndexError(f"face index {i} out of range for a {n}-path")
    if n == 0:
        return None
    if 0 < i < n and not G.has_edge(p[i - 1], p[i + 1]):
        return None
    return p[:i] + p[i + 1:]


def faces(G: Digraph, p: Path) -> list[Path]:
    return [q for i in range(len(p)) if (q := face(G, p, i)) is not None]


def removable_vertices(G: Digraph, p: Path) -> set[int]:
    n = len(p) - 1
    out = {0, n}
    out.update(i for i in range(1, n) if G.has_edge(p[i - 1], p[i + 1]))
    return out


def insert_vertex(p: Path, u: int, j: int) -> Path:
    """Insert ``u`` right after position ``j`` (``j = -1`` prepends)."""
    return p[: j + 1] + (u,) + p[j + 1:]


def addable_vertices(G: Digraph, p: Path) -> set[tuple[int, int]]:
    """Pairs ``(u, j)`` such that inserting ``u`` after position ``j`` is allowed."""
    n = len(p) - 1
    out = {(u, -1) for u in G.predecessors(p[0])}
    out.update((u, n) for u in G.successors(p[-1]))
    for j in range(n):
        for u in G.successors(p[j]):
            if G.has_edge(u, p[j + 1]):
                out.add((u, j))
    return out


def cofaces(G: Digraph, p: Path) -> list[Path]:
    return sorted(insert_vertex(p, u, j) for u, j in addable_vertices(G, p))


@dataclass(frozen=True)
class ConsecutiveRemoval:
    """``beta`` equals ``alpha`` with vertices at ``index`` and ``index + 1`` removed."""

    index: int
    removed: tuple[int, int]


class DichotomyViolation(RuntimeError):
    """Neither an alternative intermediate path nor a consecutive removal exists."""


def find_intermediate(
    G: Digraph, alpha: Path, beta: Path, gamma: Path
) -> Path | ConsecutiveRemoval:
    """For ``alpha > gamma > beta``, find another allowed ``gamma'`` in between.

    Candidates are scanned in lexicographic order.  When none exists,
    ``beta`` must arise from ``alpha`` by deleting two consecutive
    vertices, and that witness is returned instead.
    """
    for p in (alpha, beta, gamma):
        if not G.is_allowed(p):
            raise ValueError(f"path {p} is not allowed")
    if gamma not in faces(G, alpha) or beta not in faces(G, gamma):
        raise ValueError("inputs are not in the relation alpha > gamma > beta")

    candidates = sorted(
        g for g in set(faces(G, alpha)) if g != gamma and beta in faces(G, g)
    )
    if candidates:
        return candidates[0]
    for i in range(len(alpha) - 1):
        if alpha[:i] + alpha[i + 2:] == beta:
            return ConsecutiveRemoval(i, (alpha[i], alpha[i + 1]))
    raise DichotomyViolation(f"no intermediate path and no consecutive removal: {alpha}, {beta}")


def shortest_walk(G: Digraph, source: int, target: int) -> Path | None:
    """Shortest nonempty directed walk from ``source`` to ``target`` (BFS)."""
    parent: dict[int, int] = {}
    queue = deque()
    for w in G.successors(source):
        if w not in parent:
            parent[w] = source
            queue.append(w)
    while queue:
        x = queue.popleft()
        if x == target:
            walk = [x]
            while True:
                x = parent[x]
                walk.append(x)
                if x == source and len(walk) > 1:
                    break
            return tuple(reversed(walk))
        for w in G.successors(x):
            if w not in parent:
                parent[w] = x
                queue.append(w)
    return None


def on_directed_loop(G: Digraph, v: int) -> bool:
    if not 0 <= v < G.num_vertices:
        raise DigraphError(f"unknown vertex {v}")
    return shortest_walk(G, v, v) is not None


def loop_vertices(G: Digraph) -> set[int]:
    return {v for v in G.vertices if on_directed_loop(G, v)}


def reachable_from(G: Digraph, v: int) -> set[int]:
    """Vertices reachable from ``v`` by a nonempty walk."""
    seen: set[int] = set()
    stack = list(G.successors(v))
    while stack:
        x = stack.pop()
        if x in seen:
            continue
        seen.add(x)
        stack.extend(G.successors(x))
    return seen


@dataclass(frozen=True)
class Decomposition:
    """``path = betas[0] * loops[0] * betas[1] * ... * betas[-1]``."""

    betas: tuple[Path, ...]
    loops: tuple[Path, ...]

    @property
    def segments(self) -> list[Path]:
        out = []
        for k, beta in enumerate(self.betas):
            out.append(beta)
            if k < len(self.loops):
                out.append(self.loops[k])
        return out

    def concatenate(self) -> Path:
        segs = self.segments
        path = segs[0]
        for s in segs[1:]:
            if s[0] != path[-1]:
                raise ValueError("segments do not chain")
            path = path + s[1:]
        return path


def decompose_path(p: Sequence[int]) -> Decomposition:
    """Split a path into simplicial pieces and directed loops.

    Greedy first-repeat rule: scan the current segment for the first vertex
    equal to an earlier one at index ``j``; emit ``p[start..j]`` and the loop
    ``p[j..i]``, then restart at ``i``.
    """
    p = tuple(p)
    if not p:
        raise ValueError("empty path")
    betas, loops = [], []
    start = 0
    seen = {p[0]: 0}
    i = 1
    while i < len(p):
        j = seen.get(p[i])
        if j is not None:
            betas.append(p[start: j + 1])
            loops.append(p[j: i + 1])
            start = i
            seen = {p[i]: i}
        else:
            seen[p[i]] = i
        i += 1
    betas.append(p[start:])
    return Decomposition(tuple(betas), tuple(loops))


def box_product(G: Digraph, H: Digraph) -> Digraph:
    """Cartesian product; vertex ``(x, y)`` gets id ``x * |V(H)| + y``."""
    m = H.num_vertices
    labels = [f"({G.label(x)},{H.label(y)})" for x in G.vertices for y in H.vertices]
    edges = [(x * m + a, x * m + b) for x in G.vertices for a, b in H.edges]
    edges += [(a * m + y, b * m + y) for a, b in G.edges for y in H.vertices]
    return Digraph(G.num_vertices * m, edges, labels)


def check_digraph_map(G: Digraph, H: Digraph, m: Mapping[int, int] | Sequence[int]) -> bool:
    """Whether ``m`` sends each edge to an edge or collapses it to a vertex."""
    for v in G.vertices:
        try:
            image = m[v]
        except (KeyError, IndexError):
            raise ValueError(f"map undefined on vertex {G.label(v)!r}") from None
        if not 0 <= image < H.num_vertices:
            raise ValueError(f"image {image} of {G.label(v)!r} is not a vertex of the target")
    return all(m[u] == m[v] or H.has_edge(m[u], m[v]) for u, v in G.edges)


def is_transitive(G: Digraph) -> bool:
    # a 2-cycle u -> v -> u would need the self-loop u -> u
    return all(G.has_edge(u, w) for u, v in G.edges for w in G.successors(v))


def has_triangle(G: Digraph) -> bool:
    for a, b in G.edges:
        for c in G.successors(b):
            if c != a and G.has_edge(a, c):
                return True
    return False


def has_square(G: Digraph) -> bool:
    for a in G.vertices:
        # two distinct middles b, b' reaching the same c != a
        via: dict[int, int] = {}
        for b in G.successors(a):
            for c in G.successors(b):
                if c == a:
                    continue
                if c in via and via[c] != b:
                    return True
                via.setdefault(c, b)
    return False


def contains_triangle_or_square(G: Digraph) -> bool:
    return has_triangle(G) or has_square(G)

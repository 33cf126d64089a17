"""Chains of paths, the boundary operator and path homology.

The ambient space for ``n``-chains is the free module on all length-``n+1``
vertex sequences.  Removing a vertex may create two equal neighbours
(``a b a -> a a``); such terms are kept as formal basis elements and are
never allowed, so they can only cancel against each other.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal, Mapping, Sequence

from . import linalg
from .digraph import Digraph, Path, loop_vertices
from .errors import DigraphError

log = logging.getLogger(__name__)

Ring = Literal["rational", "integer"]


class Chain:
    """Finite formal combination of equal-length vertex sequences."""

    __slots__ = ("dimension", "_terms")

    def __init__(self, dimension: int, terms: Mapping[Path, int | Fraction] | None = None):
        self.dimension = dimension
        self._terms: dict[Path, int | Fraction] = {}
        for p, c in (terms or {}).items():
            if len(p) != dimension + 1:
                raise ValueError(f"path {p} does not have dimension {dimension}")
            if c:
                self._terms[tuple(p)] = c

    @classmethod
    def of(cls, path: Sequence[int], coefficient: int | Fraction = 1) -> "Chain":
        return cls(len(path) - 1, {tuple(path): coefficient})

    def items(self):
        return self._terms.items()

    def support(self) -> list[Path]:
        return sorted(self._terms)

    def __getitem__(self, path: Path) -> int | Fraction:
        return self._terms.get(tuple(path), 0)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __iter__(self):
        return iter(sorted(self._terms))

    def _check(self, other: "Chain"):
        if self.dimension != other.dimension and self and other:
            raise ValueError("cannot add chains of different dimensions")

    def __add__(self, other: "Chain") -> "Chain":
        self._check(other)
        out = dict(self._terms)
        for p, c in other._terms.items():
            out[p] = out.get(p, 0) + c
        return Chain(self.dimension if self else other.dimension, out)

    def __neg__(self) -> "Chain":
        return Chain(self.dimension, {p: -c for p, c in self._terms.items()})

    def __sub__(self, other: "Chain") -> "Chain":
        return self + (-other)

    def __rmul__(self, k: int | Fraction) -> "Chain":
        return Chain(self.dimension, {p: k * c for p, c in self._terms.items()})

    def __eq__(self, other):
        if not isinstance(other, Chain):
            return NotImplemented
        return self._terms == other._terms and (
            self.dimension == other.dimension or not self._terms
        )

    def __repr__(self):
        if not self._terms:
            return f"Chain({self.dimension}, 0)"
        parts = [f"{c}*{p}" for p, c in sorted(self._terms.items())]
        return f"Chain({self.dimension}, {' + '.join(parts)})"


def boundary_terms(path: Path) -> dict[Path, int]:
    """Alternating sum of vertex removals of one path."""
    out: dict[Path, int] = {}
    if len(path) <= 1:
        return out
    for i in range(len(path)):
        q = path[:i] + path[i + 1:]
        out[q] = out.get(q, 0) + (-1 if i % 2 else 1)
    return {q: c for q, c in out.items() if c}


def boundary(c: Chain) -> Chain:
    out: dict[Path, int | Fraction] = {}
    for p, coeff in c.items():
        for q, s in boundary_terms(p).items():
            out[q] = out.get(q, 0) + s * coeff
    return Chain(c.dimension - 1, out)


# ---------------------------------------------------------------------------
# Omega


@dataclass(frozen=True)
class OmegaBasis:
    dimension: int
    generators: tuple[Chain, ...]

    def __len__(self):
        return len(self.generators)


class PathComplex:
    """Per-digraph cache of path indices, Omega bases and boundary data."""

    def __init__(self, G: Digraph, ring: Ring = "rational"):
        if ring not in ("rational", "integer"):
            raise ValueError(f"unknown ring {ring!r}")
        self.G = G
        self.ring = ring
        self._index: dict[int, dict[Path, int]] = {}
        self._omega: dict[int, list[dict[int, int | Fraction]]] = {}

    def paths(self, n: int) -> list[Path]:
        return self.G.allowed_paths(n)

    def path_index(self, n: int) -> dict[Path, int]:
        if n not in self._index:
            self._index[n] = {p: i for i, p in enumerate(self.paths(n))}
        return self._index[n]

    def is_path_basis(self, n: int) -> bool:
        """Whether every allowed ``n``-path has an allowed boundary."""
        allowed = self.path_index(n - 1)
        return all(q in allowed for p in self.paths(n) for q in boundary_terms(p))

    def omega(self, n: int) -> list[dict[int, int | Fraction]]:
        """Generators of Omega_n as sparse vectors over the ``n``-path index."""
        if n in self._omega:
            return self._omega[n]
        paths = self.paths(n)
        allowed = self.path_index(n - 1)
        outside: dict[Path, dict[int, int]] = {}
        for j, p in enumerate(paths):
            for q, s in boundary_terms(p).items():
                if q not in allowed:
                    outside.setdefault(q, {})[j] = s
        if not outside:
            gens = [{j: 1} for j in range(len(paths))]
        elif self.ring == "integer":
            gens = linalg.integer_kernel_basis(list(outside.values()), len(paths))
        else:
            gens = linalg.nullspace(outside.values(), len(paths))
        self._omega[n] = gens
        return gens

    def boundary_rows(self, n: int) -> list[dict[int, int | Fraction]]:
        """Boundaries of the Omega_n generators, over the ``(n-1)``-path index."""
        if n <= 0:
            return []
        paths = self.paths(n)
        target = self.path_index(n - 1)
        rows = []
        for gen in self.omega(n):
            acc: dict[Path, int | Fraction] = {}
            for j, c in gen.items():
                for q, s in boundary_terms(paths[j]).items():
                    acc[q] = acc.get(q, 0) + s * c
            # non-allowed terms cancel by construction of Omega
            rows.append({target[q]: v for q, v in acc.items() if v})
        return rows

    def omega_basis(self, n: int) -> OmegaBasis:
        paths = self.paths(n)
        gens = tuple(
            Chain(n, {paths[j]: c for j, c in g.items()}) for g in self.omega(n)
        )
        return OmegaBasis(n, gens)


def omega_basis(G: Digraph, n: int, ring: Ring = "rational") -> OmegaBasis:
    if n < 0:
        raise ValueError("dimension must be non-negative")
    return PathComplex(G, ring).omega_basis(n)


# ---------------------------------------------------------------------------
# homology


@dataclass(frozen=True)
class HomologyReport:
    """Betti numbers (and integer invariant factors) up to ``max_dimension``.

    ``chain_dims[n]`` is the rank of the n-th chain group: dim Omega_n for
    path homology, the number of critical cells for a Morse complex.
    ``invariant_factors[n]`` lists ``0`` once per free summand followed by
    the torsion coefficients, and is only present in integer mode.
    """

    max_dimension: int
    betti: tuple[int, ...]
    chain_dims: tuple[int, ...]
    boundary_ranks: tuple[int, ...]
    ring: Ring = "rational"
    invariant_factors: tuple[tuple[int, ...], ...] | None = None

    @property
    def omega_dims(self) -> tuple[int, ...]:
        return self.chain_dims

    @property
    def torsion(self) -> tuple[tuple[int, ...], ...] | None:
        if self.invariant_factors is None:
            return None
        return tuple(tuple(d for d in fs if d > 1) for fs in self.invariant_factors)

    def euler_characteristic(self) -> int:
        return sum((-1) ** n * b for n, b in enumerate(self.betti))


def homology_from_boundaries(
    chain_dims: Sequence[int],
    boundary_rows: Mapping[int, Sequence[Mapping[int, int | Fraction]]],
    max_dim: int,
    ring: Ring = "rational",
) -> HomologyReport:
    """Homology of a complex given ``boundary_rows[n]``: one row per generator
    of degree ``n`` (the image of that generator, in any coordinates on
    degree ``n - 1`` that embed the chain group as a direct summand).

    ``chain_dims`` and ``boundary_rows`` must cover degrees up to
    ``max_dim + 1``.
    """
    ranks = [0] * (max_dim + 2)
    factors: dict[int, list[int]] = {}
    for n in range(1, max_dim + 2):
        rows = boundary_rows.get(n, [])
        if ring == "integer":
            ncols = 1 + max((k for r in rows for k in r), default=-1)
            factors[n] = linalg.smith_invariants(rows, ncols)
            ranks[n] = len(factors[n])
        else:
            ranks[n] = linalg.rank(rows)
    betti = []
    for n in range(max_dim + 1):
        b = chain_dims[n] - ranks[n] - ranks[n + 1]
        assert b >= 0, "negative Betti number: boundary data inconsistent"
        betti.append(b)
    inv = None
    if ring == "integer":
        inv = tuple(
            tuple([0] * betti[n] + sorted(d for d in factors[n + 1] if d > 1))
            for n in range(max_dim + 1)
        )
    return HomologyReport(
        max_dimension=max_dim,
        betti=tuple(betti),
        chain_dims=tuple(chain_dims[: max_dim + 1]),
        boundary_ranks=tuple(ranks[: max_dim + 1]),
        ring=ring,
        invariant_factors=inv,
    )


def default_max_dim(G: Digraph) -> int:
    return G.num_vertices + 1


def homology(G: Digraph, n_max: int | None = None, ring: Ring = "rational") -> HomologyReport:
    """Path homology of ``G`` in degrees ``0..n_max``.

    Omega is computed one degree past the cap so that the top Betti number
    accounts for incoming boundaries.
    """
    if n_max is None:
        n_max = default_max_dim(G)
    if n_max < 0:
        raise ValueError("n_max must be non-negative")
    if loop_vertices(G):
        log.warning(
            "digraph has directed loops; homology is only asserted up to dimension %d", n_max
        )
    pc = PathComplex(G, ring)
    dims = [len(pc.omega(n)) for n in range(n_max + 2)]
    rows = {n: pc.boundary_rows(n) for n in range(1, n_max + 2)}
    return homology_from_boundaries(dims, rows, n_max, ring)


# ---------------------------------------------------------------------------
# inclusions


@dataclass(frozen=True)
class InclusionDegree:
    dimension: int
    betti_sub: int
    betti: int
    rank: int

    @property
    def injective(self) -> bool:
        return self.rank == self.betti_sub

    @property
    def surjective(self) -> bool:
        return self.rank == self.betti

    @property
    def isomorphism(self) -> bool:
        return self.injective and self.surjective


@dataclass(frozen=True)
class InclusionReport:
    degrees: tuple[InclusionDegree, ...] = field(default_factory=tuple)

    @property
    def isomorphism(self) -> bool:
        return all(d.isomorphism for d in self.degrees)


def induced_inclusion(Gsub: Digraph, G: Digraph, n_max: int | None = None) -> InclusionReport:
    """Rank of ``H_n(Gsub) -> H_n(G)`` over Q for ``n <= n_max``.

    Vertices are matched by label.  Cycles of the sub-digraph are mapped
    into path coordinates of ``G``; the induced rank is
    ``rank(B_n(G) + Z_n(Gsub)) - rank(B_n(G))``.
    """
    if not Gsub.is_subdigraph_of(G):
        raise DigraphError("first argument is not a sub-digraph of the second")
    if n_max is None:
        n_max = default_max_dim(G)
    emb = Gsub.embedding_into(G)
    sub, big = PathComplex(Gsub), PathComplex(G)
    hs = homology(Gsub, n_max)
    hg = homology(G, n_max)

    degrees = []
    for n in range(n_max + 1):
        sub_paths = sub.paths(n)
        big_index = big.path_index(n)
        to_big = [big_index[tuple(emb[v] for v in p)] for p in sub_paths]

        gens = sub.omega(n)
        drows = sub.boundary_rows(n)
        # cycles: combinations of generators with zero boundary
        coeffs = linalg.nullspace(linalg.transpose(drows), len(gens)) if n > 0 else [
            {j: Fraction(1)} for j in range(len(gens))
        ]
        cycles = []
        for combo in coeffs:
            z: dict[int, Fraction] = {}
            for j, c in combo.items():
                for k, x in gens[j].items():
                    t = to_big[k]
                    z[t] = z.get(t, 0) + c * x
            cycles.append({k: x for k, x in z.items() if x})

        bounds = big.boundary_rows(n + 1)
        r_b = linalg.rank(bounds)
        r = linalg.rank(list(bounds) + cycles) - r_b
        degrees.append(InclusionDegree(n, hs.betti[n], hg.betti[n], r))
    return InclusionReport(tuple(degrees))

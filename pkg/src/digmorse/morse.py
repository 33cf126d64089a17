"""Discrete Morse functions on digraphs, critical paths and gradient matchings."""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .chains import Chain, boundary_terms
from .digraph import (
    Digraph,
    Path,
    addable_vertices,
    face,
    insert_vertex,
    loop_vertices,
    removable_vertices,
    shortest_walk,
)
from .errors import MatchingError, MorseError, ResourceLimitError

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of :func:`validate_morse`.

    On failure ``witness`` is an allowed path and ``witness_pair`` two of
    its faces (``kind`` ending in ``face``/``loop``/``reachability``) or two
    of its cofaces (``kind == "coface"``), each of the same weight as the
    witness.  ``zero_faces`` and ``zero_cofaces`` count equal-weight faces
    and cofaces of the witness; ``zero_addable_vertices`` counts distinct
    zero-valued vertices that can be inserted into it.
    """

    valid: bool
    checked_length: int
    kind: str = "ok"
    witness: Path | None = None
    witness_pair: tuple[Path, Path] | None = None
    zero_faces: int = 0
    zero_cofaces: int = 0
    zero_addable_vertices: int = 0
    paths_checked: int = 0

    @property
    def verdict(self) -> str:
        return "valid" if self.valid else "invalid"


@dataclass(frozen=True)
class MorseFunction:
    """Non-negative rational vertex weights, indexed by vertex id."""

    values: tuple[Fraction, ...]
    validation: ValidationReport | None = None
    strategy: str | None = None

    def __post_init__(self):
        vals = tuple(Fraction(x) for x in self.values)
        if any(x < 0 for x in vals):
            raise MorseError("Morse function values must be non-negative")
        object.__setattr__(self, "values", vals)

    def __getitem__(self, v: int) -> Fraction:
        return self.values[v]

    def __len__(self):
        return len(self.values)

    @property
    def zeros(self) -> list[int]:
        return [v for v, x in enumerate(self.values) if x == 0]

    def restrict(self, G: Digraph, sub: Digraph) -> "MorseFunction":
        """Restriction to a sub-digraph (vertices matched by label)."""
        return MorseFunction(tuple(self.values[G.index(lab)] for lab in sub.labels))


def as_morse(G: Digraph, f) -> MorseFunction:
    """Coerce a sequence, a label mapping or a MorseFunction."""
    if isinstance(f, MorseFunction):
        vals = f.values
    elif isinstance(f, Mapping):
        missing = [lab for lab in G.labels if lab not in f]
        if missing:
            raise MorseError(f"no value for vertices {missing}")
        vals = tuple(f[lab] for lab in G.labels)
    else:
        vals = tuple(f)
    if len(vals) != G.num_vertices:
        raise MorseError(f"expected {G.num_vertices} values, got {len(vals)}")
    if isinstance(f, MorseFunction):
        return f
    return MorseFunction(vals)


def path_weight(f: MorseFunction | Sequence, p: Sequence[int]) -> Fraction:
    try:
        return sum((Fraction(f[v]) for v in p), Fraction(0))
    except IndexError:
        raise MorseError(f"path {tuple(p)} has a vertex without a value") from None


def equal_weight_faces(G: Digraph, f: MorseFunction, p: Path) -> list[Path]:
    """Faces of ``p`` with the weight of ``p``: removals of zero-valued vertices."""
    if len(p) == 1:
        return []
    return sorted(
        face(G, p, i) for i in removable_vertices(G, p) if f[p[i]] == 0
    )


def equal_weight_cofaces(G: Digraph, f: MorseFunction, p: Path) -> list[Path]:
    return sorted(insert_vertex(p, u, j) for u, j in addable_vertices(G, p) if f[u] == 0)


# ---------------------------------------------------------------------------
# validation


def _fail(kind, path, pair, G, f, L, checked=0) -> ValidationReport:
    zf = equal_weight_faces(G, f, path)
    zc = equal_weight_cofaces(G, f, path)
    zu = {u for u, j in addable_vertices(G, path) if f[u] == 0}
    return ValidationReport(
        valid=False,
        checked_length=L,
        kind=kind,
        witness=path,
        witness_pair=pair,
        zero_faces=len(zf),
        zero_cofaces=len(zc),
        zero_addable_vertices=len(zu),
        paths_checked=checked,
    )


def validate_morse(
    G: Digraph, f, L: int | None = None, budget: int | None = None
) -> ValidationReport:
    """Check the discrete Morse conditions on all allowed paths of dimension <= L.

    Two structural pre-checks run first and fail fast: a zero-valued vertex
    on a directed loop, and a zero-valued vertex reachable from another.
    Both yield a path whose first and last faces have the path's weight.
    Then every allowed path is scanned for two equal-weight faces or two
    equal-weight cofaces.  A ``valid`` verdict is certified up to ``L``.
    """
    f = as_morse(G, f)
    if L is None:
        L = G.num_vertices + 2
    if L < 1:
        raise ValueError("check length must be at least 1")
    if budget is None:
        budget = G.path_budget
    zero = [x == 0 for x in f.values]
    zeros = f.zeros

    for z in zeros:
        loop = shortest_walk(G, z, z)
        if loop is not None:
            return _fail("zero-on-loop", loop, (loop[1:], loop[:-1]), G, f, L)
    for z in zeros:
        for t in zeros:
            if t != z and (walk := shortest_walk(G, z, t)) is not None:
                return _fail("zero-reachability", walk, (walk[1:], walk[:-1]), G, f, L)

    # zero vertices insertable before v / after v / between consecutive u v
    zin = [[u for u in G.predecessors(v) if zero[u]] for v in G.vertices]
    zout = [[u for u in G.successors(v) if zero[u]] for v in G.vertices]

    def zmid(a, b):
        return [u for u in G.successors(a) if zero[u] and G.has_edge(u, b)]

    checked = 0
    # stack entries: path, zero positions, removable-zero count over
    # finalized interior positions, number of interior zero insertions
    stack = [((v,), (0,) if zero[v] else (), 0, 0) for v in reversed(G.vertices)]
    while stack:
        p, zpos, zr_inner, zmid_count = stack.pop()
        checked += 1
        if checked > budget:
            raise ResourceLimitError(f"validation path budget of {budget} exceeded")
        n = len(p) - 1
        # removable zero positions: endpoints always, interior when finalized
        zr = zr_inner + sum(1 for i in zpos if i in (0, n)) if n > 0 else 0
        if zr > 1:
            pair = tuple(equal_weight_faces(G, f, p)[:2])
            return _fail("face", p, pair, G, f, L, checked)
        zc = zmid_count + len(zin[p[0]]) + len(zout[p[-1]])
        if zc > 1:
            pair = tuple(equal_weight_cofaces(G, f, p)[:2])
            return _fail("coface", p, pair, G, f, L, checked)
        if n == L:
            continue
        last = p[-1]
        for w in reversed(G.successors(last)):
            q = p + (w,)
            inner = zr_inner
            # position n becomes interior in q
            if n > 0 and zero[last] and G.has_edge(p[-2], w):
                inner += 1
            stack.append(
                (
                    q,
                    zpos + (n + 1,) if zero[w] else zpos,
                    inner,
                    zmid_count + len(zmid(last, w)),
                )
            )
    return ValidationReport(valid=True, checked_length=L, paths_checked=checked)


def validated(G: Digraph, f, L: int | None = None) -> MorseFunction:
    """Return ``f`` with its validation report attached (valid or not)."""
    f = as_morse(G, f)
    return MorseFunction(f.values, validate_morse(G, f, L), f.strategy)


# ---------------------------------------------------------------------------
# critical paths and the gradient matching


def is_critical(G: Digraph, f, p: Path) -> bool:
    f = as_morse(G, f)
    p = tuple(p)
    return not equal_weight_faces(G, f, p) and not equal_weight_cofaces(G, f, p)


def critical_paths(G: Digraph, f, n: int) -> list[Path]:
    f = as_morse(G, f)
    return [p for p in G.allowed_paths(n) if is_critical(G, f, p)]


@dataclass(frozen=True)
class MatchPair:
    lower: Path
    upper: Path
    coefficient: int


@dataclass(frozen=True)
class Matching:
    """Partial matching of paths; ``coefficient`` is the incidence of lower in upper."""

    pairs: tuple[MatchPair, ...] = ()
    _up: dict = field(default_factory=dict, compare=False, repr=False)
    _down: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        for pr in self.pairs:
            for path in (pr.lower, pr.upper):
                if path in self._up or path in self._down:
                    raise MatchingError(f"path {path} occurs in two matching pairs")
            if pr.coefficient not in (1, -1):
                raise MatchingError(f"non-unit incidence {pr.coefficient} in pair {pr}")
            self._up[pr.lower] = pr
            self._down[pr.upper] = pr

    def __len__(self):
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)

    def partner_up(self, lower: Path) -> MatchPair | None:
        return self._up.get(lower)

    def partner_down(self, upper: Path) -> MatchPair | None:
        return self._down.get(upper)

    def contains(self, path: Path) -> bool:
        return path in self._up or path in self._down

    def restrict(self, keep) -> "Matching":
        return Matching(tuple(p for p in self.pairs if keep(p)))

    def as_set(self) -> set[tuple[Path, Path]]:
        return {(p.lower, p.upper) for p in self.pairs}


def incidence(upper: Path, lower: Path) -> int:
    return boundary_terms(upper).get(lower, 0)


def build_matching(G: Digraph, f, n_max: int) -> Matching:
    """All equal-weight pairs ``lower < upper`` with ``dim lower < n_max``."""
    f = as_morse(G, f)
    pairs = []
    for n in range(1, n_max + 1):
        for beta in G.allowed_paths(n):
            for alpha in equal_weight_faces(G, f, beta):
                pairs.append(MatchPair(alpha, beta, incidence(beta, alpha)))
    pairs.sort(key=lambda pr: (len(pr.lower), pr.lower))
    return Matching(tuple(pairs))


def grad(M: Matching, c: Chain) -> Chain:
    """Algebraic gradient: ``alpha -> -<d beta, alpha> beta`` for matched alpha."""
    out: dict[Path, int | Fraction] = {}
    for p, coeff in c.items():
        pr = M.partner_up(p)
        if pr is not None:
            out[pr.upper] = out.get(pr.upper, 0) - pr.coefficient * coeff
    return Chain(c.dimension + 1, out)


@dataclass(frozen=True)
class AcyclicityReport:
    acyclic: bool
    cycle: tuple[Path, ...] | None = None  # a1, b1, a2, b2, ..., a1


def check_acyclic(M: Matching) -> AcyclicityReport:
    """Search for a cycle ``a1 < b1 > a2 < b2 > ... > a1`` through matched pairs.

    Pair ``(a, b)`` points to ``(a', b')`` when ``a' != a`` is a face of
    ``b`` with nonzero incidence.
    """
    succ: dict[Path, list[Path]] = {}
    for pr in M.pairs:
        succ[pr.lower] = sorted(
            a for a, c in boundary_terms(pr.upper).items()
            if c and a != pr.lower and M.partner_up(a) is not None
        )
    color: dict[Path, int] = {}
    for root in sorted(succ):
        if color.get(root):
            continue
        color[root] = 1
        trail = [root]
        iters = [iter(succ[root])]
        while iters:
            nxt = next(iters[-1], None)
            if nxt is None:
                color[trail.pop()] = 2
                iters.pop()
                continue
            state = color.get(nxt, 0)
            if state == 1:
                loop = trail[trail.index(nxt):] + [nxt]
                seq = []
                for a in loop[:-1]:
                    seq += [a, M.partner_up(a).upper]
                seq.append(nxt)
                return AcyclicityReport(False, tuple(seq))
            if state == 0:
                color[nxt] = 1
                trail.append(nxt)
                iters.append(iter(succ[nxt]))
    return AcyclicityReport(True)


# ---------------------------------------------------------------------------
# generation


def generate_morse(
    G: Digraph,
    seed: int | None = 0,
    strategy: str = "trivial",
    L: int | None = None,
    tries: int = 200,
) -> MorseFunction:
    """Produce a validated Morse function.

    Positive values are a seeded shuffle of ``1..|V|``.  ``single-zero``
    zeroes the first vertex (by id) with in- and out-degree at most one that
    lies on no directed loop; ``multi-zero`` rejection-samples zero sets.
    Strategies fall back (multi -> single -> trivial) when nothing fits.
    """
    if strategy not in ("trivial", "single-zero", "multi-zero"):
        raise ValueError(f"unknown strategy {strategy!r}")
    rng = random.Random(seed)
    positives = list(range(1, G.num_vertices + 1))
    rng.shuffle(positives)

    def with_zeros(zs) -> list[int]:
        return [0 if v in zs else positives[v] for v in G.vertices]

    def done(vals, used):
        f = MorseFunction(tuple(vals), strategy=used)
        report = validate_morse(G, f, L)
        if not report.valid:
            raise MorseError(f"generated function failed validation: {report}")
        return MorseFunction(f.values, report, used)

    on_loop = loop_vertices(G)
    free = [v for v in G.vertices if v not in on_loop]

    if strategy == "multi-zero" and free:
        for _ in range(tries):
            k = rng.randint(1, len(free))
            vals = with_zeros(set(rng.sample(free, k)))
            if validate_morse(G, vals, L).valid:
                return done(vals, "multi-zero")
        log.info("multi-zero: no valid zero set found, falling back to single-zero")
        strategy = "single-zero"
    elif strategy == "multi-zero":
        strategy = "single-zero"

    if strategy == "single-zero":
        cands = [v for v in free if G.in_degree(v) <= 1 and G.out_degree(v) <= 1]
        if cands:
            return done(with_zeros({cands[0]}), "single-zero")
        log.info("single-zero: no eligible vertex, falling back to trivial")

    return done(positives, "trivial")

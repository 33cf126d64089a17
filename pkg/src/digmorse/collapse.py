"""M-collapses: removing zero-weight vertices along a shortcut edge.

A zero vertex ``v`` with in- and out-degree one sits in a unique triple
``u -> v -> w``.  When ``u -> w`` is also an edge, ``v`` and its two edges
are removed.  The retraction ``v |-> w`` is homotopic to the identity via
a map on ``G box I_1``, so path homology is unchanged.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .chains import Ring, homology, induced_inclusion
from .digraph import Digraph, box_product, build_digraph, check_digraph_map, on_directed_loop
from .errors import PreconditionError
from .morse import Matching, MatchPair, MorseFunction, as_morse, build_matching, validate_morse
from .report import TheoremReport

Triple = tuple[str, str, str]

LINE_I1 = build_digraph(["0", "1"], [("0", "1")])


class NotApplicable(ValueError):
    """The shortcut edge ``u -> w`` is missing, so no collapse at ``v``."""


def zero_degree_check(G: Digraph, f) -> bool:
    f = as_morse(G, f)
    return all(G.in_degree(v) == 1 and G.out_degree(v) == 1 for v in f.zeros)


def triple_at(G: Digraph, v: int) -> tuple[int, int, int]:
    """The unique ``(u, v, w)`` through a vertex of in/out-degree one."""
    if G.in_degree(v) != 1 or G.out_degree(v) != 1:
        raise PreconditionError(f"{G.label(v)} does not have in- and out-degree 1")
    (u,), (w,) = G.predecessors(v), G.successors(v)
    if u == w:
        # u -> v -> u is a directed loop through a zero vertex
        raise PreconditionError(f"{G.label(v)} lies on a directed loop")
    return u, v, w


def collapsible(G: Digraph, f: MorseFunction, v: int) -> bool:
    if f[v] != 0 or G.in_degree(v) != 1 or G.out_degree(v) != 1:
        return False
    u, _, w = G.predecessors(v)[0], v, G.successors(v)[0]
    return u != w and G.has_edge(u, w)


def one_step_collapse(
    G: Digraph, f, v: int, check: bool = True
) -> tuple[Digraph, MorseFunction]:
    """Remove zero vertex ``v`` along its triple; returns ``(G', f')``."""
    f = as_morse(G, f)
    if f[v] != 0:
        raise PreconditionError(f"{G.label(v)} is not a zero vertex")
    assert not on_directed_loop(G, v), "zero vertex on a directed loop"
    u, _, w = triple_at(G, v)
    if not G.has_edge(u, w):
        raise NotApplicable(f"{G.label(u)}->{G.label(w)} is not an edge")
    G2 = G.remove_vertex(v)
    f2 = f.restrict(G, G2)
    if check:
        report = validate_morse(G2, f2)
        if not report.valid:
            raise AssertionError(f"restricted function is not Morse: {report}")
        f2 = MorseFunction(f2.values, report)
    return G2, f2


@dataclass
class CollapseTrace:
    """Steps ``(u, v, w)`` by label, with every intermediate pair."""

    steps: list[Triple] = field(default_factory=list)
    digraphs: list[Digraph] = field(default_factory=list)
    functions: list[MorseFunction] = field(default_factory=list)

    @property
    def initial(self) -> Digraph:
        return self.digraphs[0]

    @property
    def final(self) -> Digraph:
        return self.digraphs[-1]

    @property
    def final_function(self) -> MorseFunction:
        return self.functions[-1]

    def removed_edges(self, k: int) -> tuple[tuple[str, str], tuple[str, str]]:
        u, v, w = self.steps[k]
        return (u, v), (v, w)


def full_collapse(G: Digraph, f, check: bool = True) -> CollapseTrace:
    """Collapse eligible zero vertices in ascending id order until none is left."""
    f = as_morse(G, f)
    if not zero_degree_check(G, f):
        raise PreconditionError("some zero vertex does not have in- and out-degree 1")
    trace = CollapseTrace([], [G], [f])
    while True:
        v = next((x for x in G.vertices if collapsible(G, f, x)), None)
        if v is None:
            return trace
        u, _, w = triple_at(G, v)
        trace.steps.append((G.label(u), G.label(v), G.label(w)))
        G, f = one_step_collapse(G, f, v, check)
        trace.digraphs.append(G)
        trace.functions.append(f)


# ---------------------------------------------------------------------------
# matching shapes


def pair_shape(G: Digraph, f: MorseFunction, pair: MatchPair) -> str | None:
    """``interior``, ``prefix`` or ``suffix`` relative to the zero vertex of the upper path."""
    beta, alpha = pair.upper, pair.lower
    zs = [k for k, x in enumerate(beta) if f[x] == 0]
    if len(zs) != 1:
        return None
    k = zs[0]
    v = beta[k]
    if G.in_degree(v) != 1 or G.out_degree(v) != 1:
        return None
    u, w = G.predecessors(v)[0], G.successors(v)[0]
    if k == len(beta) - 1 and (k == 0 or beta[k - 1] == u) and alpha == beta[:-1]:
        return "prefix"
    if k == 0 and len(beta) > 1 and beta[1] == w and alpha == beta[1:]:
        return "suffix"
    if (
        0 < k < len(beta) - 1
        and beta[k - 1] == u
        and beta[k + 1] == w
        and G.has_edge(u, w)
        and alpha == beta[:k] + beta[k + 1:]
    ):
        return "interior"
    return None


def _relabel(G: Digraph, M: Matching) -> set[tuple[tuple[str, ...], tuple[str, ...]]]:
    return {(tuple(G.label(x) for x in a), tuple(G.label(x) for x in b)) for a, b in M.as_set()}


@dataclass
class InclusionCheck:
    holds: bool
    sizes: list[int]
    shapes: dict[str, int]
    residual_shapes: dict[str, int]
    problems: list[str]

    def __bool__(self):
        return self.holds


def matching_inclusion_check(G: Digraph, f, trace: CollapseTrace, n_max: int) -> InclusionCheck:
    """Matchings shrink along the trace and have the expected shapes."""
    problems = []
    mats = [build_matching(H, g, n_max) for H, g in zip(trace.digraphs, trace.functions)]
    sets = [_relabel(H, M) for H, M in zip(trace.digraphs, mats)]
    for k in range(1, len(sets)):
        extra = sets[k] - sets[k - 1]
        if extra:
            problems.append(f"step {k}: {len(extra)} pairs not in the previous matching")

    def tally(H, g, M, allowed):
        counts = {"interior": 0, "prefix": 0, "suffix": 0, "other": 0}
        for pr in M:
            s = pair_shape(H, g, pr) or "other"
            counts[s] += 1
            if s not in allowed:
                problems.append(f"pair {H.render(pr.lower)} < {H.render(pr.upper)} has shape {s}")
        return counts

    shapes = tally(trace.initial, trace.functions[0], mats[0], {"interior", "prefix", "suffix"})
    residual = tally(trace.final, trace.final_function, mats[-1], {"prefix", "suffix"})
    return InclusionCheck(not problems, [len(M) for M in mats], shapes, residual, problems)


# ---------------------------------------------------------------------------
# retraction and homotopy


@dataclass(frozen=True)
class Retraction:
    """``r: G -> G'`` by label, with ``G'`` the collapsed digraph."""

    source: Digraph
    target: Digraph
    mapping: dict[str, str]

    def ids(self) -> list[int]:
        """``r`` as target ids, indexed by source id."""
        return [self.target.index(self.mapping[lab]) for lab in self.source.labels]

    def into_source(self) -> list[int]:
        """``i o r`` as source ids."""
        return [self.source.index(self.mapping[lab]) for lab in self.source.labels]

    def then(self, other: "Retraction") -> "Retraction":
        if other.source != self.target:
            raise ValueError("retractions do not compose")
        m = {lab: other.mapping[x] for lab, x in self.mapping.items()}
        return Retraction(self.source, other.target, m)


def retraction_map(G: Digraph, Gsub: Digraph, step: Triple) -> Retraction:
    """``v |-> w`` and the identity elsewhere; checked to be a retraction."""
    u, v, w = step
    m = {lab: (w if lab == v else lab) for lab in G.labels}
    r = Retraction(G, Gsub, m)
    if not check_digraph_map(G, Gsub, r.ids()):
        raise AssertionError(f"r is not a digraph map for step {step}")
    if any(m[lab] != lab for lab in Gsub.labels):
        raise AssertionError("r does not fix the sub-digraph")
    return r


def trace_retraction(trace: CollapseTrace) -> Retraction:
    r = Retraction(trace.initial, trace.initial, {lab: lab for lab in trace.initial.labels})
    for k, step in enumerate(trace.steps):
        r = r.then(retraction_map(trace.digraphs[k], trace.digraphs[k + 1], step))
    return r


def homotopy_map(G: Digraph, r: list[int]) -> tuple[Digraph, list[int]]:
    """``G box I_1`` and ``F(x, 0) = x``, ``F(x, 1) = r(x)``."""
    box = box_product(G, LINE_I1)
    F = [0] * box.num_vertices
    for x in G.vertices:
        F[2 * x] = x
        F[2 * x + 1] = r[x]
    return box, F


def homotopy_check(G: Digraph, r: Retraction | list[int]) -> bool:
    """Whether ``F`` built from ``i o r`` is a digraph map ``G box I_1 -> G``."""
    ids = r.into_source() if isinstance(r, Retraction) else list(r)
    box, F = homotopy_map(G, ids)
    return check_digraph_map(box, G, F)


# ---------------------------------------------------------------------------
# verification


def verify_theorem_2(G: Digraph, f, n_max: int, ring: Ring = "rational") -> TheoremReport:
    """Collapse fully and compare path homology before and after."""
    f = as_morse(G, f)
    v = validate_morse(G, f)
    if not v.valid:
        raise PreconditionError(f"not a discrete Morse function: {v.kind} at {v.witness}")
    if not zero_degree_check(G, f):
        raise PreconditionError("some zero vertex does not have in- and out-degree 1")
    trace = full_collapse(G, f)
    Gt, ft = trace.final, trace.final_function
    report = TheoremReport("collapse")
    report.data["trace"] = trace

    report.add(
        "no collapsible zero vertex left",
        not any(collapsible(Gt, ft, x) for x in Gt.vertices),
    )
    report.add("collapsed function is Morse", validate_morse(Gt, ft).valid)
    for k, step in enumerate(trace.steps):
        H, H2 = trace.digraphs[k], trace.digraphs[k + 1]
        r = retraction_map(H, H2, step)
        report.add(f"step {k + 1} retraction", check_digraph_map(H, H2, r.ids()), step)
        report.add(f"step {k + 1} homotopy", homotopy_check(H, r), step)

    inc = matching_inclusion_check(G, f, trace, n_max)
    report.add("matching inclusion and shapes", inc.holds, inc.problems)
    report.data["inclusion_check"] = inc

    before = homology(G, n_max, ring)
    after = homology(Gt, n_max, ring)
    report.data.update(before=before, after=after)
    report.add("betti numbers agree", before.betti == after.betti, (before.betti, after.betti))
    if ring == "integer":
        report.add(
            "invariant factors agree",
            before.invariant_factors == after.invariant_factors,
            (before.invariant_factors, after.invariant_factors),
        )
    inclusion = induced_inclusion(Gt, G, n_max)
    report.data["inclusion"] = inclusion
    for d in inclusion.degrees:
        report.add(f"inclusion iso in degree {d.dimension}", d.isomorphism, d)
    return report

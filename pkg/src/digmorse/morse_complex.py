"""Morse complexes over the allowed-path basis and Morse homology.

The complex is only built when allowed paths give a basis of Omega in
every degree up to the cap: either Omega_n = P_n, or Omega_n = 0 and the
degree contributes no basis elements.  Other digraphs are refused, since
no canonical path basis exists for multi-term Omega generators.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .chains import HomologyReport, PathComplex, Ring, boundary_terms, homology, homology_from_boundaries
from .digraph import Digraph, Path
from .errors import PreconditionError
from .morse import Matching, MorseFunction, as_morse, build_matching, check_acyclic, validate_morse
from .report import TheoremReport


def path_basis(G: Digraph, n_max: int) -> list[list[Path]] | None:
    """Per-degree path basis of Omega up to ``n_max``, or ``None``."""
    pc = PathComplex(G)
    basis = []
    for n in range(n_max + 1):
        if n <= 1 or pc.is_path_basis(n):
            basis.append(list(pc.paths(n)))
        elif not pc.omega(n):
            basis.append([])
        else:
            return None
    return basis


def check_path_basis(G: Digraph, n_max: int) -> bool:
    return path_basis(G, n_max) is not None


def restrict_to_basis(M: Matching, basis: Sequence[Sequence[Path]]) -> Matching:
    members = [set(b) for b in basis]

    def inside(pr):
        n = len(pr.lower) - 1
        return n + 1 < len(members) and pr.lower in members[n] and pr.upper in members[n + 1]

    return M.restrict(inside)


@dataclass(frozen=True)
class BasisPartition:
    upper: tuple[tuple[Path, ...], ...]
    lower: tuple[tuple[Path, ...], ...]
    critical: tuple[tuple[Path, ...], ...]


def partition_basis(basis: Sequence[Sequence[Path]], M: Matching) -> BasisPartition:
    members = [set(b) for b in basis]
    for pr in M:
        n = len(pr.lower) - 1
        if n + 1 >= len(members) or pr.lower not in members[n] or pr.upper not in members[n + 1]:
            raise ValueError(f"pair {pr.lower} < {pr.upper} is not inside the basis")
    upper, lower, critical = [], [], []
    for b in basis:
        up = tuple(p for p in b if M.partner_down(p) is not None)
        down = tuple(p for p in b if M.partner_up(p) is not None)
        upper.append(up)
        lower.append(down)
        critical.append(tuple(p for p in b if not M.contains(p)))
    return BasisPartition(tuple(upper), tuple(lower), tuple(critical))


@dataclass(frozen=True)
class AlternatingPath:
    """``head > a1 < b1 > ... < bk > tail`` with its weight ``m(p)``."""

    head: Path
    tail: Path
    pairs: tuple[tuple[Path, Path], ...]
    coefficient: Fraction


class MorseComplex:
    """Critical cells and the Morse boundary for an acyclic matching on a path basis."""

    def __init__(self, basis: Sequence[Sequence[Path]], matching: Matching):
        acyc = check_acyclic(matching)
        if not acyc.acyclic:
            raise PreconditionError(f"matching has a cycle: {acyc.cycle}")
        self.basis = [list(b) for b in basis]
        self.matching = matching
        self.partition = partition_basis(self.basis, matching)
        self.top = len(self.basis) - 1
        self._members = [set(b) for b in self.basis]
        self._crit_index = [{p: i for i, p in enumerate(c)} for c in self.partition.critical]
        self._flow: dict[Path, dict[Path, Fraction]] = {}

    @property
    def critical(self) -> tuple[tuple[Path, ...], ...]:
        return self.partition.critical

    def incidences(self, b: Path) -> dict[Path, int]:
        """``<d b, a>`` for basis elements ``a`` one degree down."""
        n = len(b) - 1
        if n == 0:
            return {}
        below = self._members[n - 1]
        terms = boundary_terms(b)
        # with a path basis every nonzero boundary term is itself a basis path
        assert all(a in below for a in terms), "boundary leaves the basis"
        return terms

    def alternating_paths(self, b: Path) -> list[AlternatingPath]:
        """All alternating paths starting at ``b``, by depth-first search."""
        out: list[AlternatingPath] = []
        limit = len(self.matching) + 1

        def walk(x: Path, pairs: tuple, num: Fraction, den: Fraction):
            if len(pairs) > limit:
                raise PreconditionError("alternating path longer than the matching: cycle")
            skip = self.matching.partner_down(x)
            for a, c in sorted(self.incidences(x).items()):
                if skip is not None and a == skip.lower:
                    continue
                k = len(pairs)
                out.append(AlternatingPath(b, a, pairs, (-1) ** k * num * c / den))
                up = self.matching.partner_up(a)
                if up is not None:
                    walk(up.upper, pairs + ((a, up.upper),), num * c, den * up.coefficient)

        walk(b, (), Fraction(1), Fraction(1))
        return out

    def _total_flow(self, x: Path) -> dict[Path, Fraction]:
        """Sum of ``m(p)`` per tail over alternating paths leaving ``x``."""
        if x in self._flow:
            return self._flow[x]
        acc: dict[Path, Fraction] = {}
        skip = self.matching.partner_down(x)
        for a, c in self.incidences(x).items():
            if skip is not None and a == skip.lower:
                continue
            acc[a] = acc.get(a, 0) + c
            up = self.matching.partner_up(a)
            if up is not None:
                factor = Fraction(-c, up.coefficient)
                for t, v in self._total_flow(up.upper).items():
                    acc[t] = acc.get(t, 0) + factor * v
        self._flow[x] = {t: v for t, v in acc.items() if v}
        return self._flow[x]

    def morse_boundary(self, b: Path) -> dict[Path, Fraction]:
        """``d^M b``: flow restricted to critical tails."""
        n = len(b) - 1
        if b not in self._crit_index[n]:
            raise ValueError(f"{b} is not critical")
        if n == 0:
            return {}
        crit = self._crit_index[n - 1]
        return {t: v for t, v in sorted(self._total_flow(b).items()) if t in crit and v}

    def boundary_rows(self, n: int) -> list[dict[int, Fraction]]:
        """Rows of ``d^M_n`` over the critical index of degree ``n - 1``."""
        if n <= 0 or n > self.top:
            return []
        crit = self._crit_index[n - 1]
        return [
            {crit[t]: v for t, v in self.morse_boundary(b).items()}
            for b in self.critical[n]
        ]

    def squares_to_zero(self) -> bool:
        for n in range(2, self.top + 1):
            for b in self.critical[n]:
                acc: dict[Path, Fraction] = {}
                for a, c in self.morse_boundary(b).items():
                    for t, v in self.morse_boundary(a).items():
                        acc[t] = acc.get(t, 0) + c * v
                if any(acc.values()):
                    return False
        return True

    def homology(self, n_max: int, ring: Ring = "rational") -> HomologyReport:
        if n_max + 1 > self.top:
            raise ValueError("complex does not reach one degree past the cap")
        dims = [len(c) for c in self.critical[: n_max + 2]]
        rows = {}
        for n in range(1, n_max + 2):
            rs = self.boundary_rows(n)
            if ring == "integer":
                for r in rs:
                    assert all(v.denominator == 1 for v in r.values())
                rs = [{k: int(v) for k, v in r.items()} for r in rs]
            rows[n] = rs
        return homology_from_boundaries(dims, rows, n_max, ring)


def _require_valid(G: Digraph, f, n_max: int) -> MorseFunction:
    f = as_morse(G, f)
    report = f.validation
    if report is None or report.checked_length < n_max + 3:
        report = validate_morse(G, f, max(n_max + 3, G.num_vertices + 2))
    if not report.valid:
        raise PreconditionError(f"not a discrete Morse function: {report.kind} at {report.witness}")
    return f


def build_morse_complex(G: Digraph, f, n_max: int) -> MorseComplex:
    """Morse complex of ``(G, f)`` through degree ``n_max + 1``."""
    f = _require_valid(G, f, n_max)
    basis = path_basis(G, n_max + 1)
    if basis is None:
        raise PreconditionError(
            "allowed paths do not form a basis of Omega; an acyclic matching over "
            "multi-term Omega generators is not constructed"
        )
    M = restrict_to_basis(build_matching(G, f, n_max + 1), basis)
    return MorseComplex(basis, M)


def morse_homology(G: Digraph, f, n_max: int, ring: Ring = "rational") -> HomologyReport:
    return build_morse_complex(G, f, n_max).homology(n_max, ring)


def verify_theorem_1(G: Digraph, f, n_max: int, ring: Ring = "rational") -> TheoremReport:
    """Compare path homology with Morse homology and check the cell accounting."""
    if not check_path_basis(G, n_max + 1):
        raise PreconditionError("allowed paths do not form a basis of Omega")
    mc = build_morse_complex(G, f, n_max)
    report = TheoremReport("morse-complex")
    direct = homology(G, n_max, ring)
    morse = mc.homology(n_max, ring)
    report.data.update(direct=direct, morse=morse)

    report.add("acyclic matching", check_acyclic(mc.matching).acyclic)
    report.add("d^M squared is zero", mc.squares_to_zero())
    report.add("betti numbers agree", direct.betti == morse.betti, (direct.betti, morse.betti))
    if ring == "integer":
        report.add(
            "invariant factors agree",
            direct.invariant_factors == morse.invariant_factors,
            (direct.invariant_factors, morse.invariant_factors),
        )
    part = mc.partition
    ledger = []
    for n in range(n_max + 1):
        row = {
            "n": n,
            "omega": direct.chain_dims[n],
            "critical": len(part.critical[n]),
            "upper": len(part.upper[n]),
            "lower": len(part.lower[n]),
            "upper_next": len(part.upper[n + 1]),
        }
        ledger.append(row)
        report.add(
            f"dim Omega_{n} = |C|+|U|+|D|",
            row["omega"] == row["critical"] + row["upper"] + row["lower"],
            row,
        )
        report.add(f"|U_{n + 1}| = |D_{n}|", row["upper_next"] == row["lower"], row)
    report.data["ledger"] = ledger
    return report

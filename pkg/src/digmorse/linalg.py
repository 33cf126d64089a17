"""Exact sparse linear algebra over the rationals and the integers.

Vectors are ``dict[int, number]`` keyed by column index with no stored
zeros.  Elimination over Q is fraction-free: rows are scaled to primitive
integer rows and combined by cross-multiplication, with the pivot row
chosen by smallest support.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

SparseVec = dict[int, int]


def _primitive(row: Mapping[int, int | Fraction]) -> SparseVec:
    """Clear denominators and divide out the content; leading entry positive."""
    den = 1
    for x in row.values():
        if isinstance(x, Fraction):
            den = lcm(den, x.denominator)
    ints = {c: int(x * den) for c, x in row.items() if x != 0}
    if not ints:
        return {}
    g = 0
    for x in ints.values():
        g = gcd(g, x)
    if ints[min(ints)] < 0:
        g = -g
    return {c: x // g for c, x in ints.items()}


def _combine(target: SparseVec, pivot: SparseVec, col: int) -> SparseVec:
    """Eliminate ``col`` from ``target`` using ``pivot``; result is primitive."""
    a, b = pivot[col], target[col]
    out = {c: a * x for c, x in target.items()}
    for c, x in pivot.items():
        v = out.get(c, 0) - b * x
        if v:
            out[c] = v
        else:
            out.pop(c, None)
    return _primitive(out)


def row_echelon(rows: Iterable[Mapping[int, int | Fraction]]) -> list[tuple[int, SparseVec]]:
    """Row echelon form as ``(pivot_column, primitive_integer_row)`` pairs.

    Pivot columns are strictly increasing.
    """
    active = [r for r in (_primitive(r) for r in rows) if r]
    result = []
    while active:
        col = min(min(r) for r in active)
        hits = [r for r in active if col in r]
        rest = [r for r in active if col not in r]
        pivot = min(hits, key=lambda r: (len(r), abs(r[col])))
        for r in hits:
            if r is pivot:
                continue
            reduced = _combine(r, pivot, col)
            if reduced:
                rest.append(reduced)
        result.append((col, pivot))
        active = rest
    return result


def rank(rows: Iterable[Mapping[int, int | Fraction]]) -> int:
    return len(row_echelon(rows))


def rref(rows: Iterable[Mapping[int, int | Fraction]]) -> list[tuple[int, dict[int, Fraction]]]:
    """Reduced row echelon form over Q with unit pivots."""
    ech = row_echelon(rows)
    out: list[tuple[int, dict[int, Fraction]]] = []
    for col, row in reversed(ech):
        p = row[col]
        vec = {c: Fraction(x, p) for c, x in row.items()}
        for pcol, prow in out:
            f = vec.get(pcol)
            if f:
                for c, x in prow.items():
                    v = vec.get(c, 0) - f * x
                    if v:
                        vec[c] = v
                    else:
                        vec.pop(c, None)
        out.append((col, vec))
    out.reverse()
    return out


def nullspace(rows: Iterable[Mapping[int, int | Fraction]], ncols: int) -> list[dict[int, Fraction]]:
    """Basis of ``{x : A x = 0}`` in reduced echelon form (as row vectors)."""
    reduced = rref(rows)
    pivots = {col for col, _ in reduced}
    basis = []
    for free in range(ncols):
        if free in pivots:
            continue
        vec = {free: Fraction(1)}
        for col, row in reduced:
            x = row.get(free)
            if x:
                vec[col] = -x
        basis.append(vec)
    return [row for _, row in rref(basis)]


def transpose(rows: Sequence[Mapping[int, int | Fraction]]) -> list[dict[int, int | Fraction]]:
    cols: dict[int, dict[int, int | Fraction]] = {}
    for i, row in enumerate(rows):
        for j, x in row.items():
            cols.setdefault(j, {})[i] = x
    if not cols:
        return []
    return [cols.get(j, {}) for j in range(max(cols) + 1)]


def integer_kernel_basis(rows: Sequence[Mapping[int, int]], ncols: int) -> list[SparseVec]:
    """A Z-basis of the lattice ``{x in Z^ncols : A x = 0}``.

    Unimodular column reduction of ``A`` stacked over the identity: columns
    whose ``A``-part vanishes at the end carry the kernel basis.
    """
    # each column: (A-part keyed by row index, U-part keyed by column index)
    columns = [({}, {j: 1}) for j in range(ncols)]
    for i, row in enumerate(rows):
        for j, x in row.items():
            if x:
                columns[j][0][i] = int(x)

    def axpy(dst, src, k):
        for part in (0, 1):
            d = dst[part]
            for key, x in src[part].items():
                v = d.get(key, 0) + k * x
                if v:
                    d[key] = v
                else:
                    d.pop(key, None)

    active = list(range(ncols))
    for i in range(len(rows)):
        hits = [j for j in active if columns[j][0].get(i)]
        while len(hits) > 1:
            hits.sort(key=lambda j: abs(columns[j][0][i]))
            p = hits[0]
            a = columns[p][0][i]
            for j in hits[1:]:
                q = columns[j][0][i] // a
                axpy(columns[j], columns[p], -q)
            hits = [j for j in hits if columns[j][0].get(i)]
        if hits:
            active.remove(hits[0])
    return [dict(sorted(columns[j][1].items())) for j in active]


def smith_invariants(rows: Sequence[Mapping[int, int]], ncols: int) -> list[int]:
    """Nonzero invariant factors ``d1 | d2 | ...`` of an integer matrix.

    Dense row/column reduction; the pivot is always an entry of minimal
    absolute value in the remaining block.
    """
    A = [[int(row.get(j, 0)) for j in range(ncols)] for row in rows]
    A = [r for r in A if any(r)]
    m = len(A)
    diag: list[int] = []
    t = 0
    while t < m and t < ncols:
        best = None
        for i in range(t, m):
            Ai = A[i]
            for j in range(t, ncols):
                x = Ai[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        A[t], A[i] = A[i], A[t]
        if j != t:
            for r in A:
                r[t], r[j] = r[j], r[t]
        while True:
            p = A[t][t]
            dirty = False
            for i in range(t + 1, m):
                x = A[i][t]
                if x:
                    q = x // p
                    Ai, At = A[i], A[t]
                    for j in range(t, ncols):
                        if At[j]:
                            Ai[j] -= q * At[j]
                    if Ai[t]:
                        dirty = True
            for j in range(t + 1, ncols):
                x = A[t][j]
                if x:
                    q = x // p
                    for r in A:
                        if r[t]:
                            r[j] -= q * r[t]
                    if A[t][j]:
                        dirty = True
            if dirty:
                # bring the smallest remaining entry of row/column t to the pivot
                cand = [(abs(A[i][t]), i, t) for i in range(t, m) if A[i][t]]
                cand += [(abs(A[t][j]), t, j) for j in range(t + 1, ncols) if A[t][j]]
                _, i, j = min(cand)
                if i != t:
                    A[t], A[i] = A[i], A[t]
                if j != t:
                    for r in A:
                        r[t], r[j] = r[j], r[t]
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, ncols) if A[i][j] % p),
                None,
            )
            if bad is None:
                break
            At, Ab = A[t], A[bad]
            for j in range(t, ncols):
                At[j] += Ab[j]
        diag.append(abs(A[t][t]))
        t += 1
    return diag

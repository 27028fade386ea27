"""Exact Smith normal form over the integers.

Relation matrices coming out of Reidemeister-Schreier rewriting are tall and
very sparse, with most columns killed by a row holding a single unit entry.
Those are eliminated first on sparse rows; the small remainder goes through
a dense reduction.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Sequence


@dataclass(frozen=True, eq=False)
class IntMatrix:
    """Integer matrix stored as sparse rows ``{column: nonzero value}``."""

    rows: int
    cols: int
    sparse_rows: tuple[dict[int, int], ...]

    @classmethod
    def from_dense(cls, data: Sequence[Sequence[int]], cols: int | None = None) -> IntMatrix:
        data = [list(r) for r in data]
        if cols is None:
            cols = len(data[0]) if data else 0
        for r in data:
            if len(r) != cols:
                raise ValueError("ragged matrix")
        return cls(len(data), cols,
                   tuple({j: int(v) for j, v in enumerate(r) if v} for r in data))

    @classmethod
    def from_sparse_rows(cls, rows: Sequence[dict[int, int]], cols: int) -> IntMatrix:
        clean = []
        for r in rows:
            if any(j < 0 or j >= cols for j in r):
                raise ValueError("column index out of range")
            clean.append({j: int(v) for j, v in r.items() if v})
        return cls(len(clean), cols, tuple(clean))

    @property
    def entries(self) -> list[int]:
        """Row-major dense entries, ``rows * cols`` long."""
        out = [0] * (self.rows * self.cols)
        for i, r in enumerate(self.sparse_rows):
            for j, v in r.items():
                out[i * self.cols + j] = v
        return out

    def to_dense(self) -> list[list[int]]:
        return [[r.get(j, 0) for j in range(self.cols)] for r in self.sparse_rows]

    def transpose(self) -> IntMatrix:
        out: list[dict[int, int]] = [{} for _ in range(self.cols)]
        for i, r in enumerate(self.sparse_rows):
            for j, v in r.items():
                out[j][i] = v
        return IntMatrix(self.cols, self.rows, tuple(out))


def _eliminate_units(rows: list[dict[int, int]], ncols: int) -> tuple[list[dict[int, int]], list[int], int]:
    """Pivot on unit entries until none remain.

    Returns the leftover nonzero rows, the surviving columns and the number
    of unit invariants split off.
    """
    col_rows: dict[int, set[int]] = {j: set() for j in range(ncols)}
    for i, r in enumerate(rows):
        for j in r:
            col_rows[j].add(i)
    alive_row = [bool(r) for r in rows]
    heap = [(len(r), i) for i, r in enumerate(rows) if r]
    heapq.heapify(heap)
    units = 0
    while heap:
        length, i = heapq.heappop(heap)
        if not alive_row[i] or length != len(rows[i]):
            continue
        r = rows[i]
        cands = [j for j, v in r.items() if v in (1, -1)]
        if not cands:
            continue
        piv = min(cands, key=lambda j: (len(col_rows[j]), j))
        pv = r[piv]
        for k in sorted(col_rows[piv] - {i}):
            other = rows[k]
            f = other[piv] * pv  # pv = +-1 so pv^-1 = pv
            for j, v in r.items():
                nv = other.get(j, 0) - f * v
                if nv:
                    if j not in other:
                        col_rows[j].add(k)
                    other[j] = nv
                elif j in other:
                    del other[j]
                    col_rows[j].discard(k)
            if other:
                heapq.heappush(heap, (len(other), k))
            else:
                alive_row[k] = False
        for j in r:
            col_rows[j].discard(i)
        del col_rows[piv]
        alive_row[i] = False
        units += 1
    left = [rows[i] for i in range(len(rows)) if alive_row[i] and rows[i]]
    return left, sorted(col_rows), units


def _dense_diagonal(a: list[list[int]]) -> list[int]:
    """Diagonalize by unimodular row/column operations; pivot = least |entry|."""
    m = len(a)
    n = len(a[0]) if m else 0
    diag = []
    top = 0
    while top < min(m, n):
        best = None
        for i in range(top, m):
            for j in range(top, n):
                v = a[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, pi, pj = best
        a[top], a[pi] = a[pi], a[top]
        for row in a:
            row[top], row[pj] = row[pj], row[top]
        while True:
            p = a[top][top]
            done = True
            for i in range(top + 1, m):
                if a[i][top]:
                    q = a[i][top] // p
                    if q:
                        ri, rt = a[i], a[top]
                        for j in range(top, n):
                            ri[j] -= q * rt[j]
                    if a[i][top]:
                        done = False
            for j in range(top + 1, n):
                if a[top][j]:
                    q = a[top][j] // p
                    if q:
                        for row in a[top:]:
                            row[j] -= q * row[top]
                    if a[top][j]:
                        done = False
            if done:
                break
            # a remainder survived: move the smallest entry of the cross to the pivot
            best = (abs(p), top, top)
            for i in range(top + 1, m):
                if a[i][top] and abs(a[i][top]) < best[0]:
                    best = (abs(a[i][top]), i, top)
            for j in range(top + 1, n):
                if a[top][j] and abs(a[top][j]) < best[0]:
                    best = (abs(a[top][j]), top, j)
            _, pi, pj = best
            if pi != top:
                a[top], a[pi] = a[pi], a[top]
            if pj != top:
                for row in a:
                    row[top], row[pj] = row[pj], row[top]
        diag.append(abs(a[top][top]))
        top += 1
    return diag


def _invariant_factors(diag: list[int]) -> list[int]:
    """Turn any diagonal into the divisibility chain via gcd/lcm swaps."""
    d = sorted(x for x in diag if x)
    changed = True
    while changed:
        changed = False
        for i in range(len(d)):
            for j in range(i + 1, len(d)):
                if d[j] % d[i]:
                    g = math.gcd(d[i], d[j])
                    d[i], d[j] = g, d[i] * d[j] // g
                    changed = True
        d.sort()
    return d


def smith_normal_form(m: IntMatrix) -> list[int]:
    """Invariant factors of the cokernel ``Z^cols / rowspace``.

    Returns ``cols`` entries ``d1 | d2 | ...``: the nonzero diagonal of the
    Smith form followed by one zero per free generator of the cokernel.
    """
    rows = [dict(r) for r in m.sparse_rows if r]
    left, cols_left, units = _eliminate_units(rows, m.cols)
    index = {c: k for k, c in enumerate(cols_left)}
    dense = [[0] * len(cols_left) for _ in left]
    for i, r in enumerate(left):
        for j, v in r.items():
            dense[i][index[j]] = v
    diag = _dense_diagonal(dense) if dense else []
    nonzero = [1] * units + _invariant_factors(diag)
    return nonzero + [0] * (m.cols - len(nonzero))


def abelian_invariants(m: IntMatrix) -> tuple[tuple[int, ...], int]:
    """``(torsion coefficients > 1, free rank)`` of the cokernel."""
    d = smith_normal_form(m)
    return tuple(x for x in d if x > 1), sum(1 for x in d if x == 0)

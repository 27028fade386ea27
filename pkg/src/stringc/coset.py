"""Todd-Coxeter coset enumeration (Felsch strategy) and its by-products.

The enumerator works on *columns*: one per generator and one per formal
inverse, except that a generator with a relator ``g^2`` is treated as an
involution and its inverse shares its column.  Cosets are 1-based while the
enumeration runs (0 marks an undefined entry) and are renumbered from 0 in
the finished :class:`CosetTable`; coset 0 is the subgroup coset.
"""

from __future__ import annotations

import logging
import os
from collections import deque
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .fpcore import Presentation, Word
from .perm import Permutation
from .snf import IntMatrix

logger = logging.getLogger(__name__)

DEFAULT_MAX_COSETS = 2 ** 20
DEFAULT_MAX_STEPS = 10 ** 8
_MAX_DEDUCTIONS = 100_000


class LimitExceeded(Exception):
    """Enumeration did not close within the limits; the index may be infinite."""


class BadWord(ValueError):
    """A subgroup word references a generator the presentation lacks."""


class Incomplete(Exception):
    """Operation needs a complete coset table."""


@dataclass(frozen=True)
class EnumerationLimits:
    max_cosets: int = DEFAULT_MAX_COSETS
    max_steps: int = DEFAULT_MAX_STEPS

    def __post_init__(self) -> None:
        if self.max_cosets < 1 or self.max_steps < 1:
            raise ValueError("enumeration limits must be positive")

    @classmethod
    def from_env(cls, max_cosets: int | None = None) -> EnumerationLimits:
        """Defaults, with ``STRINGC_MAX_COSETS`` and then ``max_cosets`` overriding."""
        cap = DEFAULT_MAX_COSETS
        env = os.environ.get("STRINGC_MAX_COSETS")
        if env:
            cap = int(env)
        if max_cosets is not None:
            cap = max_cosets
        return cls(max_cosets=cap)


@dataclass(frozen=True, eq=False)
class CosetTable:
    """Action of the generators on the cosets of a subgroup.

    ``action[c, 2*g]`` is ``c^g`` and ``action[c, 2*g+1]`` is ``c^(g^-1)``.
    """

    presentation: Presentation
    subgroup: tuple[Word, ...]
    action: np.ndarray
    complete: bool = True

    @property
    def n_live(self) -> int:
        return int(self.action.shape[0])

    def _require_complete(self) -> None:
        if not self.complete:
            raise Incomplete("coset table is not complete")


def _word_columns(w: Word, invcol: list[int], involution: list[bool]) -> tuple[int, ...]:
    out: list[int] = []
    for g, e in w:
        c = 2 * g if (e == 1 or involution[g]) else 2 * g + 1
        if out and out[-1] == invcol[c]:
            out.pop()
        else:
            out.append(c)
    return tuple(out)


def _cyclic_reduce(cols: tuple[int, ...], invcol: list[int]) -> tuple[int, ...]:
    while len(cols) >= 2 and cols[0] == invcol[cols[-1]]:
        cols = cols[1:-1]
    return cols


class _Enumerator:
    def __init__(self, p: Presentation, subgroup: Sequence[Word], limits: EnumerationLimits) -> None:
        n = p.ngens
        self.p = p
        self.limits = limits
        involution = [False] * n
        for r in p.relators:
            if len(r) == 2 and r.letters[0] == r.letters[1]:
                involution[r.letters[0][0]] = True
        self.involution = involution
        invcol = []
        for g in range(n):
            invcol += [2 * g + 1, 2 * g] if not involution[g] else [2 * g, 2 * g]
        self.invcol = invcol
        # columns actually stored; an involution's inverse column aliases it
        self.cols = [c for c in range(2 * n) if not (c % 2 and involution[c // 2])]

        rel_cols = []
        for r in p.relators:
            rc = _cyclic_reduce(_word_columns(r, invcol, involution), invcol)
            if rc:
                rel_cols.append(rc)
        self.relators = rel_cols
        conj: dict[int, set[tuple[int, ...]]] = {c: set() for c in range(2 * n)}
        for rc in rel_cols:
            inv = tuple(invcol[c] for c in reversed(rc))
            for w in (rc, inv):
                for i in range(len(w)):
                    cw = w[i:] + w[:i]
                    conj[cw[0]].add(cw)
        # sorted for determinism
        self.conj = {c: sorted(ws) for c, ws in conj.items()}
        self.subgroup = [_word_columns(w, invcol, involution) for w in subgroup]

        width = 2 * n
        self.table: list[list[int]] = [[0, 0] for _ in range(width)]  # index 0 unused
        self.parent = [0, 1]
        self.n_defined = 1
        self.steps = 0
        self.deductions: list[tuple[int, int]] = []
        self.overflowed = False

    # -- basic table operations (1-based cosets, 0 = undefined) --

    def _set(self, c: int, x: int, d: int) -> None:
        t = self.table
        t[x][c] = d
        t[self.invcol[x]][d] = c
        if len(self.deductions) >= _MAX_DEDUCTIONS:
            self.overflowed = True
            self.deductions.clear()
        self.deductions.append((c, x))

    def _define(self, c: int, x: int) -> int:
        if self.n_defined >= self.limits.max_cosets:
            raise LimitExceeded(
                f"coset limit {self.limits.max_cosets} reached; "
                "raise the limit or the index may be infinite")
        self.n_defined += 1
        d = self.n_defined
        for col in self.table:
            col.append(0)
        self.parent.append(d)
        self._set(c, x, d)
        return d

    def _tick(self) -> None:
        self.steps += 1
        if self.steps > self.limits.max_steps:
            raise LimitExceeded(f"step limit {self.limits.max_steps} reached")

    def _rep(self, c: int) -> int:
        parent = self.parent
        root = c
        while parent[root] != root:
            root = parent[root]
        while parent[c] != root:
            parent[c], c = root, parent[c]
        return root

    def _merge(self, a: int, b: int, queue: list[int]) -> None:
        a, b = self._rep(a), self._rep(b)
        if a == b:
            return
        lo, hi = (a, b) if a < b else (b, a)
        self.parent[hi] = lo
        queue.append(hi)

    def _coincidence(self, a: int, b: int) -> None:
        t = self.table
        invcol = self.invcol
        queue: list[int] = []
        self._merge(a, b, queue)
        i = 0
        while i < len(queue):
            g = queue[i]
            i += 1
            for x in self.cols:
                d = t[x][g]
                if not d:
                    continue
                xi = invcol[x]
                if t[xi][d] == g:
                    t[xi][d] = 0
                mu = self._rep(g)
                nu = self._rep(d)
                if t[x][mu]:
                    self._merge(nu, t[x][mu], queue)
                elif t[xi][nu]:
                    self._merge(mu, t[xi][nu], queue)
                else:
                    self._set(mu, x, nu)

    def _alive(self, c: int) -> bool:
        return self.parent[c] == c

    def _scan(self, c: int, w: tuple[int, ...]) -> None:
        t = self.table
        r = len(w)
        f = c
        i = 0
        while i < r:
            nxt = t[w[i]][f]
            if not nxt:
                break
            f = nxt
            i += 1
        else:
            if f != c:
                self._coincidence(f, c)
            return
        invcol = self.invcol
        b = c
        j = r - 1
        while j >= i:
            nxt = t[invcol[w[j]]][b]
            if not nxt:
                break
            b = nxt
            j -= 1
        else:
            self._coincidence(f, b)
            return
        if j == i:
            self._set(f, w[i], b)

    def _scan_and_fill(self, c: int, w: tuple[int, ...]) -> None:
        t = self.table
        invcol = self.invcol
        r = len(w)
        f, i = c, 0
        b, j = c, r - 1
        while True:
            while i <= j and t[w[i]][f]:
                f = t[w[i]][f]
                i += 1
            if i > j:
                if f != b:
                    self._coincidence(f, b)
                return
            while j >= i and t[invcol[w[j]]][b]:
                b = t[invcol[w[j]]][b]
                j -= 1
            if j < i:
                self._coincidence(f, b)
                return
            if i == j:
                self._set(f, w[i], b)
                return
            self._define(f, w[i])

    def _process_deductions(self) -> None:
        conj = self.conj
        invcol = self.invcol
        t = self.table
        parent = self.parent
        while self.deductions:
            c, x = self.deductions.pop()
            self._tick()
            if parent[c] != c:
                continue
            for w in conj[x]:
                self._scan(c, w)
                if parent[c] != c:
                    break
            if parent[c] != c:
                continue
            d = t[x][c]
            if not d or parent[d] != d:
                continue
            for w in conj[invcol[x]]:
                self._scan(d, w)
                if parent[d] != d:
                    break

    def _lookahead_pass(self) -> bool:
        """Scan every relator at every live coset; True if the table changed."""
        before = (self.n_defined, self._live_count(), self._filled())
        self.overflowed = False
        for c in range(1, self.n_defined + 1):
            if not self._alive(c):
                continue
            for w in self.relators:
                self._tick()
                self._scan(c, w)
                if not self._alive(c):
                    break
            self._process_deductions()
        return before != (self.n_defined, self._live_count(), self._filled())

    def _live_count(self) -> int:
        return sum(1 for c in range(1, self.n_defined + 1) if self.parent[c] == c)

    def _filled(self) -> int:
        return sum(1 for x in self.cols for c in range(1, self.n_defined + 1)
                   if self.parent[c] == c and self.table[x][c])

    def run(self) -> np.ndarray:
        for w in self.subgroup:
            if w:
                self._scan_and_fill(1, w)
        self._process_deductions()
        while True:
            c = 1
            t = self.table
            cols = self.cols
            parent = self.parent
            while c <= self.n_defined:
                if parent[c] == c:
                    for x in cols:
                        if parent[c] != c:
                            break
                        if not t[x][c]:
                            self._tick()
                            self._define(c, x)
                            self._process_deductions()
                c += 1
            if not self.overflowed:
                break
            logger.debug("deduction stack overflowed; running a lookahead pass")
            if not self._lookahead_pass():
                break
        return self._compact()

    def _compact(self) -> np.ndarray:
        live = [c for c in range(1, self.n_defined + 1) if self.parent[c] == c]
        index = {c: i for i, c in enumerate(live)}
        n = self.p.ngens
        out = np.zeros((len(live), 2 * n), dtype=np.int64)
        for x in range(2 * n):
            col = self.table[x - 1 if (x % 2 and self.involution[x // 2]) else x]
            out[:, x] = [index[self._rep(col[c])] for c in live]
        return out


def enumerate_cosets(p: Presentation, subgroup: Sequence[Word] = (),
                     limits: EnumerationLimits | None = None) -> CosetTable:
    """Enumerate the cosets of ``<subgroup>`` in the group presented by ``p``."""
    subgroup = tuple(subgroup)
    for w in subgroup:
        if w.max_generator() >= p.ngens:
            raise BadWord(f"subgroup word uses generator {w.max_generator()}, "
                          f"presentation has {p.ngens}")
    limits = limits or EnumerationLimits()
    action = _Enumerator(p, subgroup, limits).run()
    action.setflags(write=False)
    return CosetTable(p, subgroup, action, complete=True)


def _letter_column(g: int, e: int) -> int:
    return 2 * g if e == 1 else 2 * g + 1


def trace(t: CosetTable, start: int, w: Word) -> int:
    t._require_complete()
    a = t.action
    c = start
    for g, e in w:
        c = int(a[c, _letter_column(g, e)])
    return c


def coset_action(t: CosetTable) -> list[Permutation]:
    t._require_complete()
    return [Permutation._wrap(np.ascontiguousarray(t.action[:, 2 * g], dtype=np.int32))
            for g in range(t.presentation.ngens)]


def is_normal(t: CosetTable, subgroup: Sequence[Word] | None = None) -> bool:
    """Every subgroup generator fixes every coset."""
    t._require_complete()
    words = t.subgroup if subgroup is None else tuple(subgroup)
    a = t.action
    pts = np.arange(t.n_live)
    for w in words:
        cur = pts
        for g, e in w:
            cur = a[cur, _letter_column(g, e)]
        if not np.array_equal(cur, pts):
            return False
    return True


def _spanning_tree(t: CosetTable) -> list[tuple[int, int, int]]:
    """BFS tree: for each coset, (parent, generator, sign); root gets (-1, -1, 0)."""
    a = t.action
    n = t.n_live
    tree: list[tuple[int, int, int] | None] = [None] * n
    tree[0] = (-1, -1, 0)
    queue = deque([0])
    ngens = t.presentation.ngens
    while queue:
        c = queue.popleft()
        for g in range(ngens):
            for e in (1, -1):
                d = int(a[c, _letter_column(g, e)])
                if tree[d] is None:
                    tree[d] = (c, g, e)
                    queue.append(d)
    return tree  # type: ignore[return-value]


def schreier_transversal(t: CosetTable) -> list[Word]:
    """Prefix-closed coset representatives; ``reps[c]`` takes coset 0 to ``c``."""
    t._require_complete()
    tree = _spanning_tree(t)
    reps: list[Word | None] = [None] * t.n_live
    reps[0] = Word()
    order = sorted(range(t.n_live), key=lambda c: _depth(tree, c))
    for c in order:
        if c == 0:
            continue
        parent, g, e = tree[c]
        reps[c] = Word(reps[parent].letters + ((g, e),))  # type: ignore[union-attr]
    return reps  # type: ignore[return-value]


def _depth(tree: list[tuple[int, int, int]], c: int) -> int:
    d = 0
    while tree[c][0] != -1:
        c = tree[c][0]
        d += 1
    return d


def abelianized_subgroup_relations(p: Presentation, t: CosetTable) -> IntMatrix:
    """Reidemeister-Schreier relation matrix of the subgroup, abelianized.

    Columns are the Schreier generators ``s(c, g)`` (coset ``c``, generator
    ``g``) whose edge ``c -> c^g`` is not in the spanning tree.  Row ``(c, r)``
    is the exponent-sum vector of relator ``r`` rewritten from coset ``c``.
    """
    t._require_complete()
    if p.ngens != t.presentation.ngens:
        raise ValueError("presentation does not match the coset table")
    tree = _spanning_tree(t)
    tree_edges: set[tuple[int, int]] = set()
    for c, (parent, g, e) in enumerate(tree):
        if parent < 0:
            continue
        # positive orientation of the edge
        tree_edges.add((parent, g) if e == 1 else (c, g))
    a = t.action
    columns: dict[tuple[int, int], int] = {}
    for c in range(t.n_live):
        for g in range(p.ngens):
            if (c, g) not in tree_edges:
                columns[(c, g)] = len(columns)
    rows: list[dict[int, int]] = []
    for c in range(t.n_live):
        for r in p.relators:
            row: dict[int, int] = {}
            d = c
            for g, e in r:
                if e == 1:
                    col = columns.get((d, g))
                    d = int(a[d, 2 * g])
                    if col is not None:
                        row[col] = row.get(col, 0) + 1
                else:
                    d = int(a[d, 2 * g + 1])
                    col = columns.get((d, g))
                    if col is not None:
                        row[col] = row.get(col, 0) - 1
            if d != c:
                raise AssertionError("relator does not close; table inconsistent")
            rows.append({k: v for k, v in row.items() if v})
    return IntMatrix.from_sparse_rows(rows, len(columns))

"""Permutation groups acting on ``{0, ..., n-1}``.

Products compose left to right: ``x^(p*q) = (x^p)^q``, matching the right
action of words on cosets.

Two kinds of stabilizer chain back a group:

* a deterministic Schreier-Sims chain with stored transversals, used for
  arbitrary groups;
* a single-level chain for groups known to act semiregularly (every point
  stabilizer trivial).  The regular representation of a finite group
  obtained from a trivial-subgroup coset table is regular, so it and all of
  its subgroups are semiregular; there the chain is one orbit with a
  Schreier vector and the stabilizer is known to be trivial.
"""

from __future__ import annotations

import math
from collections import deque
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .fpcore import Word


class CapExceeded(Exception):
    """A subgroup closure grew past the allowed number of elements."""


class Permutation:
    """Immutable permutation stored as a numpy image array."""

    __slots__ = ("images", "_key", "_list")

    def __init__(self, images: Iterable[int], *, check: bool = True) -> None:
        arr = np.array(images, dtype=np.int32)
        if arr.ndim != 1:
            raise ValueError("permutation images must be one-dimensional")
        if check:
            n = arr.shape[0]
            if n and (arr.min() < 0 or arr.max() >= n
                      or np.bincount(arr, minlength=n).max() != 1):
                raise ValueError("images do not form a bijection")
        arr.setflags(write=False)
        self.images = arr
        self._key: bytes | None = None
        self._list: list[int] | None = None

    @classmethod
    def _wrap(cls, arr: np.ndarray) -> Permutation:
        p = cls.__new__(cls)
        arr.setflags(write=False)
        p.images = arr
        p._key = None
        p._list = None
        return p

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        return cls._wrap(np.arange(degree, dtype=np.int32))

    @classmethod
    def from_cycles(cls, degree: int, *cycles: Sequence[int]) -> Permutation:
        img = list(range(degree))
        for cyc in cycles:
            for a, b in zip(cyc, tuple(cyc[1:]) + (cyc[0],)):
                img[a] = b
        return cls(img)

    @property
    def degree(self) -> int:
        return int(self.images.shape[0])

    @property
    def key(self) -> bytes:
        if self._key is None:
            self._key = self.images.tobytes()
        return self._key

    def as_list(self) -> list[int]:
        if self._list is None:
            self._list = self.images.tolist()
        return self._list

    def __mul__(self, other: Permutation) -> Permutation:
        return Permutation._wrap(other.images[self.images])

    def inverse(self) -> Permutation:
        inv = np.empty_like(self.images)
        inv[self.images] = np.arange(self.degree, dtype=np.int32)
        return Permutation._wrap(inv)

    def __pow__(self, e: int) -> Permutation:
        base = self if e >= 0 else self.inverse()
        e = abs(e)
        result = Permutation.identity(self.degree)
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __call__(self, point: int) -> int:
        return int(self.images[point])

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Permutation) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def is_identity(self) -> bool:
        return bool(np.array_equal(self.images, np.arange(self.degree)))

    def cycles(self) -> list[tuple[int, ...]]:
        img = self.as_list()
        seen = bytearray(len(img))
        out = []
        for start in range(len(img)):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = 1
            x = img[start]
            while x != start:
                seen[x] = 1
                cyc.append(x)
                x = img[x]
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def order(self) -> int:
        return math.lcm(1, *(len(c) for c in self.cycles()))

    def __repr__(self) -> str:
        if self.degree > 32:
            return f"Permutation(<degree {self.degree}>)"
        cyc = "".join("(" + " ".join(map(str, c)) + ")" for c in self.cycles())
        return f"Permutation({cyc or '()'}, degree={self.degree})"


def commutator(a: Permutation, b: Permutation) -> Permutation:
    return a.inverse() * b.inverse() * a * b


def evaluate(w: Word, images: Sequence[Permutation], degree: int | None = None) -> Permutation:
    """Image of a word under ``generator i -> images[i]``."""
    if degree is None:
        degree = images[0].degree
    arr = np.arange(degree, dtype=np.int32)
    inverses: dict[int, np.ndarray] = {}
    for g, e in w:
        if e == 1:
            arr = images[g].images[arr]
        else:
            if g not in inverses:
                inverses[g] = images[g].inverse().images
            arr = inverses[g][arr]
    return Permutation._wrap(arr)


class _SchreierSimsChain:
    """Deterministic Schreier-Sims with stored transversals."""

    def __init__(self, degree: int) -> None:
        self.degree = degree
        self.base: list[int] = []
        self.gens: list[list[Permutation]] = []
        self.trans: list[dict[int, Permutation]] = []
        self.tested: list[set[tuple[int, int]]] = []
        self.identity = Permutation.identity(degree)

    def sift(self, g: Permutation, start: int = 0) -> tuple[Permutation, int]:
        for i in range(start, len(self.base)):
            b = g(self.base[i])
            u = self.trans[i].get(b)
            if u is None:
                return g, i
            g = g * u.inverse()
        return g, len(self.base)

    def contains(self, g: Permutation) -> bool:
        h, j = self.sift(g)
        return j == len(self.base) and h.is_identity()

    def order(self) -> int:
        return math.prod(len(t) for t in self.trans)

    def _new_level(self, g: Permutation) -> None:
        moved = np.nonzero(g.images != np.arange(self.degree))[0]
        beta = int(moved[0])
        self.base.append(beta)
        self.gens.append([])
        self.trans.append({beta: self.identity})
        self.tested.append(set())

    def _extend_orbit(self, i: int) -> None:
        trans = self.trans[i]
        gens = self.gens[i]
        queue = deque(trans)
        while queue:
            b = queue.popleft()
            u = trans[b]
            for s in gens:
                c = s(b)
                if c not in trans:
                    trans[c] = u * s
                    queue.append(c)

    def add(self, g: Permutation) -> bool:
        """Extend the group by ``g``; returns False if already a member."""
        h, j = self.sift(g)
        if j == len(self.base) and h.is_identity():
            return False
        self._insert(h, 0, j)
        self._complete()
        return True

    def _insert(self, h: Permutation, lo: int, j: int) -> None:
        if j == len(self.base):
            self._new_level(h)
        for level in range(lo, j + 1):
            self.gens[level].append(h)
            self._extend_orbit(level)

    def _complete(self) -> None:
        i = len(self.base) - 1
        while i >= 0:
            dropped = False
            trans = self.trans[i]
            gens = self.gens[i]
            tested = self.tested[i]
            for b in list(trans):
                for si, s in enumerate(gens):
                    if (b, si) in tested:
                        continue
                    tested.add((b, si))
                    c = s(b)
                    y = trans[b] * s * trans[c].inverse()
                    h, j = self.sift(y, i + 1)
                    if j < len(self.base) or not h.is_identity():
                        self._insert(h, i + 1, j)
                        i = j
                        dropped = True
                        break
                if dropped:
                    break
            if not dropped:
                i -= 1


class _SemiregularChain:
    """Single orbit of point 0 with a Schreier vector.

    Only valid for groups in which every point stabilizer is trivial; then
    each group element is determined by the image of 0.
    """

    def __init__(self, degree: int) -> None:
        self.degree = degree
        self.gens: list[Permutation] = []
        self._gen_lists: list[list[int]] = []
        self.parent: dict[int, tuple[int, int]] = {0: (-1, -1)}
        self.identity = Permutation.identity(degree)

    def order(self) -> int:
        return len(self.parent)

    def element_at(self, point: int) -> Permutation:
        path = []
        while point != 0:
            prev, gi = self.parent[point]
            path.append(gi)
            point = prev
        arr = np.arange(self.degree, dtype=np.int32)
        for gi in reversed(path):
            arr = self.gens[gi].images[arr]
        return Permutation._wrap(arr)

    def contains(self, g: Permutation) -> bool:
        b = g(0)
        if b not in self.parent:
            return False
        return self.element_at(b) == g

    def add(self, g: Permutation) -> bool:
        if self.contains(g):
            return False
        gi = len(self.gens)
        self.gens.append(g)
        self._gen_lists.append(g.as_list())
        parent = self.parent
        gl = self._gen_lists
        queue = deque(parent)
        while queue:
            b = queue.popleft()
            for k, lst in enumerate(gl):
                c = lst[b]
                if c not in parent:
                    parent[c] = (b, k)
                    queue.append(c)
        return True


class PermutationGroup:
    """Group generated by permutations of a common degree."""

    def __init__(self, generators: Sequence[Permutation], degree: int | None = None,
                 *, semiregular: bool = False) -> None:
        gens = tuple(generators)
        if degree is None:
            if not gens:
                raise ValueError("degree required for a group without generators")
            degree = gens[0].degree
        for g in gens:
            if g.degree != degree:
                raise ValueError("generators have different degrees")
        self.degree = degree
        self.generators = gens
        self.semiregular = semiregular
        self._chain: _SchreierSimsChain | _SemiregularChain | None = None

    def _new_chain(self) -> _SchreierSimsChain | _SemiregularChain:
        if self.semiregular:
            return _SemiregularChain(self.degree)
        return _SchreierSimsChain(self.degree)

    @property
    def chain(self) -> _SchreierSimsChain | _SemiregularChain:
        if self._chain is None:
            chain = self._new_chain()
            for g in self.generators:
                if not g.is_identity():
                    chain.add(g)
            self._chain = chain
        return self._chain

    def order(self) -> int:
        return self.chain.order()

    def contains(self, g: Permutation) -> bool:
        return self.chain.contains(g)

    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def subgroup(self, generators: Sequence[Permutation]) -> PermutationGroup:
        return PermutationGroup(generators, self.degree, semiregular=self.semiregular)

    def image(self, w: Word) -> Permutation:
        if w.max_generator() >= len(self.generators):
            raise ValueError("word uses a generator outside the group's alphabet")
        return evaluate(w, self.generators, self.degree)

    def __repr__(self) -> str:
        return (f"PermutationGroup(degree={self.degree}, "
                f"ngens={len(self.generators)}, semiregular={self.semiregular})")


def group_order(g: PermutationGroup) -> int:
    return g.order()


def element_order(g: PermutationGroup, w: Word) -> int:
    return g.image(w).order()


def subgroup_elements(g: PermutationGroup, gens: Sequence[Word | Permutation],
                      cap: int) -> frozenset[Permutation]:
    """All elements of the subgroup generated by ``gens``, by closure."""
    if cap < 1:
        raise ValueError("cap must be positive")
    perms = [x if isinstance(x, Permutation) else g.image(x) for x in gens]
    return closure(perms, g.degree, cap)


def closure(perms: Sequence[Permutation], degree: int, cap: int | None = None) -> frozenset[Permutation]:
    """Breadth-first closure of a generating set under right multiplication."""
    ident = Permutation.identity(degree)
    seen = {ident}
    queue = deque([ident])
    perms = [p for p in perms if not p.is_identity()]
    while queue:
        x = queue.popleft()
        for p in perms:
            y = x * p
            if y not in seen:
                seen.add(y)
                if cap is not None and len(seen) > cap:
                    raise CapExceeded(f"subgroup has more than {cap} elements")
                queue.append(y)
    return frozenset(seen)


def intersect_subgroups(a: frozenset[Permutation], b: frozenset[Permutation]) -> frozenset[Permutation]:
    return a & b


def normal_closure(g: PermutationGroup, seed: Sequence[Permutation]) -> PermutationGroup:
    """Smallest subgroup containing ``seed`` normalized by ``g``'s generators."""
    chain = g._new_chain()
    gens: list[Permutation] = []
    queue: deque[Permutation] = deque()
    for s in seed:
        if s.degree != g.degree:
            raise ValueError("seed degree differs from group degree")
        if not s.is_identity() and chain.add(s):
            gens.append(s)
            queue.append(s)
    conj = [(x, x.inverse()) for x in g.generators]
    while queue:
        h = queue.popleft()
        for x, xinv in conj:
            c = xinv * h * x
            if chain.add(c):
                gens.append(c)
                queue.append(c)
    out = g.subgroup(gens)
    out._chain = chain
    return out


def derived_subgroup(g: PermutationGroup) -> PermutationGroup:
    comms = [commutator(a, b) for a, b in combinations(g.generators, 2)]
    return normal_closure(g, comms)


def derived_series(g: PermutationGroup) -> list[PermutationGroup]:
    """``[G, G', G'', ...]`` stopping at the trivial group or when the order stabilizes."""
    series = [g]
    current = g
    while current.order() > 1:
        nxt = derived_subgroup(current)
        if nxt.order() == current.order():
            break
        series.append(nxt)
        current = nxt
    return series


def is_solvable(g: PermutationGroup) -> bool:
    return derived_series(g)[-1].order() == 1

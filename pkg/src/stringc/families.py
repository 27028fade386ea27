"""Presentations of the rank-3 string groups studied here.

All groups are on generators ``r0, r1, r2``.  Relators are emitted in a
fixed order: involutions, then the Coxeter exponents on ``r0 r1``, ``r1 r2``
and ``r0 r2``, then commutator and other extra relators, then the family
relators.
"""

from __future__ import annotations

from dataclasses import dataclass

from .fpcore import Presentation, Word, word_commutator, word_conjugate

GENERATOR_NAMES = ("r0", "r1", "r2")
FAMILY_TAGS = ("G", "H", "I")
TYPE2_COEFFICIENT = {"G": 192, "H": 384, "I": 768}


class BadParam(ValueError):
    """Parameters outside the constructions' hypotheses."""


def _w(*indices: int) -> Word:
    return Word.from_indices(*indices)


def _involutions() -> list[Word]:
    return [_w(0, 0), _w(1, 1), _w(2, 2)]


def _coxeter(k01: int, k12: int) -> list[Word]:
    return [_w(0, 1) ** k01, _w(1, 2) ** k12, _w(0, 2) ** 2]


def _presentation(relators: list[Word]) -> Presentation:
    return Presentation(GENERATOR_NAMES, tuple(relators))


@dataclass(frozen=True)
class Type1Params:
    s: int
    t: int
    n: int
    l1: int
    l2: int

    def __post_init__(self) -> None:
        if self.s < 2:
            raise BadParam(f"s must be >= 2 (got {self.s})")
        if self.t < 2:
            raise BadParam(f"t must be >= 2 (got {self.t})")
        if self.n < self.s + self.t + 1:
            raise BadParam(f"n must be >= s+t+1 = {self.s + self.t + 1} (got {self.n})")
        for name, v in (("l1", self.l1), ("l2", self.l2)):
            if v < 1 or v % 2 == 0:
                raise BadParam(f"{name} must be a positive odd integer (got {v})")

    @property
    def k1(self) -> int:
        return 2 ** self.s * self.l1

    @property
    def k2(self) -> int:
        return 2 ** self.t * self.l2

    @property
    def order(self) -> int:
        return 2 ** self.n * self.l1 * self.l2

    def as_dict(self) -> dict[str, int]:
        return {"s": self.s, "t": self.t, "n": self.n, "l1": self.l1, "l2": self.l2}


@dataclass(frozen=True)
class Type2Params:
    family: str
    m: int

    def __post_init__(self) -> None:
        if self.family not in FAMILY_TAGS:
            raise BadParam(f"family must be one of {FAMILY_TAGS} (got {self.family!r})")
        if self.m < 1:
            raise BadParam(f"m must be >= 1 (got {self.m})")

    @property
    def order(self) -> int:
        return TYPE2_COEFFICIENT[self.family] * self.m ** 3

    def as_dict(self) -> dict[str, object]:
        return {"family": self.family, "m": self.m}


@dataclass(frozen=True)
class SubgroupSpec:
    family: str
    generators: tuple[Word, Word, Word]

    def __post_init__(self) -> None:
        if len(self.generators) != 3:
            raise ValueError("a subgroup spec has exactly three generators")


def build_degenerate(k: int, variant: int) -> Presentation:
    """``D_2k x Z_2`` (variant 1, exponent k on r0 r1) or its dual (variant 2)."""
    if k < 2:
        raise BadParam(f"k must be >= 2 (got {k})")
    if variant == 1:
        return _presentation(_involutions() + _coxeter(k, 2))
    if variant == 2:
        return _presentation(_involutions() + _coxeter(2, k))
    raise BadParam(f"variant must be 1 or 2 (got {variant})")


def build_type44(b: int, variant: int) -> Presentation:
    """Type {4,4} groups of orders ``8b^2`` (variant 1) and ``16b^2`` (variant 2)."""
    if b < 2:
        raise BadParam(f"b must be >= 2 (got {b})")
    if variant == 1:
        extra = _w(1, 0, 1, 2) ** b
    elif variant == 2:
        extra = _w(0, 1, 2) ** (2 * b)
    else:
        raise BadParam(f"variant must be 1 or 2 (got {variant})")
    return _presentation(_involutions() + _coxeter(4, 4) + [extra])


def _parity_relator(p: Type1Params) -> Word:
    d = p.n - p.s - p.t
    if d % 2:
        return word_commutator(_w(0, 1) ** 2, _w(2)) ** (2 ** ((d - 1) // 2))
    return word_commutator(_w(0, 1) ** 2, _w(1, 2) ** 2) ** (2 ** ((d - 2) // 2))


def _comm_a() -> Word:
    return word_commutator(_w(0, 1) ** 4, _w(2))


def _comm_b() -> Word:
    return word_commutator(_w(0), _w(1, 2) ** 4)


def build_type1(p: Type1Params) -> Presentation:
    """Type {2^s l1, 2^t l2} group of order ``2^n l1 l2``: 8 base relators and a parity relator."""
    rels = _involutions() + _coxeter(p.k1, p.k2) + [_comm_a(), _comm_b(), _parity_relator(p)]
    return _presentation(rels)


def build_type1_chain(p: Type1Params) -> tuple[Presentation, Presentation]:
    """The intermediate quotients ``(G1, G2)``.

    ``G1`` caps ``r0 r1`` at order 4 and drops ``[(r0 r1)^4, r2]``; ``G2``
    additionally caps ``r1 r2`` at 4 and drops ``[r0, (r1 r2)^4]``.
    """
    g1 = _presentation(_involutions() + _coxeter(4, p.k2) + [_comm_b(), _parity_relator(p)])
    g2 = _presentation(_involutions() + _coxeter(4, 4) + [_parity_relator(p)])
    return g1, g2


def _u_relators() -> list[Word]:
    return _involutions() + _coxeter(6, 6) + [_w(2, 1, 0, 1) ** 3]


def build_U() -> Presentation:
    """The infinite group all type {6,6} families are quotients of."""
    return _presentation(_u_relators())


def _family_words(family: str, m: int) -> tuple[Word, Word, Word]:
    c = word_conjugate
    if family == "G":
        return (c(_w(0, 2, 1) ** (4 * m), _w(1)),
                _w(2, 1, 0) ** (4 * m),
                c(_w(2, 1, 0) ** (4 * m), _w(1)))
    if family == "H":
        u = (_w(1, 2) ** 3 * _w(0, 1) ** 3) ** (2 * m)
        return c(u, _w(0, 1)), c(u, _w(2)), c(u, _w(2, 1))
    if family == "I":
        return (c((_w(0, 1) ** 2 * _w(2, 1) ** 2) ** (3 * m), _w(0)),
                (_w(1, 2) ** 2 * _w(1, 0) ** 2) ** (3 * m),
                c((_w(1, 0) ** 2 * _w(1, 2) ** 2) ** (3 * m), _w(2)))
    raise BadParam(f"family must be one of {FAMILY_TAGS} (got {family!r})")


def subgroup_generators(family: str) -> SubgroupSpec:
    """Generators of the normal subgroups N (G), L (H), M (I) of ``U``."""
    return SubgroupSpec(family, _family_words(family, 1))


def build_type2(p: Type2Params) -> Presentation:
    """``U`` plus the m-th powers of the family's subgroup generators."""
    return _presentation(_u_relators() + list(_family_words(p.family, p.m)))

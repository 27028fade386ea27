"""String groups generated by involutions and string C-group certificates."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from .coset import EnumerationLimits, LimitExceeded, coset_action, enumerate_cosets
from .fpcore import GeneratorMap, Presentation, Word
from .perm import (
    Permutation,
    PermutationGroup,
    derived_series,
    evaluate,
    subgroup_elements,
)


class TargetNotCertified(Exception):
    """The quotient criterion needs a target that is a string C-group."""


@dataclass(eq=False)
class SggiGroup:
    """A presentation together with its regular permutation image.

    ``distinguished[i]`` is the presentation generator playing the role of
    the i-th distinguished involution.
    """

    presentation: Presentation
    image: PermutationGroup
    distinguished: tuple[int, ...]
    _subgroups: dict[frozenset[int], frozenset[Permutation]] = field(default_factory=dict, repr=False)

    @property
    def rank(self) -> int:
        return len(self.distinguished)

    def rho(self, i: int) -> Permutation:
        return self.image.generators[self.distinguished[i]]

    def word(self, *positions: int) -> Word:
        """Product of distinguished generators at the given string positions."""
        return Word.from_indices(*(self.distinguished[i] for i in positions))

    def default_cap(self) -> int:
        ks = [self.rho(i - 1) * self.rho(i) for i in range(1, self.rank)]
        return 4 * max((k.order() for k in ks), default=1) + 16

    def elements(self, positions: frozenset[int], cap: int | None = None) -> frozenset[Permutation]:
        """Elements of the subgroup generated by the listed distinguished generators."""
        if positions not in self._subgroups:
            gens = [self.rho(i) for i in sorted(positions)]
            self._subgroups[positions] = subgroup_elements(
                self.image, gens, cap if cap is not None else self.default_cap())
        return self._subgroups[positions]


def sggi_group(p: Presentation, distinguished: Sequence[int] | None = None,
               limits: EnumerationLimits | None = None) -> SggiGroup:
    order = tuple(range(p.ngens)) if distinguished is None else tuple(distinguished)
    if sorted(order) != list(range(p.ngens)):
        raise ValueError(f"distinguished order {order} must list every generator once")
    table = enumerate_cosets(p, (), limits)
    perms = coset_action(table)
    # trivial-subgroup coset action is the regular representation
    image = PermutationGroup(perms, table.n_live, semiregular=True)
    return SggiGroup(p, image, order)


@dataclass(frozen=True)
class Certificate:
    order: int
    schlafli: tuple[int, ...]
    is_sggi: bool
    string_ok: bool
    intersection_ok: bool
    degenerate: bool
    solvable: bool
    derived_length: int

    @property
    def is_string_c_group(self) -> bool:
        return self.is_sggi and self.intersection_ok

    def as_dict(self) -> dict[str, object]:
        return {
            "order": self.order,
            "schlafli": list(self.schlafli),
            "is_sggi": self.is_sggi,
            "string_ok": self.string_ok,
            "intersection_ok": self.intersection_ok,
            "degenerate": self.degenerate,
            "solvable": self.solvable,
            "derived_length": self.derived_length,
        }


def _involutions_ok(g: SggiGroup) -> bool:
    return all(g.rho(i).order() == 2 for i in range(g.rank))


def _commuting_ok(g: SggiGroup) -> bool:
    for i, j in combinations(range(g.rank), 2):
        if j - i > 1:
            a, b = g.rho(i), g.rho(j)
            if a * b != b * a:
                return False
    return True


def check_string_property(g: SggiGroup) -> bool:
    """Distinguished images are involutions and non-adjacent ones commute."""
    return _involutions_ok(g) and _commuting_ok(g)


def schlafli_type(g: SggiGroup) -> tuple[int, ...]:
    """True orders of ``rho_{i-1} rho_i`` in the image."""
    return tuple((g.rho(i - 1) * g.rho(i)).order() for i in range(1, g.rank))


def check_intersection_property(g: SggiGroup, cap: int | None = None) -> bool:
    """``G_I & G_J == G_{I & J}`` for every pair of proper index subsets."""
    full = frozenset(range(g.rank))
    subsets = [frozenset(c) for r in range(g.rank) for c in combinations(sorted(full), r)]
    for a, b in combinations(subsets, 2):
        if g.elements(a, cap) & g.elements(b, cap) != g.elements(a & b, cap):
            return False
    return True


def intersection_shortcut(g: SggiGroup, cap: int | None = None) -> bool:
    """Rank-3 fast path: ``<r0, r1> & <r1, r2> == <r1>``."""
    if g.rank != 3:
        raise ValueError("the shortcut applies to rank 3 only")
    s01, s12, s1 = frozenset({0, 1}), frozenset({1, 2}), frozenset({1})
    return g.elements(s01, cap) & g.elements(s12, cap) == g.elements(s1, cap)


def certify_group(g: SggiGroup) -> Certificate:
    involutions = _involutions_ok(g)
    string_ok = _commuting_ok(g)
    is_sggi = involutions and string_ok
    schlafli = schlafli_type(g)
    intersection_ok = is_sggi and check_intersection_property(g)
    series = derived_series(g.image)
    solvable = series[-1].order() == 1
    return Certificate(
        order=g.image.order(),
        schlafli=schlafli,
        is_sggi=is_sggi,
        string_ok=string_ok,
        intersection_ok=intersection_ok,
        degenerate=any(k <= 2 for k in schlafli),
        solvable=solvable,
        derived_length=len(series) - 1,
    )


def certify(p: Presentation, distinguished: Sequence[int] | None = None,
            limits: EnumerationLimits | None = None) -> Certificate:
    """Enumerate, build the regular image and run every check."""
    return certify_group(sggi_group(p, distinguished, limits))


@dataclass(frozen=True)
class QuotientVerdict:
    homomorphism: bool
    sggi: bool
    witness: tuple[int, int] | None

    @property
    def holds(self) -> bool:
        return self.homomorphism and self.sggi and self.witness is not None

    def __bool__(self) -> bool:
        return self.holds


def _local_order(p: Presentation, gens: Sequence[int], limits: EnumerationLimits) -> int | None:
    """Order of ``<gens | relators of p involving only gens>``, or None if it does not close.

    The subgroup of ``p``'s group generated by ``gens`` is a quotient of
    this group, so the value bounds that subgroup's order from above.
    """
    allowed = set(gens)
    index = {g: k for k, g in enumerate(gens)}
    rels = [Word(tuple((index[g], e) for g, e in r)) for r in p.relators
            if all(g in allowed for g, _ in r)]
    local = Presentation(tuple(p.generator_names[g] for g in gens), tuple(rels))
    try:
        return enumerate_cosets(local, (), limits).n_live
    except LimitExceeded:
        return None


def quotient_criterion(candidate: Presentation, target: SggiGroup, mapping: GeneratorMap,
                       limits: EnumerationLimits | None = None) -> QuotientVerdict:
    """Certify ``candidate`` as a string C-group through a map onto ``target``.

    Checks that the map kills every candidate relator, that the candidate is
    an sggi, and looks for a rank-2 subgroup (``(0, 1)`` tried before
    ``(1, 2)``) on which the map is injective.  Candidate generator ``i`` is
    taken as its i-th distinguished generator.
    """
    if target.rank != 3 or candidate.ngens != 3:
        raise ValueError("quotient criterion is implemented for rank 3")
    if not (check_string_property(target) and check_intersection_property(target)):
        raise TargetNotCertified("target is not a string C-group")
    if len(mapping.image_words) != candidate.ngens:
        raise ValueError("map must give one image word per candidate generator")
    limits = limits or EnumerationLimits(max_cosets=4096)
    relabel = GeneratorMap(tuple(
        Word(tuple((target.distinguished[g], e) for g, e in w)) for w in mapping.image_words))
    images = [evaluate(relabel.apply(Word.gen(i)), target.image.generators, target.image.degree)
              for i in range(3)]
    hom = all(evaluate(r, images, target.image.degree).is_identity() for r in candidate.relators)

    # sggi: each generator of order <= 2 and r0, r2 commuting already in the
    # candidate's own relators, matched by the target images
    sggi = True
    for i in range(3):
        bound = _local_order(candidate, (i,), limits)
        if bound is None or bound != images[i].order() or bound != 2:
            sggi = False
    klein = target.image.subgroup([images[0], images[2]])
    bound = _local_order(candidate, (0, 2), limits)
    if bound is None or bound != klein.order() or images[0] * images[2] != images[2] * images[0]:
        sggi = False

    witness = None
    for pair in ((0, 1), (1, 2)):
        bound = _local_order(candidate, pair, limits)
        img = target.image.subgroup([images[pair[0]], images[pair[1]]])
        if bound is not None and bound == img.order():
            witness = pair
            break
    return QuotientVerdict(hom, sggi, witness)

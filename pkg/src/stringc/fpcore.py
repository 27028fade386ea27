"""Free-group words and finitely presented groups.

Generators are addressed by 0-based index; names only appear when a
presentation is parsed or printed.  A letter is a pair ``(index, sign)``
with ``sign`` in ``{+1, -1}``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

Letter = tuple[int, int]


def _reduce_letters(letters: Iterable[Letter]) -> tuple[Letter, ...]:
    out: list[Letter] = []
    for g, e in letters:
        if out and out[-1][0] == g and out[-1][1] == -e:
            out.pop()
        else:
            out.append((g, e))
    return tuple(out)


@dataclass(frozen=True)
class Word:
    """A word in the free group.

    The constructor stores letters as given; every operation that builds a
    new word (product, power, inverse, conjugate, commutator) returns it
    freely reduced.
    """

    letters: tuple[Letter, ...] = ()

    def __post_init__(self) -> None:
        letters = tuple((int(g), int(e)) for g, e in self.letters)
        for g, e in letters:
            if g < 0 or e not in (1, -1):
                raise ValueError(f"bad letter ({g}, {e})")
        object.__setattr__(self, "letters", letters)

    @classmethod
    def gen(cls, index: int, sign: int = 1) -> Word:
        return cls(((index, sign),))

    @classmethod
    def from_indices(cls, *indices: int) -> Word:
        """Positive word ``g_i1 g_i2 ...``; handy for products of involutions."""
        return cls(_reduce_letters((i, 1) for i in indices))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __mul__(self, other: Word) -> Word:
        return Word(_reduce_letters(self.letters + other.letters))

    def __pow__(self, e: int) -> Word:
        return word_power(self, e)

    def inverse(self) -> Word:
        return Word(tuple((g, -s) for g, s in reversed(self.letters)))

    def is_reduced(self) -> bool:
        return all(
            not (a[0] == b[0] and a[1] == -b[1])
            for a, b in zip(self.letters, self.letters[1:])
        )

    def max_generator(self) -> int:
        return max((g for g, _ in self.letters), default=-1)

    def exponent_sums(self, ngens: int) -> list[int]:
        sums = [0] * ngens
        for g, e in self.letters:
            sums[g] += e
        return sums


def free_reduce(w: Word) -> Word:
    return Word(_reduce_letters(w.letters))


def word_power(w: Word, e: int) -> Word:
    if e < 0:
        w, e = w.inverse(), -e
    w = free_reduce(w)
    if e == 0 or not w:
        return Word()
    # reduce as c^-1 u c with u cyclically reduced so the power stays reduced
    letters = w.letters
    k = 0
    while k < len(letters) - 1 - k and letters[k][0] == letters[-1 - k][0] \
            and letters[k][1] == -letters[-1 - k][1]:
        k += 1
    head, core, tail = letters[:k], letters[k:len(letters) - k], letters[len(letters) - k:]
    return Word(head + core * e + tail)


def word_conjugate(w: Word, c: Word) -> Word:
    """``c^-1 w c``."""
    return c.inverse() * w * c


def word_commutator(x: Word, y: Word) -> Word:
    """``[x, y] = x^-1 y^-1 x y``."""
    return Word(_reduce_letters(
        x.inverse().letters + y.inverse().letters + x.letters + y.letters))


@dataclass(frozen=True)
class Presentation:
    """Generator names plus relators.

    Relators are freely reduced on construction and empty ones dropped.
    """

    generator_names: tuple[str, ...]
    relators: tuple[Word, ...] = field(default=())

    def __post_init__(self) -> None:
        names = tuple(self.generator_names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate generator names in {names}")
        n = len(names)
        rels = []
        for r in self.relators:
            r = free_reduce(r)
            if r.max_generator() >= n:
                raise ValueError(f"relator uses generator {r.max_generator()} "
                                 f"but only {n} generators exist")
            if r:
                rels.append(r)
        object.__setattr__(self, "generator_names", names)
        object.__setattr__(self, "relators", tuple(rels))

    @property
    def ngens(self) -> int:
        return len(self.generator_names)

    def with_relators(self, extra: Iterable[Word]) -> Presentation:
        return Presentation(self.generator_names, self.relators + tuple(extra))

    def relabel(self, order: Sequence[int]) -> Presentation:
        """Presentation whose generator ``i`` is the old generator ``order[i]``."""
        if sorted(order) != list(range(self.ngens)):
            raise ValueError(f"{order} is not a permutation of the generators")
        new_index = {old: new for new, old in enumerate(order)}
        names = tuple(self.generator_names[i] for i in order)
        rels = tuple(Word(tuple((new_index[g], e) for g, e in r)) for r in self.relators)
        return Presentation(names, rels)


@dataclass(frozen=True)
class GeneratorMap:
    """Images of the source generators, one word per generator."""

    image_words: tuple[Word, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "image_words", tuple(self.image_words))

    @classmethod
    def identity(cls, ngens: int) -> GeneratorMap:
        return cls(tuple(Word.gen(i) for i in range(ngens)))

    def apply(self, w: Word) -> Word:
        if w.max_generator() >= len(self.image_words):
            raise ValueError("word uses a generator outside the map's domain")
        out: list[Letter] = []
        for g, e in w:
            img = self.image_words[g] if e == 1 else self.image_words[g].inverse()
            out.extend(img.letters)
        return Word(_reduce_letters(out))

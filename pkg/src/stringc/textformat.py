"""Plain-text presentation files.

::

    # comment
    gens: r0 r1 r2
    rel: r0^2
    rel: (r0 r1)^6
    rel: [(r0 r1)^4, r2]
    rel: ((r0 r2 r1)^4)^(r1)

Words are space-separated generator names.  Postfix ``^k`` raises to an
integer power, ``'`` inverts and ``^(c)`` conjugates by the word ``c``
(``c^-1 w c``); ``[a, b]`` is the commutator ``a^-1 b^-1 a b``.
"""

from __future__ import annotations

import re

from .fpcore import Presentation, Word, word_commutator, word_conjugate, word_power


class ParseError(ValueError):
    pass


_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<int>-?\d+)|(?P<sym>[()\[\],^']))")


def _tokenize(text: str) -> list[str]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos:].strip()[:1]!r} in {text!r}")
        tokens.append(m.group(m.lastgroup))
        pos = m.end()
    return tokens


class _WordParser:
    def __init__(self, text: str, names: dict[str, int]) -> None:
        self.tokens = _tokenize(text)
        self.pos = 0
        self.names = names
        self.text = text

    def _peek(self) -> str | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def _take(self, expected: str | None = None) -> str:
        tok = self._peek()
        if tok is None or (expected is not None and tok != expected):
            raise ParseError(f"expected {expected or 'token'} in {self.text!r}, got {tok!r}")
        self.pos += 1
        return tok

    def parse(self) -> Word:
        w = self._word()
        if self._peek() is not None:
            raise ParseError(f"trailing {self._peek()!r} in {self.text!r}")
        return w

    def _word(self) -> Word:
        w = Word()
        while self._peek() not in (None, ")", "]", ","):
            w = w * self._factor()
        return w

    def _atom(self) -> Word:
        tok = self._take()
        if tok == "(":
            w = self._word()
            self._take(")")
            return w
        if tok == "[":
            a = self._word()
            self._take(",")
            b = self._word()
            self._take("]")
            return word_commutator(a, b)
        if tok in self.names:
            return Word.gen(self.names[tok])
        if tok == "1":
            return Word()
        if re.fullmatch(r"[A-Za-z_]\w*", tok):
            raise ParseError(f"unknown generator {tok!r}")
        raise ParseError(f"unexpected {tok!r} in {self.text!r}")

    def _factor(self) -> Word:
        w = self._atom()
        while self._peek() in ("^", "'"):
            if self._take() == "'":
                w = w.inverse()
                continue
            nxt = self._peek()
            if nxt == "(":
                self._take("(")
                c = self._word()
                self._take(")")
                w = word_conjugate(w, c)
            elif nxt is not None and re.fullmatch(r"-?\d+", nxt):
                w = word_power(w, int(self._take()))
            else:
                raise ParseError(f"bad exponent {nxt!r} in {self.text!r}")
        return w


def parse_word(text: str, generator_names: tuple[str, ...] | list[str]) -> Word:
    return _WordParser(text, {n: i for i, n in enumerate(generator_names)}).parse()


def parse_presentation(text: str) -> Presentation:
    names: tuple[str, ...] | None = None
    raw_rels: list[str] = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, rest = line.partition(":")
        key = key.strip()
        if not sep or key not in ("gens", "rel"):
            raise ParseError(f"line {lineno}: expected 'gens:' or 'rel:'")
        if key == "gens":
            if names is not None:
                raise ParseError(f"line {lineno}: duplicate 'gens:' line")
            names = tuple(rest.split())
            for n in names:
                if not re.fullmatch(r"[A-Za-z_]\w*", n):
                    raise ParseError(f"line {lineno}: bad generator name {n!r}")
        else:
            if names is None:
                raise ParseError(f"line {lineno}: 'rel:' before 'gens:'")
            raw_rels.append(rest)
    if names is None:
        raise ParseError("missing 'gens:' line")
    try:
        rels = tuple(parse_word(r, names) for r in raw_rels)
        return Presentation(names, rels)
    except ValueError as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(str(exc)) from exc


def _letter(names: tuple[str, ...], g: int, e: int) -> str:
    return names[g] if e == 1 else names[g] + "'"


def _runs(letters: tuple[tuple[int, int], ...], names: tuple[str, ...]) -> str:
    parts = []
    i = 0
    while i < len(letters):
        j = i
        while j < len(letters) and letters[j] == letters[i]:
            j += 1
        g, e = letters[i]
        k = j - i
        if k == 1:
            parts.append(_letter(names, g, e))
        else:
            parts.append(f"{names[g]}^{k if e == 1 else -k}")
        i = j
    return " ".join(parts)


def format_word(w: Word, generator_names: tuple[str, ...] | list[str]) -> str:
    """Print a word, folding it as ``(u)^k`` when it is an exact power."""
    names = tuple(generator_names)
    letters = w.letters
    n = len(letters)
    if n == 0:
        return "1"
    for period in range(1, n // 2 + 1):
        if n % period == 0 and letters[:period] * (n // period) == letters:
            base = letters[:period]
            if period == 1:
                return _runs(letters, names)
            return f"({_runs(base, names)})^{n // period}"
    return _runs(letters, names)


def format_presentation(p: Presentation) -> str:
    lines = ["gens: " + " ".join(p.generator_names)]
    lines += ["rel: " + format_word(r, p.generator_names) for r in p.relators]
    return "\n".join(lines) + "\n"

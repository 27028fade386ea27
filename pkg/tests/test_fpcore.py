import pytest
from hypothesis import given
from hypothesis import strategies as st

from stringc.fpcore import (
    GeneratorMap,
    Presentation,
    Word,
    free_reduce,
    word_commutator,
    word_conjugate,
    word_power,
)

letters = st.tuples(st.integers(0, 2), st.sampled_from((1, -1)))
raw_words = st.lists(letters, max_size=12).map(lambda ls: Word(tuple(ls)))


def test_constructor_keeps_letters_and_products_reduce():
    w = Word(((0, 1), (0, -1)))
    assert len(w) == 2 and not w.is_reduced()
    assert free_reduce(w) == Word()
    assert Word.gen(1) * Word.gen(1, -1) == Word()


def test_bad_letters_rejected():
    with pytest.raises(ValueError):
        Word(((0, 2),))
    with pytest.raises(ValueError):
        Word(((-1, 1),))


def test_power_of_conjugate_stays_short():
    c = Word.gen(2)
    w = word_conjugate(Word.from_indices(0, 1), c)
    assert len(w ** 5) == 2 + 2 * 5
    assert w ** 0 == Word()
    assert w ** -1 == w.inverse()


def test_commutator_and_conjugate_conventions():
    x, y = Word.gen(0), Word.gen(1)
    assert word_commutator(x, y).letters == ((0, -1), (1, -1), (0, 1), (1, 1))
    assert word_conjugate(x, y).letters == ((1, -1), (0, 1), (1, 1))


def test_exponent_sums():
    w = Word.from_indices(0, 1, 0) * Word.gen(2, -1)
    assert w.exponent_sums(3) == [2, 1, -1]
    assert w.max_generator() == 2


def test_presentation_reduces_and_drops_trivial_relators():
    p = Presentation(("a", "b"), (Word(((0, 1), (0, -1))), Word(((1, 1), (1, 1)))))
    assert p.relators == (Word(((1, 1), (1, 1))),)
    assert p.ngens == 2


def test_presentation_validation():
    with pytest.raises(ValueError):
        Presentation(("a", "a"), ())
    with pytest.raises(ValueError):
        Presentation(("a",), (Word.gen(1),))


def test_relabel_reverses_string_order():
    p = Presentation(("a", "b", "c"), (Word.from_indices(0, 1) ** 3,))
    q = p.relabel((2, 1, 0))
    assert q.generator_names == ("c", "b", "a")
    assert q.relators == (Word.from_indices(2, 1) ** 3,)


def test_generator_map():
    m = GeneratorMap((Word.gen(1), Word.from_indices(0, 0)))
    assert m.apply(Word.from_indices(0, 1)) == Word.from_indices(1, 0, 0)
    assert GeneratorMap.identity(2).apply(Word.gen(1, -1)) == Word.gen(1, -1)


@given(raw_words)
def test_free_reduce_idempotent(w):
    r = free_reduce(w)
    assert r.is_reduced()
    assert free_reduce(r) == r


@given(raw_words, raw_words)
def test_product_with_inverse_cancels(u, v):
    assert (u * v) * (u * v).inverse() == Word()
    assert (u * v).inverse() == v.inverse() * u.inverse()


@given(raw_words, st.integers(-4, 4), st.integers(-4, 4))
def test_power_additivity(w, a, b):
    assert word_power(w, a) * word_power(w, b) == word_power(w, a + b)


@given(raw_words, st.integers(-5, 5))
def test_power_is_repeated_product(w, e):
    expected = Word()
    base = w if e >= 0 else w.inverse()
    for _ in range(abs(e)):
        expected = expected * base
    assert word_power(w, e) == expected


@given(raw_words, raw_words)
def test_commutator_inverse_swaps(x, y):
    assert word_commutator(x, y).inverse() == word_commutator(y, x)

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from stringc.snf import IntMatrix, abelian_invariants, smith_normal_form


@st.composite
def small_matrices(draw):
    rows = draw(st.integers(1, 4))
    cols = draw(st.integers(1, 4))
    data = [[draw(st.integers(-9, 9)) for _ in range(cols)] for _ in range(rows)]
    return data, cols


def test_known_forms():
    assert smith_normal_form(IntMatrix.from_dense([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])) == [2, 6, 12]
    assert smith_normal_form(IntMatrix.from_dense([[2, 0], [0, 3]])) == [1, 6]
    assert smith_normal_form(IntMatrix.from_dense([[0, 0, 0]])) == [0, 0, 0]


def test_cokernel_invariants():
    # Z^3 / <(2, 0, 0), (0, 3, 0)> = Z/6 x Z
    m = IntMatrix.from_dense([[2, 0, 0], [0, 3, 0]])
    assert abelian_invariants(m) == ((6,), 1)
    assert abelian_invariants(IntMatrix.from_sparse_rows([], 3)) == ((), 3)


def test_matrix_conversions():
    m = IntMatrix.from_dense([[1, 0, 2], [0, 3, 0]])
    assert m.entries == [1, 0, 2, 0, 3, 0]
    assert m.transpose().to_dense() == [[1, 0], [0, 3], [2, 0]]
    assert m.sparse_rows == ({0: 1, 2: 2}, {1: 3})
    with pytest.raises(ValueError):
        IntMatrix.from_dense([[1, 2], [3]])
    with pytest.raises(ValueError):
        IntMatrix.from_sparse_rows([{4: 1}], 3)


@given(small_matrices())
def test_matches_determinantal_divisors(data):
    dense, cols = data
    assert smith_normal_form(IntMatrix.from_dense(dense)) == oracles.invariant_factors_by_minors(dense, cols)


@given(small_matrices(), st.randoms(use_true_random=False))
def test_invariant_under_row_and_column_permutation(data, rnd):
    dense, cols = data
    rows = [list(r) for r in dense]
    rnd.shuffle(rows)
    perm = list(range(cols))
    rnd.shuffle(perm)
    shuffled = [[r[j] for j in perm] for r in rows]
    assert smith_normal_form(IntMatrix.from_dense(shuffled)) == smith_normal_form(IntMatrix.from_dense(dense))


@given(small_matrices())
def test_nonzero_part_invariant_under_transpose(data):
    dense, _ = data
    m = IntMatrix.from_dense(dense)
    a = [x for x in smith_normal_form(m) if x]
    b = [x for x in smith_normal_form(m.transpose()) if x]
    assert a == b


@given(small_matrices())
def test_divisibility_chain(data):
    dense, _ = data
    d = [x for x in smith_normal_form(IntMatrix.from_dense(dense)) if x]
    assert all(b % a == 0 for a, b in zip(d, d[1:]))


def test_large_sparse_unit_elimination():
    # a long chain x_i - x_{i+1} = 0 with 4 x_0 = 0 and one free column
    rnd = random.Random(5)
    n = 400
    rows = [{i: 1, i + 1: -1} for i in range(n - 1)] + [{0: 4}]
    rnd.shuffle(rows)
    m = IntMatrix.from_sparse_rows(rows, n + 1)
    assert abelian_invariants(m) == ((4,), 1)

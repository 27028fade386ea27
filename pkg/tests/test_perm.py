import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from stringc.coset import coset_action, enumerate_cosets
from stringc.families import build_degenerate, build_type44
from stringc.fpcore import Word
from stringc.perm import (
    CapExceeded,
    Permutation,
    PermutationGroup,
    closure,
    commutator,
    derived_series,
    element_order,
    evaluate,
    is_solvable,
    normal_closure,
    subgroup_elements,
)


def perm_lists(degree):
    return st.permutations(list(range(degree)))


@st.composite
def generating_sets(draw, max_degree=7):
    degree = draw(st.integers(1, max_degree))
    k = draw(st.integers(1, 3))
    return degree, [tuple(draw(perm_lists(degree))) for _ in range(k)]


def test_composition_is_left_to_right():
    a = Permutation.from_cycles(3, (0, 1))
    b = Permutation.from_cycles(3, (1, 2))
    # 0 -a-> 1 -b-> 2
    assert (a * b)(0) == 2
    assert (a * b).as_list() == list(oracles.compose(tuple(a.as_list()), tuple(b.as_list())))


def test_rejects_non_bijection():
    with pytest.raises(ValueError):
        Permutation([0, 0, 1])


def test_cycles_order_and_powers():
    p = Permutation.from_cycles(6, (0, 1, 2), (3, 4))
    assert p.order() == 6
    assert p ** 6 == Permutation.identity(6)
    assert p ** -1 == p.inverse()
    assert sorted(p.cycles()) == [(0, 1, 2), (3, 4)]


def test_images_are_read_only():
    p = Permutation([1, 0])
    with pytest.raises(ValueError):
        p.images[0] = 1


@given(generating_sets())
def test_stabilizer_chain_order_matches_bfs(data):
    degree, gens = data
    g = PermutationGroup([Permutation(x) for x in gens], degree)
    assert g.order() == len(oracles.bfs_elements(gens, degree))


@given(generating_sets(6), perm_lists(6))
def test_membership_matches_bfs(data, candidate):
    degree, gens = data
    if len(candidate) != degree:
        candidate = list(range(degree))
    elements = oracles.bfs_elements(gens, degree)
    g = PermutationGroup([Permutation(x) for x in gens], degree)
    assert g.contains(Permutation(candidate)) == (tuple(candidate) in elements)


@given(generating_sets(5))
def test_derived_series_matches_brute_force(data):
    degree, gens = data
    g = PermutationGroup([Permutation(x) for x in gens], degree)
    ours = [h.order() for h in derived_series(g)]
    assert ours == oracles.brute_derived_series(oracles.bfs_elements(gens, degree))


@given(perm_lists(6), perm_lists(6), perm_lists(6))
def test_commutator_identities(a, b, c):
    a, b, c = Permutation(a), Permutation(b), Permutation(c)
    assert commutator(a, b).inverse() == commutator(b, a)
    # [ab, c] = [a, c]^b [b, c]
    assert commutator(a * b, c) == b.inverse() * commutator(a, c) * b * commutator(b, c)


def test_symmetric_and_alternating():
    s5 = PermutationGroup([Permutation.from_cycles(5, (0, 1)),
                           Permutation.from_cycles(5, (0, 1, 2, 3, 4))])
    assert s5.order() == 120
    assert [h.order() for h in derived_series(s5)] == [120, 60]
    assert not is_solvable(s5)


def _regular_image(p):
    t = enumerate_cosets(p)
    return coset_action(t), t.n_live


@pytest.mark.parametrize("pres", [build_degenerate(7, 1), build_type44(3, 1), build_type44(2, 2)])
def test_semiregular_chain_on_regular_images(pres):
    perms, n = _regular_image(pres)
    fast = PermutationGroup(perms, n, semiregular=True)
    general = PermutationGroup(perms, n)
    bfs = oracles.bfs_elements([tuple(p.as_list()) for p in perms], n)
    assert fast.order() == general.order() == len(bfs) == n
    sub = [perms[0], perms[1]]
    assert fast.subgroup(sub).order() == general.subgroup(sub).order()
    sub_elems = closure(sub, n)
    for x in list(bfs)[:40]:
        assert fast.subgroup(sub).contains(Permutation(x)) == (Permutation(x) in sub_elems)


def test_subgroup_elements_and_cap():
    perms, n = _regular_image(build_degenerate(5, 1))
    g = PermutationGroup(perms, n, semiregular=True)
    assert len(subgroup_elements(g, [Word.gen(0), Word.gen(1)], 100)) == 10
    with pytest.raises(CapExceeded):
        subgroup_elements(g, [Word.gen(0), Word.gen(1)], 5)


def test_evaluate_and_element_order():
    perms, n = _regular_image(build_degenerate(6, 1))
    g = PermutationGroup(perms, n, semiregular=True)
    assert element_order(g, Word.from_indices(0, 1)) == 6
    assert evaluate(Word.from_indices(0, 0), perms, n).is_identity()


def test_normal_closure_of_rotation_in_dihedral():
    r = Permutation.from_cycles(6, (0, 1, 2, 3, 4, 5))
    s = Permutation([0, 5, 4, 3, 2, 1])
    d = PermutationGroup([r, s])
    assert normal_closure(d, [r ** 2]).order() == 3
    assert normal_closure(d, [s]).order() == 6


def test_identity_group():
    g = PermutationGroup([Permutation.identity(4)], 4)
    assert g.order() == 1
    assert derived_series(g)[-1].order() == 1
    assert np.array_equal(g.identity().images, np.arange(4))

import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from affrkl.errors import NotSpherical
from affrkl.rootdata import simply_connected_datum
from affrkl.weyl import length_and_word, min_coset_rep, parabolic_data, weyl_group
from oracles import subword_elements

A2 = simply_connected_datum([[2, -1], [-1, 2]])
B2 = simply_connected_datum([[2, -1], [-2, 2]])
AFFINE_A1 = simply_connected_datum([[2, -2], [-2, 2]])
HYPERBOLIC = simply_connected_datum([[2, -3], [-2, 2]])
A3 = simply_connected_datum([[2, -1, 0], [-1, 2, -1], [0, -1, 2]])

words = st.lists(st.integers(0, 1), max_size=10)


def test_length_and_word_examples():
    group = weyl_group(A2)
    assert length_and_word(group.e) == (0, ())
    assert length_and_word(group.s(0)) == (1, (0,))
    w = group.from_word([0, 1, 0])
    assert w.length == 3
    inversions = [beta for beta in A2.positive_roots(5) if not w.inverse().root_image_positive(beta)]
    assert len(inversions) == 3


@pytest.mark.parametrize("datum, order", [(A2, 6), (B2, 8), (A3, 24)])
def test_finite_group_orders(datum, order):
    assert len(weyl_group(datum).elements_up_to_length(20)) == order


@pytest.mark.parametrize("datum", [A2, B2, A3])
def test_length_equals_inversion_count(datum):
    group = weyl_group(datum)
    positive = datum.positive_roots(10)
    for w in group.elements_up_to_length(20):
        inversions = [beta for beta in positive if not w.root_image_positive(beta)]
        assert len(inversions) == w.length


@given(word=words)
def test_reduced_word_reproduces_element(word):
    group = weyl_group(HYPERBOLIC)
    w = group.from_word(word)
    assert group.from_word(w.word) == w
    assert w.length <= len(word)
    assert (len(word) - w.length) % 2 == 0


@given(left=words, right=words)
def test_inverse_and_products(left, right):
    group = weyl_group(AFFINE_A1)
    u, v = group.from_word(left), group.from_word(right)
    assert (u * v).inverse() == v.inverse() * u.inverse()
    assert (u * u.inverse()).is_identity
    assert abs((u * v).length - u.length) <= v.length


def test_bruhat_examples():
    group = weyl_group(A2)
    s1, s2 = group.s(0), group.s(1)
    top = group.from_word([0, 1, 0])
    assert group.bruhat_leq(group.e, top)
    assert not group.bruhat_leq(s1, s2)
    assert group.bruhat_leq(s1, top)
    assert not group.bruhat_leq(top, s1)


@pytest.mark.parametrize("datum, max_length", [(A2, 3), (AFFINE_A1, 5), (HYPERBOLIC, 5)])
def test_bruhat_matches_subword_criterion(datum, max_length):
    group = weyl_group(datum)
    elements = group.elements_up_to_length(max_length)
    for w in elements:
        below = subword_elements(w)
        for u in elements:
            assert group.bruhat_leq(u, w) == (u in below)


@pytest.mark.parametrize(
    "datum, lam, J, longest",
    [
        (A2, (1, 1), (), ()),
        (A2, (1, 2), (0,), (0,)),
        (A3, (1, 2, 1), (0, 2), (0, 2)),
        (A3, (0, 0, 0), (0, 1, 2), None),
    ],
)
def test_parabolic_data(datum, lam, J, longest):
    data = parabolic_data(datum, lam)
    assert data.J == J and data.is_spherical
    if longest is not None:
        assert data.w_long == weyl_group(datum).from_word(longest)
    else:
        assert data.w_long.length == 6


def test_parabolic_data_of_affine_origin_is_not_spherical():
    with pytest.raises(NotSpherical) as info:
        parabolic_data(AFFINE_A1, (0, 0, 0))
    assert info.value.J == (0, 1)


@pytest.mark.parametrize("datum, J", [(A3, (0, 1)), (A3, (0, 2)), (A3, (0, 1, 2)), (B2, (0, 1))])
def test_longest_element_permutes_simple_reflections(datum, J):
    group = weyl_group(datum)
    w_long = group.longest_element(J)
    gens = {group.s(j) for j in J}
    for j in J:
        assert w_long * group.s(j) * w_long in gens
    for j in J:
        assert not w_long.simple_image_positive(j)


@given(word=st.lists(st.integers(0, 1), max_size=8))
def test_min_coset_rep_is_minimal(word):
    lam = (-3, -4)
    group = weyl_group(HYPERBOLIC)
    w = group.from_word(word)
    v, dominant = min_coset_rep(HYPERBOLIC, w.act_y(lam))
    assert dominant == lam
    assert v.act_y(lam) == w.act_y(lam)
    assert v == w  # lam is regular, so the stabilizer is trivial


def test_elements_up_to_length_counts_dihedral_layers():
    group = weyl_group(AFFINE_A1)
    counts = [0] * 7
    for w in group.elements_up_to_length(6):
        counts[w.length] += 1
    assert counts == [1] + [2] * 6
    hyper = [w.length for w in weyl_group(HYPERBOLIC).elements_up_to_length(4)]
    assert sorted(hyper) == [0] + list(itertools.chain.from_iterable([k, k] for k in range(1, 5)))

import pytest
from hypothesis import given
from hypothesis import strategies as st

from affrkl.errors import InvalidGCM
from affrkl.rootdata import (
    datum_from_json,
    dominantize,
    in_tits_cone,
    is_finite_type,
    pair,
    simply_connected_datum,
)
from affrkl.weyl import weyl_group
from oracles import orbit_positive_roots

A1 = [[2]]
A2 = [[2, -1], [-1, 2]]
AFFINE_A1 = [[2, -2], [-2, 2]]
HYPERBOLIC = [[2, -3], [-2, 2]]


@pytest.mark.parametrize(
    "gcm, rank, roots",
    [
        (A1, 1, ((2,),)),
        (A2, 2, ((2, -1), (-1, 2))),
        (AFFINE_A1, 3, None),
        (HYPERBOLIC, 2, ((2, -2), (-3, 2))),
    ],
)
def test_simply_connected_realization(gcm, rank, roots):
    datum = simply_connected_datum(gcm)
    assert datum.rank == rank
    if roots is not None:
        assert datum.simple_roots == roots
    for i in range(datum.size):
        assert datum.simple_coroots[i] == tuple(int(k == i) for k in range(rank))
        for j in range(datum.size):
            assert pair(datum.simple_coroots[i], datum.simple_roots[j]) == gcm[i][j]


@pytest.mark.parametrize(
    "gcm",
    [
        [[2, -1], [0, 2]],
        [[3]],
        [[2, 1], [1, 2]],
        [[2, -1], [-1]],
    ],
)
def test_invalid_gcm_rejected(gcm):
    with pytest.raises(InvalidGCM):
        simply_connected_datum(gcm)


def test_explicit_realization_checks_pairing():
    with pytest.raises(InvalidGCM):
        datum_from_json({"gcm": [[2]], "rank": 1, "simple_roots": [[1]], "simple_coroots": [[1]]})
    datum = datum_from_json({"gcm": [[2]], "rank": 1, "simple_roots": [[1]], "simple_coroots": [[2]]})
    assert datum.simple_roots == ((1,),)


@pytest.mark.parametrize(
    "gcm, height, expected",
    [
        (A1, 5, 1),
        (A2, 10, 3),
        (AFFINE_A1, 5, 6),
    ],
)
def test_positive_root_counts(gcm, height, expected):
    datum = simply_connected_datum(gcm)
    assert len(datum.positive_roots(height)) == expected
    assert len(datum.real_roots(height)) == 2 * expected


@pytest.mark.parametrize("gcm", [A2, AFFINE_A1, HYPERBOLIC, [[2, -1, 0], [-1, 2, -1], [0, -1, 2]]])
@pytest.mark.parametrize("height", [3, 7])
def test_roots_match_orbit_search(gcm, height):
    datum = simply_connected_datum(gcm)
    ours = {beta.coeffs for beta in datum.positive_roots(height)}
    assert ours == orbit_positive_roots(gcm, height)


def test_root_order_is_canonical():
    roots = simply_connected_datum(HYPERBOLIC).positive_roots(9)
    heights = [beta.height for beta in roots]
    assert heights == sorted(heights)
    assert [beta.sort_key() for beta in roots] == sorted(beta.sort_key() for beta in roots)


@pytest.mark.parametrize("gcm", [A2, HYPERBOLIC])
def test_roots_closed_under_simple_reflections(gcm):
    datum = simply_connected_datum(gcm)
    height = 8
    coeffs = {beta.coeffs for beta in datum.real_roots(height)}
    for beta in datum.real_roots(height):
        for i in range(datum.size):
            image = datum.simple_reflect_root(i, beta)
            if abs(image.height) <= height:
                assert image.coeffs in coeffs
        assert (-beta).coeffs in coeffs


def test_finite_type_recognition():
    assert is_finite_type(((2,),))
    assert is_finite_type(((2, -1), (-1, 2)))
    assert is_finite_type(((2, -1), (-3, 2)))
    assert not is_finite_type(((2, -2), (-2, 2)))
    assert not is_finite_type(((2, -3), (-2, 2)))
    assert is_finite_type(())


def test_tits_cone_examples():
    datum = simply_connected_datum(A2)
    res = in_tits_cone(datum, (1, 1))
    assert res.membership == "interior" and res.word == () and res.J == ()
    s1 = weyl_group(datum).s(0)
    res = in_tits_cone(datum, s1.act_y((1, 1)))
    assert res.dominant == (1, 1) and res.word == (0,)
    affine = simply_connected_datum(AFFINE_A1)
    assert in_tits_cone(affine, (1, -1, 0)).membership == "outside"
    assert in_tits_cone(affine, (0, 0, 1)).membership == "interior"
    assert in_tits_cone(affine, (1, 1, 0)).membership == "dominant_orbit"


@given(
    word=st.lists(st.integers(0, 1), max_size=8),
    lam=st.tuples(st.integers(-3, -1), st.integers(-3, -1)),
)
def test_dominantize_recovers_orbit_representative(word, lam):
    datum = simply_connected_datum(HYPERBOLIC)
    if any(pair(lam, alpha) < 0 for alpha in datum.simple_roots):
        return
    group = weyl_group(datum)
    w = group.from_word(word)
    res = dominantize(datum, w.act_y(lam))
    assert res.dominant == lam
    v = group.from_word(res.word)
    assert v.act_y(lam) == w.act_y(lam)
    assert v.length <= w.length


@given(word=st.lists(st.integers(0, 1), max_size=7), index=st.integers(0, 30))
def test_coroot_transport_commutes_with_weyl_action(word, index):
    datum = simply_connected_datum(HYPERBOLIC)
    roots = datum.real_roots(7)
    beta = roots[index % len(roots)]
    w = weyl_group(datum).from_word(word)
    image = w.act_root(beta)
    assert image.coroot_coords == w.act_y(beta.coroot_coords)
    assert pair(image.coroot_coords, image.coords) == 2

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from affrkl.affine_weyl import WPlusElt, covers_of
from affrkl.apartment import Alcove
from affrkl.enumeration import SearchBudget, enumerate_paths
from affrkl.errors import NotSpherical, SignMismatch
from affrkl.paths import open_segment
from affrkl.polynomial import ONE, X_MINUS_ONE, ZERO, IntPoly
from affrkl.rootdata import simply_connected_datum
from affrkl.rpoly import (
    GalleryConfig,
    affine_R,
    classical_R,
    crossing_exponent,
    folded_galleries_R,
    local_R,
    min_coset_reps,
    path_R,
    spherical_R,
)
from affrkl.weyl import weyl_group
from oracles import hecke_R

SL2 = simply_connected_datum([[2]])
A2 = simply_connected_datum([[2, -1], [-1, 2]])
B2 = simply_connected_datum([[2, -1], [-2, 2]])
AFFINE_A1 = simply_connected_datum([[2, -2], [-2, 2]])
HYPERBOLIC = simply_connected_datum([[2, -3], [-2, 2]])

poly_coeffs = st.lists(st.integers(-5, 5), max_size=5)


# -- IntPoly -----------------------------------------------------------------------------


@given(a=poly_coeffs, b=poly_coeffs, c=poly_coeffs, q=st.integers(-3, 5))
def test_polynomial_ring_laws(a, b, c, q):
    pa, pb, pc = IntPoly(a), IntPoly(b), IntPoly(c)
    assert pa * (pb + pc) == pa * pb + pa * pc
    assert (pa * pb)(q) == pa(q) * pb(q)
    assert (pa - pa).is_zero()
    assert pa * ONE == pa and pa + ZERO == pa


def test_polynomial_printing():
    assert (X_MINUS_ONE**2).pretty() == "X^2 - 2*X + 1"
    assert ZERO.pretty() == "0" and IntPoly((0, 0, 0)) == ZERO
    assert IntPoly((1, 2, 0)).coeffs == (1, 2)


# -- classical recursion -------------------------------------------------------------------


def test_classical_examples():
    group = weyl_group(A2)
    e, s1, s2 = group.e, group.s(0), group.s(1)
    assert classical_R(e, e) == ONE
    assert classical_R(e, s1) == X_MINUS_ONE
    assert classical_R(e, s1 * s2) == X_MINUS_ONE**2
    assert classical_R(s1, s2) == ZERO
    # (X - 1)^2 at q = 2 counts chambers opposite in a rank-two building of thickness 3
    assert classical_R(e, s1 * s2)(2) == 1


@pytest.mark.parametrize("datum, max_length", [(A2, 3), (B2, 4), (AFFINE_A1, 3), (HYPERBOLIC, 3)])
def test_classical_matches_hecke_algebra(datum, max_length):
    group = weyl_group(datum)
    elements = group.elements_up_to_length(max_length)
    for w in elements:
        for u in elements:
            assert classical_R(u, w) == hecke_R(u, w)


# -- folded galleries ---------------------------------------------------------------------


def config(datum, base, minus, plus, w, v):
    return GalleryConfig(base, Alcove(base, 1, minus), Alcove(base, -1, plus), w, v)


def test_gallery_examples():
    group = weyl_group(A2)
    e, s1 = group.e, group.s(0)
    origin = (0, 0)
    assert folded_galleries_R(config(A2, origin, e, e, e, e)) == ONE
    assert folded_galleries_R(config(A2, origin, e, s1, e, e)) == ZERO
    # one thick step that moves away from the reference: cross with weight 1 or fold with X - 1
    assert folded_galleries_R(config(A2, origin, e, e, s1, s1)) == ONE
    assert folded_galleries_R(config(A2, origin, e, e, s1, e)) == X_MINUS_ONE
    with pytest.raises(SignMismatch):
        GalleryConfig(origin, Alcove(origin, 1, e), Alcove(origin, 1, e), e, e)


def test_thin_panels_forbid_folds():
    group = weyl_group(SL2)
    base = (Fraction(1, 4),)
    e, s = group.e, group.s(0)
    assert folded_galleries_R(config(SL2, base, e, e, s, e)) == ZERO
    assert folded_galleries_R(config(SL2, base, e, e, s, s)) == ONE


@pytest.mark.parametrize("datum", [A2, AFFINE_A1])
def test_opposite_all_thick_galleries_are_classical(datum):
    group = weyl_group(datum)
    origin = (0,) * datum.rank
    elements = group.elements_up_to_length(6)
    for w in elements:
        for v in elements:
            if group.bruhat_leq(v, w):
                assert folded_galleries_R(config(datum, origin, group.e, group.e, w, v)) == classical_R(v, w)


def reduced_words(w):
    """All reduced words of ``w``, by peeling right descents."""
    if w.length == 0:
        return [()]
    group = w.group
    out = []
    for i in range(group.datum.size):
        if w.is_right_descent(i):
            out.extend(word + (i,) for word in reduced_words(w * group.s(i)))
    return out


@pytest.mark.parametrize("datum", [A2, AFFINE_A1, HYPERBOLIC])
def test_reduced_word_independence(datum):
    group = weyl_group(datum)
    rng = random.Random(7)
    elements = group.elements_up_to_length(6)
    base = tuple(Fraction(rng.randint(-3, 3), rng.choice([1, 2])) for _ in range(datum.rank))
    for w in elements:
        minus, plus = rng.choice(elements), rng.choice(elements)
        for v in elements[:12]:
            cfg = config(datum, base, minus, plus, w, v)
            values = {folded_galleries_R(cfg, word) for word in reduced_words(w)}
            assert len(values) == 1


@settings(max_examples=60)
@given(seed=st.integers(0, 10**6))
def test_gallery_sum_rule_and_positivity(seed):
    rng = random.Random(seed)
    datum = rng.choice([A2, AFFINE_A1, HYPERBOLIC])
    group = weyl_group(datum)
    elements = group.elements_up_to_length(7)
    w, minus, plus = rng.choice(elements), rng.choice(elements), rng.choice(elements)
    base = tuple(Fraction(rng.randint(-4, 4), rng.choice([1, 1, 2, 3])) for _ in range(datum.rank))
    reachable = {plus}
    for i in w.word:
        reachable |= {u * group.s(i) for u in reachable}
    total = ZERO
    for u in reachable:
        r = folded_galleries_R(config(datum, base, minus, plus, w, minus.inverse() * u))
        assert r.is_zero() or r.degree <= w.length
        assert all(r(q) >= 0 for q in (2, 3, 5))
        total = total + r
    assert total == IntPoly.monomial(crossing_exponent(config(datum, base, minus, plus, w, group.e)))


# -- path and affine polynomials ----------------------------------------------------------


@pytest.mark.parametrize("lam, word", [((1, 1), []), ((2, 0), [1]), ((1, 2), [0, 1])])
def test_segment_local_factors_are_one(lam, word):
    path = open_segment(WPlusElt.from_word(A2, lam, word))
    assert local_R(path, 0) == ONE and local_R(path, 1) == ONE
    assert path_R(path, 6) == ONE


def test_identity_and_cover_values():
    x = WPlusElt.from_word(A2, (1, 1), [0])
    assert affine_R(x, x).poly == ONE
    for y, _ in covers_of(x, 6):
        assert affine_R(x, y).poly == X_MINUS_ONE


def test_zero_level_cover_has_a_vanishing_end_fold_variant():
    x = WPlusElt.from_word(A2, (1, 2), [0])
    y = WPlusElt.from_word(A2, (1, 2), [])
    result = affine_R(x, y)
    assert result.poly == X_MINUS_ONE
    by_time = {path.folds[0].t: path_R(path, 6) for path in result.paths}
    assert by_time == {0: X_MINUS_ONE, 1: ZERO}


def test_interior_folds_give_factor_x_minus_one():
    x = WPlusElt.from_word(A2, (2, 1), [0])
    for path in enumerate_paths(x, None, SearchBudget(6, 2)).paths:
        if any(0 < f.t < 1 for f in path.folds):
            r = path_R(path, 6)
            assert r.is_zero() or r(1) == 0


def test_non_spherical_type_is_rejected():
    x = WPlusElt.from_word(AFFINE_A1, (1, 1, 0), [])
    with pytest.raises(NotSpherical):
        affine_R(x, x)


def test_result_serializes():
    x = WPlusElt.from_word(SL2, (1,), [])
    report = affine_R(x, x).to_json()
    assert report["R"] == [1] and report["paths"] == 1 and report["complete"] is None


# -- spherical aggregation ----------------------------------------------------------------


def test_min_coset_reps():
    reps, exhausted = min_coset_reps(A2, (1, 1), 5)
    assert exhausted and len(reps) == 6
    reps, exhausted = min_coset_reps(A2, (1, 2), 5)
    assert exhausted and len(reps) == 3
    reps, exhausted = min_coset_reps(HYPERBOLIC, (1, 1), 3)
    assert not exhausted


# frozen values; the oracle tests recompute each term from the affine Coxeter group
SPHERICAL_VALUES = [
    ((1, 1), (1, 1), (1,)),
    ((1, 1), (0, 0), (-1, -1, 0, 1, 1)),
    ((1, 1), (5, 5), ()),
]


@pytest.mark.parametrize("lam, mu, coeffs", SPHERICAL_VALUES)
def test_spherical_values(lam, mu, coeffs):
    result = spherical_R(lam, mu, A2)
    assert result.complete
    assert result.poly == IntPoly(coeffs)


def test_spherical_terms_are_cover_sums():
    result = spherical_R((1, 1), (0, 0), A2)
    assert result.poly(1) == 0
    for _, _, r in result.terms:
        assert r(1) == 0


def test_spherical_rejects_non_dominant():
    with pytest.raises(ValueError):
        spherical_R((1, -1), (0, 0), A2)

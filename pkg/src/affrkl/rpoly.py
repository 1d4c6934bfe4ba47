"""Local and global R-polynomials.

Local factors count centrifugally folded galleries in the tangent twin
apartment at a point of a path.  Alcoves at a fixed point and of a fixed sign
are identified with their Weyl directions, so a gallery is a walk in the
Weyl group and the count is a dynamic program over its states.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .affine_weyl import WPlusElt, require_spherical
from .apartment import Alcove, anti_dominant_chamber_dir, is_integral, to_point
from .enumeration import SearchBudget, enumerate_paths, event_times, map_deterministic
from .errors import SignMismatch
from .paths import OpenPath, segment_data
from .polynomial import ONE, X, X_MINUS_ONE, ZERO, IntPoly
from .rootdata import RootDatum, pair
from .weyl import WeylElt, weyl_group

__all__ = [
    "IntPoly",
    "GalleryConfig",
    "LocalData",
    "folded_galleries_R",
    "local_data",
    "local_R",
    "path_R",
    "affine_R",
    "spherical_R",
    "classical_R",
]


@dataclass(frozen=True)
class GalleryConfig:
    """Galleries of type a reduced word of ``w`` from ``c_plus``, ending at codistance ``v`` from ``c_minus``."""

    base_point: tuple
    c_minus: Alcove
    c_plus: Alcove
    w: WeylElt
    v: WeylElt

    def __post_init__(self):
        if self.c_minus.sign == self.c_plus.sign:
            raise SignMismatch("the two reference alcoves must have opposite signs")


def folded_galleries_R(config: GalleryConfig, word: Sequence[int] | None = None) -> IntPoly:
    """Sum of ``X^l (X-1)^r`` over centrifugally folded galleries of the configured type.

    A step of type ``i`` from the alcove of direction ``u`` either crosses to
    ``u s_i`` or, when the fold pushes away from ``c_minus`` and the panel is
    thick, stays at ``u``.  Crossings that lower the codistance to
    ``c_minus`` through a thick panel contribute ``X``; every fold contributes
    ``X - 1``.
    """
    group = weyl_group(config.c_plus.dir.group.datum)
    datum = group.datum
    point = to_point(config.base_point)
    ref_inv = config.c_minus.dir.inverse()
    word = config.w.word if word is None else tuple(word)
    states: dict[WeylElt, IntPoly] = {config.c_plus.dir: ONE}
    for i in word:
        step: dict[WeylElt, IntPoly] = {}
        for u, poly in states.items():
            codist = ref_inv * u
            lowers = not codist.simple_image_positive(i)
            thick = is_integral(pair(point, u.act_x(datum.simple_roots[i])))
            crossed = u * group.s(i)
            weight = X if (thick and lowers) else ONE
            step[crossed] = step.get(crossed, ZERO) + poly * weight
            if thick and not lowers:
                step[u] = step.get(u, ZERO) + poly * X_MINUS_ONE
        states = {u: q for u, q in step.items() if not q.is_zero()}
    return states.get(config.c_minus.dir * config.v, ZERO)


def crossing_exponent(config: GalleryConfig, word: Sequence[int] | None = None) -> int:
    """Number of thick panels crossed by the unfolded gallery of the configured type."""
    group = weyl_group(config.c_plus.dir.group.datum)
    point = to_point(config.base_point)
    word = config.w.word if word is None else tuple(word)
    u = config.c_plus.dir
    count = 0
    for i in word:
        if is_integral(pair(point, u.act_x(group.datum.simple_roots[i]))):
            count += 1
        u = u * group.s(i)
    return count


# -- local factors along a path ------------------------------------------------------


@dataclass(frozen=True)
class LocalData:
    t: Fraction
    w_inf: WeylElt
    w_minus: WeylElt
    config: GalleryConfig


def local_data(p: OpenPath, t) -> LocalData:
    """The gallery configuration whose count is the local factor of ``p`` at time ``t``."""
    t = Fraction(t)
    seg = segment_data(p.x)
    point = p.point(t)
    v_pt = anti_dominant_chamber_dir(p.datum, point)
    c_inf = Alcove(point, -1, v_pt)
    if t < 1:
        d_plus = p.d_plus(t)
        w_inf = v_pt.inverse() * d_plus.dir
        if t == 0:
            w_minus = seg.w_minus_0
        else:
            w_minus = p.w_long
        config = GalleryConfig(point, p.d_minus(t), c_inf, w_inf, w_minus)
    else:
        w_inf = v_pt.inverse() * p.end_alcove.dir
        w_minus = seg.w_minus_1
        config = GalleryConfig(point, c_inf, p.d_minus(t), w_minus, w_inf)
    return LocalData(t, w_inf, w_minus, config)


def local_R(p: OpenPath, t) -> IntPoly:
    return folded_galleries_R(local_data(p, t).config)


def path_factors(p: OpenPath, H: int) -> list[tuple[Fraction, IntPoly]]:
    return [(t, local_R(p, t)) for t in event_times(p, H).times]


def path_R(p: OpenPath, H: int) -> IntPoly:
    """Product of the local factors over the event times of ``p``."""
    out = ONE
    for _, factor in path_factors(p, H):
        out = out * factor
        if out.is_zero():
            break
    return out


@dataclass(frozen=True)
class RResult:
    poly: IntPoly
    paths: tuple
    factors: tuple
    budget: SearchBudget
    complete: bool | None

    def to_json(self) -> dict:
        return {
            "R": list(self.poly.coeffs),
            "pretty": self.poly.pretty(),
            "paths": len(self.paths),
            "budget": self.budget.to_json(),
            "complete": self.complete,
            "factorization": [
                {
                    "path": p.to_json(),
                    "factors": [{"t": _frac(t), "R": list(f.coeffs)} for t, f in fs],
                }
                for p, fs in zip(self.paths, self.factors)
            ],
        }


def _frac(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def affine_R(x: WPlusElt, y: WPlusElt, budget: SearchBudget | None = None, stabilize: bool = False) -> RResult:
    """``R_{x,y}``: the sum over Hecke open paths of type ``x`` ending at ``C_y``."""
    budget = budget or SearchBudget()
    require_spherical(x)
    found = enumerate_paths(x, y, budget, stabilize=stabilize)
    factors = map_deterministic(lambda q: path_factors(q, budget.H), found.paths)
    total = ZERO
    for fs in factors:
        prod = ONE
        for _, f in fs:
            prod = prod * f
        total = total + prod
    return RResult(total, found.paths, tuple(tuple(fs) for fs in factors), budget, found.complete)


# -- spherical aggregation -------------------------------------------------------------


@dataclass(frozen=True)
class SphericalResult:
    poly: IntPoly
    terms: tuple
    budget: SearchBudget
    complete: bool | None

    def to_json(self) -> dict:
        return {
            "R": list(self.poly.coeffs),
            "pretty": self.poly.pretty(),
            "terms": [
                {"w": [i + 1 for i in w.word], "v": [i + 1 for i in v.word], "R": list(r.coeffs)}
                for w, v, r in self.terms
            ],
            "budget": self.budget.to_json(),
            "complete": self.complete,
        }


def min_coset_reps(datum: RootDatum, lam_dom: Sequence, max_length: int) -> tuple[list[WeylElt], bool]:
    """Minimal representatives of ``W / W_lam`` up to ``max_length`` and whether that exhausts them."""
    group = weyl_group(datum)
    J = [i for i, a in enumerate(datum.simple_roots) if pair(lam_dom, a) == 0]
    layer = [group.e]
    out = [group.e]
    seen = {group.e}
    for _ in range(max_length):
        nxt = []
        for w in layer:
            for i in range(datum.size):
                cand = group.s(i) * w
                if cand.length <= w.length or cand in seen:
                    continue
                if any(cand.is_right_descent(j) for j in J):
                    continue
                seen.add(cand)
                nxt.append(cand)
        if not nxt:
            return out, True
        out.extend(nxt)
        layer = nxt
    return out, False


def spherical_R(
    lam: Sequence[int],
    mu: Sequence[int],
    datum: RootDatum,
    budget: SearchBudget | None = None,
    max_length: int = 12,
    stabilize: bool = False,
) -> SphericalResult:
    """``R^K_{mu,lam}``: sum of ``R_{pi^{w lam} w, pi^mu v}`` over ``w`` in ``W^lam`` and all ``v``.

    Each ``w`` contributes the paths of type ``pi^{w lam} w`` whose end alcove
    is based at ``-mu``, grouped by the direction ``v`` of that alcove.  The
    flag is ``False`` when the coset representatives were cut at
    ``max_length``; with ``stabilize`` it also requires the terms to survive
    doubled cutoffs.
    """
    budget = budget or SearchBudget()
    lam = tuple(int(a) for a in lam)
    if any(pair(lam, a) < 0 for a in datum.simple_roots):
        raise ValueError("spherical_R expects a dominant coweight lambda")
    reps, exhausted = min_coset_reps(datum, lam, max_length)
    terms = _spherical_terms(lam, mu, datum, budget, reps)
    complete = exhausted
    if stabilize:
        complete = complete and _spherical_terms(lam, mu, datum, budget.doubled(), reps) == terms
    total = ZERO
    for _, _, r in terms:
        total = total + r
    return SphericalResult(total, terms, budget, complete)


def _spherical_terms(lam, mu, datum: RootDatum, budget: SearchBudget, reps) -> tuple:
    target_base = to_point(-a for a in mu)

    def contributions(w: WeylElt):
        x = WPlusElt(datum, w.act_y(lam), w)
        sums: dict = {}
        for p in enumerate_paths(x, None, budget).paths:
            if p.end_alcove.base != target_base:
                continue
            r = path_R(p, budget.H)
            if not r.is_zero():
                sums[p.end_alcove.dir] = sums.get(p.end_alcove.dir, ZERO) + r
        return w, sums

    terms = []
    for w, sums in map_deterministic(contributions, reps):
        for v in sorted(sums, key=lambda e: (e.length, e.word)):
            if not sums[v].is_zero():
                terms.append((w, v, sums[v]))
    return tuple(terms)


# -- classical Coxeter R-polynomials ------------------------------------------------------


def classical_R(u: WeylElt, w: WeylElt) -> IntPoly:
    """Kazhdan-Lusztig ``R_{u,w}`` by the right-descent recursion."""
    return _classical(u.group, u, w)


@lru_cache(maxsize=None)
def _classical(group, u: WeylElt, w: WeylElt) -> IntPoly:
    if u == w:
        return ONE
    if w.length <= u.length or not group.bruhat_leq(u, w):
        return ZERO
    i = w.word[-1]
    ws = w * group.s(i)
    us = u * group.s(i)
    if u.is_right_descent(i):
        return _classical(group, us, ws)
    return X * _classical(group, us, ws) + X_MINUS_ONE * _classical(group, u, ws)

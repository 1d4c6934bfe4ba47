"""Alcoves of the standard apartment and of its tangent twin apartments.

A point of the apartment is a tuple of Fractions in Y-coordinates.  An
alcove ``a(x, eps w)`` is the germ at ``x`` of ``x + eps * w(C_f)`` where
``C_f`` is the fundamental vectorial chamber; it is stored as
``Alcove(base, sign, dir)``.

Walls are the hyperplanes ``<x, beta> + n = 0`` for a positive root beta.
They are true walls when ``n`` is an integer and ghost walls otherwise.  The
positive side of the wall attached to ``beta[n]`` is where
``sgn(n) (<x, beta> + n) > 0``, with ``sgn(0) = +1``.  For an alcove whose
base lies on the wall, the side is read from its direction: ``a(x, eps u)``
is on the positive side exactly when ``eps * sgn(n) * u^{-1}(beta)`` is a
positive root.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import BaseMismatch, NotDominating, SignMismatch
from .rootdata import Root, RootDatum, dominantize, pair
from .weyl import WeylElt, parabolic_data, weyl_group

Point = tuple


def to_point(v: Sequence) -> Point:
    return tuple(Fraction(a) for a in v)


def is_integral(q) -> bool:
    return Fraction(q).denominator == 1


def sgn(n) -> int:
    return -1 if n < 0 else 1


@dataclass(frozen=True)
class Alcove:
    base: Point
    sign: int
    dir: WeylElt

    def __post_init__(self):
        object.__setattr__(self, "base", to_point(self.base))
        if self.sign not in (1, -1):
            raise ValueError("alcove sign must be +1 or -1")

    def __repr__(self) -> str:
        base = ", ".join(str(a) for a in self.base)
        return f"a(({base}), {'+' if self.sign > 0 else '-'}{self.dir!r})"


@dataclass(frozen=True)
class WallId:
    """The wall of direction ``beta`` (positive root) through the level ``<x, beta> = level``."""

    beta: Root
    level: Fraction

    @property
    def n(self) -> Fraction:
        return -Fraction(self.level)

    @property
    def is_true_wall(self) -> bool:
        return is_integral(self.level)


def d_eps(a1: Alcove, a2: Alcove) -> WeylElt:
    """W-distance between two alcoves of the same sign at the same point."""
    if a1.base != a2.base:
        raise BaseMismatch("alcoves are based at different points")
    if a1.sign != a2.sign:
        raise SignMismatch("d_eps needs alcoves of the same sign")
    return a1.dir.inverse() * a2.dir


def d_star(a1: Alcove, a2: Alcove) -> WeylElt:
    """Codistance between two alcoves of opposite signs at the same point."""
    if a1.base != a2.base:
        raise BaseMismatch("alcoves are based at different points")
    if a1.sign == a2.sign:
        raise SignMismatch("d_star needs alcoves of opposite signs")
    return a1.dir.inverse() * a2.dir


def anti_dominant_chamber_dir(datum: RootDatum, x: Sequence) -> WeylElt:
    """The element ``v^x`` with ``x = -v^x x^{++}`` for ``x`` in minus the Tits cone."""
    res = dominantize(datum, tuple(-a for a in x))
    if not res.in_cone:
        raise ValueError(f"{tuple(x)} is not in minus the Tits cone")
    return weyl_group(datum).from_word(res.word)


def local_fundamental(datum: RootDatum, x: Sequence) -> tuple[Alcove, Alcove]:
    """The pair ``(C^{++}_x, C^infty_x) = (a(x, +v^x), a(x, -v^x))``."""
    x = to_point(x)
    v = anti_dominant_chamber_dir(datum, x)
    return Alcove(x, 1, v), Alcove(x, -1, v)


def dominates(a: Alcove, direction: Sequence) -> bool:
    """Whether the alcove contains the segment germ ``base + [0, eps) direction``."""
    u_inv = a.dir.inverse()
    img = u_inv.act_y(tuple(a.sign * c for c in direction))
    datum = a.dir.group.datum
    return all(pair(img, alpha) >= 0 for alpha in datum.simple_roots)


def project_to_germ(a: Alcove, direction: Sequence, target: Sequence) -> Alcove:
    """Project ``a`` (which dominates ``s_+(t_1)``) onto the germ ``s_-(t_2)`` at ``target``.

    ``direction`` is the direction of the segment.  The projection is
    ``a(target, -eps u w_0)`` where ``w_0`` is the longest element of the
    fixator of the direction.
    """
    if not dominates(a, direction):
        raise NotDominating(f"{a!r} does not dominate the segment germ of direction {tuple(direction)}")
    datum = a.dir.group.datum
    dom = a.dir.inverse().act_y(tuple(a.sign * c for c in direction))
    w0 = parabolic_data(datum, dom).w_long
    return Alcove(to_point(target), -a.sign, a.dir * w0)


def panel_wall(x: Sequence, a: Alcove, i: int) -> WallId:
    """The wall supporting the panel of type ``i`` of ``a``."""
    beta = a.dir.act_root(a.dir.group.datum.simple_root(i)).abs()
    return WallId(beta, Fraction(pair(x, beta.coords)))


def thick_panel_test(x: Sequence, a: Alcove, i: int) -> bool:
    """A panel is thick exactly when its supporting wall is a true wall."""
    datum = a.dir.group.datum
    return is_integral(pair(x, a.dir.act_x(datum.simple_roots[i])))


def affine_form(x: Sequence, beta: Root, n) -> Fraction:
    """The value ``sgn(n) (<x, beta> + n)`` of the affine root ``beta[n]``."""
    return sgn(n) * (Fraction(pair(x, beta.coords)) + n)


def side_of_wall(a: Alcove, beta: Root, n) -> int:
    """Return +1 if ``a`` lies on the positive side of the wall of ``beta[n]``, else -1."""
    if not beta.positive:
        if n == 0:
            beta = -beta
        else:
            beta, n = -beta, -n
    value = affine_form(a.base, beta, n)
    if value > 0:
        return 1
    if value < 0:
        return -1
    img_positive = a.dir.inverse().root_image_positive(beta)
    return a.sign * sgn(n) * (1 if img_positive else -1)


def reflect_point(x: Sequence, beta: Root, n) -> Point:
    """Image of ``x`` under the affine reflection ``s_{beta[n]} = pi^{n beta^vee} s_beta``."""
    c = Fraction(pair(x, beta.coords)) + n
    return tuple(Fraction(a) - c * b for a, b in zip(x, beta.coroot_coords))


def reflect_alcove(a: Alcove, beta: Root, n, s_beta: WeylElt | None = None) -> Alcove:
    if s_beta is None:
        s_beta = a.dir.group.reflection(beta)
    return Alcove(reflect_point(a.base, beta, n), a.sign, s_beta * a.dir)

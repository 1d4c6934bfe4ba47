"""Open paths in the standard apartment and their foldings.

An open path of type ``x = pi^lam w`` is stored as a list of affine pieces.
Each piece carries its time interval, its starting point and a Weyl element
``u`` choosing the decoration on it: for ``t`` in ``(start, end]`` the
negative-side decoration is ``D^-_t = a(c(t), +u)`` and for ``t`` in
``[start, end)`` the positive-side decoration is ``D^+_t = a(c(t), -u w_0)``,
where ``w_0`` is the longest element of the fixator of ``lam^{++}``.  The
direction of the piece is then forced to be ``-u(lam^{++})``.

Pieces are merged whenever two neighbours share the same ``u``, so a break
between pieces always marks a change of decoration.  Such a path is
admissible exactly when every break also changes the direction.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .affine_weyl import AffineRoot, WPlusElt, element_from_alcove, lowering_test, require_spherical
from .apartment import (
    Alcove,
    anti_dominant_chamber_dir,
    is_integral,
    reflect_point,
    side_of_wall,
    to_point,
)
from .errors import DegeneratePath, NotOnWall
from .rootdata import pair
from .weyl import WeylElt, weyl_group


@lru_cache(maxsize=65536)
def _direction(u: WeylElt, lam_pp: tuple) -> tuple:
    return tuple(-a for a in u.act_y(lam_pp))


@dataclass(frozen=True)
class Piece:
    """An affine stretch ``[start, end]`` of a path starting at ``origin`` with decoration ``u``."""

    start: Fraction
    end: Fraction
    origin: tuple
    u: WeylElt

    def point(self, t, lam_pp) -> tuple:
        direction = self.direction(lam_pp)
        elapsed = Fraction(t) - self.start
        if not elapsed:
            return self.origin
        return tuple(o + elapsed * d for o, d in zip(self.origin, direction))

    def direction(self, lam_pp) -> tuple:
        return _direction(self.u, tuple(lam_pp))

    def key(self):
        return (self.start, self.end, self.origin, self.u.mat)


@dataclass(frozen=True)
class FoldDatum:
    t: Fraction
    root: AffineRoot

    def to_json(self) -> dict:
        return {"t": _frac_str(self.t), "beta": list(self.root.beta.coeffs), "n": self.root.n}


class OpenPath:
    """An open path of a fixed type, together with the folds that produced it."""

    __slots__ = ("x", "lam_pp", "w_long", "pieces", "end_alcove", "folds", "segment_u", "_key", "_points")

    def __init__(self, x: WPlusElt, lam_pp, w_long, pieces, end_alcove, folds, segment_u):
        self.x = x
        self.lam_pp = lam_pp
        self.w_long = w_long
        self.pieces = tuple(pieces)
        self.end_alcove = end_alcove
        self.folds = tuple(folds)
        self.segment_u = segment_u
        self._key = None
        self._points: dict = {}

    @property
    def datum(self):
        return self.x.datum

    # -- identity ------------------------------------------------------------

    def key(self):
        """Identity of the path: pieces and end alcove, ignoring the fold log."""
        if self._key is None:
            end = self.end_alcove
            self._key = (tuple(p.key() for p in self.pieces), end.base, end.sign, end.dir.mat)
        return self._key

    def __eq__(self, other) -> bool:
        return isinstance(other, OpenPath) and self.x == other.x and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def sort_key(self):
        pieces = tuple((p.start, p.end, p.origin, p.u.length, p.u.word) for p in self.pieces)
        end = self.end_alcove
        return (end.base, end.dir.length, end.dir.word, pieces)

    def __repr__(self) -> str:
        breaks = ", ".join(str(b) for b in self.breaks)
        return f"OpenPath(type={self.x!r}, breaks=[{breaks}], end={self.end_alcove!r})"

    # -- underlying path -----------------------------------------------------

    @property
    def breaks(self) -> tuple:
        return (Fraction(0),) + tuple(p.end for p in self.pieces)

    @property
    def points(self) -> tuple:
        return tuple(self.point(t) for t in self.breaks)

    @property
    def directions(self) -> tuple:
        return tuple(p.direction(self.lam_pp) for p in self.pieces)

    def piece_after(self, t) -> int:
        """Index of the piece containing ``[t, t + eps)``; requires ``t < 1``."""
        t = Fraction(t)
        for k, p in enumerate(self.pieces):
            if p.start <= t < p.end:
                return k
        raise ValueError(f"time {t} is outside [0, 1)")

    def piece_before(self, t) -> int:
        """Index of the piece containing ``(t - eps, t]``; requires ``t > 0``."""
        t = Fraction(t)
        for k, p in enumerate(self.pieces):
            if p.start < t <= p.end:
                return k
        raise ValueError(f"time {t} is outside (0, 1]")

    def point(self, t) -> tuple:
        t = Fraction(t)
        out = self._points.get(t)
        if out is None:
            k = self.piece_before(t) if t > 0 else 0
            out = self._points[t] = self.pieces[k].point(t, self.lam_pp)
        return out

    @property
    def end_point(self) -> tuple:
        return self.point(1)

    # -- decorations ---------------------------------------------------------

    def d_minus(self, t) -> Alcove:
        """``D^-_t``, with the convention ``D^-_0 = C_0``."""
        t = Fraction(t)
        if t == 0:
            return Alcove(self.point(0), 1, weyl_group(self.datum).e)
        return Alcove(self.point(t), 1, self.pieces[self.piece_before(t)].u)

    def d_plus(self, t) -> Alcove:
        """``D^+_t`` for ``t < 1``."""
        t = Fraction(t)
        return Alcove(self.point(t), -1, self.pieces[self.piece_after(t)].u * self.w_long)

    def d_plus_limit(self, t) -> Alcove:
        """The limit of ``D^+_s`` as ``s`` increases to ``t``."""
        t = Fraction(t)
        return Alcove(self.point(t), -1, self.pieces[self.piece_before(t)].u * self.w_long)

    # -- admissibility -------------------------------------------------------

    def is_admissible(self) -> bool:
        dirs = self.directions
        return all(dirs[k] != dirs[k + 1] for k in range(len(dirs) - 1))

    def direction_breaks(self) -> tuple:
        """Interior times where the direction changes."""
        dirs = self.directions
        return tuple(self.pieces[k].end for k in range(len(dirs) - 1) if dirs[k] != dirs[k + 1])

    def fold_times(self) -> tuple:
        """Times in ``[0, 1)`` where the path bends, with ``c'_-(0) = -lam^{++}``."""
        start_dir = tuple(-Fraction(a) for a in self.lam_pp)
        head = (Fraction(0),) if self.directions[0] != start_dir else ()
        return head + self.direction_breaks()

    @property
    def end_element(self) -> WPlusElt | None:
        return element_from_alcove(self.datum, self.end_alcove)

    # -- serialization -------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "type": self.x.to_json(),
            "breaks": [_frac_str(t) for t in self.breaks],
            "points": [[_frac_str(c) for c in pt] for pt in self.points],
            "directions": [[_frac_str(c) for c in d] for d in self.directions],
            "decorations": [[i + 1 for i in p.u.word] for p in self.pieces],
            "end_alcove": {
                "base": [_frac_str(c) for c in self.end_alcove.base],
                "sign": self.end_alcove.sign,
                "word": [i + 1 for i in self.end_alcove.dir.word],
            },
            "folding_data": [f.to_json() for f in self.folds],
        }


def _frac_str(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


# -- construction ----------------------------------------------------------------


@dataclass(frozen=True)
class SegmentData:
    """Derived data of the open segment of ``x``."""

    path: OpenPath
    w_minus_0: WeylElt
    w_minus_1: WeylElt
    d_minus_1: Alcove


def open_segment(x: WPlusElt) -> OpenPath:
    """The open segment of ``x = pi^lam w``: the path ``t -> -t lam`` with end alcove ``C_x``."""
    para = require_spherical(x)
    if all(a == 0 for a in x.lam):
        raise DegeneratePath("the open segment of a pure Weyl element is a constant path")
    group = weyl_group(x.datum)
    # D^-_1 projects C_x = a(-lam, +w) onto the germ toward 0; its direction is w m
    # with m minimal in w^{-1} v^lam W_J.
    m = group.min_left_coset_rep(x.w.inverse() * x.v_lam, para.J)
    u = x.w * m
    piece = Piece(Fraction(0), Fraction(1), to_point([0] * x.datum.rank), u)
    return OpenPath(x, x.lam_pp, para.w_long, (piece,), x.alcove, (), u)


def segment_data(x: WPlusElt) -> SegmentData:
    path = open_segment(x)
    u = path.segment_u
    return SegmentData(path, u * path.w_long, u.inverse() * x.w, Alcove(path.end_point, 1, u))


def _merge(pieces: Sequence[Piece]) -> tuple:
    out: list[Piece] = []
    for p in pieces:
        if out and out[-1].u == p.u:
            prev = out[-1]
            out[-1] = Piece(prev.start, p.end, prev.origin, prev.u)
        else:
            out.append(p)
    return tuple(out)


def on_wall(point: Sequence, ar: AffineRoot) -> bool:
    return pair(point, ar.beta.coords) + ar.n == 0


def fold(p: OpenPath, t0, ar: AffineRoot) -> OpenPath:
    """Reflect the part of ``p`` from ``t0`` on (and its end alcove) across the wall of ``ar``."""
    t0 = Fraction(t0)
    if not 0 <= t0 <= 1:
        raise ValueError("fold time must lie in [0, 1]")
    if not on_wall(p.point(t0), ar):
        raise NotOnWall(f"c({t0}) does not lie on the wall of {ar}")
    beta, n = ar.beta, ar.n
    s_beta = weyl_group(p.datum).reflection(beta)
    pieces = []
    for piece in p.pieces:
        if piece.end <= t0:
            pieces.append(piece)
        elif piece.start >= t0:
            pieces.append(Piece(piece.start, piece.end, reflect_point(piece.origin, beta, n), s_beta * piece.u))
        else:
            mid = piece.point(t0, p.lam_pp)
            pieces.append(Piece(piece.start, t0, piece.origin, piece.u))
            pieces.append(Piece(t0, piece.end, mid, s_beta * piece.u))
    end = p.end_alcove
    new_end = Alcove(reflect_point(end.base, beta, n), end.sign, s_beta * end.dir)
    return OpenPath(p.x, p.lam_pp, p.w_long, _merge(pieces), new_end, p.folds + (FoldDatum(t0, ar),), p.segment_u)


def is_positive_fold(p: OpenPath, t0, ar: AffineRoot) -> bool:
    """Whether folding at ``t0`` along ``ar`` moves ``D^+_{t0}`` (or the end alcove) off the negative side."""
    t0 = Fraction(t0)
    if not on_wall(p.point(t0), ar):
        raise NotOnWall(f"c({t0}) does not lie on the wall of {ar}")
    alcove = p.end_alcove if t0 == 1 else p.d_plus(t0)
    return side_of_wall(alcove, ar.beta, ar.n) == -1


# -- chains and the local Hecke test ----------------------------------------------


@dataclass(frozen=True)
class ChainResult:
    found: bool
    roots: tuple = ()


def chain_exists(point: Sequence, start: Alcove, target: Alcove, H: int, max_steps: int = 64) -> ChainResult:
    """Breadth-first search for a chain of reflections from ``start`` to ``target`` at ``point``.

    Each step reflects along a true wall through ``point`` (height of the root at
    most ``H``) that has the current alcove on its positive side, the side
    away from ``C^infty_point``.
    """
    point = to_point(point)
    if start.base != point or target.base != point or start.sign != target.sign:
        raise ValueError("chain endpoints must be based at the point with equal signs")
    if start == target:
        return ChainResult(True, ())
    datum = start.dir.group.datum
    group = weyl_group(datum)
    walls = []
    for beta in datum.positive_roots(H):
        level = pair(point, beta.coords)
        if is_integral(level):
            walls.append(AffineRoot(beta, -int(level)))
    # On the positive side of a wall through the point the codistance to
    # C^infty only shrinks for negative alcoves and only grows for positive ones.
    v_pt = anti_dominant_chamber_dir(datum, point)
    target_len = (v_pt.inverse() * target.dir).length

    def admissible_len(u: WeylElt) -> bool:
        length = (v_pt.inverse() * u).length
        return length >= target_len if start.sign < 0 else length <= target_len

    parent = {start.dir: None}
    queue = deque([(start.dir, 0)])
    while queue:
        u, depth = queue.popleft()
        if depth >= max_steps:
            continue
        cur = Alcove(point, start.sign, u)
        for ar in walls:
            if side_of_wall(cur, ar.beta, ar.n) != 1:
                continue
            nxt = group.reflection(ar.beta) * u
            if nxt in parent or not admissible_len(nxt):
                continue
            parent[nxt] = (u, ar)
            if nxt == target.dir:
                chain = []
                node = nxt
                while parent[node] is not None:
                    prev, step = parent[node]
                    chain.append(step)
                    node = prev
                return ChainResult(True, tuple(reversed(chain)))
            queue.append((nxt, depth + 1))
    return ChainResult(False, ())


def verify_hecke(p: OpenPath, H: int) -> bool:
    """Check the local chain conditions characterizing Hecke open paths of type ``p.x``.

    At every direction break ``t`` in ``(0, 1)`` there must be a chain from
    ``D^+_t`` to the left limit of ``D^+``; at ``t = 1`` from the end alcove to
    the alcove at distance ``w^-_{x,1}`` from ``D^-_1``; and at ``t = 0`` from
    ``D^+_0`` to the decoration of the open segment.
    """
    if not p.is_admissible():
        return False
    seg = segment_data(p.x)
    zero = Fraction(0)
    start_ref = Alcove(p.point(zero), -1, seg.path.segment_u * p.w_long)
    if not chain_exists(p.point(zero), p.d_plus(zero), start_ref, H).found:
        return False
    for t in p.direction_breaks():
        if not chain_exists(p.point(t), p.d_plus(t), p.d_plus_limit(t), H).found:
            return False
    ref = Alcove(p.end_point, 1, p.pieces[-1].u * seg.w_minus_1)
    return chain_exists(p.end_point, p.end_alcove, ref, H).found


def chain_lowering_ok(p: OpenPath) -> bool:
    """Every fold in the log lowers the tracked element of ``W^+`` (the chain property)."""
    z = p.x
    for f in p.folds:
        ok, z = lowering_test(z, f.root)
        if not ok:
            return False
    end = p.end_element
    return end is not None and end == z

"""The affine Weyl semigroup ``W^+ = Y^+ x| W^v`` and its elementary Bruhat relation.

An element ``pi^lam w`` acts on the apartment by ``x -> -lam + w(x)``, so it
sends the fundamental alcove ``C_0 = a(0, +e)`` to ``C_x = a(-lam, +w)``.
Products follow ``(pi^lam w)(pi^mu u) = pi^{lam + w mu} wu``.

Affine roots ``beta[n]`` are stored with ``beta`` positive and ``n`` any
integer; the reflection ``s_{beta[n]} = pi^{n beta^vee} s_beta`` fixes the
wall ``<x, beta> + n = 0``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .apartment import Alcove, to_point
from .errors import CutoffInconclusive, NotSpherical
from .rootdata import DEFAULT_STEP_BUDGET, Root, RootDatum, dominantize, pair
from .weyl import ParabolicData, WeylElt, parabolic_data, weyl_group


@dataclass(frozen=True)
class AffineRoot:
    """``beta[n]`` with ``beta`` a positive root."""

    beta: Root
    n: int

    @classmethod
    def make(cls, beta: Root, n: int) -> "AffineRoot":
        """Normalize so that ``beta`` is positive, using ``beta[n] = (-beta)[-n]``."""
        if beta.positive:
            return cls(beta, n)
        return cls(-beta, -n)

    def __str__(self) -> str:
        return "(" + ",".join(str(c) for c in self.beta.coeffs) + f")[{self.n}]"

    def to_json(self) -> dict:
        return {"beta": list(self.beta.coeffs), "n": self.n}


class WPlusElt:
    """An element ``pi^lam w`` of ``Y x| W^v``; members of ``W^+`` have ``lam`` in the Tits cone."""

    __slots__ = ("datum", "lam", "w", "_dom", "_hash")

    def __init__(self, datum: RootDatum, lam: Sequence[int], w: WeylElt, check: bool = True):
        self.datum = datum
        self.lam = tuple(int(a) for a in lam)
        self.w = w
        self._dom = None
        self._hash = hash((self.lam, w))
        if len(self.lam) != datum.rank:
            raise ValueError(f"coweight must have {datum.rank} coordinates")
        if check and not self._dominant().in_cone:
            raise ValueError(f"coweight {list(self.lam)} is outside the Tits cone")

    @classmethod
    def from_word(cls, datum: RootDatum, lam: Sequence[int], word: Sequence[int]) -> "WPlusElt":
        return cls(datum, lam, weyl_group(datum).from_word(word))

    @classmethod
    def identity(cls, datum: RootDatum) -> "WPlusElt":
        return cls(datum, (0,) * datum.rank, weyl_group(datum).e)

    def _dominant(self):
        if self._dom is None:
            self._dom = dominantize(self.datum, self.lam, DEFAULT_STEP_BUDGET)
        return self._dom

    def __eq__(self, other) -> bool:
        return isinstance(other, WPlusElt) and self.lam == other.lam and self.w == other.w

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"pi^{list(self.lam)} {self.w!r}"

    def to_json(self) -> dict:
        return {"lambda": list(self.lam), "word": [i + 1 for i in self.w.word]}

    def sort_key(self):
        return (self.lam, self.w.length, self.w.word)

    # -- derived coweight data -------------------------------------------

    @property
    def lam_pp(self) -> tuple:
        return tuple(int(a) for a in self._dominant().dominant)

    @property
    def v_lam(self) -> WeylElt:
        """Minimal ``v`` with ``lam = v lam^{++}``."""
        return weyl_group(self.datum).from_word(self._dominant().word)

    @property
    def is_spherical(self) -> bool:
        return self._dominant().spherical

    @property
    def parabolic(self) -> ParabolicData:
        return parabolic_data(self.datum, self.lam_pp)

    # -- group law and actions -------------------------------------------

    def __mul__(self, other: "WPlusElt") -> "WPlusElt":
        lam = tuple(a + b for a, b in zip(self.lam, self.w.act_y(other.lam)))
        return WPlusElt(self.datum, lam, self.w * other.w, check=False)

    def act_point(self, x: Sequence) -> tuple:
        return tuple(Fraction(a) - b for a, b in zip(self.w.act_y(x), self.lam))

    def act_alcove(self, a: Alcove) -> Alcove:
        return Alcove(self.act_point(a.base), a.sign, self.w * a.dir)

    @property
    def alcove(self) -> Alcove:
        """``C_x = x . C_0 = a(-lam, +w)``."""
        return Alcove(to_point(-a for a in self.lam), 1, self.w)


def element_from_alcove(datum: RootDatum, a: Alcove) -> WPlusElt | None:
    """The ``y`` with ``C_y = a``, when ``a`` is a positive alcove based at a point of ``-Y``."""
    if a.sign != 1 or any(c.denominator != 1 for c in a.base):
        return None
    return WPlusElt(datum, tuple(-int(c) for c in a.base), a.dir, check=False)


def act_on_affine_root(x: WPlusElt, beta: Root, n) -> tuple[Root, int]:
    """``pi^lam w . (beta, n) = (w beta, n + <lam, w beta>)`` without renormalizing."""
    wb = x.w.act_root(beta)
    return wb, n + pair(x.lam, wb.coords)


def affine_reflection(datum: RootDatum, ar: AffineRoot) -> WPlusElt:
    """``s_{beta[n]} = pi^{n beta^vee} s_beta`` as an element of ``Y x| W^v``."""
    s_beta = weyl_group(datum).reflection(ar.beta)
    lam = tuple(ar.n * c for c in ar.beta.coroot_coords)
    return WPlusElt(datum, lam, s_beta, check=False)


def lowering_test(x: WPlusElt, ar: AffineRoot) -> tuple[bool, WPlusElt | None]:
    """Whether ``s_{beta[n]} x < x``; if so also return ``s_{beta[n]} x``.

    With ``x = pi^lam w``: true exactly when ``|n| < sgn(n) <lam, beta>``, or
    ``|n| = sgn(n) <lam, beta>`` and ``sgn(n) w^{-1} beta`` is negative.
    """
    beta, n = ar.beta, ar.n
    sg = -1 if n < 0 else 1
    p = sg * pair(x.lam, beta.coords)
    if abs(n) < p:
        low = True
    elif abs(n) == p:
        img_pos = x.w.inverse().root_image_positive(beta)
        low = (sg == 1) != img_pos
    else:
        low = False
    if not low:
        return False, None
    y = affine_reflection(x.datum, ar) * x
    return True, WPlusElt(x.datum, y.lam, y.w)


def lowering_reflections(x: WPlusElt, H: int) -> list[tuple[AffineRoot, WPlusElt]]:
    """All ``(beta[n], s_{beta[n]} x)`` below ``x`` with ``ht(beta) <= H``, canonically ordered."""
    out = []
    for beta in x.datum.positive_roots(H):
        p = pair(x.lam, beta.coords)
        for n in range(-abs(p) - 1, abs(p) + 2):
            ok, y = lowering_test(x, AffineRoot(beta, n))
            if ok:
                out.append((AffineRoot(beta, n), y))
    return out


# -- quantum roots and almost dominance --------------------------------------


def inversion_set(w: WeylElt) -> list[Root]:
    """The positive roots sent to negative roots by ``w``, read off a reduced word.

    For a reduced word ``i_1 ... i_k`` they are ``s_{i_k} ... s_{i_{j+1}}(alpha_{i_j})``.
    """
    datum = w.group.datum
    group = w.group
    word = w.word
    out = []
    for j, i in enumerate(word):
        tail = group.from_word(tuple(reversed(word[j + 1 :])))
        out.append(tail.act_root(datum.simple_root(i)))
    return out


def is_quantum_root(datum: RootDatum, beta: Root, H: int | None = None) -> bool:
    """``<beta^vee, gamma> = 1`` for every ``gamma`` in ``Inv(s_beta)`` other than ``beta``."""
    if not beta.positive:
        raise ValueError("quantum roots are positive")
    s_beta = weyl_group(datum).reflection(beta)
    return all(pair(beta.coroot_coords, g.coords) == 1 for g in inversion_set(s_beta) if g != beta)


def is_almost_dominant(datum: RootDatum, mu: Sequence, H: int | None = None) -> bool:
    """``<mu, tau> >= -1`` for all positive roots ``tau``.

    Writing ``mu = v mu^{++}`` with ``v`` minimal, the positive roots paired
    negatively with ``mu`` are exactly ``Inv(v^{-1})``, so only those need checking.
    """
    res = dominantize(datum, mu)
    if not res.in_cone:
        raise CutoffInconclusive("coweight lies outside the Tits cone")
    v = weyl_group(datum).from_word(res.word)
    return all(pair(mu, tau.coords) >= -1 for tau in inversion_set(v.inverse()))


# -- covers ------------------------------------------------------------------


@dataclass(frozen=True)
class CoverCertificate:
    """Witness that ``x = s_{v(beta)[n]} y`` covers ``y = pi^{v lam} w``."""

    kind: str
    beta: Root
    n: int
    v: WeylElt
    w: WeylElt
    lam: tuple

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "beta": list(self.beta.coeffs),
            "n": self.n,
            "v": [i + 1 for i in self.v.word],
            "w": [i + 1 for i in self.w.word],
            "lambda": list(self.lam),
        }


def grading_gap(x: WPlusElt, y: WPlusElt) -> int:
    """``g(x) - g(y)`` for ``g(pi^mu w) = <mu^{++}, 2 rho> - l(v^mu) + l((v^mu)^{-1} w)``.

    Only the difference is formed, so the pairing with ``2 rho`` is taken on
    ``x^{++} - y^{++}``, which lies in the coroot lattice when ``x`` and ``y``
    differ by an affine reflection.  In finite type ``g`` is the number of
    walls separating ``C_0`` from ``C_x``.
    """
    diff = tuple(a - b for a, b in zip(x.lam_pp, y.lam_pp))
    coeffs = x.datum.coroot_coefficients(diff)
    if coeffs is None:
        raise ValueError("dominant coweights do not differ by a coroot combination")
    rho_part = 2 * sum(coeffs)
    vx, vy = x.v_lam, y.v_lam
    gx = -vx.length + (vx.inverse() * x.w).length
    gy = -vy.length + (vy.inverse() * y.w).length
    return int(rho_part) + gx - gy


def classify_cover(y: WPlusElt, ar: AffineRoot, H: int) -> CoverCertificate | None:
    """Decide whether ``x = s_{ar} y`` covers ``y`` and name its case.

    ``y = pi^{v lam} w`` with ``lam`` dominant and ``v`` minimal, and
    ``ar = v(beta)[n]`` with ``beta`` positive, so that ``n`` is one of
    ``0``, ``<lam, beta>``, ``-1`` or ``<lam, beta> + 1``.  Each case first checks
    its necessary condition (length conditions, or quantum root together with
    almost dominance of ``lam + beta^vee``), then requires a grading gap of one.
    """
    datum = y.datum
    lam = y.lam_pp
    v = y.v_lam
    beta0 = v.inverse().act_root(ar.beta)
    if beta0.positive:
        beta, n = beta0, ar.n
    else:
        beta, n = -beta0, -ar.n
    p = pair(lam, beta.coords)
    s_beta = weyl_group(datum).reflection(beta)
    vw = v.inverse() * y.w
    kind = None
    if n == 0 and p != 0:
        if (v * s_beta).length == v.length - 1:
            kind = "n_zero"
    elif n == 0 and p == 0:
        if (s_beta * vw).length == vw.length + 1:
            kind = "n_zero"
    elif n == p:
        if (s_beta * vw).length == vw.length + 1:
            kind = "n_pairing"
    elif n == -1 or n == p + 1:
        shifted = tuple(a + b for a, b in zip(lam, beta.coroot_coords))
        if is_quantum_root(datum, beta, H) and is_almost_dominant(datum, shifted, H):
            kind = "n_minus_one" if n == -1 else "n_pairing_plus_one"
    if kind is None:
        return None
    x = affine_reflection(datum, ar) * y
    x = WPlusElt(datum, x.lam, x.w)
    if grading_gap(x, y) != 1:
        return None
    return CoverCertificate(kind, beta, n, v, y.w, lam)


def covers_of(x: WPlusElt, H: int) -> list[tuple[WPlusElt, CoverCertificate]]:
    """Elements covered by ``x`` through a reflection of height at most ``H``."""
    out = []
    for ar, y in lowering_reflections(x, H):
        cert = classify_cover(y, ar, H)
        if cert is not None:
            out.append((y, cert))
    return out


def is_cover(y: WPlusElt, x: WPlusElt, H: int) -> CoverCertificate | None:
    for z, cert in covers_of(x, H):
        if z == y:
            return cert
    return None


# -- bounded order search ----------------------------------------------------


@dataclass(frozen=True)
class LeqResult:
    proven: bool
    chain: tuple[AffineRoot, ...] = ()

    @property
    def status(self) -> str:
        return "Proven" if self.proven else "NotFoundWithinBounds"


def leq_within(y: WPlusElt, x: WPlusElt, H: int, depth: int) -> LeqResult:
    """Search for a lowering chain from ``x`` down to ``y`` of length at most ``depth``."""
    if x == y:
        return LeqResult(True, ())
    parent: dict[WPlusElt, tuple] = {x: None}
    queue = deque([(x, 0)])
    while queue:
        z, k = queue.popleft()
        if k >= depth:
            continue
        for ar, z2 in lowering_reflections(z, H):
            if z2 in parent:
                continue
            parent[z2] = (z, ar)
            if z2 == y:
                chain = []
                cur = z2
                while parent[cur] is not None:
                    prev, step = parent[cur]
                    chain.append(step)
                    cur = prev
                return LeqResult(True, tuple(reversed(chain)))
            queue.append((z2, k + 1))
    return LeqResult(False, ())


def parse_element(datum: RootDatum, obj: dict) -> WPlusElt:
    """Parse ``{"lambda": [...], "word": [...]}`` with 1-based word indices."""
    lam = obj.get("lambda", [0] * datum.rank)
    word = [int(i) - 1 for i in obj.get("word", [])]
    if any(i < 0 or i >= datum.size for i in word):
        raise ValueError("word indices must lie in 1..|I|")
    return WPlusElt.from_word(datum, lam, word)


def require_spherical(x: WPlusElt) -> ParabolicData:
    if not x.is_spherical:
        res = x._dominant()
        raise NotSpherical(res.J if res.J is not None else ())
    return x.parabolic

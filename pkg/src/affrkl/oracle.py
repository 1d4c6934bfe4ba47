"""Comparison with classical R-polynomials in finite type.

When the vectorial Weyl group is finite, ``W^+`` is the extended affine
Weyl group and the alcoves ``C_x`` are exactly the alcoves of the apartment.
Sending ``x`` to the element ``g`` of the affine Coxeter group with
``g . C_0 = C_x`` identifies ``W^+`` with the Coxeter group of the affine
Cartan matrix, where the classical recursion applies.
"""

from __future__ import annotations

from dataclasses import dataclass

from .affine_weyl import WPlusElt, element_from_alcove
from .apartment import Alcove, reflect_alcove, side_of_wall, to_point
from .enumeration import SearchBudget
from .errors import DegeneratePath
from .polynomial import IntPoly
from .rootdata import RootDatum, is_finite_type, is_indecomposable, pair, simply_connected_datum
from .weyl import WeylElt, weyl_group


def highest_root(datum: RootDatum):
    roots = datum.positive_roots(4 * datum.size + 4)
    return max(roots, key=lambda r: (r.height, r.sort_key()))


def affine_gcm(gcm) -> tuple[tuple[int, ...], ...]:
    """The untwisted affine Cartan matrix of an indecomposable finite-type one, affine node last."""
    datum = simply_connected_datum(gcm)
    if not is_finite_type(datum.gcm) or not is_indecomposable(datum.gcm):
        raise ValueError("the affine Coxeter group is only built for indecomposable finite types")
    theta = highest_root(datum)
    n = datum.size
    rows = [list(row) + [-pair(datum.simple_coroots[i], theta.coords)] for i, row in enumerate(datum.gcm)]
    rows.append([-pair(theta.coroot_coords, datum.simple_roots[j]) for j in range(n)] + [2])
    return tuple(tuple(row) for row in rows)


class AlcoveCoxeterMap:
    """Identify ``W^+`` of a finite-type datum with its affine Coxeter group."""

    def __init__(self, datum: RootDatum):
        self.datum = datum
        self.group = weyl_group(datum)
        self.coxeter = weyl_group(simply_connected_datum(affine_gcm(datum.gcm)))
        theta = highest_root(datum)
        self.walls = [(datum.simple_root(i), 0) for i in range(datum.size)] + [(theta, -1)]
        self.base = Alcove(to_point([0] * datum.rank), 1, self.group.e)

    def to_coxeter(self, x: WPlusElt) -> WeylElt:
        """Peel the walls separating ``C_x`` from ``C_0``, one generator at a time."""
        alcove = x.alcove
        word = []
        while alcove != self.base:
            for index, (beta, n) in enumerate(self.walls):
                if side_of_wall(alcove, beta, n) != side_of_wall(self.base, beta, n):
                    word.append(index)
                    alcove = reflect_alcove(alcove, beta, n)
                    break
            else:
                raise RuntimeError(f"no generator wall separates {alcove} from the base alcove")
        return self.coxeter.from_word(word)

    def from_coxeter(self, g: WeylElt) -> WPlusElt:
        alcove = self.base
        for index in reversed(g.word):
            beta, n = self.walls[index]
            alcove = reflect_alcove(alcove, beta, n)
        return element_from_alcove(self.datum, alcove)


@dataclass(frozen=True)
class OracleRow:
    x: WPlusElt
    y: WPlusElt
    ours: IntPoly
    classical: IntPoly
    complete: bool | None

    @property
    def match(self) -> bool:
        return self.ours == self.classical

    def to_json(self) -> dict:
        return {
            "x": self.x.to_json(),
            "y": self.y.to_json(),
            "ours": list(self.ours.coeffs),
            "classical": list(self.classical.coeffs),
            "match": self.match,
            "complete": self.complete,
        }


def oracle_pairs(datum: RootDatum, max_length: int, max_gap: int = 5) -> list[tuple[WPlusElt, WPlusElt]]:
    """Pairs ``(x, y)`` with ``g_x`` of length at most ``max_length`` and lengths differing by at most ``max_gap``.

    Elements with ``lambda = 0`` are left out as ``x``: their open segments are constant.
    """
    cmap = AlcoveCoxeterMap(datum)
    elements = [(g, cmap.from_coxeter(g)) for g in cmap.coxeter.elements_up_to_length(max_length)]
    pairs = []
    for gx, x in elements:
        if not any(x.lam):
            continue
        for gy, y in elements:
            if abs(gx.length - gy.length) <= max_gap:
                pairs.append((x, y))
    return pairs


def oracle_table(datum: RootDatum, max_length: int, budget: SearchBudget, max_gap: int = 5, stabilize: bool = False):
    """Ours against the classical ``R_{g_y, g_x}`` for every pair of :func:`oracle_pairs`."""
    from .rpoly import affine_R, classical_R

    cmap = AlcoveCoxeterMap(datum)
    rows = []
    for x, y in oracle_pairs(datum, max_length, max_gap):
        try:
            result = affine_R(x, y, budget, stabilize=stabilize)
        except DegeneratePath:
            continue
        classical = classical_R(cmap.to_coxeter(y), cmap.to_coxeter(x))
        rows.append(OracleRow(x, y, result.poly, classical, result.complete))
    return rows

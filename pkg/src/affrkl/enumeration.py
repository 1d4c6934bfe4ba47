"""Enumeration of Hecke open paths and of their wall-event times."""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .affine_weyl import AffineRoot, WPlusElt, grading_gap, require_spherical
from .apartment import is_integral
from .errors import DegeneratePath
from .paths import OpenPath, fold, is_positive_fold, open_segment
from .rootdata import DEFAULT_STEP_BUDGET, pair


@dataclass(frozen=True)
class SearchBudget:
    """Cutoffs for the search: root height ``H``, fold count ``F`` and dominantization steps."""

    H: int = 6
    F: int = 8
    step_budget: int = DEFAULT_STEP_BUDGET

    def __post_init__(self):
        if self.H < 1 or self.F < 1 or self.step_budget < 1:
            raise ValueError("search budgets must be positive")

    def doubled(self) -> "SearchBudget":
        return SearchBudget(2 * self.H, 2 * self.F, self.step_budget)

    def to_json(self) -> dict:
        return {"H": self.H, "F": self.F}


@dataclass(frozen=True)
class EventTimes:
    times: tuple
    fold_times: tuple


def event_times(p: OpenPath, H: int) -> EventTimes:
    """Times at which some true wall separates ``C^infty_{c(t)}`` from the forward germ.

    For a positive root ``gamma`` with ``g(t) = <c(t), gamma>`` and forward slope
    ``d`` on a piece, a true wall separates exactly when ``g(t)`` is an integer
    and either ``g(t) d < 0``, or ``g(t) = 0`` and ``d > 0``.  So on a piece the
    event values are the integers ``k <= 0`` crossed while ``d > 0`` and the
    integers ``k > 0`` crossed while ``d < 0``, start included and end excluded.
    """
    times = {Fraction(0), Fraction(1)}
    roots = p.datum.positive_roots(H)
    for piece in p.pieces:
        direction = piece.direction(p.lam_pp)
        span = piece.end - piece.start
        for gamma in roots:
            slope = pair(direction, gamma.coords)
            if slope == 0:
                continue
            g_start = pair(piece.origin, gamma.coords)
            g_end = g_start + slope * span
            if slope > 0:
                lo, hi = math.ceil(g_start), min(0, math.ceil(g_end) - 1)
            else:
                lo, hi = max(1, math.floor(g_end) + 1), math.floor(g_start)
            for k in range(lo, hi + 1):
                times.add(piece.start + (k - g_start) / slope)
    folds = p.fold_times()
    times.update(folds)
    return EventTimes(tuple(sorted(times)), tuple(folds))


# -- depth-first enumeration ---------------------------------------------------------


@dataclass(frozen=True)
class EnumerationResult:
    paths: tuple
    budget: SearchBudget
    complete: bool | None

    def to_json(self) -> dict:
        return {
            "budget": self.budget.to_json(),
            "complete": self.complete,
            "paths": [p.to_json() for p in self.paths],
        }


def _crossing_times(p: OpenPath, t_last: Fraction, roots) -> list:
    """Times in ``(t_last, 1)`` where the last piece meets a true wall transversally."""
    piece = p.pieces[-1]
    direction = piece.direction(p.lam_pp)
    out = set()
    for gamma in roots:
        slope = pair(direction, gamma.coords)
        if slope == 0:
            continue
        g_a = pair(piece.point(t_last, p.lam_pp), gamma.coords)
        g_b = g_a + slope * (1 - t_last)
        lo, hi = sorted((g_a, g_b))
        for k in range(math.floor(lo) + 1, math.ceil(hi)):
            out.add(t_last + (k - g_a) / slope)
    return sorted(out)


def _walls_through(point, roots) -> list:
    out = []
    for beta in roots:
        level = pair(point, beta.coords)
        if is_integral(level):
            out.append(AffineRoot(beta, -int(level)))
    return out


class _Search:
    def __init__(self, x: WPlusElt, y: WPlusElt | None, budget: SearchBudget):
        self.x = x
        self.y = y
        self.budget = budget
        self.roots = x.datum.positive_roots(budget.H)
        self.target = None if y is None else y.alcove
        # Every positive fold strictly lowers the grading of the end element,
        # so a branch whose end is already at or below ``y`` cannot reach it.
        self.graded = y is not None
        self.found: dict = {}
        self.seen: dict = {}

    def run(self, start: OpenPath):
        self._visit(start, Fraction(0), 0)

    def _remaining_gap(self, p: OpenPath):
        if not self.graded:
            return None
        end = p.end_element
        return grading_gap(end, self.y)

    def _visit(self, p: OpenPath, t_last: Fraction, depth: int):
        key = (p.key(), t_last)
        prev = self.seen.get(key)
        if prev is not None and prev <= depth:
            return
        self.seen[key] = depth
        admissible = p.is_admissible()
        if admissible:
            if self.target is None or p.end_alcove == self.target:
                self.found.setdefault(p.key(), p)
            if self.target is not None and p.end_alcove == self.target:
                return
        if depth >= self.budget.F:
            return
        gap = self._remaining_gap(p)
        if gap is not None and gap < 1:
            return
        times = [t_last]
        if admissible and t_last < 1:
            times += _crossing_times(p, t_last, self.roots)
            times.append(Fraction(1))
        for t in times:
            for ar in _walls_through(p.point(t), self.roots):
                if not is_positive_fold(p, t, ar):
                    continue
                self._visit(fold(p, t, ar), t, depth + 1)


def _enumerate_once(x: WPlusElt, y: WPlusElt | None, budget: SearchBudget) -> tuple:
    search = _Search(x, y, budget)
    search.run(open_segment(x))
    return tuple(sorted(search.found.values(), key=lambda q: q.sort_key()))


def enumerate_paths(
    x: WPlusElt, y: WPlusElt | None = None, budget: SearchBudget | None = None, stabilize: bool = False
) -> EnumerationResult:
    """Hecke open paths of type ``x`` (ending at ``C_y`` when ``y`` is given).

    Folds are explored with non-decreasing times, positive folds only, and at
    most ``budget.F`` of them along roots of height at most ``budget.H``.  A
    path that is not admissible may only be folded again at the same time.
    With ``stabilize`` the search is repeated with doubled cutoffs and the
    result is flagged complete when nothing changes.
    """
    budget = budget or SearchBudget()
    require_spherical(x)
    if all(a == 0 for a in x.lam):
        raise DegeneratePath("paths of a pure Weyl element are constant")
    paths = _enumerate_once(x, y, budget)
    complete = None
    if stabilize:
        bigger = _enumerate_once(x, y, budget.doubled())
        complete = [q.key() for q in bigger] == [q.key() for q in paths]
    return EnumerationResult(paths, budget, complete)


def thread_count() -> int:
    try:
        return max(1, int(os.environ.get("AFFRKL_THREADS", "1")))
    except ValueError:
        return 1


def map_deterministic(func, items):
    """Apply ``func`` to ``items`` with ``AFFRKL_THREADS`` workers, keeping input order."""
    items = list(items)
    workers = thread_count()
    if workers == 1 or len(items) < 2:
        return [func(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, items))

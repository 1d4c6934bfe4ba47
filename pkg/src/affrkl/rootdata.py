"""Kac-Moody root data with exact pairing.

A root datum is stored in coordinates: ``X = Y = Z^d`` with the standard
dot product as pairing.  Simple roots live in ``X`` and simple coroots in
``Y``, and ``<alpha_i^vee, alpha_j> = a_ij``.

Real roots are produced by breadth-first closure of the simple roots under
simple reflections.  Every positive real root other than ``alpha_i`` can be
lowered in height by some simple reflection, so pruning the closure at a
height cutoff never loses a root below that cutoff.  Each root carries its
coroot, transported along the same reflections.
"""

from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import sympy

from .errors import CutoffExceeded, InvalidGCM

DEFAULT_STEP_BUDGET = 10_000


def pair(y: Sequence, x: Sequence):
    """The pairing of a Y-vector with an X-vector."""
    return sum(a * b for a, b in zip(y, x))


def _as_matrix(rows) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(int(a) for a in row) for row in rows)


def validate_gcm(gcm) -> tuple[tuple[int, ...], ...]:
    """Check the generalized Cartan matrix axioms and return it as nested tuples."""
    A = _as_matrix(gcm)
    n = len(A)
    if n == 0 or any(len(row) != n for row in A):
        raise InvalidGCM("a generalized Cartan matrix must be a non-empty square matrix")
    for i in range(n):
        if A[i][i] != 2:
            raise InvalidGCM(f"diagonal entry a_{i + 1}{i + 1} = {A[i][i]} is not 2")
        for j in range(n):
            if i == j:
                continue
            if A[i][j] > 0:
                raise InvalidGCM(f"off-diagonal entry a_{i + 1}{j + 1} = {A[i][j]} is positive")
            if (A[i][j] == 0) != (A[j][i] == 0):
                raise InvalidGCM(f"a_{i + 1}{j + 1} and a_{j + 1}{i + 1} must vanish together")
    return A


def matrix_rank(rows) -> int:
    rows = [list(r) for r in rows]
    if not rows or not rows[0]:
        return 0
    return sympy.Matrix(rows).rank()


@lru_cache(maxsize=None)
def is_finite_type(gcm: tuple[tuple[int, ...], ...]) -> bool:
    """Whether a GCM is of finite type.

    A generalized Cartan matrix is of finite type exactly when all of its
    principal minors are positive.  The empty matrix counts as finite type.
    """
    n = len(gcm)
    for size in range(1, n + 1):
        for idx in itertools.combinations(range(n), size):
            sub = sympy.Matrix([[gcm[i][j] for j in idx] for i in idx])
            if sub.det() <= 0:
                return False
    return True


def sub_gcm(gcm, J: Iterable[int]) -> tuple[tuple[int, ...], ...]:
    J = tuple(sorted(J))
    return tuple(tuple(gcm[i][j] for j in J) for i in J)


def is_indecomposable(gcm) -> bool:
    n = len(gcm)
    seen = {0}
    stack = [0]
    while stack:
        i = stack.pop()
        for j in range(n):
            if j not in seen and gcm[i][j] != 0:
                seen.add(j)
                stack.append(j)
    return len(seen) == n


@dataclass(frozen=True)
class Root:
    """A real root, with its coroot.

    ``coeffs`` are the coordinates in the basis of simple roots, ``coords``
    the coordinates in ``X`` and ``coroot_coords`` the coordinates of the
    coroot in ``Y``.
    """

    coeffs: tuple[int, ...]
    coords: tuple[int, ...] = field(compare=False)
    coroot_coords: tuple[int, ...] = field(compare=False)

    @property
    def height(self) -> int:
        return sum(self.coeffs)

    @property
    def positive(self) -> bool:
        return all(c >= 0 for c in self.coeffs)

    def __neg__(self) -> "Root":
        return Root(
            tuple(-c for c in self.coeffs),
            tuple(-c for c in self.coords),
            tuple(-c for c in self.coroot_coords),
        )

    def abs(self) -> "Root":
        return self if self.positive else -self

    def sort_key(self):
        return (self.height, self.coords)

    def __repr__(self) -> str:
        return f"Root({list(self.coeffs)})"


@dataclass(frozen=True)
class RootDatum:
    """A Kac-Moody root datum given in coordinates.

    ``simple_roots[j]`` is the X-coordinate vector of ``alpha_j`` and
    ``simple_coroots[i]`` the Y-coordinate vector of ``alpha_i^vee``.
    """

    gcm: tuple[tuple[int, ...], ...]
    rank: int
    simple_roots: tuple[tuple[int, ...], ...]
    simple_coroots: tuple[tuple[int, ...], ...]
    _cache: dict = field(default_factory=dict, compare=False, hash=False, repr=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, compare=False, hash=False, repr=False)

    def __post_init__(self):
        A = validate_gcm(self.gcm)
        n = len(A)
        object.__setattr__(self, "gcm", A)
        object.__setattr__(self, "simple_roots", _as_matrix(self.simple_roots))
        object.__setattr__(self, "simple_coroots", _as_matrix(self.simple_coroots))
        if len(self.simple_roots) != n or len(self.simple_coroots) != n:
            raise InvalidGCM("need one simple root and one simple coroot per row of the GCM")
        for vec in self.simple_roots + self.simple_coroots:
            if len(vec) != self.rank:
                raise InvalidGCM(f"coordinate vectors must have length {self.rank}")
        for i in range(n):
            for j in range(n):
                if pair(self.simple_coroots[i], self.simple_roots[j]) != A[i][j]:
                    raise InvalidGCM(f"<alpha_{i + 1}^vee, alpha_{j + 1}> differs from a_{i + 1}{j + 1}")
        if matrix_rank(self.simple_roots) != n:
            raise InvalidGCM("simple roots are not linearly independent")
        if matrix_rank(self.simple_coroots) != n:
            raise InvalidGCM("simple coroots are not linearly independent")

    @property
    def size(self) -> int:
        return len(self.gcm)

    # -- simple roots as Root objects --------------------------------------

    def simple_root(self, i: int) -> Root:
        e = tuple(int(k == i) for k in range(self.size))
        return Root(e, self.simple_roots[i], self.simple_coroots[i])

    def simple_reflect_y(self, i: int, y: Sequence) -> tuple:
        c = pair(y, self.simple_roots[i])
        if c == 0:
            return tuple(y)
        return tuple(a - c * b for a, b in zip(y, self.simple_coroots[i]))

    def simple_reflect_x(self, i: int, x: Sequence) -> tuple:
        c = pair(self.simple_coroots[i], x)
        if c == 0:
            return tuple(x)
        return tuple(a - c * b for a, b in zip(x, self.simple_roots[i]))

    def simple_reflect_root(self, i: int, beta: Root) -> Root:
        c = pair(self.simple_coroots[i], beta.coords)
        if c == 0:
            return beta
        coeffs = list(beta.coeffs)
        coeffs[i] -= c
        coords = tuple(a - c * b for a, b in zip(beta.coords, self.simple_roots[i]))
        coroot = self.simple_reflect_y(i, beta.coroot_coords)
        return Root(tuple(coeffs), coords, coroot)

    def coroot_coefficients(self, y: Sequence) -> tuple | None:
        """Coefficients of ``y`` in the basis of simple coroots, or None if ``y`` is not in their span."""
        with self._lock:
            if "coroot_solver" not in self._cache:
                M = sympy.Matrix(self.simple_coroots).T
                self._cache["coroot_solver"] = (M.T * M).inv() * M.T
            L = self._cache["coroot_solver"]
        c = L * sympy.Matrix(list(y))
        coeffs = tuple(Fraction(int(a.p), int(a.q)) for a in c)
        back = tuple(sum(coeffs[i] * self.simple_coroots[i][k] for i in range(self.size)) for k in range(self.rank))
        if back != tuple(Fraction(a) for a in y):
            return None
        return coeffs

    def root_from_coeffs(self, coeffs: Sequence[int]) -> Root | None:
        """Find the real root with the given simple-root coefficients, if any."""
        coeffs = tuple(int(c) for c in coeffs)
        h = abs(sum(coeffs))
        for beta in self.real_roots(max(h, 1)):
            if beta.coeffs == coeffs:
                return beta
        return None

    # -- real roots ---------------------------------------------------------

    def positive_roots(self, height_cutoff: int) -> tuple[Root, ...]:
        """Positive real roots of height at most ``height_cutoff``, canonically ordered."""
        H = int(height_cutoff)
        if H < 1:
            raise ValueError("height cutoff must be at least 1")
        with self._lock:
            cached = self._cache.get("positive")
            if cached is not None and cached[0] >= H:
                return tuple(b for b in cached[1] if b.height <= H)
            found = {}
            frontier = [self.simple_root(i) for i in range(self.size)]
            for beta in frontier:
                found[beta.coeffs] = beta
            while frontier:
                nxt = []
                for beta in frontier:
                    for i in range(self.size):
                        gamma = self.simple_reflect_root(i, beta)
                        if not gamma.positive or gamma.height > H or gamma.coeffs in found:
                            continue
                        found[gamma.coeffs] = gamma
                        nxt.append(gamma)
                frontier = nxt
            roots = tuple(sorted(found.values(), key=Root.sort_key))
            self._cache["positive"] = (H, roots)
            return roots

    def real_roots(self, height_cutoff: int) -> tuple[Root, ...]:
        """All real roots with ``|height| <= height_cutoff``, ordered by (height, coords)."""
        pos = self.positive_roots(height_cutoff)
        return tuple(sorted(pos + tuple(-b for b in pos), key=Root.sort_key))

    # -- Tits cone ----------------------------------------------------------

    def imaginary_witnesses(self) -> tuple[tuple[int, ...], ...]:
        """Small vectors nu >= 0 of full support with <alpha_i^vee, nu> <= 0 for all i.

        Such a nu satisfies ``w nu >= nu`` for every Weyl element, so any y in
        the Tits cone has ``<y, nu> >= 0``, with equality only when y is fixed
        by the whole Weyl group.  These give certificates that a vector lies
        outside the Tits cone.
        """
        with self._lock:
            if "imaginary" in self._cache:
                return self._cache["imaginary"]
        out = []
        n = self.size
        if is_indecomposable(self.gcm) and not is_finite_type(self.gcm):
            bound = max(2, min(6, int(round(5000 ** (1.0 / n)))))
            for nu in itertools.product(range(1, bound + 1), repeat=n):
                if all(sum(self.gcm[i][j] * nu[j] for j in range(n)) <= 0 for i in range(n)):
                    out.append(nu)
        with self._lock:
            self._cache["imaginary"] = tuple(out)
        return tuple(out)


def simply_connected_datum(gcm) -> RootDatum:
    """The minimal realization with coroots the first standard basis vectors.

    ``d = 2|I| - rank(A)``.  The first ``|I|`` coordinates of ``alpha_j`` are
    the j-th column of the GCM; unit vectors fill the remaining rows until the
    roots become independent.
    """
    A = validate_gcm(gcm)
    n = len(A)
    r = matrix_rank(A)
    d = 2 * n - r
    columns = [[A[i][j] for i in range(n)] for j in range(n)]
    stacked = [list(row) for row in A]
    extra_rows: list[list[int]] = []
    current = r
    for k in range(n):
        if current == n:
            break
        candidate = [int(j == k) for j in range(n)]
        if matrix_rank(stacked + [candidate]) > current:
            stacked.append(candidate)
            extra_rows.append(candidate)
            current += 1
    roots = tuple(tuple(columns[j]) + tuple(row[j] for row in extra_rows) for j in range(n))
    coroots = tuple(tuple(int(k == i) for k in range(d)) for i in range(n))
    return RootDatum(A, d, roots, coroots)


def datum_from_json(obj: dict) -> RootDatum:
    """Build a datum from ``{"gcm": ...}`` or an explicit realization."""
    if "gcm" not in obj:
        raise InvalidGCM("root datum JSON needs a 'gcm' entry")
    if "simple_roots" in obj or "simple_coroots" in obj:
        return RootDatum(
            obj["gcm"], int(obj["rank"]), obj["simple_roots"], obj["simple_coroots"]
        )
    realization = obj.get("realization", "simply_connected")
    if realization != "simply_connected":
        raise InvalidGCM(f"unknown realization {realization!r}")
    return simply_connected_datum(obj["gcm"])


# -- dominantization --------------------------------------------------------


@dataclass(frozen=True)
class TitsConeResult:
    """Outcome of dominantizing a vector.

    ``membership`` is ``"interior"`` when the dominant representative has a
    finite fixator, ``"dominant_orbit"`` when it lies in the Tits cone with an
    infinite fixator, and ``"outside"`` when a certificate shows the vector is
    not in the Tits cone.  For members, ``y == v . dominant`` where ``v`` is
    the product of the simple reflections in ``word`` and is minimal.
    """

    membership: str
    dominant: tuple | None
    word: tuple[int, ...] | None
    J: tuple[int, ...] | None

    @property
    def in_cone(self) -> bool:
        return self.membership != "outside"

    @property
    def spherical(self) -> bool:
        return self.membership == "interior"


def dominantize(datum: RootDatum, y: Sequence, step_budget: int = DEFAULT_STEP_BUDGET) -> TitsConeResult:
    """Greedy dominantization of a (possibly rational) Y-vector."""
    cur = tuple(Fraction(a) if isinstance(a, Fraction) else a for a in y)
    word: list[int] = []
    witnesses = None
    for _ in range(step_budget + 1):
        pairings = [pair(cur, datum.simple_roots[i]) for i in range(datum.size)]
        neg = [i for i, c in enumerate(pairings) if c < 0]
        if not neg:
            J = tuple(i for i, c in enumerate(pairings) if c == 0)
            finite = is_finite_type(sub_gcm(datum.gcm, J))
            return TitsConeResult("interior" if finite else "dominant_orbit", cur, tuple(word), J)
        if witnesses is None:
            witnesses = datum.imaginary_witnesses()
        for nu in witnesses:
            if sum(a * b for a, b in zip(nu, pairings)) <= 0:
                return TitsConeResult("outside", None, None, None)
        i = neg[0]
        cur = datum.simple_reflect_y(i, cur)
        word.append(i)
    raise CutoffExceeded(
        f"greedy dominantization did not finish in {step_budget} steps; the vector is "
        "outside the Tits cone or the budget is too small (raise the budget to decide)"
    )


def in_tits_cone(datum: RootDatum, y: Sequence, step_budget: int = DEFAULT_STEP_BUDGET) -> TitsConeResult:
    return dominantize(datum, y, step_budget)

"""The vectorial Weyl group of a root datum.

An element is stored through three integer matrices: its action on X, its
action on Y, and its action on the root lattice in the basis of simple
roots.  Equality and hashing use the X-matrix, which is a faithful
representation.  The root-lattice matrix makes positivity tests cheap: a
root is positive exactly when its simple-root coefficients are non-negative.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import NotSpherical
from .rootdata import (
    DEFAULT_STEP_BUDGET,
    Root,
    RootDatum,
    dominantize,
    is_finite_type,
    pair,
    sub_gcm,
)

Matrix = tuple[tuple[int, ...], ...]


def _identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def _matmul(A: Matrix, B: Matrix) -> Matrix:
    cols = list(zip(*B))
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in cols) for row in A)


def _matvec(A: Matrix, v: Sequence) -> tuple:
    return tuple(sum(a * b for a, b in zip(row, v)) for row in A)


class WeylElt:
    """An element of the vectorial Weyl group."""

    __slots__ = ("group", "mat", "ymat", "rmat", "_length", "_word", "_inverse", "_hash")

    def __init__(self, group: "WeylGroup", mat: Matrix, ymat: Matrix, rmat: Matrix, word=None):
        self.group = group
        self.mat = mat
        self.ymat = ymat
        self.rmat = rmat
        self._word = None if word is None else tuple(word)
        self._length = None
        self._inverse = None
        self._hash = hash(mat)

    def __eq__(self, other) -> bool:
        return isinstance(other, WeylElt) and self.mat == other.mat

    def __hash__(self) -> int:
        return self._hash

    def __mul__(self, other: "WeylElt") -> "WeylElt":
        products = self.group._products
        key = (self, other)
        out = products.get(key)
        if out is None:
            out = self.group._intern(
                WeylElt(
                    self.group,
                    _matmul(self.mat, other.mat),
                    _matmul(self.ymat, other.ymat),
                    _matmul(self.rmat, other.rmat),
                )
            )
            products[key] = out
        return out

    def __repr__(self) -> str:
        word = self.word
        if not word:
            return "e"
        return "s" + "s".join(str(i + 1) for i in word)

    # -- actions -------------------------------------------------------------

    def act_x(self, x: Sequence) -> tuple:
        return _matvec(self.mat, x)

    def act_y(self, y: Sequence) -> tuple:
        return _matvec(self.ymat, y)

    def act_coeffs(self, coeffs: Sequence[int]) -> tuple[int, ...]:
        return _matvec(self.rmat, coeffs)

    def act_root(self, beta: Root) -> Root:
        return Root(
            _matvec(self.rmat, beta.coeffs),
            _matvec(self.mat, beta.coords),
            _matvec(self.ymat, beta.coroot_coords),
        )

    def simple_image_positive(self, i: int) -> bool:
        """Whether ``w(alpha_i)`` is a positive root."""
        return all(row[i] >= 0 for row in self.rmat)

    def root_image_positive(self, beta: Root) -> bool:
        return all(c >= 0 for c in _matvec(self.rmat, beta.coeffs))

    # -- length and words ---------------------------------------------------

    def is_right_descent(self, i: int) -> bool:
        """``l(w s_i) < l(w)``."""
        return not self.simple_image_positive(i)

    def is_left_descent(self, i: int) -> bool:
        """``l(s_i w) < l(w)``."""
        return not self.inverse().simple_image_positive(i)

    def _reduce(self):
        record = []
        cur = self
        while True:
            for i in range(self.group.size):
                if cur.is_right_descent(i):
                    cur = cur * self.group.s(i)
                    record.append(i)
                    break
            else:
                break
        self._length = len(record)
        self._word = tuple(reversed(record))

    @property
    def length(self) -> int:
        if self._length is None:
            self._reduce()
        return self._length

    @property
    def word(self) -> tuple[int, ...]:
        """A reduced word (0-based indices)."""
        if self._word is None or self._length is None:
            self._reduce()
        return self._word

    def inverse(self) -> "WeylElt":
        if self._inverse is None:
            inv = self.group.from_word(tuple(reversed(self.word)))
            inv._inverse = self
            self._inverse = inv
        return self._inverse

    @property
    def is_identity(self) -> bool:
        return self.mat == self.group.e.mat


def length_and_word(w: WeylElt) -> tuple[int, tuple[int, ...]]:
    return w.length, w.word


class WeylGroup:
    """Factory and algorithms for the Weyl group of a datum."""

    def __init__(self, datum: RootDatum):
        self.datum = datum
        self.size = datum.size
        d = datum.rank
        n = datum.size
        self.e = WeylElt(self, _identity(d), _identity(d), _identity(n), word=())
        self.e._length = 0
        self._gens = []
        for i in range(n):
            a, c = datum.simple_roots[i], datum.simple_coroots[i]
            mat = tuple(tuple(int(r == k) - a[r] * c[k] for k in range(d)) for r in range(d))
            ymat = tuple(tuple(int(r == k) - c[r] * a[k] for k in range(d)) for r in range(d))
            rmat = tuple(
                tuple(int(r == j) - (datum.gcm[i][j] if r == i else 0) for j in range(n)) for r in range(n)
            )
            g = WeylElt(self, mat, ymat, rmat, word=(i,))
            g._length = 1
            g._inverse = g
            self._gens.append(g)
        self._leq_cache: dict = {}
        # Products are memoized and elements interned, so lengths, words and
        # inverses are computed once per element.
        self._products: dict = {}
        self._elements: dict = {self.e: self.e}
        for g in self._gens:
            self._elements.setdefault(g, g)

    def _intern(self, elt: WeylElt) -> WeylElt:
        return self._elements.setdefault(elt, elt)

    def s(self, i: int) -> WeylElt:
        return self._gens[i]

    def from_word(self, word: Iterable[int]) -> WeylElt:
        word = tuple(word)
        cur = self.e
        for i in word:
            cur = cur * self._gens[i]
        if cur._word is None:
            cur._word = word
        return cur

    def reflection(self, beta: Root) -> WeylElt:
        """The reflection ``s_beta``, built directly from the root and its coroot."""
        d, n = self.datum.rank, self.size
        a, c = beta.coords, beta.coroot_coords
        mat = tuple(tuple(int(r == k) - a[r] * c[k] for k in range(d)) for r in range(d))
        ymat = tuple(tuple(int(r == k) - c[r] * a[k] for k in range(d)) for r in range(d))
        p = [pair(c, self.datum.simple_roots[j]) for j in range(n)]
        rmat = tuple(tuple(int(r == j) - p[j] * beta.coeffs[r] for j in range(n)) for r in range(n))
        refl = self._intern(WeylElt(self, mat, ymat, rmat))
        refl._inverse = refl
        return refl

    # -- Bruhat order -------------------------------------------------------

    def bruhat_leq(self, u: WeylElt, w: WeylElt) -> bool:
        """Vectorial Bruhat order by the right-descent recursion."""
        key = (u, w)
        hit = self._leq_cache.get(key)
        if hit is not None:
            return hit
        if u.length > w.length:
            res = False
        elif w.length == 0:
            res = u.length == 0
        else:
            i = w.word[-1]
            ws = w * self._gens[i]
            if u.is_right_descent(i):
                res = self.bruhat_leq(u * self._gens[i], ws)
            else:
                res = self.bruhat_leq(u, ws)
        self._leq_cache[key] = res
        return res

    # -- parabolic data -----------------------------------------------------

    def longest_element(self, J: Iterable[int]) -> WeylElt:
        """Longest element of a finite standard parabolic subgroup."""
        J = tuple(sorted(J))
        if not is_finite_type(sub_gcm(self.datum.gcm, J)):
            raise NotSpherical(J)
        cur = self.e
        grown = True
        while grown:
            grown = False
            for j in J:
                if cur.simple_image_positive(j):
                    cur = cur * self._gens[j]
                    grown = True
                    break
        return cur

    def min_left_coset_rep(self, g: WeylElt, J: Iterable[int]) -> WeylElt:
        """Minimal-length element of ``g W_J``."""
        J = tuple(J)
        cur = g
        while True:
            for j in J:
                if cur.is_right_descent(j):
                    cur = cur * self._gens[j]
                    break
            else:
                return cur

    def elements_up_to_length(self, max_length: int) -> list[WeylElt]:
        seen = {self.e}
        layer = [self.e]
        out = [self.e]
        for _ in range(max_length):
            nxt = []
            for w in layer:
                for i in range(self.size):
                    if w.is_right_descent(i):
                        continue
                    u = w * self._gens[i]
                    if u not in seen:
                        seen.add(u)
                        nxt.append(u)
            out.extend(nxt)
            layer = nxt
        return out


@lru_cache(maxsize=None)
def weyl_group(datum: RootDatum) -> WeylGroup:
    return WeylGroup(datum)


@dataclass(frozen=True)
class ParabolicData:
    J: tuple[int, ...]
    w_long: WeylElt | None
    is_spherical: bool


def parabolic_data(datum: RootDatum, lam_dominant: Sequence) -> ParabolicData:
    """Type and longest element of the fixator of a dominant coweight."""
    pairings = [pair(lam_dominant, a) for a in datum.simple_roots]
    if any(c < 0 for c in pairings):
        raise ValueError("parabolic_data expects a dominant coweight")
    J = tuple(i for i, c in enumerate(pairings) if c == 0)
    if not is_finite_type(sub_gcm(datum.gcm, J)):
        raise NotSpherical(J)
    return ParabolicData(J, weyl_group(datum).longest_element(J), True)


def min_coset_rep(datum: RootDatum, lam: Sequence, step_budget: int = DEFAULT_STEP_BUDGET):
    """Return ``(v, lam_pp)`` with ``lam = v . lam_pp``, ``lam_pp`` dominant and ``v`` minimal."""
    res = dominantize(datum, lam, step_budget)
    if not res.in_cone:
        raise ValueError(f"{tuple(lam)} is outside the Tits cone")
    return weyl_group(datum).from_word(res.word), res.dominant

"""Independent reference computations used by the tests.

None of these reuse the recursions they check: roots come from a plain orbit
search on coefficient vectors, R-polynomials from explicit Hecke algebra
products, and Bruhat covers from subword enumeration.
"""

from __future__ import annotations

import itertools
from collections import deque

import sympy

from affrkl.polynomial import IntPoly

Q = sympy.Symbol("q")


def orbit_positive_roots(gcm, height):
    """Positive real roots of height at most ``height`` as coefficient tuples."""
    size = len(gcm)
    simple = [tuple(int(i == j) for j in range(size)) for i in range(size)]
    seen = set(simple)
    queue = deque(simple)
    while queue:
        beta = queue.popleft()
        for i in range(size):
            pairing = sum(gcm[i][j] * beta[j] for j in range(size))
            image = tuple(c - pairing * int(k == i) for k, c in enumerate(beta))
            if all(c >= 0 for c in image) and 0 < sum(image) <= height and image not in seen:
                seen.add(image)
                queue.append(image)
    return seen


# -- Hecke algebra -------------------------------------------------------------------


def _times_generator(element, i, group):
    """Right multiplication by ``T_{s_i}`` in the standard basis."""
    out = {}
    s = group.s(i)
    for w, coeff in element.items():
        ws = w * s
        if ws.length > w.length:
            out[ws] = out.get(ws, 0) + coeff
        else:
            out[w] = out.get(w, 0) + (Q - 1) * coeff
            out[ws] = out.get(ws, 0) + Q * coeff
    return {w: sympy.expand(c) for w, c in out.items() if sympy.expand(c) != 0}


def _times_inverse_generator(element, i, group):
    """Right multiplication by ``T_{s_i}^{-1} = q^{-1} T_{s_i} - (1 - q^{-1})``."""
    shifted = _times_generator(element, i, group)
    out = {w: c / Q for w, c in shifted.items()}
    for w, coeff in element.items():
        out[w] = out.get(w, 0) - (1 - 1 / Q) * coeff
    return {w: sympy.simplify(c) for w, c in out.items() if sympy.simplify(c) != 0}


def hecke_R(u, w) -> IntPoly:
    """``R_{u,w}`` read off ``(T_{w^{-1}})^{-1} = eps_w q^{-l(w)} sum_y eps_y R_{y,w} T_y``."""
    group = w.group
    element = {group.e: sympy.Integer(1)}
    for i in w.word:
        element = _times_inverse_generator(element, i, group)
    coeff = element.get(u, 0)
    sign = (-1) ** (w.length + u.length)
    poly = sympy.Poly(sympy.expand(sign * Q ** w.length * coeff), Q)
    return IntPoly(reversed([int(c) for c in poly.all_coeffs()]))


# -- Bruhat order by subwords --------------------------------------------------------


def subword_elements(w):
    """Every element below ``w``: products over subwords of a reduced word."""
    group = w.group
    out = set()
    for mask in itertools.product((0, 1), repeat=w.length):
        out.add(group.from_word([i for i, keep in zip(w.word, mask) if keep]))
    return out


def bruhat_lower_covers(w):
    return {u for u in subword_elements(w) if u.length == w.length - 1}

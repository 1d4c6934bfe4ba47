"""Spherical R-polynomials on A2 for a small regular coweight, over every reachable mu."""

import itertools

from affrkl.enumeration import SearchBudget
from affrkl.rootdata import simply_connected_datum
from affrkl.rpoly import spherical_R


def main(lam=(2, 2)):
    datum = simply_connected_datum([[2, -1], [-1, 2]])
    budget = SearchBudget(6, 8)
    print(f"lambda = {lam}")
    for mu in itertools.product(range(-2, 3), repeat=2):
        result = spherical_R(lam, mu, datum, budget)
        if not result.poly.is_zero():
            print(f"  mu = {mu!s:<10} R = {result.poly.pretty():<40} terms = {len(result.terms)}")


if __name__ == "__main__":
    main()

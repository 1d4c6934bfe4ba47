"""Covers of one element for the hyperbolic Cartan matrix [[2,-3],[-2,2]].

For each cover y the script prints its certificate, R_{x,y} and, where the
cover path folds inside the segment, the fold time.
"""

from affrkl.affine_weyl import WPlusElt, covers_of
from affrkl.enumeration import SearchBudget
from affrkl.rootdata import simply_connected_datum
from affrkl.rpoly import affine_R


def main():
    datum = simply_connected_datum([[2, -3], [-2, 2]])
    budget = SearchBudget(12, 2)
    x = WPlusElt.from_word(datum, (-3, -4), [1, 0])
    print(f"x = {x!r}")
    for y, cert in covers_of(x, budget.H):
        result = affine_R(x, y, budget, stabilize=True)
        folds = [f.t for p in result.paths for f in p.folds]
        print(
            f"  {y!r:<24} {cert.kind:<20} beta={list(cert.beta.coeffs)} n={cert.n:<3}"
            f" R={result.poly.pretty():<8} fold times={[str(t) for t in folds]} complete={result.complete}"
        )


if __name__ == "__main__":
    main()

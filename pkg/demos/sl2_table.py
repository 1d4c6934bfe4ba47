"""Print R_{x,y} for SL2 next to the classical affine Coxeter polynomial."""

from affrkl.enumeration import SearchBudget
from affrkl.oracle import oracle_table
from affrkl.rootdata import simply_connected_datum


def main():
    rows = oracle_table(simply_connected_datum([[2]]), max_length=4, budget=SearchBudget(6, 8), max_gap=3)
    print(f"{'x':<16}{'y':<16}{'ours':<28}classical")
    for row in rows:
        if row.ours.is_zero() and row.classical.is_zero():
            continue
        print(f"{row.x!r:<16}{row.y!r:<16}{row.ours.pretty():<28}{row.classical.pretty()}")
    print(f"{sum(r.match for r in rows)} of {len(rows)} pairs agree")


if __name__ == "__main__":
    main()

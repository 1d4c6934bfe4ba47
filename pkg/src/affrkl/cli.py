"""Command-line entry point.

Exit status: 0 on success, 1 on invalid input, 2 when a stabilized result is
not confirmed complete, 3 when an oracle or self-test verdict fails.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from .affine_weyl import covers_of, parse_element, require_spherical
from .enumeration import SearchBudget, enumerate_paths
from .errors import AffRKLError
from .oracle import oracle_table
from .paths import chain_lowering_ok, verify_hecke
from .rootdata import RootDatum, datum_from_json, simply_connected_datum
from .rpoly import affine_R, spherical_R

EXIT_OK, EXIT_INPUT, EXIT_INCONCLUSIVE, EXIT_FAILED = 0, 1, 2, 3

SELFTEST_DATA = {
    "A1": [[2]],
    "A2": [[2, -1], [-1, 2]],
    "affine A1": [[2, -2], [-2, 2]],
    "hyperbolic": [[2, -3], [-2, 2]],
}


class InputError(ValueError):
    pass


def load_json_arg(text: str, what: str):
    """Parse ``text`` as JSON, or as the path of a JSON file."""
    if os.path.isfile(text):
        with open(text, encoding="utf-8") as handle:
            text = handle.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{what}: not valid JSON ({exc.msg})") from exc


def load_datum(text: str) -> RootDatum:
    """A bare GCM, or an object accepted by :func:`datum_from_json`."""
    obj = load_json_arg(text, "--datum")
    if isinstance(obj, list):
        return simply_connected_datum(obj)
    if not isinstance(obj, dict):
        raise InputError("--datum: expected a GCM or an object with a 'gcm' entry")
    if "simple_roots" in obj and "rank" not in obj:
        obj = dict(obj, rank=len(obj["simple_roots"][0]))
    try:
        return datum_from_json(obj)
    except (KeyError, TypeError, IndexError) as exc:
        raise InputError(f"--datum: incomplete root datum ({exc})") from exc


def load_element(datum: RootDatum, text: str | None, flag: str):
    if text is None:
        raise InputError(f"{flag} is required")
    obj = load_json_arg(text, flag)
    if not isinstance(obj, dict):
        raise InputError(f'{flag}: expected {{"lambda": [...], "word": [...]}}')
    lam = obj.get("lambda", [0] * datum.rank)
    if len(lam) != datum.rank:
        raise InputError(f"{flag}: lambda needs {datum.rank} coordinates")
    return parse_element(datum, obj)


def load_vector(datum: RootDatum, text: str | None, flag: str) -> tuple:
    if text is None:
        raise InputError(f"{flag} is required")
    vec = load_json_arg(text, flag)
    if not isinstance(vec, list) or len(vec) != datum.rank:
        raise InputError(f"{flag}: expected a list of {datum.rank} integers")
    return tuple(int(a) for a in vec)


# -- subcommands -----------------------------------------------------------------------


def cmd_covers(args, datum, budget):
    x = load_element(datum, args.x, "--x")
    covers = covers_of(x, budget.H)
    complete = None
    if args.stabilize:
        complete = [y for y, _ in covers_of(x, 2 * budget.H)] == [y for y, _ in covers]
    report = {
        "x": x.to_json(),
        "budget": budget.to_json(),
        "complete": complete,
        "covers": [{"y": y.to_json(), "certificate": cert.to_json()} for y, cert in covers],
    }
    rows = [
        [json.dumps(y.lam), _word(y), cert.kind, json.dumps(list(cert.beta.coeffs)), cert.n] for y, cert in covers
    ]
    return report, ["lambda", "word", "kind", "beta", "n"], rows, _status(complete, args.stabilize)


def cmd_paths(args, datum, budget):
    x = load_element(datum, args.x, "--x")
    y = None if args.y is None else load_element(datum, args.y, "--y")
    result = enumerate_paths(x, y, budget, stabilize=args.stabilize)
    rows = [
        [json.dumps(p.to_json()["end_alcove"]), len(p.folds), json.dumps([f.to_json() for f in p.folds])]
        for p in result.paths
    ]
    return result.to_json(), ["end", "folds", "folding_data"], rows, _status(result.complete, args.stabilize)


def cmd_rpoly(args, datum, budget):
    x = load_element(datum, args.x, "--x")
    y = load_element(datum, args.y, "--y")
    require_spherical(x)
    result = affine_R(x, y, budget, stabilize=args.stabilize)
    rows = [[i, c] for i, c in enumerate(result.poly.coeffs)]
    return result.to_json(), ["degree", "coefficient"], rows, _status(result.complete, args.stabilize)


def cmd_rpoly_spherical(args, datum, budget):
    lam = load_vector(datum, args.lam, "--lambda")
    mu = load_vector(datum, args.mu, "--mu")
    result = spherical_R(lam, mu, datum, budget, stabilize=args.stabilize)
    rows = [[_word_of(w), _word_of(v), json.dumps(list(r.coeffs))] for w, v, r in result.terms]
    return result.to_json(), ["w", "v", "R"], rows, _status(result.complete, args.stabilize)


def cmd_oracle(args, datum, budget):
    table = oracle_table(datum, args.max_length, budget, stabilize=args.stabilize)
    matches = sum(row.match for row in table)
    verdict = "MATCH" if matches == len(table) else "MISMATCH"
    report = {
        "verdict": verdict,
        "pairs": len(table),
        "matches": matches,
        "budget": budget.to_json(),
        "rows": [row.to_json() for row in table],
    }
    rows = [
        [json.dumps(r.x.to_json()), json.dumps(r.y.to_json()), r.ours.pretty(), r.classical.pretty(), r.match]
        for r in table
    ]
    status = EXIT_OK if verdict == "MATCH" else EXIT_FAILED
    if status == EXIT_OK and args.stabilize and not all(r.complete for r in table):
        status = EXIT_INCONCLUSIVE
    return report, ["x", "y", "ours", "classical", "match"], rows, status


def cmd_selftest(args, datum, budget):
    checks = run_selftest(budget)
    ok = all(passed for _, passed, _ in checks)
    report = {"passed": ok, "budget": budget.to_json(), "checks": [{"name": n, "passed": p, "detail": d} for n, p, d in checks]}
    rows = [[n, p, d] for n, p, d in checks]
    return report, ["check", "passed", "detail"], rows, EXIT_OK if ok else EXIT_FAILED


def run_selftest(budget: SearchBudget) -> list[tuple[str, bool, str]]:
    """A fast sweep of the identity law, the cover law, path validity and the rank-one oracle."""
    from .affine_weyl import WPlusElt
    from .weyl import weyl_group

    checks = []
    for name, gcm in SELFTEST_DATA.items():
        datum = simply_connected_datum(gcm)
        group = weyl_group(datum)
        samples = [WPlusElt(datum, w.act_y(_dominant_sample(datum)), w) for w in group.elements_up_to_length(2)]
        samples = [x for x in samples if x.is_spherical]
        identity = all(affine_R(x, x, budget).poly == 1 for x in samples)
        checks.append((f"identity law on {name}", identity, f"{len(samples)} elements"))
        covers = [(x, y) for x in samples[:3] for y, _ in covers_of(x, budget.H)]
        cover_ok = all(affine_R(x, y, budget).poly.coeffs == (-1, 1) for x, y in covers)
        checks.append((f"cover law on {name}", cover_ok, f"{len(covers)} covers"))
        # a sample, not a complete enumeration: unconstrained paths grow fast with the height
        sample_budget = SearchBudget(min(budget.H, 4), 2)
        paths = [p for x in samples[:3] for p in enumerate_paths(x, None, sample_budget).paths]
        valid = all(verify_hecke(p, sample_budget.H) and chain_lowering_ok(p) for p in paths)
        checks.append((f"path validity on {name}", valid, f"{len(paths)} paths"))
    table = oracle_table(simply_connected_datum([[2]]), 4, budget)
    checks.append(("classical oracle on A1", all(r.match for r in table), f"{len(table)} pairs"))
    return checks


def _dominant_sample(datum: RootDatum) -> tuple:
    """A small regular dominant coweight, found by scanning a box."""
    import itertools

    from .rootdata import pair

    for radius in range(1, 6):
        for lam in itertools.product(range(-radius, radius + 1), repeat=datum.rank):
            if all(pair(lam, a) > 0 for a in datum.simple_roots):
                return lam
    raise InputError("no regular dominant coweight found in the search box")


def _word(x) -> str:
    return _word_of(x.w)


def _word_of(w) -> str:
    return " ".join(str(i + 1) for i in w.word)


def _status(complete, stabilize: bool) -> int:
    if stabilize and not complete:
        return EXIT_INCONCLUSIVE
    return EXIT_OK


COMMANDS = {
    "covers": cmd_covers,
    "paths": cmd_paths,
    "rpoly": cmd_rpoly,
    "rpoly-spherical": cmd_rpoly_spherical,
    "oracle": cmd_oracle,
    "selftest": cmd_selftest,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="affrkl", description="Affine R-Kazhdan-Lusztig polynomials from open paths.")
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("--datum", help="GCM or datum as JSON, inline or as a file path")
    parser.add_argument("--x", help='element as JSON: {"lambda": [...], "word": [...]} (1-based word)')
    parser.add_argument("--y", help="second element, same syntax as --x")
    parser.add_argument("--lambda", dest="lam", help="dominant coweight as a JSON list")
    parser.add_argument("--mu", help="coweight as a JSON list")
    parser.add_argument("--height", type=int, default=6, help="root height cutoff H")
    parser.add_argument("--max-folds", type=int, default=8, help="fold count cutoff F")
    parser.add_argument("--max-length", type=int, default=5, help="oracle: Coxeter length bound")
    parser.add_argument("--stabilize", action="store_true", help="re-run with doubled cutoffs and flag completeness")
    parser.add_argument("--format", choices=["json", "csv", "pretty"], default="json")
    return parser


def render(report: dict, header: list, rows: list, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2) + "\n"
    if fmt == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
        return buffer.getvalue()
    lines = []
    for key, value in report.items():
        if isinstance(value, (list, dict)):
            continue
        lines.append(f"{key}: {value}")
    widths = [max([len(str(h))] + [len(str(r[k])) for r in rows]) for k, h in enumerate(header)]
    lines.append("  ".join(str(h).ljust(wd) for h, wd in zip(header, widths)))
    for row in rows:
        lines.append("  ".join(str(c).ljust(wd) for c, wd in zip(row, widths)))
    return "\n".join(lines) + "\n"


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        budget = SearchBudget(args.height, args.max_folds)
        if args.command == "selftest":
            datum = None
        elif args.datum is None:
            raise InputError("--datum is required")
        else:
            datum = load_datum(args.datum)
        report, header, rows, status = COMMANDS[args.command](args, datum, budget)
    except (AffRKLError, InputError, ValueError) as exc:
        payload = exc.to_json() if isinstance(exc, AffRKLError) else {"error": "InputError", "message": str(exc)}
        sys.stderr.write(json.dumps(payload) + "\n")
        return EXIT_INPUT
    sys.stdout.write(render(report, header, rows, args.format))
    return status


if __name__ == "__main__":
    sys.exit(main())

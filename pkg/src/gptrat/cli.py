"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 file parse error, 3 validation
error, 4 I/O error.  Scalar results print with 9 decimal places; structured
results print as JSON with sorted keys, so output is byte-stable across runs.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import InputError, ParseError, ValidationError
from .io import measurement_from_file, theory_from_file
from .jointness import check_compatible, incompatibility_degree
from .linalg import EPS
from .polygons import (
    parity_class,
    polygon_compatible_max,
    polygon_rat_closed_form,
    sweep,
    verify_table,
)
from .rat import certify_incompatibility, classical_rac_value, compatible_bound, rat_success
from .storability import decoding_power, information_storability
from .zoo import polygon


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="gptrat", description=__doc__)
    parser.add_argument(
        "--tolerance",
        type=float,
        default=EPS,
        help="validation tolerance for file-loaded objects (default 1e-9)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_poly = sub.add_parser("polygon", help="closed-form quantities of the regular n-gon")
    p_poly.add_argument("n", type=int)
    p_poly.add_argument(
        "quantity", choices=["lmax", "rat-max", "comp-max", "verify-table"]
    )
    p_poly.set_defaults(func=cmd_polygon)

    p_rat = sub.add_parser("rat", help="random access test of measurements from files")
    p_rat.add_argument("--theory", required=True)
    p_rat.add_argument("--measurement", action="append", required=True)
    p_rat.set_defaults(func=cmd_rat)

    p_compat = sub.add_parser("compat", help="joint measurement feasibility")
    p_compat.add_argument("--theory", required=True)
    p_compat.add_argument("--measurement", action="append", required=True)
    p_compat.set_defaults(func=cmd_compat)

    p_degree = sub.add_parser("degree", help="degree of incompatibility of a pair")
    p_degree.add_argument("--theory", required=True)
    p_degree.add_argument("--measurement", action="append", required=True)
    p_degree.set_defaults(func=cmd_degree)

    p_sweep = sub.add_parser("sweep", help="per-n polygon summary as CSV")
    p_sweep.add_argument("--min", type=int, required=True)
    p_sweep.add_argument("--max", type=int, required=True)
    p_sweep.add_argument("--out", required=True)
    p_sweep.set_defaults(func=cmd_sweep)
    return parser


def cmd_polygon(args) -> int:
    n = args.n
    if args.quantity == "lmax":
        value = information_storability(polygon(n)).value
    elif args.quantity == "rat-max":
        value = polygon_rat_closed_form(n)
    elif args.quantity == "comp-max":
        value = polygon_compatible_max(n)
    else:
        report = verify_table(n)
        print(f"n={report.n} class={report.parity} expected={report.expected:.9f}")
        for v in report.variants:
            states = ",".join(str(j) for j in v.state_labels)
            flag = "ok" if v.ok else "MISMATCH"
            print(f"f={v.f_label} t=({states}) value={v.value:.9f} {flag}")
        for note in report.skipped:
            print(f"skipped: {note}")
        for note in report.discrepancies:
            print(f"discrepancy: {note}")
        good = sum(1 for v in report.variants if v.ok)
        print(
            f"summary: {good}/{len(report.variants)} variants ok, "
            f"{len(report.skipped)} skipped, {len(report.discrepancies)} discrepancies"
        )
        return 0 if report.all_ok else 3
    print(f"{value:.9f}")
    if n >= 4:
        print(f"class: {parity_class(n)}")
    return 0


def _load_pair(args, expected=None):
    theory = theory_from_file(args.theory, args.tolerance)
    if expected is not None and len(args.measurement) != expected:
        raise _UsageError(f"expected exactly {expected} --measurement arguments")
    ms = [measurement_from_file(p, theory, args.tolerance) for p in args.measurement]
    return theory, ms


def cmd_rat(args) -> int:
    theory, ms = _load_pair(args)
    report = rat_success(ms, theory)
    counts = report.outcome_counts
    h = report.k / sum(1.0 / c for c in counts)
    storability = information_storability(theory).value
    bounds = {
        "power_average": sum(decoding_power(m, theory) / c for m, c in zip(ms, counts))
        / report.k,
        "storability_over_harmonic_mean": storability / h,
    }
    if len(set(counts)) == 1:
        bounds["classical"] = classical_rac_value(report.k, counts[0])[0]
    payload = {
        "theory": theory.name,
        "k": report.k,
        "outcome_counts": list(counts),
        "p_bar": report.p_bar,
        "per_tuple": [
            {"outcomes": list(labels), "norm": norm, "argmax_vertex": arg}
            for labels, (norm, arg) in report.per_tuple.items()
        ],
        "bounds": bounds,
    }
    if report.k == 2:
        bounds["compatible_pair"] = compatible_bound(counts[0], counts[1], storability)
        cert = certify_incompatibility(ms[0], ms[1], theory)
        payload["certificate"] = {
            "lhs": cert.lhs,
            "threshold": cert.threshold,
            "useful": cert.useful,
            "verdict": cert.verdict,
        }
    print(json.dumps(payload, indent=2, sort_keys=True))
    return 0


def cmd_compat(args) -> int:
    theory, ms = _load_pair(args)
    if len(ms) < 2:
        raise _UsageError("need at least two --measurement arguments")
    witness = check_compatible(ms, theory, args.tolerance)
    if witness is None:
        payload = {"compatible": False}
    else:
        payload = {
            "compatible": True,
            "marginal_residuals": list(witness.marginal_residuals),
        }
    print(json.dumps(payload, indent=2, sort_keys=True))
    return 0


def cmd_degree(args) -> int:
    theory, ms = _load_pair(args, expected=2)
    report = incompatibility_degree(ms[0], ms[1], theory)
    payload = {
        "degree": report.degree,
        "bisection_iters": report.bisection_iters,
        "optimal_trivials": [list(map(float, p)) for p in report.optimal_trivials],
    }
    print(json.dumps(payload, indent=2, sort_keys=True))
    return 0


def cmd_sweep(args) -> int:
    rows = sweep(args.min, args.max)
    lines = ["n,parity_class,closed_form,brute_force,compatible_max,lmax"]
    for row in rows:
        lines.append(
            f"{row.n},{row.parity},{row.closed_form:.9f},{row.brute_force:.9f},"
            f"{row.compatible_max:.9f},{row.lmax:.9f}"
        )
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")
    return 0


def main(argv=None) -> int:
    try:
        args = _build_parser().parse_args(argv)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    if args.tolerance <= 0:
        print("usage error: --tolerance must be positive", file=sys.stderr)
        return 1
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except InputError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except ValidationError as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())

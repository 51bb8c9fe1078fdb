"""Command line interface.

Exit codes: 0 success, 2 validation failure, 3 budget exhausted (partial
results are still written).
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from collections import defaultdict
from fractions import Fraction

from .census import CensusError, compare, ingest_census
from .explorer import Budget, build_tree, explore_ipads, entries_from, export_dot, export_json
from .fingerprint import Fingerprint, fingerprint_of
from .freetower import build_free_quotient
from .ipad import Ipad
from .measure import brute_force_meas_c, monte_carlo_counts
from .pc.presentation import BoundExceeded, InconsistentPresentation

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_BUDGET = 3


class BudgetExhausted(Exception):
    """Raised after partial results have been written."""


def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, default=3, help="odd prime (default 3)")
    common.add_argument("--g", type=int, default=2, help="generator rank (default 2)")
    common.add_argument("--max-class", type=int, default=None,
                        help="largest p-class (default 3; unbounded for IPAD exploration)")
    common.add_argument("--max-order", type=int, default=None, help="largest order exponent")
    common.add_argument("--threads", type=int, default=1, help="worker processes")
    common.add_argument("--seed", type=int, default=0, help="sampling seed")
    common.add_argument("--out", default=None, help="output path (default stdout)")
    common.add_argument("--format", choices=("json", "dot", "csv"), default="json")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="sigmagroups", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    fq = sub.add_parser("free-quotient", parents=[common], help="shape of F_c, Phi, X_c, Y_c")
    fq.add_argument("--class", dest="c", type=int, default=None, help="class c (default --max-class)")

    gr = sub.add_parser("group-report", parents=[common], help="invariants and Schur+1 class of a group")
    src = gr.add_mutually_exclusive_group(required=True)
    src.add_argument("--pc", help="file with a pc presentation")
    src.add_argument("--node", help="node id in the ancestor tree, e.g. R.2.4")

    tr = sub.add_parser("tree", parents=[common], help="measured descendant tree (json or dot)")
    tr.add_argument("--filter", choices=("ancestors", "all"), default="ancestors")

    it = sub.add_parser("ipad-table", parents=[common], help="IPAD measures by pruned exploration")
    it.add_argument("--targets", nargs="*", default=None, help="IPAD strings to track")
    it.add_argument("--verify-stable", action="store_true", help="explore stable branches to check them")
    it.add_argument("--audit", default=None, help="write credits, pruned and open nodes here")

    orc = sub.add_parser("oracle", help="relator-tuple oracles")
    osub = orc.add_subparsers(dest="mode", required=True)
    ex = osub.add_parser("exhaust", parents=[common], help="all tuples, exact frequencies")
    ex.add_argument("--class", dest="c", type=int, default=None)
    sa = osub.add_parser("sample", parents=[common], help="seeded Monte-Carlo frequencies")
    sa.add_argument("--class", dest="c", type=int, default=None)
    sa.add_argument("-n", type=int, default=10000, help="number of samples")
    sa.add_argument("--expected", action="store_true", help="add formula values from the tree")

    ce = sub.add_parser("census", parents=[common], help="observed census versus predicted measures")
    ce.add_argument("--csv", default=None, help="census CSV (default: bundled table)")
    return parser


def _emit(args, text: str) -> None:
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _frac(x: Fraction) -> dict:
    return {"num": x.numerator, "den": x.denominator}


def _max_class(args) -> int:
    return args.max_class if args.max_class is not None else 3


def _require_format(args, *allowed: str) -> None:
    if args.format not in allowed:
        raise ValueError(f"--format {args.format} not supported here (use {' or '.join(allowed)})")


def cmd_free_quotient(args) -> None:
    _require_format(args, "json")
    c = args.c if args.c is not None else _max_class(args)
    _emit(args, _dump(build_free_quotient(args.p, args.g, c).to_dict()))


def cmd_group_report(args) -> None:
    from .pc.consistency import standardize
    from .pc.textio import parse_presentation
    from .pcover import p_cover
    from .sigma import classify_with_sigma, cover_sigma, find_gi_automorphism, y_exponent
    _require_format(args, "json")
    if args.node:
        tree = build_tree(args.p, args.g, _max_class(args), args.max_order)
        node = tree.nodes.get(args.node)
        if node is None:
            raise ValueError(f"no node {args.node} in the tree (class <= {_max_class(args)})")
        d = node.to_dict()
        report = {k: d[k] for k in ("order_exp", "p_class", "d", "r", "h", "y", "aut_sigma_order",
                                    "schur_class", "ipad", "meas_c", "meas")}
    else:
        with open(args.pc) as fh:
            pres = parse_presentation(fh.read())
        if not pres.has_definitions():
            pres, _ = standardize(pres)
        cd = p_cover(pres)
        sd = find_gi_automorphism(pres)
        report = {"order_exp": pres.n, "p_class": pres.p_class, "d": pres.d, "r": cd.r, "h": cd.h,
                  "y": None, "aut_sigma_order": None, "schur_class": "None"}
        if sd is not None:
            cs = cover_sigma(sd.sigma, cd)
            report.update(y=pres.p ** y_exponent(sd.sigma), aut_sigma_order=sd.aut_sigma_order,
                          schur_class=classify_with_sigma(sd.sigma, cs).value)
    _emit(args, _dump(report))


def cmd_tree(args) -> None:
    _require_format(args, "json", "dot")
    tree = build_tree(args.p, args.g, _max_class(args), args.max_order, args.filter == "ancestors")
    _emit(args, export_json(tree) if args.format == "json" else export_dot(tree))
    if not tree.complete:
        raise BudgetExhausted(f"order budget reached below {', '.join(tree.frontier)}")


def _ipad_entries(args, targets):
    budget = Budget(max_order=args.max_order if args.max_order is not None else 8,
                    max_class=args.max_class if args.max_class is not None else 99)
    ex = explore_ipads(args.p, args.g, budget, targets, args.threads,
                       getattr(args, "verify_stable", False))
    if ex.stable_violations:
        raise AssertionError(f"stable branch changed IPAD at {ex.stable_violations}")
    return ex, entries_from(ex, targets)


def cmd_ipad_table(args) -> None:
    _require_format(args, "json", "csv")
    targets = [Ipad.parse(t, args.p) for t in args.targets] if args.targets else None
    ex, entries = _ipad_entries(args, targets)
    if args.format == "json":
        rows = [{k: v for k, v in e.to_dict().items() if k != "nodes"} for e in entries]
        _emit(args, _dump(rows))
    else:
        lines = ["ipad,num,den,decimal,status"]
        lines += [f'"{e.ipad}",{e.measure.numerator},{e.measure.denominator},{e.to_dict()["decimal"]},{e.status}'
                  for e in entries]
        _emit(args, "\n".join(lines) + "\n")
    if args.audit:
        with open(args.audit, "w") as fh:
            fh.write(_dump({
                "credits": [{"ipad": str(i), **_frac(m), "node": n, "reason": r} for i, m, n, r in ex.credits],
                "pruned": [{"ipad": str(i), **_frac(m), "node": n} for i, m, n in ex.pruned],
                "open": [{"ipad": str(i), "node": n} for i, n in ex.open_nodes],
                "visited": ex.visited,
            }))
    if any(e.status != "exact" for e in entries if targets is None or e.ipad in targets):
        raise BudgetExhausted("some entries are lower bounds")


def _expected_fingerprints(p: int, g: int, c: int) -> dict[Fingerprint, Fraction]:
    """Formula frequency of each fingerprint among F_c / <tuple>: Meas_c of
    class-c ancestors plus the stable Meas of smaller Schur+1 groups."""
    tree = build_tree(p, g, c)
    if not tree.complete:
        raise BoundExceeded("class tree incomplete")
    out: dict[Fingerprint, Fraction] = defaultdict(Fraction)
    for n in tree.nodes.values():
        m = n.meas_c if n.p_class == c else n.meas
        if m:
            out[Fingerprint(n.order_exp, n.p_class, str(n.ipad), round(math.log(n.y, p)))] += m
    return dict(out)


def cmd_oracle(args) -> None:
    from .sigma import find_gi_automorphism
    _require_format(args, "json")
    c = args.c if args.c is not None else _max_class(args)
    fq = build_free_quotient(args.p, args.g, c)
    if args.mode == "exhaust":
        out: dict[str, dict] = {}
        for cl in brute_force_meas_c(fq):
            sd = find_gi_automorphism(cl.pres, with_aut_order=False)
            key = str(fingerprint_of(cl.pres, sd.sigma))
            e = out.setdefault(key, {"measure": Fraction(0), "classes": 0})
            e["measure"] += cl.measure
            e["classes"] += 1
        _emit(args, _dump({k: {**_frac(v["measure"]), "classes": v["classes"]} for k, v in out.items()}))
        return
    res = monte_carlo_counts(fq, args.n, args.seed, threads=args.threads)
    expected = _expected_fingerprints(args.p, args.g, c) if args.expected else {}
    doc = {}
    for fp in sorted(set(res.counts) | set(expected)):
        cnt = res.counts.get(fp, 0)
        est = cnt / args.n
        row = {"estimate": est, "stderr": math.sqrt(est * (1 - est) / args.n), "n": args.n}
        if fp in expected:
            e = expected[fp]
            se = math.sqrt(float(e) * (1 - float(e)) / args.n)
            row.update(expected=_frac(e), z=(est - float(e)) / se if se else 0.0)
        doc[str(fp)] = row
    _emit(args, _dump(doc))


def cmd_census(args) -> None:
    _require_format(args, "json", "csv")
    if args.csv:
        with open(args.csv) as fh:
            records = ingest_census(fh, args.p)
    else:
        records = ingest_census(None, args.p)
    targets = [Ipad.parse(r.ipad, args.p) for r in records if not r.is_other]
    _, entries = _ipad_entries(args, targets)
    report = compare(records, entries)
    _emit(args, _dump(report.to_dicts()) if args.format == "json" else report.to_csv())
    if any(r.status != "exact" for r in report.rows):
        raise BudgetExhausted("some predictions are not exact")


COMMANDS = {
    "free-quotient": cmd_free_quotient,
    "group-report": cmd_group_report,
    "tree": cmd_tree,
    "ipad-table": cmd_ipad_table,
    "oracle": cmd_oracle,
    "census": cmd_census,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.p < 3 or any(args.p % q == 0 for q in range(2, int(args.p ** 0.5) + 1)):
            raise ValueError("--p must be an odd prime")
        if args.g < 1:
            raise ValueError("--g must be positive")
        COMMANDS[args.command](args)
    except BudgetExhausted as e:
        print(f"budget exhausted: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except BoundExceeded as e:
        print(f"budget exhausted: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except (ValueError, CensusError, InconsistentPresentation, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

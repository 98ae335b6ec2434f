"""Command-line interface.

Exit codes: 0 success / predicate holds, 1 predicate or verification
failure, 2 inconclusive search, 3 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from lostpos.core import Word, WordError, parse_word
from lostpos.density import check_pd, density_bound, format_decimal, parse_threshold
from lostpos.fixtures import wmax, wmax_path
from lostpos.periodicity import RHO_MAX_N, enumerate_runs, rho_max
from lostpos.positions import CHARGED, LEFT_OPEN, LOST, RIGHT_OPEN, analyze
from lostpos.search import DEFAULT_MAX_LEN, DEFAULT_MAX_NODES, search_nd, verify_longest

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INCONCLUSIVE = 2
EXIT_USAGE = 3

_CLASS_MARK = {CHARGED: "C", RIGHT_OPEN: "R", LEFT_OPEN: "<", LOST: "x"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def read_word(arg: str) -> Word:
    """Inline word, or ``@path`` to read one from a file."""
    try:
        if arg.startswith("@"):
            text = Path(arg[1:]).read_text()
        else:
            text = arg
        return parse_word(text)
    except (OSError, WordError) as exc:
        raise UsageError(str(exc)) from exc


def read_threshold(text: str):
    try:
        return parse_threshold(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _emit(obj: dict) -> None:
    print(json.dumps(obj, sort_keys=True))


def _grid(header: list[str], rows: list[list[str]]) -> str:
    width = max(len(x) for row in rows for x in row)
    lines = []
    for label, row in zip(header, rows):
        lines.append(f"{label:>5} " + " ".join(x.rjust(width) for x in row))
    return "\n".join(lines)


def render_table(table) -> str:
    w = table.word
    n = len(w)
    if n < 2:
        return f"{w}\nno classified positions"
    cols = {"w": [str(c) for c in w.letters], "i": [str(i) for i in range(1, n + 1)]}
    for key in ("L", "D", "ST", "E"):
        cols[key] = ["×"] + [str(getattr(r, key)) for r in table.rows]
    cols["class"] = ["×"] + [_CLASS_MARK[k.label] for k in table.classes]
    out = _grid(list(cols), list(cols.values()))
    legend = "class: C charged, R right-open, < left-open, x lost"
    return f"{out}\n{legend}"


def cmd_analyze(args) -> int:
    w = read_word(args.word)
    if not len(w):
        raise UsageError("empty word")
    table = analyze(w)
    if args.json:
        _emit({"command": "analyze", "word": str(w), "rows": table.as_records()})
    else:
        print(render_table(table))
    return EXIT_OK


def cmd_runs(args) -> int:
    w = read_word(args.word)
    if not len(w):
        raise UsageError("empty word")
    runs = enumerate_runs(w)
    if args.json:
        _emit({"command": "runs", "word": str(w),
               "runs": [[r.start, r.end, r.period] for r in runs]})
    else:
        for r in runs:
            print(f"({r.start}, {r.end}, {r.period})")
        print(f"{len(runs)} runs")
    return EXIT_OK


def cmd_check_pd(args) -> int:
    d = read_threshold(args.d)
    w = read_word(args.word)
    if not len(w):
        raise UsageError("empty word")
    v = check_pd(w, d)
    if args.json:
        _emit({"command": "check-pd", "d": f"{d.numerator}/{d.denominator}", "length": len(w),
               "holds": v.holds, "lost": v.lost, "violation": v.violation})
    else:
        print(f"P_d with d={d} on |w|={len(w)}: {'holds' if v.holds else 'fails'}")
        print(f"lost positions (k={len(v.lost)}): {' '.join(map(str, v.lost)) or '-'}")
        if v.violation is not None:
            p = v.lost[v.violation - 1]
            print(f"first violation at i={v.violation}: p_i - 1 = {p - 1} < {v.violation}*d")
    return EXIT_OK if v.holds else EXIT_FAIL


def cmd_search(args) -> int:
    d = read_threshold(args.d)
    if d < 0:
        raise UsageError("d must be nonnegative")

    def progress(word, nodes, nd, rate):
        print(f"word={word} nodes={nodes} nd={nd} rate={rate:,.0f}/s", file=sys.stderr)

    res = search_nd(d, max_len=args.max_len, max_nodes=args.max_nodes,
                    progress=progress if args.progress else None,
                    snapshot=args.snapshot, jobs=args.jobs)
    if args.json:
        obj = res.as_dict()
        if not args.emit_longest:
            obj["longest"] = []
        _emit({"command": "search", **obj})
    else:
        status = "conclusive" if res.conclusive else f"inconclusive ({res.reason} guard)"
        print(f"N_d={res.n_d} tree={res.tree_size} {status}")
        print(f"elapsed={res.elapsed:.3f}s nodes/sec={res.nodes_per_sec:,.0f}")
        if args.emit_longest:
            for w in res.longest:
                print(w)
    return EXIT_OK if res.conclusive else EXIT_INCONCLUSIVE


def cmd_bound(args) -> int:
    d = read_threshold(args.d)
    try:
        b = density_bound(d)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if args.json:
        _emit({"command": "bound", "d": f"{d.numerator}/{d.denominator}",
               "bound": f"{b.numerator}/{b.denominator}", "decimal": format_decimal(b)})
    else:
        print(f"{b.numerator}/{b.denominator} ≈ {format_decimal(b)}")
    return EXIT_OK


def cmd_rho(args) -> int:
    if not 1 <= args.max_n <= RHO_MAX_N:
        raise UsageError(f"--max-n must be in 1..{RHO_MAX_N}")
    table = []
    for n in range(1, args.max_n + 1):
        count, witnesses = rho_max(n)
        table.append({"n": n, "rho": count, "witness": str(witnesses[0]),
                      "witnesses": len(witnesses)})
    if args.json:
        _emit({"command": "rho", "max_n": args.max_n, "rows": table})
    else:
        print(f"{'n':>3} {'rho':>4}  witness")
        for row in table:
            print(f"{row['n']:>3} {row['rho']:>4}  {row['witness']}")
    return EXIT_OK


def cmd_verify_longest(args) -> int:
    d = read_threshold(args.d)
    w = read_word(args.word) if args.word else wmax()
    rep = verify_longest(w, d)
    checks = {
        "pd_holds": rep.verdict.holds,
        "ext0_fails": not rep.ext0.holds,
        "ext1_fails": not rep.ext1.holds,
    }
    bundled = w == wmax()
    if bundled:
        s = str(w)
        hits = [k + 1 for k in range(len(s) - 2) if s[k : k + 3] == "000"]
        checks["unique_000_at_32_34"] = hits == [32]
    ok = all(checks.values())
    if args.json:
        _emit({"command": "verify-longest", "d": f"{d.numerator}/{d.denominator}",
               "length": len(w), "bundled_wmax": bundled, "checks": checks,
               "maximal": rep.maximal, "ok": ok})
    else:
        print(f"|w|={len(w)} d={d}")
        for name, passed in checks.items():
            print(f"  {name}: {'pass' if passed else 'FAIL'}")
        if not rep.verdict.holds:
            print("P_d fails")
        elif rep.maximal:
            print("maximal witness confirmed")
        else:
            print("not maximal")
    return EXIT_OK if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="lostpos", description="Lost positions, P_d and the N_d search for binary words.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    a = sub.add_parser("analyze", help="per-position parameters and classes")
    a.add_argument("word", help="binary word or @file")
    a.add_argument("--json", action="store_true")
    a.set_defaults(func=cmd_analyze)

    a = sub.add_parser("runs", help="list runs (start, end, period)")
    a.add_argument("word")
    a.add_argument("--json", action="store_true")
    a.set_defaults(func=cmd_runs)

    a = sub.add_parser("check-pd", help="evaluate P_d on a word")
    a.add_argument("--d", required=True)
    a.add_argument("word")
    a.add_argument("--json", action="store_true")
    a.set_defaults(func=cmd_check_pd)

    a = sub.add_parser("search", help="compute N_d by the pruned tree search")
    a.add_argument("--d", required=True)
    a.add_argument("--max-len", type=int, default=DEFAULT_MAX_LEN)
    a.add_argument("--max-nodes", type=int, default=DEFAULT_MAX_NODES)
    a.add_argument("--progress", action="store_true", help="report every 10^6 nodes on stderr")
    a.add_argument("--snapshot", metavar="PATH", help="keep a one-line progress file")
    a.add_argument("--emit-longest", action="store_true")
    a.add_argument("--jobs", type=int, default=1)
    a.add_argument("--json", action="store_true")
    a.set_defaults(func=cmd_search)

    a = sub.add_parser("bound", help="the bound 1 - 1/d")
    a.add_argument("--d", required=True)
    a.add_argument("--json", action="store_true")
    a.set_defaults(func=cmd_bound)

    a = sub.add_parser("rho", help="brute-force maximum run counts")
    a.add_argument("--max-n", type=int, required=True)
    a.add_argument("--json", action="store_true")
    a.set_defaults(func=cmd_rho)

    a = sub.add_parser("verify-longest", help="check a maximal P_d witness")
    a.add_argument("--d", required=True)
    a.add_argument("word", nargs="?", help=f"word or @file (default: bundled {wmax_path().name})")
    a.add_argument("--json", action="store_true")
    a.set_defaults(func=cmd_verify_longest)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits on --help (0) and on bad usage (3, see _Parser)
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"lostpos {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

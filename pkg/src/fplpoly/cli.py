"""Command-line entry point: ``fplpoly <subcommand> ...``."""

import argparse
import csv
import io
import json
import sys

from . import cache as _cache
from . import codec, fpl_grid, lgv, region_fpl, zuber

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _matching(text):
    try:
        return codec.parse_matching(text)
    except codec.ParseError as exc:
        raise UsageError(f"bad matching {text!r}: {exc}") from None


def _emit(report, args):
    fmt = getattr(args, "format", "json")
    if fmt == "json":
        text = json.dumps(report, indent=2, sort_keys=False) + "\n"
    elif fmt == "csv":
        rows = report.get("rows", [])
        buf = io.StringIO()
        if rows:
            w = csv.DictWriter(buf, fieldnames=list(rows[0]))
            w.writeheader()
            w.writerows(rows)
        text = buf.getvalue()
    else:
        text = "".join(f"{k}: {v}\n" for k, v in report.items() if k != "rows")
        for r in report.get("rows", []):
            text += "  " + " ".join(f"{k}={v}" for k, v in r.items()) + "\n"
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _census(args):
    if not 1 <= args.n <= fpl_grid.MAX_N:
        raise UsageError(f"--n must lie in 1..{fpl_grid.MAX_N}")
    c = _cache.cached_census(args.n, args.parity, args.workers,
                             _cache.Cache(enabled=not args.no_cache))
    counts = {codec.word_to_matching(w).parens(): str(v) for w, v in c.items()}
    total = sum(c.values())
    rows = [{"matching": k, "count": v} for k, v in counts.items()]
    ok = total == fpl_grid.asm_total(args.n)
    return {"n": args.n, "parity": args.parity, "matchings": len(c),
            "total": str(total), "counts": counts, "ok": ok, "rows": rows}, ok


def _wieland(args):
    if not 1 <= args.n <= 7:
        raise UsageError("--n must lie in 1..7")
    rep = fpl_grid.wieland_check(args.n, args.workers)
    rep["violations"] = [list(map(str, v)) for v in rep["violations"]]
    return rep, rep["ok"]


def _poly(args):
    X = _matching(args.matching)
    if args.via == "corner":
        A = zuber.a_poly_corner(X)
    else:
        A = zuber.a_poly_main(X)
    rep = {"matching": X.parens(), "lambda": codec.format_partition(codec.lambda_of_matching(X)),
           "via": args.via, "A": A.to_json(), "A_text": str(A)}
    rep.update(zuber.structure_report(A, X))
    ok = rep["ok"]
    if args.crosscheck is not None:
        rows = []
        for m in range(0, args.crosscheck + 1):
            if X.d + m > fpl_grid.MAX_N:
                break
            r = zuber.crosscheck(X, m, workers=args.workers)
            rows.append(r)
            ok = ok and r["ok"]
        rep["rows"] = rows
    rep["ok"] = ok
    return rep, ok


def _poly2(args):
    X, Y = _matching(args.x), _matching(args.y)
    A = zuber.a_poly_squeeze(X, Y)
    rep = {"x": X.parens(), "y": Y.parens(), "A": A.to_json(), "A_text": str(A)}
    rep.update(zuber.structure_report(A, X, Y))
    return rep, rep["ok"]


def _tilings(args):
    lam = codec.parse_partition(args.lam)
    if args.mu is None:
        region = lgv.build_region("single", lam, args.d, args.h)
        rep = {"kind": "single", "ssyt": str(codec.ssyt_count(lam, args.d + args.h)),
               "lgv": str(lgv.count_r(lam, (), args.d, 1, args.h, 1))}
    else:
        mu = codec.parse_partition(args.mu)
        if args.e is None or args.k is None:
            raise UsageError("--mu needs --e and --k")
        region = lgv.build_region("double", lam, args.d, args.h, mu, args.e, args.k)
        rep = {"kind": "double", "lgv": str(lgv.count_r(lam, mu, args.d, args.e, args.h, args.k))}
    values = {rep.get("ssyt"), rep["lgv"]} - {None}
    if args.oracle:
        rep["bruteforce"] = str(lgv.tilings_bruteforce(region))
        values.add(rep["bruteforce"])
    rep["cells"] = len(region.cells)
    rep["ok"] = len(values) == 1
    return rep, rep["ok"]


def _triangle(args):
    X = _matching(args.matching)
    E1 = codec.parse_set(args.e1)
    rep = {"matching": X.parens(), "E1": sorted(E1),
           "lambda_E1": codec.format_partition(codec.boundary_shape(E1, X.d)[0])}
    ok = True
    if args.e2 is None:
        rep["a_single"] = str(region_fpl.a_single(X, E1))
        e2s = region_fpl.boundary_sets(X.d)
    else:
        E2 = codec.parse_set(args.e2)
        rep["E2"] = sorted(E2)
        rep["a_double"] = str(region_fpl.a_double(X, E1, E2))
        e2s = [E2]
    if args.census:
        checked = bad = 0
        for E2 in e2s:
            spec = region_fpl.triangle_spec(X, E1, E2)
            for st in region_fpl.configurations(spec):
                r = region_fpl.verify_census(X, E1, region_fpl.slice_census(spec, st))
                checked += 1
                bad += not r["ok"]
        rep["h"] = [str(v) for v in region_fpl.h_values(X, E1)]
        rep["census_checked"] = checked
        rep["census_violations"] = bad
        ok = bad == 0
    rep["ok"] = ok
    return rep, ok


def build_parser():
    p = _Parser(prog="fplpoly", description="FPL enumeration and polynomial checks")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--format", choices=["json", "csv", "text"], default="json")
    p.add_argument("--out")
    sub = p.add_subparsers(dest="cmd", parser_class=_Parser)

    s = sub.add_parser("census")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--parity", choices=["even", "odd"], default="even")
    s.add_argument("--no-cache", action="store_true")
    s.set_defaults(fn=_census)

    s = sub.add_parser("wieland")
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(fn=_wieland)

    s = sub.add_parser("poly")
    s.add_argument("--matching", required=True)
    s.add_argument("--via", choices=["main", "corner"], default="main")
    s.add_argument("--crosscheck", type=int, metavar="M_MAX")
    s.set_defaults(fn=_poly)

    s = sub.add_parser("poly2")
    s.add_argument("--x", required=True)
    s.add_argument("--y", required=True)
    s.set_defaults(fn=_poly2)

    s = sub.add_parser("tilings")
    s.add_argument("--lambda", dest="lam", required=True)
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--h", type=int, required=True)
    s.add_argument("--mu")
    s.add_argument("--e", type=int)
    s.add_argument("--k", type=int)
    s.add_argument("--oracle", action="store_true")
    s.set_defaults(fn=_tilings)

    s = sub.add_parser("triangle")
    s.add_argument("--matching", required=True)
    s.add_argument("--e1", required=True)
    s.add_argument("--e2")
    s.add_argument("--census", action="store_true")
    s.set_defaults(fn=_triangle)
    return p


def run(argv=None):
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    try:
        args, rest = parser.parse_known_args(argv)
        if rest:
            # global flags may follow the subcommand
            args = parser.parse_args(_hoist(argv))
        if not getattr(args, "cmd", None):
            raise UsageError("missing subcommand")
        report, ok = args.fn(args)
    except UsageError as exc:
        print(f"fplpoly: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, codec.ParseError) as exc:
        # guard violations and domain errors from the library
        print(f"fplpoly: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _emit(report, args)
    return EXIT_OK if ok else EXIT_FAIL


def _hoist(argv):
    """Move --workers/--format/--out in front of the subcommand."""
    glob, rest, i = [], [], 0
    while i < len(argv):
        a = argv[i]
        if a in ("--workers", "--format", "--out") and i + 1 < len(argv):
            glob += [a, argv[i + 1]]
            i += 2
            continue
        if any(a.startswith(f + "=") for f in ("--workers", "--format", "--out")):
            glob.append(a)
        else:
            rest.append(a)
        i += 1
    return glob + rest


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()

"""Command-line surface: compute genus series, emit constant tables,
and run the verification suite.

Exit codes: 0 success, 1 usage error, 2 a verification failed,
3 a resource limit was hit.  Standard output carries one JSON document
(or CSV when requested) with every exact value rendered as a string;
progress notes go to standard error.
"""

import argparse
import json
import os
import sys
from contextlib import contextmanager

try:
    import fcntl
except ImportError:  # pragma: no cover - non-posix
    fcntl = None

from .exact.rational import q_str
from .genus import (
    GenusTable,
    SizeLimit,
    coefficients,
    coefficients_csv,
    residual_master,
    solve_genus,
)
from .asympt import (
    beta_from_genus,
    beta_from_uv,
    build_const_tables,
    map_constants,
)
from .oracle import (
    genus_split,
    map_series_oracle,
    pfaffian_derivative_rule,
    pfaffian_quadratic_identity,
    pfaffian_square_check,
    verify_bkp,
    verify_virasoro,
    verify_y_reductions,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERIFY = 2
EXIT_LIMIT = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, "%s: error: %s\n" % (self.prog, message))


def _progress(msg):
    print(msg, file=sys.stderr)
    sys.stderr.flush()


@contextmanager
def _cache_lock(cache_dir):
    """Advisory single-writer lock over the cache directory."""
    if cache_dir is None or fcntl is None:
        yield
        return
    os.makedirs(os.path.join(cache_dir, "genus"), exist_ok=True)
    with open(os.path.join(cache_dir, "genus", ".lock"), "w") as fh:
        fcntl.flock(fh, fcntl.LOCK_EX)
        try:
            yield
        finally:
            fcntl.flock(fh, fcntl.LOCK_UN)


def _ensure_progress(table, g):
    for k in range(2, g + 1):
        if table.has(k):
            continue
        if table.load(k):
            _progress("genus %d: loaded from cache" % k)
            continue
        _progress("genus %d: solving" % k)
        solve_genus(k, table)
        table.save(k)


def _emit_json(doc):
    sys.stdout.write(json.dumps(doc, sort_keys=True))
    sys.stdout.write("\n")


def _exact_str(x):
    """Exact string for Q or QRoot3 values."""
    if hasattr(x, "a"):
        if not x.b:
            return q_str(x.a)
        root = "%s*sqrt3" % q_str(x.b)
        if not x.a:
            return root
        return "%s + %s" % (q_str(x.a), root)
    return q_str(x)


def _approx(x):
    try:
        if hasattr(x, "a"):
            return float(x.a) + float(x.b) * 3 ** 0.5
        return float(x)
    except (OverflowError, ValueError):
        return None


def cmd_genus(args):
    if args.g < 0:
        raise _UsageError("--g must be nonnegative")
    if args.expand is not None and args.expand < 1:
        raise _UsageError("--expand must be positive")
    with _cache_lock(args.cache_dir):
        table = GenusTable(cache_dir=args.cache_dir)
        if args.g >= 2:
            _ensure_progress(table, args.g)
        doc = {"g": args.g}
        if args.g >= 2:
            doc["psi"] = table.psi(args.g).to_pairs()
        else:
            alg = table.l_alg(args.g)
            doc["closed_form"] = alg.to_dict()
            doc["rendering"] = repr(alg)
        if args.expand:
            doc["counts"] = [q_str(c) for c in coefficients(args.g, args.expand, table)]
        if args.format == "csv":
            if not args.expand:
                raise _UsageError("--format csv requires --expand")
            coefficients_csv(table, [args.g], args.expand, sys.stdout)
        else:
            _emit_json(doc)
    return EXIT_OK


def cmd_constants(args):
    if args.max < 0:
        raise _UsageError("--max must be nonnegative")
    tabs = build_const_tables(args.max)

    def rows(values):
        return [
            {"index": i, "exact": _exact_str(x), "approx": _approx(x)}
            for i, x in enumerate(values)
        ]

    doc = {
        "g_max": args.max,
        "u": rows(tabs.u),
        "v": rows(tabs.v),
        "beta": rows(tabs.beta),
        "mu": rows(tabs.mu),
        "nu": rows(tabs.nu),
        "conventions": tabs.conventions,
        "map_constants": map_constants(args.max) if args.max >= 1 else [],
    }

    status = EXIT_OK
    if args.check_routes:
        with _cache_lock(args.cache_dir):
            table = GenusTable(cache_dir=args.cache_dir)
            _ensure_progress(table, args.max)
            uv = beta_from_uv(args.max)
            mismatch = None
            for g in range(args.max + 1):
                if tabs.beta[g] != uv[g]:
                    mismatch = {"g": g, "routes": ["recursion", "u-v"]}
                    break
                if g >= 2 and beta_from_genus(g, table) != tabs.beta[g]:
                    mismatch = {"g": g, "routes": ["recursion", "genus-series"]}
                    break
        doc["beta_routes"] = {
            "status": "passed" if mismatch is None else "failed",
            "routes": ["recursion", "u-v", "genus-series"],
            "first_failure": mismatch,
        }
        if mismatch is not None:
            status = EXIT_VERIFY

    if args.format == "csv":
        sys.stdout.write("table,index,exact,approx\n")
        for name in ("u", "v", "beta", "mu", "nu"):
            for row in doc[name]:
                sys.stdout.write(
                    "%s,%d,%s,%s\n"
                    % (
                        name,
                        row["index"],
                        row["exact"].replace(",", ";"),
                        "" if row["approx"] is None else repr(row["approx"]),
                    )
                )
    else:
        _emit_json(doc)
    return status


def _verify_pfaffian(args):
    if args.dim is not None and (args.dim < 2 or args.dim % 2):
        raise _UsageError("--dim must be a positive even dimension")
    dims = [args.dim] if args.dim else list(range(2, 11, 2))
    subs = [pfaffian_square_check(dims=dims, trials=args.trials, seed=args.seed)]
    for m in (1, 2):
        for n in (1, 2):
            subs.append(pfaffian_quadratic_identity(m, n, seed=args.seed))
    for size in (2, 4, 6):
        for k in (1, 2, 3):
            subs.append(pfaffian_derivative_rule(k, size, seed=args.seed))
    bad = [s for s in subs if s["status"] != "passed"]
    return {
        "check": "pfaffian",
        "variant": "square+quadratic+derivative",
        "max_weight": None,
        "status": "passed" if not bad else "failed",
        "first_failure": bad[0] if bad else None,
        "seed": args.seed,
        "subchecks": subs,
    }


def _verify_oracle_counts(args, cache_dir):
    vmax = args.vmax
    _progress("enumerating Wick pairings through V=%d" % vmax)
    tab = map_series_oracle(vmax)
    with _cache_lock(cache_dir):
        table = GenusTable(cache_dir=cache_dir)
        _ensure_progress(table, vmax // 2 + 1)
        rows = []
        failure = None
        for v in range(1, vmax + 1):
            if v % 2:
                if not tab[v].is_zero():
                    failure = {"V": v, "reason": "odd V must vanish"}
                    break
                continue
            split = genus_split(v, tab[v])
            n = v // 2
            engine = [int(coefficients(g, n, table)[n - 1]) for g in range(len(split))]
            rows.append({"V": v, "oracle": split, "engine": engine})
            if split != engine:
                failure = {"V": v, "oracle": split, "engine": engine}
                break
    return {
        "check": "oracle-counts",
        "variant": "V<=%d" % vmax,
        "max_weight": 3 * vmax,
        "status": "passed" if failure is None else "failed",
        "first_failure": failure,
        "seed": None,
        "rows": rows,
    }


def cmd_verify(args):
    which = args.which
    if which == "bkp":
        rep = verify_bkp(args.weight or 9)
    elif which == "virasoro":
        rep = verify_virasoro(args.weight or 8)
    elif which == "y-reductions":
        rep = verify_y_reductions(args.order or 4)
    elif which == "master":
        with _cache_lock(args.cache_dir):
            table = GenusTable(cache_dir=args.cache_dir)
            g_max = args.g if args.g is not None else 4
            _ensure_progress(table, g_max + 2)
            rep = residual_master(g_max, args.order or 7, table)
    elif which == "pfaffian":
        rep = _verify_pfaffian(args)
    elif which == "oracle-counts":
        rep = _verify_oracle_counts(args, args.cache_dir)
    else:  # pragma: no cover - argparse restricts choices
        raise _UsageError("unknown verification %r" % which)
    _emit_json(rep)
    return EXIT_OK if rep["status"] in ("passed", "pass") else EXIT_VERIFY


class _UsageError(Exception):
    pass


def build_parser():
    parser = _Parser(prog="cubicmaps", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p_genus = sub.add_parser("genus", help="solve one genus and print its table")
    p_genus.add_argument("--g", type=int, required=True, help="genus to compute")
    p_genus.add_argument("--expand", type=int, metavar="N", help="also expand counts to z^N")
    p_genus.add_argument("--format", choices=("json", "csv"), default="json")
    p_genus.add_argument("--cache-dir", metavar="PATH")
    p_genus.set_defaults(func=cmd_genus)

    p_const = sub.add_parser("constants", help="asymptotic constant tables")
    p_const.add_argument("--max", type=int, required=True, help="largest index")
    p_const.add_argument(
        "--check-routes",
        action="store_true",
        help="cross-check beta through all three derivations",
    )
    p_const.add_argument("--format", choices=("json", "csv"), default="json")
    p_const.add_argument("--cache-dir", metavar="PATH")
    p_const.set_defaults(func=cmd_constants)

    p_ver = sub.add_parser("verify", help="run one verification, print a JSON report")
    p_ver.add_argument(
        "which",
        choices=("bkp", "virasoro", "master", "pfaffian", "y-reductions", "oracle-counts"),
    )
    p_ver.add_argument("--weight", type=int, metavar="W")
    p_ver.add_argument("--order", type=int, metavar="K")
    p_ver.add_argument("--vmax", type=int, default=4, metavar="V")
    p_ver.add_argument("--g", type=int)
    p_ver.add_argument("--dim", type=int)
    p_ver.add_argument("--trials", type=int, default=100)
    p_ver.add_argument("--seed", type=int, default=0)
    p_ver.add_argument("--cache-dir", metavar="PATH")
    p_ver.set_defaults(func=cmd_verify)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _UsageError as exc:
        print("cubicmaps: error: %s" % exc, file=sys.stderr)
        return EXIT_USAGE
    except SizeLimit as exc:
        print("cubicmaps: resource limit: %s" % exc, file=sys.stderr)
        return EXIT_LIMIT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

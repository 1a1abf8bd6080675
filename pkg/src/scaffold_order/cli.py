"""Command-line front end.

Exit codes: 0 free / results found, 1 not free / no results, 2 error.
"""
from __future__ import annotations

import argparse
import logging
import sys

from . import __version__
from .assoc_order import free_generator_check, order_data
from .criteria import (METHODS, converse_search, divisibility_test, freeness, in_S_q,
                       admissible_residues, prime_powers_up_to)
from .digits import PrimePower, digits, residue
from .errors import ConsistencyError, ScaffoldError
from .extension import epsilon_threshold, ramification_breaks, require_coprime, validate_params
from .report import FORMATS, ReportDocument

log = logging.getLogger("scaffold_order")

DEFAULT_Q_CAP = 2**20
EXIT_OK, EXIT_NEGATIVE, EXIT_ERROR = 0, 1, 2


class UsageError(ScaffoldError):
    pass


def _cap(q: int, args) -> None:
    if q > DEFAULT_Q_CAP and not args.allow_large:
        raise UsageError(f"q={q} exceeds the default cap {DEFAULT_Q_CAP}; pass --allow-large")


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _prime_power(args) -> PrimePower:
    pp = PrimePower(args.p, args.n)
    _cap(pp.q, args)
    return pp


def cmd_check(args):
    pp = _prime_power(args)
    require_coprime(args.b, pp.p)
    c = residue(args.b, pp.q)
    rep = freeness(c, pp, args.method, check=False)
    params = {"p": pp.p, "n": pp.n, "q": pp.q, "b": args.b, "method": args.method}
    if not rep.consistent:
        doc = ReportDocument("check", params, [rep.to_dict()], {"error": "criteria disagree"})
        return doc, EXIT_ERROR
    free = rep.free
    summary = {"residue": c, "free": free, "divisibility": str(rep.divisibility)}
    return ReportDocument("check", params, [rep.to_dict()], summary), EXIT_OK if free else EXIT_NEGATIVE


def cmd_sq(args):
    pp = _prime_power(args)
    rows, members = [], []
    for c in admissible_residues(pp):
        ok, wit = in_S_q(c, pp)
        div = divisibility_test(c, pp)
        rows.append({"c": c, "in_sq": ok, "divisibility": str(div),
                     "witness_sq": list(wit) if wit else None})
        if ok:
            members.append(c)
    params = {"p": pp.p, "n": pp.n, "q": pp.q}
    summary = {"S_q": members, "size": len(members), "admissible": len(rows)}
    return ReportDocument("sq", params, rows, summary), EXIT_OK if members else EXIT_NEGATIVE


def cmd_breaks(args):
    params_in = validate_params(args.p, args.n, args.b, args.omega)
    _cap(params_in.pp.q, args)
    ram = ramification_breaks(params_in)
    rows = []
    for i in range(params_in.pp.n + 1):
        rows.append({
            "i": i,
            "omega_val": params_in.omega_vals[i],
            "m": params_in.m[i - 1] if i else None,
            "break": ram.breaks[i],
            "eps_threshold": str(epsilon_threshold(params_in, i)),
        })
    params = {"p": args.p, "n": args.n, "q": params_in.pp.q, "b": args.b,
              "omega": list(params_in.omega_vals)}
    summary = {"breaks": list(ram.breaks), "distinct_breaks": list(ram.distinct_breaks),
               "b_max": ram.b_max, "residue": residue(args.b, params_in.pp.q)}
    return ReportDocument("breaks", params, rows, summary), EXIT_OK


def cmd_basis(args):
    pp = _prime_power(args)
    if args.omega is not None:
        b_max = ramification_breaks(validate_params(args.p, args.n, args.b, args.omega)).b_max
    else:
        require_coprime(args.b, pp.p)
        b_max = args.b
    od = order_data(b_max, pp)
    rows = [{"j": j, "digits": list(digits(j, pp)), "d": od.d[j], "w": od.w[j],
             "d_minus_d0": od.d[j] - od.d[0]} for j in range(pp.q)]
    gen = free_generator_check(od)
    params = {"p": pp.p, "n": pp.n, "q": pp.q, "b": args.b}
    if args.omega is not None:
        params["omega"] = list(args.omega)
    summary = {"b_max": b_max, "free": od.free, "failing_j": od.failing_j,
               "generator_valuation": gen.valuation if gen else None}
    return ReportDocument("basis", params, rows, summary), EXIT_OK if od.free else EXIT_NEGATIVE


def cmd_search_converse(args):
    _cap(args.q_max, args)
    pps = prime_powers_up_to(args.q_max, args.p, min_n=2)
    if not pps:
        raise UsageError(f"no q = p^(n+1) <= {args.q_max} with n >= 2 for p in {args.p}")
    witnesses = converse_search(pps, threads=args.threads)
    rows = []
    for wit in witnesses:
        pp = PrimePower(wit.p, wit.n)
        rep = freeness(wit.c, pp, "all")
        recheck = rep.free and divisibility_test(wit.c, pp).kind == "none"
        rows.append({"p": wit.p, "n": wit.n, "q": wit.q, "c": wit.c, "rechecked": recheck})
    params = {"p": list(args.p), "q_max": args.q_max}
    per_q = {}
    for r in rows:
        per_q.setdefault(str(r["q"]), []).append(r["c"])
    summary = {
        "searched_q": [pp.q for pp in pps],
        "witness_count": len(rows),
        "witnesses_by_q": per_q,
        "smallest": {"q": rows[0]["q"], "c": rows[0]["c"]} if rows else "none in range",
    }
    if rows and not all(r["rechecked"] for r in rows):
        summary["error"] = "witness failed re-verification"
        return ReportDocument("search-converse", params, rows, summary), EXIT_ERROR
    if not rows:
        log.warning("converse search found no witnesses for q <= %d", args.q_max)
    return ReportDocument("search-converse", params, rows, summary), EXIT_OK if rows else EXIT_NEGATIVE


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="table")
    common.add_argument("--out", help="write the report to this file instead of stdout")
    common.add_argument("--allow-large", action="store_true", help=f"permit q > {DEFAULT_Q_CAP}")
    common.add_argument("--threads", type=int, default=None,
                        help="worker threads (default: $SCAFFOLD_ORDER_THREADS or 1)")
    common.add_argument("-v", "--verbose", action="store_true")

    ap = argparse.ArgumentParser(prog="scaffold-order", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    def pn(sp):
        sp.add_argument("--p", type=int, required=True)
        sp.add_argument("--n", type=int, required=True)

    sp = sub.add_parser("check", parents=[common], help="decide freeness for b")
    pn(sp)
    sp.add_argument("--b", type=int, required=True)
    sp.add_argument("--method", choices=METHODS, default="all")
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("sq", parents=[common], help="list S(q)")
    pn(sp)
    sp.set_defaults(func=cmd_sq)

    sp = sub.add_parser("breaks", parents=[common], help="ramification breaks and error-term bounds")
    pn(sp)
    sp.add_argument("--b", type=int, required=True)
    sp.add_argument("--omega", type=_int_list, default=None,
                    help="v_K(Omega_0..Omega_n), comma separated, starting with 0")
    sp.set_defaults(func=cmd_breaks)

    sp = sub.add_parser("basis", parents=[common], help="associated-order basis exponents")
    pn(sp)
    sp.add_argument("--b", type=int, required=True)
    sp.add_argument("--omega", type=_int_list, default=None,
                    help="derive b_max from these Omega valuations instead of using b")
    sp.set_defaults(func=cmd_basis)

    sp = sub.add_parser("search-converse", parents=[common],
                        help="free residues not dividing any p^d - 1, d <= n+1")
    sp.add_argument("--p", type=_int_list, required=True, help="comma-separated primes")
    sp.add_argument("--q-max", type=int, required=True)
    sp.set_defaults(func=cmd_search_converse)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        doc, code = args.func(args)
    except ConsistencyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        for rep in exc.mismatches:
            print(f"  {rep.to_dict()}", file=sys.stderr)
        return EXIT_ERROR
    except ScaffoldError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    text = doc.render(args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if doc.command == "search-converse" and code == EXIT_NEGATIVE:
        print("diagnostic: no converse witnesses found in range", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())

"""Command-line interface: ``python -m laxton <command>`` or ``laxton <command>``."""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Iterable, Optional

from .arith import kronecker, primes_below, splitting_type
from .classify import OUTSIDE, crosscheck_structure, membership, reduce_p, verify_exact_sequence
from .equivalence import normalize
from .finite import enumerate_G, enumerate_Gstar, rank
from .recurrence import ClassVector, RecurrenceParams, RingCtx, b_act, inv, laxton_mul, mul

SCHEMA = 1

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_INPUT = 3
EXIT_IO = 4
EXIT_NOT_INVERTIBLE = 5

EPILOG = """\
exit codes:
  0  success, no mismatch
  1  a verification verdict was "mismatch" (or a --check/--differential failed)
  2  usage error
  3  invalid input (bad prime, Q = 0, D = 0, p | Q, ...)
  4  I/O error writing output
  5  element not invertible

negative numbers: "-P -1" works; vectors starting with a minus sign need
"--" before them, e.g. "law mul -P 1 -Q -1 -- -2,1 1,1".
"""

FIELDS = ["instance", "splitting", "s", "d0", "rank", "g_order", "gstar_order", "invariants", "predicted", "verdict"]


class UsageError(Exception):
    pass


def _vector(text: str) -> tuple[int, int]:
    try:
        a, b = text.split(",")
        return int(a), int(b)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected w1,w0 but got {text!r}")


def _params(args) -> RecurrenceParams:
    if args.P is None or args.Q is None:
        raise UsageError("-P and -Q are required")
    return RecurrenceParams(args.P, args.Q)


def _primes(args) -> list[int]:
    if getattr(args, "p", None) is not None:
        return [args.p]
    if getattr(args, "prime_bound", None) is not None:
        return primes_below(args.prime_bound)
    raise UsageError("give -p or --prime-bound")


def _pq_pairs(args) -> list[tuple[int, int]]:
    if getattr(args, "pq_box", None) is not None:
        b = args.pq_box
        return [(P, Q) for P in range(-b, b + 1) for Q in range(-b, b + 1) if Q != 0 and P * P != 4 * Q]
    params = _params(args)
    return [(params.P, params.Q)]


def _jobs(args) -> int:
    if args.jobs is not None:
        return max(1, args.jobs)
    env = os.environ.get("LAXTON_JOBS")
    return max(1, int(env)) if env else 1


def _dump(obj) -> str:
    return json.dumps(obj, separators=(", ", ": "))


def _emit(rows: Iterable[dict], args, fields: Optional[list] = None):
    """Write rows as json-lines or csv to --output (default stdout)."""
    out = open(args.output, "w", encoding="utf-8", newline="") if args.output else sys.stdout
    try:
        if args.format == "csv":
            writer = None
            for row in rows:
                if writer is None:
                    writer = csv.DictWriter(out, fieldnames=fields or list(row), lineterminator="\n")
                    writer.writeheader()
                writer.writerow({k: v if isinstance(v, (int, str)) else json.dumps(v) for k, v in row.items()})
        else:
            for row in rows:
                out.write(_dump(row) + "\n")
        out.flush()
    finally:
        if out is not sys.stdout:
            out.close()


def cmd_rank(args) -> int:
    status = EXIT_OK
    rows = []
    for P, Q in _pq_pairs(args):
        params = RecurrenceParams(P, Q)
        for p in _primes(args):
            row = {"instance": [P, Q, p]}
            if Q % p == 0:
                row.update(r=None, reason="p divides Q")
                rows.append(row)
                continue
            res = rank(params, p)
            row["r"] = res.r
            if args.check:
                order_ok = res.consistent
                D = params.D
                if p == 2:
                    divides = res.r == (2 if P % 2 == 0 else 3)
                elif D % p == 0:
                    divides = res.r == p
                else:
                    divides = (p - kronecker(D, p)) % res.r == 0
                row.update(generator_order=res.generator_order, order_ok=order_ok, divides=divides)
                if not (order_ok and divides):
                    status = EXIT_MISMATCH
            rows.append(row)
    _emit(rows, args)
    return status


def cmd_law(args) -> int:
    params = _params(args)
    ctx = RingCtx.parse(args.ring)
    vecs = [ClassVector(*v, params, ctx) for v in args.operands]
    if args.op == "mul":
        if len(vecs) != 2:
            raise UsageError("mul takes two vectors")
        result = mul(*vecs)
        if args.differential and laxton_mul(*vecs) != result:
            print("differential check failed", file=sys.stderr)
            return EXIT_MISMATCH
    elif args.op == "inv":
        if len(vecs) != 1:
            raise UsageError("inv takes one vector")
        result = inv(vecs[0])
    else:
        if len(vecs) != 1 or args.nu is None:
            raise UsageError("act takes one vector and --nu")
        result = b_act(vecs[0], args.nu)
    print(f"{result.w1},{result.w0}")
    return EXIT_OK


def cmd_reduce(args) -> int:
    params = _params(args)
    p = args.p
    if p is None:
        raise UsageError("-p is required")
    g = normalize(ClassVector(*args.vector, params))
    x1, x0 = reduce_p(g, p)
    print(f"{x1},{x0}")
    return EXIT_OK


def cmd_classify(args) -> int:
    params = _params(args)
    if args.p is None:
        raise UsageError("-p is required")
    report = membership(ClassVector(*args.vector, params), args.p)
    data = report.as_dict()
    if args.json:
        print(_dump(data))
        return EXIT_OK
    w1, w0 = data["class"]
    pt = data["reduced_point"]
    print(f"class        [{w1}, {w0}] for {params}, p = {args.p} ({splitting_type(params, args.p)})")
    print(f"reduced      {pt if pt == OUTSIDE else tuple(pt)}")
    print(f"v_p(Lambda)  {data['lambda_valuation']}")
    print(f"valuations   {tuple(data['valuation_data'])}")
    for key in ("in_G", "in_K", "in_H", "in_Gstar"):
        print(f"{key:<12} {str(data[key]).lower()}")
    return EXIT_OK


def cmd_finite_group(args) -> int:
    params = _params(args)
    if args.p is None:
        raise UsageError("-p is required")
    table = enumerate_G(params, args.p)
    if args.star:
        table = enumerate_Gstar(params, args.p, table)
    data = {"instance": [params.P, params.Q, args.p], "group": "G*" if args.star else "G", "order": table.order, "invariants": table.invariant_factors}
    if args.elements:
        data["elements"] = [list(x) for x in table.elements]
    print(_dump(data))
    return EXIT_OK


def _structure_dict(report) -> dict:
    return {"instance": report.instance, "predicted": report.predicted.as_dict(), "computed": report.computed, "verdict": report.verdict, "notes": report.notes}


def cmd_structure(args) -> int:
    params = _params(args)
    if args.p is None:
        raise UsageError("-p is required")
    report = crosscheck_structure(params, args.p, args.grid)
    print(_dump(_structure_dict(report)))
    return EXIT_MISMATCH if report.verdict == "mismatch" else EXIT_OK


def instance_record(P: int, Q: int, p: int, grid: int = 3, exact: bool = True, timing: bool = True) -> dict:
    """One report row: enumeration data, prediction and verdict for ``(P, Q, p)``."""
    start = time.perf_counter()
    params = RecurrenceParams(P, Q)
    rep = crosscheck_structure(params, p, grid)
    g = enumerate_G(params, p)
    c = rep.computed
    verdict = rep.verdict
    row = {
        "instance": [P, Q, p],
        "splitting": rep.instance["splitting"],
        "s": rep.instance["s"],
        "d0": rep.instance["d0"],
        "rank": c["rank"],
        "g_order": c["g_order"],
        "gstar_order": c["gstar_order"],
        "invariants": {"g": g.invariant_factors, "gstar": c["kstar_mod_gstar"], "g_mod_k": c["g_mod_k"], "free_rank": c["free_rank"]},
        "predicted": rep.predicted.as_dict(),
        "verdict": verdict,
    }
    if exact:
        ex = verify_exact_sequence(params, p, bound=grid)
        row["exact_sequence"] = ex.ok
        if not ex.ok:
            row["verdict"] = "mismatch"
    row["schema"] = SCHEMA
    if timing:
        row["timing_ms"] = round((time.perf_counter() - start) * 1000, 3)
    return row


def _record_star(job):
    return instance_record(*job)


def _sweep(args, exact: bool) -> int:
    pairs = _pq_pairs(args)
    primes = _primes(args)
    jobs = [(P, Q, p, args.grid, exact, not args.no_timing) for P, Q in pairs for p in primes if Q % p]
    print(f"instances: {len(jobs)}", file=sys.stderr)
    n = _jobs(args)
    if n > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=n) as pool:
            rows = list(pool.map(_record_star, jobs, chunksize=max(1, len(jobs) // (4 * n))))
    else:
        rows = [_record_star(j) for j in jobs]
    _emit(rows, args, FIELDS + (["exact_sequence"] if exact else []) + ["schema"] + ([] if args.no_timing else ["timing_ms"]))
    counts = {}
    for r in rows:
        counts[r["verdict"]] = counts.get(r["verdict"], 0) + 1
    print("summary: " + ", ".join(f"{k} {counts[k]}" for k in sorted(counts)), file=sys.stderr)
    return EXIT_MISMATCH if exact and counts.get("mismatch") else EXIT_OK


def cmd_verify(args) -> int:
    return _sweep(args, exact=True)


def cmd_sweep(args) -> int:
    return _sweep(args, exact=False)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="laxton",
        description="Groups of second-order linear recurrences modulo p.",
        epilog=EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, prime=True, sweep=False):
        sp.add_argument("-P", type=int, help="coefficient P")
        sp.add_argument("-Q", type=int, help="coefficient Q")
        if prime:
            sp.add_argument("-p", type=int, help="a prime")
        if sweep:
            sp.add_argument("--prime-bound", type=int, help="all primes below this bound")
            sp.add_argument("--pq-box", type=int, help="all (P, Q) with |P|, |Q| <= B, Q != 0, D != 0")
            sp.add_argument("--format", choices=["jsonl", "csv"], default="jsonl")
            sp.add_argument("--output", help="write to this file instead of stdout")

    def add(name, func, help_text, **kw):
        sp = sub.add_parser(name, help=help_text, epilog=EPILOG, formatter_class=argparse.RawDescriptionHelpFormatter)
        common(sp, **kw)
        sp.set_defaults(func=func)
        return sp

    sp = add("rank", cmd_rank, "rank of apparition r(p)", sweep=True)
    sp.add_argument("--check", action="store_true", help="compare with the order of [0,1] and check r(p) | p - (D/p)")

    sp = add("law", cmd_law, "group law on seed vectors", prime=False)
    sp.add_argument("op", choices=["mul", "inv", "act"])
    sp.add_argument("operands", nargs="+", type=_vector, help="vectors w1,w0")
    sp.add_argument("--ring", default="Q", help="Q, Zp:<p> or Fp:<p>")
    sp.add_argument("--nu", type=int, help="shift for act")
    sp.add_argument("--differential", action="store_true", help="also run the closed-form product and compare")

    sp = add("reduce", cmd_reduce, "reduce a rational class mod p")
    sp.add_argument("vector", type=_vector)

    sp = add("classify", cmd_classify, "membership in G(f,p), K(f,p), H(f,p), G*(f,p)")
    sp.add_argument("vector", type=_vector)
    sp.add_argument("--json", action="store_true")

    sp = add("finite-group", cmd_finite_group, "enumerate G_Fp(f) or G*_Fp(f)")
    sp.add_argument("--star", action="store_true", help="quotient by the subgroup generated by [0,1]")
    sp.add_argument("--elements", action="store_true")

    for name, func, text in (
        ("structure", cmd_structure, "predicted vs computed structure at one prime"),
        ("verify", cmd_verify, "structure cross-check plus exact-sequence checks over a sweep"),
        ("sweep", cmd_sweep, "structure records over a sweep (verdicts do not change the exit code)"),
    ):
        sp = add(name, func, text, sweep=name != "structure")
        sp.add_argument("--grid", type=int, default=3, help="sample classes with |w_i| <= GRID (default 3)")
        if name != "structure":
            sp.add_argument("--jobs", type=int, help="worker processes (default $LAXTON_JOBS or 1)")
            sp.add_argument("--no-timing", action="store_true", help="omit timing_ms for byte-stable output")
    return parser


def main(argv: Optional[list] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"laxton: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ZeroDivisionError as exc:
        print(f"laxton: {exc}", file=sys.stderr)
        return EXIT_NOT_INVERTIBLE
    except OSError as exc:
        print(f"laxton: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"laxton: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

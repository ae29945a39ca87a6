"""Command-line front end.

Exit codes: 0 success, 1 search not found or suite failure, 2 invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import arith, density, sieve, verify, witness

EXIT_OK, EXIT_FAIL, EXIT_INVALID = 0, 1, 2


class InvalidInput(Exception):
    pass


def _natural(text: str) -> int:
    try:
        value = int(text, 10)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a decimal integer, got {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {value}")
    return value


def _real(text: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a real number, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="regint",
        description="Regular integers modulo n: V(n), companions, witnesses and density.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("v", help="print V(N)")
    p.add_argument("n", type=_natural, metavar="N")

    p = sub.add_parser("regs", help="print the regular residues in [1, N]")
    p.add_argument("n", type=_natural, metavar="N")
    p.add_argument("--cap", type=_natural, default=arith.DEFAULT_REG_CAP)

    p = sub.add_parser("profile", help="V, phi, psi, sigma for every n in [LO, HI]")
    p.add_argument("lo", type=_natural, metavar="LO")
    p.add_argument("hi", type=_natural, metavar="HI")
    p.add_argument("--csv", action="store_true", help="CSV rows instead of a table")
    p.add_argument("--sieve-cap", type=_natural, default=sieve.DEFAULT_SIEVE_CAP)

    p = sub.add_parser("scan", help="classify n in [LO, HI] by the sign of V(n+1) - V(n)")
    p.add_argument("lo", type=_natural, metavar="LO")
    p.add_argument("hi", type=_natural, metavar="HI")
    p.add_argument("--json", action="store_true")
    p.add_argument("--lists", dest="keep_lists", action="store_true", default=None,
                   help="always keep membership lists")
    p.add_argument("--count-only", dest="keep_lists", action="store_false",
                   help="never keep membership lists")
    p.add_argument("--workers", type=_natural, default=1)
    p.add_argument("--sieve-cap", type=_natural, default=sieve.DEFAULT_SIEVE_CAP)

    p = sub.add_parser("witness", help="search for a prime witness (JSON report)")
    p.add_argument("kind", choices=witness.KINDS)
    p.add_argument("args", type=_natural, nargs="+", metavar="ARG",
                   help="primes for prop1 kinds, x for prop2 kinds, p_min for prop3 kinds")
    p.add_argument("--max-steps", type=_natural, default=witness.DEFAULT_MAX_STEPS)

    p = sub.add_parser("density", help="greedy prime subseries for a target ratio (JSON)")
    p.add_argument("kind", choices=density.KINDS)
    p.add_argument("delta", type=_real)
    p.add_argument("--prime-limit", type=_natural, default=density.DEFAULT_PRIME_LIMIT)

    p = sub.add_parser("verify", help="run a named verification suite")
    p.add_argument("suite", choices=[*verify.SUITES, "all"])
    p.add_argument("--limit", type=_natural, default=None)
    return parser


def _dump(obj, out) -> None:
    out.write(json.dumps(obj, indent=2) + "\n")


def _witness_arg(kind: str, args: list[int]):
    if kind.startswith("prop1"):
        return args
    if len(args) != 1:
        raise InvalidInput(f"{kind} takes exactly one argument, got {len(args)}")
    return args[0]


def _print_scan(r: sieve.RangeScanResult, out) -> None:
    rows = [
        ("interval", f"[{r.lo}, {r.hi}]"),
        ("A (V rises)", str(r.a_count)),
        ("B (V falls)", str(r.b_count)),
        ("equal", str(len(r.equal_points))),
        ("max diff", f"{r.max_diff[1]} at n={r.max_diff[0]}"),
        ("min diff", f"{r.min_diff[1]} at n={r.min_diff[0]}"),
        ("violations", str(len(r.violations))),
    ]
    if r.a_members is not None:
        rows += [("A members", " ".join(map(str, r.a_members))),
                 ("B members", " ".join(map(str, r.b_members)))]
    rows.append(("equal points", " ".join(map(str, r.equal_points))))
    width = max(len(k) for k, _ in rows)
    for k, v in rows:
        out.write(f"{k:<{width}}  {v}\n")


def _run(args, out) -> int:
    cmd = args.command
    if cmd == "v":
        if args.n < 1:
            raise InvalidInput("N must be >= 1")
        out.write(f"{arith.v_of(args.n)}\n")
    elif cmd == "regs":
        out.write(" ".join(map(str, arith.reg_set(args.n, cap=args.cap))) + "\n")
    elif cmd == "profile":
        if not 1 <= args.lo <= args.hi:
            raise InvalidInput(f"need 1 <= LO <= HI, got {args.lo} {args.hi}")
        spf = sieve.spf_sieve(max(args.hi, 2), cap=args.sieve_cap)
        rows = sieve.batch_profiles(args.lo, args.hi, spf)
        if args.csv:
            sieve.write_csv(rows, out)
        else:
            out.write("{:>12} {:>12} {:>12} {:>12} {:>12} {:>5}\n".format(*sieve.CSV_HEADER[:5], "sqf"))
            for p in rows:
                out.write(f"{p.n:>12} {p.v:>12} {p.phi:>12} {p.psi:>12} {p.sigma:>12} "
                          f"{'yes' if p.squarefree else 'no':>5}\n")
    elif cmd == "scan":
        if not 1 <= args.lo <= args.hi:
            raise InvalidInput(f"need 1 <= LO <= HI, got {args.lo} {args.hi}")
        spf = sieve.spf_sieve(args.hi + 1, cap=args.sieve_cap)
        r = sieve.scan(args.lo, args.hi, spf, keep_lists=args.keep_lists, workers=max(args.workers, 1))
        if args.json:
            _dump(r.to_json(), out)
        else:
            _print_scan(r, out)
        if r.violations:
            return EXIT_FAIL
    elif cmd == "witness":
        rep = witness.find_witness(args.kind, _witness_arg(args.kind, args.args), args.max_steps)
        _dump(rep.to_json(), out)
        if not rep.ok:
            return EXIT_FAIL
    elif cmd == "density":
        _dump(density.greedy_subseries(args.kind, args.delta, args.prime_limit).to_json(), out)
    elif cmd == "verify":
        names = list(verify.SUITES) if args.suite == "all" else [args.suite]
        failed = 0
        for name in names:
            res = verify.run_suite(name, args.limit)
            for ok, text in res.lines:
                out.write(f"{'PASS' if ok else 'FAIL'} [{name}] {text}\n")
            out.write(f"{name}: {res.passed} passed, {res.failed} failed\n")
            failed += res.failed
        return EXIT_FAIL if failed else EXIT_OK
    return EXIT_OK


def main(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _run(args, out)
    except witness.SearchExhausted as exc:
        err.write(f"regint: not found: {exc}\n")
        return EXIT_FAIL
    except (InvalidInput, ValueError, OverflowError) as exc:
        err.write(f"regint: invalid input: {exc}\n")
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())

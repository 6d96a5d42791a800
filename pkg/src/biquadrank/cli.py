"""Command-line interface.

Domain validation (odd, squarefree, range) happens here so the library
operations can trust their preconditions.  Exit codes: 0 success, 1 domain
error, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import fourrank, genus, gsymbol, sweep as sweepmod, verify as verifymod
from .gaussint import format_gauss, is_primary, parse_gauss
from .gfactor import factor_rational, gauss_factorize, is_gauss_prime, odd_squarefree_primes
from .gsymbol import FactoredModulus
from .gaussint import Unit


def _odd_squarefree_arg(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer")
    return n


def _require_odd_squarefree(n: int, minimum: int = 3) -> None:
    if n < minimum:
        raise ValueError(f"n must be >= {minimum}, got {n}")
    odd_squarefree_primes(n)  # raises with a clear message otherwise


def _record_json(rec: fourrank.FourRankRecord) -> str:
    return json.dumps(
        {
            "n": rec.n,
            "omega1": rec.profile.omega1,
            "omega3": rec.profile.omega3,
            "generic": int(rec.profile.generic),
            "f": rec.f,
            "rk4": rec.rk4,
            "exceptional": int(rec.exceptional),
        }
    )


def _cmd_symbol(args) -> int:
    alpha = parse_gauss(args.alpha)
    if len(args.beta) == 1:
        modulus = gsymbol.factor_modulus(parse_gauss(args.beta[0]))
    else:
        primes = tuple(parse_gauss(t) for t in args.beta)
        for pi in primes:
            if not (is_gauss_prime(pi) and is_primary(pi)):
                raise ValueError(f"{format_gauss(pi)} is not a primary Gaussian prime")
        modulus = FactoredModulus(Unit(0), primes)
    print(gsymbol.symbol(alpha, modulus))
    return 0


def _cmd_factor(args) -> int:
    n = args.n
    if n < 1:
        raise ValueError("n must be >= 1")
    fac = factor_rational(n)
    print(" ".join(f"{p}^{e}" if e > 1 else str(p) for p, e in fac) or "1")
    if n % 2 == 1 and all(e == 1 for _, e in fac):
        for entry in gauss_factorize(n).parts:
            print(f"{format_gauss(entry.primary)}  ({entry.kind}, over {entry.rational_p})")
    else:
        print("(gaussian factorization requires odd squarefree n)")
    return 0


def _cmd_profile(args) -> int:
    _require_odd_squarefree(args.n, minimum=1)
    pr = genus.profile(args.n)
    if args.json:
        print(
            json.dumps(
                {
                    "n": pr.n,
                    "omega1": pr.omega1,
                    "omega3": pr.omega3,
                    "generic": int(pr.generic),
                }
            )
        )
    else:
        print(
            f"n={pr.n} omega1={pr.omega1} omega3={pr.omega3} "
            f"omega_tilde={pr.omega_tilde} generic={'yes' if pr.generic else 'no'}"
        )
    return 0


def _cmd_gn(args) -> int:
    _require_odd_squarefree(args.n)
    for g in genus.gn_enumerate(args.n):
        print(format_gauss(g.value))
    return 0


def _cmd_rk2(args) -> int:
    _require_odd_squarefree(args.n)
    print(genus.rk2(args.n))
    return 0


def _cmd_f(args) -> int:
    _require_odd_squarefree(args.n)
    if args.json:
        print(_record_json(fourrank.rank4_generic(args.n)))
    else:
        print(fourrank.f_direct(args.n))
    return 0


def _cmd_rk4(args) -> int:
    _require_odd_squarefree(args.n)
    rec = fourrank.rank4_generic(args.n)
    if args.json:
        print(_record_json(rec))
    elif rec.rk4 is None:
        print(f"f = {rec.f}")
        print("non-generic: rank not determined")
    else:
        print(rec.rk4)
    return 0


def _cmd_nu(args) -> int:
    _require_odd_squarefree(args.n, minimum=1)
    print(fourrank.nu(args.n))
    return 0


def _cmd_decompose(args) -> int:
    quad = [parse_gauss(t) for t in (args.b0, args.b1, args.b2, args.b3)]
    d = fourrank.decompose(*quad)
    print("eta:", " ".join(format_gauss(u.value()) for u in d.eta))
    print("b:", " ".join(str(b) for b in d.b))
    for k in range(4):
        row = " ".join(format_gauss(d.z[k][l]) for l in range(4) if l != k)
        print(f"z[{k}]:", row)
    return 0


def _cmd_table(args) -> int:
    scan = sweepmod.exceptional_scan(args.max)
    by_omega3: dict[int, list[int]] = {}
    for n, omega3, _ in scan:
        by_omega3.setdefault(omega3, []).append(n)
    for omega3 in sorted(by_omega3):
        values = " ".join(str(n) for n in by_omega3[omega3])
        print(f"omega3={omega3}: {values}")
    print(f"total {len(scan)}")
    return 0


def _cmd_sweep(args) -> int:
    checkpoints = tuple(sorted({10**k for k in range(1, 9) if 10**k <= args.max} | {args.max}))
    cfg = sweepmod.SweepConfig(
        x_max=args.max,
        chunk_size=args.chunk,
        worker_count=args.workers,
        emit_records=args.records is not None,
        output_path=args.records,
        checkpoints=checkpoints,
    )
    report = sweepmod.run_sweep(cfg)
    if args.records:
        sweepmod.write_records_csv(report.records, args.records)
    if args.report:
        sweepmod.write_report_csv(report.checkpoints, args.report)
    print(f"x={report.x} mt={report.mt} s={float(report.s):.3f} deviation={report.deviation:.6f}")
    for omega3 in sorted(report.exceptional_by_omega3):
        print(f"exceptional omega3={omega3}: {report.exceptional_by_omega3[omega3]}")
    return 0


def _cmd_verify(args) -> int:
    results = verifymod.run_suites(args.suite, args.max, args.seed, args.workers)
    all_ok = True
    for r in results:
        print(r.summary())
        for detail in r.failures:
            print(f"  failed: {detail}")
        all_ok = all_ok and r.ok
    print("PASS" if all_ok else "FAIL")
    return 0 if all_ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="biquadrank",
        description="4-rank statistics of class groups of Q(i, sqrt(n)) "
        "for odd squarefree n, via Gaussian residue symbols.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("symbol", help="quadratic residue symbol [alpha/beta]")
    p.add_argument("alpha", help='Gaussian integer, e.g. "-1-2i"')
    p.add_argument(
        "beta",
        nargs="+",
        help="odd modulus; one token to auto-factor, several primary primes to use directly",
    )
    p.set_defaults(func=_cmd_symbol)

    p = sub.add_parser("factor", help="rational and Gaussian factorization")
    p.add_argument("n", type=_odd_squarefree_arg)
    p.set_defaults(func=_cmd_factor)

    p = sub.add_parser("profile", help="prime-divisor profile of n")
    p.add_argument("n", type=_odd_squarefree_arg)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_profile)

    p = sub.add_parser("gn", help="list the genus-group generators for n")
    p.add_argument("n", type=_odd_squarefree_arg)
    p.set_defaults(func=_cmd_gn)

    p = sub.add_parser("rk2", help="2-rank of the class group of Q(i, sqrt(n))")
    p.add_argument("n", type=_odd_squarefree_arg)
    p.set_defaults(func=_cmd_rk2)

    p = sub.add_parser("f", help="divisor-counting function f(n)")
    p.add_argument("n", type=_odd_squarefree_arg)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_f)

    p = sub.add_parser("rk4", help="4-rank (generic n) via f(n)")
    p.add_argument("n", type=_odd_squarefree_arg)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_rk4)

    p = sub.add_parser("nu", help="count signed 4-factorizations of n")
    p.add_argument("n", type=_odd_squarefree_arg)
    p.set_defaults(func=_cmd_nu)

    p = sub.add_parser("decompose", help="canonical decomposition of b0*b1*b2*b3 = n")
    p.add_argument("b0")
    p.add_argument("b1")
    p.add_argument("b2")
    p.add_argument("b3")
    p.set_defaults(func=_cmd_decompose)

    p = sub.add_parser("table", help="exceptional generic n grouped by omega3")
    p.add_argument("--max", type=int, default=1000)
    p.set_defaults(func=_cmd_table)

    p = sub.add_parser("sweep", help="bulk statistics up to a bound, with CSV output")
    p.add_argument("--max", type=int, required=True)
    p.add_argument("--chunk", type=int, default=100_000)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--records", help="write per-n records CSV here")
    p.add_argument("--report", help="write checkpoint report CSV here")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("verify", help="run the identity / property suites")
    p.add_argument("--suite", choices=verifymod.SUITE_NAMES, default="all")
    p.add_argument("--max", type=int, default=None)
    p.add_argument("--seed", type=int, default=verifymod.DEFAULT_SEED)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=_cmd_verify)

    return parser


def dispatch(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(dispatch())


if __name__ == "__main__":
    main()

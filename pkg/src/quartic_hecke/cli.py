"""Command-line surface: every experiment as a subcommand with bit-stable
CSV/JSON output.

Output files embed the run configuration in a header, so a run is
reproducible from its own output.  Numbers are printed with 17 significant
digits (lossless float round-trip), reductions are ordered, and the worker
count never changes any emitted byte.

Exit codes: 0 success, 1 input error, 2 a verify suite failed its PASS
criterion.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

from . import __version__
from .characters import quartic_symbol, ray_class_group
from .gaussian import GaussianInt, ONE, enumerate_c_1mod16, is_squarefree, primary_primes
from .gauss_sums import gauss_sum, gauss_sum_fast, gauss_sum_g2, root_number
from .hseries import IDENTITIES, run_identity_suite
from .lfunctions import functional_equation_check, l_half
from .moment import constant_A, first_moment, pv_ratio_report, sieve_ratio_report

SCHEMA = "v1"


def _fmt(v) -> str:
    if isinstance(v, float):
        return format(v, ".17g")
    return str(v)


def _emit(config: dict, columns: list[str], rows: list[tuple], summary: dict,
          fmt: str, out_path: str | None) -> None:
    if fmt == "csv":
        lines = [f"# schema={SCHEMA}",
                 "# config=" + json.dumps(config, sort_keys=True)]
        lines.append(",".join(columns))
        for row in rows:
            lines.append(",".join(_fmt(v) for v in row))
        if summary:
            lines.append("# summary=" + json.dumps(summary, sort_keys=True))
        text = "\n".join(lines) + "\n"
    else:
        payload = {
            "schema": SCHEMA,
            "config": config,
            "columns": columns,
            "rows": [[v for v in row] for row in rows],
            "summary": summary,
        }
        text = json.dumps(payload, sort_keys=True, indent=1) + "\n"
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _parse_gauss(text: str) -> GaussianInt:
    return GaussianInt.parse(text)


def _add_output_flags(sub) -> None:
    sub.add_argument("--out", default=None, help="output path (default stdout)")
    sub.add_argument("--format", choices=("csv", "json"), default="csv")


def cmd_symbol(args) -> int:
    a = _parse_gauss(args.a)
    n = _parse_gauss(args.n)
    print(quartic_symbol(a, n))
    return 0


def cmd_gauss(args) -> int:
    r = _parse_gauss(args.r)
    n = _parse_gauss(args.n)
    if args.g2:
        gv = gauss_sum_g2(n)
    elif args.method == "fast":
        gv = gauss_sum_fast(r, n)
    else:
        gv = gauss_sum(r, n)
    config = {"command": "gauss", "r": str(r), "n": str(n), "g2": args.g2,
              "method": args.method, "version": __version__}
    rows = [(str(n), gv.n_norm, gv.value.real, gv.value.imag, abs(gv.value))]
    _emit(config, ["n", "norm", "value_re", "value_im", "abs"], rows,
          {"exact_zero": gv.exact_zero}, args.format, args.out)
    return 0


def cmd_lvalue(args) -> int:
    c = _parse_gauss(args.c)
    lv = l_half(c, x=args.x, tol=args.tol)
    config = {"command": "lvalue", "c": str(c), "x": lv.x_used, "tol": args.tol,
              "version": __version__}
    rows = [(str(c), lv.conductor_norm, lv.value.real, lv.value.imag,
             lv.truncation_terms, lv.est_error)]
    _emit(config, ["c", "norm", "l_re", "l_im", "terms", "est_error"], rows,
          {}, args.format, args.out)
    return 0


def cmd_moment(args) -> int:
    rep = first_moment(args.y, x=args.x, tol=args.tol, cut=args.cut,
                       threads=args.threads, include_one=not args.exclude_one)
    config = {"command": "moment", "y": rep.y, "x": rep.x, "tol": rep.tol,
              "cut": rep.cut, "include_one": rep.include_one,
              "version": __version__}
    rows = [
        (str(row.c), row.norm, row.weight,
         row.s1.real, row.s1.imag, row.s2.real, row.s2.imag,
         row.l_value.real, row.l_value.imag)
        for row in rep.rows
    ]
    summary = {
        "sigma1_re": _fmt(rep.sigma1.real), "sigma1_im": _fmt(rep.sigma1.imag),
        "sigma2_re": _fmt(rep.sigma2.real), "sigma2_im": _fmt(rep.sigma2.imag),
        "total_re": _fmt(rep.total.real), "total_im": _fmt(rep.total.imag),
        "A": _fmt(rep.constant.A), "main_term": _fmt(rep.main_term),
        "ratio": _fmt(rep.ratio), "imag_leak": _fmt(rep.imag_leak),
    }
    _emit(config,
          ["c", "norm", "weight", "s1_re", "s1_im", "s2_re", "s2_im", "l_re", "l_im"],
          rows, summary, args.format, args.out)
    return 0


def cmd_constant_a(args) -> int:
    cb = constant_A(args.tol)
    config = {"command": "constant-a", "tol": args.tol, "version": __version__}
    rows = [(cb.geometric, cb.residue, cb.class_number, cb.zeta2, cb.ideal_sum, cb.A)]
    _emit(config, ["geometric", "residue", "class_number", "zeta2", "ideal_sum", "A"],
          rows, {}, args.format, args.out)
    return 0


def cmd_sieve(args) -> int:
    rep = sieve_ratio_report(args.m, args.n, args.trials, args.seed,
                             threshold=args.threshold, coeff_kind=args.coeff)
    config = {"command": "sieve", "M": rep.m_bound, "N": rep.n_bound,
              "trials": rep.trials, "seed": rep.seed, "coeff": rep.coeff_kind,
              "threshold": rep.threshold, "version": __version__}
    rows = [(row.trial, row.ratio) for row in rep.rows]
    _emit(config, ["trial", "ratio"], rows,
          {"max_ratio": _fmt(rep.max_ratio), "passed": rep.passed},
          args.format, args.out)
    return 0 if rep.passed else 2


def cmd_pv(args) -> int:
    rep = pv_ratio_report(args.y, args.norm_bound, threshold=args.threshold)
    config = {"command": "pv", "y": rep.y, "norm_bound": rep.norm_bound,
              "cut": rep.cut, "threshold": rep.threshold, "version": __version__}
    rows = [(str(row.a), row.norm, row.ratio) for row in rep.rows]
    _emit(config, ["a", "norm", "ratio"], rows,
          {"max_ratio": _fmt(rep.max_ratio), "passed": rep.passed},
          args.format, args.out)
    return 0 if rep.passed else 2


# -- verify suites -------------------------------------------------------------

def _suite_symbols(args) -> bool:
    from .characters import (quartic_symbol_prime_brute, reciprocity_check,
                             supplement_1plusi, supplement_i)
    from .gaussian import I_UNIT, ONE_PLUS_I, gcd, primary_in_disk
    import random

    bound = args.bound or 2000
    primes = primary_primes(bound)
    bad = 0
    for pi in primes:
        if supplement_i(pi) != quartic_symbol_prime_brute(I_UNIT, pi):
            bad += 1
        if supplement_1plusi(pi) != quartic_symbol_prime_brute(ONE_PLUS_I, pi):
            bad += 1
    print(f"supplements vs prime oracle: {len(primes)} primes, {bad} failures")
    ok = bad == 0
    rng = random.Random(args.seed)
    pool = [z for z in primary_in_disk(1000) if not z.is_unit]
    checked = 0
    bad = 0
    while checked < 200:
        m, n = rng.choice(pool), rng.choice(pool)
        if gcd(m, n) != ONE:
            continue
        checked += 1
        if not reciprocity_check(m, n):
            bad += 1
    print(f"reciprocity on random composite pairs: {checked} pairs, {bad} failures")
    return ok and bad == 0


def _suite_gauss(args) -> bool:
    import random

    from .gaussian import primary_in_disk

    bound = args.bound or 500
    worst = 0.0
    count = 0
    for n in primary_in_disk(bound):
        g = gauss_sum(ONE, n).value
        expected = n.norm() if is_squarefree(n) else 0
        worst = max(worst, abs(abs(g) ** 2 - expected) / n.norm())
        count += 1
    print(f"magnitude law |g(n)|^2 on {count} moduli: worst {worst:.2e}")
    ok = worst <= 1e-6
    rng = random.Random(args.seed)
    pool = [z for z in primary_in_disk(200) if not z.is_unit]
    worst = 0.0
    cases = 0
    while cases < (args.count or 100):
        n = rng.choice(pool)
        r = rng.choice(pool + [ONE])
        if n.norm() > 4000:
            continue
        vd = gauss_sum(r, n).value
        vf = gauss_sum_fast(r, n).value
        worst = max(worst, abs(vd - vf) / max(abs(vd), abs(vf), 1.0))
        cases += 1
    print(f"fast vs direct on {cases} random (r, n): worst rel {worst:.2e}")
    return ok and worst <= 1e-9


def _suite_hfunc(args) -> bool:
    group, chars = ray_class_group()
    T = args.t or 2000
    count = args.count or 6
    all_ok = True
    for ident in IDENTITIES:
        reports = run_identity_suite(ident, count, args.seed,
                                     (2.5, 2.25, 2 + 0.5j), T, chars=chars)
        passed = sum(r.passed for r in reports)
        print(f"identity {ident}: {passed}/{len(reports)} within tail budget")
        all_ok = all_ok and passed == len(reports)
    return all_ok


def _suite_root_number(args) -> bool:
    bound = args.bound or 1000
    count = 0
    for c in enumerate_c_1mod16(bound):
        if not is_squarefree(c):
            continue
        root_number(c)  # raises on dual-route mismatch
        count += 1
    print(f"root number dual-route agreement: {count} conductors")
    return True


def _suite_afe(args) -> bool:
    bound = args.bound or 600
    tol = 1e-8
    worst_fe = 0.0
    worst_x = 0.0
    count = 0
    for c in enumerate_c_1mod16(bound):
        if not is_squarefree(c) or c == ONE:
            continue
        nc = c.norm()
        vals = [l_half(c, x=x, tol=tol).value
                for x in (10.0, math.sqrt(4.0 * nc), 2.0 * nc)]
        worst_x = max(worst_x, max(abs(v - vals[0]) for v in vals))
        worst_fe = max(worst_fe, functional_equation_check(c, tol=tol))
        count += 1
    print(f"AFE x-independence on {count} conductors: worst {worst_x:.2e}")
    print(f"functional-equation discrepancy: worst {worst_fe:.2e}")
    return worst_x <= 2 * tol and worst_fe <= 1e-6


SUITES = {
    "symbols": _suite_symbols,
    "gauss-algebra": _suite_gauss,
    "hfunc-identities": _suite_hfunc,
    "root-number": _suite_root_number,
    "afe": _suite_afe,
}


def cmd_verify(args) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    ok = True
    for name in names:
        print(f"== suite {name} ==")
        ok = SUITES[name](args) and ok
    print("PASS" if ok else "FAIL")
    return 0 if ok else 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quartic-hecke",
        description="Quartic residue symbols, Gauss sums over Z[i], Hecke "
                    "L-values and first-moment experiments.",
        epilog='Gaussian integers are written without spaces as RE+IMi, '
               'e.g. "3+2i", "-15", "1-16i", "i".',
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("symbol", help="quartic residue symbol (a/n)_4")
    p.add_argument("a")
    p.add_argument("n")
    p.set_defaults(func=cmd_symbol)

    p = sub.add_parser("gauss", help="Gauss sum g(r, n) or g_2(n)")
    p.add_argument("r")
    p.add_argument("n")
    p.add_argument("--g2", action="store_true", help="quadratic companion g_2(n)")
    p.add_argument("--method", choices=("direct", "fast"), default="direct")
    _add_output_flags(p)
    p.set_defaults(func=cmd_gauss)

    p = sub.add_parser("lvalue", help="L(1/2, chi_c) via the AFE")
    p.add_argument("c")
    p.add_argument("--x", type=float, default=None)
    p.add_argument("--tol", type=float, default=1e-8)
    _add_output_flags(p)
    p.set_defaults(func=cmd_lvalue)

    p = sub.add_parser("moment", help="smoothed first moment at scale y")
    p.add_argument("--y", type=float, required=True)
    p.add_argument("--x", type=float, default=None)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--cut", type=float, default=1e-12)
    p.add_argument("--threads", type=int, default=None,
                   help="worker processes (default: all cores; never affects output)")
    p.add_argument("--exclude-one", action="store_true",
                   help="drop the c = 1 term from the family")
    _add_output_flags(p)
    p.set_defaults(func=cmd_moment)

    p = sub.add_parser("constant-a", help="the first-moment constant A")
    p.add_argument("--tol", type=float, default=1e-8)
    _add_output_flags(p)
    p.set_defaults(func=cmd_constant_a)

    p = sub.add_parser("sieve", help="bilinear large-sieve ratio report")
    p.add_argument("--m", type=int, default=500)
    p.add_argument("--n", type=int, default=500)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--threshold", type=float, default=50.0)
    p.add_argument("--coeff", choices=("pm1", "gauss"), default="pm1")
    _add_output_flags(p)
    p.set_defaults(func=cmd_sieve)

    p = sub.add_parser("pv", help="Polya-Vinogradov-style ratio report")
    p.add_argument("--y", type=float, default=400.0)
    p.add_argument("--norm-bound", type=int, default=200)
    p.add_argument("--threshold", type=float, default=10.0)
    _add_output_flags(p)
    p.set_defaults(func=cmd_pv)

    p = sub.add_parser("verify", help="cross-validation suites")
    p.add_argument("suite", choices=tuple(SUITES) + ("all",))
    p.add_argument("--bound", type=int, default=None)
    p.add_argument("--count", type=int, default=None)
    p.add_argument("--t", type=int, default=None, help="h-series truncation")
    p.add_argument("--seed", type=int, default=1)
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

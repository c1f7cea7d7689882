"""Command-line interface.

Exit codes: 0 decided or verified, 1 negative answer, 2 resource guard hit,
3 input error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import bounds, families, linear, polyideal, textio
from .certify import leibniz_power_check, verify
from .commpoly import poly_text
from .diffring import DiffRing
from .prolong import DiffSystem, prolong, snapshot, snapshot_ring

OK, NEGATIVE, GUARD, INPUT = 0, 1, 2, 3


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def _guard(args) -> polyideal.Guard:
    return polyideal.Guard(max_degree=args.max_degree, max_basis=args.max_basis)


def _int_list(text: str) -> tuple:
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _spec(args) -> families.FamilySpec:
    return families.FamilySpec(args.family, d=args.d, h=args.h, n=args.n, m=args.m,
                               verbatim=args.verbatim, inner=args.inner)


# -- commands --------------------------------------------------------------------------

def cmd_prolong(args):
    F = textio.parse_system(_read(args.sysfile))
    return prolong(F, args.k), OK


def cmd_snapshot(args):
    F = textio.parse_system(_read(args.sysfile))
    polys = snapshot(F, args.l, args.order)
    ring = snapshot_ring(F.ring, args.l, args.order)
    return {"variables": [ring.label_text(v) for v in ring.labels],
            "polynomials": [poly_text(p) for p in polys]}, OK


def cmd_consistent(args):
    F = textio.parse_system(_read(args.sysfile))
    unit = polyideal.is_inconsistent(F, args.k, _guard(args))
    return {"k": args.k, "one_in_prolonged_ideal": unit}, OK if unit else NEGATIVE


def cmd_min_k(args):
    F = textio.parse_system(_read(args.sysfile))
    k = polyideal.consistency_profile(F, args.max, _guard(args))
    return {"max": args.max, "min_k": k}, OK if k is not None else NEGATIVE


def cmd_bound(args):
    report = bounds.main_bound(args.m, args.n, args.h, args.d, c=args.const,
                               digit_budget=args.digit_budget,
                               compare_ackermann=args.compare_ackermann)
    return report, OK


def cmd_lower_bound(args):
    value = bounds.lower_bound_formula(args.family, d=args.d, h=args.h, n=args.n, m=args.m)
    return {"family": args.family, "value": value}, OK


def cmd_gen(args):
    return families.generate(_spec(args)), OK


def cmd_cert(args):
    return families.certificate(_spec(args)), OK


def cmd_verify_cert(args):
    cert_text = _read(args.certfile)
    sys_text = _read(args.sysfile)
    if '"poly_certificate"' in cert_text:
        cert = textio.parse_certificate(cert_text)
        system = textio.parse_polynomials(sys_text)
    else:
        system = textio.parse_system(sys_text)
        cert = textio.parse_certificate(cert_text, ring=system.ring)
    try:
        report = verify(cert, system)
    except IndexError as exc:
        raise textio.DocumentError(str(exc)) from None
    return report, OK if report.ok else NEGATIVE


def _tilde_system(fs) -> DiffSystem:
    ring = DiffRing(fs[0].ring.nvars, 1)
    return DiffSystem(ring, tuple(linear.tilde(f, 1, ring) for f in fs))


def cmd_translate(args):
    return _tilde_system(textio.parse_polynomials(_read(args.polyfile))), OK


def cmd_linear_min_k(args):
    if args.from_poly:
        system = _tilde_system(textio.parse_polynomials(_read(args.sysfile)))
        ring = system.ring
        target = linear.tilde(textio.parse_commpoly(args.target, ring.m), 1, ring)
    else:
        system = textio.parse_system(_read(args.sysfile))
        target = textio.parse_poly(args.target, system.ring)
    found = linear.linear_threshold(target, system, args.max)
    return found, OK if found.order is not None else NEGATIVE


def cmd_leibniz_check(args):
    c, holds = leibniz_power_check(args.D, args.p)
    good = holds and c > 0 and c.denominator == 1
    return {"D": list(args.D), "p": args.p, "c": c, "holds": good}, OK if good else NEGATIVE


# -- parser ----------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--pretty", action="store_true", help="render derivatives as d1 d2 ... y")
    common.add_argument("--max-degree", type=int, default=polyideal.Guard().max_degree)
    common.add_argument("--max-basis", type=int, default=polyideal.Guard().max_basis)

    fam = argparse.ArgumentParser(add_help=False)
    fam.add_argument("--family", required=True)
    for name in ("d", "h", "n", "m"):
        fam.add_argument(f"--{name}", type=int)
    fam.add_argument("--verbatim", action="store_true",
                     help="ex45/ex46: last generator with d_m^h as printed")
    fam.add_argument("--inner", default="ex45", help="family wrapped by rabinowitsch_wrap")

    p = argparse.ArgumentParser(prog="diffnull", description="Effective differential Nullstellensatz toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("prolong", parents=[common], help="all theta(f) with ord(theta) <= k")
    s.add_argument("-k", type=int, required=True)
    s.add_argument("sysfile")
    s.set_defaults(func=cmd_prolong)

    s = sub.add_parser("snapshot", parents=[common], help="flatten into commutative z-variables")
    s.add_argument("-l", type=int, required=True)
    s.add_argument("--order", choices=("grevlex", "lex"), default="grevlex")
    s.add_argument("sysfile")
    s.set_defaults(func=cmd_snapshot)

    s = sub.add_parser("consistent", parents=[common], help="is 1 in the ideal of F^(k)?")
    s.add_argument("-k", type=int, required=True)
    s.add_argument("sysfile")
    s.set_defaults(func=cmd_consistent)

    s = sub.add_parser("min-k", parents=[common], help="smallest k with 1 in (F^(k))")
    s.add_argument("--max", type=int, required=True)
    s.add_argument("sysfile")
    s.set_defaults(func=cmd_min_k)

    s = sub.add_parser("bound", parents=[common], help="main upper bound")
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--h", type=int, required=True)
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--const", type=int, default=1, help="O-constant c of the exponent")
    s.add_argument("--digit-budget", type=int, default=bounds.DEFAULT_DIGIT_BUDGET)
    s.add_argument("--compare-ackermann", action="store_true")
    s.set_defaults(func=cmd_bound)

    s = sub.add_parser("lower-bound", parents=[common], help="order formula of a lower-bound family")
    s.add_argument("--family", required=True, choices=bounds.LOWER_BOUND_FAMILIES)
    for name in ("d", "h", "n", "m"):
        s.add_argument(f"--{name}", type=int)
    s.set_defaults(func=cmd_lower_bound)

    s = sub.add_parser("gen", parents=[common, fam], help="generate an example system")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("cert", parents=[common, fam], help="explicit certificate of an example family")
    s.set_defaults(func=cmd_cert)

    s = sub.add_parser("verify-cert", parents=[common], help="check a certificate by expansion")
    s.add_argument("certfile")
    s.add_argument("sysfile")
    s.set_defaults(func=cmd_verify_cert)

    s = sub.add_parser("translate", parents=[common], help="polynomial document to its linear PDE system")
    s.add_argument("polyfile")
    s.set_defaults(func=cmd_translate)

    s = sub.add_parser("linear-min-k", parents=[common], help="smallest l with target in (G)^(l), linear G")
    s.add_argument("sysfile")
    s.add_argument("--target", required=True)
    s.add_argument("--max", type=int, required=True)
    s.add_argument("--from-poly", action="store_true",
                   help="sysfile is a polynomial document and target a polynomial in X1..Xm")
    s.set_defaults(func=cmd_linear_min_k)

    s = sub.add_parser("leibniz-check", parents=[common], help="split D^p(y^p) = c (Dy)^p + lower")
    s.add_argument("--D", type=_int_list, required=True, help="exponents of D, e.g. 1,0")
    s.add_argument("--p", type=int, required=True)
    s.set_defaults(func=cmd_leibniz_check)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        value, code = args.func(args)
    except polyideal.ResourceExceeded as exc:
        print(f"resource guard: {exc}", file=sys.stderr)
        if exc.decided_up_to is not None:
            print(f"decided up to k = {exc.decided_up_to}", file=sys.stderr)
        return GUARD
    except bounds.BudgetExceeded as exc:
        print(f"resource guard: {exc}", file=sys.stderr)
        return GUARD
    except (OSError, ValueError, linear.NotLinear) as exc:
        print(str(exc), file=sys.stderr)
        return INPUT
    sys.stdout.buffer.write(textio.render(value, args.format, args.pretty))
    sys.stdout.flush()
    return code


if __name__ == "__main__":
    sys.exit(main())

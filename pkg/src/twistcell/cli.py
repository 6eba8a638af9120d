"""Batch command-line interface.

Subcommands: ``enum`` (monoid tables), ``green`` (classes plus the
closed-form cross-check), ``cell-datum`` (assembled datum), ``gram``
(per-cell Gram matrices and factorizations), ``semisimple`` (sandwich
criterion against the trace-form oracle), ``verify`` (invariant battery),
``mul`` (one diagram product).  Everything is JSON in, JSON out; exit
code 1 flags a failed validation, 2 a usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import jsonio
from .assembly import assemble, gram_factorization, semisimplicity_report
from .cellular import radical_oracle
from .diagrams import SetPartition, build_monoid, partition_mul
from .errors import AlphaNotUnit, TwistcellError
from .polyring import format_rational
from .verify import run_suite


def _add_monoid_args(p):
    p.add_argument("--kind", required=True, choices=("partition", "brauer", "tl"))
    p.add_argument("--n", required=True, type=int)
    p.add_argument("--force", action="store_true", help="override the size guard")


def _emit(args, payload) -> None:
    text = jsonio.dumps(payload)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _parse_delta(text: str) -> Fraction:
    return Fraction(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="twistcell",
        description="Twisted semigroup algebras of diagram monoids, exactly.",
    )
    parser.add_argument("--out", help="write JSON here instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enum", help="enumerate a monoid with its tables")
    _add_monoid_args(p)

    p = sub.add_parser("green", help="Green classes and the closed-form cross-check")
    p.add_argument(
        "--kind", required=True, choices=("partition", "brauer", "tl", "generic")
    )
    p.add_argument("--n", type=int, help="rank (diagram kinds)")
    p.add_argument("--force", action="store_true", help="override the size guard")
    p.add_argument("--table", help="semigroup JSON file (generic kind)")

    p = sub.add_parser("cell-datum", help="assemble and validate the cell datum")
    _add_monoid_args(p)
    p.add_argument("--mode", default="const-beta", choices=("const-beta", "unit-alpha"))
    p.add_argument("--delta", default="symbolic", help='"symbolic" or a rational like 3/2')

    p = sub.add_parser("gram", help="Gram matrices and sandwich factorizations")
    _add_monoid_args(p)

    p = sub.add_parser("semisimple", help="semisimplicity at a rational delta")
    _add_monoid_args(p)
    p.add_argument("--delta", required=True, help="rational value, e.g. 2 or 1/2")

    p = sub.add_parser("verify", help="run the invariant battery")
    _add_monoid_args(p)

    p = sub.add_parser("mul", help="multiply two diagrams from JSON files")
    p.add_argument("--kind", required=True, choices=("partition", "brauer", "tl"))
    p.add_argument("--n", required=True, type=int)
    p.add_argument("--x", required=True, help="JSON file with the left diagram")
    p.add_argument("--y", required=True, help="JSON file with the right diagram")
    return parser


def _cmd_enum(args) -> int:
    monoid = build_monoid(args.kind, args.n, allow_large=args.force)
    _emit(args, jsonio.monoid_to_json(monoid))
    return 0


def _cmd_green(args) -> int:
    if args.kind == "generic":
        if not args.table:
            raise TwistcellError("generic kind needs --table with a semigroup JSON file")
        from .semigroups import FiniteSemigroup, compute_green

        with open(args.table) as fh:
            sg = FiniteSemigroup.from_json(json.load(fh))
        green = compute_green(sg)
        payload = {
            "kind": "generic",
            "size": sg.size,
            "num_r_classes": len(green.r_classes),
            "num_l_classes": len(green.l_classes),
            "num_d_classes": green.num_d_classes,
            "d_classes": [sorted(c) for c in green.d_classes],
        }
        _emit(args, payload)
        return 0
    if args.n is None:
        raise TwistcellError("diagram kinds need --n")
    monoid = build_monoid(args.kind, args.n, allow_large=args.force)
    green = monoid.green()
    engine = green.partitions()
    closed = monoid.closed_form_partitions()
    agree = engine == closed
    payload = {
        "kind": args.kind,
        "n": args.n,
        "num_r_classes": len(green.r_classes),
        "num_l_classes": len(green.l_classes),
        "num_d_classes": green.num_d_classes,
        "d_classes": [sorted(c) for c in green.d_classes],
        "closed_form_agrees": agree,
    }
    _emit(args, payload)
    return 0 if agree else 1


def _cmd_cell_datum(args) -> int:
    monoid = build_monoid(args.kind, args.n, allow_large=args.force)
    delta = None if args.delta == "symbolic" else _parse_delta(args.delta)
    assembled = assemble(monoid, args.mode, delta_value=delta)
    payload = {
        "kind": args.kind,
        "n": args.n,
        "mode": args.mode,
        "delta": args.delta,
        "validated": True,
        "datum": jsonio.datum_to_json(assembled.datum),
    }
    _emit(args, payload)
    return 0


def _cmd_gram(args) -> int:
    monoid = build_monoid(args.kind, args.n, allow_large=args.force)
    assembled = assemble(monoid, "const-beta")
    cells = []
    all_ok = True
    for fi, frame in enumerate(assembled.frames):
        for lam in assembled.group_data[fi].datum.poset.labels:
            fact = gram_factorization(assembled, fi, lam)
            ok = fact.matrices_equal and fact.dets_equal
            all_ok = all_ok and ok
            cells.append(
                {
                    "frame": fi,
                    "cell": jsonio.listify(lam),
                    "gram": fact.big_gram.to_json(),
                    "group_gram": fact.group_gram.to_json(),
                    "rho_sandwich": fact.rho_sandwich.to_json(),
                    "det_gram": fact.det_big.to_json(),
                    "det_factored": fact.det_factored.to_json(),
                    "matrices_equal": fact.matrices_equal,
                    "dets_equal": fact.dets_equal,
                }
            )
    _emit(args, {"kind": args.kind, "n": args.n, "cells": cells, "all_ok": all_ok})
    return 0 if all_ok else 1


def _cmd_semisimple(args) -> int:
    monoid = build_monoid(args.kind, args.n, allow_large=args.force)
    delta = _parse_delta(args.delta)
    try:
        report = semisimplicity_report(monoid, delta)
    except AlphaNotUnit:
        oracle = radical_oracle(monoid.semigroup, monoid.algebra().twisting, delta)
        payload = {
            "kind": args.kind,
            "n": args.n,
            "delta": str(delta),
            "sandwich_criterion": "inapplicable (twist not invertible)",
            "oracle_semisimple": oracle.semisimple,
        }
        _emit(args, payload)
        return 0
    payload = {
        "kind": args.kind,
        "n": args.n,
        "delta": str(delta),
        "semisimple": report.semisimple,
        "oracle_semisimple": report.oracle_semisimple,
        "agree": report.agree,
        "per_d_class": [
            {
                "d_class": fv.d_class,
                "group_semisimple": fv.group_semisimple,
                "sandwich_invertible": fv.sandwich_invertible,
                "sandwich_dets": {
                    str(list(k)): format_rational(v) for k, v in fv.sandwich_dets.items()
                },
            }
            for fv in report.per_frame
        ],
    }
    _emit(args, payload)
    return 0 if report.agree else 1


def _cmd_verify(args) -> int:
    monoid = build_monoid(args.kind, args.n, allow_large=args.force)
    suite = run_suite(monoid)
    payload = {
        "kind": args.kind,
        "n": args.n,
        "checks": {name: jsonio.report_to_json(r) for name, r in suite.items()},
        "all_ok": all(r.ok for r in suite.values()),
    }
    _emit(args, payload)
    return 0 if payload["all_ok"] else 1


def _cmd_mul(args) -> int:
    with open(args.x) as fh:
        x = SetPartition.from_json(json.load(fh))
    with open(args.y) as fh:
        y = SetPartition.from_json(json.load(fh))
    if x.n != args.n or y.n != args.n:
        raise TwistcellError("diagram rank does not match --n")
    product, m = partition_mul(x, y)
    _emit(args, {"product": product.to_json(), "m": m})
    return 0


_COMMANDS = {
    "enum": _cmd_enum,
    "green": _cmd_green,
    "cell-datum": _cmd_cell_datum,
    "gram": _cmd_gram,
    "semisimple": _cmd_semisimple,
    "verify": _cmd_verify,
    "mul": _cmd_mul,
}


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    try:
        return _COMMANDS[args.command](args)
    except TwistcellError as exc:
        sys.stdout.write(
            jsonio.dumps({"error": type(exc).__name__, "detail": str(exc)})
        )
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

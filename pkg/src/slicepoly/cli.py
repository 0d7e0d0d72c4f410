"""Command-line front end: ``slicepoly kernel|verify|table``.

Exit codes: 0 success, 1 failed verification cases, 2 bad flags,
3 domain errors (point outside the ball, series not converging).
"""
from __future__ import annotations

import argparse
import csv
import json
import sys

import numpy as np

from .errors import DomainError, InvalidOrder, NoConvergence
from .kernels import E_STAR_TOL, bergman_kernel, bergman_kernel_alt, e_star, fock_kernel
from .quaternion import Quaternion, as_unit, embed
from .verify import SUITES, run_suite

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_DOMAIN = 3

FOCK_BOX = 2.0
BERGMAN_BOX = 0.95


def _quaternion_arg(text: str) -> Quaternion:
    parts = text.split(",")
    if len(parts) != 4:
        raise argparse.ArgumentTypeError(f"expected a,b,c,d, got {text!r}")
    try:
        return Quaternion(*(float(p) for p in parts))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad quaternion {text!r}: {exc}") from None


def _positive_int(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {n}")
    return n


def _nonnegative_int(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if n < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {n}")
    return n


def _positive_float(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}") from None
    if not v > 0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="slicepoly", description="Slice polyanalytic kernels on quaternions."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    k = sub.add_parser("kernel", help="evaluate one kernel value as JSON")
    k.add_argument("--kind", choices=("fock", "bergman", "estar"), required=True)
    k.add_argument("--order", type=_positive_int, default=1)
    k.add_argument("--q", type=_quaternion_arg, required=True)
    k.add_argument("--r", type=_quaternion_arg, required=True)
    k.add_argument("--alt", action="store_true", help="use the second Bergman closed form")
    k.add_argument("--tol", type=_positive_float, default=E_STAR_TOL)

    v = sub.add_parser("verify", help="run seeded verification suites")
    v.add_argument("--suite", choices=SUITES + ("all",), default="all")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--samples", type=_nonnegative_int, default=20)
    v.add_argument("--nodes", type=_positive_int, default=None)

    t = sub.add_parser("table", help="kernel values on a slice grid as CSV")
    t.add_argument("--kind", choices=("fock", "bergman"), required=True)
    t.add_argument("--order", type=_positive_int, default=1)
    t.add_argument("--slice", choices=("i", "j", "k"), default="i")
    t.add_argument("--grid", type=_positive_int, default=21)
    t.add_argument("--r", type=_quaternion_arg, default=Quaternion(0.0, 0.0, 0.0, 0.0))
    return parser


def cmd_kernel(args, out) -> int:
    if args.kind == "estar":
        kv = e_star(args.q, args.r, tol=args.tol)
    elif args.kind == "fock":
        kv = fock_kernel(args.order, args.q, args.r, tol=args.tol)
    elif args.alt:
        kv = bergman_kernel_alt(args.order, args.q, args.r)
    else:
        kv = bergman_kernel(args.order, args.q, args.r)
    value = [float(c) for c in np.asarray(kv.value)]
    json.dump({"value": value, "terms_used": int(kv.terms_used)}, out)
    out.write("\n")
    return EXIT_OK


def cmd_verify(args, out) -> int:
    report = run_suite(args.suite, args.seed, args.samples, args.nodes)
    json.dump(report.to_dict(), out)
    out.write("\n")
    return EXIT_OK if report.ok else EXIT_FAILED


def cmd_table(args, out) -> int:
    n = args.grid
    box = FOCK_BOX if args.kind == "fock" else BERGMAN_BOX
    ticks = np.linspace(-box, box, n) if n > 1 else np.zeros(1)
    X, Y = np.meshgrid(ticks, ticks, indexing="ij")
    x, y = X.ravel(), Y.ravel()
    if args.kind == "bergman":
        keep = x**2 + y**2 <= BERGMAN_BOX**2
        x, y = x[keep], y[keep]
    q = embed(as_unit(args.slice), x, y)
    r = np.asarray(args.r)
    if args.kind == "fock":
        vals = fock_kernel(args.order, q, r).value
    else:
        vals = bergman_kernel(args.order, q, r).value
    vals = np.asarray(vals).reshape(-1, 4)
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["x", "y", "v0", "v1", "v2", "v3"])
    for xi, yi, v in zip(x, y, vals):
        writer.writerow([repr(float(xi)), repr(float(yi))] + [repr(float(c)) for c in v])
    return EXIT_OK


_COMMANDS = {"kernel": cmd_kernel, "verify": cmd_verify, "table": cmd_table}


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return _COMMANDS[args.command](args, out)
    except (DomainError, NoConvergence) as exc:
        print(f"slicepoly: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except InvalidOrder as exc:
        print(f"slicepoly: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

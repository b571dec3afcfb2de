"""Command-line interface.

Exit codes: 0 success or all checks pass, 1 a check failed or the
computation was rejected, 2 usage or parse error.
"""
from __future__ import annotations

import argparse
import csv
import io
import sys

import numpy as np

from . import acceptance
from .basis import DEFAULT_TOL, dump_matrix, dumps, enumerate_basis, format_float, load_matrix
from .errors import GPTError, ParseError, StructuralError
from .physicality import characterize_2x2, check_all, family_matrix
from .quantum import boson_transition_matrix, bs_unitary, unitary_from_json
from .quon import QuonModel, quon_transition_matrix, sweep_rows
from .removal import removal_matrix

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _positive_float(text: str) -> float:
    x = float(text)
    if not x > 0:
        raise argparse.ArgumentTypeError("tolerance must be positive")
    return x


def _positive_int(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {n}")
    return n


def _float_list(text: str) -> list[float]:
    return [float(x) for x in text.split(",") if x.strip()]


def _add_global(p: argparse.ArgumentParser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--tol", type=_positive_float, default=d(None),
                   help=f"comparison tolerance (default {DEFAULT_TOL:g})")
    p.add_argument("--json", action="store_true", default=d(False), help="machine-readable output")
    p.add_argument("--out", default=d(None), help="write output to this path instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gptparticles",
        description="Physicality checks for noninteracting identical particles in modes.",
    )
    _add_global(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _add_global(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("basis", parents=[common], help="list the occupation basis")
    p.add_argument("N", type=_positive_int)
    p.add_argument("M", type=_positive_int)

    p = sub.add_parser("removal", parents=[common], help="particle-removal matrix R(N)")
    p.add_argument("N", type=_positive_int)
    p.add_argument("M", type=_positive_int)

    p = sub.add_parser("family", parents=[common], help="one-parameter family matrix")
    p.add_argument("beta", type=float)

    p = sub.add_parser("quantum", parents=[common], help="boson matrix of a beam splitter")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--theta", type=float, help="beam-splitter angle in radians")
    src.add_argument("--unitary", help="JSON file with a unitary as [re, im] pairs")
    p.add_argument("N", type=_positive_int, nargs="?", default=2)

    p = sub.add_parser("quon", parents=[common], help="two-quon transition matrix or CSV sweep")
    p.add_argument("q", type=float, nargs="?")
    p.add_argument("R", type=float, nargs="?")
    p.add_argument("--sweep", action="store_true", help="emit CSV over a (q, R) grid")
    p.add_argument("--q-grid", type=_float_list, default=[-0.99, -0.5, 0.0, 0.5, 1.0])
    p.add_argument("--r-grid", type=_float_list,
                   default=[round(0.1 * k, 10) for k in range(11)])

    p = sub.add_parser("check", parents=[common], help="physicality report for a matrix file")
    p.add_argument("file")
    p.add_argument("--single", help="single-particle matrix file to check against")

    sub.add_parser("demo", parents=[common], help="reproduce every reference result")
    return parser


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _verdict(v) -> str:
    if v.passed:
        return "PASS"
    return "FAIL" if np.isfinite(v.residual) else "FAIL (not evaluated)"


def _report_text(rep) -> str:
    lines = []
    for label, v in (("double stochasticity", rep.doubly_stochastic),
                     ("no-interaction", rep.no_interaction),
                     ("evolution principle", rep.evolution)):
        lines.append(f"{label:22s} {_verdict(v):5s} residual={v.residual:.3g}")
        if v.detail:
            lines.append(f"  {v.detail}")
    beta = "n/a" if rep.inferred_beta is None else format_float(rep.inferred_beta)
    lines.append(f"inferred beta          {beta}")
    lines.append(f"realizable             {rep.realizable}")
    if rep.realizing_theta is not None:
        lines.append(f"theta (cos^2 = beta)   {format_float(rep.realizing_theta)}")
    for w in rep.witnesses:
        obs = ", ".join(f"{x:.6g}" for x in w.observed)
        exp = ", ".join(f"{x:.6g}" for x in w.expected)
        lines.append(f"witness [{w.condition}] input {w.input_state}: observed ({obs}) expected ({exp})")
    return "\n".join(lines)


def cmd_basis(args) -> tuple[str, int]:
    b = enumerate_basis(args.N, args.M)
    if args.json:
        return dumps({"N": b.N, "M": b.M, "states": b.as_lists()}), EXIT_OK
    return "\n".join(f"{k}:({','.join(map(str, s))})" for k, s in enumerate(b)), EXIT_OK


def cmd_removal(args):
    return dump_matrix(removal_matrix(args.N, args.M)), EXIT_OK


def cmd_family(args):
    return dump_matrix(family_matrix(args.beta)), EXIT_OK


def cmd_quantum(args):
    tol = args.tol or DEFAULT_TOL
    U = bs_unitary(args.theta) if args.unitary is None else unitary_from_json(_read(args.unitary), tol)
    return dump_matrix(boson_transition_matrix(U, args.N, tol)), EXIT_OK


def cmd_quon(args):
    if args.sweep:
        header, rows = sweep_rows(args.q_grid, args.r_grid)
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow(["" if x is None else format_float(x) for x in row])
        return buf.getvalue().rstrip("\n"), EXIT_OK
    if args.q is None or args.R is None:
        raise UsageError("quon needs q and R (or --sweep)")
    return dump_matrix(quon_transition_matrix(QuonModel(args.q, args.R))), EXIT_OK


def cmd_check(args):
    tol = args.tol or DEFAULT_TOL
    T = load_matrix(_read(args.file))
    if not T.is_square:
        raise StructuralError("check needs a transformation from a basis to itself")
    single = load_matrix(_read(args.single)) if args.single else None
    if single is None and T.input_basis == enumerate_basis(2, 2):
        rep = characterize_2x2(T, tol)
        ok = rep.realizable
    else:
        rep = check_all(T, single, tol)
        ok = rep.realizable if rep.realizable is not None else rep.all_pass
    text = dumps(rep.to_dict()) if args.json else _report_text(rep)
    return text, EXIT_OK if ok else EXIT_FAIL


def cmd_demo(args):
    results = acceptance.run_all(args.tol)
    ok = all(r.passed for r in results)
    if args.json:
        return dumps([r.to_dict() for r in results]), EXIT_OK if ok else EXIT_FAIL
    lines = [f"{'#':>2}  {'check':40s} {'result':6s} {'residual':>10s} {'tol':>8s}  detail"]
    for r in results:
        lines.append(
            f"{r.id:>2}  {r.name:40s} {'PASS' if r.passed else 'FAIL':6s} "
            f"{r.residual:10.3g} {r.tol:8.1g}  {r.detail}"
        )
    lines.append("all checks passed" if ok else "SOME CHECKS FAILED")
    return "\n".join(lines), EXIT_OK if ok else EXIT_FAIL


COMMANDS = {
    "basis": cmd_basis,
    "removal": cmd_removal,
    "family": cmd_family,
    "quantum": cmd_quantum,
    "quon": cmd_quon,
    "check": cmd_check,
    "demo": cmd_demo,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        text, code = COMMANDS[args.command](args)
    except (UsageError, ParseError, StructuralError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GPTError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return code


if __name__ == "__main__":
    try:
        sys.exit(main())
    except BrokenPipeError as exc:
        sys.exit(exc.errno)

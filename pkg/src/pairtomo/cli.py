"""Command-line front end.

Commands: frame-check, tomograms, reconstruct, mub-check, qubit-demo,
gen-state. Exit codes: 0 = pass, 1 = mathematical or validation failure,
2 = usage or input error, so CI can tell artifact bugs from bad inputs.
Reports are deterministic for identical configuration and seed.

The S_n enumeration cap (default 8) can be raised with the environment
variable TOMO_MAX_FACTORIAL_N.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .algebra import matrix_to_state_json, random_state, state_from_json, state_to_json
from .errors import (
    IncompleteFamily,
    InvalidState,
    NotOddPrime,
    PairTomoError,
    TooLarge,
    Unsupported,
)
from .frames import frame_report
from .qubit import qubit_demo_report
from .serialize import dumps, format_float
from .tomography import (
    affine_basis_family,
    mub_family,
    mub_max_deviation,
    orthonormality_residual,
    parse_tomogram_csv,
    tomogram_csv,
    tomogram_family,
    validate_tomogram_family,
)

USAGE_ERROR = 2
MATH_FAILURE = 1


def _sn_cap() -> int | None:
    raw = os.environ.get("TOMO_MAX_FACTORIAL_N")
    return int(raw) if raw else None


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    else:
        Path(path).write_text(text if text.endswith("\n") else text + "\n")


def _report_text(report: dict, fmt: str) -> str:
    if fmt == "csv":
        lines = [f"{k},{_cell(v)}" for k, v in sorted(report.items())]
        return "\n".join(lines)
    return dumps(report)


def _cell(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return format_float(v)
    return str(v)


def cmd_gen_state(args) -> int:
    state = random_state(args.n, args.seed)
    _write(args.out, state_to_json(state))
    return 0


def cmd_frame_check(args) -> int:
    report = frame_report(
        args.group, args.n, seed=args.seed, tol=args.tol, max_n=_sn_cap()
    )
    _write(args.out, _report_text(report, args.format))
    ok = (
        report["closed_vs_bruteforce"] <= args.tol
        and report["resolution_residual"] <= args.tol
        and report["bound_check_on_span"]
    )
    return 0 if ok else MATH_FAILURE


def cmd_tomograms(args) -> int:
    state = state_from_json(Path(args.infile).read_text())
    family = tomogram_family(state, args.group, max_n=_sn_cap())
    _write(args.out, tomogram_csv(family))
    return 0


def cmd_reconstruct(args) -> int:
    family = parse_tomogram_csv(Path(args.infile).read_text())
    verdict = validate_tomogram_family(family, tol=args.tol)
    if args.out:
        _write(args.out, matrix_to_state_json(verdict.phi))
    summary: dict = {
        "admissible": verdict.admissible,
        "group": family.group,
        "n": family.n,
        "violations": list(verdict.violations),
    }
    if verdict.witness_value is not None:
        summary["witness_value"] = [
            float(np.real(verdict.witness_value)),
            float(np.imag(verdict.witness_value)),
        ]
        summary["witness_vector"] = [
            [float(z.real), float(z.imag)] for z in verdict.witness_vector
        ]
    if args.compare:
        ref = state_from_json(Path(args.compare).read_text())
        summary["compare_max_abs_deviation"] = float(
            np.max(np.abs(verdict.phi - ref.phi))
        )
    sys.stdout.write(dumps(summary) + "\n")
    return 0 if verdict.admissible else MATH_FAILURE


def cmd_mub_check(args) -> int:
    if args.family == "dsf":
        bases = mub_family(args.n)
        deviation = mub_max_deviation(bases)
        ortho = max(orthonormality_residual(b) for b in bases)
        ok = deviation <= args.tol and ortho <= 1e-12
        report = {
            "family": "dsf",
            "n": args.n,
            "basis_count": len(bases),
            "orthonormality_residual": ortho,
            "max_overlap_deviation": deviation,
            "mutually_unbiased": bool(deviation <= args.tol),
        }
    else:
        bases = affine_basis_family(args.n)
        deviation = mub_max_deviation(bases)
        ortho = max(orthonormality_residual(b) for b in bases)
        # the affine family is orthonormal but demonstrably not unbiased
        ok = ortho <= 1e-12 and deviation > 1e-6
        report = {
            "family": "affine",
            "n": args.n,
            "basis_count": len(bases),
            "orthonormality_residual": ortho,
            "max_overlap_deviation": deviation,
            "mutually_unbiased": bool(deviation <= args.tol),
        }
    _write(args.out, _report_text(report, args.format))
    return 0 if ok else MATH_FAILURE


def cmd_qubit_demo(args) -> int:
    report = qubit_demo_report(seed=args.seed)
    _write(args.out, _report_text(report, args.format))
    residuals = [v for k, v in report.items() if isinstance(v, float)]
    return 0 if max(residuals) <= args.tol else MATH_FAILURE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pairtomo",
        description="Tomography on the pair groupoid: frames, tomograms, reconstruction.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, *, seed=False, tol=None, out=True, fmt=False):
        if seed:
            p.add_argument("--seed", type=int, default=0)
        if tol is not None:
            p.add_argument("--tol", type=float, default=tol)
        if out:
            p.add_argument("--out", default=None, help="output path (default stdout)")
        if fmt:
            p.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("gen-state", help="write a seeded random state as JSON")
    p.add_argument("--n", type=int, required=True)
    add_common(p, seed=True)
    p.set_defaults(func=cmd_gen_state)

    p = sub.add_parser("frame-check", help="certify a bisection frame")
    p.add_argument("--group", choices=("symmetric", "affine"), required=True)
    p.add_argument("--n", type=int, required=True)
    add_common(p, seed=True, tol=1e-10, fmt=True)
    p.set_defaults(func=cmd_frame_check)

    p = sub.add_parser("tomograms", help="extract the complete tomogram family")
    p.add_argument("--group", choices=("symmetric", "affine"), required=True)
    p.add_argument("--in", dest="infile", required=True, help="state JSON")
    add_common(p)
    p.set_defaults(func=cmd_tomograms)

    p = sub.add_parser("reconstruct", help="reconstruct a state from tomograms")
    p.add_argument("--in", dest="infile", required=True, help="tomogram CSV")
    p.add_argument("--compare", default=None, help="reference state JSON")
    add_common(p, tol=1e-9)
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("mub-check", help="check a basis family's overlap law")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--family", choices=("dsf", "affine"), default="dsf")
    add_common(p, tol=1e-10, fmt=True)
    p.set_defaults(func=cmd_mub_check)

    p = sub.add_parser("qubit-demo", help="run every two-level identity check")
    add_common(p, seed=True, tol=1e-12, fmt=True)
    p.set_defaults(func=cmd_qubit_demo)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InvalidState as exc:
        print("invalid state input:", file=sys.stderr)
        for v in exc.violations:
            print(f"  - {v}", file=sys.stderr)
        return USAGE_ERROR
    except IncompleteFamily as exc:
        print(f"incomplete tomogram family: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except (NotOddPrime, Unsupported, TooLarge) as exc:
        print(f"invalid configuration: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except FileNotFoundError as exc:
        print(f"missing input: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except PairTomoError as exc:
        print(f"computation failed: {exc}", file=sys.stderr)
        return MATH_FAILURE


if __name__ == "__main__":
    sys.exit(main())

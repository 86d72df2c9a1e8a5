"""Command-line front end.

Exit codes: 0 success, 1 a check failed or a counterexample was found,
2 bad arguments or input.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from . import scan as scanning
from .exact_linalg import det_bareiss, det_modular_crt
from .matrices import build_A, build_A_c, power_entries
from .spectral import det_spectral_exact, spectrum
from .verify import (
    DEFAULT_TOL,
    default_seed,
    random_entry_vector,
    verify_all,
    verify_general,
    verify_maillet,
)
from .wavelet import check_tau_order
from .zmod import OddPrime, primitive_root

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def read_c_file(path: str | Path, p: int) -> list[int]:
    """One integer per line, exactly p-1 lines (blank lines ignored)."""
    try:
        lines = [ln.strip() for ln in Path(path).read_text().splitlines() if ln.strip()]
        values = [int(ln) for ln in lines]
    except (OSError, ValueError) as exc:
        raise UsageError(f"cannot read c-file {path}: {exc}") from exc
    if len(values) != p - 1:
        raise UsageError(f"c-file {path} has {len(values)} entries, expected p-1 = {p - 1}")
    return values


def _prime(args) -> int:
    try:
        return OddPrime(args.p).value
    except ValueError:
        raise UsageError(f"p must be an odd prime, got {args.p}") from None


def _primitive(p: int, h: int | None):
    try:
        return primitive_root(p, h)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _entries(args, p: int) -> list[int]:
    if getattr(args, "c_file", None):
        return read_c_file(args.c_file, p)
    if args.m is None:
        raise UsageError("one of -m or --c-file is required")
    if args.m < 1:
        raise UsageError(f"m must be a positive integer, got {args.m}")
    return power_entries(p, args.m)


def cmd_matrix(args) -> int:
    p = _prime(args)
    a = build_A_c(p, _entries(args, p))
    if args.format == "json":
        print(json.dumps({"p": p, "m": args.m, "rows": a.tolist()}))
    else:
        print(a.to_text())
    return EXIT_OK


DET_METHODS = ("bareiss", "crt", "spectral")


def cmd_det(args) -> int:
    p = _prime(args)
    c = _entries(args, p)
    h = _primitive(p, args.h)
    methods = DET_METHODS if args.method == "all" else (args.method,)
    a = build_A_c(p, c)
    compute = {
        "bareiss": lambda: det_bareiss(a),
        "crt": lambda: det_modular_crt(a),
        "spectral": lambda: det_spectral_exact(p, c, h),
    }
    values = {name: compute[name]() for name in methods}
    agree = len(set(values.values())) == 1
    if args.json:
        print(json.dumps({"p": p, "m": args.m, "h": h.h, "det": {k: str(v) for k, v in values.items()}, "agree": agree}))
    elif len(values) == 1:
        print(next(iter(values.values())))
    else:
        for name, value in values.items():
            print(f"{name}: {value}")
        print("agree" if agree else "DISAGREE")
    return EXIT_OK if agree else EXIT_FAIL


def cmd_spectrum(args) -> int:
    p = _prime(args)
    c = _entries(args, p)
    h = _primitive(p, args.h)
    spec = spectrum(p, c, h)
    if args.json:
        rows = [
            {
                "l": e.ell,
                "re": e.lam.real,
                "im": e.lam.imag,
                "exactly_zero": e.exactly_zero,
                "symmetry": e.symmetry,
            }
            for e in spec.eigenpairs
        ]
        print(json.dumps({"p": p, "m": args.m, "h": h.h, "eigenpairs": rows}))
        return EXIT_OK
    print(f"# p={p} m={args.m} h={h.h}")
    print(f"{'l':>4} {'re(lambda)':>24} {'im(lambda)':>24} {'zero':>5}  symmetry")
    for e in spec.eigenpairs:
        print(f"{e.ell:>4} {e.lam.real:>24.12g} {e.lam.imag:>24.12g} {'yes' if e.exactly_zero else 'no':>5}  {e.symmetry}")
    return EXIT_OK


def cmd_verify(args) -> int:
    p = _prime(args)
    h = _primitive(p, args.h)
    if args.general is not None:
        if len(args.general) not in (0, 2):
            raise UsageError("--general takes either no files or exactly two c-files")
        seed = None
        if args.general:
            c, c2 = (read_c_file(f, p) for f in args.general)
        else:
            seed = default_seed()
            rng = random.Random(seed)
            c, c2 = random_entry_vector(p, rng), random_entry_vector(p, rng)
        report = verify_general(p, c, c2, h, args.tol, seed=seed)
    else:
        if args.m is None or args.m < 1:
            raise UsageError("verify needs -m >= 1 (or --general)")
        report = verify_all(p, args.m, h, args.tol)
    print(report.to_json() if args.json else report.to_text())
    return EXIT_OK if report.overall else EXIT_FAIL


def cmd_scan(args) -> int:
    try:
        records = list(
            scanning.run_scan(args.p_max, args.m_min, args.m_max, args.jobs, args.p_min, args.timing)
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    lines = scanning.format_records(records, args.out)
    text = "\n".join(lines) + "\n"
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    counter = [r for r in records if r.is_counterexample]
    disagree = [r for r in records if not r.methods_agree]
    summary = f"scanned {len(records)} cells; counterexamples (det = 0, m >= 2): "
    summary += ", ".join(f"(p={r.p}, m={r.m})" for r in counter) if counter else "none"
    if disagree:
        summary += "; METHOD DISAGREEMENT at " + ", ".join(f"(p={r.p}, m={r.m})" for r in disagree)
    print(summary, file=sys.stderr)
    return EXIT_FAIL if counter or disagree else EXIT_OK


def cmd_maillet(args) -> int:
    p = _prime(args)
    report = verify_maillet(p)
    if args.json:
        print(report.to_json())
    else:
        value = int(report.subject["maillet"])
        print(value)
        print(f"divisible by {p}^{(p - 3) // 2}: {'yes' if report['maillet.divisible'].passed else 'no'}")
        print(f"nonzero: {'yes' if report['maillet.nonzero'].passed else 'no'}")
    return EXIT_OK if report.overall else EXIT_FAIL


def cmd_wavelet(args) -> int:
    p = _prime(args)
    if args.m is None or args.m < 1:
        raise UsageError("wavelet needs -m >= 1")
    result = check_tau_order(p, args.m, args.tol)
    if args.json:
        print(json.dumps({"p": p, "m": args.m, "status": result.status, "max_entry": result.max_entry, "numeric": True}))
    else:
        print(f"{result.status} (max |D^m tau| over l = {result.max_entry:.6g}; numeric)")
    return EXIT_FAIL if result.status == "fails" else EXIT_OK


def _subparser(sub, name, help_text, func):
    # add_help=False frees -h for the primitive-root override
    sp = sub.add_parser(name, help=help_text, description=help_text, add_help=False)
    sp.add_argument("--help", action="help", help="show this help message and exit")
    sp.set_defaults(func=func)
    return sp


def _add_pm(sp, with_c_file=True):
    sp.add_argument("-p", type=int, required=True, help="odd prime")
    sp.add_argument("-m", type=int, help="exponent m >= 1")
    if with_c_file:
        sp.add_argument("--c-file", help="entry vector c: one integer per line, p-1 lines")


def _add_h(sp):
    sp.add_argument("-h", type=int, default=None, metavar="H", help="primitive root (default: smallest)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="maillet", description="Generalized Maillet matrices: exact determinants, spectra, verification")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = _subparser(sub, "matrix", "print A_{p,m} or A_p[c]", cmd_matrix)
    _add_pm(sp)
    sp.add_argument("--format", choices=("text", "json"), default="text")

    sp = _subparser(sub, "det", "exact determinant", cmd_det)
    _add_pm(sp)
    _add_h(sp)
    sp.add_argument("--method", choices=DET_METHODS + ("all",), default="bareiss")
    sp.add_argument("--json", action="store_true")

    sp = _subparser(sub, "spectrum", "closed-form eigenvalues with exact zero flags", cmd_spectrum)
    _add_pm(sp)
    _add_h(sp)
    sp.add_argument("--json", action="store_true")

    sp = _subparser(sub, "verify", "run the verification suite", cmd_verify)
    _add_pm(sp, with_c_file=False)
    _add_h(sp)
    sp.add_argument("--general", nargs="*", metavar="C_FILE", help="check A_p[c] for two c-files (random seeded vectors if none)")
    sp.add_argument("--tol", type=float, default=DEFAULT_TOL, help="eigen-residual tolerance, scaled by (p-1) max|c|")
    sp.add_argument("--json", action="store_true")

    sp = _subparser(sub, "scan", "scan det A_{p,m} over a (p, m) grid", cmd_scan)
    sp.add_argument("--p-max", type=int, required=True)
    sp.add_argument("--p-min", type=int, default=3)
    sp.add_argument("--m-min", type=int, default=2)
    sp.add_argument("--m-max", type=int, required=True)
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--out", choices=("csv", "jsonl"), default="csv")
    sp.add_argument("-o", "--output", help="write records here instead of stdout")
    sp.add_argument("--timing", action="store_true", help="fill elapsed_ms (output is then not reproducible)")

    sp = _subparser(sub, "maillet", "classical Maillet determinant", cmd_maillet)
    sp.add_argument("-p", type=int, required=True)
    sp.add_argument("--json", action="store_true")

    sp = _subparser(sub, "wavelet", "zero-order criterion for tau", cmd_wavelet)
    sp.add_argument("-p", type=int, required=True)
    sp.add_argument("-m", type=int, required=True)
    sp.add_argument("--tol", type=float, default=1e-8)
    sp.add_argument("--json", action="store_true")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"maillet {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

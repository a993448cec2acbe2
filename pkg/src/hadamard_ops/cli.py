"""Command line: eigenvalue tables, M_T samples on grids, verification suites.

Exit status: 0 success, 1 a numeric check failed, 2 input or certificate rejected.
"""
from __future__ import annotations

import argparse
import os
import sys
from dataclasses import replace

import numpy as np

from .dist import certify, oc_to_oh
from .foundation import CertificateError, DomainError, HadamardError, PairingConfig
from .hadamard import HadamardOperator, apply_grid, grid_points, samples_csv
from .specfile import SpecFile, load_spec
from .verify import SUITES, reports_to_json, run_suites

EXIT_OK, EXIT_FAIL, EXIT_REJECTED = 0, 1, 2


class _Rejected(Exception):
    pass


def parse_grid(text: str) -> list[np.ndarray]:
    """'a:b:n[,a:b:n]' → one linspace per axis."""
    axes = []
    for part in text.split(","):
        bits = part.split(":")
        if len(bits) != 3:
            raise _Rejected(f"grid axis {part!r} is not of the form a:b:n")
        try:
            a, b, n = float(bits[0]), float(bits[1]), int(bits[2])
        except ValueError as exc:
            raise _Rejected(f"grid axis {part!r}: {exc}") from exc
        if n < 1:
            raise _Rejected("grid axes need at least one point")
        axes.append(np.linspace(a, b, n))
    return axes


def _config(args, spec: SpecFile | None) -> PairingConfig:
    cfg = spec.config if spec else PairingConfig()
    tol = args.tol if args.tol is not None else os.environ.get("HADAMARD_TOL")
    if tol is not None:
        try:
            tol = float(tol)
        except ValueError as exc:
            raise _Rejected(f"tolerance {tol!r} is not a number") from exc
        if not tol > 0:
            raise _Rejected("tolerance must be positive")
        cfg = replace(cfg, rel_tol=tol, abs_tol=min(cfg.abs_tol, tol * 1e-3))
    return cfg


def _write(text: str, path: str | None) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _need(args, *names):
    for n in names:
        if getattr(args, n) is None:
            raise _Rejected(f"--{n.replace('_', '-')} is required")


def cmd_eig(args) -> int:
    _need(args, "spec", "dist", "alpha_max")
    spec = load_spec(args.spec)
    cfg = _config(args, spec)
    T = spec.distribution(args.dist)
    try:
        op = HadamardOperator(T, cfg)
    except CertificateError as exc:
        print(f"rejected: predicate {exc.predicate} failed: {exc}", file=sys.stderr)
        return EXIT_REJECTED
    cert = certify(T)
    print(f"certificate: support in W_eps with eps={cert.eps:.17g}; decay witness of order {cert.decay_order}", file=sys.stderr)
    _write(op.table(args.alpha_max).to_csv(), args.out)
    return EXIT_OK


def cmd_apply(args) -> int:
    _need(args, "spec", "dist", "testfn", "grid")
    spec = load_spec(args.spec)
    cfg = _config(args, spec)
    T = spec.distribution(args.dist)
    phi = spec.test_function(args.testfn)
    axes = parse_grid(args.grid)
    if len(axes) != spec.d:
        raise _Rejected(f"grid has {len(axes)} axes, spec dimension is {spec.d}")
    points = grid_points(axes)
    try:
        cert = certify(T)
        print(f"certificate: support in W_eps with eps={cert.eps:.17g}", file=sys.stderr)
    except CertificateError as exc:
        try:
            certify(oc_to_oh(T), require_w_eps=False)
            print("certificate: Euler-form decay witness (support meets a hyperplane)", file=sys.stderr)
        except CertificateError:
            if not args.unsafe_off_hyperplane:
                print(f"rejected: predicate {exc.predicate} failed: {exc}", file=sys.stderr)
                return EXIT_REJECTED
            if np.any(points == 0):
                print("rejected: uncertified kernel evaluated on a coordinate hyperplane", file=sys.stderr)
                return EXIT_REJECTED
            print("warning: uncertified kernel, values off the hyperplanes only", file=sys.stderr)
    _write(samples_csv(points, apply_grid(T, phi, points, cfg)), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    names = args.suite or ["all"]
    unknown = [n for n in names if n != "all" and n not in SUITES]
    if unknown:
        print(f"unknown suite(s) {unknown}; known: all, {', '.join(SUITES)}", file=sys.stderr)
        return EXIT_REJECTED
    spec = load_spec(args.spec) if args.spec else None
    reports = run_suites(names, _config(args, spec), seed=args.seed)
    for r in reports:
        print(r.to_text(), file=sys.stderr)
    if args.out:
        _write(reports_to_json(reports), args.out)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hadamard", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--spec", help="spec JSON file")
        sp.add_argument("--out", help="output path (default: standard output)")
        sp.add_argument("--tol", type=float, help="relative tolerance (overrides HADAMARD_TOL)")

    e = sub.add_parser("eig", help="eigenvalue table m_alpha as CSV")
    common(e)
    e.add_argument("--dist", help="distribution name in the spec")
    e.add_argument("--alpha-max", type=int, help="largest alpha per axis")
    e.set_defaults(func=cmd_eig)

    a = sub.add_parser("apply", help="samples of y -> T_x phi(xy) as CSV")
    common(a)
    a.add_argument("--dist", help="distribution name in the spec")
    a.add_argument("--testfn", help="test function name in the spec")
    a.add_argument("--grid", help="a:b:n per axis, comma separated")
    a.add_argument("--unsafe-off-hyperplane", action="store_true", help="allow uncertified kernels away from the hyperplanes")
    a.set_defaults(func=cmd_apply)

    v = sub.add_parser("verify", help="run verification suites")
    common(v)
    v.add_argument("--suite", action="append", help="suite name or 'all' (repeatable)")
    v.add_argument("--seed", type=int, default=0)
    v.set_defaults(func=cmd_verify)
    return p


def _join_grid(argv: list[str]) -> list[str]:
    # "--grid -1:1:5" would be read as a flag; bind the value explicitly
    out, i = [], 0
    while i < len(argv):
        if argv[i] == "--grid" and i + 1 < len(argv):
            out.append(f"--grid={argv[i + 1]}")
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(_join_grid(argv))
    try:
        return args.func(args)
    except (_Rejected, DomainError, CertificateError, OSError) as exc:
        print(f"rejected: {exc}", file=sys.stderr)
        return EXIT_REJECTED
    except HadamardError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

"""Command-line entry point.

Exit codes: 0 success, 1 mathematical failure (hypothesis fails, certificate
invalid, no counterexample), 2 usage or I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import certificate as cert_mod
from .errors import (
    CertificateFormatError,
    ConnectivityError,
    ConstructionError,
    DegenerateGeometry,
    DegreeError,
    GraphError,
    NoCounterexample,
)
from .falsifier import random_configuration, reflection_counterexample
from .gale import construct_universally_rigid_framework
from .graph import FAMILIES, generate, parse_graph, vertex_connectivity

OK, MATH_FAIL, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror or exc}") from None


def _load_graph(path: str):
    try:
        return parse_graph(_read(path))
    except GraphError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _write(path: str, text: str):
    try:
        Path(path).write_text(text, encoding="utf-8", newline="\n")
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc.strerror or exc}") from None


def _emit(args, payload: dict, text: str):
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print(text)


def cmd_connectivity(args) -> int:
    g = _load_graph(args.file)
    kappa = vertex_connectivity(g)
    _emit(args, {"n": g.n, "m": len(g.edges), "connectivity": kappa}, str(kappa))
    return OK


def _separator_payload(exc: ConnectivityError) -> dict:
    sep = exc.separator
    return {
        "status": "hypothesis_failed",
        "connectivity": exc.kappa,
        "required": exc.required,
        "separator": list(sep.nodes) if sep else None,
        "parts": [list(sep.part1), list(sep.part2)] if sep else None,
    }


def cmd_construct(args) -> int:
    g = _load_graph(args.file)
    mode = "exhaustive" if args.exhaustive_gp else None
    try:
        cert = construct_universally_rigid_framework(
            g, args.dim, seed=args.seed, max_retries=args.max_retries, mode=mode
        )
    except ConnectivityError as exc:
        payload = _separator_payload(exc)
        text = f"kappa={exc.kappa} < {exc.required} = r+1: hypothesis fails"
        if exc.separator is not None:
            text += (
                f"\nseparator {list(exc.separator.nodes)} splits "
                f"{list(exc.separator.part1)} from {list(exc.separator.part2)}"
            )
        _emit(args, payload, text)
        return MATH_FAIL
    except (DegreeError, ConstructionError) as exc:
        _emit(args, {"status": "construction_failed", "error": str(exc)}, f"construction failed: {exc}")
        return MATH_FAIL
    except ValueError as exc:
        raise UsageError(str(exc)) from None

    if args.out:
        _write(args.out, cert_mod.serialize(cert))
    report = cert.report
    payload = {
        "status": "ok",
        "n": g.n,
        "r": args.dim,
        "seed": args.seed,
        "retries_used": cert.retries_used,
        "out": args.out,
        "verification": report.as_dict(),
    }
    text = f"n={g.n} r={args.dim} seed={args.seed} retries={cert.retries_used}\n{report.summary()}"
    if args.out:
        text += f"\ncertificate written to {args.out}"
    _emit(args, payload, text)
    return OK


def cmd_verify(args) -> int:
    try:
        cert = cert_mod.deserialize(_read(args.cert))
    except CertificateFormatError as exc:
        raise UsageError(f"{args.cert}: {exc}") from None
    try:
        report = cert_mod.verify_certificate(cert, mode="sampled" if args.sampled else None)
    except ValueError as exc:
        raise UsageError(f"{args.cert}: {exc}") from None
    _emit(args, report.as_dict(), report.summary())
    return OK if report.passed else MATH_FAIL


def _load_config(path: str, n: int, r: int) -> np.ndarray:
    rows = []
    for line in _read(path).splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            try:
                rows.append([float(x) for x in line.split()])
            except ValueError:
                raise UsageError(f"{path}: non-numeric coordinate in {line!r}") from None
    P = np.array(rows, dtype=float)
    if P.shape != (n, r):
        raise UsageError(f"{path}: configuration has shape {P.shape}, expected {(n, r)}")
    if not np.all(np.isfinite(P)):
        raise UsageError(f"{path}: non-finite coordinate")
    return P


def cmd_falsify(args) -> int:
    g = _load_graph(args.file)
    if args.config:
        P = _load_config(args.config, g.n, args.dim)
    else:
        P = random_configuration(g.n, args.dim, args.seed)
    try:
        w = reflection_counterexample(g, P, args.dim)
    except NoCounterexample as exc:
        _emit(args, {"status": "no_counterexample", "reason": str(exc)}, f"no counterexample: {exc}")
        return MATH_FAIL
    except DegenerateGeometry as exc:
        _emit(args, {"status": "degenerate", "reason": str(exc)}, f"degenerate configuration: {exc}")
        return MATH_FAIL
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.out:
        _write(args.out, w.to_json())
    text = (
        f"separator {list(w.separator)}; reflected {list(w.part2)} across the hyperplane\n"
        f"max edge length error {w.max_edge_length_error:.3e}\n"
        f"congruence gap {w.congruence_gap:.3e} at pair {list(w.gap_pair)}\n"
        "equivalent but not congruent"
    )
    if w.completed:
        text += "\n(separator smaller than r; hyperplane completed with principal axes)"
    _emit(args, {"status": "ok", **w.to_dict()}, text)
    return OK


def cmd_gen(args) -> int:
    try:
        g = generate(args.family, args.params)
    except GraphError as exc:
        raise UsageError(str(exc)) from None
    sys.stdout.write(g.to_text())
    return OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="unirigid",
        description="Universally rigid frameworks from vertex-connected graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")

    p = sub.add_parser("connectivity", parents=[common], help="print the vertex connectivity")
    p.add_argument("file")
    p.set_defaults(func=cmd_connectivity)

    p = sub.add_parser("construct", parents=[common], help="build and verify a certificate")
    p.add_argument("file")
    p.add_argument("--dim", type=int, required=True, help="target dimension r")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-retries", type=int, default=10)
    p.add_argument("--out")
    p.add_argument(
        "--exhaustive-gp",
        action="store_true",
        help="always scan every maximal submatrix of Z (fails above the cap)",
    )
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", parents=[common], help="verify a certificate file")
    p.add_argument("cert")
    p.add_argument("--sampled", action="store_true", help="sample submatrices for general position")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("falsify", parents=[common], help="reflection counterexample")
    p.add_argument("file")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--config", help="text file with n rows of r coordinates")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_falsify)

    p = sub.add_parser("gen", help="write a named graph as an edge list")
    p.add_argument("family", choices=FAMILIES)
    p.add_argument("params", nargs="+", type=int)
    p.set_defaults(func=cmd_gen)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "seed", 0) < 0:
        print("error: --seed must be non-negative", file=sys.stderr)
        return USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()

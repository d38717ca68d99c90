"""Command line entry point.

Exit codes: 0 when the checked property holds, 1 when it fails (the JSON
report then carries a witness), 2 on any error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import serialization as ser
from .config import default_budget
from .dc_classes import (
    UnimodularSystem,
    edge_directions_check_mnat,
    in_class,
)
from .decompose import integral_decompose
from .errors import DCAError, IntegralityFailure
from .exact_linalg import (
    rational,
    total_unimodularity_witness,
    unimodularity_witness,
)
from .harness import SCHEMA, HarnessConfig, named_system, run_verify
from .lattice_sets import holes, lnat_violation, minkowski_sum, mnat_violation
from .polytopes import Face, lattice_points, minkowski_sum_polytopes
from . import worked_examples

CHECK_KINDS = ("unimodular", "tu", "class", "mnat", "lnat", "nohole")


def _global_flags(parser: argparse.ArgumentParser, suppress: bool):
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--seed", type=int, default=d(0))
    parser.add_argument("--trials", type=int, default=d(10))
    parser.add_argument("--dim", type=int, default=d(2))
    parser.add_argument("--system", default=d("mnat"), help="system name (mnat, b4, twistedK, identity) or JSON file")
    parser.add_argument("--budget-faces", type=int, default=d(None))
    parser.add_argument("--json-out", default=d(None), help="also write the report to this path")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="unimod-dca", description=__doc__)
    _global_flags(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    _global_flags(common, suppress=True)

    p = sub.add_parser("check", parents=[common], help="test one property of JSON input")
    p.add_argument("kind", choices=CHECK_KINDS)
    p.add_argument("inputs", nargs="+", help="input file(s)")

    sub.add_parser("examples", parents=[common], help="reproduce the worked examples")

    p = sub.add_parser("verify", parents=[common], help="randomized closure/decomposition harness")
    p.add_argument("--generator", default="zonotope", choices=("zonotope", "gpolymatroid", "mixed"))
    p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("decompose", parents=[common], help="integral decomposition of one point")
    p.add_argument("operands", nargs="+", metavar="[SYSTEM] P1 P2 Z",
                   help="optional system file, two polytope files, comma separated integer point")
    p.add_argument("--strategy", default="iterative", choices=("iterative", "vertex"))
    p.add_argument("--unchecked-system", action="store_true",
                   help="skip the unimodularity check on the system (negative controls)")

    p = sub.add_parser("sum", parents=[common], help="Minkowski sum of two lattice sets or polytopes")
    p.add_argument("a")
    p.add_argument("b")

    p = sub.add_parser("hull", parents=[common], help="V- and H-description of a point set")
    p.add_argument("input")

    p = sub.add_parser("lattice-points", parents=[common], help="integer points of a polytope")
    p.add_argument("input")
    return parser


def _load_system(name_or_path: str, dim: int, check: bool = True) -> UnimodularSystem:
    if os.path.exists(name_or_path):
        return ser.system_from_json(ser.load(name_or_path), check=check)
    return named_system(name_or_path, dim)


def _face_json(f: Face) -> dict:
    return {"dim": f.dim, "vertices": [[str(c) for c in v] for v in f.vertices]}


def _cmd_check(args, budget) -> tuple[int, dict]:
    kind, inputs = args.kind, args.inputs
    rep = {"kind": kind}
    if kind in ("unimodular", "tu"):
        m = ser.matrix_from_json(ser.load(inputs[0]))
        if kind == "unimodular":
            w = unimodularity_witness(m)
            rep["witness"] = None if w is None else {"columns": list(w[0]), "minor": w[1]}
        else:
            w = total_unimodularity_witness(m, budget)
            rep["witness"] = None if w is None else {"rows": list(w[0]), "columns": list(w[1]), "minor": w[2]}
        holds = w is None
    elif kind == "class":
        p = ser.polytope_from_json(ser.load(inputs[-1]))
        if len(inputs) == 2:
            sys_ = ser.system_from_json(ser.load(inputs[0]))
        else:
            sys_ = _load_system(args.system, p.dim)
        v = in_class(sys_, p, budget)
        holds = v.member
        rep["system"] = sys_.name
        rep["reason"] = v.reason
        if isinstance(v.witness, Face):
            rep["witness"] = _face_json(v.witness) | {
                "lins": [[str(c) for c in b] for b in v.witness.lins.basis]
            }
        else:
            rep["witness"] = None if v.witness is None else [str(c) for c in v.witness]
        if sys_.matrix.n_rows == p.dim and sys_.name == f"mnat{p.dim}":
            rep["edge_directions_mnat"] = edge_directions_check_mnat(p, budget)
    else:
        s = ser.lattice_set_from_json(ser.load(inputs[0]))
        if kind == "mnat":
            w = mnat_violation(s)
            rep["witness"] = None if w is None else {"x": list(w[0]), "y": list(w[1]), "i": w[2]}
        elif kind == "lnat":
            w = lnat_violation(s)
            rep["witness"] = None if w is None else {
                "x": list(w[0]), "y": list(w[1]), "ceil": list(w[2]), "floor": list(w[3])}
        else:
            h = holes(s)
            w = h.points or None
            rep["witness"] = None if w is None else {"holes": [list(q) for q in h.points]}
        holds = w is None
    rep["holds"] = holds
    return (0 if holds else 1), rep


def _cmd_decompose(args, budget) -> tuple[int, dict]:
    ops = args.operands
    if len(ops) not in (3, 4):
        raise ValueError("decompose takes [SYSTEM] P1 P2 Z")
    system = ops[0] if len(ops) == 4 else args.system
    p1 = ser.polytope_from_json(ser.load(ops[-3]))
    p2 = ser.polytope_from_json(ser.load(ops[-2]))
    sys_ = _load_system(system, p1.dim, check=not args.unchecked_system)
    z = [rational(c) for c in ops[-1].split(",")]
    if any(type(c) is not int for c in z):
        raise ValueError("z must be an integer point")
    try:
        dec = integral_decompose(sys_, p1, p2, z, args.strategy, budget=budget)
    except IntegralityFailure as exc:
        return 1, {"ok": False, "error": "IntegralityFailure", "message": str(exc), "state": exc.state}
    return 0, {"ok": True, "decomposition": dec.to_dict()}


def _cmd_sum(args, budget) -> tuple[int, dict]:
    a, b = ser.load(args.a), ser.load(args.b)
    if "points" in a and "points" in b:
        s = minkowski_sum(ser.lattice_set_from_json(a), ser.lattice_set_from_json(b))
        h = holes(s)
        return 0, {"sum": ser.lattice_set_to_json(s), "no_hole": not h.points,
                   "holes": [list(q) for q in h.points]}
    p = minkowski_sum_polytopes(ser.polytope_from_json(a), ser.polytope_from_json(b))
    return 0, {"sum": ser.polytope_to_json(p)}


def run(args) -> tuple[int, dict]:
    budget = default_budget().replace(faces=args.budget_faces)
    cmd = args.command
    if cmd == "check":
        return _cmd_check(args, budget)
    if cmd == "examples":
        report = worked_examples.reproduce()
        diffs = worked_examples.compare(report)
        return (0 if not diffs else 1), {"examples": report, "mismatches": diffs}
    if cmd == "verify":
        cfg = HarnessConfig(
            seed=args.seed, trials=args.trials, dim=args.dim,
            system=_load_system(args.system, args.dim), generator=args.generator, budget=budget,
        )
        rep = run_verify(cfg, workers=args.workers)
        return (0 if rep["ok"] else 1), rep
    if cmd == "decompose":
        return _cmd_decompose(args, budget)
    if cmd == "sum":
        return _cmd_sum(args, budget)
    if cmd == "hull":
        return 0, ser.polytope_to_json(ser.polytope_from_json(ser.load(args.input)))
    if cmd == "lattice-points":
        p = ser.polytope_from_json(ser.load(args.input))
        return 0, ser.lattice_set_to_json(lattice_points(p, budget))
    raise ValueError(f"unknown command {cmd}")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        code, report = run(args)
    except (DCAError, ValueError, OSError, json.JSONDecodeError) as exc:
        code, report = 2, {"error": type(exc).__name__, "message": str(exc)}
    report = {"schema": SCHEMA, "command": args.command} | report
    text = ser.dumps(report)
    sys.stdout.write(text)
    if args.json_out:
        Path(args.json_out).write_text(text)
    return code


if __name__ == "__main__":
    sys.exit(main())

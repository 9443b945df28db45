"""The `horn` command line: membership, walls, cells, witnesses, figures.

Exit codes: 0 success, 1 domain errors (no solution, witness not found,
non-elliptic input), 2 parse/usage errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time


from horn21.angles import AnglePair, ClassTriple, ParseError, parse_angle
from horn21.isometry import NotElliptic, NotScalarProduct, classify
from horn21.linalg import GroupElement, NotUnitary, matrix_from_json
from horn21.oracle import SamplerConfig, WitnessNotFound, find_witness, verify_grid
from horn21.polytopes import cell_table, polytope_member
from horn21.render import SliceSpec, render_slice
from horn21.walls import active_walls, wall_catalog

_DOMAIN_ERRORS = (WitnessNotFound, NotElliptic, NotScalarProduct, NotUnitary, ValueError)


def _parse_pair(text: str) -> AnglePair:
    comps = text.split(",")
    if len(comps) != 2:
        raise ParseError(text, 0, "expected 'a1,a2'")
    return AnglePair(parse_angle(comps[0]), parse_angle(comps[1]))


def _seed_default() -> int:
    env = os.environ.get("HORN_SEED")
    return int(env) if env else 42


def _emit(payload, out: str | None):
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="horn",
        description="elliptic multiplicative Horn problem in PU(2,1)",
    )
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="classify a 3x3 matrix (JSON) as an isometry")
    p.add_argument("--matrix", required=True, help="path to matrix JSON, or - for stdin")

    p = sub.add_parser("member", help="polytope membership of a class triple")
    p.add_argument("--tau", required=True, help='"a1,a2;b1,b2;c1,c2"')
    p.add_argument("--tol", type=float, default=None)

    p = sub.add_parser("walls", help="active reducible walls at a class triple")
    p.add_argument("--tau", required=True)
    p.add_argument("--tol", type=float, default=1e-9)

    sub.add_parser("cells", help="the 28-cell table")

    p = sub.add_parser("slice", help="render an SVG slice of the solution set")
    p.add_argument("--sym", action="store_true", help="the symmetric slice")
    p.add_argument("--beta", help='"b1,b2" for a fixed slice')
    p.add_argument("--gamma", help='"g1,g2" for a fixed slice')
    p.add_argument("--res", type=int, default=600)
    p.add_argument("--tol", type=float, default=1e-7)
    p.add_argument("--out", required=True)

    p = sub.add_parser("construct", help="find a witness triple for a class triple")
    p.add_argument("--tau", required=True)
    p.add_argument("--tol", type=float, default=1e-4)
    p.add_argument("--samples", type=int, default=200_000)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out")

    p = sub.add_parser("verify", help="polytope prediction vs witness search on a grid")
    p.add_argument("--slice", required=True, help='"sym" or "b1,b2;g1,g2"')
    p.add_argument("--grid", type=int, default=12)
    p.add_argument("--samples", type=int, default=200_000)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--tol", type=float, default=1e-4)
    p.add_argument("--separation", type=float, default=0.05)
    p.add_argument("--out")
    return top


def dispatch(argv) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0

    try:
        return _run(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except _DOMAIN_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def _run(args) -> int:
    if args.command == "classify":
        if args.matrix == "-":
            data = json.load(sys.stdin)
        else:
            with open(args.matrix) as fh:
                data = json.load(fh)
        g = GroupElement(matrix_from_json(data))
        _emit(classify(g).to_json(), None)
        return 0

    if args.command == "member":
        t = ClassTriple.parse(args.tau)
        _emit(polytope_member(t, args.tol).to_json(), None)
        return 0

    if args.command == "walls":
        t = ClassTriple.parse(args.tau)
        hits = active_walls(t, args.tol)
        _emit(
            {
                "triple": t.to_json(),
                "active": [
                    {**w.to_json(), "signed_distance_rad": d} for w, d in hits
                ],
                "catalog_size": len(wall_catalog()),
            },
            None,
        )
        return 0

    if args.command == "cells":
        rows = [
            {"layer": rec.id.layer.value, "name": rec.id.name,
             "full": rec.full, "system": rec.system}
            for rec in cell_table()
        ]
        _emit({"cells": rows, "count": len(rows),
               "full": sum(r["full"] for r in rows)}, None)
        return 0

    if args.command == "slice":
        spec = _slice_spec_from_args(args)
        svg = render_slice(spec)
        with open(args.out, "w") as fh:
            fh.write(svg)
        print(f"wrote {args.out}", file=sys.stderr)
        return 0

    if args.command == "construct":
        t = ClassTriple.parse(args.tau)
        cfg = SamplerConfig(
            seed=args.seed if args.seed is not None else _seed_default(),
            budget=args.samples,
            tol=args.tol,
        )
        witness = find_witness(t, cfg)   # WitnessNotFound -> exit 1
        _emit({"triple": t.to_json(), **witness.to_json()}, args.out)
        return 0

    if args.command == "verify":
        if args.slice == "sym":
            spec = SliceSpec(kind="symmetric")
        else:
            beta_text, gamma_text = args.slice.split(";")
            spec = SliceSpec(
                kind="fixed", beta=_parse_pair(beta_text), gamma=_parse_pair(gamma_text)
            )
        cfg = SamplerConfig(
            seed=args.seed if args.seed is not None else _seed_default(),
            budget=args.samples,
            tol=args.tol,
        )
        started = time.monotonic()
        report = verify_grid(spec, args.grid, cfg, separation=args.separation)
        report["runtime_ms"] = int((time.monotonic() - started) * 1000)
        _emit(report, args.out)
        return 0 if not report["disagreements"] else 1

    raise AssertionError(f"unhandled command {args.command}")


def _slice_spec_from_args(args) -> SliceSpec:
    if args.sym:
        return SliceSpec(kind="symmetric", resolution=args.res, tol=args.tol)
    if not (args.beta and args.gamma):
        raise ParseError("", 0, "slice needs --sym or both --beta and --gamma")
    return SliceSpec(
        kind="fixed",
        beta=_parse_pair(args.beta),
        gamma=_parse_pair(args.gamma),
        resolution=args.res,
        tol=args.tol,
    )


def main() -> None:
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()

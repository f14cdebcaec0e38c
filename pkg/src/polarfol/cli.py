"""Command line front end.

    polarfol info <family>
    polarfol roots show <family> [--json PATH]
    polarfol classify <family> [--seed N]
    polarfol verify <family> --case E --root 2 [--root2 j] [--seed N] [--t p/q]...

JSON goes to stdout, diagnostics to stderr. Exit codes: 0 certified,
1 certification failure, 2 invalid input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import __version__
from .catalog import FamilyError, build
from .foliations import (
    FoliationSpec,
    SpecError,
    canonical_spec,
    enumerate_candidates,
    orthogonal_simple,
    random_choices,
    validate,
)
from .geometry import DEFAULT_TS, verify
from .linalg import fmt
from .roots import decompose

SCHEMA = "polarfol/1"
EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def _default_seed() -> int:
    raw = os.environ.get("POLARFOL_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        raise SpecError(f"POLARFOL_SEED must be an integer, got {raw!r}")


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _load(family: str):
    g, a = build(family)
    return g, decompose(g, a)


def _bundle(family: str, payload: dict, seed=None) -> dict:
    out = {"schema": SCHEMA, "tool_version": __version__, "family": family}
    if seed is not None:
        out["seed"] = seed
    out.update(payload)
    return out


# -- markdown -----------------------------------------------------------------

def _md_info(info: dict) -> str:
    lines = [
        f"## {info['name']}",
        "",
        f"- dim: {info['dim']}",
        f"- rank: {info['rank']}",
        f"- restricted root system: {info['type']}",
        f"- dim k0: {info['dim_k0']}",
        "",
        "| root (simple coords) | multiplicity | level | norm^2 |",
        "|---|---|---|---|",
    ]
    for r in info["roots"]:
        lines.append(f"| ({', '.join(map(str, r['simple_coords']))}) | {r['multiplicity']} | {r['level']} | {r['norm2']} |")
    return "\n".join(lines) + "\n"


def _md_reports(family: str, reports: list[dict]) -> str:
    lines = [
        f"## {family}",
        "",
        "| case | roots | choice | subalgebra | polar | hyperpolar | curvature | H coeff | extension | certified |",
        "|---|---|---|---|---|---|---|---|---|---|",
    ]
    for r in reports:
        s = r["spec"]
        roots = ",".join(f"a{x}" for x in (s["alpha"], s["beta"]) if x is not None) or "-"
        curv = r["section_curvature"] if r["expected_curvature"] is not None else "-"
        ext = {True: "yes", False: "NO", None: "-"}[r["extension_verified"]]
        lines.append(
            f"| {s['case']} | {roots} | {s['choice']} | {_yes(r['is_subalgebra'])} | {_yes(r['is_polar'])} "
            f"| {_yes(r['is_hyperpolar'])} | {curv} | {r['mean_curvature_coeff'] or '-'} | {ext} | {_yes(r['certified'])} |"
        )
    return "\n".join(lines) + "\n"


def _yes(b: bool) -> str:
    return "yes" if b else "no"


# -- commands -----------------------------------------------------------------

def cmd_info(args) -> int:
    g, rs = _load(args.family)
    info = {"name": g.name, **rs.summary()}
    if args.format == "md":
        sys.stdout.write(_md_info(info))
    else:
        sys.stdout.write(_dump(_bundle(args.family, {"info": info})))
    return EXIT_OK


def cmd_roots_show(args) -> int:
    g, rs = _load(args.family)
    table = {
        "name": g.name,
        **rs.summary(),
        "a_basis": [[fmt(c) for c in v] for v in rs.a_basis],
        "simple_roots": [[fmt(c) for c in r.covector] for r in rs.simple_roots],
        "cartan_matrix": rs.cartan_matrix(),
        "delta": [fmt(c) for c in rs.delta],
    }
    text = _dump(_bundle(args.family, {"roots": table}))
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(text)
    sys.stdout.write(_md_info(table) if args.format == "md" else text)
    return EXIT_OK


def cmd_classify(args) -> int:
    seed = _default_seed() if args.seed is None else args.seed
    g, rs = _load(args.family)
    reports = [verify(g, rs, spec) for spec in enumerate_candidates(rs, seed, args.samples)]
    certified = all(r.certified for r in reports)
    for r in reports:
        if not r.certified:
            s = r.spec
            print(f"certification failed: case {s.case} alpha={s.alpha} {s.choice}: {'; '.join(r.failures())}", file=sys.stderr)
    payload = [r.to_json() for r in reports]
    if args.format == "md":
        sys.stdout.write(_md_reports(g.name, payload))
    else:
        body = {"root_system": rs.summary(), "reports": payload, "certified": certified}
        sys.stdout.write(_dump(_bundle(args.family, body, seed)))
    return EXIT_OK if certified else EXIT_FAIL


def _spec_from_args(rs, args, seed: int) -> FoliationSpec:
    case = args.case
    alpha = None if args.root is None else args.root - 1
    beta = None if args.root2 is None else args.root2 - 1
    if case == "A":
        alpha = beta = None
    elif alpha is None:
        raise SpecError(f"case {case} needs --root")
    if case == "C":
        if beta is None:
            raise SpecError("case C needs --root2")
        if alpha == beta:
            raise SpecError("alpha = beta: case C needs two distinct simple roots")
        if 0 <= alpha < rs.rank and 0 <= beta < rs.rank and not orthogonal_simple(rs, alpha, beta):
            raise SpecError("simple roots not orthogonal")
    else:
        beta = None
    for name, x in (("--root", alpha), ("--root2", beta)):
        if x is not None and not 0 <= x < rs.rank:
            raise SpecError(f"{name} must be between 1 and {rs.rank}")
    spec = canonical_spec(rs, case, alpha, beta, seed)  # also checks the case applies
    if args.seed is not None:
        picks = random_choices(rs, case, alpha, beta, args.seed, 1)
        if not picks:
            raise SpecError("no further abelian plane in g_alpha found by the seeded search")
        spec = picks[0]
        validate(rs, spec)
    return spec


def cmd_verify(args) -> int:
    seed = _default_seed() if args.seed is None else args.seed
    g, rs = _load(args.family)
    try:
        ts = tuple(Fraction(t) for t in args.t) if args.t else DEFAULT_TS
    except (ValueError, ZeroDivisionError):
        raise SpecError(f"--t values must be rationals p/q, got {args.t}")
    spec = _spec_from_args(rs, args, seed)
    report = verify(g, rs, spec, ts)
    if not report.certified:
        print(f"certification failed: {'; '.join(report.failures())}", file=sys.stderr)
    data = report.to_json()
    if args.format == "md":
        sys.stdout.write(_md_reports(g.name, [data]))
    else:
        sys.stdout.write(_dump(_bundle(args.family, {"report": data}, seed)))
    return EXIT_OK if report.certified else EXIT_FAIL


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="polarfol", description="Exact certification of codimension-two polar foliations.")
    p.add_argument("--version", action="version", version=f"polarfol {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("family", help="family name, e.g. sl3r, su21, so25, so1n:4, sum:sl2r+sl2r")
        sp.add_argument("--format", choices=("json", "md"), default="json")

    info = sub.add_parser("info", help="dimension, rank and multiplicities")
    common(info)
    info.set_defaults(func=cmd_info)

    roots = sub.add_parser("roots", help="restricted root data")
    rsub = roots.add_subparsers(dest="roots_command", required=True)
    show = rsub.add_parser("show", help="print the root table")
    common(show)
    show.add_argument("--json", metavar="PATH", help="also write the JSON table to PATH")
    show.set_defaults(func=cmd_roots_show)

    cl = sub.add_parser("classify", help="enumerate and verify every candidate")
    common(cl)
    cl.add_argument("--seed", type=int, default=None, help="sampler seed (default: $POLARFOL_SEED or 0)")
    cl.add_argument("--samples", type=int, default=1, help="random parameter choices per case (default 1)")
    cl.set_defaults(func=cmd_classify)

    ve = sub.add_parser("verify", help="verify one candidate")
    common(ve)
    ve.add_argument("--case", required=True, choices=("A", "B", "C", "D", "E"))
    ve.add_argument("--root", type=int, help="simple root number, starting at 1")
    ve.add_argument("--root2", type=int, help="second simple root for case C")
    ve.add_argument("--seed", type=int, default=None, help="use a seeded random parameter choice instead of the canonical one")
    ve.add_argument("--t", action="append", metavar="p/q", help="orbit parameter for case E; repeatable (write negatives as --t=-1/2)")
    ve.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = _parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (FamilyError, SpecError) as exc:
        print(f"polarfol: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

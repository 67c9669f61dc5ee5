"""Command line front end.

Exit status is 0 when every requested check passes, 1 when a mathematical
check fails and 2 for unreadable input or bad usage.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import files
from .cochains import Cochain
from .cohomology import cohomology
from .deformation import InfinitesimalDeformation, check_generates, check_trivial_via
from .representation import CompatibleBimodule, check_bimodule, check_compatible_bimodule
from .structures import (
    CompatibleHomLeibnizAlgebra,
    HomLeibnizReport,
    LinearOperator,
    is_nijenhuis,
    nijenhuis_deform,
)

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _flag(v: bool) -> str:
    return "true" if v else "false"


def _emit(args, payload: dict, lines: list[str]):
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print("\n".join(lines))


def _witness_text(ws) -> str:
    return ", ".join("(" + ",".join(w) + ")" for w in ws)


def _load(path: str) -> files.AlgebraFile:
    return files.parse_algebra_file(path)


# -- verify -------------------------------------------------------------------

def _leibniz_payload(label: str, r: HomLeibnizReport, lines: list[str]) -> dict:
    lines.append(f"{label} hom-leibniz: {_flag(r.identity_holds)}")
    if r.witnesses:
        lines.append(f"  violated at {_witness_text(r.witnesses)}")
    lines.append(f"{label} multiplicative: {_flag(r.multiplicative)}")
    if r.multiplicative_witnesses:
        lines.append(f"  violated at {_witness_text(r.multiplicative_witnesses)}")
    return {
        "identity_holds": r.identity_holds,
        "multiplicative": r.multiplicative,
        "witnesses": [list(w) for w in r.witnesses],
        "multiplicative_witnesses": [list(w) for w in r.multiplicative_witnesses],
    }


def _structure_report(f: files.AlgebraFile, lines: list[str]) -> tuple[dict, bool]:
    algebra = f.algebra()
    report = algebra.check()
    payload: dict = {"name": f.name, "dim": f.dim, "compatible": f.compatible}
    if isinstance(algebra, CompatibleHomLeibnizAlgebra):
        payload["pi1"] = _leibniz_payload("pi1", report.first, lines)
        payload["pi2"] = _leibniz_payload("pi2", report.second, lines)
        payload["compatibility"] = {
            "holds": report.compatibility_holds,
            "witnesses": [list(w) for w in report.witnesses],
        }
        lines.append(f"compatible: {_flag(report.ok)}")
        if report.witnesses:
            lines.append(f"  mixed identity violated at {_witness_text(report.witnesses)}")
    else:
        payload["pi1"] = _leibniz_payload("pi1", report, lines)
        lines.append(f"hom-leibniz: {_flag(report.ok)}")
    ok = report.ok
    if f.module is not None:
        b = f.bimodule()
        mod = check_compatible_bimodule(b) if isinstance(b, CompatibleBimodule) else check_bimodule(b)
        failing = {k: [list(w) for w in v] for k, v in mod.violations.items() if v}
        payload["module"] = {"ok": mod.ok, "violations": failing}
        lines.append(f"module: {_flag(mod.ok)}")
        for k, v in sorted(failing.items()):
            lines.append(f"  {k} violated at {_witness_text(v)}")
        ok = ok and mod.ok
    payload["ok"] = ok
    return payload, ok


def cmd_verify(args) -> int:
    f = _load(args.file)
    lines = [f"algebra: {f.name or args.file} (dim {f.dim}, {'compatible' if f.compatible else 'single'})"]
    payload, ok = _structure_report(f, lines)
    _emit(args, payload, lines)
    return EXIT_OK if ok else EXIT_FAILED


# -- cohomology ---------------------------------------------------------------

COLUMNS = (
    ("n", "n"),
    ("dim LC^n", "dim_cochains"),
    ("rank d^n", "rank_d"),
    ("dim Z^n", "dim_cocycles"),
    ("dim B^n", "dim_coboundaries"),
    ("dim H^n", "dim_H"),
)


def _table(report) -> list[str]:
    widths = [len(title) for title, _ in COLUMNS]
    rows = [[str(getattr(deg, key)) for _, key in COLUMNS] for deg in report.degrees]
    for row in rows:
        widths = [max(w, len(v)) for w, v in zip(widths, row)]
    out = ["  ".join(t.rjust(w) for (t, _), w in zip(COLUMNS, widths))]
    out += ["  ".join(v.rjust(w) for v, w in zip(row, widths)) for row in rows]
    return out


def cmd_cohomology(args) -> int:
    if args.max_degree < 1:
        raise UsageError("--max-degree must be at least 1")
    f = _load(args.file)
    if args.coefficients == "module" and f.module is None:
        raise UsageError("--coefficients module needs a module block in the algebra file")
    ok = f.algebra().check().ok
    if ok and args.coefficients == "module":
        b = f.bimodule()
        ok = (check_compatible_bimodule(b) if isinstance(b, CompatibleBimodule) else check_bimodule(b)).ok
    if not ok:
        print("error: the structure fails its axioms, so its cochain complex is not defined", file=sys.stderr)
        return EXIT_FAILED
    target = f.bimodule() if args.coefficients == "module" else f.algebra()
    report = cohomology(target, args.max_degree)
    _emit(args, report.to_dict(), _table(report))
    return EXIT_OK


# -- nijenhuis ----------------------------------------------------------------

def cmd_nijenhuis(args) -> int:
    f = _load(args.file)
    algebra = f.algebra()
    op = LinearOperator(algebra.space, files.parse_operator_file(args.operator, f.dim))
    report = is_nijenhuis(algebra, op)
    lines = [f"commutes with alpha: {_flag(report.commutes)}"]
    per_bracket = {}
    for label, zero, ws in zip(files.BRACKET_LABELS, report.torsion_zero, report.witnesses):
        lines.append(f"{label} torsion zero: {_flag(zero)}")
        if ws:
            lines.append(f"  torsion nonzero at {_witness_text(ws)}")
        per_bracket[label] = {"torsion_zero": zero, "witnesses": [list(w) for w in ws]}
    lines.append(f"nijenhuis: {_flag(report.ok)}")
    payload = {"commutes": report.commutes, "brackets": per_bracket, "ok": report.ok}
    if args.deform and report.ok:
        deformed = files.from_structure(nijenhuis_deform(algebra, op), name=f"{f.name}_N" if f.name else "")
        Path(args.deform).write_text(deformed.dumps())
        lines.append(f"deformed algebra written to {args.deform}")
        payload["deformed"] = args.deform
    _emit(args, payload, lines)
    return EXIT_OK if report.ok else EXIT_FAILED


# -- deform -------------------------------------------------------------------

def _conditions_payload(report) -> dict:
    return {
        "ok": report.ok,
        "failed": report.failed(),
        "witnesses": {str(k): [list(w) for w in v] for k, v in report.failures.items() if v},
    }


def cmd_deform(args) -> int:
    f = _load(args.file)
    if not f.compatible:
        raise UsageError("deform needs an algebra file with two brackets")
    base = f.algebra()
    s = base.space
    deformation = InfinitesimalDeformation(
        base,
        Cochain.from_entries(s, s, 2, files.parse_entries_file(args.mu1, f.dim)),
        Cochain.from_entries(s, s, 2, files.parse_entries_file(args.m1, f.dim)),
    )
    if not base.check().ok:
        print("error: the base structure fails its axioms", file=sys.stderr)
        return EXIT_FAILED
    gen = check_generates(deformation)
    lines = [f"cocycle: {_flag(gen.cocycle)}", f"pair is compatible: {_flag(gen.pair_is_algebra)}"]
    if gen.failed:
        lines.append(f"  nonzero brackets: {', '.join(gen.failed)}")
    lines.append(f"generates a deformation: {_flag(gen.ok)}")
    payload = {
        "generates": {"cocycle": gen.cocycle, "pair_is_algebra": gen.pair_is_algebra,
                      "failed": gen.failed, "ok": gen.ok},
    }
    ok = gen.ok
    if args.trivial_via:
        op = LinearOperator(s, files.parse_operator_file(args.trivial_via, f.dim))
        triv = check_trivial_via(deformation, op)
        lines.append(f"trivial via operator: {_flag(triv.ok)}")
        for k in triv.failed():
            lines.append(f"  condition {k} fails at {_witness_text(triv.failures[k])}")
        payload["trivial_via"] = _conditions_payload(triv)
        ok = ok and triv.ok
    payload["ok"] = ok
    _emit(args, payload, lines)
    return EXIT_OK if ok else EXIT_FAILED


# -- entry point ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="homleib", description="Exact computations with compatible Hom-Leibniz algebras.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("file", help="algebra definition file (JSON)")
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.set_defaults(func=fn)
        return p

    add("verify", cmd_verify, "check the axioms of an algebra and its module block")
    p = add("cohomology", cmd_cohomology, "dimensions of the cochain complex and its cohomology")
    p.add_argument("--max-degree", type=int, required=True)
    p.add_argument("--coefficients", choices=("adjoint", "module"), default="adjoint")
    p = add("nijenhuis", cmd_nijenhuis, "test a linear operator for the Nijenhuis property")
    p.add_argument("--operator", required=True, help="matrix file")
    p.add_argument("--deform", metavar="OUT", help="write the deformed algebra here")
    p = add("deform", cmd_deform, "analyse a first-order deformation")
    p.add_argument("--mu1", required=True, help="entries file perturbing pi1")
    p.add_argument("--m1", required=True, help="entries file perturbing pi2")
    p.add_argument("--trivial-via", metavar="MATRIX", help="operator to test triviality against")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except files.AlgebraFileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        # shape mismatches and similar precondition failures raised by the core
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

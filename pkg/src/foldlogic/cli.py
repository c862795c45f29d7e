"""Command-line interface: ``foldlogic <command> ...``.

Exit codes: 0 verified or foldable, 1 refuted, 2 unknown (budget ran out),
3 usage error, 4 input/output error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import composer
from .automaton import Boundary, Row, evolve, evolve_xor, to_pbm, to_text
from .gadgets import UnknownGadget, catalog, make_gadget
from .io import ParseError, export_fold, export_svg, import_fold
from .pattern import Selection, validate_pattern
from .sat import BudgetExceeded
from .solver import DEFAULT_BUDGET, Verdict, globally_flat_foldable, locally_flat_foldable
from .verifier import SEARCH_BUDGET, Level, enumerate_local_selections, verify_truth_table

EXIT_OK, EXIT_REFUTED, EXIT_UNKNOWN, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3, 4

CELLS = {"rule110": composer.build_rule110_cell, "sierpinski": composer.build_sierpinski_cell}


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit with 2, which means "unknown" here
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _emit(args, payload: dict, text: str) -> None:
    print(json.dumps(payload, indent=1) if args.json else text)


def _layer_budget(args) -> int:
    return args.budget if args.budget is not None else DEFAULT_BUDGET


def _search_budget(args) -> int:
    return args.budget if args.budget is not None else SEARCH_BUDGET


# ---------------------------------------------------------------------------
# commands


def cmd_check(args) -> int:
    cp = import_fold(args.file)
    problems = validate_pattern(cp)
    if problems:
        _emit(args, {"valid": False, "problems": problems}, "invalid pattern:\n  " + "\n  ".join(problems))
        return EXIT_REFUTED
    level = Level.parse(args.level)
    opt = cp.optional_edges()
    try:
        cands = enumerate_local_selections(cp, budget=_search_budget(args)) if opt else [Selection(cp)]
    except BudgetExceeded:
        _emit(args, {"valid": True, "foldable": None}, "unknown: search budget exhausted")
        return EXIT_UNKNOWN
    found, unknown = None, False
    for sel in cands:
        if level is Level.LOCAL:
            if not locally_flat_foldable(cp, sel):
                found = sel
                break
            continue
        r = globally_flat_foldable(cp, sel, _layer_budget(args))
        if r.verdict is Verdict.YES:
            found = sel
            break
        unknown |= r.verdict is Verdict.UNKNOWN
    payload = {
        "valid": True,
        "level": level.value,
        "optional_creases": len(opt),
        "foldable": True if found else (None if unknown else False),
        "selection": sorted(found.active) if found else None,
    }
    if found:
        _emit(args, payload, f"foldable ({level.value}); active optional creases: {sorted(found.active)}")
        return EXIT_OK
    if unknown:
        _emit(args, payload, "unknown: layer budget exhausted")
        return EXIT_UNKNOWN
    _emit(args, payload, f"not foldable ({level.value})")
    return EXIT_REFUTED


def cmd_gadget_list(args) -> int:
    rows = []
    for name in catalog():
        g = make_gadget(name)
        rows.append({"name": name, "kind": g.kind, "inputs": [p.name for p in g.inputs], "outputs": [p.name for p in g.outputs]})
    text = "\n".join(f"{r['name']:<15} {r['kind']:<14} in={','.join(r['inputs'])} out={','.join(r['outputs'])}" for r in rows)
    _emit(args, {"gadgets": rows}, text)
    return EXIT_OK


def _fmt_bits(bits) -> str:
    if bits is None:
        return "-"
    return "".join("?" if b is None else str(int(b)) for b in bits) or "()"


def cmd_gadget_verify(args) -> int:
    names = catalog() if args.name == "all" else [args.name]
    reports = []
    code = EXIT_OK
    lines = []
    for name in names:
        g = make_gadget(name)
        rep = verify_truth_table(g, args.level, _search_budget(args), _layer_budget(args))
        reports.append(rep.to_json())
        if any(r.verdict.value == "Unknown" for r in rep.rows):
            code = max(code, EXIT_UNKNOWN) if code != EXIT_REFUTED else code
        elif not rep.passed:
            code = EXIT_REFUTED
        lines.append(f"{name} ({rep.level.value}): {'PASS' if rep.passed else 'FAIL'}")
        for r in rep.rows:
            lines.append(
                f"  {_fmt_bits(r.inputs)} -> {r.verdict.value:<13} value={_fmt_bits(r.value)} "
                f"expected={_fmt_bits(r.expected)} foldings={len(r.selections)}"
            )
    _emit(args, {"reports": reports}, "\n".join(lines))
    return code


def _write_pattern(cell_or_cp, out: str | None, outlines=()) -> str:
    cp = cell_or_cp
    if out is None:
        return export_svg(cp, outlines=outlines)
    path = Path(out)
    if path.suffix == ".svg":
        path.write_text(export_svg(cp, outlines=outlines))
    else:
        export_fold(cp, path)
    return f"wrote {path}"


def cmd_cell_build(args) -> int:
    cell = CELLS[args.cell]()
    outlines = [g.boundary for g in cell.gadgets.values()]
    table = {_fmt_bits(k): _fmt_bits(v) for k, v in cell.function.items()}
    msg = _write_pattern(cell.pattern, args.out, outlines)
    payload = {
        "cell": args.cell,
        "gadgets": len(cell.gadgets),
        "vertices": len(cell.pattern.vertices),
        "edges": len(cell.pattern.edges),
        "function": table,
        "out": args.out,
    }
    text = msg if args.out is None else (
        f"{args.cell}: {len(cell.gadgets)} gadgets, {len(cell.pattern.edges)} edges; "
        f"function {table}; {msg}"
    )
    _emit(args, payload, text)
    return EXIT_OK


def _render(rows, fmt: str) -> str:
    if fmt == "pbm":
        lo = min(r.offset for r in rows)
        hi = max(r.offset + len(r) for r in rows)
        grid = [[1 if (r.offset <= i < r.offset + len(r) and r.cells[i - r.offset]) else 0 for i in range(lo, hi)] for r in rows]
        return to_pbm(grid)
    return to_text(rows)


def cmd_rule110(args) -> int:
    boundary = Boundary(args.boundary)
    row = Row.parse(args.input, boundary) if args.input else Row.single(args.width, boundary=boundary)
    mode = composer.SimMode.parse(args.mode)
    if mode is composer.SimMode.DIRECT and args.grow:
        rows = evolve(row, args.rows - 1)
    else:
        rows = composer.simulate_rule110(row, args.rows - 1, mode, args.level)
    _emit(args, {"rows": [str(r) for r in rows], "offsets": [r.offset for r in rows]}, _render(rows, args.format).rstrip("\n"))
    return EXIT_OK


def cmd_sierpinski(args) -> int:
    row = Row.parse(args.input) if args.input else Row((1,))
    mode = composer.SimMode.parse(args.mode)
    rows = composer.simulate_sierpinski(row, args.rows - 1, mode, args.level)
    agrees = rows == evolve_xor(row, args.rows - 1)
    _emit(args, {"rows": [str(r) for r in rows], "matches_xor": agrees}, _render(rows, args.format).rstrip("\n"))
    return EXIT_OK if agrees else EXIT_REFUTED


def cmd_export(args) -> int:
    if args.name in CELLS:
        cell = CELLS[args.name]()
        cp, outlines = cell.pattern, [g.boundary for g in cell.gadgets.values()]
    else:
        g = make_gadget(args.name)
        cp, outlines = g.pattern, ()
    if args.format == "svg":
        text = export_svg(cp, outlines=outlines, title=args.name)
        if args.out:
            Path(args.out).write_text(text)
        else:
            sys.stdout.write(text)
    else:
        if args.out:
            export_fold(cp, args.out)
        else:
            from .io import to_fold

            print(json.dumps(to_fold(cp), indent=1))
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget", type=int, default=None, help="search / layer-solver node budget")
    common.add_argument("--level", choices=[lv.value for lv in Level], default=Level.GLOBAL.value)
    common.add_argument("--json", action="store_true", help="machine-readable output")

    p = _Parser(prog="foldlogic", description="Origami logic gadgets, flat-foldability checks and cellular automata.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("check", parents=[common], help="check a FOLD file for flat-foldability")
    c.add_argument("file")
    c.set_defaults(func=cmd_check)

    g = sub.add_parser("gadget", help="gadget catalog")
    gs = g.add_subparsers(dest="action", required=True, parser_class=_Parser)
    gl = gs.add_parser("list", parents=[common])
    gl.set_defaults(func=cmd_gadget_list)
    gv = gs.add_parser("verify", parents=[common], help="machine-check a truth table")
    gv.add_argument("name", help="gadget name or 'all'")
    gv.set_defaults(func=cmd_gadget_verify)

    cb = sub.add_parser("cell", help="composite cells")
    cs = cb.add_subparsers(dest="action", required=True, parser_class=_Parser)
    build = cs.add_parser("build", parents=[common])
    build.add_argument("cell", choices=sorted(CELLS))
    build.add_argument("--out", help=".svg or .fold (default: SVG to stdout)")
    build.set_defaults(func=cmd_cell_build)

    for name, fn, extra in (("rule110", cmd_rule110, True), ("sierpinski", cmd_sierpinski, False)):
        a = sub.add_parser(name, help=f"{name} automaton")
        asub = a.add_subparsers(dest="action", required=True, parser_class=_Parser)
        sim = asub.add_parser("simulate", parents=[common])
        sim.add_argument("--input", help="initial row as a bit string")
        sim.add_argument("--rows", type=int, default=10, help="rows to print, including the first")
        sim.add_argument("--mode", choices=[m.value for m in composer.SimMode], default="direct")
        sim.add_argument("--format", choices=["text", "pbm"], default="text")
        if extra:
            sim.add_argument("--width", type=int, default=1, help="width of the single-1 row when --input is absent")
            sim.add_argument("--boundary", choices=[b.value for b in Boundary], default=Boundary.ZERO_PADDED.value)
            sim.add_argument("--grow", action="store_true", help="direct mode: let the window grow leftward")
        sim.set_defaults(func=fn)

    e = sub.add_parser("export", help="write a gadget or cell as SVG or FOLD")
    e.add_argument("format", choices=["svg", "fold"])
    e.add_argument("name", help="gadget name, 'rule110' or 'sierpinski'")
    e.add_argument("--out")
    e.set_defaults(func=cmd_export, json=False)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "rows", 1) < 1:
        parser.error("--rows must be at least 1")
    try:
        return args.func(args)
    except (UnknownGadget, KeyError) as exc:
        print(f"foldlogic: unknown name {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        if isinstance(exc, ParseError):
            print(f"foldlogic: {exc}", file=sys.stderr)
            return EXIT_IO
        print(f"foldlogic: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"foldlogic: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Exit codes: 0 success, 1 audit mismatch, 2 parse or input error,
3 cycle cap exceeded, 4 precondition violated.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from .algebra import DEFAULT_PATH_LENGTH_CAP, parse_element, peirce_project
from .classify import (classify, decompose_mod_radical, noether_invariant,
                       radical_contains, radical_edges)
from .cycle import CycleAlgebra, closure_preimage, tau_embed, theta
from .errors import CycleCapExceeded, ParseError, PreconditionError, QuiverkitError
from .fields import QQ, RatMatrix, parse_field, parse_ratfunc
from .graph import DEFAULT_CYCLE_CAP, enumerate_simple_cycles, parse_graph, scc_condense
from .oracle import audit

EXIT_OK, EXIT_AUDIT, EXIT_PARSE, EXIT_CAP, EXIT_PRECONDITION = 0, 1, 2, 3, 4


@dataclass(frozen=True)
class RunConfig:
    field: object = QQ
    cycle_cap: int = DEFAULT_CYCLE_CAP
    output: str = "text"
    path_length_cap: int = DEFAULT_PATH_LENGTH_CAP

    def __post_init__(self):
        if self.cycle_cap < 1 or self.path_length_cap < 1:
            raise ValueError("caps must be >= 1")
        if self.output not in ("text", "json"):
            raise ValueError("output must be text or json")


def _read(path):
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _emit(out, text):
    out.write(text)
    if not text.endswith("\n"):
        out.write("\n")


# --------------------------------------------------------------------------
# commands

def cmd_classify(text, cfg, out):
    g = parse_graph(text)
    report = classify(g)
    cycles = enumerate_simple_cycles(g, cfg.cycle_cap)
    decomp = decompose_mod_radical(g)
    noether = {}
    for side in ("left", "right"):
        if getattr(report, f"noetherian_{side}"):
            inv = noether_invariant(g, side)
            noether[side] = {"n0": inv.n0, "cycle_lengths": list(inv.cycle_lengths)}
    if cfg.output == "json":
        doc = {
            "report": report.to_dict(),
            "decomposition_mod_radical": decomp.to_dict(),
            "noether_invariant": noether,
            "simple_cycles": [list(c) for c in cycles],
            "radical_edges": sorted(radical_edges(g), key=g.edge_index),
        }
        _emit(out, json.dumps(doc, indent=2, sort_keys=True))
        return EXIT_OK
    lines = [report.to_text(), ""]
    lines.append("decomposition mod radical: " + ", ".join(
        f"{c.label}{{{' '.join(c.vertices)}}}" for c in decomp.components))
    for side, inv in noether.items():
        lines.append(f"noether invariant ({side}): n0={inv['n0']} cycles={inv['cycle_lengths']}")
    lines.append(f"radical edges: {' '.join(sorted(radical_edges(g), key=g.edge_index)) or '-'}")
    lines.append(f"simple cycles: {len(cycles)}")
    for c in cycles:
        lines.append("  " + ".".join(c))
    _emit(out, "\n".join(lines))
    return EXIT_OK


def cmd_eval(text, op, args, cfg, out):
    g = parse_graph(text)

    def elem(s):
        return parse_element(g, s, cfg.field, cfg.path_length_cap)

    if op == "mul":
        if len(args) < 2:
            raise PreconditionError("mul needs at least two expressions")
        acc = elem(args[0])
        for s in args[1:]:
            acc = acc * elem(s)
        result = str(acc)
    elif op == "add":
        if not args:
            raise PreconditionError("add needs at least one expression")
        acc = elem(args[0])
        for s in args[1:]:
            acc = acc + elem(s)
        result = str(acc)
    elif op == "peirce":
        if len(args) != 3:
            raise PreconditionError("peirce needs: EXPR U V")
        a = elem(args[0])
        for v in args[1:]:
            if not g.has_vertex(v):
                raise PreconditionError(f"unknown vertex {v!r}")
        result = str(peirce_project(a, args[1], args[2]))
    elif op == "radical-test":
        if len(args) != 1:
            raise PreconditionError("radical-test needs one expression")
        result = "true" if radical_contains(elem(args[0])) else "false"
    else:
        raise PreconditionError(f"unknown operation {op!r}")
    if cfg.output == "json":
        _emit(out, json.dumps({"op": op, "result": result}, sort_keys=True))
    else:
        _emit(out, result)
    return EXIT_OK


def parse_matrix(text, field=QQ):
    """One row per non-empty line, entries separated by commas."""
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        row = []
        offset = 0
        for cell in line.split(","):
            try:
                row.append(parse_ratfunc(cell, field))
            except ParseError as exc:
                col = None if exc.column is None else exc.column + offset
                raise ParseError(exc.message, lineno, col) from None
            except ZeroDivisionError:
                raise ParseError("division by zero", lineno, offset + 1) from None
            offset += len(cell) + 1
        rows.append(row)
    if not rows:
        raise ParseError("empty matrix", 1, 1)
    for i, r in enumerate(rows):
        if len(r) != len(rows):
            raise ParseError(f"matrix is not square: row {i} has {len(r)} entries, "
                             f"expected {len(rows)}", None)
    return RatMatrix(rows)


def cmd_cycle(n, sub, arg, cfg, out):
    if n < 1:
        raise PreconditionError("n must be at least 1")
    cyc = CycleAlgebra(n, cfg.field)
    if sub == "embed":
        M = tau_embed(parse_element(cyc.graph, arg, cfg.field, cfg.path_length_cap), cyc)
        if cfg.output == "json":
            _emit(out, json.dumps({"matrix": [[str(e) for e in r] for r in M.rows]}))
        else:
            _emit(out, M.to_text())
        return EXIT_OK
    M = parse_matrix(_read(arg), cfg.field)
    if M.size != n:
        raise PreconditionError(f"matrix has size {M.size}, expected {n}")
    a, pair = closure_preimage(M, cyc)
    verified = theta(a, pair, cyc) == M
    if cfg.output == "json":
        _emit(out, json.dumps({"element": str(a), "p": str(pair.p), "q": str(pair.q),
                               "round_trip": verified}, sort_keys=True))
    else:
        _emit(out, f"element: {a}\npair: ({pair.p}, {pair.q})\n"
                   f"round trip: {'verified' if verified else 'FAILED'}")
    return EXIT_OK


def _q(s):
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(g):
    part = scc_condense(g)
    rad = radical_edges(g)
    lines = ["digraph E {"]
    for k, cls in enumerate(part.classes):
        if part.nontrivial[k]:
            lines.append(f"  subgraph cluster_{k} {{")
            lines.extend(f"    {_q(v)};" for v in cls)
            lines.append("  }")
        else:
            lines.extend(f"  {_q(v)};" for v in cls)
    for e, s, r in g.edge_triples():
        style = ", style=dashed" if e in rad else ""
        lines.append(f"  {_q(s)} -> {_q(r)} [label={_q(e)}{style}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def cmd_export_dot(text, cfg, out):
    out.write(export_dot(parse_graph(text)))
    return EXIT_OK


def cmd_audit(text, cfg, out):
    g = parse_graph(text)
    rep = audit(g, cfg.field, cfg.cycle_cap)
    if cfg.output == "json":
        _emit(out, json.dumps(rep.to_dict(), indent=2, sort_keys=True))
    else:
        _emit(out, rep.to_text())
    return EXIT_OK if rep.ok else EXIT_AUDIT


# --------------------------------------------------------------------------
# argument handling

def _positive(s):
    v = int(s)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def _field(s):
    try:
        return parse_field(s)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", type=_field, default=QQ, help="q or fp:<prime>")
    common.add_argument("--cycle-cap", type=_positive, default=DEFAULT_CYCLE_CAP)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--path-cap", type=_positive, default=DEFAULT_PATH_LENGTH_CAP,
                        help="longest path accepted in expressions")

    ap = argparse.ArgumentParser(prog="quiverkit",
                                 description="Path algebras of finite directed graphs.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="ring-theoretic report")
    p.add_argument("file")

    p = sub.add_parser("eval", parents=[common], help="evaluate element expressions")
    p.add_argument("file")
    p.add_argument("op", choices=("mul", "add", "peirce", "radical-test"))
    p.add_argument("args", nargs="+")

    p = sub.add_parser("cycle", parents=[common], help="the cycle algebra KC_n")
    p.add_argument("n", type=int)
    p.add_argument("sub", choices=("embed", "closure"))
    p.add_argument("arg", help="expression (embed) or matrix file (closure)")

    p = sub.add_parser("export-dot", parents=[common], help="Graphviz output")
    p.add_argument("file")

    p = sub.add_parser("audit", parents=[common], help="compare deciders with oracles")
    p.add_argument("file")
    return ap


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    cfg = RunConfig(args.field, args.cycle_cap, args.format, args.path_cap)
    try:
        if args.command == "cycle":
            return cmd_cycle(args.n, args.sub, args.arg, cfg, out)
        text = _read(args.file)
        if args.command == "classify":
            return cmd_classify(text, cfg, out)
        if args.command == "eval":
            return cmd_eval(text, args.op, args.args, cfg, out)
        if args.command == "export-dot":
            return cmd_export_dot(text, cfg, out)
        return cmd_audit(text, cfg, out)
    except ParseError as exc:
        err.write(f"parse error: {exc}\n")
        return EXIT_PARSE
    except OSError as exc:
        err.write(f"cannot read input: {exc}\n")
        return EXIT_PARSE
    except CycleCapExceeded as exc:
        err.write(f"error: {exc}\n")
        return EXIT_CAP
    except (PreconditionError, QuiverkitError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())

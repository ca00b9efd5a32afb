"""Command line client over the core package.

Every subcommand is a thin wrapper: read JSON, call the library, print
JSON (or program text) on stdout.  Errors go to stderr as a single JSON
object so scripts can parse them.

Exit codes: 0 success, 1 validation or domain failure, 2 usage,
3 file I/O, 4 network or configuration.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import re
import sys
from typing import Optional

from .errors import (
    ConfigurationError,
    LatticeForgeError,
    ParseError,
    SubmissionError,
)
from .graphs import MeasurementBasis, graph_to_doc, local_complement, measure, minimize_cz
from .grid import errors_only, ingest_circuit_json, load, metrics, save, validate
from .lattice import lattice_to_doc, open_algorithm, prepare, to_graph_state
from .qasm import ThetaBinding, collect_rotations, emit, write_script

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_NETWORK = 4

_THETA_RE = re.compile(
    r"^(?P<kind>rotx|roty|rotz)@(?P<row>-?\d+),(?P<col>-?\d+)=(?P<value>.+)$"
)


class UsageError(Exception):
    """Malformed flag value; maps to exit code 2."""


def _print_json(doc: object) -> None:
    json.dump(doc, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")


def _print_error(kind: str, message: str, **extra) -> None:
    doc = {"error": {"kind": kind, "message": message, **extra}}
    json.dump(doc, sys.stderr)
    sys.stderr.write("\n")


def _read_json(path: str) -> object:
    if path == "-":
        return json.load(sys.stdin)
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def parse_theta(text: str) -> ThetaBinding:
    """Parse one --theta flag of the form kind@row,col=value."""
    m = _THETA_RE.match(text.strip())
    if not m:
        raise UsageError(
            f"bad --theta {text!r}: expected kind@row,col=value"
        )
    try:
        value = float(m.group("value"))
    except ValueError:
        raise UsageError(f"bad --theta value {m.group('value')!r}")
    return ThetaBinding(m.group("kind"), int(m.group("row")),
                        int(m.group("col")), value)


@dataclasses.dataclass(frozen=True)
class ReductionStep:
    op: str
    vertex: Optional[int] = None
    basis: Optional[MeasurementBasis] = None
    b0: Optional[int] = None
    budget: Optional[int] = None


def parse_reduction_script(text: str) -> list[ReductionStep]:
    """Parse a line-oriented reduction script.

    Grammar, one statement per line ('#' starts a comment):
        measure VERTEX BASIS [B0]
        lc VERTEX
        minimize [BUDGET]
    BASIS is an axis with optional sign, e.g. x, +y, z-.
    """
    steps = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        op, args = parts[0].lower(), parts[1:]
        try:
            if op == "measure" and len(args) in (2, 3):
                b0 = int(args[2]) if len(args) == 3 else None
                steps.append(ReductionStep(
                    "measure", vertex=int(args[0]),
                    basis=MeasurementBasis.parse(args[1]), b0=b0))
            elif op == "lc" and len(args) == 1:
                steps.append(ReductionStep("lc", vertex=int(args[0])))
            elif op == "minimize" and len(args) <= 1:
                budget = int(args[0]) if args else 200_000
                steps.append(ReductionStep("minimize", budget=budget))
            else:
                raise ValueError(line)
        except (ValueError, LatticeForgeError) as exc:
            raise ParseError(f"script line {lineno}: {raw.strip()!r}: {exc}")
    return steps


# --------------------------------------------------------------------------
# Subcommands.  Each takes parsed args and returns an exit code.

def cmd_validate(args) -> int:
    grid = load(_read_json(args.file))
    diagnostics = validate(grid)
    _print_json({
        "name": grid.name,
        "diagnostics": [
            {"severity": d.severity, "rule": d.rule, "message": d.message,
             "cells": [list(c) for c in d.cells]}
            for d in diagnostics
        ],
    })
    return EXIT_VALIDATION if errors_only(diagnostics) else EXIT_OK


def cmd_metrics(args) -> int:
    grid = load(_read_json(args.file))
    m = metrics(grid)
    _print_json({
        "min_lattice": list(m.min_lattice),
        "qubit_count": m.qubit_count,
        "t_count": m.t_count,
    })
    return EXIT_OK


def cmd_ingest(args) -> int:
    grid = ingest_circuit_json(_read_json(args.file))
    doc = save(grid)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, indent=2, sort_keys=True)
            fh.write("\n")
    else:
        _print_json(doc)
    return EXIT_OK


def cmd_layout(args) -> int:
    grid = load(_read_json(args.file))
    lattice = open_algorithm(grid)
    if args.prepared:
        lattice = prepare(lattice)
    _print_json(lattice_to_doc(lattice))
    return EXIT_OK


def cmd_reduce(args) -> int:
    grid = load(_read_json(args.file))
    with open(args.script, "r", encoding="utf-8") as fh:
        steps = parse_reduction_script(fh.read())
    lattice = prepare(open_algorithm(grid))
    graph = to_graph_state(lattice)
    log = []
    for step in steps:
        if step.op == "measure":
            graph, rec = measure(graph, step.vertex, step.basis, b0=step.b0)
            log.append({
                "op": "measure", "vertex": rec.vertex,
                "basis": str(rec.basis), "b0": rec.b0,
                "corrections": {str(k): v for k, v in rec.corrections.items()},
            })
        elif step.op == "lc":
            graph = local_complement(graph, step.vertex)
            log.append({"op": "lc", "vertex": step.vertex})
        else:
            result = minimize_cz(graph, node_budget=step.budget)
            graph = result.graph
            log.append({
                "op": "minimize",
                "lc_sequence": list(result.lc_sequence),
                "complete": result.complete,
            })
    _print_json({"log": log, "graph": graph_to_doc(graph)})
    return EXIT_OK


def cmd_compile(args) -> int:
    grid = load(_read_json(args.file))
    bindings = [parse_theta(t) for t in args.theta]
    program = emit(grid, bindings)
    if args.output:
        write_script(program, args.output)
    else:
        sys.stdout.write(program.text)
    return EXIT_OK


def cmd_rotations(args) -> int:
    grid = load(_read_json(args.file))
    _print_json([
        {"kind": s.kind.value, "row": s.row, "col": s.col}
        for s in collect_rotations(grid)
    ])
    return EXIT_OK


def cmd_submit(args) -> int:
    from .service.submit import submit as submit_qasm

    grid = load(_read_json(args.file))
    bindings = [parse_theta(t) for t in args.theta]
    program = emit(grid, bindings)
    result = submit_qasm(program.text, args.endpoint,
                         json_wrap=args.json_wrap)
    _print_json(result.to_doc())
    return EXIT_OK


def cmd_serve(args) -> int:
    import uvicorn

    from .service.app import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="latticeforge",
        description="Draft, reduce, compile and submit measurement-based "
                    "algorithms.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        return p

    p = add("validate", cmd_validate, "check a draft and print diagnostics")
    p.add_argument("file", help="algorithm JSON ('-' for stdin)")

    p = add("metrics", cmd_metrics, "print draft resource metrics")
    p.add_argument("file")

    p = add("ingest", cmd_ingest, "convert circuit JSON into a draft")
    p.add_argument("file")
    p.add_argument("-o", "--output")

    p = add("layout", cmd_layout, "expand a draft onto the lattice")
    p.add_argument("file")
    p.add_argument("--prepared", action="store_true",
                   help="also measure out superfluous qubits")

    p = add("reduce", cmd_reduce, "apply a reduction script to the "
                                  "prepared graph")
    p.add_argument("file")
    p.add_argument("--script", required=True)

    p = add("rotations", cmd_rotations, "list rotations needing angles")
    p.add_argument("file")

    p = add("compile", cmd_compile, "emit an OpenQASM 3.0 program")
    p.add_argument("file")
    p.add_argument("--theta", action="append", default=[],
                   metavar="KIND@ROW,COL=VALUE")
    p.add_argument("-o", "--output")

    p = add("submit", cmd_submit, "compile and post to the queue endpoint")
    p.add_argument("file")
    p.add_argument("--theta", action="append", default=[],
                   metavar="KIND@ROW,COL=VALUE")
    p.add_argument("--endpoint")
    p.add_argument("--json-wrap", action="store_true")

    p = add("serve", cmd_serve, "run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        _print_error("usage", str(exc))
        return EXIT_USAGE
    except (ConfigurationError, SubmissionError) as exc:
        _print_error(type(exc).__name__, str(exc))
        return EXIT_NETWORK
    except LatticeForgeError as exc:
        extra = {}
        if hasattr(exc, "missing"):
            extra["missing"] = [list(s) for s in exc.missing]
            extra["unknown"] = [list(s) for s in exc.unknown]
        _print_error(type(exc).__name__, str(exc), **extra)
        return EXIT_VALIDATION
    except json.JSONDecodeError as exc:
        _print_error("ParseError", f"invalid JSON: {exc}")
        return EXIT_VALIDATION
    except OSError as exc:
        _print_error("IOError", str(exc))
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())

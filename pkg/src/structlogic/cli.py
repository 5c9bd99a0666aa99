"""Command-line interface.

Exit codes: 0 success, 1 domain error (parse, compile, simulation, file
format), 2 usage error. Paths under ``fixtures/`` that do not exist locally
fall back to the copies shipped with the package, and a bare library gate
name (``AND``, ``CROS``, ...) is accepted wherever a grid file is expected.
"""

from __future__ import annotations

import argparse
import os
import sys
from importlib import resources
from typing import Optional, Sequence

from . import graphsim, netlist, optics, render
from .dualrail import CapacityExceeded, InvalidPair, UnboundVariable, assignments, eval_bool, truth_table, variables
from .frontend import compile_grid, compile_netlist, lower, parse, to_text
from .frontend.compile_netlist import CompileError
from .frontend.parser import ParseDiagnostic

DOMAIN_ERRORS = (
    ParseDiagnostic,
    CompileError,
    CapacityExceeded,
    InvalidPair,
    UnboundVariable,
    netlist.NetlistError,
    graphsim.SimulationError,
    graphsim.VertexNotFound,
    optics.OpticsError,
    optics.ReadError,
    OSError,
)


class UsageError(Exception):
    pass


# --- argument helpers -------------------------------------------------------


def _resolve(path: str) -> str:
    if os.path.exists(path):
        return path
    norm = path.replace("\\", "/")
    if norm.startswith("fixtures/"):
        shipped = resources.files("structlogic").joinpath(norm)
        if shipped.is_file():
            return str(shipped)
    return path


def _read_text(path: str) -> str:
    with open(_resolve(path), encoding="utf-8") as f:
        return f.read()


def _load_netlist(path: str) -> netlist.Netlist:
    return netlist.loads(_read_text(path))


def _load_grid(path: str) -> optics.OpticalGrid:
    if not os.path.exists(_resolve(path)) and path.upper() in optics.GATES:
        return optics.gate_grid(path)
    return optics.loads(_read_text(path))


def _assignment(items: Sequence[str]) -> dict[str, int]:
    env: dict[str, int] = {}
    for item in items:
        name, sep, value = item.partition("=")
        if not sep or not name or value not in ("0", "1"):
            raise UsageError(f"bad assignment {item!r}; expected NAME=0 or NAME=1")
        env[name] = int(value)
    return env


def _probe(text: str) -> tuple[str, str]:
    start, sep, goal = text.partition(":")
    if not sep or not start or not goal:
        raise UsageError(f"bad probe {text!r}; expected START:GOAL")
    return start, goal


def _channel(text: str) -> optics.Channel:
    side, sep, index = text.partition(":")
    if not sep or side not in optics.SIDES or not index.isdigit():
        raise UsageError(f"bad channel {text!r}; expected SIDE:INDEX with SIDE in {', '.join(optics.SIDES)}")
    return optics.Channel(side, int(index))


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def _expr(text: str):
    return lower(parse(text))


# --- commands ---------------------------------------------------------------


def cmd_parse(args) -> int:
    e = parse(args.expr)
    _emit(to_text(lower(e) if args.lower else e) + "\n", None)
    return 0


def cmd_table(args) -> int:
    e = parse(args.expr)
    names = variables(e)
    lines = [" ".join(names + ["|", "out"]) if names else "| out"]
    for env, value in truth_table(e):
        lines.append(" ".join([str(env[v]) for v in names] + ["|", str(value)]))
    _emit("\n".join(lines) + "\n", None)
    return 0


def cmd_compile_netlist(args) -> int:
    _emit(netlist.dumps(compile_netlist(_expr(args.expr))), args.output)
    return 0


def cmd_compile_grid(args) -> int:
    _emit(optics.dumps(compile_grid(_expr(args.expr))), args.output)
    return 0


def cmd_sim(args) -> int:
    n = _load_netlist(args.netlist)
    fixed = _assignment(args.set)
    names = [v for v in n.variables if v not in fixed]
    lines = [" ".join(n.variables + ["|", "out"])]
    for env in assignments(names):
        env = {**fixed, **env}
        value = graphsim.simulate(n, env)
        lines.append(" ".join([str(env[v]) for v in n.variables] + ["|", str(value)]))
    _emit("\n".join(lines) + "\n", None)
    return 0


def cmd_reach(args) -> int:
    n = _load_netlist(args.netlist)
    if args.probe:
        probes = [_probe(p) for p in args.probe]
    else:
        out = n.output
        probes = [(out.ground, out.alpha), (out.ground, out.beta)]
    rows = graphsim.reachability_table(n, probes)
    _emit(graphsim.format_table(rows, n.variables), None)
    return 0


def _format_junction(j: graphsim.Junction) -> str:
    env = " ".join(f"{k}={v}" for k, v in j.env) if j.env else "-"
    return f"{j.source}->{j.target} | {env} | {' '.join(j.witness)}"


def cmd_sneak(args) -> int:
    n = _load_netlist(args.netlist)
    if args.set:
        env = _assignment(args.set)
        report = graphsim.detect_sneak(n.instantiate(env))
        report = graphsim.SneakReport(tuple(
            graphsim.Junction(j.source, j.target, j.witness, tuple(sorted(env.items()))) for j in report.junctions
        ))
    else:
        report = graphsim.detect_sneak_netlist(n)
    lines = ["junction | assignment | witness"] + [_format_junction(j) for j in report.junctions]
    lines.append(f"{len(report.junctions)} junction(s)")
    _emit("\n".join(lines) + "\n", None)
    return 0


def _traced(args):
    g = _load_grid(args.grid)
    env = _assignment(args.set)
    if g.inputs:
        g = optics.apply_inputs(g, env)
    if args.entry:
        entry = _channel(args.entry)
    elif g.outputs:
        entry = g.outputs[0].channels[1]
    else:
        raise UsageError("grid has no output port; pass --entry SIDE:INDEX")
    return g, optics.trace(g, entry, args.budget)


def cmd_trace(args) -> int:
    g, t = _traced(args)
    lines = [
        f"entry {t.entry}",
        "exits " + (" ".join(str(c) for c in t.exit_list()) or "-"),
        f"absorbed {t.absorbed}",
        f"states {t.states}",
        f"truncated {'yes' if t.truncated else 'no'}",
    ]
    for p in g.outputs:
        a, gnd, b = p.channels
        if gnd == t.entry:
            lit = (a in t.exits, b in t.exits)
            value = {(True, False): "1", (False, True): "0", (True, True): "ambiguous", (False, False): "dark"}[lit]
            lines.append(f"read {p.name} {value}")
    _emit("\n".join(lines) + "\n", None)
    return 0


def cmd_verify(args) -> int:
    g = _load_grid(args.grid)
    if args.expr:
        e = parse(args.expr)
        out = g.output()
        report = optics.verify_gate(g, lambda env: {out.name: eval_bool(e, env)})
    else:
        gate = (args.gate or "").upper()
        if not gate and args.grid.upper() in optics.GATES:
            gate = args.grid.upper()
        if gate not in optics.CONTRACTS:
            raise UsageError("verify needs --expr EXPR or --gate NAME")
        report = optics.verify_gate(g, optics.CONTRACTS[gate])
    _emit(report.render(), None)
    return 0 if report.ok else 1


def cmd_render(args) -> int:
    spec = render.RenderSpec(args.format, args.cell_size, not args.no_paths)
    if args.no_paths:
        g, t = _load_grid(args.grid), None
    else:
        g, t = _traced(args)
    _emit(render.render(g, t, spec), args.output)
    return 0


# --- parser -----------------------------------------------------------------


def _budget(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("budget must be at least 1")
    return value


def _cell_size(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("cell size must be positive")
    return value


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="structlogic", description="Structural dual-rail logic and window-operator optics.")
    sub = ap.add_subparsers(dest="verb", required=True, metavar="VERB")

    p = sub.add_parser("parse", help="parse an expression and print its canonical form")
    p.add_argument("expr")
    p.add_argument("--lower", action="store_true", help="rewrite to AND/OR/NOT first")
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser("table", help="print the truth table of an expression")
    p.add_argument("expr")
    p.set_defaults(func=cmd_table)

    for verb, func, what in (
        ("compile-netlist", cmd_compile_netlist, "3-pin netlist"),
        ("compile-grid", cmd_compile_grid, "optical grid"),
    ):
        p = sub.add_parser(verb, help=f"compile an expression to a {what}")
        p.add_argument("expr")
        p.add_argument("-o", "--output", help="write to this file instead of stdout")
        p.set_defaults(func=func)

    p = sub.add_parser("sim", help="simulate a netlist over all (or the given) assignments")
    p.add_argument("netlist")
    p.add_argument("--set", action="append", default=[], metavar="NAME=BIT")
    p.set_defaults(func=cmd_sim)

    p = sub.add_parser("reach", help="reachability table for ground-to-rail probes")
    p.add_argument("netlist")
    p.add_argument("--probe", action="append", metavar="START:GOAL")
    p.set_defaults(func=cmd_reach)

    p = sub.add_parser("sneak", help="report one-way junctions crossable backwards")
    p.add_argument("netlist")
    p.add_argument("--set", action="append", default=[], metavar="NAME=BIT")
    p.set_defaults(func=cmd_sneak)

    for verb, func, what in (("trace", cmd_trace, "trace a ray through a grid"), ("render", cmd_render, "draw a grid")):
        p = sub.add_parser(verb, help=what)
        p.add_argument("grid", help="grid file or library gate name")
        p.add_argument("--set", action="append", default=[], metavar="NAME=BIT")
        p.add_argument("--entry", metavar="SIDE:INDEX", help="injection channel (default: the first output's ground)")
        p.add_argument("--budget", type=_budget, help="step budget (default 16*rows*cols or $STRUCTLOGIC_STEP_BUDGET)")
        p.set_defaults(func=func)
    p.add_argument("--format", choices=("ascii", "svg"), default="ascii")
    p.add_argument("--cell-size", type=_cell_size, default=24)
    p.add_argument("--no-paths", action="store_true")
    p.add_argument("-o", "--output")

    p = sub.add_parser("verify", help="check a grid against a truth table")
    p.add_argument("grid", help="grid file or library gate name")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--expr", help="expected function of the single output")
    group.add_argument("--gate", choices=optics.GATES, type=str.upper, help="library contract to check against")
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        ap.print_usage(sys.stderr)
        print(f"{ap.prog}: error: {exc}", file=sys.stderr)
        return 2
    except DOMAIN_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

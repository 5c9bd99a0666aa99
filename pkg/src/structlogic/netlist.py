"""3-pin structural circuits.

A signal port is three pins: alpha (true rail), ground (centre) and beta
(inverted rail). The port carries 1 when ground is connected to alpha and 0
when ground is connected to beta. Inputs enter as switch wires that are
present only when their variable has a given value.

Pin naming convention used by the gadgets and the fixture: ``<node>.1`` is
alpha, ``<node>.2`` ground, ``<node>.3`` beta (the fixture uses the bare
``K1``/``K2``/``K3`` form).
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from typing import Mapping, Optional

from .dualrail import UnboundVariable, check_bit
from .graphsim import ConnectivityGraph


class NetlistError(ValueError):
    pass


class NetlistFormatError(NetlistError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class Wire:
    a: str
    b: str
    oneway: bool = False
    var: Optional[str] = None
    when: Optional[int] = None

    def __post_init__(self):
        if self.a == self.b:
            raise NetlistError(f"wire from {self.a} to itself")
        if (self.var is None) != (self.when is None):
            raise NetlistError("a switch needs both var and when")
        if self.when is not None:
            check_bit(self.when)

    @property
    def is_switch(self) -> bool:
        return self.var is not None

    def closed(self, env: Mapping[str, int]) -> bool:
        if self.var is None:
            return True
        if self.var not in env:
            raise UnboundVariable(self.var)
        return env[self.var] == self.when


def switch(a: str, b: str, var: str, when: int) -> Wire:
    return Wire(a, b, var=var, when=when)


@dataclass(frozen=True)
class Port:
    role: str  # "input" or "output"
    alpha: str
    ground: str
    beta: str
    var: Optional[str] = None

    def __post_init__(self):
        if self.role not in ("input", "output"):
            raise NetlistError(f"bad port role {self.role!r}")
        if (self.role == "input") != (self.var is not None):
            raise NetlistError("input ports name a variable, output ports do not")
        if len({self.alpha, self.ground, self.beta}) != 3:
            raise NetlistError(f"port pins must be distinct: {self.pins}")

    @property
    def pins(self) -> tuple[str, str, str]:
        return (self.alpha, self.ground, self.beta)

    @classmethod
    def named(cls, node: str, role: str = "output", var: Optional[str] = None) -> "Port":
        return cls(role, f"{node}.1", f"{node}.2", f"{node}.3", var)


@dataclass(frozen=True)
class Netlist:
    pins: tuple[str, ...]
    wires: tuple[Wire, ...]
    ports: tuple[Port, ...]

    def __post_init__(self):
        object.__setattr__(self, "pins", tuple(self.pins))
        object.__setattr__(self, "wires", tuple(self.wires))
        object.__setattr__(self, "ports", tuple(self.ports))
        declared = set(self.pins)
        if len(declared) != len(self.pins):
            raise NetlistError("duplicate pin declaration")
        for w in self.wires:
            for p in (w.a, w.b):
                if p not in declared:
                    raise NetlistError(f"wire endpoint {p!r} is not a declared pin")
        for port in self.ports:
            for p in port.pins:
                if p not in declared:
                    raise NetlistError(f"port pin {p!r} is not a declared pin")
        if sum(p.role == "output" for p in self.ports) != 1:
            raise NetlistError("a netlist has exactly one output port")
        inputs = [p.var for p in self.ports if p.role == "input"]
        if len(set(inputs)) != len(inputs):
            raise NetlistError("duplicate input port")
        switched = {w.var for w in self.wires if w.is_switch}
        for v in switched - set(inputs):
            raise NetlistError(f"switch references undeclared input {v!r}")
        for v in set(inputs) - switched:
            raise NetlistError(f"input {v!r} controls no switch")

    @property
    def output(self) -> Port:
        return next(p for p in self.ports if p.role == "output")

    @property
    def inputs(self) -> list[Port]:
        return [p for p in self.ports if p.role == "input"]

    @property
    def variables(self) -> list[str]:
        return sorted(p.var for p in self.inputs)

    def instantiate(self, env: Mapping[str, int]) -> ConnectivityGraph:
        for v in self.variables:
            if v not in env:
                raise UnboundVariable(v)
        edges = [(w.a, w.b, w.oneway) for w in self.wires if w.closed(env)]
        return ConnectivityGraph(self.pins, edges)


def instantiate(n: Netlist, env: Mapping[str, int]) -> ConnectivityGraph:
    return n.instantiate(env)


def input_port(var: str, node: Optional[str] = None) -> tuple[Port, list[Wire]]:
    """An input port whose ground meets alpha when ``var`` is 1 and beta when 0."""
    port = Port.named(node or var, "input", var)
    return port, [switch(port.ground, port.alpha, var, 1), switch(port.ground, port.beta, var, 0)]


# --- gadgets ----------------------------------------------------------------


def not_gadget(inp: Port, out: Port) -> list[Wire]:
    """The twist: rails exchanged, ground passes straight through."""
    if set(inp.pins) & set(out.pins):
        raise NetlistError("not_gadget needs two distinct ports")
    return [Wire(inp.alpha, out.beta), Wire(inp.ground, out.ground), Wire(inp.beta, out.alpha)]


def buffer_gadget(inp: Port, out: Port) -> list[Wire]:
    return [Wire(inp.alpha, out.alpha), Wire(inp.ground, out.ground), Wire(inp.beta, out.beta)]


def switch_wires(a: str, b: str, out: Port, series_when: int) -> tuple[str, list[Wire]]:
    """Relay network for a two-variable gate; returns the internal series pin and the wires.

    ``series_when=1`` gives AND (alpha through a series pair), ``0`` gives OR.
    """
    series_rail, parallel_rail = (out.alpha, out.beta) if series_when else (out.beta, out.alpha)
    mid = f"{out.ground}s"
    wires = [
        switch(out.ground, mid, a, series_when),
        switch(mid, series_rail, b, series_when),
        switch(out.ground, parallel_rail, a, 1 - series_when),
    ]
    if b != a:
        wires.append(switch(out.ground, parallel_rail, b, 1 - series_when))
    return mid, wires


def _switch_fragment(a: str, b: str, out: Port, series_when: int) -> Netlist:
    mid, wires = switch_wires(a, b, out, series_when)
    ports = [out if out.role == "output" else Port("output", *out.pins)]
    pins = list(out.pins) + [mid]
    for v in dict.fromkeys((a, b)):
        port, sw = input_port(v, f"in_{v}")
        ports.append(port)
        pins.extend(port.pins)
        wires.extend(sw)
    return Netlist(pins, wires, ports)


def and_gadget(a: str, b: str, out: Port) -> Netlist:
    """Alpha through ``a`` and ``b`` in series, beta through their negations in parallel.

    The fragment includes input ports ``in_<var>`` for the switch variables.
    """
    return _switch_fragment(a, b, out, series_when=1)


def or_gadget(a: str, b: str, out: Port) -> Netlist:
    """Dual of :func:`and_gadget`: alpha in parallel, beta in series."""
    return _switch_fragment(a, b, out, series_when=0)


def and_ports(x: Port, y: Port, out: Port) -> list[Wire]:
    """Series/parallel composition of two sub-circuit ports into ``out``.

    Ground feeds ``x``; x's alpha feeds y's ground; y's alpha is the result's
    alpha. Both betas merge into the result's beta through one-way wires.
    """
    return [
        Wire(out.ground, x.ground),
        Wire(x.alpha, y.ground),
        Wire(y.alpha, out.alpha),
        Wire(x.beta, out.beta, oneway=True),
        Wire(y.beta, out.beta, oneway=True),
    ]


def or_ports(x: Port, y: Port, out: Port) -> list[Wire]:
    return [
        Wire(out.ground, x.ground),
        Wire(x.beta, y.ground),
        Wire(y.beta, out.beta),
        Wire(x.alpha, out.alpha, oneway=True),
        Wire(y.alpha, out.alpha, oneway=True),
    ]


def const_wires(value: int, out: Port) -> list[Wire]:
    return [Wire(out.ground, out.alpha if value else out.beta)]


# --- text format ------------------------------------------------------------


def dumps(n: Netlist) -> str:
    lines = [f"pin {p}" for p in n.pins]
    for w in n.wires:
        if w.is_switch:
            lines.append(f"switch {w.a} {w.b} var={w.var} when={w.when}")
        else:
            lines.append(f"wire {w.a} {w.b}" + (" oneway" if w.oneway else ""))
    for p in n.ports:
        if p.role == "input":
            lines.append(f"port input {p.var} {p.alpha} {p.ground} {p.beta}")
        else:
            lines.append(f"port output {p.alpha} {p.ground} {p.beta}")
    return "\n".join(lines) + "\n"


def _kv(token: str, key: str, lineno: int) -> str:
    prefix = key + "="
    if not token.startswith(prefix) or len(token) == len(prefix):
        raise NetlistFormatError(lineno, f"expected {prefix}<value>, got {token!r}")
    return token[len(prefix):]


def loads(text: str) -> Netlist:
    pins: list[str] = []
    wires: list[Wire] = []
    ports: list[Port] = []
    seen_pins: set[str] = set()
    seen_lines: set[tuple] = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        kind = tok[0]
        try:
            if kind == "pin" and len(tok) == 2:
                if tok[1] in seen_pins:
                    raise NetlistFormatError(lineno, f"duplicate pin {tok[1]!r}")
                seen_pins.add(tok[1])
                pins.append(tok[1])
                continue
            if kind == "wire" and len(tok) in (3, 4):
                if len(tok) == 4 and tok[3] != "oneway":
                    raise NetlistFormatError(lineno, f"unknown wire flag {tok[3]!r}")
                item = Wire(tok[1], tok[2], oneway=len(tok) == 4)
            elif kind == "switch" and len(tok) == 5:
                when = _kv(tok[4], "when", lineno)
                if when not in ("0", "1"):
                    raise NetlistFormatError(lineno, f"when must be 0 or 1, got {when!r}")
                item = switch(tok[1], tok[2], _kv(tok[3], "var", lineno), int(when))
            elif kind == "port" and len(tok) == 6 and tok[1] == "input":
                item = Port("input", tok[3], tok[4], tok[5], tok[2])
            elif kind == "port" and len(tok) == 5 and tok[1] == "output":
                item = Port("output", tok[2], tok[3], tok[4])
            else:
                raise NetlistFormatError(lineno, f"cannot parse {line!r}")
        except NetlistFormatError:
            raise
        except NetlistError as exc:
            raise NetlistFormatError(lineno, str(exc)) from None
        key = (kind, item)
        if key in seen_lines:
            raise NetlistFormatError(lineno, f"duplicate declaration {line!r}")
        seen_lines.add(key)
        (ports if kind == "port" else wires).append(item)
    try:
        return Netlist(pins, wires, ports)
    except NetlistError as exc:
        raise NetlistFormatError(0, str(exc)) from None


def load(path) -> Netlist:
    with open(path, encoding="utf-8") as f:
        return loads(f.read())


def xor_fixture() -> Netlist:
    """The shipped 33-pin XOR reference circuit (``fixtures/xor.netlist``)."""
    return loads(resources.files("structlogic.fixtures").joinpath("xor.netlist").read_text("utf-8"))

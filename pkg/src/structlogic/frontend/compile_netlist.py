from __future__ import annotations

from ..dualrail import BinOp, BoolExpr, Const, Not, Var, variables
from .. import netlist as nl
from .lower import PRIMITIVE_OPS


class CompileError(ValueError):
    pass


OUTPUT_NODE = "OUT"


class _NetlistBuilder:
    def __init__(self, e: BoolExpr):
        self.pins: list[str] = []
        self.wires: list[nl.Wire] = []
        self.ports: list[nl.Port] = []
        self.input_ports: dict[str, nl.Port] = {}
        self.gates = 0
        self.copies: dict[str, int] = {}
        for v in variables(e):
            port, sw = nl.input_port(v)
            self.input_ports[v] = port
            self.ports.append(port)
            self.pins.extend(port.pins)
            self.wires.extend(sw)

    def new_port(self, node: str | None = None) -> nl.Port:
        if node is None:
            node = f"@{self.gates}"
            self.gates += 1
        port = nl.Port.named(node)
        self.pins.extend(port.pins)
        return port

    def leaf(self, name: str) -> nl.Port:
        # first use reads the input port itself, later uses get their own switch pair
        k = self.copies.get(name, 0)
        self.copies[name] = k + 1
        if k == 0:
            return self.input_ports[name]
        port, sw = nl.input_port(name, f"{name}@{k}")
        self.pins.extend(port.pins)
        self.wires.extend(sw)
        return port

    def build(self, e: BoolExpr, out: nl.Port | None = None) -> nl.Port:
        """Emit ``e`` and return the port carrying its value (``out`` when given)."""
        if isinstance(e, Var):
            src = self.leaf(e.name)
            if out is None:
                return src
            self.wires.extend(nl.buffer_gadget(src, out))
            return out
        if isinstance(e, Const):
            out = out or self.new_port()
            self.wires.extend(nl.const_wires(e.value, out))
            return out
        if isinstance(e, Not):
            inner = self.build(e.child)
            out = out or self.new_port()
            self.wires.extend(nl.not_gadget(inner, out))
            return out
        if not isinstance(e, BinOp) or e.op not in PRIMITIVE_OPS:
            raise CompileError(f"operator {getattr(e, 'op', e)!r} is not lowered")
        if isinstance(e.left, Var) and isinstance(e.right, Var):
            out = out or self.new_port()
            for v in (e.left.name, e.right.name):
                self.copies[v] = self.copies.get(v, 0) + 1
            mid, wires = nl.switch_wires(e.left.name, e.right.name, out, int(e.op == "AND"))
            self.pins.append(mid)
            self.wires.extend(wires)
            return out
        x = self.build(e.left)
        y = self.build(e.right)
        out = out or self.new_port()
        self.wires.extend((nl.and_ports if e.op == "AND" else nl.or_ports)(x, y, out))
        return out

    def finish(self, e: BoolExpr) -> nl.Netlist:
        out = self.new_port(OUTPUT_NODE)
        self.build(e, out)
        self.ports.append(out)
        return nl.Netlist(self.pins, self.wires, self.ports)


def compile_netlist(e: BoolExpr) -> nl.Netlist:
    """Compile a lowered expression to a 3-pin netlist with output port ``OUT``.

    Pins are named ``<node>.<1|2|3>``. Nodes: ``<var>`` for input ports,
    ``<var>@<k>`` for later uses of a variable, ``@<k>`` for gates in build
    order, and ``OUT``.
    """
    return _NetlistBuilder(e).finish(e)

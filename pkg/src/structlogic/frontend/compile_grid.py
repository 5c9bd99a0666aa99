"""Lower an expression onto a grid of 3x3 window operators.

Layout: every leaf owns a horizontal *lane* (one tile row) and enters on the
west edge. Tile column 0 holds sources; each binary gate, in post-order, gets
the next column. A gate sits on the lane of its right operand, which feeds the
gate's west port; the left operand's lane is turned south into the gate's
north port by a CROS tile and runs down through INVS tiles. Left operands
always lie on higher lanes than right ones, so every turn goes south.

NOT costs no cells. A lane whose rails are exchanged is marked *twisted*:
the north operand is straightened by turning it with CNOT instead of CROS,
and a gate whose west operand is twisted is replaced by its De Morgan dual
with a twisted output. Unused tiles are black.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..dualrail import BinOp, BoolExpr, CapacityExceeded, Const, Not, Var, variables
from .. import optics
from ..optics import Cell, OpticalGrid, OpticalPort
from .compile_netlist import CompileError
from .lower import PRIMITIVE_OPS

MAX_GRID_VARS = 8
TILE = 3
_DUAL = {"AND": "OR", "OR": "AND"}


def constant_tile(value: int) -> OpticalGrid:
    """A reflector that sends light from the east ground channel back out the east alpha (1) or beta (0)."""
    cells = [[Cell.NULL] * 3 for _ in range(3)]
    if value:
        cells[1][1], cells[0][1] = Cell.MIRROR_FWD, Cell.MIRROR_REV
    else:
        cells[1][1], cells[2][1] = Cell.MIRROR_REV, Cell.MIRROR_FWD
    return OpticalGrid(cells, [OpticalPort("output", "east", 0, 1, 2)])


@dataclass
class _Signal:
    lane: int
    twisted: bool


class _Layout:
    def __init__(self):
        self.lanes = 0
        self.column = 1
        self.tiles: dict[tuple[int, int], OpticalGrid] = {}
        self.inputs: list[tuple[int, str]] = []
        # lane -> column where its signal was produced; live until consumed
        self.live_from: dict[int, int] = {}

    def place(self, lane: int, col: int, tile: OpticalGrid) -> None:
        if (lane, col) in self.tiles:
            raise CompileError(f"tile ({lane}, {col}) placed twice")
        self.tiles[(lane, col)] = tile

    def run(self, lane: int, upto: int) -> None:
        """Carry the signal on ``lane`` east up to (not including) column ``upto``."""
        start = self.live_from.pop(lane)
        for col in range(start + 1, upto):
            self.place(lane, col, optics.gate_grid("INVS"))

    def build(self, e: BoolExpr) -> _Signal:
        if isinstance(e, Var):
            lane = self.lanes
            self.lanes += 1
            self.inputs.append((lane, e.name))
            self.place(lane, 0, optics.gate_grid("INVS"))
            self.live_from[lane] = 0
            return _Signal(lane, False)
        if isinstance(e, Const):
            lane = self.lanes
            self.lanes += 1
            self.place(lane, 0, constant_tile(e.value))
            self.live_from[lane] = 0
            return _Signal(lane, False)
        if isinstance(e, Not):
            sig = self.build(e.child)
            return _Signal(sig.lane, not sig.twisted)
        if not isinstance(e, BinOp) or e.op not in PRIMITIVE_OPS:
            raise CompileError(f"operator {getattr(e, 'op', e)!r} is not lowered")
        top = self.build(e.left)
        side = self.build(e.right)
        col = self.column
        self.column += 1
        op, out_twisted = e.op, False
        turn_twisted = top.twisted
        if side.twisted:
            # De Morgan: feed the complement of both operands to the dual gate
            op, out_twisted, turn_twisted = _DUAL[op], True, not top.twisted
        self.run(top.lane, col)
        self.run(side.lane, col)
        self.place(top.lane, col, optics.gate_grid("CNOT" if turn_twisted else "CROS"))
        for lane in range(top.lane + 1, side.lane):
            self.place(lane, col, optics.gate_grid("INVS"))
        self.place(side.lane, col, optics.gate_grid(op))
        self.live_from[side.lane] = col
        return _Signal(side.lane, out_twisted)

    def assemble(self, root: _Signal) -> OpticalGrid:
        cols = self.column
        self.run(root.lane, cols)
        black = optics.blank(TILE, TILE)
        blocks = [[self.tiles.get((lane, col), black) for col in range(cols)] for lane in range(self.lanes)]
        grid = optics.compose_blocks(blocks)
        ports = [OpticalPort("input", "west", TILE * lane, TILE * lane + 1, TILE * lane + 2, name) for lane, name in self.inputs]
        a, b = TILE * root.lane, TILE * root.lane + 2
        if root.twisted:
            a, b = b, a
        ports.append(OpticalPort("output", "east", a, TILE * root.lane + 1, b))
        return OpticalGrid._trusted(grid.cells, ports, {})


def _library_case(e: BoolExpr):
    if isinstance(e, BinOp) and e.op in PRIMITIVE_OPS and isinstance(e.left, Var) and isinstance(e.right, Var):
        if e.left.name != e.right.name:
            return e.op, e.left.name, e.right.name
    return None


def compile_grid(e: BoolExpr) -> OpticalGrid:
    """Compile a lowered expression to an optical grid with one east output port.

    A single AND/OR of two distinct variables compiles to the library gate
    itself (left operand on the north port, right on the west port).
    """
    names = variables(e)
    if len(names) > MAX_GRID_VARS:
        raise CapacityExceeded(f"{len(names)} variables exceeds the optical limit of {MAX_GRID_VARS}")
    case = _library_case(e)
    if case is not None:
        op, north, west = case
        g = optics.gate_grid(op)
        rename = {"a": north, "b": west}
        ports = [OpticalPort(p.role, p.side, p.alpha, p.ground, p.beta, rename.get(p.var)) for p in g.ports]
        return OpticalGrid(g.cells, ports)
    layout = _Layout()
    root = layout.build(e)
    return layout.assemble(root)

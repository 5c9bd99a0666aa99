"""Window-operator optics: grids of mirror cells read by ray tracing.

Cells are 0 (empty), i (black body), 1 (``\\`` mirror), -1 (``/`` mirror),
2 (``\\`` half mirror) and -2 (``/`` half mirror). A ray moves one cell per
step along an axis; a half mirror both transmits and reflects.

A signal port is three adjacent boundary channels (alpha, ground, beta) on one
side. An output is read by firing into its ground channel and watching which
rail the light leaves through. Inputs are applied as *couplers*: light leaving
an input's ground re-enters through its alpha channel when the input is 1 and
through its beta channel when it is 0 (and the other way round).
"""

from __future__ import annotations

import enum
import functools
import os
from collections import deque
from dataclasses import dataclass, field, replace
from importlib import resources
from typing import Callable, Iterable, Mapping, Optional, Sequence, Union

from .dualrail import UnboundVariable, assignments


class OpticsError(ValueError):
    pass


class DimensionMismatch(OpticsError):
    pass


class GridFormatError(OpticsError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class ReadError(RuntimeError):
    pass


class AmbiguousOutput(ReadError):
    """Both rails of the probed port lit."""


class DarkOutput(ReadError):
    """Neither rail of the probed port lit."""


class Cell(enum.Enum):
    NULL = "0"
    BLACK = "i"
    MIRROR_FWD = "1"
    MIRROR_REV = "-1"
    HALF_FWD = "2"
    HALF_REV = "-2"

    @classmethod
    def parse(cls, token: str) -> "Cell":
        try:
            return cls(token)
        except ValueError:
            raise OpticsError(f"unknown cell token {token!r}") from None


class Heading(enum.Enum):
    N = (-1, 0)
    E = (0, 1)
    S = (1, 0)
    W = (0, -1)

    @property
    def reverse(self) -> "Heading":
        return _REVERSE[self]


_REVERSE = {Heading.N: Heading.S, Heading.S: Heading.N, Heading.E: Heading.W, Heading.W: Heading.E}
# "\" runs top-left to bottom-right, "/" bottom-left to top-right
_FWD = {Heading.E: Heading.S, Heading.S: Heading.E, Heading.W: Heading.N, Heading.N: Heading.W}
_REV = {Heading.E: Heading.N, Heading.N: Heading.E, Heading.W: Heading.S, Heading.S: Heading.W}


def step(cell: Cell, heading: Heading) -> tuple[Heading, ...]:
    """Outgoing headings of a ray entering ``cell``; transmitted ray first."""
    if cell is Cell.NULL:
        return (heading,)
    if cell is Cell.BLACK:
        return ()
    if cell is Cell.MIRROR_FWD:
        return (_FWD[heading],)
    if cell is Cell.MIRROR_REV:
        return (_REV[heading],)
    if cell is Cell.HALF_FWD:
        return (heading, _FWD[heading])
    return (heading, _REV[heading])


SIDES = ("north", "east", "south", "west")


@dataclass(frozen=True, order=True)
class Channel:
    side: str
    index: int

    def __str__(self) -> str:
        return f"{self.side}:{self.index}"


@dataclass(frozen=True)
class OpticalPort:
    role: str  # "input" or "output"
    side: str
    alpha: int
    ground: int
    beta: int
    var: Optional[str] = None

    def __post_init__(self):
        if self.role not in ("input", "output"):
            raise OpticsError(f"bad port role {self.role!r}")
        if (self.role == "input") != (self.var is not None):
            raise OpticsError("input ports name a variable, output ports do not")
        if self.side not in SIDES:
            raise OpticsError(f"bad side {self.side!r}")
        if not (min(self.alpha, self.beta) < self.ground < max(self.alpha, self.beta)):
            raise OpticsError("ground channel must lie between alpha and beta")

    @property
    def name(self) -> str:
        return self.var if self.role == "input" else f"{self.side}{self.ground}"

    @property
    def channels(self) -> tuple[Channel, Channel, Channel]:
        return (Channel(self.side, self.alpha), Channel(self.side, self.ground), Channel(self.side, self.beta))

    @property
    def twisted(self) -> bool:
        return self.alpha > self.beta

    def shifted(self, offset: int) -> "OpticalPort":
        return replace(self, alpha=self.alpha + offset, ground=self.ground + offset, beta=self.beta + offset)

    def flipped(self) -> "OpticalPort":
        return replace(self, alpha=self.beta, beta=self.alpha)


class OpticalGrid:
    """Immutable cell matrix with ports and (once inputs are applied) couplers."""

    def __init__(
        self,
        cells: Sequence[Sequence[Cell]],
        ports: Iterable[OpticalPort] = (),
        couplers: Optional[Mapping[Channel, Channel]] = None,
    ):
        if isinstance(cells, tuple) and all(type(r) is tuple for r in cells):
            rows = cells
            if not all(type(c) is Cell for r in rows for c in r):
                rows = tuple(tuple(Cell(c) for c in row) for row in rows)
        else:
            rows = tuple(tuple(c if type(c) is Cell else Cell(c) for c in row) for row in cells)
        if not rows or not rows[0]:
            raise OpticsError("a grid needs at least one row and one column")
        if any(len(r) != len(rows[0]) for r in rows):
            raise OpticsError("ragged grid")
        self.cells = rows
        self.rows = len(rows)
        self.cols = len(rows[0])
        self.ports = tuple(ports)
        self.couplers = dict(couplers or {})
        used: set[Channel] = set()
        for p in self.ports:
            for ch in p.channels:
                if not 0 <= ch.index < self.side_length(ch.side):
                    raise OpticsError(f"port channel {ch} is off the grid")
                if ch in used:
                    raise OpticsError(f"port channel {ch} is used twice")
                used.add(ch)

    @classmethod
    def _trusted(cls, cells, ports, couplers) -> "OpticalGrid":
        # cells already validated by another grid; skips the per-cell checks
        g = cls.__new__(cls)
        g.cells, g.rows, g.cols = cells, len(cells), len(cells[0])
        g.ports, g.couplers = tuple(ports), dict(couplers)
        return g

    @classmethod
    def from_rows(cls, text_rows: Sequence[str], ports: Iterable[OpticalPort] = ()) -> "OpticalGrid":
        return cls([[Cell.parse(t) for t in row.split()] for row in text_rows], ports)

    def side_length(self, side: str) -> int:
        return self.cols if side in ("north", "south") else self.rows

    def __getitem__(self, rc: tuple[int, int]) -> Cell:
        return self.cells[rc[0]][rc[1]]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, OpticalGrid)
            and self.cells == other.cells
            and self.ports == other.ports
            and self.couplers == other.couplers
        )

    def __repr__(self) -> str:
        return f"OpticalGrid({self.rows}x{self.cols}, {len(self.ports)} ports)"

    @property
    def inputs(self) -> list[OpticalPort]:
        return [p for p in self.ports if p.role == "input"]

    @property
    def outputs(self) -> list[OpticalPort]:
        return [p for p in self.ports if p.role == "output"]

    @property
    def variables(self) -> list[str]:
        return sorted({p.var for p in self.inputs})

    def output(self, name: Optional[str] = None) -> OpticalPort:
        outs = self.outputs
        if name is None:
            if len(outs) != 1:
                raise OpticsError(f"grid has {len(outs)} outputs; name one")
            return outs[0]
        for p in outs:
            if p.name == name:
                return p
        raise OpticsError(f"no output named {name!r}")

    def channels(self) -> list[Channel]:
        return [Channel(s, i) for s in SIDES for i in range(self.side_length(s))]

    def entry_state(self, ch: Channel) -> tuple[int, int, Heading]:
        if ch.side == "north":
            return 0, ch.index, Heading.S
        if ch.side == "south":
            return self.rows - 1, ch.index, Heading.N
        if ch.side == "west":
            return ch.index, 0, Heading.E
        return ch.index, self.cols - 1, Heading.W

    def exit_channel(self, r: int, c: int, h: Heading) -> Optional[Channel]:
        """Channel a ray leaves through when it moves from cell (r, c) along ``h``."""
        nr, nc = r + h.value[0], c + h.value[1]
        if nr < 0:
            return Channel("north", c)
        if nr >= self.rows:
            return Channel("south", c)
        if nc < 0:
            return Channel("west", r)
        if nc >= self.cols:
            return Channel("east", r)
        return None

    def with_cells(self, cells) -> "OpticalGrid":
        return OpticalGrid(cells, self.ports, self.couplers)


# --- tracing ----------------------------------------------------------------


@dataclass
class RayPath:
    """One unsplit run of light.

    ``cells`` lists ``(row, col, heading)`` in visiting order with the heading
    the ray had when it entered the cell. ``end`` is one of ``exit``,
    ``absorbed``, ``merged`` (reached an already lit state), ``coupled`` (left
    through an input port and continued as a child path) or ``truncated``.
    """

    id: int
    parent: Optional[int]
    entry: Channel
    cells: list[tuple[int, int, Heading]] = field(default_factory=list)
    end: str = "truncated"
    exit: Optional[Channel] = None


@dataclass
class TraceResult:
    entry: Channel
    exits: set[Channel]
    paths: list[RayPath]
    absorbed: int
    truncated: bool
    states: int

    def exit_list(self) -> list[Channel]:
        return sorted(self.exits)


def default_budget(g: OpticalGrid) -> int:
    env = os.environ.get("STRUCTLOGIC_STEP_BUDGET")
    if env:
        try:
            budget = int(env)
        except ValueError:
            raise OpticsError(f"STRUCTLOGIC_STEP_BUDGET is not an integer: {env!r}") from None
        if budget < 1:
            raise OpticsError("STRUCTLOGIC_STEP_BUDGET must be positive")
        return budget
    return 16 * g.rows * g.cols


_HEADINGS = (Heading.N, Heading.E, Heading.S, Heading.W)
_DR = (-1, 0, 1, 0)
_DC = (0, 1, 0, -1)
_H_INDEX = {h: i for i, h in enumerate(_HEADINGS)}
# outgoing heading indices per cell, indexed by incoming heading index
_STEP_TABLE = {
    cell: tuple(tuple(_H_INDEX[o] for o in step(cell, h)) for h in _HEADINGS) for cell in Cell
}


def trace(g: OpticalGrid, entry: Channel, budget: Optional[int] = None) -> TraceResult:
    """Breadth-first propagation of light injected at ``entry``.

    Each ``(row, col, heading)`` state is lit at most once, so the trace always
    terminates; ``budget`` bounds the number of states processed.
    """
    if budget is None:
        budget = default_budget(g)
    if budget < 1:
        raise OpticsError("budget must be at least 1")
    if not 0 <= entry.index < g.side_length(entry.side):
        raise OpticsError(f"entry {entry} is not on the boundary")
    rows, cols, cells = g.rows, g.cols, g.cells
    couplers = g.couplers
    paths = [RayPath(0, None, entry)]
    exits: set[Channel] = set()
    absorbed = 0
    seen: set[tuple[int, int, int]] = set()

    def start(ch: Channel) -> tuple[int, int, int]:
        r, c, h = g.entry_state(ch)
        return r, c, _H_INDEX[h]

    state = start(entry)
    seen.add(state)
    frontier = deque([(*state, 0)])
    processed = 0
    while frontier:
        if processed >= budget:
            for *_, pid in frontier:
                paths[pid].end = "truncated"
            return TraceResult(entry, exits, paths, absorbed, True, len(seen))
        r, c, h, pid = frontier.popleft()
        processed += 1
        path = paths[pid]
        path.cells.append((r, c, _HEADINGS[h]))
        outs = _STEP_TABLE[cells[r][c]][h]
        if not outs:
            absorbed += 1
            path.end = "absorbed"
            continue
        for k, nh in enumerate(outs):
            if k == 0:
                cur = pid
            else:
                cur = len(paths)
                paths.append(RayPath(cur, pid, path.entry))
            nr, nc = r + _DR[nh], c + _DC[nh]
            if 0 <= nr < rows and 0 <= nc < cols:
                state = (nr, nc, nh)
            else:
                if nr < 0:
                    ch = Channel("north", c)
                elif nr >= rows:
                    ch = Channel("south", c)
                elif nc < 0:
                    ch = Channel("west", r)
                else:
                    ch = Channel("east", r)
                if ch not in couplers:
                    paths[cur].end, paths[cur].exit = "exit", ch
                    exits.add(ch)
                    continue
                paths[cur].end, paths[cur].exit = "coupled", ch
                partner = couplers[ch]
                child = len(paths)
                paths.append(RayPath(child, cur, partner))
                state, cur = start(partner), child
            if state in seen:
                paths[cur].end = "merged"
                continue
            seen.add(state)
            frontier.append((*state, cur))
    return TraceResult(entry, exits, paths, absorbed, False, len(seen))


def apply_inputs(g: OpticalGrid, env: Mapping[str, int]) -> OpticalGrid:
    couplers = dict(g.couplers)
    for p in g.inputs:
        if p.var not in env:
            raise UnboundVariable(p.var)
        a, gnd, b = p.channels
        rail = a if env[p.var] else b
        couplers[gnd] = rail
        couplers[rail] = gnd
    return OpticalGrid._trusted(g.cells, g.ports, couplers)


def read_port(g: OpticalGrid, out: Optional[OpticalPort] = None, budget: Optional[int] = None) -> int:
    out = out or g.output()
    if out.role != "output":
        raise OpticsError("read_port needs an output port")
    a, gnd, b = out.channels
    result = trace(g, gnd, budget)
    lit_a, lit_b = a in result.exits, b in result.exits
    if lit_a and lit_b:
        raise AmbiguousOutput(f"both rails of {out.name} lit")
    if not (lit_a or lit_b):
        raise DarkOutput(f"no rail of {out.name} lit")
    return 1 if lit_a else 0


def evaluate(g: OpticalGrid, env: Mapping[str, int]) -> dict[str, Union[int, str]]:
    """Read every output under ``env``; failures come back as ``"ambiguous"``/``"dark"``."""
    applied = apply_inputs(g, env)
    result: dict[str, Union[int, str]] = {}
    for p in g.outputs:
        try:
            result[p.name] = read_port(applied, p)
        except AmbiguousOutput:
            result[p.name] = "ambiguous"
        except DarkOutput:
            result[p.name] = "dark"
    return result


# --- verification -----------------------------------------------------------


@dataclass(frozen=True)
class VerifyRow:
    env: tuple[tuple[str, int], ...]
    expected: tuple[tuple[str, int], ...]
    got: tuple[tuple[str, Union[int, str]], ...]

    @property
    def passed(self) -> bool:
        return dict(self.expected) == dict(self.got)


@dataclass(frozen=True)
class VerifyReport:
    rows: tuple[VerifyRow, ...]

    @property
    def passed(self) -> int:
        return sum(r.passed for r in self.rows)

    @property
    def ok(self) -> bool:
        return self.passed == len(self.rows)

    def failures(self) -> list[VerifyRow]:
        return [r for r in self.rows if not r.passed]

    def diagnoses(self) -> set[str]:
        return {v for r in self.rows for _, v in r.got if isinstance(v, str)}

    def render(self) -> str:
        lines = []
        for row in self.rows:
            env = " ".join(f"{k}={v}" for k, v in row.env)
            got = " ".join(f"{k}={v}" for k, v in row.got)
            want = " ".join(f"{k}={v}" for k, v in row.expected)
            lines.append(f"{'PASS' if row.passed else 'FAIL'} | {env} | want {want} | got {got}")
        lines.append(f"{self.passed}/{len(self.rows)} rows pass")
        return "\n".join(lines) + "\n"


Expected = Union[Callable[[dict], Mapping[str, int]], Sequence[tuple[Mapping[str, int], Mapping[str, int]]]]


def verify_gate(g: OpticalGrid, expected: Expected) -> VerifyReport:
    """Check every input assignment against ``expected``.

    ``expected`` is either a function from an assignment to ``{output name:
    bit}`` or an explicit list of ``(assignment, outputs)`` rows covering all
    assignments.
    """
    names = g.variables
    if callable(expected):
        table = [(env, expected(dict(env))) for env in assignments(names)]
    else:
        table = [(dict(env), dict(out)) for env, out in expected]
        keys = {tuple(sorted(env.items())) for env, _ in table}
        if keys != {tuple(sorted(env.items())) for env in assignments(names)}:
            raise OpticsError("expected table does not cover every input assignment")
    rows = []
    for env, want in table:
        got = evaluate(g, env)
        rows.append(
            VerifyRow(
                tuple(sorted(env.items())),
                tuple(sorted(want.items())),
                tuple(sorted((k, got[k]) for k in want)),
            )
        )
    return VerifyReport(tuple(rows))


# --- composition ------------------------------------------------------------

_OPPOSITE = {"east": "west", "west": "east", "north": "south", "south": "north"}


def _seam(left: OpticalGrid, right: OpticalGrid, side: str) -> tuple[list[OpticalPort], list[OpticalPort]]:
    """Pair up ports across a seam; returns the surviving ports of both grids."""
    facing = _OPPOSITE[side]
    a_ports = [p for p in left.ports if p.side == side]
    b_ports = [p for p in right.ports if p.side == facing]
    b_by_ground = {p.ground: p for p in b_ports}
    for p in a_ports:
        q = b_by_ground.pop(p.ground, None)
        if q is None or {p.alpha, p.beta} != {q.alpha, q.beta}:
            raise DimensionMismatch(f"port {p.name} on the {side} seam has no matching partner")
        if {p.role, q.role} != {"input", "output"}:
            raise DimensionMismatch(f"seam ports at channel {p.ground} must pair an output with an input")
    if b_by_ground:
        raise DimensionMismatch(f"unmatched port on the {facing} seam")
    return [p for p in left.ports if p.side != side], [p for p in right.ports if p.side != facing]


def compose_h(left: OpticalGrid, right: OpticalGrid) -> OpticalGrid:
    """Place ``right`` east of ``left``; ports meeting on the seam are consumed."""
    if left.rows != right.rows:
        raise DimensionMismatch(f"row counts differ: {left.rows} vs {right.rows}")
    if left.couplers or right.couplers:
        raise OpticsError("compose grids before applying inputs")
    lp, rp = _seam(left, right, "east")
    ports = lp + [p.shifted(left.cols) if p.side in ("north", "south") else p for p in rp]
    cells = [l + r for l, r in zip(left.cells, right.cells)]
    return OpticalGrid(cells, ports)


def compose_v(top: OpticalGrid, bottom: OpticalGrid) -> OpticalGrid:
    """Place ``bottom`` south of ``top``."""
    if top.cols != bottom.cols:
        raise DimensionMismatch(f"column counts differ: {top.cols} vs {bottom.cols}")
    if top.couplers or bottom.couplers:
        raise OpticsError("compose grids before applying inputs")
    tp, bp = _seam(top, bottom, "south")
    ports = tp + [p.shifted(top.rows) if p.side in ("east", "west") else p for p in bp]
    return OpticalGrid(top.cells + bottom.cells, ports)


def blank(rows: int, cols: int, cell: Cell = Cell.BLACK) -> OpticalGrid:
    return OpticalGrid([[cell] * cols for _ in range(rows)])


def compose_blocks(blocks: Sequence[Sequence[OpticalGrid]]) -> OpticalGrid:
    """Cells of a block matrix in one pass; same result as folding
    :func:`compose_h` along each block row and :func:`compose_v` down the
    column of rows, for port-less blocks."""
    out: list[tuple[Cell, ...]] = []
    width = None
    for brow in blocks:
        height = brow[0].rows
        if any(b.rows != height for b in brow):
            raise DimensionMismatch("blocks in one row differ in height")
        for i in range(height):
            line = tuple(c for b in brow for c in b.cells[i])
            if width is None:
                width = len(line)
            elif len(line) != width:
                raise DimensionMismatch("block rows differ in width")
            out.append(line)
    return OpticalGrid._trusted(tuple(out), (), {})


# --- text format ------------------------------------------------------------


def dumps(g: OpticalGrid) -> str:
    width = max(len(c.value) for row in g.cells for c in row)
    lines = [f"grid {g.rows} {g.cols}"]
    lines += [" ".join(c.value.rjust(width) for c in row) for row in g.cells]
    for p in g.ports:
        role = f"input {p.var}" if p.role == "input" else "output"
        lines.append(f"port {role} {p.side} {p.alpha} {p.ground} {p.beta}")
    return "\n".join(lines) + "\n"


def loads(text: str) -> OpticalGrid:
    header = None
    rows: list[list[Cell]] = []
    ports: list[OpticalPort] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        try:
            if tok[0] == "grid":
                if header is not None or len(tok) != 3:
                    raise GridFormatError(lineno, "expected a single 'grid <rows> <cols>' header")
                header = (int(tok[1]), int(tok[2]))
                if min(header) < 1:
                    raise GridFormatError(lineno, "grid dimensions must be positive")
            elif tok[0] == "port":
                if len(tok) == 7 and tok[1] == "input":
                    ports.append(OpticalPort("input", tok[3], int(tok[4]), int(tok[5]), int(tok[6]), tok[2]))
                elif len(tok) == 6 and tok[1] == "output":
                    ports.append(OpticalPort("output", tok[2], int(tok[3]), int(tok[4]), int(tok[5])))
                else:
                    raise GridFormatError(lineno, f"cannot parse port line {line!r}")
            else:
                if header is None:
                    raise GridFormatError(lineno, "cell row before the grid header")
                row = [Cell.parse(t) for t in tok]
                if len(row) != header[1]:
                    raise GridFormatError(lineno, f"expected {header[1]} cells, found {len(row)}")
                rows.append(row)
        except GridFormatError:
            raise
        except (OpticsError, ValueError) as exc:
            raise GridFormatError(lineno, str(exc)) from None
    if header is None:
        raise GridFormatError(0, "missing grid header")
    if len(rows) != header[0]:
        raise GridFormatError(0, f"expected {header[0]} rows, found {len(rows)}")
    try:
        return OpticalGrid(rows, ports)
    except OpticsError as exc:
        raise GridFormatError(0, str(exc)) from None


def load(path) -> OpticalGrid:
    with open(path, encoding="utf-8") as f:
        return loads(f.read())


# --- gate library -----------------------------------------------------------

GATES = ("AND", "OR", "CROS", "CNOT", "INVS", "COPY", "BLAK")


def gate_grid(name: str) -> OpticalGrid:
    return _library_grid(name.upper())


@functools.lru_cache(maxsize=None)
def _library_grid(key: str) -> OpticalGrid:
    if key not in GATES:
        raise OpticsError(f"unknown gate {key!r}; expected one of {', '.join(GATES)}")
    text = resources.files("structlogic.fixtures").joinpath(f"grids/{key.lower()}.grid").read_text("utf-8")
    return loads(text)


# Semantic contract of each library gate: assignment -> {output name: bit}.
# BLAK has no ports; its contract (absorb everything) is checked by tracing.
CONTRACTS: dict[str, Callable[[dict], dict[str, int]]] = {
    "AND": lambda e: {"east1": e["a"] & e["b"]},
    "OR": lambda e: {"east1": e["a"] | e["b"]},
    "CROS": lambda e: {"east1": e["x"], "south1": e["y"]},
    "CNOT": lambda e: {"east1": 1 - e["x"], "south1": 1 - e["y"]},
    "INVS": lambda e: {"south1": e["x"], "east1": e["y"]},
    "COPY": lambda e: {"east1": e["x"], "south1": e["x"]},
    "BLAK": lambda e: {},
}


def verify_library(name: str) -> VerifyReport:
    key = name.upper()
    return verify_gate(gate_grid(key), CONTRACTS[key])

"""Reachability simulation over instantiated netlists.

Two traversal modes share one graph. *Structural* traversal respects one-way
wires; *electrical* traversal treats every wire as two-way, the way current
flowing toward low potential would. Sneak paths are the difference.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Iterable, Mapping, Optional, Sequence

from .dualrail import CapacityExceeded, MAX_TABLE_VARS, assignments

if TYPE_CHECKING:
    from .netlist import Netlist


class VertexNotFound(KeyError):
    def __str__(self) -> str:
        return f"unknown vertex {self.args[0]!r}"


class SimulationError(RuntimeError):
    pass


class BothRailsReachable(SimulationError):
    """Ground reaches alpha and beta: a short."""


class NeitherRailReachable(SimulationError):
    """Ground reaches no rail: an open circuit."""


class ConnectivityGraph:
    """Immutable graph; edges are ``(u, v, directed)`` triples."""

    def __init__(self, vertices: Iterable[str], edges: Iterable[tuple[str, str, bool]]):
        self.vertices = frozenset(vertices)
        self.edges = tuple((u, v, bool(d)) for u, v, d in edges)
        structural: dict[str, set[str]] = {v: set() for v in self.vertices}
        electrical: dict[str, set[str]] = {v: set() for v in self.vertices}
        for u, v, directed in self.edges:
            if u not in self.vertices or v not in self.vertices:
                raise VertexNotFound(u if u not in self.vertices else v)
            structural[u].add(v)
            electrical[u].add(v)
            electrical[v].add(u)
            if not directed:
                structural[v].add(u)
        self._adj = {
            "structural": {k: tuple(sorted(s)) for k, s in structural.items()},
            "electrical": {k: tuple(sorted(s)) for k, s in electrical.items()},
        }

    def neighbors(self, v: str, mode: str = "structural") -> tuple[str, ...]:
        return self._adj[mode][v]

    def has_step(self, u: str, v: str, mode: str = "structural") -> bool:
        return v in self._adj[mode].get(u, ())

    def reachable(self, start: str, mode: str = "structural") -> set[str]:
        if start not in self.vertices:
            raise VertexNotFound(start)
        seen = {start}
        stack = [start]
        adj = self._adj[mode]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return seen

    def __repr__(self) -> str:
        return f"ConnectivityGraph({len(self.vertices)} vertices, {len(self.edges)} edges)"


@dataclass(frozen=True)
class PathReport:
    start: str
    goal: str
    reachable: bool
    path: tuple[str, ...] = ()

    def render(self) -> str:
        return " ".join(self.path) if self.reachable else "X"


def dfs_path(g: ConnectivityGraph, start: str, goal: str, mode: str = "structural") -> PathReport:
    """First path found by depth-first search, neighbours taken in ascending name order."""
    for v in (start, goal):
        if v not in g.vertices:
            raise VertexNotFound(v)
    path = [start]
    visited = {start}
    # iterative form of the recursive search; each frame holds the next neighbour index
    frames = [0]
    while path:
        if path[-1] == goal:
            return PathReport(start, goal, True, tuple(path))
        nbrs = g.neighbors(path[-1], mode)
        i = frames[-1]
        while i < len(nbrs) and nbrs[i] in visited:
            i += 1
        if i == len(nbrs):
            path.pop()
            frames.pop()
            continue
        frames[-1] = i + 1
        visited.add(nbrs[i])
        path.append(nbrs[i])
        frames.append(0)
    return PathReport(start, goal, False)


def is_valid_path(g: ConnectivityGraph, path: Sequence[str], mode: str = "structural") -> bool:
    if not path or len(set(path)) != len(path):
        return False
    if any(v not in g.vertices for v in path):
        return False
    return all(g.has_step(u, v, mode) for u, v in zip(path, path[1:]))


# --- netlist simulation -----------------------------------------------------


def read_output(g: ConnectivityGraph, alpha: str, ground: str, beta: str) -> int:
    seen = g.reachable(ground)
    hit_alpha, hit_beta = alpha in seen, beta in seen
    if hit_alpha and hit_beta:
        raise BothRailsReachable(f"{ground} reaches both {alpha} and {beta}")
    if not (hit_alpha or hit_beta):
        raise NeitherRailReachable(f"{ground} reaches neither {alpha} nor {beta}")
    return 1 if hit_alpha else 0


def simulate(n: "Netlist", env: Mapping[str, int]) -> int:
    out = n.output
    return read_output(n.instantiate(env), out.alpha, out.ground, out.beta)


@dataclass(frozen=True)
class TableRow:
    probe: tuple[str, str]
    env: tuple[tuple[str, int], ...]
    report: PathReport


def _check_width(names: Sequence[str]) -> None:
    if len(names) > MAX_TABLE_VARS:
        raise CapacityExceeded(f"{len(names)} variables exceeds the limit of {MAX_TABLE_VARS}")


def reachability_table(n: "Netlist", probes: Sequence[tuple[str, str]]) -> list[TableRow]:
    names = n.variables
    _check_width(names)
    for s, t in probes:
        for v in (s, t):
            if v not in n.pins:
                raise VertexNotFound(v)
    envs = list(assignments(names))
    graphs = [n.instantiate(env) for env in envs]
    rows = []
    for probe in probes:
        for env, g in zip(envs, graphs):
            rows.append(TableRow(tuple(probe), tuple(env.items()), dfs_path(g, *probe)))
    return rows


def format_table(rows: Sequence[TableRow], names: Sequence[str]) -> str:
    """Pipe-separated ``probe | A | B | result`` lines, one per row."""
    lines = [" | ".join(["probe", *names, "result"])]
    for row in rows:
        env = dict(row.env)
        probe = f"{row.probe[0]}->{row.probe[1]}"
        lines.append(" | ".join([probe, *(str(env[v]) for v in names), row.report.render()]))
    return "\n".join(lines) + "\n"


# --- sneak paths ------------------------------------------------------------


@dataclass(frozen=True)
class Junction:
    """A one-way wire ``source -> target`` that current can cross backwards.

    ``witness`` is an electrical path from ``target`` back to ``source``; no
    structural path between them exists.
    """

    source: str
    target: str
    witness: tuple[str, ...]
    env: Optional[tuple[tuple[str, int], ...]] = None


@dataclass(frozen=True)
class SneakReport:
    junctions: tuple[Junction, ...] = field(default_factory=tuple)

    @property
    def pairs(self) -> set[tuple[str, str]]:
        return {(j.source, j.target) for j in self.junctions}


def detect_sneak(g: ConnectivityGraph) -> SneakReport:
    found = []
    seen = set()
    for u, v, directed in g.edges:
        if not directed or (u, v) in seen:
            continue
        seen.add((u, v))
        if u in g.reachable(v, "structural"):
            continue
        witness = dfs_path(g, v, u, "electrical")
        if witness.reachable:
            found.append(Junction(u, v, witness.path))
    found.sort(key=lambda j: (j.source, j.target))
    return SneakReport(tuple(found))


def detect_sneak_netlist(n: "Netlist") -> SneakReport:
    """Union of :func:`detect_sneak` over every input assignment.

    Each junction keeps the witness from the first assignment (binary counting
    order) that exhibits it.
    """
    names = n.variables
    _check_width(names)
    found: dict[tuple[str, str], Junction] = {}
    for env in assignments(names):
        for j in detect_sneak(n.instantiate(env)).junctions:
            key = (j.source, j.target)
            if key not in found:
                found[key] = Junction(j.source, j.target, j.witness, tuple(env.items()))
    return SneakReport(tuple(found[k] for k in sorted(found)))

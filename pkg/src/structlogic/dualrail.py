"""Dual-rail (inverse signal pair) values and the plain boolean oracle.

A bit ``b`` travels as the ordered pair ``(b, not b)``. NOT becomes a swap of the
two rails, AND/OR act rail-wise, and nothing here ever needs a negation
operator to invert a signal.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Mapping, Union

MAX_TABLE_VARS = 20


class InvalidPair(ValueError):
    """A pair whose rails are equal, (0, 0) or (1, 1)."""


class UnboundVariable(KeyError):
    def __init__(self, name: str):
        super().__init__(name)
        self.name = name

    def __str__(self) -> str:
        return f"unbound variable {self.name!r}"


class CapacityExceeded(ValueError):
    pass


def check_bit(value) -> int:
    if value not in (0, 1) or isinstance(value, float):
        raise ValueError(f"not a bit: {value!r}")
    return int(value)


@dataclass(frozen=True)
class DualRail:
    alpha: int
    beta: int

    def __post_init__(self):
        check_bit(self.alpha)
        check_bit(self.beta)
        if self.alpha == self.beta:
            raise InvalidPair(f"rails must differ, got ({self.alpha},{self.beta})")

    def __iter__(self):
        yield self.alpha
        yield self.beta

    def __str__(self) -> str:
        return f"({self.alpha},{self.beta})"


ONE = DualRail(1, 0)
ZERO = DualRail(0, 1)


def encode(b: int) -> DualRail:
    return ONE if check_bit(b) else ZERO


def decode(d) -> int:
    """Return the true rail. Accepts a DualRail or a raw ``(alpha, beta)`` tuple."""
    if not isinstance(d, DualRail):
        d = DualRail(*d)
    return d.alpha


def dr_not(a: DualRail) -> DualRail:
    # the twist: rails trade places, no bit is computed
    return DualRail(a.beta, a.alpha)


def dr_and(a: DualRail, b: DualRail) -> DualRail:
    return DualRail(a.alpha & b.alpha, a.beta | b.beta)


def dr_or(a: DualRail, b: DualRail) -> DualRail:
    return DualRail(a.alpha | b.alpha, a.beta & b.beta)


# --- expression trees -------------------------------------------------------


@dataclass(frozen=True)
class Var:
    name: str

    def __post_init__(self):
        if not self.name:
            raise ValueError("variable name must be non-empty")


@dataclass(frozen=True)
class Const:
    value: int

    def __post_init__(self):
        check_bit(self.value)


@dataclass(frozen=True)
class Not:
    child: "BoolExpr"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "BoolExpr"
    right: "BoolExpr"

    OPS = ("AND", "OR", "NAND", "XOR", "XNOR")

    def __post_init__(self):
        if self.op not in self.OPS:
            raise ValueError(f"unknown operator {self.op!r}")


BoolExpr = Union[Var, Const, Not, BinOp]


def And(a: BoolExpr, b: BoolExpr) -> BinOp:
    return BinOp("AND", a, b)


def Or(a: BoolExpr, b: BoolExpr) -> BinOp:
    return BinOp("OR", a, b)


def Nand(a: BoolExpr, b: BoolExpr) -> BinOp:
    return BinOp("NAND", a, b)


def Xor(a: BoolExpr, b: BoolExpr) -> BinOp:
    return BinOp("XOR", a, b)


def Xnor(a: BoolExpr, b: BoolExpr) -> BinOp:
    return BinOp("XNOR", a, b)


_BINARY = {
    "AND": lambda x, y: x & y,
    "OR": lambda x, y: x | y,
    "NAND": lambda x, y: 1 - (x & y),
    "XOR": lambda x, y: x ^ y,
    "XNOR": lambda x, y: 1 - (x ^ y),
}


def variables(e: BoolExpr) -> list[str]:
    """Distinct variable names of ``e``, sorted."""
    found: set[str] = set()
    stack = [e]
    while stack:
        node = stack.pop()
        if isinstance(node, Var):
            found.add(node.name)
        elif isinstance(node, Not):
            stack.append(node.child)
        elif isinstance(node, BinOp):
            stack.extend((node.left, node.right))
    return sorted(found)


def eval_bool(e: BoolExpr, env: Mapping[str, int]) -> int:
    if isinstance(e, Var):
        if e.name not in env:
            raise UnboundVariable(e.name)
        return check_bit(env[e.name])
    if isinstance(e, Const):
        return e.value
    if isinstance(e, Not):
        return 1 - eval_bool(e.child, env)
    if isinstance(e, BinOp):
        return _BINARY[e.op](eval_bool(e.left, env), eval_bool(e.right, env))
    raise TypeError(f"not an expression: {e!r}")


def assignments(names: list[str]):
    """All assignments over ``names`` in binary counting order (first name is the MSB)."""
    for bits in product((0, 1), repeat=len(names)):
        yield dict(zip(names, bits))


def truth_table(e: BoolExpr) -> list[tuple[dict[str, int], int]]:
    names = variables(e)
    if len(names) > MAX_TABLE_VARS:
        raise CapacityExceeded(f"{len(names)} variables exceeds the limit of {MAX_TABLE_VARS}")
    return [(env, eval_bool(e, env)) for env in assignments(names)]

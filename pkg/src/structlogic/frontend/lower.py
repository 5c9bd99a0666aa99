from __future__ import annotations

from ..dualrail import BinOp, BoolExpr, Not

PRIMITIVE_OPS = ("AND", "OR")


def lower(e: BoolExpr) -> BoolExpr:
    """Rewrite NAND/XOR/XNOR into NOT/AND/OR.

    XOR(x, y) becomes ``(x NAND y) AND (x OR y)``, the composition the XOR
    reference circuit is wired from.
    """
    if isinstance(e, Not):
        return Not(lower(e.child))
    if not isinstance(e, BinOp):
        return e
    left, right = lower(e.left), lower(e.right)
    if e.op in PRIMITIVE_OPS:
        return BinOp(e.op, left, right)
    if e.op == "NAND":
        return Not(BinOp("AND", left, right))
    xor = BinOp("AND", Not(BinOp("AND", left, right)), BinOp("OR", left, right))
    if e.op == "XOR":
        return xor
    return Not(xor)


def is_lowered(e: BoolExpr) -> bool:
    if isinstance(e, Not):
        return is_lowered(e.child)
    if isinstance(e, BinOp):
        return e.op in PRIMITIVE_OPS and is_lowered(e.left) and is_lowered(e.right)
    return True

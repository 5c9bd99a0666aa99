"""Random expression trees shared by the property and acceptance tests."""

import random

from hypothesis import strategies as st

from structlogic.dualrail import BinOp, Const, Not, Var

NAMES = list("ABCDEFGH")


def random_expr(rng: random.Random, depth: int, names=NAMES, ops=("AND", "OR"), consts=True):
    if depth == 0 or rng.random() < 0.25:
        if consts and rng.random() < 0.05:
            return Const(rng.randint(0, 1))
        return Var(rng.choice(names))
    if rng.random() < 0.2:
        return Not(random_expr(rng, depth - 1, names, ops, consts))
    op = rng.choice(ops)
    return BinOp(op, random_expr(rng, depth - 1, names, ops, consts), random_expr(rng, depth - 1, names, ops, consts))


def exprs(names=NAMES[:4], ops=BinOp.OPS, max_leaves=12):
    leaf = st.one_of(st.sampled_from(names).map(Var), st.sampled_from((0, 1)).map(Const))
    return st.recursive(
        leaf,
        lambda kids: st.one_of(
            kids.map(Not),
            st.builds(BinOp, st.sampled_from(ops), kids, kids),
        ),
        max_leaves=max_leaves,
    )

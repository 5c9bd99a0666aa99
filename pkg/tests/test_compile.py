import random

import pytest
from hypothesis import given, settings

from structlogic.dualrail import CapacityExceeded, assignments, eval_bool
from structlogic.frontend import CompileError, compile_grid, compile_netlist, constant_tile, lower, parse
from structlogic.graphsim import simulate
from structlogic.optics import (
    Cell,
    Channel,
    OpticalGrid,
    OpticalPort,
    blank,
    compose_blocks,
    evaluate,
    gate_grid,
    trace,
    verify_gate,
)

from exprgen import exprs, random_expr


def grid_agrees(e):
    g = compile_grid(lower(e))
    (out,) = g.outputs
    report = verify_gate(g, lambda env: {out.name: eval_bool(e, env)})
    return report


# --- netlist compiler -------------------------------------------------------


def test_netlist_names():
    n = compile_netlist(lower(parse("(A AND B) OR NOT A")))
    assert n.output.pins == ("OUT.1", "OUT.2", "OUT.3")
    assert {p.var for p in n.inputs} == {"A", "B"}
    assert "A@1.2" in n.pins


def test_netlist_rejects_unlowered():
    with pytest.raises(CompileError):
        compile_netlist(parse("A XOR B"))


@pytest.mark.parametrize("src", ["A", "NOT A", "NOT NOT A", "A AND A", "A OR NOT A", "0", "1 AND B"])
def test_netlist_edge_cases(src):
    e = parse(src)
    n = compile_netlist(lower(e))
    for env in assignments(n.variables):
        assert simulate(n, env) == eval_bool(e, env)


def test_netlist_random_sweep():
    rng = random.Random(3)
    for _ in range(60):
        e = random_expr(rng, 5)
        n = compile_netlist(lower(e))
        for env in assignments(n.variables):
            assert simulate(n, env) == eval_bool(e, env)


# --- grid compiler ----------------------------------------------------------


@pytest.mark.parametrize("op", ["AND", "OR"])
def test_single_gate_is_the_library_grid(op):
    g = compile_grid(parse(f"P {op} Q"))
    assert g.cells == gate_grid(op).cells
    assert [p.var for p in g.inputs] == ["P", "Q"]


def test_not_costs_no_cells():
    plain = compile_grid(parse("A AND (B OR C)"))
    negated = compile_grid(parse("NOT (A AND (B OR C))"))
    assert plain.cells == negated.cells
    assert negated.output().twisted != plain.output().twisted


def test_grid_shape_one_lane_per_leaf():
    g = compile_grid(lower(parse("A XOR B")))
    # four leaves, three binary gates plus the source column
    assert (g.rows, g.cols) == (12, 12)
    # lane 0 is consumed by the first gate, so its later tiles are black
    assert all(cell is Cell.BLACK for row in g.cells[0:3] for cell in row[6:])


def test_grid_xor():
    assert grid_agrees(parse("A XOR B")).passed == 4


@pytest.mark.parametrize("src", ["A", "NOT A", "A AND A", "NOT A OR B", "A AND NOT B", "1", "0 OR A", "NOT (A OR B) AND C"])
def test_grid_edge_cases(src):
    report = grid_agrees(parse(src))
    assert report.ok and not report.diagnoses()


@settings(max_examples=40, deadline=None)
@given(exprs(names=list("ABC"), max_leaves=6))
def test_grid_matches_oracle(e):
    report = grid_agrees(e)
    assert report.ok and not report.diagnoses()


def test_grid_capacity():
    e = parse(" AND ".join(f"v{i}" for i in range(9)))
    with pytest.raises(CapacityExceeded):
        compile_grid(e)


@pytest.mark.parametrize("value", [0, 1])
def test_constant_tile(value):
    t = constant_tile(value)
    rail = 0 if value else 2
    assert trace(t, Channel("east", 1)).exits == {Channel("east", rail)}
    assert evaluate(t, {}) == {"east1": value}


def test_copy_fanout_crosstalk():
    """Why repeated leaves get their own input ports: fanning A and B out with
    COPY tiles lets light read backwards from one branch leak forward down the
    other, lighting both output rails."""
    k, i = blank(3, 3), gate_grid("INVS")
    copy, cros, cnot = gate_grid("COPY"), gate_grid("CROS"), gate_grid("CNOT")
    blocks = [
        [i, copy, i, cros, k, k],
        [i, i, copy, gate_grid("AND"), i, cnot],
        [k, cros, i, i, cros, i],
        [k, k, cros, i, gate_grid("OR"), gate_grid("AND")],
    ]
    g = compose_blocks(blocks)
    ports = [
        OpticalPort("input", "west", 0, 1, 2, "A"),
        OpticalPort("input", "west", 3, 4, 5, "B"),
        OpticalPort("output", "east", 9, 10, 11),
    ]
    g = OpticalGrid(g.cells, ports)
    report = verify_gate(g, lambda env: {"east10": env["A"] ^ env["B"]})
    assert report.passed == 2
    assert report.diagnoses() == {"ambiguous"}
    assert grid_agrees(parse("A XOR B")).ok

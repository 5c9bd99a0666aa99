import pytest
from hypothesis import given, settings

from structlogic.dualrail import assignments, eval_bool
from structlogic.frontend import compile_netlist, lower, parse
from structlogic.graphsim import (
    BothRailsReachable,
    ConnectivityGraph,
    NeitherRailReachable,
    VertexNotFound,
    detect_sneak,
    detect_sneak_netlist,
    dfs_path,
    format_table,
    is_valid_path,
    read_output,
    reachability_table,
    simulate,
)
from structlogic.netlist import xor_fixture

from exprgen import exprs

# vertex sequences published with the reference XOR circuit, keyed by (probe, A, B)
PUBLISHED = {
    ("K1", 0, 1): "K2 J2 H2 E2 E3 F2 F1 H1 J1 I2 G2 D2 D1 C2 C3 G3 I1 K1",
    ("K1", 1, 0): "K2 J2 H2 E2 E1 H1 J1 I2 G2 D2 D3 G3 I1 K1",
    ("K3", 0, 0): "K2 J2 H2 E2 E3 F2 F3 H3 J3 K3",
    ("K3", 1, 1): "K2 J2 H2 E2 E1 H1 J1 I2 G2 D2 D1 C2 C1 G1 I3 K3",
}


@pytest.fixture(scope="module")
def xor():
    return xor_fixture()


def test_single_edge_examples():
    g = ConnectivityGraph(["u", "v"], [("u", "v", False)])
    assert dfs_path(g, "u", "v").path == ("u", "v")
    d = ConnectivityGraph(["u", "v"], [("u", "v", True)])
    assert not dfs_path(d, "v", "u").reachable
    assert dfs_path(d, "v", "u", "electrical").path == ("v", "u")


def test_lexicographic_neighbour_order():
    g = ConnectivityGraph("sabcz", [("s", "b", False), ("s", "a", False), ("a", "z", False), ("b", "z", False)])
    assert dfs_path(g, "s", "z").path == ("s", "a", "z")


def test_unknown_vertex():
    g = ConnectivityGraph(["u"], [])
    with pytest.raises(VertexNotFound):
        dfs_path(g, "u", "nope")
    with pytest.raises(VertexNotFound):
        ConnectivityGraph(["u"], [("u", "w", False)])


def test_unreachable_renders_x():
    g = ConnectivityGraph(["u", "v"], [])
    assert dfs_path(g, "u", "v").render() == "X"


def test_read_output_errors():
    short = ConnectivityGraph(["a", "g", "b"], [("g", "a", False), ("g", "b", False)])
    with pytest.raises(BothRailsReachable):
        read_output(short, "a", "g", "b")
    open_ = ConnectivityGraph(["a", "g", "b"], [])
    with pytest.raises(NeitherRailReachable):
        read_output(open_, "a", "g", "b")


def test_fixture_table_matches_published(xor):
    rows = reachability_table(xor, [("K2", "K1"), ("K2", "K3")])
    assert len(rows) == 8
    for row in rows:
        env = dict(row.env)
        x = env["A"] ^ env["B"]
        goal = row.probe[1]
        assert row.report.reachable == (x == 1 if goal == "K1" else x == 0)
        key = (goal, env["A"], env["B"])
        if key in PUBLISHED:
            assert row.report.render() == PUBLISHED[key]


def test_published_paths_are_valid(xor):
    for (goal, a, b), path in PUBLISHED.items():
        assert is_valid_path(xor.instantiate({"A": a, "B": b}), path.split())


def test_format_table_shape(xor):
    text = format_table(reachability_table(xor, [("K2", "K1")]), xor.variables)
    lines = text.splitlines()
    assert lines[0] == "probe | A | B | result"
    assert lines[1] == "K2->K1 | 0 | 0 | X"


def test_empty_probe_list(xor):
    assert reachability_table(xor, []) == []


def test_fixture_simulates_xor(xor):
    assert [simulate(xor, env) for env in assignments(["A", "B"])] == [0, 1, 1, 0]


def test_sneak_examples():
    assert detect_sneak(ConnectivityGraph("uv", [("u", "v", False)])).junctions == ()
    report = detect_sneak(ConnectivityGraph("uv", [("u", "v", True)]))
    (j,) = report.junctions
    assert (j.source, j.target) == ("u", "v")
    assert j.witness == ("v", "u")


def test_no_sneak_when_structural_return_exists():
    g = ConnectivityGraph("uvw", [("u", "v", True), ("v", "w", False), ("w", "u", False)])
    assert detect_sneak(g).junctions == ()


def test_fixture_sneaks(xor):
    report = detect_sneak_netlist(xor)
    assert report.pairs == {("C3", "G3"), ("D3", "G3"), ("E1", "H1"), ("I3", "K3"), ("J3", "K3")}
    for j in report.junctions:
        g = xor.instantiate(dict(j.env))
        assert is_valid_path(g, j.witness, "electrical")
        assert not dfs_path(g, j.target, j.source).reachable


@settings(max_examples=60, deadline=None)
@given(exprs(max_leaves=10))
def test_paths_are_sound(e):
    n = compile_netlist(lower(e))
    out = n.output
    for env in assignments(n.variables):
        g = n.instantiate(env)
        for goal in (out.alpha, out.beta):
            report = dfs_path(g, out.ground, goal)
            assert report.reachable == (goal in g.reachable(out.ground))
            if report.reachable:
                assert is_valid_path(g, report.path)
                assert report.path[0] == out.ground and report.path[-1] == goal


@settings(max_examples=100, deadline=None)
@given(exprs(max_leaves=14))
def test_simulate_matches_oracle(e):
    n = compile_netlist(lower(e))
    for env in assignments(n.variables):
        assert simulate(n, env) == eval_bool(e, env)


@pytest.mark.parametrize("src", ["A AND B", "A OR B", "NOT A", "A", "1", "0 OR A"])
def test_simulate_small_cases(src):
    e = parse(src)
    n = compile_netlist(lower(e))
    for env in assignments(n.variables):
        assert simulate(n, env) == eval_bool(e, env)


def test_compiled_netlists_never_short():
    n = compile_netlist(lower(parse("(A XOR B) XNOR (C NAND A)")))
    out = n.output
    for env in assignments(n.variables):
        seen = n.instantiate(env).reachable(out.ground)
        assert (out.alpha in seen) != (out.beta in seen)

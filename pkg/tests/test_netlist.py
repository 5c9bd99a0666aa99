import pytest
from hypothesis import given, settings

from structlogic.dualrail import UnboundVariable, assignments, eval_bool
from structlogic.frontend import compile_netlist, lower
from structlogic.graphsim import simulate
from structlogic.netlist import (
    Netlist,
    NetlistError,
    NetlistFormatError,
    Port,
    Wire,
    and_gadget,
    dumps,
    input_port,
    loads,
    not_gadget,
    or_gadget,
    switch,
    xor_fixture,
)

from exprgen import exprs


def _with_input(var, body_wires, pins, out):
    port, sw = input_port(var)
    return Netlist(list(port.pins) + pins, sw + body_wires, [port, out])


def test_not_gadget_is_three_wires_with_crossed_rails():
    inp, out = Port.named("X", "output"), Port.named("Y", "output")
    wires = not_gadget(inp, out)
    assert wires == [Wire("X.1", "Y.3"), Wire("X.2", "Y.2"), Wire("X.3", "Y.1")]


@pytest.mark.parametrize("a", [0, 1])
def test_not_gadget_inverts(a):
    src = Port.named("A", "input", "A")
    out = Port.named("Y")
    _, sw = input_port("A")
    n = Netlist(list(src.pins) + list(out.pins), sw + not_gadget(src, out), [src, out])
    assert simulate(n, {"A": a}) == 1 - a


@pytest.mark.parametrize("gadget, fn", [(and_gadget, lambda a, b: a & b), (or_gadget, lambda a, b: a | b)])
def test_switch_gadgets_exhaustive(gadget, fn):
    n = gadget("A", "B", Port.named("Y"))
    assert n.variables == ["A", "B"]
    for env in assignments(["A", "B"]):
        assert simulate(n, env) == fn(env["A"], env["B"])


def test_and_gadget_alpha_in_series_beta_in_parallel():
    n = and_gadget("A", "B", Port.named("Y"))
    body = [w for w in n.wires if not w.a.startswith("in_")]
    to_alpha = [w for w in body if "Y.1" in (w.a, w.b)]
    to_beta = [w for w in body if "Y.3" in (w.a, w.b)]
    assert len(to_alpha) == 1 and len(to_beta) == 2
    assert {w.var for w in to_beta} == {"A", "B"} and {w.when for w in to_beta} == {0}


def test_switch_closed_follows_env():
    w = switch("p", "q", "A", 1)
    assert w.closed({"A": 1}) and not w.closed({"A": 0})
    with pytest.raises(UnboundVariable):
        w.closed({})


@pytest.mark.parametrize(
    "build",
    [
        lambda: Wire("p", "p"),
        lambda: Wire("p", "q", var="A"),
        lambda: Port("input", "a", "g", "b"),
        lambda: Port("output", "a", "a", "b"),
    ],
)
def test_component_validation(build):
    with pytest.raises(NetlistError):
        build()


def test_netlist_validation():
    out = Port.named("Y")
    with pytest.raises(NetlistError, match="not a declared pin"):
        Netlist(list(out.pins), [Wire("Y.1", "Z")], [out])
    with pytest.raises(NetlistError, match="exactly one output"):
        Netlist(list(out.pins), [], [])
    with pytest.raises(NetlistError, match="undeclared input"):
        Netlist(list(out.pins), [switch("Y.2", "Y.1", "A", 1)], [out])
    port = Port.named("A", "input", "A")
    with pytest.raises(NetlistError, match="controls no switch"):
        Netlist(list(out.pins) + list(port.pins), [], [out, port])


def test_instantiate_needs_total_env():
    with pytest.raises(UnboundVariable):
        xor_fixture().instantiate({"A": 1})


def test_fixture_shape():
    n = xor_fixture()
    assert len(n.pins) == 33
    assert len(n.wires) == 33
    assert n.variables == ["A", "B"]
    assert n.output.pins == ("K1", "K2", "K3")
    assert sum(w.oneway for w in n.wires) == 5


def test_text_round_trip_fixture():
    n = xor_fixture()
    assert loads(dumps(n)) == n


@settings(max_examples=40, deadline=None)
@given(exprs(max_leaves=8))
def test_text_round_trip_compiled(e):
    n = compile_netlist(lower(e))
    back = loads(dumps(n))
    assert back == n
    for env in assignments(n.variables):
        assert simulate(back, env) == eval_bool(e, env)


@pytest.mark.parametrize(
    "text, line",
    [
        ("pin a\npin a\n", 2),
        ("pin a\npin b\nwire a b sideways\n", 3),
        ("pin a\npin b\nswitch a b var=A when=2\n", 3),
        ("pin a\npin b\nwire a b\nwire a b\n", 4),
        ("pin a\nbogus line\n", 2),
        ("pin a\npin b\nswitch a b A 1\n", 3),
    ],
)
def test_format_errors_carry_line(text, line):
    with pytest.raises(NetlistFormatError) as info:
        loads(text)
    assert info.value.line == line


def test_format_comments_and_blank_lines():
    text = "# header\n\npin a  # alpha\npin g\npin b\nswitch g a var=A when=1\nswitch g b var=A when=0\nport input A a g b\npin o1\npin o2\npin o3\nwire g o2\nwire a o1\nwire b o3\nport output o1 o2 o3\n"
    n = loads(text)
    assert simulate(n, {"A": 1}) == 1 and simulate(n, {"A": 0}) == 0

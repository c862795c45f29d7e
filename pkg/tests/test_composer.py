from itertools import product

import pytest

from foldlogic.automaton import Boundary, Row, evolve, evolve_xor, rule110
from foldlogic.composer import (
    RULE110_SIGNALS,
    GeometricEvaluator,
    Instance,
    Netlist,
    NetlistError,
    Overlap,
    PortMismatch,
    SimMode,
    UnforcedSignal,
    build_rule110_cell,
    build_sierpinski_cell,
    compose,
    rule110_netlist,
    sierpinski_netlist,
    simulate_rule110,
    simulate_sierpinski,
)
from foldlogic.exact import sign
from foldlogic.pattern import point_in_convex, validate_pattern


@pytest.fixture(scope="module")
def r110():
    return build_rule110_cell()


@pytest.fixture(scope="module")
def sierpinski():
    return build_sierpinski_cell()


def test_rule110_netlist_truth_table():
    n = rule110_netlist()
    for a, b, c in product((0, 1), repeat=3):
        out = n.evaluate({"A": a, "B": b, "C": c})
        assert out["OUT"] == bool(rule110(a, b, c))
        # the intermediate signals follow the gate formulas
        assert out[RULE110_SIGNALS["X"]] == (bool(a) or not b)
        assert out[RULE110_SIGNALS["P"]] == out[RULE110_SIGNALS["X"]]
        assert out[RULE110_SIGNALS["Q"]] == (not ((not b and c) or (b and not c)))


def test_rule110_cell_is_a_valid_pattern(r110):
    assert validate_pattern(r110.pattern) == []
    assert {k: v[0] for k, v in r110.function.items()} == {k: bool(rule110(*k)) for k in product((0, 1), repeat=3)}


def test_cell_ports_reach_the_sheet_edge(r110):
    for label, port in r110.ports.items():
        w = next(w for w in r110.wires if w.name == label)
        far = [q for _, q, _ in w.segments] + [p for p, _, _ in w.segments]
        assert any(not point_in_convex(x, r110.sheet, strict=True) for x in far), label
    assert {"A", "B", "C", "OUT"} <= set(r110.ports)


def test_cell_gadgets_do_not_overlap(r110):
    # no gadget outline sits entirely inside another
    polys = {n: g.boundary for n, g in r110.gadgets.items()}
    for a, pa in polys.items():
        for b, pb in polys.items():
            if a < b:
                assert not all(point_in_convex(p, pb, strict=True) for p in pa)


def test_sierpinski_cell_computes_equality(sierpinski):
    assert validate_pattern(sierpinski.pattern) == []
    assert {k: v[0] for k, v in sierpinski.function.items()} == {k: k[0] == k[1] for k in product((0, 1), repeat=2)}


def wire_pair(**kw):
    return Netlist(
        [Instance("W1", "wire", (0, 0)), Instance("W2", "wire", (0, 4), **kw)],
        [("W1.out", "W2.in")],
        inputs={"IN": "W1.in"},
        outputs={"OUT": "W2.out"},
        pitch=4,
    )


def test_two_wires_end_to_end():
    cell = compose(wire_pair(), margin=0)
    assert validate_pattern(cell.pattern) == []
    assert cell.function == {(False,): (False,), (True,): (True,)}


def test_misaligned_ports_are_rejected():
    with pytest.raises(PortMismatch):
        compose(wire_pair(rotation=60))


def test_overlapping_gadgets_are_rejected():
    n = Netlist([Instance("G", "nor", (0, 0)), Instance("H", "nand", (0, 0))], [],
                inputs={"A": "G.A", "B": "G.B", "C": "H.A", "D": "H.B"})
    with pytest.raises(Overlap):
        compose(n)


def test_netlist_validation():
    with pytest.raises(NetlistError):
        Netlist([Instance("G", "nor")], [])  # undriven inputs
    loop = Netlist([Instance("G", "not"), Instance("H", "not")], [("G.out", "H.in"), ("H.out", "G.in")])
    with pytest.raises(NetlistError):
        loop.order()
    with pytest.raises(NetlistError):
        Netlist([Instance("G", "not"), Instance("G", "not")], [], inputs={"A": "G.in"})
    with pytest.raises(PortMismatch):
        Netlist([Instance("G", "not"), Instance("H", "not")], [("G.in", "H.in")], inputs={"A": "G.in"})
    with pytest.raises(NetlistError):
        Netlist([Instance("G", "not")], [("G.out", "H.in")], inputs={"A": "G.in"})
    assert Netlist([Instance("G", "not"), Instance("H", "not")], [("G.out", "H.in")], inputs={"A": "G.in"}).order() == ["G", "H"]


def test_gate_into_twist():
    n = Netlist(
        [Instance("G", "nor", (0, 0)), Instance("T", "tritwist", (0, 4))],
        [("G.out", "T.w90")],
        inputs={"A": "G.A", "B": "G.B"},
        outputs={"X": "T.w210", "Y": "T.w330"},
    )
    cell = compose(n)
    for (a, b), outs in cell.function.items():
        assert outs == (a or b, a or b)


def test_unforced_signal_is_raised():
    n = wire_pair()
    with pytest.raises(UnforcedSignal):
        n.evaluate({"IN": True}, fn=lambda name, g, ins: None)


def test_modes_agree_on_rule110():
    start = Row.parse("00010011")
    direct = simulate_rule110(start, 4, SimMode.DIRECT)
    assert direct == evolve(start, 4, grow=False)
    assert simulate_rule110(start, 4, SimMode.NETLIST) == direct
    cyclic = Row.parse("10010011", Boundary.CYCLIC)
    assert simulate_rule110(cyclic, 3, "netlist") == evolve(cyclic, 3)


def test_geometric_evaluator_caches_per_shape():
    n = rule110_netlist()
    ev = GeometricEvaluator(n)
    for a, b, c in product((0, 1), repeat=3):
        assert n.evaluate({"A": a, "B": b, "C": c}, ev)["OUT"] == bool(rule110(a, b, c))
    kinds = {(i.kind, i.rotation % 360, i.inputs) for i in n.instances}
    assert ev.solves == len(ev.cache) and len(kinds) <= ev.solves


def test_sierpinski_rows_are_xor_under_inversion():
    start = Row((1,))
    assert simulate_sierpinski(start, 7, "netlist") == evolve_xor(start, 7)
    assert simulate_sierpinski(start, 7, "direct") == evolve_xor(start, 7)
    n = sierpinski_netlist()
    # the all-TRUE background is quiescent on raw wire values
    assert n.evaluate({"A": True, "B": True})["OUT"] is True

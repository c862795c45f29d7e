from itertools import product

import pytest

from foldlogic.gadgets import make_gadget
from foldlogic.local import wire_single_valley
from foldlogic.pattern import Selection
from foldlogic.sat import BudgetExceeded
from foldlogic.solver import Verdict, globally_flat_foldable, locally_flat_foldable
from foldlogic.verifier import (
    Level,
    RowVerdict,
    enumerate_foldable_selections,
    enumerate_local_selections,
    forced_outputs,
    verify_truth_table,
    wire_value,
)


@pytest.mark.parametrize("name", ["wire", "nor", "nand", "or", "and", "not", "hextwist", "tritwist", "eater"])
def test_local_level_already_forces_these(name):
    rep = verify_truth_table(make_gadget(name), Level.LOCAL)
    assert rep.passed, rep.to_json()


def test_intersector_local_level_is_not_enough():
    g = make_gadget("intersector60")
    local = forced_outputs(g, (False, True), Level.LOCAL)
    assert local.verdict is RowVerdict.CONTRADICTORY
    assert set(local.outcomes) == {(False, False), (False, True)}
    glob = forced_outputs(g, (False, True), Level.GLOBAL)
    assert glob.verdict is RowVerdict.FORCED and glob.value == (False, True)


def test_spurious_configuration_fails_only_the_layer_check():
    g = make_gadget("intersector60")
    loc = enumerate_foldable_selections(g, (False, True), Level.LOCAL)
    spurious = [s for s in loc if wire_value(s, g.wires["bottom"]) is False]
    assert spurious
    for s in spurious:
        assert locally_flat_foldable(g.pattern, s) == ""
        assert globally_flat_foldable(g.pattern, s).verdict is Verdict.NO


def brute_selections(g, accept):
    cp = g.pattern
    opt = cp.optional_edges()
    out = []
    for bits in product((False, True), repeat=len(opt)):
        sel = Selection(cp, [e for e, b in zip(opt, bits) if b])
        if locally_flat_foldable(cp, sel) == "" and accept(sel):
            out.append(sorted(sel.active))
    return sorted(out)


def test_tritwist_search_is_exhaustive():
    g = make_gadget("tritwist")
    found = sorted(sorted(s.active) for s in enumerate_foldable_selections(g, None, Level.GLOBAL, wire_filter=False))
    brute = brute_selections(g, lambda s: globally_flat_foldable(g.pattern, s).verdict is Verdict.YES)
    assert found == brute and len(found) == 2


@pytest.mark.parametrize("bits", [(False, False, False), (True, False, True)])
def test_local_search_matches_brute_force_on_eater(bits):
    g = make_gadget("eater")
    fixed = {}
    for p, v in zip(g.inputs, bits):
        fixed[g.wires[p.name].left[0]] = v
        fixed[g.wires[p.name].right[0]] = not v
    found = sorted(sorted(s.active) for s in enumerate_local_selections(g.pattern, fixed))
    cp = g.pattern
    opt = [e for e in cp.optional_edges() if e not in fixed]
    brute = []
    for choice in product((False, True), repeat=len(opt)):
        active = [e for e, b in zip(opt, choice) if b] + [e for e, v in fixed.items() if v]
        sel = Selection(cp, active)
        if locally_flat_foldable(cp, sel) == "":
            brute.append(sorted(sel.active))
    assert found == sorted(brute)


def test_global_selections_have_one_valley_per_wire():
    g = make_gadget("nand")
    for bits in product((False, True), repeat=2):
        for s in enumerate_foldable_selections(g, bits, Level.GLOBAL):
            assert all(wire_single_valley(s, w) for w in g.wires.values())


def test_budget_exhaustion_reports_unknown():
    g = make_gadget("nor")
    with pytest.raises(BudgetExceeded):
        enumerate_local_selections(g.pattern, budget=5)
    assert forced_outputs(g, (False, False), budget=5).verdict is RowVerdict.UNKNOWN


def test_report_json_shape():
    rep = verify_truth_table(make_gadget("not"), "local")
    j = rep.to_json()
    assert j["passed"] and j["level"] == "local"
    assert [r["inputs"] for r in j["rows"]] == [[0], [1]]
    assert all(r["foldings"] == 1 for r in j["rows"])


def test_wrong_input_count():
    with pytest.raises(ValueError):
        forced_outputs(make_gadget("nor"), (True,))

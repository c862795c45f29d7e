"""Search over optional-crease selections to machine-check gadget behaviour."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from itertools import product
from typing import Mapping, Sequence

from .gadgets import Gadget
from .local import WireCreases, star_at, vertex_locally_foldable, wire_single_valley
from .pattern import CreasePattern, Selection
from .sat import BudgetExceeded
from .solver import DEFAULT_BUDGET, Verdict, globally_flat_foldable

SEARCH_BUDGET = 10**6


class Level(enum.Enum):
    LOCAL = "local"
    GLOBAL = "global"

    @classmethod
    def parse(cls, value) -> Level:
        if isinstance(value, Level):
            return value
        return cls(str(value).lower())


class _Partial:
    """Selection-like view of a partial assignment (unassigned optionals count as inactive)."""

    def __init__(self, cp: CreasePattern, state: list) -> None:
        self.cp = cp
        self.state = state

    def is_active(self, e: int) -> bool:
        label = self.cp.edges[e].label
        return label.mandatory or (label.optional and self.state[e] is True)


def _search_order(cp: CreasePattern, free: list[int], wires: Sequence[WireCreases]):
    """Order free optional edges so vertices are completed (and checked) early."""
    inc = cp.incident()
    bverts = cp.boundary_vertices
    free_set = set(free)
    need = {v: sum(1 for e in inc[v] if e in free_set) for v in range(len(cp.vertices)) if v not in bverts}
    remaining = set(free)
    order: list[int] = []
    left = dict(need)
    while remaining:
        # vertex closest to completion first; ties by index for determinism
        cands = [(n, v) for v, n in left.items() if n > 0]
        if not cands:
            order.extend(sorted(remaining))
            break
        _, v = min(cands)
        for e in sorted(inc[v]):
            if e in remaining:
                remaining.discard(e)
                order.append(e)
                for x in (cp.edges[e].u, cp.edges[e].v):
                    if x in left:
                        left[x] -= 1
    position = {e: i for i, e in enumerate(order)}
    vertex_checks: list[list[int]] = [[] for _ in order]
    initial_vertices = []
    for v, n in need.items():
        if n == 0:
            initial_vertices.append(v)
        else:
            last = max(position[e] for e in inc[v] if e in free_set)
            vertex_checks[last].append(v)
    wire_checks: list[list[WireCreases]] = [[] for _ in order]
    initial_wires = []
    for w in wires:
        edges = [e for e in w.left + w.right if e in position]
        if not edges:
            initial_wires.append(w)
        else:
            wire_checks[max(position[e] for e in edges)].append(w)
    return order, vertex_checks, wire_checks, initial_vertices, initial_wires, inc


def enumerate_local_selections(
    cp: CreasePattern,
    fixed: Mapping[int, bool] | None = None,
    wires: Sequence[WireCreases] = (),
    budget: int = SEARCH_BUDGET,
    stats: dict | None = None,
) -> list[Selection]:
    """All selections extending ``fixed`` that pass every per-vertex check and single-valley wires."""
    fixed = dict(fixed or {})
    opt = cp.optional_edges()
    for e in fixed:
        if e not in opt:
            raise ValueError(f"edge {e} is not optional")
    free = [e for e in opt if e not in fixed]
    order, vchecks, wchecks, v0, w0, inc = _search_order(cp, free, wires)
    state: list = [None] * len(cp.edges)
    for e, val in fixed.items():
        state[e] = bool(val)
    view = _Partial(cp, state)
    nodes = 0

    def vertex_ok(v: int) -> bool:
        return vertex_locally_foldable(star_at(cp, view, v, inc))

    out: list[Selection] = []
    if all(vertex_ok(v) for v in v0) and all(wire_single_valley(view, w) for w in w0):

        def rec(i: int) -> None:
            nonlocal nodes
            if i == len(order):
                out.append(Selection(cp, [e for e in opt if state[e]]))
                return
            e = order[i]
            for val in (False, True):
                nodes += 1
                if nodes > budget:
                    raise BudgetExceeded(nodes, budget)
                state[e] = val
                if all(vertex_ok(v) for v in vchecks[i]) and all(wire_single_valley(view, w) for w in wchecks[i]):
                    rec(i + 1)
            state[e] = None

        rec(0)
    if stats is not None:
        stats["search_nodes"] = stats.get("search_nodes", 0) + nodes
    out.sort(key=lambda s: sorted(s.active))
    return out


def input_fixing(g: Gadget, values: Sequence[bool]) -> dict[int, bool]:
    """Make each input's chosen valley stub mandatory and forbid the other."""
    if len(values) != len(g.inputs):
        raise ValueError(f"{g.name} takes {len(g.inputs)} inputs, got {len(values)}")
    fixed: dict[int, bool] = {}
    for port, v in zip(g.inputs, values):
        w = g.wires[port.name]
        fixed[w.left[0]] = bool(v)
        fixed[w.right[0]] = not v
    return fixed


def enumerate_foldable_selections(
    g: Gadget,
    inputs: Sequence[bool] | None = None,
    level: Level | str = Level.GLOBAL,
    budget: int = SEARCH_BUDGET,
    layer_budget: int = DEFAULT_BUDGET,
    fixed: Mapping[int, bool] | None = None,
    wire_filter: bool | None = None,
    stats: dict | None = None,
) -> list[Selection]:
    """Selections of a gadget, with inputs fixed, that pass the requested level.

    Local: every interior vertex passes its checks and (by default) every port
    wire uses exactly one valley.  Global: local candidates, found without the
    wire filter unless asked, that also admit a valid layer order.
    """
    level = Level.parse(level)
    if wire_filter is None:
        wire_filter = level is Level.LOCAL
    fix = dict(fixed or {})
    if inputs is not None:
        fix.update(input_fixing(g, inputs))
    wires = list(g.wires.values()) if wire_filter else []
    local = enumerate_local_selections(g.pattern, fix, wires, budget, stats)
    if level is Level.LOCAL:
        return local
    out = []
    for sel in local:
        r = globally_flat_foldable(g.pattern, sel, layer_budget)
        if stats is not None:
            stats["layer_solves"] = stats.get("layer_solves", 0) + 1
        if r.verdict is Verdict.UNKNOWN:
            raise BudgetExceeded(r.nodes, layer_budget)
        if r.verdict is Verdict.YES:
            out.append(sel)
    return out


# ---------------------------------------------------------------------------
# reading values and reports


def wire_value(sel: Selection, wire: WireCreases) -> bool | None:
    """TRUE/FALSE from the single active valley; None when zero or two are active."""
    if not wire_single_valley(sel, wire):
        return None
    return any(sel.is_active(e) for e in wire.left)


def output_values(g: Gadget, sel: Selection) -> tuple[bool | None, ...]:
    return tuple(wire_value(sel, g.wires[p.name]) for p in g.outputs)


class RowVerdict(enum.Enum):
    FORCED = "Forced"
    CONTRADICTORY = "Contradictory"
    NO_FOLDING = "NoFolding"
    UNKNOWN = "Unknown"


@dataclass
class RowReport:
    inputs: tuple[bool, ...]
    verdict: RowVerdict
    value: tuple[bool | None, ...] | None = None
    outcomes: list[tuple[bool | None, ...]] = field(default_factory=list)
    selections: list[Selection] = field(default_factory=list)
    single_valley_violations: int = 0
    expected: tuple[bool, ...] | None = None
    nodes: int = 0

    @property
    def ok(self) -> bool:
        if self.expected is None:
            return self.verdict is RowVerdict.NO_FOLDING
        return self.verdict is RowVerdict.FORCED and self.value == self.expected

    def to_json(self) -> dict:
        return {
            "inputs": [int(b) for b in self.inputs],
            "verdict": self.verdict.value,
            "value": None if self.value is None else [None if v is None else int(v) for v in self.value],
            "expected": None if self.expected is None else [int(b) for b in self.expected],
            "foldings": len(self.selections),
            "distinct_outputs": [[None if v is None else int(v) for v in o] for o in self.outcomes],
            "single_valley_violations": self.single_valley_violations,
            "ok": self.ok,
        }


@dataclass
class TruthTableReport:
    gadget: str
    level: Level
    rows: list[RowReport]

    @property
    def passed(self) -> bool:
        return all(r.ok for r in self.rows)

    def table(self) -> dict[tuple[bool, ...], tuple[bool | None, ...] | None]:
        return {r.inputs: r.value for r in self.rows}

    def to_json(self) -> dict:
        return {
            "gadget": self.gadget,
            "level": self.level.value,
            "passed": self.passed,
            "rows": [r.to_json() for r in self.rows],
        }


def _classify(g: Gadget, inputs: tuple[bool, ...], sels: list[Selection]) -> RowReport:
    outcomes = sorted({output_values(g, s) for s in sels}, key=repr)
    violations = 0
    for s in sels:
        violations += sum(1 for w in g.wires.values() if not wire_single_valley(s, w))
    if not sels:
        verdict, value = RowVerdict.NO_FOLDING, None
    elif len(outcomes) == 1:
        verdict, value = RowVerdict.FORCED, outcomes[0]
    else:
        verdict, value = RowVerdict.CONTRADICTORY, None
    return RowReport(inputs, verdict, value, outcomes, sels, violations, g.expected(inputs))


def forced_outputs(
    g: Gadget,
    inputs: Sequence[bool],
    level: Level | str = Level.GLOBAL,
    budget: int = SEARCH_BUDGET,
    layer_budget: int = DEFAULT_BUDGET,
) -> RowReport:
    inputs = tuple(bool(b) for b in inputs)
    stats: dict = {}
    try:
        sels = enumerate_foldable_selections(g, inputs, level, budget, layer_budget, stats=stats)
    except BudgetExceeded as exc:
        return RowReport(inputs, RowVerdict.UNKNOWN, expected=g.expected(inputs), nodes=exc.nodes)
    report = _classify(g, inputs, sels)
    report.nodes = stats.get("search_nodes", 0)
    return report


def verify_truth_table(
    g: Gadget,
    level: Level | str = Level.GLOBAL,
    budget: int = SEARCH_BUDGET,
    layer_budget: int = DEFAULT_BUDGET,
) -> TruthTableReport:
    level = Level.parse(level)
    rows = [
        forced_outputs(g, bits, level, budget, layer_budget)
        for bits in product((False, True), repeat=len(g.inputs))
    ]
    return TruthTableReport(g.name, level, rows)

"""Placing gadgets on the lattice, wiring them together and running cells.

A :class:`Netlist` names gadget instances (kind, rotation, a lattice hint)
and connections ``"inst.port" -> "inst.port"``.  :func:`compose` solves the
placement exactly so that every connected pair of ports shares one wire
line, checks that nothing overlaps, and merges everything into a single
crease pattern on a rectangular sheet.  Unconnected ports run straight to
the edge of the sheet.
"""
from __future__ import annotations

import enum
import graphlib
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Mapping, Sequence

from .exact import (
    ExactPoint,
    ExactScalar,
    Isometry,
    SQRT3,
    dir_vector,
    scalar,
    segment_intersect,
    sign,
)
from .automaton import Boundary, Row, rule110
from .gadgets import Gadget, Port, make_gadget, place_gadget
from .pattern import CreaseLabel, CreasePattern, clip_segment, validate_pattern
from .verifier import Level, RowVerdict, forced_outputs

M = CreaseLabel.MOUNTAIN
VO = CreaseLabel.VALLEY_OPTIONAL


class NetlistError(ValueError):
    pass


class PortMismatch(NetlistError):
    pass


class Overlap(NetlistError):
    pass


class UnforcedSignal(RuntimeError):
    pass


@dataclass(frozen=True)
class Instance:
    """One gadget in a netlist.

    ``at`` is a lattice hint ``(X, D)``: X counts half-steps across, D
    half-steps down, so the three downward wire directions move by
    (-1, +1), (0, +2) and (+1, +1).  The hint only matters for gadgets whose
    position is not pinned down by their input wires.
    """

    name: str
    kind: str
    at: tuple[int, int] = (0, 0)
    rotation: int = 0
    inputs: tuple[str, ...] | None = None
    placement: Isometry | None = None

    def prototype(self) -> Gadget:
        g = make_gadget(self.kind)
        if self.inputs is not None:
            g = g.with_inputs(self.inputs)
        if self.rotation % 360:
            g = place_gadget(g, Isometry.rotation(self.rotation))
        return g.copy_with(name=self.name)


def _split(ref: str) -> tuple[str, str]:
    inst, _, port = ref.partition(".")
    if not port:
        raise NetlistError(f"port reference {ref!r} is not of the form inst.port")
    return inst, port


@dataclass
class Netlist:
    instances: list[Instance]
    connections: list[tuple[str, str]]
    inputs: dict[str, str] = field(default_factory=dict)
    outputs: dict[str, str] = field(default_factory=dict)
    pitch: int = 12
    shared: list[tuple[str, str]] = field(default_factory=list)

    def __post_init__(self) -> None:
        names = [i.name for i in self.instances]
        if len(set(names)) != len(names):
            raise NetlistError("duplicate instance names")
        self.by_name = {i.name: i for i in self.instances}
        self.protos = {i.name: i.prototype() for i in self.instances}
        self.driver: dict[tuple[str, str], tuple[str, str]] = {}
        used_out: set[tuple[str, str]] = set()
        for src, dst in self.connections:
            s, d = _split(src), _split(dst)
            for ref in (s, d):
                if ref[0] not in self.by_name:
                    raise NetlistError(f"unknown instance {ref[0]!r}")
                self.protos[ref[0]].port(ref[1])
            if self.protos[s[0]].port(s[1]).role != "output":
                raise PortMismatch(f"{src} is not an output")
            if self.protos[d[0]].port(d[1]).role != "input":
                raise PortMismatch(f"{dst} is not an input")
            if d in self.driver or d in self.external_in:
                raise NetlistError(f"{dst} is driven twice")
            if s in used_out:
                raise NetlistError(f"{src} drives two inputs")
            used_out.add(s)
            self.driver[d] = s
        self.partners: dict[tuple[str, str], tuple[str, str]] = {}
        for a, b in self.shared:
            ra, rb = _split(a), _split(b)
            for ref in (ra, rb):
                g = self.protos[ref[0]]
                if g.kind != "Eater" or g.port(ref[1]).role != "input":
                    raise PortMismatch(f"shared wire {a} - {b} must join two eater ports")
                if ref in self.partners or ref in self.driver:
                    raise NetlistError(f"{ref[0]}.{ref[1]} is used twice")
            self.partners[ra] = rb
            self.partners[rb] = ra
        for name, ref in self.outputs.items():
            if _split(ref) in used_out:
                raise NetlistError(f"output {name} is also wired internally")
        for inst in self.instances:
            g = self.protos[inst.name]
            for p in g.inputs:
                key = (inst.name, p.name)
                if key not in self.driver and key not in self.external_in and g.kind != "Eater":
                    raise NetlistError(f"input {inst.name}.{p.name} is not driven")

    @cached_property
    def external_in(self) -> dict[tuple[str, str], str]:
        return {_split(ref): name for name, ref in self.inputs.items()}

    def order(self) -> list[str]:
        """Instances in signal order (inputs first); raises on a cycle."""
        ts = graphlib.TopologicalSorter({i.name: set() for i in self.instances})
        for (d, _), (s, _) in self.driver.items():
            ts.add(d, s)
        try:
            order = list(ts.static_order())
        except graphlib.CycleError as exc:
            raise NetlistError("netlist has a cycle") from exc
        rank = {i.name: k for k, i in enumerate(self.instances)}
        # static_order is deterministic for a fixed insertion order; sort layers by declaration
        return sorted(order, key=lambda n: (self._depth(n), rank[n]))

    def _depth(self, name: str, memo: dict | None = None) -> int:
        memo = {} if memo is None else memo
        if name in memo:
            return memo[name]
        preds = [s for (d, _), (s, _) in self.driver.items() if d == name]
        memo[name] = 0 if not preds else 1 + max(self._depth(p, memo) for p in preds)
        return memo[name]

    # -- evaluation ---------------------------------------------------------

    def evaluate(
        self,
        values: Mapping[str, bool],
        fn: Callable[[str, Gadget, tuple[bool, ...]], tuple[bool, ...]] | None = None,
    ) -> dict[str, bool]:
        """Propagate external input values; returns external outputs (and every signal under "inst.port")."""
        if set(values) != set(self.inputs):
            raise NetlistError(f"need values for {sorted(self.inputs)}")
        signal: dict[tuple[str, str], bool] = {}
        for name in self.order():
            g = self.protos[name]
            ins = []
            for p in g.inputs:
                key = (name, p.name)
                if key in self.external_in:
                    ins.append(bool(values[self.external_in[key]]))
                elif key in self.driver:
                    ins.append(signal[self.driver[key]])
                else:
                    ins.append(False)  # free eater port: any value is absorbed
            ins_t = tuple(ins)
            outs = fn(name, g, ins_t) if fn is not None else g.expected(ins_t)
            if outs is None:
                raise UnforcedSignal(f"{name} has no defined output for inputs {ins_t}")
            for p, v in zip(g.outputs, outs):
                signal[(name, p.name)] = bool(v)
        result = {name: signal[_split(ref)] for name, ref in self.outputs.items()}
        result.update({f"{i}.{p}": v for (i, p), v in signal.items()})
        return result


# ---------------------------------------------------------------------------
# geometry


def lattice_point(X: int, D: int, pitch: int) -> ExactPoint:
    if (X - D) % 2:
        raise ValueError(f"({X}, {D}) is not a lattice point (X and D need equal parity)")
    s = scalar(pitch)
    return ExactPoint(s * SQRT3 / 2 * X, -s / 2 * D)


def _cross_t(t: ExactPoint, d: ExactPoint) -> ExactScalar:
    return t.x * d.y - t.y * d.x


def _solve_translation(constraints, hint: ExactPoint) -> ExactPoint:
    """Translation putting each local anchor on its wire line (least change from ``hint``)."""
    if not constraints:
        return hint
    eqs = [(dir_vector(k), _cross_t(p - a, dir_vector(k))) for a, p, k in constraints]
    if len(constraints) == 1:
        (a, p, k), = constraints
        d = dir_vector(k)
        t0 = p - a
        return t0 + d * (hint - t0).dot(d)
    (d1, r1), (d2, r2) = eqs[0], eqs[1]
    # t.x*d.y - t.y*d.x = r
    det = d1.y * (-d2.x) - (-d1.x) * d2.y
    if det.is_zero():
        raise PortMismatch("two input wires of one gadget are parallel")
    tx = (r1 * (-d2.x) - (-d1.x) * r2) / det
    ty = (d1.y * r2 - d2.y * r1) / det
    return ExactPoint(tx, ty)


def _convex_overlap(P: Sequence[ExactPoint], Q: Sequence[ExactPoint]) -> bool:
    """Interiors of two ccw convex polygons intersect (touching does not count)."""
    for A, B in ((P, Q), (Q, P)):
        n = len(A)
        for i in range(n):
            a, b = A[i], A[(i + 1) % n]
            e = b - a
            if all(sign(e.cross(q - a)) <= 0 for q in B):
                return False
    return True


def _chord_outside(p: ExactPoint, q: ExactPoint, polys: Sequence[Sequence[ExactPoint]]):
    """Portion of segment p->q after leaving polys[0] and before entering polys[1] (either may be None)."""
    d = q - p
    dd = d.dot(d)
    if dd.is_zero():
        return None
    lo, hi = ExactScalar(0), ExactScalar(1)
    src, dst = polys
    if src is not None:
        c = clip_segment(p, q, src)
        if c is not None:
            lo = max(lo, max((c[0] - p).dot(d) / dd, (c[1] - p).dot(d) / dd))
    if dst is not None:
        c = clip_segment(p, q, dst)
        if c is not None:
            hi = min(hi, min((c[0] - p).dot(d) / dd, (c[1] - p).dot(d) / dd))
    if sign(hi - lo) <= 0:
        return None
    return p + d * lo, p + d * hi


@dataclass
class WireRun:
    """Creases of one wire between two gadgets (or a gadget and the sheet edge)."""

    name: str
    ends: tuple[str, str | None]
    segments: list[tuple[ExactPoint, ExactPoint, CreaseLabel]]


def _wire_lines(port: Port) -> list[tuple[ExactPoint, CreaseLabel]]:
    return [(port.anchor, M), (port.left_point, VO), (port.right_point, VO)]


def _float_box(segs):
    xs, ys = [], []
    for p, q, _ in segs:
        for pt in (p, q):
            x, y = pt.to_float()
            xs.append(x)
            ys.append(y)
    return min(xs), max(xs), min(ys), max(ys)


def _boxes_meet(a, b, eps=1e-7) -> bool:
    return a[0] <= b[1] + eps and b[0] <= a[1] + eps and a[2] <= b[3] + eps and b[2] <= a[3] + eps


@dataclass
class CompositeCell:
    netlist: Netlist
    gadgets: dict[str, Gadget]
    wires: list[WireRun]
    sheet: list[ExactPoint]
    ports: dict[str, Port]
    pattern: CreasePattern

    @property
    def function(self) -> dict[tuple[bool, ...], tuple[bool, ...]]:
        from itertools import product

        names = list(self.netlist.inputs)
        table = {}
        for bits in product((False, True), repeat=len(names)):
            out = self.netlist.evaluate(dict(zip(names, bits)))
            table[bits] = tuple(out[o] for o in self.netlist.outputs)
        return table


def place(netlist: Netlist) -> dict[str, Gadget]:
    """Exact placement of every instance (see module docstring)."""
    placed: dict[str, Gadget] = {}
    for name in netlist.order():
        inst = netlist.by_name[name]
        proto = netlist.protos[name]
        if inst.placement is not None:
            g = place_gadget(make_gadget(inst.kind) if inst.inputs is None else make_gadget(inst.kind).with_inputs(inst.inputs), inst.placement)
            placed[name] = g.copy_with(name=name)
            continue
        cons = []
        for p in proto.inputs:
            src = netlist.driver.get((name, p.name)) or netlist.partners.get((name, p.name))
            if src is None or src[0] not in placed:
                continue
            sp = placed[src[0]].port(src[1])
            cons.append((p.anchor, sp.anchor, sp.out_dir))
        hint = lattice_point(*inst.at, netlist.pitch)
        t = _solve_translation(cons[:2], hint)
        placed[name] = place_gadget(proto, Isometry.translation(t)).copy_with(name=name)
    return placed


def _check_connection(src: Port, dst: Port, label: str, directed: bool = True) -> None:
    if dst.out_dir != (src.out_dir + 12) % 24:
        raise PortMismatch(f"{label}: wire directions disagree")
    if src.spacing != dst.spacing:
        raise PortMismatch(f"{label}: wire widths disagree")
    d = dir_vector(src.out_dir)
    if not (dst.anchor - src.anchor).cross(d).is_zero():
        raise PortMismatch(f"{label}: ports are not on one wire line")
    if directed and sign((dst.anchor - src.anchor).dot(d)) < 0:
        raise PortMismatch(f"{label}: input lies behind the output")


def compose(netlist: Netlist, margin: int | None = None, check_pattern: bool = True) -> CompositeCell:
    """Place, check and merge a netlist into one crease pattern.

    Raises :class:`PortMismatch` when connected ports do not share a wire
    line and :class:`Overlap` when gadgets or wires collide.
    """
    gadgets = place(netlist)
    for (dn, dp), (sn, sp) in netlist.driver.items():
        _check_connection(gadgets[sn].port(sp), gadgets[dn].port(dp), f"{sn}.{sp} -> {dn}.{dp}")
    links = [(_split(a), _split(b)) for a, b in netlist.shared]
    for (an, ap), (bn, bp) in links:
        _check_connection(gadgets[an].port(ap), gadgets[bn].port(bp), f"{an}.{ap} - {bn}.{bp}", directed=False)
        if sign((gadgets[bn].port(bp).anchor - gadgets[an].port(ap).anchor).dot(dir_vector(gadgets[an].port(ap).out_dir))) < 0:
            raise PortMismatch(f"{an}.{ap} - {bn}.{bp}: ports face away from each other")
    names = list(gadgets)
    for i, a in enumerate(names):
        for b in names[i + 1:]:
            if _convex_overlap(gadgets[a].boundary, gadgets[b].boundary):
                raise Overlap(f"gadgets {a} and {b} overlap")
    # sheet: bounding box of every gadget plus a margin
    margin = netlist.pitch if margin is None else margin
    pts = [p for g in gadgets.values() for p in g.boundary]
    xs = sorted((p.x for p in pts))
    ys = sorted((p.y for p in pts))
    m = scalar(margin)
    x0, x1, y0, y1 = xs[0] - m, xs[-1] + m, ys[0] - m, ys[-1] + m
    sheet = [ExactPoint(x0, y0), ExactPoint(x1, y0), ExactPoint(x1, y1), ExactPoint(x0, y1)]
    far = (x1 - x0) + (y1 - y0)

    wires: list[WireRun] = []
    pairs = sorted(netlist.driver.items(), key=lambda kv: (kv[1], kv[0])) + [((bn, bp), (an, ap)) for (an, ap), (bn, bp) in links]
    for (dn, dp), (sn, sp) in pairs:
        src, dst = gadgets[sn].port(sp), gadgets[dn].port(dp)
        segs = []
        dst_lines = _wire_lines(dst)
        if (dn, dp) in netlist.partners:
            # two inputs face each other: one's left is the other's right
            dst_lines = [dst_lines[0], dst_lines[2], dst_lines[1]]
        for (a, label), (b, _) in zip(_wire_lines(src), dst_lines):
            ch = _chord_outside(a, b, (gadgets[sn].boundary, gadgets[dn].boundary))
            if ch is not None:
                segs.append((ch[0], ch[1], label))
        arrow = "-" if (dn, dp) in netlist.partners else "->"
        wires.append(WireRun(f"{sn}.{sp}{arrow}{dn}.{dp}", (sn, dn), segs))
    connected = {k for k in netlist.driver} | {v for v in netlist.driver.values()} | set(netlist.partners)
    ports: dict[str, Port] = {}
    for name in names:
        g = gadgets[name]
        for p in g.ports:
            key = (name, p.name)
            if key in connected:
                continue
            label = netlist.external_in.get(key)
            if label is None:
                label = next((o for o, r in netlist.outputs.items() if _split(r) == key), None)
            label = label or f"free:{name}.{p.name}"
            ports[label] = p
            d = dir_vector(p.out_dir)
            segs = []
            for a, lab in _wire_lines(p):
                ch = _chord_outside(a, a + d * far, (g.boundary, None))
                if ch is not None:
                    c = clip_segment(ch[0], ch[1], sheet)
                    if c is not None and c[0] != c[1]:
                        segs.append((c[0], c[1], lab))
            wires.append(WireRun(label, (name, None), segs))

    _check_wire_overlaps(wires, gadgets)

    segments = []
    for name in names:
        cp = gadgets[name].pattern
        for e in cp.edges:
            if e.label.is_crease:
                segments.append((cp.vertices[e.u], cp.vertices[e.v], e.label))
    for w in wires:
        segments.extend(w.segments)
    pattern = CreasePattern.from_segments(segments, sheet, join=True)
    if check_pattern:
        problems = validate_pattern(pattern)
        if problems:
            raise NetlistError("merged pattern is invalid: " + "; ".join(problems[:3]))
    return CompositeCell(netlist, gadgets, wires, sheet, ports, pattern)


def _check_wire_overlaps(wires: list[WireRun], gadgets: dict[str, Gadget]) -> None:
    gboxes = {n: _float_box([(p, p, None) for p in g.boundary]) for n, g in gadgets.items()}
    wboxes = [_float_box(w.segments) if w.segments else None for w in wires]
    for i, w in enumerate(wires):
        if wboxes[i] is None:
            continue
        for n, g in gadgets.items():
            if n in w.ends or not _boxes_meet(wboxes[i], gboxes[n]):
                continue
            for p, q, _ in w.segments:
                c = clip_segment(p, q, g.boundary)
                if c is not None and c[0] != c[1]:
                    raise Overlap(f"wire {w.name} runs through gadget {n}")
        for j in range(i + 1, len(wires)):
            if wboxes[j] is None or not _boxes_meet(wboxes[i], wboxes[j]):
                continue
            for s1 in wires[i].segments:
                for s2 in wires[j].segments:
                    if segment_intersect(s1[:2], s2[:2]).kind != "empty":
                        raise Overlap(f"wires {wires[i].name} and {wires[j].name} cross")


# ---------------------------------------------------------------------------
# the Rule 110 cell

# Wire lines on the lattice (X across, D down):
#   A -> TA: ~A on 330 (crosses the ~B noise in I1) into AND with B from TB
#   B -> HB: ~B on 210 (noise), 330 (into I2, then NAND with C), 270 -> TB
#   TB: B on 210 (AND) and 330 (NAND with ~C)
#   C -> HC: ~C on 210 (I2, then NAND with B), 270 -> TC: C on 210 (NAND with ~B)
# The first-level gates feed triangle twists giving X, Y, Z on diagonals;
# OR(Z, Y) -> twist gives Q; NAND(X, Q) is the output.  The upward noise of
# the two hex twists meets in one eater; the rest leaves the sheet.
_R110_INSTANCES = [
    Instance("TA", "tritwist", (-12, 4)),
    Instance("HB", "hextwist", (0, 8)),
    Instance("HC", "hextwist", (12, 8)),
    Instance("E", "eater", (6, 2), rotation=60),
    Instance("TB", "tritwist", (0, 12)),
    Instance("TC", "tritwist", (12, 12)),
    Instance("I1", "intersector120", (-4, 12), rotation=330),
    Instance("I2", "intersector120", (6, 14), rotation=330),
    Instance("G1", "and", (-2, 14)),
    Instance("G2", "nand", (8, 16)),
    Instance("G3", "nand", (4, 16)),
    Instance("T1", "tritwist", (-2, 16)),
    Instance("T2", "tritwist", (8, 18)),
    Instance("T3", "tritwist", (4, 18)),
    Instance("I3", "intersector120", (2, 20), rotation=330),
    Instance("G4", "or", (6, 20)),
    Instance("T4", "tritwist", (6, 22)),
    Instance("G5", "nand", (5, 23)),
]

_R110_WIRES = [
    ("TA.w330", "I1.left"),
    ("HB.w210", "I1.top"),
    ("HB.w270", "TB.w90"),
    ("I1.right", "G1.A"),
    ("TB.w210", "G1.B"),
    ("HB.w330", "I2.left"),
    ("HC.w210", "I2.top"),
    ("HC.w270", "TC.w90"),
    ("I2.right", "G2.A"),
    ("TC.w210", "G2.B"),
    ("TB.w330", "G3.A"),
    ("I2.bottom", "G3.B"),
    ("HB.w30", "E.A"),
    ("HC.w150", "E.C"),
    ("G1.out", "T1.w90"),
    ("G2.out", "T2.w90"),
    ("G3.out", "T3.w90"),
    ("T1.w330", "I3.left"),
    ("T3.w210", "I3.top"),
    ("T3.w330", "G4.A"),
    ("T2.w210", "G4.B"),
    ("G4.out", "T4.w90"),
    ("I3.right", "G5.A"),
    ("T4.w210", "G5.B"),
]

# named intermediate signals of the cell
RULE110_SIGNALS = {"X": "T1.w330", "Y": "T2.w210", "Z": "T3.w330", "P": "I3.right", "Q": "T4.w210"}


def rule110_netlist() -> Netlist:
    return Netlist(
        list(_R110_INSTANCES),
        list(_R110_WIRES),
        inputs={"A": "TA.w90", "B": "HB.w90", "C": "HC.w90"},
        outputs={"OUT": "G5.out"},
    )


def build_rule110_cell(check_pattern: bool = True) -> CompositeCell:
    return compose(rule110_netlist(), check_pattern=check_pattern)


# ---------------------------------------------------------------------------
# Sierpinski cell
#
# A -> HA: ~A on 270 (-> HA2), 330 (-> DA) and 210 (to the left neighbour).
# DA/UA turn ~A into A and back, so HA2 sees ~A on two inward wires and
# sends A down-right; UA also sends ~A through the intersector.  B mirrors
# this on the right.  NAND(A, ~B) and NAND(~A, B) each pass a triangle twist
# and meet in a NOR, so OUT = (A == B).  Noise from the twists is eaten; the
# eaters that share a wire stand in for the links between neighbouring
# cells.  Hints are (x, -2y) of a drawing on the triangular grid.
_SIERP_INSTANCES = [
    Instance("HA", "hextwist", (0, 10)),
    Instance("HB", "hextwist", (16, 10)),
    Instance("DA", "tritwist", (4, 14), rotation=60),
    Instance("DB", "tritwist", (12, 14), rotation=300),
    Instance("UA", "tritwist", (4, 18)),
    Instance("UB", "tritwist", (12, 18)),
    Instance("HA2", "hextwist", (0, 22), inputs=("w90", "w30")),
    Instance("HB2", "hextwist", (16, 22), inputs=("w90", "w150")),
    Instance("X", "intersector120", (8, 22), rotation=330),
    Instance("N1", "nand", (4, 26)),
    Instance("N2", "nand", (11, 27)),
    Instance("U1", "tritwist", (4, 30)),
    Instance("U2", "tritwist", (11, 31)),
    Instance("G", "nor", (8, 34)),
    Instance("E0", "eater", (8, 10), rotation=60),
    Instance("E1", "eater", (8, 6)),
    Instance("E2", "eater", (6, 4), rotation=60),
    Instance("E3", "eater", (10, 4), rotation=60),
    Instance("E4", "eater", (0, 30), rotation=60),
    Instance("E5", "eater", (2, 32)),
    Instance("E6", "eater", (-2, 32)),
    Instance("E7", "eater", (16, 32), rotation=60),
    Instance("E8", "eater", (14, 34)),
    Instance("E9", "eater", (18, 34)),
]

_SIERP_WIRES = [
    ("HA.w270", "HA2.w90"),
    ("HA.w330", "DA.w90"),
    ("HA.w30", "E2.A"),
    ("HB.w270", "HB2.w90"),
    ("HB.w210", "DB.w90"),
    ("HB.w150", "E3.C"),
    ("DA.w210", "UA.w90"),
    ("DA.w330", "E0.A"),
    ("DB.w330", "UB.w90"),
    ("DB.w210", "E0.C"),
    ("UA.w210", "HA2.w30"),
    ("UA.w330", "X.left"),
    ("UB.w330", "HB2.w150"),
    ("UB.w210", "X.top"),
    ("HA2.w330", "N1.A"),
    ("X.bottom", "N1.B"),
    ("X.right", "N2.A"),
    ("HB2.w210", "N2.B"),
    ("N1.out", "U1.w90"),
    ("N2.out", "U2.w90"),
    ("U1.w330", "G.A"),
    ("U2.w210", "G.B"),
    ("HA2.w270", "E4.B"),
    ("U1.w210", "E5.B"),
    ("HB2.w270", "E7.B"),
    ("U2.w330", "E8.A"),
]

_SIERP_SHARED = [
    ("E0.B", "E1.C"),
    ("E1.A", "E2.C"),
    ("E1.B", "E3.A"),
    ("E4.C", "E5.A"),
    ("E4.A", "E6.B"),
    ("E7.A", "E8.B"),
    ("E7.C", "E9.A"),
]


def sierpinski_netlist(pitch: int = 6) -> Netlist:
    return Netlist(
        list(_SIERP_INSTANCES),
        list(_SIERP_WIRES),
        inputs={"A": "HA.w90", "B": "HB.w90"},
        outputs={"OUT": "G.out"},
        pitch=pitch,
        shared=list(_SIERP_SHARED),
    )


def build_sierpinski_cell(check_pattern: bool = True) -> CompositeCell:
    return compose(sierpinski_netlist(), check_pattern=check_pattern)


# ---------------------------------------------------------------------------
# running cells on rows


class SimMode(enum.Enum):
    DIRECT = "direct"
    NETLIST = "netlist"
    GEOMETRIC = "geometric"

    @classmethod
    def parse(cls, value) -> SimMode:
        if isinstance(value, SimMode):
            return value
        return cls(str(value).lower())


class GeometricEvaluator:
    """Per-gadget evaluation that asks the fold verifier for every gadget output.

    Results are cached on everything that affects the pattern up to a
    translation: kind, rotation, port roles and the input values.
    """

    def __init__(self, netlist: Netlist, level: Level | str = Level.GLOBAL) -> None:
        self.netlist = netlist
        self.level = Level.parse(level)
        self.cache: dict[tuple, tuple[bool, ...]] = {}
        self.solves = 0

    def __call__(self, name: str, g: Gadget, inputs: tuple[bool, ...]) -> tuple[bool, ...]:
        inst = self.netlist.by_name[name]
        key = (inst.kind, inst.rotation % 360, inst.inputs, inputs)
        if key not in self.cache:
            self.solves += 1
            report = forced_outputs(g, inputs, self.level)
            if report.verdict is not RowVerdict.FORCED:
                raise UnforcedSignal(f"{name} ({inst.kind}) on {inputs}: {report.verdict.value}")
            self.cache[key] = report.value
        return self.cache[key]


def _cell_fn(netlist: Netlist, mode: SimMode, direct: Callable, level) -> Callable[..., int]:
    if mode is SimMode.DIRECT:
        return lambda *bits: int(direct(*bits))
    fn = GeometricEvaluator(netlist, level) if mode is SimMode.GEOMETRIC else None
    names = list(netlist.inputs)

    def run(*bits):
        return int(netlist.evaluate(dict(zip(names, map(bool, bits))), fn)["OUT"])

    return run


def simulate_rule110(
    initial: Row,
    steps: int,
    mode: SimMode | str = SimMode.DIRECT,
    level: Level | str = Level.GLOBAL,
) -> list[Row]:
    """Evolve a fixed-width row, each cell fed (left, self, right); zeros outside unless cyclic."""
    mode = SimMode.parse(mode)
    f = _cell_fn(rule110_netlist(), mode, rule110, level)
    rows = [initial]
    for _ in range(steps):
        r = rows[-1]
        n = len(r)
        if r.boundary is Boundary.CYCLIC:
            trip = [(r.cells[i - 1], r.cells[i], r.cells[(i + 1) % n]) for i in range(n)]
        else:
            padded = (0,) + r.cells + (0,)
            trip = [padded[i:i + 3] for i in range(n)]
        rows.append(Row(tuple(f(*t) for t in trip), r.boundary, r.offset))
    return rows


def simulate_sierpinski(
    initial: Row,
    steps: int,
    mode: SimMode | str = SimMode.DIRECT,
    level: Level | str = Level.GLOBAL,
) -> list[Row]:
    """Tessellated Sierpinski cells, read with bit = not wire.

    The cell computes A == B on wire values, which is exclusive-or on the
    inverted reading, so an all-FALSE-wire background is quiescent and rows
    grow like :func:`evolve_xor`.  DIRECT uses exclusive-or itself.
    """
    mode = SimMode.parse(mode)
    if mode is SimMode.DIRECT:
        f = lambda a, b: a ^ b
    else:
        wire = _cell_fn(sierpinski_netlist(), mode, None, level)
        f = lambda a, b: 1 - wire(1 - a, 1 - b)
    rows = [initial]
    for _ in range(steps):
        padded = (0,) + rows[-1].cells + (0,)
        rows.append(Row(tuple(f(padded[j], padded[j + 1]) for j in range(len(padded) - 1)), initial.boundary, initial.offset))
    return rows

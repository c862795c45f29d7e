"""Crease-pattern gadgets: wires, logic gates, intersectors, twists and the eater.

Coordinates live on the unit triangle lattice (the NOT gate uses the unit
square lattice).  Every gadget carries ports describing its wires; the value
on a wire is TRUE when the valley to the left of the signal direction is
used and FALSE when the right one is.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from itertools import product
from typing import Callable, Sequence

from .exact import (
    HALF,
    ORIGIN,
    SQRT3,
    ExactPoint,
    ExactScalar,
    Isometry,
    dir_vector,
    polar,
    scalar,
    sign,
)
from .local import WireCreases
from .pattern import MO, VO, CreaseLabel, CreasePattern, M, V, dodecagon

P = ExactPoint
RAY = 10  # length used for rays before clipping to the gadget boundary


class NonLattice(ValueError):
    pass


class UnknownGadget(KeyError):
    pass


def _deg(d: int) -> int:
    if d % 15:
        raise ValueError(f"{d} degrees is not a lattice direction")
    return (d // 15) % 24


def ray(p: ExactPoint, deg: int, label: CreaseLabel, length=RAY):
    return (p, p + dir_vector(_deg(deg)) * length, label)


def line(p: ExactPoint, deg: int, label: CreaseLabel, length=RAY):
    u = dir_vector(_deg(deg)) * length
    return (p - u, p + u, label)


@dataclass(frozen=True)
class Port:
    """A wire crossing the gadget boundary.

    ``anchor`` lies on the wire's mountain, ``out_dir`` (Dir15) points away
    from the gadget along the wire and ``spacing`` is the distance from the
    mountain to each valley.
    """

    name: str
    role: str  # "input" or "output"
    anchor: ExactPoint
    out_dir: int
    spacing: ExactScalar = SQRT3 / 2

    @property
    def travel(self) -> int:
        return self.out_dir if self.role == "output" else (self.out_dir + 12) % 24

    def _offset(self, side: int) -> ExactPoint:
        normal = dir_vector((self.travel + 6) % 24)  # left of travel
        return self.anchor + normal * (self.spacing * side)

    @property
    def left_point(self) -> ExactPoint:
        return self._offset(1)

    @property
    def right_point(self) -> ExactPoint:
        return self._offset(-1)

    def transformed(self, iso: Isometry) -> Port:
        return replace(self, anchor=iso.apply(self.anchor), out_dir=iso.apply_dir(self.out_dir))


Fn = Callable[[tuple[bool, ...]], "tuple[bool, ...] | None"]


@dataclass
class Gadget:
    name: str
    segments: list[tuple[ExactPoint, ExactPoint, CreaseLabel]]
    ports: list[Port]
    boundary: list[ExactPoint]
    expected: Fn
    kind: str = ""
    _pattern: CreasePattern | None = field(default=None, repr=False)
    _wires: dict[str, WireCreases] | None = field(default=None, repr=False)

    @property
    def inputs(self) -> list[Port]:
        return [p for p in self.ports if p.role == "input"]

    @property
    def outputs(self) -> list[Port]:
        return [p for p in self.ports if p.role == "output"]

    def port(self, name: str) -> Port:
        for p in self.ports:
            if p.name == name:
                return p
        raise KeyError(name)

    @property
    def pattern(self) -> CreasePattern:
        if self._pattern is None:
            self._pattern = CreasePattern.from_segments(self.segments, self.boundary, override=True)
        return self._pattern

    @property
    def wires(self) -> dict[str, WireCreases]:
        """Stub edges (the pieces touching the boundary) of every port wire."""
        if self._wires is None:
            self._wires = {p.name: self._port_edges(p) for p in self.ports}
        return self._wires

    def true_valley(self, port: str) -> int:
        return self.wires[port].left[0]

    def false_valley(self, port: str) -> int:
        return self.wires[port].right[0]

    def _stub(self, point: ExactPoint, out_dir: int, want) -> int:
        cp = self.pattern
        u = dir_vector(out_dir)
        best = None
        for i, e in enumerate(cp.edges):
            if not want(e.label):
                continue
            a, b = cp.vertices[e.u], cp.vertices[e.v]
            if sign(u.cross(a - point)) or sign(u.cross(b - point)):
                continue
            ta, tb = u.dot(a - point), u.dot(b - point)
            far = e.u if ta > tb else e.v
            if far not in cp.boundary_vertices:
                continue
            reach = ta if ta > tb else tb
            if best is None or reach > best[0]:
                best = (reach, i)
        if best is None:
            raise ValueError(f"{self.name}: no boundary crease on port line through {point}")
        return best[1]

    def _port_edges(self, port: Port) -> WireCreases:
        d = port.out_dir
        return WireCreases(
            mountain=(self._stub(port.anchor, d, lambda l: l.mv == "M"),),
            left=(self._stub(port.left_point, d, lambda l: l.mv == "V"),),
            right=(self._stub(port.right_point, d, lambda l: l.mv == "V"),),
        )

    def boundary_angles(self) -> list[int]:
        dirs = sorted({p.out_dir for p in self.ports})
        return [(dirs[(i + 1) % len(dirs)] - dirs[i]) % 24 or 24 for i in range(len(dirs))]

    def truth_table(self) -> dict[tuple[bool, ...], tuple[bool, ...] | None]:
        return {bits: self.expected(bits) for bits in product((False, True), repeat=len(self.inputs))}

    def with_inputs(self, names: Sequence[str]) -> Gadget:
        """Re-assign port roles (twists only): ``names`` become inputs, the rest outputs."""
        if self.kind not in ("HexTwist", "TriTwist"):
            raise ValueError("only twists can re-assign their ports")
        names = list(names)
        unknown = set(names) - {p.name for p in self.ports}
        if unknown:
            raise KeyError(sorted(unknown))
        ports = [replace(p, role="input" if p.name in names else "output") for p in self.ports]
        ins = [p for p in ports if p.role == "input"]
        outs = [p for p in ports if p.role == "output"]
        # keep the requested order for inputs
        ins.sort(key=lambda p: names.index(p.name))
        ports = ins + outs
        return self.copy_with(ports=ports, expected=_twist_fn(len(ins), len(outs)))

    def copy_with(self, **kw) -> Gadget:
        return Gadget(**{**dict(name=self.name, segments=self.segments, ports=self.ports,
                                boundary=self.boundary, expected=self.expected, kind=self.kind), **kw})


# ---------------------------------------------------------------------------
# Boolean behaviour


def _gate(fn: Callable[[bool, bool], bool]) -> Fn:
    return lambda x: (fn(*x),)


def _twist_fn(n_in: int, n_out: int) -> Fn:
    def fn(x: tuple[bool, ...]):
        if len(set(x)) > 1:
            return None  # the rotation cannot satisfy both senses at once
        v = x[0] if x else None
        if v is None:
            return None
        return tuple(not v for _ in range(n_out))

    return fn


def _eater_fn(x: tuple[bool, ...]):
    return ()


def _dual(fn: Fn) -> Fn:
    """Behaviour after swapping TRUE and FALSE on every wire."""

    def dual(x: tuple[bool, ...]):
        out = fn(tuple(not b for b in x))
        return None if out is None else tuple(not b for b in out)

    return dual


# ---------------------------------------------------------------------------
# constructors

R_TRI = 4  # apothem of the 12-gon around triangle-lattice gadgets


def _three_wire_frame(segs: list, out_dirs=(150, 30, 270)) -> None:
    """Mountain triangle corners X'(30:1), Y'(150:1), Z'(0,-1) with their wire valleys."""
    xp, yp, zp = polar(30), polar(150), polar(270)
    segs += [
        ray(xp, 270, VO), ray(xp, 150, VO),
        ray(yp, 30, VO), ray(yp, 270, VO),
        ray(zp, 30, VO), ray(zp, 150, VO),
    ]


def _nor() -> Gadget:
    r3 = SQRT3 / 3
    xp, yp, zp = polar(30), polar(150), polar(270)
    y = P(0, 1)
    segs = [ray(xp, 30, M), ray(yp, 150, M), ray(zp, 270, M), (xp, yp, M), (yp, zp, M), (zp, xp, M)]
    _three_wire_frame(segs)
    segs += [
        (ORIGIN, xp, VO), (ORIGIN, yp, VO), (ORIGIN, zp, VO),
        (polar(60, r3), y, VO), (ORIGIN, polar(120, r3), VO), (ORIGIN, polar(240, r3), VO),
        (P(-r3, 0), polar(210), VO),
        (polar(120, r3), y, MO), (ORIGIN, polar(60, r3), MO), (ORIGIN, P(-r3, 0), MO),
        (polar(210), polar(240, r3), MO),
    ]
    return Gadget("nor", segs, _binary_ports(), dodecagon(R_TRI), _gate(lambda a, b: not (a or b)), "Nor")


def _nand() -> Gadget:
    r3 = SQRT3 / 3
    xp, yp, zp = polar(30), polar(150), polar(270)
    y = P(0, 1)
    segs = [ray(xp, 30, M), ray(yp, 150, M), ray(zp, 270, M), (xp, yp, M), (yp, zp, M), (zp, xp, M)]
    _three_wire_frame(segs)
    segs += [
        (ORIGIN, xp, VO), (ORIGIN, yp, VO), (ORIGIN, zp, VO),
        (polar(120, r3), y, VO), (ORIGIN, polar(60, r3), VO), (ORIGIN, polar(300, r3), VO),
        (P(r3, 0), polar(330), VO),
        (polar(60, r3), y, MO), (ORIGIN, polar(120, r3), MO), (ORIGIN, P(r3, 0), MO),
        (polar(330), polar(300, r3), MO),
    ]
    return Gadget("nand", segs, _binary_ports(), dodecagon(R_TRI), _gate(lambda a, b: not (a and b)), "Nand")


def _or() -> Gadget:
    y = P(0, 1)
    segs = [ray(ORIGIN, 30, M), ray(ORIGIN, 150, M), ray(ORIGIN, 270, M)]
    _three_wire_frame(segs)
    segs += [
        (ORIGIN, y, VO), (ORIGIN, polar(330), VO), (polar(30, HALF), polar(330), VO),
        (polar(30, 2), polar(330), VO), (ORIGIN, polar(210), VO),
        (polar(150), polar(210), MO), (polar(30), polar(330), MO), (polar(30, HALF), y, MO),
        (polar(30, 2), y, MO), (polar(330), polar(270), MO),
    ]
    return Gadget("or", segs, _binary_ports(), dodecagon(R_TRI), _gate(lambda a, b: a or b), "Or")


def _and() -> Gadget:
    y = P(0, 1)
    segs = [ray(ORIGIN, 30, M), ray(ORIGIN, 150, M), ray(ORIGIN, 270, M)]
    _three_wire_frame(segs)
    segs += [
        (ORIGIN, y, VO), (ORIGIN, polar(330), VO), (polar(150, HALF), polar(210), VO),
        (polar(150, 2), polar(210), VO), (ORIGIN, polar(210), VO),
        (polar(30), polar(330), MO), (polar(210), polar(270), MO), (polar(210), polar(150), MO),
        (polar(150, HALF), y, MO), (polar(150, 2), y, MO),
    ]
    return Gadget("and", segs, _binary_ports(), dodecagon(R_TRI), _gate(lambda a, b: a and b), "And")


def _binary_ports() -> list[Port]:
    return [
        Port("A", "input", ORIGIN, _deg(150)),
        Port("B", "input", ORIGIN, _deg(30)),
        Port("out", "output", ORIGIN, _deg(270)),
    ]


def _not() -> Gadget:
    h = HALF
    q = Fraction(3, 2)
    L = RAY
    hexagon = [P(0, 1), P(-h, h), P(-h, -h), P(0, -1), P(h, -h), P(h, h)]
    segs = [(P(0, 1), P(0, L), M), (P(0, -1), P(0, -L), M)]
    for sy in (h, -h):
        segs += [(P(-L, sy), P(-h, sy), M), (P(h, sy), P(L, sy), M)]
    segs += [(hexagon[i], hexagon[(i + 1) % 6], M) for i in range(6)]
    for sy in (1, -1):
        segs += [(P(-L, sy), P(-1, sy), V), (P(1, sy), P(L, sy), V)]
    segs += [
        (P(1, L), P(1, 1), VO), (P(1, -1), P(1, -L), VO), (P(-1, L), P(-1, 1), VO),
        (P(-1, -1), P(-1, -L), VO), (P(-1, 1), P(1, 1), VO), (P(-1, -1), P(1, -1), VO),
        (P(h, h), P(q, -h), VO), (P(h, -h), P(q, h), VO), (P(-h, h), P(-q, -h), VO),
        (P(-h, -h), P(-q, h), VO),
        (P(h, h), P(1, 1), VO), (P(h, -h), P(1, -1), VO), (P(-h, h), P(-1, 1), VO),
        (P(-h, -h), P(-1, -1), VO),
        (P(1, 1), P(q, h), MO), (P(1, -1), P(q, -h), MO), (P(-1, 1), P(-q, h), MO),
        (P(-1, -1), P(-q, -h), MO),
    ]
    s = 3
    box = [P(-s, -s), P(s, -s), P(s, s), P(-s, s)]
    ports = [
        Port("in", "input", P(0, 1), _deg(90), scalar(1)),
        Port("out", "output", P(0, -1), _deg(270), scalar(1)),
    ]
    return Gadget("not", segs, ports, box, lambda x: (not x[0],), "Not")


def _intersector_segments() -> list:
    a, b = polar(120), ORIGIN
    x, y, z = P(1, 0), P(0, SQRT3), P(Fraction(-3, 2), SQRT3 / 2)
    zp, w, wp = P(-1, 0), polar(240), polar(300)
    xp, yp = polar(60), polar(120, 2)
    return [
        line(ORIGIN, 120, M),
        line(x, 120, VO),
        line(w, 120, VO),
        ray(ORIGIN, 0, VO), ray(xp, 0, M), ray(yp, 0, VO),
        ray(zp, 180, M), ray(z, 180, VO), ray(w, 180, VO),
        (yp, z, MO), (xp, a, MO), (a, zp, VO), (b, w, MO), (a, z, VO), (b, zp, MO),
        (a, y, MO), (b, xp, VO), (w, wp, VO), (wp, x, MO),
    ]


def _intersector60() -> Gadget:
    ports = [
        Port("left", "input", P(-1, 0), _deg(180)),
        Port("top", "input", ORIGIN, _deg(120)),
        Port("right", "output", polar(60), _deg(0)),
        Port("bottom", "output", ORIGIN, _deg(300)),
    ]
    return Gadget(
        "intersector60", _intersector_segments(), ports, dodecagon(R_TRI), lambda x: (x[0], x[1]), "Intersector60"
    )


def _intersector120() -> Gadget:
    rot = Isometry.rotation(60)
    segs = [(rot.apply(p), rot.apply(q), l) for p, q, l in _intersector_segments()]
    # the horizontal wire of the 60 degree version, rotated, now runs backwards
    ports = [
        Port("left", "input", ORIGIN, _deg(180)),
        Port("top", "input", rot.apply(polar(60)), _deg(60)),
        Port("right", "output", ORIGIN, _deg(0)),
        Port("bottom", "output", rot.apply(P(-1, 0)), _deg(240)),
    ]
    return Gadget("intersector120", segs, ports, dodecagon(R_TRI), lambda x: (x[0], x[1]), "Intersector120")


def _hex_twist() -> Gadget:
    segs = []
    corners = [30, 90, 150, 210, 270, 330]
    for i, d in enumerate(corners):
        segs.append((polar(d), polar(corners[(i + 1) % 6]), M))
        segs.append(ray(polar(d), d, M))
        segs.append(ray(polar(d), d + 60, VO))
        segs.append(ray(polar(d), d - 60, VO))
    ports = [Port(f"w{d}", "input" if d == 90 else "output", ORIGIN, _deg(d)) for d in corners]
    ports.sort(key=lambda p: p.role != "input")
    return Gadget("hextwist", segs, ports, dodecagon(R_TRI), _twist_fn(1, 5), "HexTwist")


def _tri_twist() -> Gadget:
    segs = []
    corners = [90, 210, 330]
    for i, d in enumerate(corners):
        segs.append((polar(d), polar(corners[(i + 1) % 3]), M))
        segs.append(ray(polar(d), d, M))
        for other in corners:
            if other != d:
                segs.append(ray(polar(d), other, VO))
    ports = [Port(f"w{d}", "input" if d == 90 else "output", ORIGIN, _deg(d)) for d in corners]
    return Gadget("tritwist", segs, ports, dodecagon(R_TRI), _twist_fn(1, 2), "TriTwist")


def _eater() -> Gadget:
    xp, yp, zp = polar(30), polar(150), polar(270)
    segs = [ray(xp, 30, M), ray(yp, 150, M), ray(zp, 270, M), (xp, yp, M), (yp, zp, M), (zp, xp, M)]
    _three_wire_frame(segs)
    segs += [
        (ORIGIN, xp, VO), (ORIGIN, yp, VO), (ORIGIN, zp, VO),
        (ORIGIN, P(0, HALF), VO), (ORIGIN, polar(210, HALF), VO), (ORIGIN, polar(330, HALF), VO),
        (P(0, HALF), P(0, 1), MO), (polar(210, HALF), polar(210), MO), (polar(330, HALF), polar(330), MO),
    ]
    ports = [
        Port("A", "input", ORIGIN, _deg(150)),
        Port("B", "input", ORIGIN, _deg(30)),
        Port("C", "input", ORIGIN, _deg(270)),
    ]
    return Gadget("eater", segs, ports, dodecagon(R_TRI), _eater_fn, "Eater")


def _wire(length: int = 4) -> Gadget:
    h = SQRT3 / 2
    L = scalar(length)
    segs = [(P(0, 0), P(0, -L), M), (P(h, 0), P(h, -L), VO), (P(-h, 0), P(-h, -L), VO)]
    w = SQRT3
    box = [P(-w, -L), P(w, -L), P(w, 0), P(-w, 0)]
    ports = [Port("in", "input", P(0, 0), _deg(90)), Port("out", "output", P(0, -L), _deg(270))]
    return Gadget(f"wire{length}", segs, ports, box, lambda x: (x[0],), "Wire")


_BUILDERS: dict[str, Callable[[], Gadget]] = {
    "wire": _wire,
    "nor": _nor,
    "nand": _nand,
    "or": _or,
    "and": _and,
    "not": _not,
    "intersector60": _intersector60,
    "intersector120": _intersector120,
    "hextwist": _hex_twist,
    "tritwist": _tri_twist,
    "eater": _eater,
}

_ALIASES = {k.lower(): k for k in _BUILDERS}
_ALIASES.update({"hex_twist": "hextwist", "tri_twist": "tritwist", "intersector_60": "intersector60",
                 "intersector_120": "intersector120"})

_cache: dict[tuple, Gadget] = {}


def catalog() -> list[str]:
    return list(_BUILDERS)


def make_gadget(kind: str, length: int | None = None) -> Gadget:
    """Gadget by name (case-insensitive), e.g. ``make_gadget("Nor")`` or ``make_gadget("wire", 4)``."""
    key = kind.lower().replace("-", "_")
    if key.startswith("wire") and key[4:].isdigit():
        key, length = "wire", int(key[4:])
    key = _ALIASES.get(key, key)
    if key not in _BUILDERS:
        raise UnknownGadget(kind)
    ck = (key, length)
    if ck not in _cache:
        _cache[ck] = _BUILDERS[key](length) if key == "wire" and length is not None else _BUILDERS[key]()
    g = _cache[ck]
    return g.copy_with()


def place_gadget(g: Gadget, iso: Isometry) -> Gadget:
    """Congruent copy under a lattice isometry; TRUE/FALSE sides follow the new travel directions."""
    if not iso.is_lattice():
        raise NonLattice("isometry leaves the 15 degree grid")
    segs = [(iso.apply(p), iso.apply(q), l) for p, q, l in g.segments]
    boundary = [iso.apply(p) for p in g.boundary]
    if iso.orientation < 0:
        boundary.reverse()
    ports = [p.transformed(iso) for p in g.ports]
    expected = g.expected if iso.orientation > 0 else _dual(g.expected)
    return Gadget(g.name, segs, ports, boundary, expected, g.kind)


def mirror(g: Gadget) -> Gadget:
    """Reflection across the vertical axis."""
    return place_gadget(g, Isometry(-1, 0, 0, 1)).copy_with(name=f"mirror({g.name})")

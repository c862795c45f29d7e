"""Crease patterns with optional creases, selections, and face complexes."""
from __future__ import annotations

import enum
from collections import defaultdict, deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .exact import (
    ONE,
    ZERO,
    ExactPoint,
    ExactScalar,
    dir_vector,
    direction_of,
    segment_intersect,
    sign,
)


class PatternError(ValueError):
    """A crease pattern or selection that cannot be turned into faces."""


class OddDegreeVertex(PatternError):
    def __init__(self, vertex: int, degree: int) -> None:
        super().__init__(f"interior vertex {vertex} has odd active degree {degree}")
        self.vertex = vertex
        self.degree = degree


class DanglingCrease(OddDegreeVertex):
    pass


class DisconnectedCreases(PatternError):
    pass


class NotOptional(ValueError):
    pass


class CreaseLabel(enum.Enum):
    MOUNTAIN = "M"
    VALLEY = "V"
    MOUNTAIN_OPTIONAL = "m"
    VALLEY_OPTIONAL = "v"
    BOUNDARY = "B"

    @property
    def optional(self) -> bool:
        return self in (CreaseLabel.MOUNTAIN_OPTIONAL, CreaseLabel.VALLEY_OPTIONAL)

    @property
    def mandatory(self) -> bool:
        return self in (CreaseLabel.MOUNTAIN, CreaseLabel.VALLEY)

    @property
    def is_crease(self) -> bool:
        return self is not CreaseLabel.BOUNDARY

    @property
    def mv(self) -> str | None:
        if self in (CreaseLabel.MOUNTAIN, CreaseLabel.MOUNTAIN_OPTIONAL):
            return "M"
        if self in (CreaseLabel.VALLEY, CreaseLabel.VALLEY_OPTIONAL):
            return "V"
        return None

    def as_mandatory(self) -> CreaseLabel:
        return {"M": CreaseLabel.MOUNTAIN, "V": CreaseLabel.VALLEY}[self.mv]


M = CreaseLabel.MOUNTAIN
V = CreaseLabel.VALLEY
MO = CreaseLabel.MOUNTAIN_OPTIONAL
VO = CreaseLabel.VALLEY_OPTIONAL
B = CreaseLabel.BOUNDARY


@dataclass(frozen=True)
class Edge:
    u: int
    v: int
    label: CreaseLabel


class CreasePattern:
    """A planar straight-line graph of creases inside a polygonal sheet.

    ``edges`` are ``Edge(u, v, label)`` with vertex indices; boundary edges
    carry ``CreaseLabel.BOUNDARY``.  Construction does not validate; call
    :func:`validate_pattern` (or build through :meth:`from_segments`, which
    nodes crossings itself).
    """

    def __init__(self, vertices: Sequence[ExactPoint], edges: Iterable) -> None:
        self.vertices: list[ExactPoint] = list(vertices)
        self.edges: list[Edge] = [e if isinstance(e, Edge) else Edge(*e) for e in edges]
        self._dirs: list[int | None] | None = None
        self._boundary_vertices: frozenset[int] | None = None

    # -- derived data -------------------------------------------------
    def edge_dir(self, i: int, from_vertex: int | None = None) -> int | None:
        if self._dirs is None:
            self._dirs = [
                direction_of(self.vertices[e.v] - self.vertices[e.u]) for e in self.edges
            ]
        k = self._dirs[i]
        if k is None or from_vertex is None or from_vertex == self.edges[i].u:
            return k
        return (k + 12) % 24

    @property
    def boundary_vertices(self) -> frozenset[int]:
        if self._boundary_vertices is None:
            self._boundary_vertices = frozenset(
                x for e in self.edges if e.label is B for x in (e.u, e.v)
            )
        return self._boundary_vertices

    def optional_edges(self) -> list[int]:
        return [i for i, e in enumerate(self.edges) if e.label.optional]

    def mandatory_edges(self) -> list[int]:
        return [i for i, e in enumerate(self.edges) if e.label.mandatory]

    def incident(self) -> list[list[int]]:
        inc: list[list[int]] = [[] for _ in self.vertices]
        for i, e in enumerate(self.edges):
            inc[e.u].append(i)
            inc[e.v].append(i)
        return inc

    def other(self, edge: int, vertex: int) -> int:
        e = self.edges[edge]
        return e.v if e.u == vertex else e.u

    def find_vertex(self, p: ExactPoint) -> int:
        for i, q in enumerate(self.vertices):
            if q == p:
                return i
        raise KeyError(f"no vertex at {p}")

    def find_edge(self, p: ExactPoint, q: ExactPoint) -> int:
        a, b = self.find_vertex(p), self.find_vertex(q)
        for i, e in enumerate(self.edges):
            if {e.u, e.v} == {a, b}:
                return i
        raise KeyError(f"no edge {p} - {q}")

    def segment(self, i: int) -> tuple[ExactPoint, ExactPoint]:
        e = self.edges[i]
        return self.vertices[e.u], self.vertices[e.v]

    def with_labels(self, labels: dict[int, CreaseLabel]) -> CreasePattern:
        edges = [Edge(e.u, e.v, labels.get(i, e.label)) for i, e in enumerate(self.edges)]
        return CreasePattern(self.vertices, edges)

    def transformed(self, iso) -> CreasePattern:
        cp = CreasePattern([iso.apply(p) for p in self.vertices], self.edges)
        if iso.orientation < 0:
            # keep the boundary loop counterclockwise is not needed: faces are
            # traced from geometry, so only coordinates change
            pass
        return cp

    def canonical(self) -> tuple:
        """Order-independent exact fingerprint (used for equality of merged patterns)."""
        segs = []
        for e in self.edges:
            p, q = self.vertices[e.u], self.vertices[e.v]
            a, b = sorted((p, q), key=ExactPoint.key)
            segs.append((a.x.a, a.x.b, a.y.a, a.y.b, b.x.a, b.x.b, b.y.a, b.y.b, e.label.value))
        return tuple(sorted(segs))

    def __len__(self) -> int:
        return len(self.edges)

    def __repr__(self) -> str:
        return f"CreasePattern({len(self.vertices)} vertices, {len(self.edges)} edges)"

    # -- construction -------------------------------------------------
    @classmethod
    def from_segments(
        cls,
        segments,
        boundary: Sequence[ExactPoint] | None = None,
        override: bool = False,
        join: bool = False,
    ) -> CreasePattern:
        """Node a soup of labelled segments into a planar pattern.

        Segments are clipped to the convex ``boundary`` polygon (given
        counterclockwise), crossings become vertices, collinear overlaps of
        equal label are merged.  Overlaps with conflicting labels raise
        :class:`PatternError` unless ``override`` is set, in which case the
        segment listed last wins (like a later stroke drawn over an earlier one).
        With ``join`` set, collinear strokes of one label that merely touch
        become a single crease unless something else meets them there.
        """
        segs: list[tuple[ExactPoint, ExactPoint, CreaseLabel]] = []
        for p, q, label in segments:
            if boundary is not None:
                clipped = clip_segment(p, q, boundary)
                if clipped is None:
                    continue
                p, q = clipped
            if p == q:
                continue
            segs.append((p, q, label))
        if boundary is not None:
            n = len(boundary)
            for i in range(n):
                segs.append((boundary[i], boundary[(i + 1) % n], B))
        return _node_segments(segs, override, join)


def clip_segment(p: ExactPoint, q: ExactPoint, poly: Sequence[ExactPoint]):
    """Part of segment ``pq`` inside the convex ccw polygon ``poly`` (or None)."""
    lo, hi = ZERO, ONE
    d = q - p
    n = len(poly)
    for i in range(n):
        a, b = poly[i], poly[(i + 1) % n]
        e = b - a
        f0 = e.cross(p - a)
        f1 = e.cross(d)
        s1 = sign(f1)
        if s1 == 0:
            if sign(f0) < 0:
                return None
            continue
        t = -f0 / f1
        if s1 > 0:
            if t > lo:
                lo = t
        else:
            if t < hi:
                hi = t
        if lo >= hi:
            return None
    return p + d * lo, p + d * hi


def _line_key(p: ExactPoint, q: ExactPoint):
    k = direction_of(q - p)
    if k is None:
        raise PatternError(f"segment {p} - {q}: direction not a multiple of 15 degrees")
    k %= 12
    u = dir_vector(k)
    return k, u.cross(p)


def _node_segments(segs, override: bool = False, join: bool = False) -> CreasePattern:
    # resolve collinear overlaps per supporting line by painting elementary intervals
    by_line: dict = defaultdict(list)
    for order, (p, q, label) in enumerate(segs):
        key = _line_key(p, q)
        u = dir_vector(key[0])
        tp, tq = u.dot(p), u.dot(q)
        if tq < tp:
            p, q, tp, tq = q, p, tq, tp
        by_line[key].append((tp, tq, p, q, label, order))
    merged: list[tuple[ExactPoint, ExactPoint, CreaseLabel]] = []
    for key in sorted(by_line, key=lambda k: (k[0], _K(k[1]))):
        items = by_line[key]
        pts: dict = {}
        for tp, tq, p, q, _, _ in items:
            pts.setdefault(tp, p)
            pts.setdefault(tq, q)
        ts = sorted(pts, key=_K)
        pieces: list[list] = []  # [t0, t1, label]
        for t0, t1 in zip(ts, ts[1:]):
            cover = [it for it in items if it[0] <= t0 and it[1] >= t1]
            if not cover:
                continue
            labels = {it[4] for it in cover}
            if len(labels) > 1 and not override:
                a, b = sorted(l.name for l in labels)[:2]
                raise PatternError(f"collinear creases with labels {a} and {b} overlap")
            label = max(cover, key=lambda it: it[5])[4]
            if pieces and pieces[-1][1] == t0 and pieces[-1][2] is label and (join or any(
                it[4] is label and it[0] <= pieces[-1][0] and it[1] >= t1 for it in items
            )):
                pieces[-1][1] = t1
            else:
                pieces.append([t0, t1, label])
        merged.extend((pts[t0], pts[t1], label) for t0, t1, label in pieces)

    # split at mutual intersections
    cuts: list[list[ExactPoint]] = [[p, q] for p, q, _ in merged]
    for i, j in _candidate_pairs(merged):
        pi, qi, _ = merged[i]
        pj, qj, _ = merged[j]
        r = segment_intersect((pi, qi), (pj, qj))
        if r.kind == "point":
            cuts[i].append(r.point)
            cuts[j].append(r.point)
        elif r.kind == "overlap":
            cuts[i].extend(r.segment)
            cuts[j].extend(r.segment)
    index: dict[ExactPoint, int] = {}
    vertices: list[ExactPoint] = []

    def vid(p: ExactPoint) -> int:
        if p not in index:
            index[p] = len(vertices)
            vertices.append(p)
        return index[p]

    edge_set: dict[tuple[int, int], CreaseLabel] = {}
    for (p, q, label), pts in zip(merged, cuts):
        d = q - p
        uniq = {pt: d.dot(pt - p) for pt in pts}
        order = sorted(uniq, key=lambda pt: _K(uniq[pt]))
        for a, b in zip(order, order[1:]):
            ia, ib = vid(a), vid(b)
            key = (min(ia, ib), max(ia, ib))
            if key in edge_set and edge_set[key] is not label:
                raise PatternError("conflicting labels on a shared edge")
            edge_set[key] = label
    # deterministic vertex order: sort by coordinates
    order = sorted(range(len(vertices)), key=lambda i: vertices[i].key())
    remap = {old: new for new, old in enumerate(order)}
    verts = [vertices[i] for i in order]
    edges = sorted(
        (Edge(*sorted((remap[a], remap[b])), label) for (a, b), label in edge_set.items()),
        key=lambda e: (e.u, e.v),
    )
    return CreasePattern(verts, edges)


def _candidate_pairs(segs) -> list[tuple[int, int]]:
    """Index pairs whose float bounding boxes touch (sweep over x); exact tests follow."""
    eps = 1e-7
    boxes = []
    for k, (p, q, _) in enumerate(segs):
        (x0, y0), (x1, y1) = p.to_float(), q.to_float()
        boxes.append((min(x0, x1) - eps, max(x0, x1) + eps, min(y0, y1) - eps, max(y0, y1) + eps, k))
    boxes.sort()
    out = []
    for a in range(len(boxes)):
        xa0, xa1, ya0, ya1, i = boxes[a]
        for b in range(a + 1, len(boxes)):
            xb0, _, yb0, yb1, j = boxes[b]
            if xb0 > xa1:
                break
            if yb0 <= ya1 and ya0 <= yb1:
                out.append((min(i, j), max(i, j)))
    out.sort()
    return out


class _K:
    __slots__ = ("v",)

    def __init__(self, v: ExactScalar) -> None:
        self.v = v

    def __lt__(self, other: _K) -> bool:
        return sign(self.v - other.v) < 0

    def __eq__(self, other) -> bool:
        return self.v == other.v


# ---------------------------------------------------------------------------
# validation


def validate_pattern(cp: CreasePattern) -> list[str]:
    """List of well-formedness violations; empty when the pattern is valid."""
    problems: list[str] = []
    seen_v: dict[ExactPoint, int] = {}
    for i, p in enumerate(cp.vertices):
        if p in seen_v:
            problems.append(f"vertex {i} duplicates vertex {seen_v[p]}")
        else:
            seen_v[p] = i
    seen_e: dict[frozenset, int] = {}
    for i, e in enumerate(cp.edges):
        if e.u == e.v or cp.vertices[e.u] == cp.vertices[e.v]:
            problems.append(f"edge {i} has zero length")
            continue
        key = frozenset((e.u, e.v))
        if key in seen_e:
            problems.append(f"edge {i} duplicates edge {seen_e[key]}")
        seen_e[key] = i
        if cp.edge_dir(i) is None:
            problems.append(f"edge {i}: direction not a multiple of 15 degrees")
    for i in range(len(cp.edges)):
        ei = cp.edges[i]
        si = cp.segment(i)
        for j in range(i + 1, len(cp.edges)):
            ej = cp.edges[j]
            r = segment_intersect(si, cp.segment(j))
            if r.kind == "empty":
                continue
            if r.kind == "overlap":
                problems.append(f"edges {i} and {j} overlap")
                continue
            shared = {ei.u, ei.v} & {ej.u, ej.v}
            if not any(cp.vertices[s] == r.point for s in shared):
                problems.append(f"edges {i} and {j}: edges intersect off-vertex")
    # boundary must be one closed loop
    bdeg: dict[int, int] = defaultdict(int)
    badj: dict[int, list[int]] = defaultdict(list)
    for e in cp.edges:
        if e.label is B:
            bdeg[e.u] += 1
            bdeg[e.v] += 1
            badj[e.u].append(e.v)
            badj[e.v].append(e.u)
    if not bdeg:
        problems.append("open boundary: no boundary edges")
    elif any(d != 2 for d in bdeg.values()):
        problems.append("open boundary: boundary vertices must have exactly two boundary edges")
    else:
        start = next(iter(badj))
        seen = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in badj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        if len(seen) != len(bdeg):
            problems.append("open boundary: boundary is not a single loop")
    return problems


# ---------------------------------------------------------------------------
# selections and faces


class Selection:
    """A choice of active optional creases; mandatory creases are always active."""

    __slots__ = ("pattern", "active")

    def __init__(self, pattern: CreasePattern, active: Iterable[int] = ()) -> None:
        self.pattern = pattern
        self.active = frozenset(active)

    def is_active(self, edge: int) -> bool:
        label = self.pattern.edges[edge].label
        return label.mandatory or (label.optional and edge in self.active)

    def active_creases(self) -> list[int]:
        return [i for i in range(len(self.pattern.edges)) if self.is_active(i)]

    def mv(self) -> dict[int, str]:
        """Induced mountain/valley assignment on active creases."""
        return {i: self.pattern.edges[i].label.mv for i in self.active_creases()}

    def __eq__(self, other) -> bool:
        return isinstance(other, Selection) and other.pattern is self.pattern and other.active == self.active

    def __hash__(self) -> int:
        return hash((id(self.pattern), self.active))

    def __repr__(self) -> str:
        return f"Selection(active={sorted(self.active)})"


def make_selection(cp: CreasePattern, chosen: Iterable[int] = ()) -> Selection:
    chosen = list(chosen)
    for i in chosen:
        if not (0 <= i < len(cp.edges)) or not cp.edges[i].label.optional:
            raise NotOptional(f"edge {i} is not an optional crease")
    return Selection(cp, chosen)


@dataclass
class FaceComplex:
    pattern: CreasePattern
    selection: Selection
    faces: list[list[int]]  # ccw vertex cycles
    face_edges: list[list[int]]  # edge index per face side (parallel to faces)
    adjacency: list[tuple[int, int, int]]  # (face, face, crease edge)
    orientation: list[int]
    anchor_face: int = 0
    edge_faces: dict[int, tuple[int, ...]] = field(default_factory=dict)

    def polygon(self, f: int) -> list[ExactPoint]:
        return [self.pattern.vertices[v] for v in self.faces[f]]

    def face_of_edge_side(self, edge: int) -> tuple[int, ...]:
        return self.edge_faces[edge]

    def neighbours(self) -> list[list[tuple[int, int]]]:
        nb: list[list[tuple[int, int]]] = [[] for _ in self.faces]
        for a, b, e in self.adjacency:
            nb[a].append((b, e))
            nb[b].append((a, e))
        return nb

    def euler_characteristic(self) -> int:
        used_v = {v for f in self.faces for v in f}
        used_e = {e for fe in self.face_edges for e in fe}
        # +1 for the outer face
        return len(used_v) - len(used_e) + len(self.faces) + 1


def point_in_convex(p: ExactPoint, poly: Sequence[ExactPoint], strict: bool = False) -> bool:
    n = len(poly)
    for i in range(n):
        s = sign((poly[(i + 1) % n] - poly[i]).cross(p - poly[i]))
        if s < 0 or (strict and s == 0):
            return False
    return True


def active_degree_problems(cp: CreasePattern, sel: Selection) -> None:
    inc = cp.incident()
    bverts = cp.boundary_vertices
    for v, edges in enumerate(inc):
        if v in bverts:
            continue
        deg = sum(1 for e in edges if sel.is_active(e))
        if deg == 1:
            raise DanglingCrease(v, deg)
        if deg % 2:
            raise OddDegreeVertex(v, deg)


def build_faces(
    cp: CreasePattern, sel: Selection | None = None, anchor: ExactPoint | None = None
) -> FaceComplex:
    """Faces of the subdivision cut by the active creases and the boundary."""
    if sel is None:
        sel = Selection(cp)
    active_degree_problems(cp, sel)
    used = [i for i, e in enumerate(cp.edges) if e.label is B or sel.is_active(i)]
    out: dict[int, list[tuple[int, int]]] = defaultdict(list)  # vertex -> [(dir, edge)]
    for i in used:
        e = cp.edges[i]
        out[e.u].append((cp.edge_dir(i, e.u), i))
        out[e.v].append((cp.edge_dir(i, e.v), i))
    for v in out:
        out[v].sort()
    pos: dict[tuple[int, int], int] = {}
    for v, lst in out.items():
        for idx, (_, i) in enumerate(lst):
            pos[(v, i)] = idx

    visited: set[tuple[int, int]] = set()  # (edge, from_vertex)
    faces: list[list[int]] = []
    face_edges: list[list[int]] = []
    for i in used:
        e = cp.edges[i]
        for start in ((e.u, i), (e.v, i)):
            if start in visited:
                continue
            cycle_v: list[int] = []
            cycle_e: list[int] = []
            v, ei = start
            while (v, ei) not in visited:
                visited.add((v, ei))
                cycle_v.append(v)
                cycle_e.append(ei)
                w = cp.other(ei, v)
                lst = out[w]
                # next edge clockwise from the reversed edge keeps the face on the left
                j = pos[(w, ei)]
                ei = lst[(j - 1) % len(lst)][1]
                v = w
            area2 = ZERO
            pts = [cp.vertices[x] for x in cycle_v]
            for k in range(len(pts)):
                area2 = area2 + pts[k].cross(pts[(k + 1) % len(pts)])
            if sign(area2) > 0:
                faces.append(cycle_v)
                face_edges.append(cycle_e)
    # canonical order: by smallest vertex, rotated to start there
    canon = []
    for fv, fe in zip(faces, face_edges):
        k = fv.index(min(fv))
        canon.append((fv[k:] + fv[:k], fe[k:] + fe[:k]))
    canon.sort()
    faces = [c[0] for c in canon]
    face_edges = [c[1] for c in canon]

    edge_faces: dict[int, list[int]] = defaultdict(list)
    for f, fe in enumerate(face_edges):
        for i in fe:
            edge_faces[i].append(f)
    adjacency = []
    for i in sorted(edge_faces):
        fs = edge_faces[i]
        if cp.edges[i].label is B:
            continue
        if len(fs) != 2 or fs[0] == fs[1]:
            raise DanglingCrease(cp.edges[i].u, 1)
        adjacency.append((fs[0], fs[1], i))
    # holes (creases not attached to the boundary) leave the face count short
    n_v = len({v for f in faces for v in f})
    n_e = len(used)
    if n_v - n_e + len(faces) + 1 != 2:
        raise DisconnectedCreases("active creases are not connected to the boundary")

    anchor_face = 0
    if anchor is not None:
        anchor_face = next(
            (f for f in range(len(faces)) if point_in_convex(anchor, [cp.vertices[v] for v in faces[f]], strict=True)),
            None,
        )
        if anchor_face is None:
            raise PatternError("anchor point is not inside any face")
    orientation = [0] * len(faces)
    orientation[anchor_face] = 1
    nb: list[list[int]] = [[] for _ in faces]
    for a, b, _ in adjacency:
        nb[a].append(b)
        nb[b].append(a)
    queue = deque([anchor_face])
    while queue:
        f = queue.popleft()
        for g in nb[f]:
            if orientation[g] == 0:
                orientation[g] = -orientation[f]
                queue.append(g)
            elif orientation[g] == orientation[f]:
                raise PatternError("faces are not 2-colorable")
    if any(o == 0 for o in orientation):
        raise DisconnectedCreases("face adjacency graph is disconnected")
    return FaceComplex(
        pattern=cp,
        selection=sel,
        faces=faces,
        face_edges=face_edges,
        adjacency=adjacency,
        orientation=orientation,
        anchor_face=anchor_face,
        edge_faces={k: tuple(v) for k, v in edge_faces.items()},
    )


def dodecagon(apothem=1, center: ExactPoint | None = None) -> list[ExactPoint]:
    """Regular 12-gon (ccw) whose edge normals point at multiples of 30 degrees.

    Its corners sit on the odd 15-degree directions, so every Dir15 ray from
    the center leaves through an edge midpoint or a corner.
    """
    c = center if center is not None else ExactPoint(0, 0)
    return [c + dir_vector(2 * m + 1) * apothem for m in range(12)]

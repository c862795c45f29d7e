"""Global flat-foldability: folded map, superposition net and layer-order search."""
from __future__ import annotations

import enum
from fractions import Fraction
from functools import cmp_to_key
from collections import defaultdict, deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from .exact import HALF, ExactPoint, Isometry, ZERO, direction_of, dir_vector, reflect_across, sign
from .local import star_at, vertex_locally_foldable
from .pattern import (
    CreasePattern,
    FaceComplex,
    PatternError,
    Selection,
    build_faces,
    clip_segment,
    validate_pattern,
)
from .sat import BudgetExceeded, SatSolver

DEFAULT_BUDGET = 10**7

__all__ = [
    "BudgetExceeded",
    "CapExceeded",
    "FoldResult",
    "FoldedState",
    "Inconsistent",
    "Infeasible",
    "LayerOrder",
    "SNet",
    "Verdict",
    "build_snet",
    "enumerate_layer_orders",
    "fold_map",
    "globally_flat_foldable",
    "solve_layers",
    "validate_layer_order",
]


class Inconsistent(ValueError):
    """Reflections around some cycle of faces do not compose to the identity."""


class CapExceeded(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# folded state


@dataclass
class FoldedState:
    faces: FaceComplex
    isometries: list[Isometry]

    @property
    def orientation(self) -> list[int]:
        return self.faces.orientation

    def folded_polygon(self, f: int) -> list[ExactPoint]:
        iso = self.isometries[f]
        poly = [iso.apply(p) for p in self.faces.polygon(f)]
        if iso.orientation < 0:
            poly.reverse()
        return poly

    def folded_edge(self, edge: int) -> tuple[ExactPoint, ExactPoint]:
        f = self.faces.edge_faces[edge][0]
        p, q = self.faces.pattern.segment(edge)
        iso = self.isometries[f]
        return iso.apply(p), iso.apply(q)


def fold_map(fc: FaceComplex) -> FoldedState:
    cp = fc.pattern
    anchor = fc.anchor_face
    iso: list[Isometry | None] = [None] * len(fc.faces)
    iso[anchor] = Isometry.identity()
    refl: dict[int, Isometry] = {}
    for _, _, e in fc.adjacency:
        p, _ = cp.segment(e)
        refl[e] = reflect_across(p, cp.edge_dir(e))
    nb = fc.neighbours()
    queue = deque([anchor])
    while queue:
        f = queue.popleft()
        for g, e in nb[f]:
            cand = iso[f] @ refl[e]
            if iso[g] is None:
                iso[g] = cand
                queue.append(g)
            elif iso[g] != cand:
                raise Inconsistent(f"faces {f} and {g} disagree across edge {e}")
    return FoldedState(fc, iso)


# ---------------------------------------------------------------------------
# superposition net


def _strip_collinear(poly: list[ExactPoint]) -> list[ExactPoint]:
    out = []
    n = len(poly)
    for i in range(n):
        a, b, c = poly[i - 1], poly[i], poly[(i + 1) % n]
        if sign((b - a).cross(c - b)) != 0:
            out.append(b)
    return out


def _cut(poly: list[ExactPoint], p: ExactPoint, u: ExactPoint):
    """Split a convex polygon by the line through p with direction u."""
    s = [u.cross(v - p) for v in poly]
    sg = [sign(x) for x in s]
    if all(x >= 0 for x in sg) or all(x <= 0 for x in sg):
        return None
    left: list[ExactPoint] = []
    right: list[ExactPoint] = []
    n = len(poly)
    for i in range(n):
        j = (i + 1) % n
        v = poly[i]
        if sg[i] >= 0:
            left.append(v)
        if sg[i] <= 0:
            right.append(v)
        if sg[i] * sg[j] < 0:
            w = v + (poly[j] - v) * (s[i] / (s[i] - s[j]))
            left.append(w)
            right.append(w)
    return left, right


def _line_key(p: ExactPoint, q: ExactPoint):
    k = direction_of(q - p) % 12
    return k, dir_vector(k).cross(p)


def _cell_sort_key(cell: frozenset) -> tuple:
    return tuple(sorted((pt.x.a, pt.x.b, pt.y.a, pt.y.b) for pt in cell))


@dataclass
class SNet:
    """Cells of the folded overlap arrangement.

    ``cells[i]`` is the folded convex polygon of cell ``i``; ``cell_faces[i]``
    the faces whose folded image covers it.  Cells are obtained by cutting
    each folded face by every folded edge line, so each cell pulls back to a
    piece of every face in ``cell_faces[i]``.
    """

    state: FoldedState
    cells: list[list[ExactPoint]]
    cell_faces: list[tuple[int, ...]]
    face_cells: list[list[int]] = field(default_factory=list)

    def overlap_pairs(self) -> set[tuple[int, int]]:
        pairs = set()
        for fs in self.cell_faces:
            pairs.update(combinations(fs, 2))
        return pairs

    def overlap_classes(self) -> list[tuple[int, ...]]:
        """Distinct face sets of cells, maximal first."""
        sets = sorted(set(self.cell_faces), key=lambda s: (-len(s), s))
        return sets


def build_snet(fs: FoldedState) -> SNet:
    fc = fs.faces
    lines: dict = {}
    polys = [fs.folded_polygon(f) for f in range(len(fc.faces))]
    for poly in polys:
        n = len(poly)
        for i in range(n):
            a, b = poly[i], poly[(i + 1) % n]
            key = _line_key(a, b)
            if key not in lines:
                lines[key] = (a, b - a)
    ordered_lines = [lines[k] for k in sorted(lines, key=lambda k: (k[0], k[1].a, k[1].b))]
    cells: dict[frozenset, list] = {}
    for f, poly in enumerate(polys):
        pieces = [poly]
        for p, u in ordered_lines:
            nxt = []
            for piece in pieces:
                r = _cut(piece, p, u)
                if r is None:
                    nxt.append(piece)
                else:
                    nxt.extend(r)
            pieces = nxt
        for piece in pieces:
            piece = _strip_collinear(piece)
            key = frozenset(piece)
            if key not in cells:
                cells[key] = [piece, []]
            cells[key][1].append(f)
    keys = sorted(cells, key=_cell_sort_key)
    cell_polys = [cells[k][0] for k in keys]
    cell_faces = [tuple(sorted(cells[k][1])) for k in keys]
    face_cells: list[list[int]] = [[] for _ in fc.faces]
    for i, fset in enumerate(cell_faces):
        for f in fset:
            face_cells[f].append(i)
    return SNet(fs, cell_polys, cell_faces, face_cells)


# ---------------------------------------------------------------------------
# layer constraints


def _strictly_inside(p: ExactPoint, poly: Sequence[ExactPoint]) -> bool:
    n = len(poly)
    return all(sign((poly[(i + 1) % n] - poly[i]).cross(p - poly[i])) > 0 for i in range(n))


def _crosses_interior(a: ExactPoint, b: ExactPoint, poly: Sequence[ExactPoint]) -> bool:
    clipped = clip_segment(a, b, poly)
    if clipped is None:
        return False
    p, q = clipped
    if p == q:
        return False
    return _strictly_inside((p + q) * HALF, poly)


def _side(poly: Sequence[ExactPoint], p: ExactPoint, u: ExactPoint) -> int:
    """Side of a line on which a convex polygon lies (it touches the line)."""
    for v in poly:
        s = sign(u.cross(v - p))
        if s:
            return s
    return 0


@dataclass
class Constraints:
    pairs: list[tuple[int, int]]  # overlapping face pairs (i < j)
    forced: list[tuple[int, int]]  # (upper, lower) from crease labels
    tortilla: list[tuple[int, int, int]]  # face c never between a and b
    taco_taco: list[tuple[int, int, int, int]]  # (a, b) and (c, d) do not interleave
    triples: list[tuple[int, int, int]]


def layer_constraints(fs: FoldedState, net: SNet) -> Constraints:
    fc = fs.faces
    cp = fc.pattern
    pairs = sorted(net.overlap_pairs())
    mv = fc.selection.mv()
    polys = [fs.folded_polygon(f) for f in range(len(fc.faces))]
    forced = []
    for a, b, e in fc.adjacency:
        up = a if fc.orientation[a] == 1 else b
        other = b if up == a else a
        if mv[e] == "V":
            forced.append((other, up))
        else:
            forced.append((up, other))
    creases = [(a, b, e, fs.folded_edge(e)) for a, b, e in fc.adjacency]
    tortilla = []
    for a, b, e, (p, q) in creases:
        for c in range(len(fc.faces)):
            if c in (a, b):
                continue
            if _crosses_interior(p, q, polys[c]):
                tortilla.append((c, a, b))
    taco_taco = []
    for (a, b, e1, (p1, q1)), (c, d, e2, (p2, q2)) in combinations(creases, 2):
        if len({a, b, c, d}) < 4:
            continue
        u = q1 - p1
        if sign(u.cross(q2 - p2)) or sign(u.cross(p2 - p1)):
            continue
        # collinear: need positive-length overlap
        t = [u.dot(x - p1) for x in (p1, q1, p2, q2)]
        lo = max(min(t[0], t[1]), min(t[2], t[3]))
        hi = min(max(t[0], t[1]), max(t[2], t[3]))
        if not lo < hi:
            continue
        if _side(polys[a], p1, u) != _side(polys[c], p1, u):
            continue
        taco_taco.append((a, b, c, d))
    triples = set()
    for fset in net.cell_faces:
        if len(fset) >= 3:
            triples.update(combinations(fset, 3))
    return Constraints(pairs, forced, tortilla, taco_taco, sorted(triples))


# ---------------------------------------------------------------------------
# solving


class Verdict(enum.Enum):
    YES = "Yes"
    NO = "No"
    UNKNOWN = "Unknown"


@dataclass
class LayerOrder:
    """Pairwise stacking of overlapping faces (``above[(i, j)]`` for i < j)."""

    state: FoldedState
    net: SNet
    above: dict[tuple[int, int], bool]

    def is_above(self, i: int, j: int) -> bool:
        return self.above[(i, j)] if i < j else not self.above[(j, i)]

    def stack(self, faces: Sequence[int]) -> list[int]:
        """Faces of one overlap class from top to bottom."""
        return sorted(faces, key=lambda f: -sum(1 for g in faces if g != f and self.is_above(f, g)))

    def classes(self) -> list[tuple[int, ...]]:
        return [tuple(self.stack(c)) for c in self.net.overlap_classes()]


class Infeasible(Exception):
    pass


def _encode(cons: Constraints):
    var = {p: i + 1 for i, p in enumerate(cons.pairs)}

    def lit(i: int, j: int) -> int:
        """Literal for 'i above j'."""
        key = (min(i, j), max(i, j))
        if key not in var:
            var[key] = len(var) + 1
        return var[key] if i < j else -var[key]

    clauses: list[list[int]] = []
    for u, l in cons.forced:
        clauses.append([lit(u, l)])
    for c, a, b in cons.tortilla:
        x, y = lit(c, a), lit(c, b)
        clauses.append([-x, y])
        clauses.append([x, -y])
    for a, b, c, d in cons.taco_taco:
        xs = [lit(a, c), lit(a, d), lit(b, c), lit(b, d)]
        for bits in range(16):
            if bin(bits).count("1") % 2:
                # forbid assignments with odd parity
                clauses.append([-x if bits >> k & 1 else x for k, x in enumerate(xs)])
    for i, j, k in cons.triples:
        clauses.append([-lit(i, j), -lit(j, k), -lit(k, i)])
        clauses.append([-lit(j, i), -lit(k, j), -lit(i, k)])
    return var, clauses


def _prepare(fs: FoldedState, net: SNet):
    cons = layer_constraints(fs, net)
    var, clauses = _encode(cons)
    return cons, var, SatSolver(len(var), clauses)


def solve_layers(fs: FoldedState, net: SNet, budget: int = DEFAULT_BUDGET) -> LayerOrder:
    """A valid layer order; raises Infeasible or BudgetExceeded."""
    cons, var, solver = _prepare(fs, net)
    model = solver.solve(budget)
    if model is None:
        raise Infeasible(f"no layer order ({solver.nodes} nodes)")
    return LayerOrder(fs, net, {p: model[v] for p, v in var.items()})


def enumerate_layer_orders(
    fs: FoldedState, net: SNet, cap: int = 1000, budget: int = DEFAULT_BUDGET
) -> list[LayerOrder]:
    cons, var, solver = _prepare(fs, net)
    out = []
    for model in solver.iter_models(budget):
        if len(out) >= cap:
            raise CapExceeded(f"more than {cap} layer orders")
        out.append(LayerOrder(fs, net, {p: model[v] for p, v in var.items()}))
    out.sort(key=lambda lo: tuple(not lo.above[p] for p in cons.pairs))
    return out


# ---------------------------------------------------------------------------
# independent validation


def validate_layer_order(order: LayerOrder) -> list[str]:
    """Re-check an order by brute force over creases, faces and overlap cells.

    This path does not reuse the clause encoding: it samples midpoints of
    folded crease pieces and cell interiors directly.
    """
    fs, net = order.state, order.net
    fc = fs.faces
    polys = [fs.folded_polygon(f) for f in range(len(fc.faces))]
    mv = fc.selection.mv()
    problems = []
    # every cell: the faces covering it form a strict total order
    for cell in net.cells:
        centroid = _centroid(cell)
        covering = [f for f in range(len(polys)) if _strictly_inside(centroid, polys[f])]
        for i, j, k in combinations(covering, 3):
            for x, y, z in ((i, j, k), (j, k, i), (k, i, j), (i, k, j), (k, j, i), (j, i, k)):
                if order.is_above(x, y) and order.is_above(y, z) and not order.is_above(x, z):
                    problems.append(f"transitivity fails on faces {x},{y},{z}")
    # crease direction
    for a, b, e in fc.adjacency:
        up = a if fc.orientation[a] == 1 else b
        other = b if up == a else a
        want_up_above = mv[e] == "M"
        if order.is_above(up, other) != want_up_above:
            problems.append(f"crease {e} stacks against its {mv[e]} label")
    # taco-tortilla and taco-taco via sample points on folded creases
    lines = {}
    for a, b, e in fc.adjacency:
        p, q = fs.folded_edge(e)
        lines[e] = (p, q)
    cut_lines = []
    for poly in polys:
        for i in range(len(poly)):
            cut_lines.append((poly[i], poly[(i + 1) % len(poly)] - poly[i]))
    samples: dict[int, list[ExactPoint]] = {}
    for e, (p, q) in lines.items():
        u = q - p
        ts = {ZERO, ZERO + 1}
        for c, w in cut_lines:
            den = u.cross(w)
            if sign(den):
                t = (c - p).cross(w) / den
                if sign(t) > 0 and sign(t - 1) < 0:
                    ts.add(t)
        ts = sorted(ts, key=cmp_to_key(lambda s, t: sign(s - t)))
        samples[e] = [p + u * ((t0 + t1) * HALF) for t0, t1 in zip(ts, ts[1:])]
    for a, b, e in fc.adjacency:
        for m in samples[e]:
            for c in range(len(polys)):
                if c in (a, b) or not _strictly_inside(m, polys[c]):
                    continue
                if order.is_above(c, a) != order.is_above(c, b):
                    problems.append(f"face {c} sits inside the fold at crease {e}")
    for (a, b, e1), (c, d, e2) in combinations(fc.adjacency, 2):
        if len({a, b, c, d}) < 4:
            continue
        p2, q2 = lines[e2]
        shared = [m for m in samples[e1] if _on_open_segment(m, p2, q2)]
        if not shared:
            continue
        p1, q1 = lines[e1]
        u = q1 - p1
        if _side(polys[a], p1, u) != _side(polys[c], p1, u):
            continue
        inside = lambda x, lo, hi: order.is_above(lo, x) != order.is_above(hi, x)  # noqa: E731
        if inside(c, a, b) != inside(d, a, b):
            problems.append(f"creases {e1} and {e2} interleave")
    return sorted(set(problems))


def _on_open_segment(m: ExactPoint, p: ExactPoint, q: ExactPoint) -> bool:
    d = q - p
    if sign(d.cross(m - p)):
        return False
    t = d.dot(m - p)
    return sign(t) > 0 and sign(t - d.dot(d)) < 0


def _centroid(poly: Sequence[ExactPoint]) -> ExactPoint:
    s = poly[0]
    for p in poly[1:]:
        s = s + p
    return s * Fraction(1, len(poly))


# ---------------------------------------------------------------------------
# pipeline


@dataclass
class FoldResult:
    verdict: Verdict
    order: LayerOrder | None = None
    reason: str = ""
    nodes: int = 0

    def __bool__(self) -> bool:
        return self.verdict is Verdict.YES


def _checked(cp: CreasePattern) -> list[str]:
    cached = getattr(cp, "_validation", None)
    if cached is None:
        cached = validate_pattern(cp)
        cp._validation = cached
    return cached


def locally_flat_foldable(cp: CreasePattern, sel: Selection) -> str:
    """Empty string when every interior vertex passes; otherwise a reason."""
    inc = cp.incident()
    bverts = cp.boundary_vertices
    for v in range(len(cp.vertices)):
        if v in bverts:
            continue
        star = star_at(cp, sel, v, inc)
        if not vertex_locally_foldable(star):
            return f"vertex {v} at {cp.vertices[v]} is not locally flat-foldable"
    return ""


def globally_flat_foldable(
    cp: CreasePattern,
    sel: Selection | None = None,
    budget: int = DEFAULT_BUDGET,
    anchor: ExactPoint | None = None,
    local_filter: bool = True,
) -> FoldResult:
    """Three-valued global flat-foldability of the selection.

    ``local_filter`` runs the per-vertex checks first; turning it off leaves
    the decision entirely to the layer search (used to cross-check the two).
    """
    if sel is None:
        sel = Selection(cp)
    problems = _checked(cp)
    if problems:
        return FoldResult(Verdict.NO, reason="invalid pattern: " + problems[0])
    try:
        fc = build_faces(cp, sel, anchor)
    except PatternError as exc:
        return FoldResult(Verdict.NO, reason=str(exc))
    reason = locally_flat_foldable(cp, sel) if local_filter else ""
    if reason:
        return FoldResult(Verdict.NO, reason=reason)
    try:
        fs = fold_map(fc)
    except Inconsistent as exc:
        return FoldResult(Verdict.NO, reason=str(exc))
    net = build_snet(fs)
    try:
        order = solve_layers(fs, net, budget)
    except Infeasible as exc:
        return FoldResult(Verdict.NO, reason=str(exc))
    except BudgetExceeded as exc:
        return FoldResult(Verdict.UNKNOWN, reason=str(exc), nodes=exc.nodes)
    return FoldResult(Verdict.YES, order=order)


def fold_pattern(cp: CreasePattern, sel: Selection | None = None, anchor: ExactPoint | None = None):
    """Faces, folded state and s-net in one call (raises on failure)."""
    fc = build_faces(cp, sel, anchor)
    fs = fold_map(fc)
    return fs, build_snet(fs)

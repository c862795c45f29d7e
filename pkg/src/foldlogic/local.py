"""Necessary local conditions: Kawasaki, Maekawa, single-vertex stacking, Justin."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .exact import ExactPoint, ORIGIN, dir_vector, sector
from .pattern import CreasePattern, Selection

FULL_TURN = 24
HALF_TURN = 12


class OddDegree(ValueError):
    pass


class OddCrossingCount(ValueError):
    pass


@dataclass(frozen=True)
class VertexStar:
    """Creases around one vertex, ccw by direction; ``mv`` is "M", "V" or None (inactive)."""

    center: ExactPoint
    creases: tuple[tuple[int, str | None], ...]

    @classmethod
    def from_mapping(cls, creases: Mapping[int, str | None], center: ExactPoint = ORIGIN) -> VertexStar:
        """Build from {Dir15 k: mv}."""
        return cls(center, tuple(sorted((k % FULL_TURN, mv) for k, mv in creases.items())))

    @classmethod
    def from_degrees(cls, creases: Mapping[int, str | None], center: ExactPoint = ORIGIN) -> VertexStar:
        out = {}
        for deg, mv in creases.items():
            if deg % 15:
                raise ValueError(f"{deg} is not a multiple of 15 degrees")
            out[(deg // 15) % FULL_TURN] = mv
        return cls.from_mapping(out, center)

    @property
    def active(self) -> list[tuple[int, str]]:
        return [(k, mv) for k, mv in self.creases if mv is not None]

    @property
    def sectors(self) -> list[int]:
        act = self.active
        n = len(act)
        if n == 0:
            return [FULL_TURN]
        return [sector(act[i][0], act[(i + 1) % n][0]) for i in range(n)]

    @property
    def degree(self) -> int:
        return len(self.active)


def star_at(cp: CreasePattern, sel: Selection, vertex: int, inc: Sequence[Sequence[int]] | None = None) -> VertexStar:
    if inc is None:
        inc = cp.incident()
    creases = []
    for e in inc[vertex]:
        label = cp.edges[e].label
        if not label.is_crease:
            continue
        mv = label.mv if sel.is_active(e) else None
        creases.append((cp.edge_dir(e, vertex), mv))
    creases.sort(key=lambda c: (c[0], c[1] is None))
    return VertexStar(cp.vertices[vertex], tuple(creases))


def kawasaki_check(star: VertexStar) -> bool:
    n = star.degree
    if n % 2:
        raise OddDegree(f"{n} active creases")
    if n == 0:
        return True
    return sum(star.sectors[0::2]) == HALF_TURN


def maekawa_check(star: VertexStar) -> bool:
    mvs = [mv for _, mv in star.active]
    return abs(mvs.count("M") - mvs.count("V")) == 2


def single_vertex_foldable(star: VertexStar) -> bool:
    """Exhaustive search for a stacking of the sectors of one flat-folded vertex.

    Sectors are laid out on the circle of folded directions, the mountain
    and valley labels fix the order of neighbouring sectors, and the taco
    conditions are checked on every triple/quadruple whose relative order is
    already decided.
    """
    act = star.active
    n = len(act)
    if n == 0:
        return True
    if n % 2:
        return False
    secs = star.sectors
    # folded direction of every crease, walking ccw and flipping at each crease
    pos = [0] * (n + 1)
    for i in range(n):
        pos[i + 1] = pos[i] + (secs[i] if i % 2 == 0 else -secs[i])
    if pos[n] % FULL_TURN:
        return False  # the sheet does not close up around the vertex
    pos = [p % FULL_TURN for p in pos[:n]]

    def side(i: int) -> int:  # direction in which sector i leaves crease i
        return 1 if i % 2 == 0 else -1

    def strictly_inside(y: int, i: int) -> bool:
        t = ((y - pos[i]) * side(i)) % FULL_TURN
        return 0 < t < secs[i]

    above: list[tuple[int, int]] = []  # (upper, lower) between sector indices
    for j in range(n):
        a, b = (j - 1) % n, j
        up = a if a % 2 == 0 else b  # sector with orientation +1
        other = b if up == a else a
        if act[j][1] == "V":
            above.append((other, up))
        else:
            above.append((up, other))
    tortillas: list[tuple[int, int, int]] = []
    for j in range(n):
        a, b = (j - 1) % n, j
        for k in range(n):
            if k not in (a, b) and strictly_inside(pos[j], k):
                tortillas.append((k, a, b))
    tacos: list[tuple[int, int, int, int]] = []
    for j1, j2 in combinations(range(n), 2):
        if pos[j1] == pos[j2] and side(j1) == side(j2):
            tacos.append(((j1 - 1) % n, j1, (j2 - 1) % n, j2))

    level = [-1] * n  # 0 is top
    watch: list[list[tuple]] = [[] for _ in range(n)]
    for c in above:
        for s in c:
            watch[s].append(("a", c))
    for c in tortillas:
        for s in c:
            watch[s].append(("t", c))
    for c in tacos:
        for s in c:
            watch[s].append(("q", c))

    def rank(s: int, depth: int) -> int:
        return level[s] if level[s] >= 0 else depth

    def ok(s: int, depth: int) -> bool:
        for kind, c in watch[s]:
            unplaced = sum(1 for x in c if level[x] < 0)
            if kind == "a":
                if unplaced == 0 and level[c[0]] > level[c[1]]:
                    return False
                if unplaced == 1 and level[c[0]] < 0:
                    return False
                continue
            if unplaced > 1:
                continue
            r = [rank(x, depth) for x in c]
            if kind == "t":
                k, a, b = r
                if min(a, b) < k < max(a, b):
                    return False
            else:
                p, q, u, v = r
                lo, hi = min(p, q), max(p, q)
                if (lo < u < hi) != (lo < v < hi):
                    return False
        return True

    def place(depth: int) -> bool:
        if depth == n:
            return True
        for s in range(n):
            if level[s] >= 0:
                continue
            level[s] = depth
            if ok(s, depth + 1) and place(depth + 1):
                return True
            level[s] = -1
        return False

    return place(0)


def vertex_locally_foldable(star: VertexStar) -> bool:
    """Even degree, Kawasaki, Maekawa and a valid sector stacking."""
    n = star.degree
    if n == 0:
        return True
    if n % 2:
        return False
    return kawasaki_check(star) and maekawa_check(star) and single_vertex_foldable(star)


@dataclass(frozen=True)
class LoopCrossing:
    """Crossings of a closed loop: (mv of crossed crease, angle in 15 degree units to the next crease)."""

    crossings: tuple[tuple[str, int], ...]

    @classmethod
    def around(cls, star: VertexStar) -> LoopCrossing:
        return cls(tuple((mv, s) for (_, mv), s in zip(star.active, star.sectors)))


def justin_check(loop: LoopCrossing | Iterable[tuple[str, int]]) -> bool:
    cr = loop.crossings if isinstance(loop, LoopCrossing) else tuple(loop)
    if len(cr) % 2:
        raise OddCrossingCount(f"{len(cr)} crossings")
    if not cr:
        return True
    m = sum(1 for mv, _ in cr if mv == "M")
    v = len(cr) - m
    target = ((m - v) // 2 * HALF_TURN) % FULL_TURN
    odd = sum(a for _, a in cr[0::2]) % FULL_TURN
    even = sum(a for _, a in cr[1::2]) % FULL_TURN
    return odd == even == target


def gadget_angle_condition(angles: Sequence[int]) -> bool:
    """No nonempty proper subset of the wire gaps sums to a multiple of a half turn."""
    n = len(angles)
    for r in range(1, n):
        for sub in combinations(angles, r):
            if sum(sub) % HALF_TURN == 0:
                return False
    return True


@dataclass(frozen=True)
class WireCreases:
    """Edge indices of one wire: its mountain and its left/right valleys (relative to travel)."""

    mountain: tuple[int, ...]
    left: tuple[int, ...]
    right: tuple[int, ...]


def wire_single_valley(sel: Selection, wire: WireCreases) -> bool:
    left = any(sel.is_active(e) for e in wire.left)
    right = any(sel.is_active(e) for e in wire.right)
    return left != right


def star_pattern(star: VertexStar) -> tuple[CreasePattern, Selection]:
    """The star as a small disk pattern with every listed crease mandatory."""
    from .pattern import CreaseLabel, dodecagon

    segs = []
    for k, mv in star.active:
        label = CreaseLabel.MOUNTAIN if mv == "M" else CreaseLabel.VALLEY
        segs.append((star.center, star.center + dir_vector(k) * 2, label))
    cp = CreasePattern.from_segments(segs, dodecagon(1, star.center))
    return cp, Selection(cp)

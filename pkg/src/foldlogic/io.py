"""FOLD files with an exact sidecar, and SVG drawings of crease patterns.

FOLD only knows floats, so :func:`to_fold` also writes ``"cp:exact_coords"``
(each coordinate as ``"p/q+r/s*sqrt3"``) and ``"cp:optional"`` (one boolean
per edge).  Files from other tools lack the sidecar; their floats are snapped
back onto Q(sqrt3) when a value with small denominators lies within
``SNAP_TOL``.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence
from xml.sax.saxutils import escape

from .exact import ExactPoint, ExactScalar, format_scalar, parse_scalar
from .pattern import CreaseLabel, CreasePattern, Edge, Selection

SNAP_TOL = 1e-9
SNAP_DENOMINATOR = 24  # common denominator for both parts when snapping floats

_TO_LABEL = {
    ("M", False): CreaseLabel.MOUNTAIN,
    ("V", False): CreaseLabel.VALLEY,
    ("M", True): CreaseLabel.MOUNTAIN_OPTIONAL,
    ("V", True): CreaseLabel.VALLEY_OPTIONAL,
    ("B", False): CreaseLabel.BOUNDARY,
}


class ParseError(ValueError):
    pass


class SnapError(ParseError):
    pass


# ---------------------------------------------------------------------------
# FOLD


def snap(value: float, tol: float = SNAP_TOL, denominator: int = SNAP_DENOMINATOR) -> ExactScalar:
    """Nearest ``(A + B*sqrt3) / denominator`` within ``tol``, preferring small ``|B|``.

    Any float is close to some ``A + B*sqrt3`` once ``B`` is large enough, so
    the search stops at ``|B| / denominator <= 16 + |value| / sqrt3``.
    """
    if not math.isfinite(value):
        raise SnapError(f"coordinate {value!r} is not finite")
    target = value * denominator
    r3 = math.sqrt(3)
    # the two parts may nearly cancel, so allow |b| somewhat beyond |value|/sqrt3
    limit = int(abs(target) / r3) + 16 * denominator
    for mag in range(limit + 1):
        for b in ((mag, -mag) if mag else (0,)):
            a = round(target - b * r3)
            cand = ExactScalar(a, b) / denominator
            if abs(float(cand) - value) <= tol:
                return cand
    raise SnapError(f"coordinate {value!r} is not within {tol} of any lattice value")


def to_fold(cp: CreasePattern, creator: str = "foldlogic") -> dict:
    return {
        "file_spec": 1.1,
        "file_creator": creator,
        "file_classes": ["singleModel"],
        "frame_classes": ["creasePattern"],
        "vertices_coords": [list(p.to_float()) for p in cp.vertices],
        "edges_vertices": [[e.u, e.v] for e in cp.edges],
        "edges_assignment": [e.label.mv or "B" for e in cp.edges],
        "cp:exact_coords": [[format_scalar(p.x), format_scalar(p.y)] for p in cp.vertices],
        "cp:optional": [e.label.optional for e in cp.edges],
    }


def _list(doc: dict, key: str, n: int | None = None) -> list:
    value = doc.get(key)
    if not isinstance(value, list):
        raise ParseError(f"{key!r} is missing or not a list")
    if n is not None and len(value) != n:
        raise ParseError(f"{key!r} has {len(value)} entries, expected {n}")
    return value


def from_fold(doc: dict) -> CreasePattern:
    if not isinstance(doc, dict):
        raise ParseError("a FOLD document is a JSON object")
    coords = _list(doc, "vertices_coords")
    nv = len(coords)
    if "cp:exact_coords" in doc:
        exact = _list(doc, "cp:exact_coords", nv)
        try:
            vertices = [ExactPoint(parse_scalar(x), parse_scalar(y)) for x, y in exact]
        except (TypeError, ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad exact coordinate: {exc}") from exc
    else:
        vertices = []
        for c in coords:
            if not isinstance(c, list) or len(c) != 2 or not all(isinstance(t, (int, float)) for t in c):
                raise ParseError(f"vertex {c!r} is not a 2D coordinate")
            vertices.append(ExactPoint(snap(float(c[0])), snap(float(c[1]))))
    ev = _list(doc, "edges_vertices")
    ne = len(ev)
    assignment = _list(doc, "edges_assignment", ne) if "edges_assignment" in doc else ["U"] * ne
    optional = _list(doc, "cp:optional", ne) if "cp:optional" in doc else [False] * ne
    edges = []
    for i, (uv, a, opt) in enumerate(zip(ev, assignment, optional)):
        if not (isinstance(uv, list) and len(uv) == 2 and all(isinstance(k, int) and 0 <= k < nv for k in uv)):
            raise ParseError(f"edge {i} has bad vertex indices {uv!r}")
        label = _TO_LABEL.get((a, bool(opt)))
        if label is None:
            raise ParseError(f"edge {i}: unsupported assignment {a!r} (optional={opt!r})")
        edges.append(Edge(uv[0], uv[1], label))
    return CreasePattern(vertices, edges)


def export_fold(cp: CreasePattern, path) -> None:
    Path(path).write_text(json.dumps(to_fold(cp), indent=1) + "\n")


def import_fold(path) -> CreasePattern:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: not JSON ({exc})") from exc
    return from_fold(doc)


# ---------------------------------------------------------------------------
# SVG


@dataclass(frozen=True)
class SvgStyle:
    scale: float = 20.0
    margin: float = 10.0
    mountain: str = "#c0392b"
    valley: str = "#2c6fbb"
    optional_mountain: str = "#e67e22"
    optional_valley: str = "#27ae60"
    boundary: str = "#000000"
    outline: str = "#999999"
    crease_width: float = 1.2
    boundary_width: float = 3.0
    dash: str = "6,4"
    faded_opacity: float = 0.2


def _fmt(v: float) -> str:
    text = f"{v:.3f}".rstrip("0").rstrip(".")
    return "0" if text == "-0" else text


def export_svg(
    cp: CreasePattern,
    sel: Selection | None = None,
    style: SvgStyle = SvgStyle(),
    outlines: Iterable[Sequence[ExactPoint]] = (),
    title: str | None = None,
) -> str:
    """SVG 1.1 text.  Mountains solid, valleys dashed; optional creases get their own colours.

    With ``sel``, inactive optional creases are drawn faded.  ``outlines``
    are extra polygons (gadget boundaries, say) drawn thin and grey.
    """
    pts = [p.to_float() for p in cp.vertices]
    xs = [x for x, _ in pts] or [0.0]
    ys = [y for _, y in pts] or [0.0]
    s, m = style.scale, style.margin
    x0, y1 = min(xs), max(ys)
    width = (max(xs) - x0) * s + 2 * m
    height = (y1 - min(ys)) * s + 2 * m

    def xy(p) -> tuple[str, str]:
        return _fmt((p[0] - x0) * s + m), _fmt((y1 - p[1]) * s + m)

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{_fmt(width)}" height="{_fmt(height)}" '
        f'viewBox="0 0 {_fmt(width)} {_fmt(height)}">',
    ]
    if title:
        out.append(f"<title>{escape(title)}</title>")
    polys = list(outlines)
    if polys:
        out.append(f'<g id="outlines" fill="none" stroke="{style.outline}" stroke-width="0.8">')
        for poly in polys:
            coords = " ".join(",".join(xy(p.to_float())) for p in poly)
            out.append(f'<polygon points="{coords}"/>')
        out.append("</g>")
    colour = {
        CreaseLabel.MOUNTAIN: style.mountain,
        CreaseLabel.VALLEY: style.valley,
        CreaseLabel.MOUNTAIN_OPTIONAL: style.optional_mountain,
        CreaseLabel.VALLEY_OPTIONAL: style.optional_valley,
    }
    groups = {"creases": [], "boundary": []}
    for i, e in enumerate(cp.edges):
        (ax, ay), (bx, by) = xy(pts[e.u]), xy(pts[e.v])
        if e.label is CreaseLabel.BOUNDARY:
            attrs = f'stroke="{style.boundary}" stroke-width="{_fmt(style.boundary_width)}"'
            groups["boundary"].append(f'<line x1="{ax}" y1="{ay}" x2="{bx}" y2="{by}" {attrs}/>')
            continue
        attrs = f'stroke="{colour[e.label]}" stroke-width="{_fmt(style.crease_width)}"'
        if e.label.mv == "V":
            attrs += f' stroke-dasharray="{style.dash}"'
        if sel is not None and e.label.optional and not sel.is_active(i):
            attrs += f' stroke-opacity="{_fmt(style.faded_opacity)}"'
        groups["creases"].append(f'<line class="{e.label.value}" x1="{ax}" y1="{ay}" x2="{bx}" y2="{by}" {attrs}/>')
    for name in ("creases", "boundary"):
        out.append(f'<g id="{name}" stroke-linecap="round">')
        out.extend(groups[name])
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"

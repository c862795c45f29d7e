import json
from fractions import Fraction
from xml.dom import minidom

import pytest
from hypothesis import given, strategies as st

from foldlogic.exact import ExactPoint, ExactScalar
from foldlogic.gadgets import catalog, make_gadget
from foldlogic.io import (
    ParseError,
    SnapError,
    export_fold,
    export_svg,
    from_fold,
    import_fold,
    snap,
    to_fold,
)
from foldlogic.pattern import CreaseLabel, CreasePattern, Edge, Selection


def same_pattern(a, b):
    assert a.vertices == b.vertices
    assert [(e.u, e.v, e.label) for e in a.edges] == [(e.u, e.v, e.label) for e in b.edges]


@pytest.mark.parametrize("name", catalog())
def test_round_trip_with_sidecar(name, tmp_path):
    cp = make_gadget(name).pattern
    export_fold(cp, tmp_path / "g.fold")
    same_pattern(import_fold(tmp_path / "g.fold"), cp)


@pytest.mark.parametrize("name", ["wire", "nor", "tritwist", "intersector120", "eater"])
def test_round_trip_from_floats_alone(name):
    cp = make_gadget(name).pattern
    doc = to_fold(cp)
    del doc["cp:exact_coords"]
    same_pattern(from_fold(json.loads(json.dumps(doc))), cp)


@given(st.integers(-200, 200), st.integers(-16, 16), st.sampled_from([1, 2, 3, 4, 6, 8, 12, 24]), st.data())
def test_snap_recovers_lattice_values(a, b, d, data):
    # sqrt3 part within the documented search bound
    b = data.draw(st.integers(-16 * d, 16 * d)) if b else 0
    x = ExactScalar(Fraction(a, d), Fraction(b, d))
    assert snap(float(x)) == x


def test_snap_rejects_off_lattice_values():
    with pytest.raises(SnapError):
        snap(0.333333)
    with pytest.raises(SnapError):
        snap(float("nan"))
    assert snap(1 / 3) == ExactScalar(Fraction(1, 3))


def test_plain_fold_file(tmp_path):
    doc = {
        "file_spec": 1.1,
        "vertices_coords": [[0, 0], [2, 0], [2, 2], [0, 2], [1, 0], [1, 2]],
        "edges_vertices": [[0, 4], [4, 1], [1, 2], [2, 5], [5, 3], [3, 0], [4, 5]],
        "edges_assignment": ["B", "B", "B", "B", "B", "B", "V"],
    }
    (tmp_path / "sq.fold").write_text(json.dumps(doc))
    cp = import_fold(tmp_path / "sq.fold")
    assert [e.label for e in cp.edges].count(CreaseLabel.VALLEY) == 1
    assert cp.vertices[4] == ExactPoint(1, 0)


@pytest.mark.parametrize(
    "doc",
    [
        [],
        {"edges_vertices": []},
        {"vertices_coords": [[0, 0]], "edges_vertices": [[0, 1]]},
        {"vertices_coords": [[0, 0], [1, 0]], "edges_vertices": [[0, 1]], "edges_assignment": ["F"]},
        {"vertices_coords": [[0, 0], [1, 0]], "edges_vertices": [[0, 1]], "edges_assignment": []},
        {"vertices_coords": [[0, "x"]], "edges_vertices": []},
        {"vertices_coords": [[0, 0]], "edges_vertices": [], "cp:exact_coords": [["1/0", "0"]]},
    ],
)
def test_malformed_documents(doc):
    with pytest.raises(ParseError):
        from_fold(doc)


def test_non_json_file(tmp_path):
    (tmp_path / "bad.fold").write_text("{not json")
    with pytest.raises(ParseError):
        import_fold(tmp_path / "bad.fold")


def line_elements(svg):
    return minidom.parseString(svg).getElementsByTagName("line")


def test_wire_drawing():
    cp = make_gadget("wire").pattern
    lines = [l for l in line_elements(export_svg(cp)) if l.getAttribute("class")]
    # one mountain between two valleys
    dashed = [l for l in lines if l.hasAttribute("stroke-dasharray")]
    solid = [l for l in lines if not l.hasAttribute("stroke-dasharray")]
    assert len(dashed) == 2 and len(solid) == 1
    assert solid[0].getAttribute("class") == CreaseLabel.MOUNTAIN.value
    assert dashed[0].getAttribute("stroke") != solid[0].getAttribute("stroke")


def test_svg_is_deterministic_and_marks_boundary():
    cp = make_gadget("nor").pattern
    a, b = export_svg(cp, title="nor <gate>"), export_svg(cp, title="nor <gate>")
    assert a == b
    doc = minidom.parseString(a)
    assert doc.getElementsByTagName("title")[0].firstChild.data == "nor <gate>"
    n_boundary = sum(e.label is CreaseLabel.BOUNDARY for e in cp.edges)
    assert len(line_elements(a)) == len(cp.edges)
    assert sum(not l.getAttribute("class") for l in line_elements(a)) == n_boundary


def test_inactive_optionals_are_faded():
    cp = make_gadget("nor").pattern
    opt = cp.optional_edges()
    assert opt
    svg = export_svg(cp, Selection(cp, frozenset(opt[:1])), outlines=[make_gadget("nor").boundary])
    faded = [l for l in line_elements(svg) if l.hasAttribute("stroke-opacity")]
    assert len(faded) == len(opt) - 1
    assert len(minidom.parseString(svg).getElementsByTagName("polygon")) == 1

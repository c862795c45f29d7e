import math
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st
from shapely.geometry import LineString, Point

from foldlogic.exact import (
    ExactPoint,
    ExactScalar,
    Isometry,
    SQRT3,
    dir_vector,
    direction_of,
    format_scalar,
    parse_scalar,
    reflect_across,
    sector,
    segment_intersect,
    sign,
)

fractions = st.fractions(min_value=-50, max_value=50, max_denominator=30)
scalars = st.builds(ExactScalar, fractions, fractions)
nonzero = scalars.filter(lambda v: not v.is_zero())
points = st.builds(ExactPoint, scalars, scalars)
dirs = st.integers(0, 23)
rot = st.integers(0, 11).map(lambda m: 30 * m)


def sym(v: ExactScalar):
    return sympy.Rational(v.a.numerator, v.a.denominator) + sympy.Rational(v.b.numerator, v.b.denominator) * sympy.sqrt(3)


def same(v: ExactScalar, expr) -> bool:
    return sympy.expand(sympy.radsimp(sym(v) - expr)) == 0


# -- arithmetic against sympy ------------------------------------------------


@given(scalars, scalars)
def test_ring_operations_match_sympy(x, y):
    assert same(x + y, sym(x) + sym(y))
    assert same(x - y, sym(x) - sym(y))
    assert same(x * y, sym(x) * sym(y))


@given(scalars, nonzero)
def test_division_matches_sympy(x, y):
    assert same(x / y, sym(x) / sym(y))


@given(scalars)
def test_sign_matches_high_precision(x):
    ref = sympy.sign(sym(x).evalf(60))
    assert sign(x) == int(ref)


def test_sign_of_near_cancellation():
    # 1351/780 is a continued-fraction convergent of sqrt3
    assert sign(ExactScalar(Fraction(1351, 780), -1)) == 1
    assert sign(ExactScalar(Fraction(-1351, 780), 1)) == -1


@given(scalars)
def test_format_parse_round_trip(x):
    assert parse_scalar(format_scalar(x)) == x


@pytest.mark.parametrize("text, a, b", [("3", 3, 0), ("-1/2+3/4*sqrt3", Fraction(-1, 2), Fraction(3, 4)),
                                        ("sqrt3", 0, 1), ("0-2*sqrt3", 0, -2)])
def test_parse_examples(text, a, b):
    assert parse_scalar(text) == ExactScalar(a, b)


@pytest.mark.parametrize("text", ["", "abc", "1.5", "2*sqrt2", "1 2"])
def test_parse_rejects_garbage(text):
    with pytest.raises(ValueError):
        parse_scalar(text)


@given(scalars)
def test_equal_values_hash_equal(x):
    twin = (x * 3 + 1 - 1) / 3
    assert twin == x and hash(twin) == hash(x)


# -- directions ----------------------------------------------------------------


@given(dirs)
def test_direction_vectors_point_the_right_way(k):
    v = dir_vector(k)
    x, y = v.to_float()
    assert math.isclose(math.atan2(y, x) % (2 * math.pi), math.radians(15 * k), abs_tol=1e-12)
    assert direction_of(v * ExactScalar(3, 1)) == k


@given(st.integers(0, 11))
def test_even_directions_are_unit(m):
    v = dir_vector(2 * m)
    assert v.dot(v) == 1


def test_odd_directions_are_not_unit():
    # cos^2(15 deg) is (2 + sqrt3)/4, so no unit vector at 15 degrees exists in Q(sqrt3)^2
    v = dir_vector(1)
    assert v.dot(v) != 1
    assert math.isclose(float(v.dot(v)), 1 / math.cos(math.radians(15)) ** 2)
    assert direction_of(ExactPoint(1, 1)) == 3
    assert direction_of(ExactPoint(2, 1)) is None


@given(dirs, dirs)
def test_sector_is_ccw_difference(a, b):
    s = sector(a, b)
    assert 0 < s <= 24 and (a + s) % 24 == b % 24


# -- isometries ----------------------------------------------------------------


@given(rot, rot, points)
def test_rotations_compose(a, b, p):
    assert Isometry.rotation(a).compose(Isometry.rotation(b)).apply(p) == Isometry.rotation(a + b).apply(p)


@given(rot, points, points)
def test_isometry_preserves_distance_and_inverts(deg, p, q):
    iso = Isometry.rotation(deg, center=q)
    d = p - q
    e = iso.apply(p) - iso.apply(q)
    assert d.dot(d) == e.dot(e)
    assert iso.inverse().apply(iso.apply(p)) == p


@given(dirs, points)
def test_reflection_is_an_involution(k, p):
    r = reflect_across(ExactPoint(1, SQRT3), k)
    assert r.orientation == -1
    assert r.apply(r.apply(p)) == p


def test_rotation_rejects_off_grid_angle():
    with pytest.raises(ValueError):
        Isometry.rotation(45)


# -- segment intersection against shapely ----------------------------------


small = st.integers(-4, 4)
lattice = st.builds(lambda x, y: ExactPoint(ExactScalar(0, Fraction(x, 2)), Fraction(y, 2)), small, small)


@given(lattice, lattice, lattice, lattice)
def test_segment_intersection_matches_shapely(a, b, c, d):
    if a == b or c == d:
        return
    got = segment_intersect((a, b), (c, d))
    ref = LineString([a.to_float(), b.to_float()]).intersection(LineString([c.to_float(), d.to_float()]))
    kind = "empty" if ref.is_empty else ("overlap" if ref.geom_type == "LineString" else "point")
    if ref.geom_type == "MultiPoint":
        kind = "point"
    assert got.kind == kind
    if kind == "point":
        x, y = got.point.to_float()
        assert ref.distance(Point(x, y)) < 1e-9

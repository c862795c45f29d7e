import math
import random
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from foldlogic.gadgets import make_gadget
from foldlogic.local import (
    LoopCrossing,
    OddCrossingCount,
    OddDegree,
    VertexStar,
    gadget_angle_condition,
    justin_check,
    kawasaki_check,
    maekawa_check,
    single_vertex_foldable,
    star_pattern,
    vertex_locally_foldable,
)
from foldlogic.solver import globally_flat_foldable

from figures import impossible_star


def crimp_oracle(star: VertexStar) -> bool:
    """Flat-foldability of one vertex by repeated crimping of locally smallest sectors."""
    if not star.active:
        return True
    # (label of crease j, sector from crease j to crease j+1), cyclic
    items = [(mv, sec) for (_, mv), sec in zip(star.active, star.sectors)]
    if len(items) % 2 or sum(sec for _, sec in items[0::2]) != 12:
        return False
    while len(items) > 2:
        n = len(items)
        move = None
        for i in range(n):
            prev, cur, nxt = items[i - 1][1], items[i][1], items[(i + 1) % n][1]
            if cur <= prev and cur <= nxt:
                if items[i][0] != items[(i + 1) % n][0]:
                    move = i
                    break
                if cur < prev and cur < nxt:
                    return False  # a strictly smallest sector needs opposite creases
        if move is None:
            return False
        i = move
        merged = items[i - 1][1] - items[i][1] + items[(i + 1) % n][1]
        rest = [items[(i + 2 + t) % n] for t in range(n - 2)]
        rest[-1] = (rest[-1][0], merged)
        items = rest
    # each crimp shortens the circle by twice the crimped sector; two equal halves remain
    return items[0][1] == items[1][1] and items[0][0] == items[1][0]


def kawasaki_float(star: VertexStar) -> bool:
    ang = [math.radians(15 * k) for k, _ in star.active]
    gaps = [(ang[(i + 1) % len(ang)] - ang[i]) % (2 * math.pi) or 2 * math.pi for i in range(len(ang))]
    return math.isclose(sum(gaps[0::2]), math.pi, abs_tol=1e-9)


@st.composite
def stars(draw, max_degree=10):
    n = draw(st.sampled_from(range(2, max_degree + 1, 2)))
    dirs = draw(st.lists(st.integers(0, 23), min_size=n, max_size=n, unique=True))
    mvs = draw(st.lists(st.sampled_from("MV"), min_size=n, max_size=n))
    return VertexStar.from_mapping(dict(zip(dirs, mvs)))


@st.composite
def kawasaki_stars(draw, max_degree=10):
    half = draw(st.integers(1, max_degree // 2))

    def composition():
        cuts = sorted(draw(st.lists(st.integers(1, 11), min_size=half - 1, max_size=half - 1, unique=True)))
        return [b - a for a, b in zip([0] + cuts, cuts + [12])]

    odd, even = composition(), composition()
    secs = [x for pair in zip(odd, even) for x in pair]
    start = draw(st.integers(0, 23))
    ks = [start]
    for s in secs[:-1]:
        ks.append(ks[-1] + s)
    mvs = draw(st.lists(st.sampled_from("MV"), min_size=len(ks), max_size=len(ks)))
    return VertexStar.from_mapping({k % 24: mv for k, mv in zip(ks, mvs)})


@given(stars())
def test_kawasaki_matches_float_angles(star):
    assert kawasaki_check(star) == kawasaki_float(star)


@given(kawasaki_stars())
def test_single_vertex_matches_crimp_oracle(star):
    assert single_vertex_foldable(star) == crimp_oracle(star)


@given(st.one_of(stars(), kawasaki_stars()))
def test_foldable_vertex_satisfies_necessary_conditions(star):
    if single_vertex_foldable(star):
        assert kawasaki_check(star) and maekawa_check(star)
        assert justin_check(LoopCrossing.around(star))


def test_single_vertex_agrees_with_layer_solver():
    rng = random.Random(11)
    for _ in range(60):
        half = rng.choice([1, 2, 3, 4])
        odd = _comp(rng, half)
        even = _comp(rng, half)
        secs = [x for pair in zip(odd, even) for x in pair]
        ks = [rng.randrange(24)]
        for s in secs[:-1]:
            ks.append(ks[-1] + s)
        star = VertexStar.from_mapping({k % 24: rng.choice("MV") for k in ks})
        cp, sel = star_pattern(star)
        assert single_vertex_foldable(star) == bool(globally_flat_foldable(cp, sel, local_filter=False))


def _comp(rng, parts):
    cuts = sorted(rng.sample(range(1, 12), parts - 1))
    return [b - a for a, b in zip([0] + cuts, cuts + [12])]


def test_impossible_star_passes_counting_but_not_stacking():
    star = impossible_star()
    assert kawasaki_check(star) and maekawa_check(star)
    assert not single_vertex_foldable(star)
    assert not vertex_locally_foldable(star)
    assert not crimp_oracle(star)


def test_simple_stars():
    assert vertex_locally_foldable(VertexStar.from_degrees({0: "M", 180: "M"}))
    assert not vertex_locally_foldable(VertexStar.from_degrees({0: "M", 180: "V"}))
    assert not vertex_locally_foldable(VertexStar.from_degrees({0: "M", 90: "M"}))
    # sectors 30, 60, 150, 120: the 30 degree sector is crimped away
    assert vertex_locally_foldable(VertexStar.from_degrees({0: "M", 30: "V", 90: "M", 240: "M"}))
    # two equal smallest sectors would both need opposite creases, breaking Maekawa
    assert not vertex_locally_foldable(VertexStar.from_degrees({0: "M", 45: "V", 180: "M", 225: "M"}))


def test_odd_degree_raises():
    with pytest.raises(OddDegree):
        kawasaki_check(VertexStar.from_degrees({0: "M", 90: "V", 180: "M"}))
    with pytest.raises(OddCrossingCount):
        justin_check([("M", 12)])


def test_justin_on_a_flat_loop():
    assert justin_check([("M", 12), ("M", 12)])
    assert not justin_check([("M", 12), ("V", 12)])


def _brute_angle_condition(angles):
    return not any(sum(s) % 12 == 0 for r in range(1, len(angles)) for s in combinations(angles, r))


@given(st.lists(st.integers(1, 23), min_size=2, max_size=6))
def test_angle_condition_against_brute_force(angles):
    assert gadget_angle_condition(angles) == _brute_angle_condition(angles)


@pytest.mark.parametrize("name, ok", [("nor", True), ("nand", True), ("or", True), ("and", True),
                                      ("tritwist", True), ("eater", True), ("intersector60", False),
                                      ("intersector120", False), ("wire", False), ("hextwist", False)])
def test_gadget_angle_condition(name, ok):
    assert gadget_angle_condition(make_gadget(name).boundary_angles()) is ok


@pytest.mark.parametrize(
    "ks, expected",
    [
        ((0, 6, 12, 18), True),
        ((0, 4, 12, 16), False),
        ((0, 10, 12, 22), False),
        ((0, 2, 12, 14), False),  # sectors 30,150,30,150: 60 against 300
        ((0, 2, 8, 18), True),  # sectors 30,90,150,90: 30+150 against 90+90
    ],
)
def test_kawasaki_examples(ks, expected):
    star = VertexStar.from_mapping({k: "M" for k in ks})
    assert kawasaki_float(star) == expected
    assert kawasaki_check(star) == expected

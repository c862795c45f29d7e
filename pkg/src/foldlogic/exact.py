"""Exact arithmetic in Q(sqrt 3), lattice directions and plane isometries.

Every vertex of the gadget figures lies in Q(sqrt3)^2, and reflections across
lines at multiples of 15 degrees have matrix entries that are sines and
cosines of multiples of 30 degrees, so the whole folding pipeline stays in
this field.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from math import gcd
from typing import NamedTuple, Union

Rational = Union[int, Fraction]

_SQRT3_F = math.sqrt(3.0)


class ExactScalar:
    """The number ``a + b*sqrt(3)`` with rational ``a`` and ``b``.

    Stored as integers ``(p + q*sqrt3) / d`` with ``d > 0`` and
    ``gcd(p, q, d) == 1``, which is the same as keeping ``a`` and ``b`` in
    lowest terms over a shared denominator.
    """

    __slots__ = ("_p", "_q", "_d", "_hash")

    def __init__(self, a: Rational = 0, b: Rational = 0) -> None:
        a = Fraction(a)
        b = Fraction(b)
        d = a.denominator * b.denominator // gcd(a.denominator, b.denominator)
        self._set(a.numerator * (d // a.denominator), b.numerator * (d // b.denominator), d)

    def _set(self, p: int, q: int, d: int) -> None:
        if d < 0:
            p, q, d = -p, -q, -d
        g = gcd(gcd(p, q), d)
        if g > 1:
            p //= g
            q //= g
            d //= g
        self._p = p
        self._q = q
        self._d = d
        self._hash = None

    @classmethod
    def _raw(cls, p: int, q: int, d: int) -> ExactScalar:
        obj = cls.__new__(cls)
        obj._set(p, q, d)
        return obj

    @property
    def a(self) -> Fraction:
        return Fraction(self._p, self._d)

    @property
    def b(self) -> Fraction:
        return Fraction(self._q, self._d)

    def sign(self) -> int:
        return sign(self)

    def is_zero(self) -> bool:
        return self._p == 0 and self._q == 0

    def is_rational(self) -> bool:
        return self._q == 0

    def __add__(self, other):
        if isinstance(other, int):
            return ExactScalar._raw(self._p + other * self._d, self._q, self._d)
        if not isinstance(other, ExactScalar):
            return NotImplemented
        if self._d == other._d:
            return ExactScalar._raw(self._p + other._p, self._q + other._q, self._d)
        return ExactScalar._raw(
            self._p * other._d + other._p * self._d,
            self._q * other._d + other._q * self._d,
            self._d * other._d,
        )

    __radd__ = __add__

    def __neg__(self) -> ExactScalar:
        return ExactScalar._raw(-self._p, -self._q, self._d)

    def __sub__(self, other):
        if isinstance(other, int):
            return ExactScalar._raw(self._p - other * self._d, self._q, self._d)
        if not isinstance(other, ExactScalar):
            return NotImplemented
        if self._d == other._d:
            return ExactScalar._raw(self._p - other._p, self._q - other._q, self._d)
        return ExactScalar._raw(
            self._p * other._d - other._p * self._d,
            self._q * other._d - other._q * self._d,
            self._d * other._d,
        )

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return ExactScalar._raw(self._p * other, self._q * other, self._d)
        if isinstance(other, Fraction):
            return ExactScalar._raw(
                self._p * other.numerator, self._q * other.numerator, self._d * other.denominator
            )
        if not isinstance(other, ExactScalar):
            return NotImplemented
        p1, q1, p2, q2 = self._p, self._q, other._p, other._q
        return ExactScalar._raw(p1 * p2 + 3 * q1 * q2, p1 * q2 + q1 * p2, self._d * other._d)

    __rmul__ = __mul__

    def inverse(self) -> ExactScalar:
        norm = self._p * self._p - 3 * self._q * self._q
        if norm == 0:
            raise ZeroDivisionError("inverse of zero in Q(sqrt3)")
        # 1/((p+q r)/d) = d (p - q r) / (p^2 - 3 q^2)
        return ExactScalar._raw(self._d * self._p, -self._d * self._q, norm)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return ExactScalar._raw(
                self._p * other.denominator, self._q * other.denominator, self._d * other.numerator
            )
        if not isinstance(other, ExactScalar):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return ExactScalar(other) * self.inverse()

    def __eq__(self, other) -> bool:
        if isinstance(other, ExactScalar):
            return self._p == other._p and self._q == other._q and self._d == other._d
        if isinstance(other, (int, Fraction)):
            return self._q == 0 and Fraction(self._p, self._d) == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._p, self._q, self._d))
        return self._hash

    def __lt__(self, other) -> bool:
        return sign(self - other) < 0

    def __le__(self, other) -> bool:
        return sign(self - other) <= 0

    def __gt__(self, other) -> bool:
        return sign(self - other) > 0

    def __ge__(self, other) -> bool:
        return sign(self - other) >= 0

    def __float__(self) -> float:
        return (self._p + self._q * _SQRT3_F) / self._d

    def __abs__(self) -> ExactScalar:
        return -self if sign(self) < 0 else self

    def __repr__(self) -> str:
        return f"ExactScalar({self.a}, {self.b})"

    def __str__(self) -> str:
        return format_scalar(self)


def sign(v: ExactScalar) -> int:
    """Exact sign of ``a + b*sqrt3``."""
    sp = (v._p > 0) - (v._p < 0)
    sq = (v._q > 0) - (v._q < 0)
    if sq == 0:
        return sp
    if sp == 0 or sp == sq:
        return sq
    # opposite signs: compare a^2 against 3 b^2
    lhs = v._p * v._p
    rhs = 3 * v._q * v._q
    return sp if lhs > rhs else sq


ZERO = ExactScalar(0)
ONE = ExactScalar(1)
HALF = ExactScalar(Fraction(1, 2))
SQRT3 = ExactScalar(0, 1)


def scalar(value) -> ExactScalar:
    if isinstance(value, ExactScalar):
        return value
    if isinstance(value, str):
        return parse_scalar(value)
    return ExactScalar(value)


def format_scalar(v: ExactScalar) -> str:
    """Serialize as ``"p/q+r/s*sqrt3"`` (the rational part always present)."""
    a, b = v.a, v.b
    text = str(a)
    if b != 0:
        text += ("+" if b > 0 else "-") + f"{abs(b)}*sqrt3"
    return text


_SCALAR_RE = re.compile(
    r"^\s*(?P<a>[+-]?\d+(?:/\d+)?)?\s*(?:(?P<sgn>[+-])?\s*(?P<b>\d+(?:/\d+)?)?\s*\*?\s*sqrt3)?\s*$"
)


def parse_scalar(text: str) -> ExactScalar:
    m = _SCALAR_RE.match(text)
    if not m or (m.group("a") is None and "sqrt3" not in text):
        raise ValueError(f"not a Q(sqrt3) literal: {text!r}")
    a = Fraction(m.group("a")) if m.group("a") else Fraction(0)
    b = Fraction(0)
    if "sqrt3" in text:
        b = Fraction(m.group("b")) if m.group("b") else Fraction(1)
        if m.group("sgn") == "-":
            b = -b
        elif m.group("sgn") is None and m.group("a") is not None:
            raise ValueError(f"not a Q(sqrt3) literal: {text!r}")
    return ExactScalar(a, b)


class ExactPoint:
    __slots__ = ("x", "y", "_hash")

    def __init__(self, x, y) -> None:
        self.x = scalar(x)
        self.y = scalar(y)
        self._hash = None

    def __add__(self, other: ExactPoint) -> ExactPoint:
        return ExactPoint(self.x + other.x, self.y + other.y)

    def __sub__(self, other: ExactPoint) -> ExactPoint:
        return ExactPoint(self.x - other.x, self.y - other.y)

    def __neg__(self) -> ExactPoint:
        return ExactPoint(-self.x, -self.y)

    def __mul__(self, k) -> ExactPoint:
        return ExactPoint(self.x * k, self.y * k)

    __rmul__ = __mul__

    def dot(self, other: ExactPoint) -> ExactScalar:
        return self.x * other.x + self.y * other.y

    def cross(self, other: ExactPoint) -> ExactScalar:
        return self.x * other.y - self.y * other.x

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactPoint):
            return NotImplemented
        return self.x == other.x and self.y == other.y

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.x, self.y))
        return self._hash

    def key(self) -> tuple:
        """Total-order key (exact, lexicographic on x then y)."""
        return (_SortKey(self.x), _SortKey(self.y))

    def to_float(self) -> tuple[float, float]:
        return (float(self.x), float(self.y))

    def __repr__(self) -> str:
        return f"ExactPoint({self.x}, {self.y})"


class _SortKey:
    __slots__ = ("v",)

    def __init__(self, v: ExactScalar) -> None:
        self.v = v

    def __lt__(self, other: _SortKey) -> bool:
        return sign(self.v - other.v) < 0

    def __eq__(self, other) -> bool:
        return self.v == other.v


ORIGIN = ExactPoint(0, 0)


# cos/sin of 30m degrees, m = 0..11
_C = [ONE, SQRT3 / 2, HALF, ZERO, -HALF, -SQRT3 / 2, -ONE, -SQRT3 / 2, -HALF, ZERO, HALF, SQRT3 / 2]
_S = [_C[(m - 3) % 12] for m in range(12)]


def cos30(m: int) -> ExactScalar:
    return _C[m % 12]


def sin30(m: int) -> ExactScalar:
    return _S[m % 12]


def polar(deg: int, r=1) -> ExactPoint:
    """Point at angle ``deg`` (a multiple of 30) and exact radius ``r``."""
    if deg % 30:
        raise ValueError("polar() needs a multiple of 30 degrees to stay in Q(sqrt3)")
    r = scalar(r)
    m = deg // 30
    return ExactPoint(cos30(m) * r, sin30(m) * r)


def _rotate30(v: ExactPoint, m: int) -> ExactPoint:
    c, s = cos30(m), sin30(m)
    return ExactPoint(c * v.x - s * v.y, s * v.x + c * v.y)


_TAN15 = ExactPoint(1, ExactScalar(2, -1))
_DIR_VECTORS = [
    polar(30 * (k // 2)) if k % 2 == 0 else _rotate30(_TAN15, k // 2) for k in range(24)
]


def dir_vector(k: int) -> ExactPoint:
    """A nonzero representative of direction ``k * 15`` degrees.

    Unit length for even ``k``; odd multiples of 15 degrees have no unit
    vector in Q(sqrt3)^2 so the representative has length sec(15).
    """
    return _DIR_VECTORS[k % 24]


def direction_of(v: ExactPoint) -> int | None:
    """Dir15 index of vector ``v``, or ``None`` if it is not a 15-degree multiple."""
    fx, fy = float(v.x), float(v.y)
    if fx == 0.0 and fy == 0.0:
        if v.x.is_zero() and v.y.is_zero():
            return None
    k = round(math.degrees(math.atan2(fy, fx)) / 15.0) % 24
    for cand in (k, (k + 1) % 24, (k - 1) % 24):
        r = _DIR_VECTORS[cand]
        if r.cross(v).is_zero() and sign(r.dot(v)) > 0:
            return cand
    return None


def sector(d_from: int, d_to: int) -> int:
    """Counterclockwise angle from ``d_from`` to ``d_to`` in 15-degree units.

    Equal directions give a full turn (24), the convention used for a lone
    crease at a vertex.
    """
    u = (d_to - d_from) % 24
    return 24 if u == 0 else u


class Isometry:
    """``p -> M p + t`` with an orthogonal matrix over Q(sqrt3)."""

    __slots__ = ("m00", "m01", "m10", "m11", "t", "orientation")

    def __init__(self, m00, m01, m10, m11, t: ExactPoint = ORIGIN) -> None:
        self.m00, self.m01, self.m10, self.m11 = (scalar(m) for m in (m00, m01, m10, m11))
        self.t = t
        det = self.m00 * self.m11 - self.m01 * self.m10
        if det == 1:
            self.orientation = 1
        elif det == -1:
            self.orientation = -1
        else:
            raise ValueError("isometry matrix must have determinant +-1")

    @classmethod
    def identity(cls) -> Isometry:
        return cls(1, 0, 0, 1)

    @classmethod
    def translation(cls, t: ExactPoint) -> Isometry:
        return cls(1, 0, 0, 1, t)

    @classmethod
    def rotation(cls, deg: int, center: ExactPoint = ORIGIN) -> Isometry:
        if deg % 30:
            raise ValueError("rotations must be multiples of 30 degrees")
        m = deg // 30
        c, s = cos30(m), sin30(m)
        rot = cls(c, -s, s, c)
        return cls(c, -s, s, c, center - rot.apply(center))

    def apply(self, p: ExactPoint) -> ExactPoint:
        return ExactPoint(
            self.m00 * p.x + self.m01 * p.y + self.t.x,
            self.m10 * p.x + self.m11 * p.y + self.t.y,
        )

    def apply_vector(self, v: ExactPoint) -> ExactPoint:
        return ExactPoint(self.m00 * v.x + self.m01 * v.y, self.m10 * v.x + self.m11 * v.y)

    def apply_dir(self, k: int) -> int:
        d = direction_of(self.apply_vector(dir_vector(k)))
        if d is None:
            raise ValueError("isometry does not preserve the 15-degree grid")
        return d

    def compose(self, other: Isometry) -> Isometry:
        """``self o other`` (apply ``other`` first)."""
        return Isometry(
            self.m00 * other.m00 + self.m01 * other.m10,
            self.m00 * other.m01 + self.m01 * other.m11,
            self.m10 * other.m00 + self.m11 * other.m10,
            self.m10 * other.m01 + self.m11 * other.m11,
            self.apply(other.t),
        )

    def __matmul__(self, other: Isometry) -> Isometry:
        return self.compose(other)

    def inverse(self) -> Isometry:
        # orthogonal: inverse matrix is the transpose
        inv = Isometry(self.m00, self.m10, self.m01, self.m11)
        return Isometry(self.m00, self.m10, self.m01, self.m11, -inv.apply(self.t))

    def is_lattice(self) -> bool:
        allowed = {ZERO, ONE, -ONE, HALF, -HALF, SQRT3 / 2, -SQRT3 / 2}
        return all(m in allowed for m in (self.m00, self.m01, self.m10, self.m11))

    def matrix(self) -> tuple[tuple[ExactScalar, ExactScalar], tuple[ExactScalar, ExactScalar]]:
        return ((self.m00, self.m01), (self.m10, self.m11))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Isometry):
            return NotImplemented
        return (
            self.m00 == other.m00
            and self.m01 == other.m01
            and self.m10 == other.m10
            and self.m11 == other.m11
            and self.t == other.t
        )

    def __hash__(self) -> int:
        return hash((self.m00, self.m01, self.m10, self.m11, self.t))

    def __repr__(self) -> str:
        return (
            f"Isometry([[{self.m00}, {self.m01}], [{self.m10}, {self.m11}]], "
            f"t=({self.t.x}, {self.t.y}))"
        )


def reflect_across(line_point: ExactPoint, line_dir: int) -> Isometry:
    """Reflection across the line through ``line_point`` at ``line_dir * 15`` degrees."""
    # reflection matrix uses the doubled angle, a multiple of 30 degrees
    c, s = cos30(line_dir), sin30(line_dir)
    refl = Isometry(c, s, s, -c)
    return Isometry(c, s, s, -c, line_point - refl.apply(line_point))


class Intersection(NamedTuple):
    kind: str  # "empty", "point" or "overlap"
    point: ExactPoint | None = None
    segment: tuple[ExactPoint, ExactPoint] | None = None


EMPTY = Intersection("empty")


def _on_segment(p: ExactPoint, a: ExactPoint, b: ExactPoint) -> bool:
    """``p`` collinear with ``a b`` assumed; test it lies within the closed segment."""
    d = b - a
    t = (p - a).dot(d)
    return sign(t) >= 0 and sign(t - d.dot(d)) <= 0


def segment_intersect(s1, s2) -> Intersection:
    """Exact classification of the intersection of two closed segments."""
    a, b = s1
    c, d = s2
    r = b - a
    s = d - c
    denom = r.cross(s)
    ca = c - a
    if denom.is_zero():
        if not ca.cross(r).is_zero():
            return EMPTY
        # collinear: project onto r
        rr = r.dot(r)
        t0 = ca.dot(r) / rr
        t1 = (d - a).dot(r) / rr
        lo, hi = (t0, t1) if t0 <= t1 else (t1, t0)
        lo = lo if lo > ZERO else ZERO
        hi = hi if hi < ONE else ONE
        if lo > hi:
            return EMPTY
        p_lo = a + r * lo
        if lo == hi:
            return Intersection("point", p_lo)
        return Intersection("overlap", segment=(p_lo, a + r * hi))
    t = ca.cross(s) / denom
    u = ca.cross(r) / denom
    if t < ZERO or t > ONE or u < ZERO or u > ONE:
        return EMPTY
    return Intersection("point", a + r * t)


def line_intersection(p: ExactPoint, u: ExactPoint, q: ExactPoint, v: ExactPoint):
    """Parameter ``t`` with ``p + t u`` on the line ``q + s v``; None if parallel."""
    denom = u.cross(v)
    if denom.is_zero():
        return None
    return (q - p).cross(v) / denom

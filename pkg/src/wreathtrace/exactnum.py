"""Exact arithmetic: the real field Q(sqrt2, sqrt5), quaternions over it, eigenangles.

Rationals are :class:`fractions.Fraction` throughout.  ``Fraction`` is always
kept in lowest terms with a positive denominator, so structural equality of
field elements is value equality.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from functools import total_ordering
from typing import Union

from .errors import NotFiniteOrderError, UnsupportedAngleError

__all__ = [
    "QuadField", "Quaternion", "RationalAngle",
    "field_mul", "field_inverse", "field_to_real",
    "quat_mul", "quat_order", "angle_from_quaternion", "two_cos",
    "ZERO", "ONE", "SQRT2", "SQRT5", "SQRT10", "GOLDEN",
    "QUAT_ONE", "QUAT_I", "QUAT_J", "QUAT_K",
    "SUPPORTED_ORDERS",
]

Rational = Union[int, Fraction]


@dataclass(frozen=True)
class QuadField:
    """The value ``a + b*sqrt2 + c*sqrt5 + d*sqrt10`` with rational coordinates."""

    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)
    c: Fraction = Fraction(0)
    d: Fraction = Fraction(0)

    def __post_init__(self):
        for name in "abcd":
            v = getattr(self, name)
            if not isinstance(v, Fraction):
                object.__setattr__(self, name, Fraction(v))

    @classmethod
    def coerce(cls, x) -> "QuadField":
        if isinstance(x, QuadField):
            return x
        if isinstance(x, (int, Fraction)):
            return cls(Fraction(x))
        raise TypeError(f"cannot coerce {type(x).__name__} to QuadField")

    def coords(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.a, self.b, self.c, self.d)

    def is_rational(self) -> bool:
        return self.b == 0 and self.c == 0 and self.d == 0

    def __bool__(self) -> bool:
        return any(self.coords())

    def __add__(self, other):
        try:
            o = QuadField.coerce(other)
        except TypeError:
            return NotImplemented
        return QuadField(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadField(-self.a, -self.b, -self.c, -self.d)

    def __sub__(self, other):
        try:
            o = QuadField.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return QuadField.coerce(other) - self

    def __mul__(self, other):
        try:
            o = QuadField.coerce(other)
        except TypeError:
            return NotImplemented
        return field_mul(self, o)

    __rmul__ = __mul__

    def __truediv__(self, other):
        try:
            o = QuadField.coerce(other)
        except TypeError:
            return NotImplemented
        return field_mul(self, field_inverse(o))

    def __rtruediv__(self, other):
        return field_mul(QuadField.coerce(other), field_inverse(self))

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.a == other
        if not isinstance(other, QuadField):
            return NotImplemented
        return self.coords() == other.coords()

    def __hash__(self):
        if self.is_rational():
            return hash(self.a)
        return hash(self.coords())

    def __float__(self):
        return field_to_real(self)

    def __repr__(self):
        terms = []
        for coeff, basis in zip(self.coords(), ("", "√2", "√5", "√10")):
            if coeff:
                terms.append(f"{coeff}{basis}" if basis else str(coeff))
        return "QuadField(" + (" + ".join(terms) or "0") + ")"


ZERO = QuadField()
ONE = QuadField(1)
SQRT2 = QuadField(0, 1)
SQRT5 = QuadField(0, 0, 1)
SQRT10 = QuadField(0, 0, 0, 1)
GOLDEN = QuadField(Fraction(1, 2), 0, Fraction(1, 2))


def _integral(x: QuadField) -> tuple[int, tuple[int, int, int, int]]:
    # common denominator and integer numerators; ints multiply far faster than Fractions
    den = math.lcm(*(f.denominator for f in x.coords()))
    return den, tuple(f.numerator * (den // f.denominator) for f in x.coords())


def field_mul(x: QuadField, y: QuadField) -> QuadField:
    den1, (a1, b1, c1, d1) = _integral(x)
    den2, (a2, b2, c2, d2) = _integral(y)
    den = den1 * den2
    # basis products: √2√2=2, √5√5=5, √10√10=10, √2√5=√10, √2√10=2√5, √5√10=5√2
    a = a1 * a2 + 2 * b1 * b2 + 5 * c1 * c2 + 10 * d1 * d2
    b = a1 * b2 + b1 * a2 + 5 * (c1 * d2 + d1 * c2)
    c = a1 * c2 + c1 * a2 + 2 * (b1 * d2 + d1 * b2)
    d = a1 * d2 + d1 * a2 + b1 * c2 + c1 * b2
    return QuadField(Fraction(a, den), Fraction(b, den), Fraction(c, den), Fraction(d, den))


def _conj_sqrt5(x: QuadField) -> QuadField:
    return QuadField(x.a, x.b, -x.c, -x.d)


def _conj_sqrt2(x: QuadField) -> QuadField:
    return QuadField(x.a, -x.b, x.c, -x.d)


def field_inverse(x: QuadField) -> QuadField:
    """Multiplicative inverse, by rationalizing over sqrt5 then sqrt2."""
    if not x:
        raise ZeroDivisionError("inverse of zero in Q(√2,√5)")
    c5 = _conj_sqrt5(x)
    y = field_mul(x, c5)  # lies in Q(√2)
    c2 = _conj_sqrt2(y)
    n = field_mul(y, c2)  # rational, nonzero
    assert n.is_rational() and n.a != 0
    num = field_mul(c5, c2)
    return QuadField(num.a / n.a, num.b / n.a, num.c / n.a, num.d / n.a)


def field_to_real(x: QuadField) -> float:
    # 60 significant digits absorbs cancellation between basis terms
    with localcontext() as ctx:
        ctx.prec = 60
        total = Decimal(0)
        for coeff, radicand in zip(x.coords(), (1, 2, 5, 10)):
            if coeff:
                term = Decimal(coeff.numerator) / Decimal(coeff.denominator)
                if radicand != 1:
                    term *= Decimal(radicand).sqrt()
                total += term
        return float(total)


@dataclass(frozen=True)
class Quaternion:
    """``w + x i + y j + z k`` with coordinates in Q(sqrt2, sqrt5)."""

    w: QuadField = ZERO
    x: QuadField = ZERO
    y: QuadField = ZERO
    z: QuadField = ZERO

    def __post_init__(self):
        for name in "wxyz":
            object.__setattr__(self, name, QuadField.coerce(getattr(self, name)))

    def __mul__(self, other):
        if isinstance(other, Quaternion):
            return quat_mul(self, other)
        s = QuadField.coerce(other)
        return Quaternion(self.w * s, self.x * s, self.y * s, self.z * s)

    def __rmul__(self, other):
        return self * other

    def __neg__(self):
        return Quaternion(-self.w, -self.x, -self.y, -self.z)

    def conjugate(self) -> "Quaternion":
        return Quaternion(self.w, -self.x, -self.y, -self.z)

    def norm(self) -> QuadField:
        return self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z

    def is_one(self) -> bool:
        return self == QUAT_ONE

    def su2_matrix(self):
        """Numeric SU(2) realization ``[[w+xi, y+zi], [-y+zi, w-xi]]``."""
        w, x, y, z = (field_to_real(c) for c in (self.w, self.x, self.y, self.z))
        return [[complex(w, x), complex(y, z)], [complex(-y, z), complex(w, -x)]]


QUAT_ONE = Quaternion(ONE)
QUAT_I = Quaternion(ZERO, ONE)
QUAT_J = Quaternion(ZERO, ZERO, ONE)
QUAT_K = Quaternion(ZERO, ZERO, ZERO, ONE)


def quat_mul(p: Quaternion, q: Quaternion) -> Quaternion:
    """Hamilton product."""
    return Quaternion(
        p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
        p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
        p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x,
        p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w,
    )


def quat_order(q: Quaternion, cap: int = 240) -> int:
    power = q
    for m in range(1, cap + 1):
        if power.is_one():
            return m
        power = quat_mul(power, q)
    raise NotFiniteOrderError(f"{q!r} has no finite order <= {cap}")


@total_ordering
@dataclass(frozen=True, eq=True)
class RationalAngle:
    """Eigenvalue pair ``exp(+-2 pi i k/m)``, normalized so 0 <= k/m <= 1/2.

    Construct through :meth:`of`, which reduces and folds.
    """

    k: int
    m: int

    def __post_init__(self):
        if self.m < 1 or self.k < 0 or 2 * self.k > self.m or math.gcd(self.k, self.m) != 1:
            raise ValueError(f"non-canonical angle {self.k}/{self.m}; use RationalAngle.of")

    @classmethod
    def of(cls, k: int, m: int) -> "RationalAngle":
        if m < 1:
            raise ValueError("angle denominator must be positive")
        k %= m
        k = min(k, m - k)
        g = math.gcd(k, m)
        return cls(k // g, m // g)

    @classmethod
    def parse(cls, text: str) -> "RationalAngle":
        k, _, m = text.partition("/")
        return cls.of(int(k), int(m or 1))

    @property
    def value(self) -> Fraction:
        return Fraction(self.k, self.m)

    def is_zero(self) -> bool:
        return self.k == 0

    def is_half(self) -> bool:
        return self.k == 1 and self.m == 2

    def two_cos_float(self) -> float:
        """Floating ``2 cos(2 pi k/m)``; exact for the table angles."""
        if self.m in SUPPORTED_ORDERS:
            return field_to_real(two_cos(self))
        return 2.0 * math.cos(2.0 * math.pi * self.k / self.m)

    def __lt__(self, other):
        if not isinstance(other, RationalAngle):
            return NotImplemented
        return self.value < other.value

    def __str__(self):
        return f"{self.k}/{self.m}"


_H = Fraction(1, 2)
_TWO_COS = {
    (0, 1): QuadField(2),
    (1, 2): QuadField(-2),
    (1, 3): QuadField(-1),
    (1, 4): QuadField(0),
    (1, 6): QuadField(1),
    (1, 5): QuadField(-_H, 0, _H),
    (2, 5): QuadField(-_H, 0, -_H),
    (1, 8): SQRT2,
    (3, 8): -SQRT2,
    (1, 10): QuadField(_H, 0, _H),
    (3, 10): QuadField(_H, 0, -_H),
}
SUPPORTED_ORDERS = frozenset({1, 2, 3, 4, 5, 6, 8, 10})


def two_cos(a: RationalAngle) -> QuadField:
    """Exact ``2 cos(2 pi k/m)`` for the eigenangles of the polyhedral groups."""
    try:
        return _TWO_COS[(a.k, a.m)]
    except KeyError:
        raise UnsupportedAngleError(f"angle {a} outside supported table") from None


def angle_from_quaternion(q: Quaternion) -> RationalAngle:
    m = quat_order(q)
    target = q.w * 2
    if m not in SUPPORTED_ORDERS:
        raise UnsupportedAngleError(f"unsupported order {m}")
    for k in range(0, m // 2 + 1):
        if math.gcd(k, m) != 1:
            continue
        a = RationalAngle(k, m)
        if two_cos(a) == target:
            return a
    raise UnsupportedAngleError(f"no angle of order {m} matches 2w = {target!r}")

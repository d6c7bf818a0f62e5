"""Exact scalars.

Rational scalars are plain ``fractions.Fraction`` values; the stdlib type
already guarantees the normalized p/q invariants (gcd(p, q) = 1, q > 0), so
we do not wrap it. This module adds the quadratic field Q(sqrt(d)) for a
fixed square-free d, plus the "p/q" string codec used by all JSON surfaces.

>>> u = QuadScalar.of(2, 1, 3)          # 2 + sqrt(3)
>>> (u * u.conj()).is_one()             # norm one unit
True
>>> parse_frac("-22/7")
Fraction(-22, 7)
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from .errors import PreconditionError

RatLike = int | Fraction


def frac(x, y=None) -> Fraction:
    """Coerce to Fraction. frac(3, 4) and frac("3/4") both work."""
    if y is not None:
        return Fraction(x, y)
    if isinstance(x, str):
        return parse_frac(x)
    return Fraction(x)


def parse_frac(s: str) -> Fraction:
    s = s.strip()
    if "/" in s:
        num, den = s.split("/", 1)
        return Fraction(int(num), int(den))
    return Fraction(int(s))


def frac_str(x: Rational) -> str:
    """Render a rational as "p" or "p/q" with q > 0."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class QuadScalar:
    """Element a + b*sqrt(d) of the real quadratic field Q(sqrt(d)).

    d is a fixed positive square-free integer carried on every element;
    mixing elements with different d is an error. Arithmetic is exact.
    Rational numbers coerce automatically in mixed expressions.
    """

    a: Fraction
    b: Fraction
    d: int

    @staticmethod
    def of(a, b, d: int) -> "QuadScalar":
        if d <= 0:
            raise PreconditionError("QuadScalar requires positive square-free d")
        return QuadScalar(Fraction(a), Fraction(b), d)

    @staticmethod
    def rational(a, d: int) -> "QuadScalar":
        return QuadScalar.of(a, 0, d)

    def _coerce(self, other) -> "QuadScalar":
        if isinstance(other, QuadScalar):
            if other.d != self.d:
                raise PreconditionError(f"mixed quadratic fields: sqrt({self.d}) vs sqrt({other.d})")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadScalar(Fraction(other), Fraction(0), self.d)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return QuadScalar(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return QuadScalar(self.a - o.a, self.b - o.b, self.d)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return QuadScalar(o.a - self.a, o.b - self.b, self.d)

    def __neg__(self):
        return QuadScalar(-self.a, -self.b, self.d)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return QuadScalar(self.a * o.a + self.d * self.b * o.b,
                          self.a * o.b + self.b * o.a, self.d)

    __rmul__ = __mul__

    def inverse(self) -> "QuadScalar":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("QuadScalar division by zero")
        return QuadScalar(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self.inverse()

    def conj(self) -> "QuadScalar":
        """Galois conjugate a - b*sqrt(d)."""
        return QuadScalar(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        """Field norm a^2 - d b^2 (a rational)."""
        return self.a * self.a - self.d * self.b * self.b

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_one(self) -> bool:
        return self.a == 1 and self.b == 0

    def is_rational(self) -> bool:
        return self.b == 0

    def as_fraction(self) -> Fraction:
        if self.b != 0:
            raise PreconditionError("not a rational element")
        return self.a

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        if isinstance(other, QuadScalar):
            return self.d == other.d and self.a == other.a and self.b == other.b
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def sign(self) -> int:
        """Sign of the real number a + b*sqrt(d), decided exactly.

        Compares a against -b*sqrt(d) by squaring; no floating point.
        """
        if self.b == 0:
            return (self.a > 0) - (self.a < 0)
        if self.a == 0:
            return 1 if self.b > 0 else -1
        if self.a > 0 and self.b > 0:
            return 1
        if self.a < 0 and self.b < 0:
            return -1
        # opposite signs: compare a^2 vs d b^2, winner is the larger magnitude
        lhs, rhs = self.a * self.a, self.d * self.b * self.b
        if lhs == rhs:
            return 0
        bigger_is_a = lhs > rhs
        return (1 if self.a > 0 else -1) if bigger_is_a else (1 if self.b > 0 else -1)

    def __lt__(self, other):
        o = self._coerce(other)
        return (self - o).sign() < 0

    def __le__(self, other):
        o = self._coerce(other)
        return (self - o).sign() <= 0

    def __gt__(self, other):
        o = self._coerce(other)
        return (self - o).sign() > 0

    def __ge__(self, other):
        o = self._coerce(other)
        return (self - o).sign() >= 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __repr__(self):
        if self.b == 0:
            return f"QuadScalar({frac_str(self.a)})"
        return f"QuadScalar({frac_str(self.a)} + {frac_str(self.b)}*sqrt({self.d}))"

    def to_json(self) -> dict:
        return {"a": frac_str(self.a), "b": frac_str(self.b), "d": self.d}

    @staticmethod
    def from_json(obj: dict) -> "QuadScalar":
        return QuadScalar.of(parse_frac(obj["a"]), parse_frac(obj["b"]), int(obj["d"]))

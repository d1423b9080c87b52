"""Exact scalars: rationals and elements of a real quadratic field Q(sqrt d)."""

from __future__ import annotations

from fractions import Fraction
from functools import total_ordering
from math import isqrt
from numbers import Rational
from typing import Union


class FieldMismatchError(ValueError):
    """Raised when elements of two different quadratic fields are combined."""


def squarefree_decomposition(n: int) -> tuple[int, int]:
    """Return ``(c, d)`` with ``n == c*c*d`` and ``d`` square-free (``n >= 1``)."""
    if n < 1:
        raise ValueError(f"expected a positive integer, got {n}")
    c, d = 1, 1
    m = n
    p = 2
    while p * p <= m:
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        c *= p ** (e // 2)
        if e % 2:
            d *= p
        p += 1
    return c, d * m


def rational_sqrt(q: Fraction) -> Fraction | None:
    """Exact square root of a non-negative rational, or None if irrational."""
    q = Fraction(q)
    if q < 0:
        raise ValueError("negative radicand")
    num, den = q.numerator, q.denominator
    rn, rd = isqrt(num), isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or an integer literal. Decimal notation is refused."""
    if not isinstance(text, str):
        if isinstance(text, int) and not isinstance(text, bool):
            return Fraction(text)
        raise ValueError(f"expected a 'p/q' string, got {text!r}")
    s = text.strip()
    if any(ch in s for ch in ".eE"):
        raise ValueError(f"decimal notation not allowed, use 'p/q': {text!r}")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational 'p/q': {text!r}") from exc


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


Number = Union[int, Fraction, "QuadraticNumber"]


@total_ordering
class QuadraticNumber:
    """``x + y*sqrt(d)`` with rational x, y and square-free d > 1.

    Elements with different ``d`` cannot be combined; rationals coerce into
    any field.
    """

    __slots__ = ("x", "y", "d")

    def __init__(self, x, y=0, d: int = 2):
        if d < 2 or squarefree_decomposition(d)[0] != 1:
            raise ValueError(f"d must be a square-free integer > 1, got {d}")
        self.x = Fraction(x)
        self.y = Fraction(y)
        self.d = d

    @classmethod
    def sqrt(cls, n: int) -> Number:
        """Exact square root of a non-negative integer in the right field."""
        if n == 0:
            return Fraction(0)
        c, d = squarefree_decomposition(n)
        if d == 1:
            return Fraction(c)
        return cls(0, c, d)

    def _coerce(self, other) -> QuadraticNumber | None:
        if isinstance(other, QuadraticNumber):
            if other.d != self.d:
                raise FieldMismatchError(f"Q(sqrt {self.d}) vs Q(sqrt {other.d})")
            return other
        if isinstance(other, Rational):
            return QuadraticNumber(Fraction(other), 0, self.d)
        return None

    def conjugate(self) -> QuadraticNumber:
        return QuadraticNumber(self.x, -self.y, self.d)

    def norm(self) -> Fraction:
        return self.x * self.x - self.d * self.y * self.y

    def is_rational(self) -> bool:
        return self.y == 0

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadraticNumber(self.x + o.x, self.y + o.y, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadraticNumber(-self.x, -self.y, self.d)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadraticNumber(self.x - o.x, self.y - o.y, self.d)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadraticNumber(
            self.x * o.x + self.d * self.y * o.y, self.x * o.y + self.y * o.x, self.d
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in quadratic field")
        return self * o.conjugate() * QuadraticNumber(1 / n, 0, self.d)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        out = QuadraticNumber(1, 0, self.d)
        for _ in range(k):
            out = out * self
        return out

    def sign(self) -> int:
        sx = (self.x > 0) - (self.x < 0)
        sy = (self.y > 0) - (self.y < 0)
        if sy == 0 or sx == sy:
            return sx or sy
        if sx == 0:
            return sy
        # opposite signs: compare x^2 with d*y^2
        return sx * ((self.x * self.x > self.d * self.y * self.y) - (self.x * self.x < self.d * self.y * self.y))

    def __eq__(self, other):
        if isinstance(other, QuadraticNumber):
            if other.d != self.d:
                return self.y == 0 and other.y == 0 and self.x == other.x
            return self.x == other.x and self.y == other.y
        if isinstance(other, Rational):
            return self.y == 0 and self.x == other
        return NotImplemented

    def __lt__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() < 0

    def __hash__(self):
        if self.y == 0:
            return hash(self.x)
        return hash((self.x, self.y, self.d))

    def __bool__(self):
        return self.x != 0 or self.y != 0

    def __float__(self):
        return float(self.x) + float(self.y) * self.d ** 0.5

    def __repr__(self):
        return f"QuadraticNumber({format_rational(self.x)}, {format_rational(self.y)}, d={self.d})"

    def __str__(self):
        if self.y == 0:
            return format_rational(self.x)
        rad = f"sqrt({self.d})" if self.y == 1 else f"{format_rational(self.y)}*sqrt({self.d})"
        if self.x == 0:
            return rad
        return f"{format_rational(self.x)} + {rad}"


def field_of(*values) -> int | None:
    """Common discriminant of the given scalars, None for pure rationals."""
    d = None
    for v in values:
        if isinstance(v, QuadraticNumber) and v.y != 0:
            if d is not None and v.d != d:
                raise FieldMismatchError(f"Q(sqrt {d}) vs Q(sqrt {v.d})")
            d = v.d
    return d

"""Exact real numbers of the form p + s*sqrt(q).

p, q rational, q >= 0, s in {-1, 0, 1}. Values whose radicand is a
rational square are folded into p, so equal numbers have equal
canonical forms. Comparison is exact: it reduces to sign tests of
single-radical expressions after at most two squarings.
"""

from __future__ import annotations

from fractions import Fraction
from functools import total_ordering
from numbers import Rational

import mpmath

from .scalars import format_rational, parse_rational, rational_sqrt


def _sgn(x) -> int:
    return (x > 0) - (x < 0)


def sign_single(a: Fraction, b: Fraction, c: Fraction) -> int:
    """Exact sign of a + b*sqrt(c) for c >= 0."""
    sa, sb = _sgn(a), _sgn(b) if c else 0
    if sb == 0:
        return sa
    if sa == 0 or sa == sb:
        return sb
    return sa * _sgn(a * a - b * b * c)


@total_ordering
class ExactEigenvalue:
    __slots__ = ("p", "s", "q")

    def __init__(self, p=0, s: int = 0, q=0):
        p, q = Fraction(p), Fraction(q)
        if s not in (-1, 0, 1):
            raise ValueError(f"s must be -1, 0 or 1, got {s}")
        if q < 0:
            raise ValueError(f"negative radicand {q}")
        if s == 0 or q == 0:
            s, q = 0, Fraction(0)
        else:
            r = rational_sqrt(q)
            if r is not None:
                p, s, q = p + s * r, 0, Fraction(0)
        self.p, self.s, self.q = p, s, q

    @classmethod
    def sqrt(cls, q, sign: int = 1) -> ExactEigenvalue:
        """``sign * sqrt(q)``."""
        return cls(0, sign, q)

    @classmethod
    def coerce(cls, x) -> ExactEigenvalue:
        if isinstance(x, ExactEigenvalue):
            return x
        if isinstance(x, Rational):
            return cls(x)
        raise TypeError(f"cannot convert {type(x).__name__} to ExactEigenvalue")

    # -- queries --------------------------------------------------------

    def is_rational(self) -> bool:
        return self.s == 0

    def rational(self) -> Fraction:
        if self.s:
            raise ValueError(f"{self} is irrational")
        return self.p

    def sign(self) -> int:
        return sign_single(self.p, Fraction(self.s), self.q)

    # -- arithmetic -----------------------------------------------------

    def __neg__(self):
        return ExactEigenvalue(-self.p, -self.s, self.q)

    def __pos__(self):
        return self

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __add__(self, other):
        if isinstance(other, Rational):
            return ExactEigenvalue(self.p + other, self.s, self.q)
        if not isinstance(other, ExactEigenvalue):
            return NotImplemented
        if other.s == 0:
            return self + other.p
        if self.s == 0:
            return other + self.p
        if self.q != other.q:
            raise ValueError(f"sum of distinct radicals sqrt({self.q}) and sqrt({other.q}) is not representable")
        coeff = self.s + other.s  # in {-2, 0, 2}
        return ExactEigenvalue(self.p + other.p, _sgn(coeff), coeff * coeff * self.q / 4)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (Rational, ExactEigenvalue)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Rational):
            c = Fraction(other)
            return ExactEigenvalue(self.p * c, self.s * _sgn(c), c * c * self.q)
        if not isinstance(other, ExactEigenvalue):
            return NotImplemented
        if other.s == 0:
            return self * other.p
        if self.s == 0:
            return other * self.p
        if self.q != other.q:
            raise ValueError("product of distinct radicals is not representable")
        # (p1 + s1 r)(p2 + s2 r) = p1 p2 + s1 s2 q + (p1 s2 + p2 s1) r
        lin = self.p * other.s + other.p * self.s
        return ExactEigenvalue(self.p * other.p + self.s * other.s * self.q, _sgn(lin), lin * lin * self.q)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Rational):
            return self * (1 / Fraction(other))
        return NotImplemented

    def square(self) -> ExactEigenvalue:
        """(p^2 + q) + sign(2ps) * sqrt(4 p^2 q)."""
        return ExactEigenvalue(self.p * self.p + self.q, _sgn(2 * self.p * self.s), 4 * self.p * self.p * self.q)

    # -- ordering -------------------------------------------------------

    def compare(self, other) -> int:
        """Exact sign of self - other."""
        o = ExactEigenvalue.coerce(other)
        dp = self.p - o.p
        if o.s == 0:
            return sign_single(dp, Fraction(self.s), self.q)
        if self.s == 0:
            return sign_single(dp, Fraction(-o.s), o.q)
        if self.q == o.q:
            return sign_single(dp, Fraction(self.s - o.s), self.q)
        # sign(left - right) with left = dp + s1 sqrt(q1), right = s2 sqrt(q2)
        sl = sign_single(dp, Fraction(self.s), self.q)
        sr = o.s
        if sl != sr:
            return _sgn(sl - sr)
        if sl == 0:
            return 0
        # same sign: compare squares, left^2 - right^2 = dp^2 + q1 - q2 + 2 dp s1 sqrt(q1)
        return sl * sign_single(dp * dp + self.q - o.q, 2 * dp * self.s, self.q)

    def __eq__(self, other):
        if isinstance(other, ExactEigenvalue):
            return (self.p, self.s, self.q) == (other.p, other.s, other.q)
        if isinstance(other, Rational):
            return self.s == 0 and self.p == other
        return NotImplemented

    def __lt__(self, other):
        if not isinstance(other, (ExactEigenvalue, Rational)):
            return NotImplemented
        return self.compare(other) < 0

    def __hash__(self):
        return hash(self.p) if self.s == 0 else hash((self.p, self.s, self.q))

    # -- conversion -----------------------------------------------------

    def __float__(self):
        return float(self.p) + self.s * float(self.q) ** 0.5

    def to_mpmath(self, dps: int = 64):
        with mpmath.workdps(dps):
            return mpmath.mpf(self.p.numerator) / self.p.denominator + self.s * mpmath.sqrt(
                mpmath.mpf(self.q.numerator) / self.q.denominator
            )

    def to_json(self) -> dict:
        return {"p": format_rational(self.p), "s": self.s, "q": format_rational(self.q)}

    @classmethod
    def from_json(cls, obj: dict) -> ExactEigenvalue:
        return cls(parse_rational(obj["p"]), int(obj["s"]), parse_rational(obj["q"]))

    def __repr__(self):
        return f"ExactEigenvalue({format_rational(self.p)}, {self.s}, {format_rational(self.q)})"

    def __str__(self):
        if self.s == 0:
            return format_rational(self.p)
        rad = f"sqrt({format_rational(self.q)})"
        if self.p == 0:
            return rad if self.s > 0 else f"-{rad}"
        return f"{format_rational(self.p)} {'+' if self.s > 0 else '-'} {rad}"

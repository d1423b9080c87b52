"""Exact exterior algebra of R^n in a fixed orthonormal frame.

Basis monomials e_I are keyed by a bitmask over the frame indices
1..n (bit i-1 set iff i is in I). Coefficients are exact scalars.
The orientation e_1 ^ ... ^ e_n is positive unless a Hodge call is
given ``orientation=-1``.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Iterable, Iterator, Mapping


class DimensionMismatchError(ValueError):
    pass


class GradeError(ValueError):
    pass


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << (i - 1)
    return m


def indices_of(mask: int) -> tuple[int, ...]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def reorder_sign(a: int, b: int) -> int:
    """Sign of e_A ^ e_B relative to e_{A|B}; 0 when A and B overlap."""
    if a & b:
        return 0
    swaps = 0
    bb = b
    while bb:
        low = bb & -bb
        swaps += popcount(a & ~((low << 1) - 1))
        bb ^= low
    return -1 if swaps & 1 else 1


def sorted_sign(seq: Iterable[int]) -> tuple[int, tuple[int, ...]]:
    """Sign of the permutation sorting ``seq`` (0 if an index repeats)."""
    items = list(seq)
    if len(set(items)) != len(items):
        return 0, ()
    sign = 1
    for i in range(1, len(items)):
        j = i
        while j > 0 and items[j - 1] > items[j]:
            items[j - 1], items[j] = items[j], items[j - 1]
            sign = -sign
            j -= 1
    return sign, tuple(items)


class Multivector:
    """Element of the exterior algebra of R^n with exact coefficients."""

    __slots__ = ("n", "_terms")

    def __init__(self, terms: Mapping[int, object] | None = None, n: int = 7):
        self.n = n
        full = (1 << n) - 1
        clean = {}
        for mask, c in (terms or {}).items():
            if mask & ~full:
                raise DimensionMismatchError(f"index set {indices_of(mask)} outside 1..{n}")
            if c:
                clean[mask] = Fraction(c) if isinstance(c, int) else c
        self._terms = clean

    # -- constructors ---------------------------------------------------

    @classmethod
    def basis(cls, *indices: int, n: int = 7, coeff=1) -> Multivector:
        """``coeff * e_{i1} ^ ... ^ e_{ik}`` for indices in any order."""
        if any(not 1 <= i <= n for i in indices):
            raise DimensionMismatchError(f"indices {indices} outside 1..{n}")
        sign, srt = sorted_sign(indices)
        if sign == 0:
            return cls({}, n)
        return cls({mask_of(srt): sign * Fraction(coeff) if isinstance(coeff, int) else sign * coeff}, n)

    @classmethod
    def scalar(cls, c, n: int = 7) -> Multivector:
        return cls({0: c}, n)

    @classmethod
    def vector(cls, coeffs: Iterable, n: int | None = None) -> Multivector:
        cs = list(coeffs)
        n = len(cs) if n is None else n
        return cls({1 << i: c for i, c in enumerate(cs)}, n)

    @classmethod
    def from_components(cls, grade: int, coeffs: Iterable, n: int = 7) -> Multivector:
        """Build a homogeneous element from coefficients in lexicographic basis order."""
        keys = basis_masks(grade, n)
        cs = list(coeffs)
        if len(cs) != len(keys):
            raise ValueError(f"expected {len(keys)} coefficients for grade {grade}, got {len(cs)}")
        return cls(dict(zip(keys, cs)), n)

    @classmethod
    def volume(cls, n: int = 7) -> Multivector:
        return cls({(1 << n) - 1: 1}, n)

    # -- access ---------------------------------------------------------

    def items(self) -> Iterator[tuple[int, object]]:
        return iter(sorted(self._terms.items()))

    def terms(self) -> dict[tuple[int, ...], object]:
        return {indices_of(m): c for m, c in self.items()}

    def coeff(self, *indices: int):
        sign, srt = sorted_sign(indices)
        if sign == 0:
            return Fraction(0)
        return sign * self._terms.get(mask_of(srt), Fraction(0))

    def components(self, grade: int) -> list:
        return [self._terms.get(m, Fraction(0)) for m in basis_masks(grade, self.n)]

    def grade(self, k: int) -> Multivector:
        return Multivector({m: c for m, c in self._terms.items() if popcount(m) == k}, self.n)

    def grades(self) -> set[int]:
        return {popcount(m) for m in self._terms}

    def is_homogeneous(self, k: int | None = None) -> bool:
        g = self.grades()
        if k is None:
            return len(g) <= 1
        return g <= {k}

    # -- vector space ---------------------------------------------------

    def _check(self, other: Multivector) -> None:
        if self.n != other.n:
            raise DimensionMismatchError(f"dimension {self.n} vs {other.n}")

    def __add__(self, other):
        if not isinstance(other, Multivector):
            if other == 0:
                return self
            other = Multivector.scalar(other, self.n)
        self._check(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, 0) + c
        return Multivector(out, self.n)

    __radd__ = __add__

    def __neg__(self):
        return Multivector({m: -c for m, c in self._terms.items()}, self.n)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, c):
        if isinstance(c, Multivector):
            return NotImplemented
        return Multivector({m: c * v for m, v in self._terms.items()}, self.n)

    __rmul__ = __mul__

    def __truediv__(self, c):
        return self * (1 / Fraction(c) if isinstance(c, int) else 1 / c)

    def __xor__(self, other):
        return wedge(self, other)

    def __eq__(self, other):
        if isinstance(other, Multivector):
            return self.n == other.n and self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self):
        return hash((self.n, frozenset(self._terms.items())))

    def __bool__(self):
        return bool(self._terms)

    def __repr__(self):
        if not self._terms:
            return "0"
        parts = []
        for m, c in self.items():
            name = "e" + "".join(map(str, indices_of(m))) if m else "1"
            parts.append(f"{c}*{name}")
        return " + ".join(parts)


def basis_masks(grade: int, n: int = 7) -> list[int]:
    """Masks of grade-k monomials in lexicographic order of index tuples."""
    return [mask_of(c) for c in combinations(range(1, n + 1), grade)]


def wedge(u: Multivector, v: Multivector) -> Multivector:
    u._check(v)
    out: dict[int, object] = {}
    for a, x in u._terms.items():
        for b, y in v._terms.items():
            s = reorder_sign(a, b)
            if s:
                out[a | b] = out.get(a | b, 0) + s * x * y
    return Multivector(out, u.n)


def hodge(u: Multivector, orientation: int = 1) -> Multivector:
    """Hodge star with ``e_I ^ *e_I = vol``, ``vol = orientation * e_1...n``."""
    if orientation not in (1, -1):
        raise ValueError("orientation must be +1 or -1")
    full = (1 << u.n) - 1
    out = {}
    for m, c in u._terms.items():
        comp = full ^ m
        out[comp] = orientation * reorder_sign(m, comp) * c
    return Multivector(out, u.n)


def contract(x: Multivector, u: Multivector) -> Multivector:
    """Interior product of the 1-form ``x`` into ``u`` (metric contraction)."""
    x._check(u)
    if not x.is_homogeneous(1):
        raise GradeError(f"contraction needs a 1-form, got grades {sorted(x.grades())}")
    out: dict[int, object] = {}
    for bit, xc in x._terms.items():
        for m, c in u._terms.items():
            if m & bit:
                # sign: (-1)^(number of indices of m below bit)
                s = -1 if popcount(m & (bit - 1)) & 1 else 1
                key = m ^ bit
                out[key] = out.get(key, 0) + s * xc * c
    return Multivector(out, u.n)


def inner(u: Multivector, v: Multivector):
    u._check(v)
    return sum((c * v._terms[m] for m, c in u._terms.items() if m in v._terms), Fraction(0))


def norm_sq(u: Multivector):
    return inner(u, u)

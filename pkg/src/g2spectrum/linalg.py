"""Exact dense linear algebra over Q or a quadratic field Q(sqrt d).

Matrices are lists of rows. Entries may be ints, Fractions or
QuadraticNumbers sharing one discriminant.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

from .scalars import field_of

Matrix = list[list]


def _norm(v):
    return Fraction(v) if isinstance(v, int) else v


def identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def zeros(rows: int, cols: int) -> Matrix:
    return [[Fraction(0)] * cols for _ in range(rows)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    if len(a[0]) != len(b):
        raise ValueError(f"shape mismatch: {len(a)}x{len(a[0])} @ {len(b)}x{len(b[0])}")
    bt = list(zip(*b))
    out = []
    for row in a:
        out.append([sum((x * y for x, y in zip(row, col) if x and y), Fraction(0)) for col in bt])
    return out


def matvec(a: Sequence[Sequence], v: Sequence) -> list:
    if len(a[0]) != len(v):
        raise ValueError("shape mismatch in matvec")
    return [sum((x * y for x, y in zip(row, v) if x and y), Fraction(0)) for row in a]


def add(a, b) -> Matrix:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def sub(a, b) -> Matrix:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def scale(c, a) -> Matrix:
    return [[c * x for x in row] for row in a]


def transpose(a) -> Matrix:
    return [list(col) for col in zip(*a)]


def is_zero(a) -> bool:
    return all(not x for row in a for x in row)


def trace(a):
    return sum((a[i][i] for i in range(len(a))), Fraction(0))


def block(blocks: Sequence[Sequence[Matrix]]) -> Matrix:
    """Assemble a block matrix from a grid of equally-shaped-per-row blocks."""
    out: Matrix = []
    for brow in blocks:
        for i in range(len(brow[0])):
            out.append([x for b in brow for x in b[i]])
    return out


def rref(a: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns.

    Raises FieldMismatchError if entries live in different quadratic fields.
    """
    field_of(*(x for row in a for x in row))
    m = [[_norm(x) for x in row] for row in a]
    if not m:
        return m, []
    rows, cols = len(m), len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def rank(a) -> int:
    return len(rref(a)[1])


def kernel(a: Sequence[Sequence]) -> list[list]:
    """Exact basis of the null space ``{v : a v = 0}``.

    Each basis vector has a 1 in one free column and zeros in the other
    free columns, so the basis is canonical for a given matrix.
    """
    cols = len(a[0])
    m, pivots = rref(a)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * cols
        v[f] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -m[r][f]
        basis.append(v)
    return basis


def nullity(a) -> int:
    return len(a[0]) - rank(a)


# -- fraction-free elimination over Z[sqrt d] --------------------------------
#
# Fast path for the torus sweep. A matrix is a pair (A, B) of integer
# matrices meaning A + sqrt(d) B. Row operations stay inside Z[sqrt d];
# rows are divided by the gcd of their integer parts to bound growth.


def _row_content_reduce(ra: list[int], rb: list[int]) -> tuple[list[int], list[int]]:
    g = gcd(*ra, *rb)
    if g > 1:
        ra = [x // g for x in ra]
        rb = [x // g for x in rb]
    return ra, rb


def zsqrt_rref(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]], d: int):
    """Fraction-free Gauss-Jordan form of A + sqrt(d) B.

    Returns (A', B', pivots); row r has a nonzero pivot at column
    pivots[r] and zeros in every other pivot column.
    """
    if not any(x for r in b for x in r):
        m, pivots = _int_rref(a)
        return m, [[0] * len(r) for r in m], pivots
    ra = [list(r) for r in a]
    rb = [list(r) for r in b]
    rows = len(ra)
    cols = len(ra[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if ra[i][c] or rb[i][c]), None)
        if p is None:
            continue
        ra[r], ra[p] = ra[p], ra[r]
        rb[r], rb[p] = rb[p], rb[r]
        pa, pb = ra[r], rb[r]
        xa, xb = pa[c], pb[c]
        for i in range(rows):
            if i == r:
                continue
            ya, yb = ra[i][c], rb[i][c]
            if not (ya or yb):
                continue
            # row_i <- pivot * row_i - y * row_r
            ia, ib = ra[i], rb[i]
            dxb, dyb = d * xb, d * yb
            na = [xa * u + dxb * v - ya * s - dyb * t for u, v, s, t in zip(ia, ib, pa, pb)]
            nb = [xa * v + xb * u - ya * t - yb * s for u, v, s, t in zip(ia, ib, pa, pb)]
            ra[i], rb[i] = _row_content_reduce(na, nb)
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return ra, rb, pivots


def _int_rref(a):
    m = [list(r) for r in a]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        pr = m[r]
        x = pr[c]
        for i in range(rows):
            if i != r and m[i][c]:
                y = m[i][c]
                row = [x * u - y * v for u, v in zip(m[i], pr)]
                g = gcd(*row)
                m[i] = [u // g for u in row] if g > 1 else row
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def zsqrt_rank(a, b, d: int) -> int:
    return len(zsqrt_rref(a, b, d)[2])


def zsqrt_kernel(a, b, d: int) -> list[tuple[list[int], list[int]]]:
    """Kernel basis of A + sqrt(d) B as (integer part, sqrt(d) part) pairs."""
    cols = len(a[0])
    ra, rb, pivots = zsqrt_rref(a, b, d)
    free = [c for c in range(cols) if c not in pivots]
    piv = [(ra[r][c], rb[r][c]) for r, c in enumerate(pivots)]
    out = []
    for f in free:
        va, vb = [0] * cols, [0] * cols
        # v_f = prod(P_r); v_{c_r} = -m[r][f] * prod_{s != r} P_s
        total = (1, 0)
        for pa_, pb_ in piv:
            total = (total[0] * pa_ + d * total[1] * pb_, total[0] * pb_ + total[1] * pa_)
        va[f], vb[f] = total
        for r, c in enumerate(pivots):
            other = (1, 0)
            for s, (pa_, pb_) in enumerate(piv):
                if s != r:
                    other = (other[0] * pa_ + d * other[1] * pb_, other[0] * pb_ + other[1] * pa_)
            ma, mb = ra[r][f], rb[r][f]
            va[c] = -(ma * other[0] + d * mb * other[1])
            vb[c] = -(ma * other[1] + mb * other[0])
        out.append(_row_content_reduce(va, vb))
    return out

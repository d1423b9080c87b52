"""The real Clifford algebra Cl(7) acting on the 8-dimensional spin module.

gamma_i is left multiplication by the imaginary octonion unit e_i on
R^8 = span(1, e_1, ..., e_7). Spinor component 0 is the real unit.
Clifford convention: e_i e_j + e_j e_i = -2 delta_ij.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from . import linalg
from .exterior import GradeError, DimensionMismatchError, Multivector, indices_of
from .linalg import Matrix, kernel as exact_kernel  # noqa: F401  (re-exported)

SPIN_DIM = 8

# Oriented Fano lines (i, j, k) meaning e_i e_j = e_k for imaginary units.
FANO_TRIPLES: tuple[tuple[int, int, int], ...] = (
    (1, 2, 3),
    (1, 5, 4),
    (1, 7, 6),
    (2, 4, 6),
    (2, 7, 5),
    (3, 4, 7),
    (3, 5, 6),
)


class CliffordRelationError(RuntimeError):
    def __init__(self, pairs):
        self.pairs = pairs
        super().__init__(f"Clifford relations fail for pairs {pairs}")


def octonion_structure(triples=FANO_TRIPLES) -> dict[tuple[int, int], tuple[int, int]]:
    """Map (i, j) -> (sign, k) with e_i e_j = sign * e_k for i != j in 1..7."""
    table = {}
    for a, b, c in triples:
        for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
            table[(x, y)] = (1, z)
            table[(y, x)] = (-1, z)
    return table


def _left_mult(i: int, table) -> Matrix:
    m = linalg.zeros(SPIN_DIM, SPIN_DIM)
    m[i][0] = Fraction(1)  # e_i * 1 = e_i
    m[0][i] = Fraction(-1)  # e_i * e_i = -1
    for j in range(1, 8):
        if j != i:
            s, k = table[(i, j)]
            m[k][j] = Fraction(s)
    return m


def build_gammas(triples=FANO_TRIPLES, sign: int = 1) -> tuple[Matrix, ...]:
    """Unverified gamma matrices; index 0 is unused (None) so gammas[i] is gamma_i."""
    table = octonion_structure(triples)
    return (None,) + tuple(linalg.scale(sign, _left_mult(i, table)) for i in range(1, 8))


def relation_failures(gammas: Sequence[Matrix]) -> list[tuple[int, int]]:
    """All pairs (i, j) violating gamma_i gamma_j + gamma_j gamma_i = -2 delta_ij."""
    bad = []
    for i in range(1, 8):
        for j in range(1, 8):
            anti = linalg.add(linalg.matmul(gammas[i], gammas[j]), linalg.matmul(gammas[j], gammas[i]))
            target = linalg.scale(-2 if i == j else 0, linalg.identity(SPIN_DIM))
            if anti != target:
                bad.append((i, j))
    return bad


@lru_cache(maxsize=None)
def standard_gammas() -> tuple[Matrix, ...]:
    """Verified gamma matrices; raises CliffordRelationError on a broken table."""
    g = build_gammas()
    bad = relation_failures(g)
    if bad:
        raise CliffordRelationError(bad)
    return g


def gamma(i: int) -> Matrix:
    if not 1 <= i <= 7:
        raise IndexError(f"frame index must be in 1..7, got {i}")
    return [row[:] for row in standard_gammas()[i]]


def monomial_action(indices: Sequence[int], gammas=None) -> Matrix:
    g = gammas or standard_gammas()
    out = linalg.identity(SPIN_DIM)
    for i in indices:
        out = linalg.matmul(out, g[i])
    return out


def clifford_action(u: Multivector, gammas=None) -> Matrix:
    """rho(u): linear extension of rho(e_I) = gamma_{i1} ... gamma_{ik}."""
    if u.n != 7:
        raise DimensionMismatchError(f"Clifford action needs a form on R^7, got n={u.n}")
    out = linalg.zeros(SPIN_DIM, SPIN_DIM)
    for mask, c in u.items():
        out = linalg.add(out, linalg.scale(c, monomial_action(indices_of(mask), gammas)))
    return out


def act(u: Multivector, spinor: Sequence, gammas=None) -> list:
    """Clifford product u . spinor."""
    return linalg.matvec(clifford_action(u, gammas), spinor)


def contraction_sum(u: Multivector, gammas=None) -> Matrix:
    """sum_i gamma_i rho(u) gamma_i."""
    g = gammas or standard_gammas()
    r = clifford_action(u, g)
    out = linalg.zeros(SPIN_DIM, SPIN_DIM)
    for i in range(1, 8):
        out = linalg.add(out, linalg.matmul(linalg.matmul(g[i], r), g[i]))
    return out


def contraction_identity_check(u: Multivector, gammas=None):
    """Return c with sum_i gamma_i rho(u) gamma_i = c rho(u) for a 1- or 2-form u.

    Raises ArithmeticError if the sum is not a multiple of rho(u).
    """
    if not u:
        raise ValueError("zero form has no defined factor")
    if not (u.is_homogeneous(1) or u.is_homogeneous(2)):
        raise GradeError(f"expected a homogeneous 1- or 2-form, got grades {sorted(u.grades())}")
    r = clifford_action(u, gammas)
    s = contraction_sum(u, gammas)
    i, j = next((i, j) for i in range(SPIN_DIM) for j in range(SPIN_DIM) if r[i][j])
    c = s[i][j] / r[i][j]
    if s != linalg.scale(c, r):
        raise ArithmeticError("contraction sum is not proportional to rho(u)")
    return c


def spinor_norm_sq(psi: Sequence):
    return sum((x * x for x in psi), Fraction(0))


def spinor_inner(phi: Sequence, psi: Sequence):
    return sum((x * y for x, y in zip(phi, psi)), Fraction(0))

import random
from fractions import Fraction

import pytest

from g2spectrum import linalg
from g2spectrum.scalars import FieldMismatchError, QuadraticNumber


def test_kernel_of_identity_is_trivial():
    assert linalg.kernel(linalg.identity(8)) == []
    assert linalg.rank(linalg.identity(8)) == 8


def test_kernel_vectors_are_annihilated_and_rank_nullity(rng):
    for _ in range(20):
        rows, cols = rng.randint(1, 6), rng.randint(1, 8)
        m = [[Fraction(rng.randint(-3, 3)) for _ in range(cols)] for _ in range(rows)]
        ker = linalg.kernel(m)
        assert linalg.rank(m) + len(ker) == cols
        for v in ker:
            assert linalg.matvec(m, v) == [0] * rows


def test_kernel_over_quadratic_field():
    r2 = QuadraticNumber.sqrt(2)
    m = [[r2, Fraction(1)], [Fraction(2), r2]]  # rows are proportional by sqrt(2)
    ker = linalg.kernel(m)
    assert len(ker) == 1
    assert linalg.matvec(m, ker[0]) == [0, 0]


def test_mixed_fields_rejected():
    with pytest.raises(FieldMismatchError):
        linalg.rank([[QuadraticNumber.sqrt(2), QuadraticNumber.sqrt(3)]])


def _to_field(a, b, d):
    return [[x + y * QuadraticNumber.sqrt(d) if y else Fraction(x) for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


@pytest.mark.parametrize("d", [2, 3, 5, 6])
def test_fraction_free_path_agrees_with_field_elimination(d):
    rng = random.Random(d)
    for _ in range(15):
        rows, cols = rng.randint(1, 6), rng.randint(1, 7)
        a = [[rng.randint(-2, 2) for _ in range(cols)] for _ in range(rows)]
        b = [[rng.choice([0, 0, rng.randint(-2, 2)]) for _ in range(cols)] for _ in range(rows)]
        field = _to_field(a, b, d)
        assert linalg.zsqrt_rank(a, b, d) == linalg.rank(field)
        for va, vb in linalg.zsqrt_kernel(a, b, d):
            v = [x + y * QuadraticNumber.sqrt(d) if y else Fraction(x) for x, y in zip(va, vb)]
            assert any(v)
            assert all(x == 0 for x in linalg.matvec(field, v))


def test_block_assembly():
    i2 = linalg.identity(2)
    z = linalg.zeros(2, 2)
    m = linalg.block([[z, i2], [i2, z]])
    assert linalg.matmul(m, m) == linalg.identity(4)

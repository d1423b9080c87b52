from itertools import combinations

import pytest
from hypothesis import given

from g2spectrum import clifford, linalg
from g2spectrum.clifford import (
    CliffordRelationError,
    clifford_action,
    contraction_identity_check,
    exact_kernel,
    gamma,
    relation_failures,
)
from g2spectrum.exterior import GradeError, Multivector, inner
from g2spectrum.g2 import omega_from_coframe, three_sasakian_coframe

from strategies import forms

e = Multivector.basis
ID = linalg.identity(8)


def test_gamma_squares_and_anticommutes():
    assert linalg.matmul(gamma(1), gamma(1)) == linalg.scale(-1, ID)
    anti = linalg.add(linalg.matmul(gamma(1), gamma(2)), linalg.matmul(gamma(2), gamma(1)))
    assert linalg.is_zero(anti)


def test_full_relation_table():
    assert relation_failures(clifford.standard_gammas()) == []


def test_gamma_entries_and_skew():
    for i in range(1, 8):
        g = gamma(i)
        assert all(x in (-1, 0, 1) for row in g for x in row)
        assert g == linalg.scale(-1, linalg.transpose(g))


def test_gamma_index_range():
    with pytest.raises(IndexError):
        gamma(0)
    with pytest.raises(IndexError):
        gamma(8)


def test_corrupted_table_is_detected():
    bad = list(clifford.build_gammas())
    bad[3] = linalg.scale(-1, bad[4])  # gamma_3 := -gamma_4
    failures = relation_failures(bad)
    assert (3, 4) in failures and (4, 3) in failures


def test_corrupted_octonion_table_breaks_relations():
    triples = list(clifford.FANO_TRIPLES)
    triples[0] = (2, 1, 3)  # wrong orientation of one line
    assert relation_failures(clifford.build_gammas(tuple(triples)))


def test_clifford_action_basics():
    assert clifford_action(Multivector.scalar(1)) == ID
    r1 = clifford_action(e(1))
    assert linalg.matmul(r1, r1) == linalg.scale(-1, ID)
    # rho of a wedge is not the product of rhos in general
    r12 = clifford_action(e(1, 2))
    assert r12 == linalg.matmul(gamma(1), gamma(2))
    assert clifford_action(e(1) + e(1, 2)) == linalg.add(r1, r12)


def test_rho_omega_spectrum():
    r = clifford_action(omega_from_coframe(three_sasakian_coframe()))
    assert len(exact_kernel(linalg.add(r, linalg.scale(7, ID)))) == 1
    assert len(exact_kernel(linalg.sub(r, ID))) == 7
    assert linalg.trace(r) == 0


def test_kernel_generator_is_the_unit_octonion():
    r = clifford_action(omega_from_coframe(three_sasakian_coframe()))
    (v,) = exact_kernel(linalg.add(r, linalg.scale(7, ID)))
    assert v == [1, 0, 0, 0, 0, 0, 0, 0]


def test_contraction_factors():
    assert contraction_identity_check(e(1)) == 5
    assert contraction_identity_check(e(1, 2)) == -3


def test_contraction_rejects_other_grades():
    with pytest.raises(GradeError):
        contraction_identity_check(e(1, 2, 3))
    with pytest.raises(GradeError):
        contraction_identity_check(e(1) + e(2, 3))


@given(forms(1))
def test_contraction_factor_one_forms(x):
    if x:
        assert contraction_identity_check(x) == 5


@given(forms(2))
def test_contraction_factor_two_forms(s):
    if s:
        assert contraction_identity_check(s) == -3


@given(forms(1))
def test_one_form_squares_to_minus_norm(x):
    r = clifford_action(x)
    assert linalg.matmul(r, r) == linalg.scale(-inner(x, x), ID)


@given(forms(1))
def test_one_forms_act_skew_so_psi_is_orthogonal(x):
    r = clifford_action(x)
    assert r == linalg.scale(-1, linalg.transpose(r))
    psi = [1, 0, 0, 0, 0, 0, 0, 0]
    assert clifford.spinor_inner(linalg.matvec(r, psi), psi) == 0


def test_monomial_traces():
    for k in range(1, 7):
        for idx in combinations(range(1, 8), k):
            assert linalg.trace(clifford.monomial_action(idx)) == 0
    vol = clifford.monomial_action(range(1, 8))
    assert vol in (ID, linalg.scale(-1, ID))


def test_relation_error_carries_pairs():
    err = CliffordRelationError([(1, 2)])
    assert err.pairs == [(1, 2)]

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from g2spectrum import clifford, g2, linalg, torus
from g2spectrum.exterior import Multivector
from g2spectrum.radicals import ExactEigenvalue as E
from g2spectrum.scalars import QuadraticNumber, squarefree_decomposition
from g2spectrum.torus import FourierMode


def field_dims(mode):
    """Oracle: nullities of D -+ |k| Id by generic elimination in Q(sqrt d)."""
    rho = clifford.clifford_action(mode.covector())
    z = linalg.zeros(8, 8)
    d_mat = linalg.block([[z, rho], [linalg.scale(-1, rho), z]])
    c, d = squarefree_decomposition(mode.norm_sq)
    out = {}
    for s in (1, -1):
        root = Fraction(s * c) if d == 1 else QuadraticNumber(0, s * c, d)
        shifted = [[d_mat[i][j] - (root if i == j else 0) for j in range(16)] for i in range(16)]
        out[s] = linalg.nullity(shifted)
    return out


ks = st.lists(st.integers(-3, 3), min_size=7, max_size=7).filter(any)


def test_mode_canonicalisation():
    m = FourierMode.canonical((0, -1, 2, 0, 0, 0, 0))
    assert m.k == (0, 1, -2, 0, 0, 0, 0)
    assert m.norm_sq == 5 and m.field_disc == 5
    assert FourierMode.canonical((0, 0, 2, 0, 0, 2, 0)).field_disc == 2
    with pytest.raises(ValueError):
        FourierMode((1, 2))


def test_enumeration_counts():
    assert len(torus.enumerate_modes(1)) == 7
    assert len(torus.enumerate_modes(2)) == 7 + 42
    modes = torus.enumerate_modes(3)
    assert all(m == FourierMode.canonical(m.k) for m in modes)
    assert [m.norm_sq for m in modes] == sorted(m.norm_sq for m in modes)
    with pytest.raises(ValueError):
        torus.enumerate_modes(0)


def test_e1_example():
    mode = FourierMode.canonical((1, 0, 0, 0, 0, 0, 0))
    ms = torus.analyze_mode(mode)
    assert ms.direct == [(E(-1), 8), (E(1), 8)]
    assert ms.predicted_functions == [(E(-1), 2), (E(1), 2)]
    assert ms.predicted_forms == [(E(-1), 6), (E(1), 6)]
    assert ms.passed


def test_irrational_example():
    mode = FourierMode.canonical((1, 1, 0, 0, 0, 0, 0))
    ms = torus.analyze_mode(mode)
    assert ms.direct == [(E.sqrt(2, -1), 8), (E.sqrt(2), 8)]
    assert ms.passed


def test_perfect_square_norm():
    mode = FourierMode.canonical((2, 0, 0, 0, 0, 0, 0))
    assert torus.analyze_mode(mode).direct == [(E(-2), 8), (E(2), 8)]
    mode = FourierMode.canonical((1, 1, 1, 1, 0, 0, 0))
    ms = torus.analyze_mode(mode)
    assert ms.direct == [(E(-2), 8), (E(2), 8)] and ms.passed


def test_mode_matrix_symmetric_and_squares():
    mode = FourierMode.canonical((1, -2, 0, 1, 0, 3, 0))
    m = torus.dirac_mode_matrix(mode)
    assert m == linalg.transpose(m)
    assert linalg.matmul(m, m) == linalg.scale(mode.norm_sq, linalg.identity(16))
    with pytest.raises(torus.ZeroModeError):
        torus.dirac_mode_matrix(FourierMode((0,) * 7))


@settings(max_examples=25)
@given(ks)
def test_fast_path_agrees_with_field_elimination(k):
    mode = FourierMode.canonical(k)
    assert torus.direct_eigen_dims(mode) == field_dims(mode)


@settings(max_examples=25)
@given(ks)
def test_predictions_match_direct(k):
    ms = torus.analyze_mode(FourierMode.canonical(k))
    assert ms.passed, ms.checks


@settings(max_examples=25)
@given(ks)
def test_cross_matrix_is_g2_cross_operator(k):
    mode = FourierMode.canonical(k)
    assert torus.cross_matrix(mode) == g2.cross_operator(mode.covector())
    assert all(torus.cross_operator_properties(mode).values())


@settings(max_examples=15)
@given(ks)
def test_eigenspaces_are_exact(k):
    mode = FourierMode.canonical(k)
    spaces = torus.direct_eigenspaces(mode)
    m = torus.dirac_mode_matrix(mode)
    for s, vecs in spaces.items():
        assert len(vecs) == 8
        assert all(torus._is_eigvec(m, u, v, s, mode.norm_sq) for u, v in vecs)


def test_form_eigenvectors_are_coclosed_eigenvectors_of_L():
    mode = FourierMode.canonical((1, 2, 0, 0, -1, 0, 0))
    for s in (1, -1):
        vecs = torus.form_eigenvectors(mode, s)
        assert len(vecs) == 6
        rows = torus.coclosed_rows(mode)
        for u, v in vecs:
            assert linalg.matvec(rows, u) == [0, 0] and linalg.matvec(rows, v) == [0, 0]


def test_kernel_report():
    rep = torus.kernel_description()
    assert (rep.kernel_dim, rep.function_part_dim, rep.form_part_dim, rep.direct_sum_dim) == (8, 1, 7, 8)
    assert rep.passed


def test_plane_wave_calculus():
    mode = FourierMode.canonical((1, 0, 0, 0, 0, 0, 0))
    e = Multivector.basis
    w = torus.PlaneWave(mode, e(2), Multivector({}, 7))
    assert w.d().sin == -e(1, 2) and not w.d().cos
    assert not w.delta().cos and not w.delta().sin
    lap = w.laplacian()
    assert lap.cos == e(2) and not lap.sin
    # d d = 0
    assert not w.d().d().cos and not w.d().d().sin


def test_lemma2_examples():
    rep = torus.lemma2_flat_check(FourierMode.canonical((1, 0, 0, 0, 0, 0, 0)))
    assert rep.passed
    assert {row[0] for row in rep.eigen_checks} == {E(1), E(-1)}
    rep = torus.lemma2_flat_check(FourierMode.canonical((1, 1, 1, 0, 0, 0, 0)))
    assert rep.passed and len(rep.eigen_checks) == 12
    with pytest.raises(torus.ZeroModeError):
        torus.lemma2_flat_check(FourierMode((0,) * 7))


def test_sweep_one():
    res = torus.spectrum_sweep(1)
    assert len(res.modes) == 7 and res.all_match
    assert res.lambda0 == [1] and res.lambda1_plus == [1] and res.lambda1_minus == [1]
    assert res.mu2_direct == 1


def test_sweep_four_and_workers():
    res = torus.spectrum_sweep(4)
    assert res.all_match
    assert res.lambda0 == [1, 2, 3, 4]
    par = torus.spectrum_sweep(2, workers=2)
    seq = torus.spectrum_sweep(2)
    assert [m.mode for m in par.modes] == [m.mode for m in seq.modes]
    assert [m.direct for m in par.modes] == [m.direct for m in seq.modes]


def test_broken_eigen_check_detected():
    mode = FourierMode.canonical((1, 1, 0, 0, 0, 0, 0))
    m = torus.dirac_mode_matrix(mode)
    (u, v), _ = torus.function_eigenspinors(mode, 1)
    assert torus._is_eigvec(m, u, v, 1, 2)
    assert not torus._is_eigvec(m, u, v, -1, 2)
    assert not torus._is_eigvec(m, [0] * 16, [0] * 16, 1, 2)

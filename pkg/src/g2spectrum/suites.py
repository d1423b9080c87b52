"""Verification suites behind ``verify-algebra`` and ``verify-sasakian``."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations

from . import clifford, g2, linalg, spectral
from .exterior import Multivector, basis_masks, contract, hodge, inner, wedge
from .reports import RunReport
from .scalars import format_rational


def _rand_q(rng: random.Random, bound: int = 9) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def _rand_form(grade: int, rng: random.Random) -> Multivector:
    return Multivector.from_components(grade, [_rand_q(rng) for _ in basis_masks(grade)])


def eigen_multiplicity(matrix, value) -> int:
    n = len(matrix)
    return linalg.nullity(linalg.sub(matrix, linalg.scale(value, linalg.identity(n))))


def verify_algebra(seed: int = 0, gammas=None, samples: int = 25) -> RunReport:
    """Clifford relations, contraction identities, Hodge identities, the algebraic lemma."""
    rng = random.Random(seed)
    report = RunReport("verify-algebra")
    g = gammas or clifford.standard_gammas()

    bad = clifford.relation_failures(g)
    report.check("clifford_relations_49_pairs", not bad, witness=[list(p) for p in bad[:5]])
    if bad:
        report.skip("remaining_algebra_checks", "gamma table broken")
        return report

    report.check("gammas_skew_integer", all(
        g[i][r][c] == -g[i][c][r] and g[i][r][c] in (-1, 0, 1) for i in range(1, 8) for r in range(8) for c in range(8)
    ))
    c1 = clifford.contraction_identity_check(Multivector.basis(1), g)
    c2 = clifford.contraction_identity_check(Multivector.basis(1, 2), g)
    report.check("contraction_grade1_factor_5", c1 == 5, witness=str(c1))
    report.check("contraction_grade2_factor_-3", c2 == -3, witness=str(c2))
    rand_ok = True
    for _ in range(samples):
        for grade, want in ((1, 5), (2, -3)):
            u = _rand_form(grade, rng)
            if u and clifford.contraction_identity_check(u, g) != want:
                rand_ok = False
    report.check("contraction_random_forms", rand_ok)

    sq_ok = True
    for _ in range(samples):
        x = _rand_form(1, rng)
        r = clifford.clifford_action(x, g)
        if linalg.matmul(r, r) != linalg.scale(-inner(x, x), linalg.identity(8)):
            sq_ok = False
    report.check("one_form_square_is_minus_norm", sq_ok)
    # the volume element is central and acts as +-Id on this irreducible module
    traces = [
        idx for k in range(1, 7) for idx in combinations(range(1, 8), k)
        if linalg.trace(clifford.monomial_action(idx, g)) != 0
    ]
    report.check("monomials_traceless_grades_1_to_6", not traces, witness=[list(t) for t in traces[:5]])
    vol_action = clifford.monomial_action(range(1, 8), g)
    report.check("volume_acts_as_plus_minus_identity",
                 vol_action in (linalg.identity(8), linalg.scale(-1, linalg.identity(8))))

    structure = g2.standard_structure()
    rho_w = structure.rho(structure.omega3)
    m7, m1 = eigen_multiplicity(rho_w, -7), eigen_multiplicity(rho_w, 1)
    report.check("rho_omega_spectrum_-7x1_+1x7", (m7, m1) == (1, 7), witness={"-7": m7, "+1": m1})
    report.check("rho_omega_psi_is_-7_psi", structure.act(structure.omega3) == [-7 * x for x in structure.psi])

    inv_ok = all(
        hodge(hodge(Multivector({m: 1}))) == Multivector({m: 1}) for k in range(8) for m in basis_masks(k)
    )
    report.check("hodge_involution_all_grades", inv_ok)
    vol = Multivector.volume()
    wedge_star_ok = adj_ok = anti_ok = True
    for _ in range(samples):
        k = rng.randint(0, 7)
        u, v = _rand_form(k, rng), _rand_form(k, rng)
        wedge_star_ok &= wedge(u, hodge(v)) == inner(u, v) * vol
        x = _rand_form(1, rng)
        w = _rand_form(min(k + 1, 7), rng)
        adj_ok &= inner(contract(x, w), u) == inner(w, wedge(x, u)) if k < 7 else True
        j = rng.randint(0, 7 - k)
        a, b = _rand_form(k, rng), _rand_form(j, rng)
        anti_ok &= wedge(a, b) == (-1) ** (k * j) * wedge(b, a)
    report.check("wedge_star_is_inner_times_vol", wedge_star_ok)
    report.check("contract_adjoint_to_wedge", adj_ok)
    report.check("wedge_graded_anticommutative", anti_ok)

    lemma = g2.lemma1_check(structure, trials=100, seed=seed)
    report.check("lemma_phi_rank_8", lemma.rank == 8, witness=lemma.rank)
    report.check("lemma_kernel_dim_21", lemma.kernel_dim == 21, witness=lemma.kernel_dim)
    report.check("lemma_kernel_equals_graph_of_L", lemma.expected_in_kernel and lemma.kernel_in_expected,
                 witness=[str(x) for x in lemma.witness] if lemma.witness else None)
    report.check("lemma_random_instances_100", lemma.random_failures == 0, witness=lemma.random_failures)

    skew_ok = rel_ok = True
    basis1 = [Multivector.basis(i) for i in range(1, 8)]
    rel_sign = None
    for x in basis1:
        lam = g2.cross_operator(x, structure)
        skew_ok &= lam == linalg.scale(-1, linalg.transpose(lam))
        for ui, u in enumerate(basis1):
            for vi, v in enumerate(basis1):
                lhs = lam[vi][ui]  # <Lambda_x(u), v>
                rhs = inner(structure.omega3, wedge(wedge(x, u), v))
                if rhs:
                    s = lhs / rhs
                    rel_sign = rel_sign or s
                    rel_ok &= s == rel_sign and s in (1, -1)
                else:
                    rel_ok &= lhs == 0
    report.check("cross_operator_skew_adjoint", skew_ok)
    report.check("cross_operator_is_omega_evaluation", rel_ok, detail=f"global sign {rel_sign}")
    for _ in range(samples):
        x = _rand_form(1, rng)
        lam = g2.cross_operator(x, structure)
        target = [[-inner(x, x) * (i == j) + x.coeff(i + 1) * x.coeff(j + 1) for j in range(7)] for i in range(7)]
        if linalg.matmul(lam, lam) != target:
            report.check("cross_operator_square", False, witness=str(x))
            break
    else:
        report.check("cross_operator_square", True)
    return report


def verify_sasakian() -> RunReport:
    """The 3-Sasakian coframe relations and the omega / *omega expansions."""
    report = RunReport("verify-sasakian")
    structure = g2.standard_structure()
    cf = g2.three_sasakian_coframe()
    omega = g2.omega_from_coframe(cf)
    star_formula = g2.star_omega_from_coframe(cf)

    coeffs = [c for _, c in omega.items()]
    report.check("omega_seven_unit_coefficients", len(coeffs) == 7 and all(abs(c) == 1 for c in coeffs),
                 witness=len(coeffs))
    report.check("omega_e123_coefficient_+1", omega.coeff(1, 2, 3) == 1)
    report.check("omega_norm_sq_7", inner(omega, omega) == 7)
    report.check("star_omega_matches_coframe_formula", hodge(omega, structure.orientation_sign) == star_formula)
    report.check("orientation_is_e1_to_e7", structure.orientation_sign == 1, witness=structure.orientation_sign)

    expected = (-2, 6, 6)
    factors = []
    for (eta, img, factor), want, name in zip(g2.sasakian_relations(structure), expected, ("eta1", "eta2", "eta3")):
        factors.append(None if factor is None else format_rational(factor))
        report.check(f"L(d{name}) = {want} {name}", factor == want, witness=str(img))
    half = Fraction(1, 2)
    lams = [spectral.lemma2_lambda(7, half, c) for c in (-2, 6)]
    report.check("lambda1_from_c(c-8a)_both_12", lams == [12, 12], witness=[str(x) for x in lams])

    report.tables["omega3"] = [list(r) for r in g2.coefficient_table(omega)]
    report.tables["star_omega3"] = [list(r) for r in g2.coefficient_table(hodge(omega))]
    report.payload["relation_factors"] = factors
    return report

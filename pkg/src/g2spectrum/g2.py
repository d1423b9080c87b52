"""Nearly parallel G2 algebra in a fixed frame.

The 3-form is obtained by expanding the 3-Sasakian coframe
``omega = 1/2 (eta1 ^ d eta1 - eta2 ^ d eta2 - eta3 ^ d eta3)``; the
distinguished spinor psi spans the -7 eigenspace of rho(omega).
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from . import clifford, linalg
from .scalars import rational_sqrt
from .exterior import GradeError, Multivector, basis_masks, hodge, indices_of, inner, wedge

log = logging.getLogger(__name__)

e = Multivector.basis


@dataclass(frozen=True)
class CoframeData:
    eta1: Multivector
    eta2: Multivector
    eta3: Multivector
    d_eta1: Multivector
    d_eta2: Multivector
    d_eta3: Multivector

    @property
    def etas(self):
        return (self.eta1, self.eta2, self.eta3)

    @property
    def d_etas(self):
        return (self.d_eta1, self.d_eta2, self.d_eta3)


def three_sasakian_coframe() -> CoframeData:
    return CoframeData(
        eta1=e(1),
        eta2=e(2),
        eta3=e(3),
        d_eta1=-2 * (e(2, 3) + e(4, 5) + e(6, 7)),
        d_eta2=2 * (e(1, 3) - e(4, 6) + e(5, 7)),
        d_eta3=-2 * (e(1, 2) + e(4, 7) + e(5, 6)),
    )


def omega_from_coframe(cf: CoframeData) -> Multivector:
    return (wedge(cf.eta1, cf.d_eta1) - wedge(cf.eta2, cf.d_eta2) - wedge(cf.eta3, cf.d_eta3)) / 2


def star_omega_from_coframe(cf: CoframeData) -> Multivector:
    """The 4-form -1/8 (d eta1^2 - d eta2^2 - d eta3^2), independent of any Hodge star."""
    return -(wedge(cf.d_eta1, cf.d_eta1) - wedge(cf.d_eta2, cf.d_eta2) - wedge(cf.d_eta3, cf.d_eta3)) / 8


class G2BuildError(RuntimeError):
    pass


@dataclass(frozen=True)
class G2Structure:
    omega3: Multivector
    star_omega3: Multivector
    psi: tuple
    orientation_sign: int
    gammas: tuple = field(repr=False)
    # -1 when the opposite Clifford module (gamma -> -gamma) had to be used
    module_sign: int = 1

    def rho(self, u: Multivector):
        return clifford.clifford_action(u, self.gammas)

    def act(self, u: Multivector, spinor=None) -> list:
        return linalg.matvec(self.rho(u), list(self.psi if spinor is None else spinor))

    def hodge(self, u: Multivector) -> Multivector:
        return hodge(u, self.orientation_sign)


def _minus_seven_spinor(omega: Multivector, gammas):
    r = clifford.clifford_action(omega, gammas)
    ker = linalg.kernel(linalg.add(r, linalg.scale(7, linalg.identity(8))))
    if len(ker) != 1:
        return None
    v = ker[0]
    lead = next(x for x in v if x)
    v = [x / lead for x in v]  # first nonzero entry becomes +1
    n2 = clifford.spinor_norm_sq(v)
    root = rational_sqrt(n2)
    if root is None:
        log.warning("-7 eigenspinor has irrational norm; keeping unnormalised generator")
        return tuple(v)
    return tuple(x / root for x in v)


def build_standard_structure(coframe: CoframeData | None = None) -> G2Structure:
    """Build the G2 structure of the 3-Sasakian coframe and its spinor.

    The orientation is the one under which hodge(omega) reproduces the
    coframe 4-form. If rho(omega) has no -7 eigenvalue the opposite
    Clifford module is tried before giving up.
    """
    cf = coframe or three_sasakian_coframe()
    omega = omega_from_coframe(cf)
    target = star_omega_from_coframe(cf)
    orientation = next((o for o in (1, -1) if hodge(omega, o) == target), None)
    if orientation is None:
        raise G2BuildError("hodge(omega) matches the coframe 4-form under neither orientation")
    if orientation == -1:
        log.info("orientation flipped to -e1...e7 to match the coframe 4-form")

    for sign in (1, -1):
        gammas = clifford.standard_gammas() if sign == 1 else clifford.build_gammas(sign=-1)
        psi = _minus_seven_spinor(omega, gammas)
        if psi is not None:
            if sign == -1:
                log.info("rho(omega) had +7; switched to the opposite Clifford module")
            return G2Structure(omega, hodge(omega, orientation), psi, orientation, gammas, sign)
    raise G2BuildError("rho(omega) has no -7 eigenvalue in either Clifford module")


@lru_cache(maxsize=None)
def standard_structure() -> G2Structure:
    return build_standard_structure()


def L(sigma: Multivector, structure: G2Structure | None = None) -> Multivector:
    """The map sigma -> -*(sigma ^ *omega) from 2-forms to 1-forms."""
    if not sigma.is_homogeneous(2):
        raise GradeError(f"L expects a 2-form, got grades {sorted(sigma.grades())}")
    g = structure or standard_structure()
    return -g.hodge(wedge(sigma, g.star_omega3))


def cross_operator(x: Multivector, structure: G2Structure | None = None) -> linalg.Matrix:
    """Matrix (columns = images of e_1..e_7) of eta -> L(x ^ eta)."""
    if not x.is_homogeneous(1):
        raise GradeError(f"cross operator needs a 1-form, got grades {sorted(x.grades())}")
    g = structure or standard_structure()
    cols = [L(wedge(x, e(j)), g).components(1) for j in range(1, 8)]
    return linalg.transpose(cols)


# -- algebraic lemma ---------------------------------------------------------

ONE_FORMS = basis_masks(1)
TWO_FORMS = basis_masks(2)


def phi_matrix(structure: G2Structure | None = None) -> linalg.Matrix:
    """8 x 29 matrix of (eta, sigma, c) -> (eta + sigma + c) . psi.

    Column order: e_1..e_7, then e_ij lexicographically, then the constant.
    """
    g = structure or standard_structure()
    cols = [g.act(Multivector({m: 1})) for m in ONE_FORMS + TWO_FORMS]
    cols.append(list(g.psi))
    return linalg.transpose(cols)


def lemma_vector(sigma: Multivector, structure: G2Structure | None = None) -> list:
    """Coordinates of (L(sigma), sigma, 0) in the domain of phi_matrix."""
    return L(sigma, structure).components(1) + sigma.components(2) + [Fraction(0)]


@dataclass
class Lemma1Report:
    rank: int
    kernel_dim: int
    expected_in_kernel: bool
    kernel_in_expected: bool
    random_trials: int
    random_failures: int
    witness: list | None = None

    @property
    def passed(self) -> bool:
        return (
            self.rank == 8
            and self.kernel_dim == 21
            and self.expected_in_kernel
            and self.kernel_in_expected
            and self.random_failures == 0
        )


def random_form(grade: int, rng: random.Random, bound: int = 9) -> Multivector:
    comps = [Fraction(rng.randint(-bound, bound), rng.randint(1, bound)) for _ in basis_masks(grade)]
    return Multivector.from_components(grade, comps)


def lemma1_check(structure: G2Structure | None = None, trials: int = 100, seed: int = 0) -> Lemma1Report:
    g = structure or standard_structure()
    phi = phi_matrix(g)
    rk = linalg.rank(phi)
    ker = linalg.kernel(phi)
    expected = [lemma_vector(Multivector({m: 1}), g) for m in TWO_FORMS]

    witness = None
    exp_in_ker = True
    for v in expected:
        if any(linalg.matvec(phi, v)):
            exp_in_ker, witness = False, v
            break
    # kernel inside span(expected) iff stacking them does not raise the rank
    span_rank = linalg.rank(expected)
    joint_rank = linalg.rank(expected + ker)
    ker_in_exp = joint_rank == span_rank == 21
    if not ker_in_exp and witness is None:
        witness = next((v for v in ker if linalg.rank(expected + [v]) > span_rank), None)

    rng = random.Random(seed)
    failures = 0
    for _ in range(trials):
        sigma = random_form(2, rng)
        v = lemma_vector(sigma, g)
        if any(linalg.matvec(phi, v)):
            failures += 1
            witness = witness or v
    return Lemma1Report(rk, len(ker), exp_in_ker, ker_in_exp, trials, failures, witness)


def sasakian_relations(structure: G2Structure | None = None) -> list[tuple[Multivector, Multivector, Fraction | None]]:
    """For each coframe pair (eta_i, d eta_i): (eta_i, L(d eta_i), factor) with L(d eta_i) = factor * eta_i."""
    g = structure or standard_structure()
    cf = three_sasakian_coframe()
    out = []
    for eta, d_eta in zip(cf.etas, cf.d_etas):
        img = L(d_eta, g)
        factor = inner(img, eta) / inner(eta, eta)
        out.append((eta, img, factor if img == factor * eta else None))
    return out


def coefficient_table(u: Multivector) -> list[tuple[str, str]]:
    return [("e" + "".join(map(str, indices_of(m))), str(c)) for m, c in u.items()]

"""Dirac spectrum of the flat torus R^7 / (2 pi Z)^7 by Fourier modes.

The torus carries the constant (parallel) G2 structure, so the Killing
number is 0. For a frequency k != 0 the real mode space
span{cos(k.x), sin(k.x)} (x) Delta is 16-dimensional and, in the block
order (cos part, sin part), D = [[0, rho(k)], [-rho(k), 0]]. Modes k and
-k span the same space; the canonical representative has its first
nonzero entry positive.

Eigenvalues are +-sqrt(|k|^2). Eigenvectors are kept as pairs of integer
vectors (u, v) meaning u + sqrt(|k|^2) v, so all checks are exact.
"""

from __future__ import annotations

import itertools
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt

from . import clifford, g2, linalg
from .exterior import Multivector, contract, wedge
from .radicals import ExactEigenvalue
from .spectral import lemma2_lambda
from .scalars import QuadraticNumber, squarefree_decomposition

log = logging.getLogger(__name__)

Spectrum = list[tuple[ExactEigenvalue, int]]


class ZeroModeError(ValueError):
    pass


class TorusCheckError(AssertionError):
    """An explicit eigen-construction failed to verify."""


@dataclass(frozen=True, order=True)
class FourierMode:
    k: tuple[int, ...]

    def __post_init__(self):
        if len(self.k) != 7:
            raise ValueError(f"frequency must have 7 entries, got {len(self.k)}")

    @classmethod
    def canonical(cls, k) -> FourierMode:
        k = tuple(int(x) for x in k)
        lead = next((x for x in k if x), 0)
        return cls(tuple(-x for x in k) if lead < 0 else k)

    @property
    def norm_sq(self) -> int:
        return sum(x * x for x in self.k)

    @property
    def field_disc(self) -> int:
        """Square-free part of |k|^2 (1 when |k| is an integer, 0 for k = 0)."""
        return squarefree_decomposition(self.norm_sq)[1] if self.norm_sq else 0

    @property
    def is_zero(self) -> bool:
        return not any(self.k)

    def eigenvalue(self, sign: int) -> ExactEigenvalue:
        return ExactEigenvalue.sqrt(self.norm_sq, sign)

    def covector(self) -> Multivector:
        return Multivector.vector(self.k)


def enumerate_modes(max_norm_sq: int) -> list[FourierMode]:
    """Canonical modes with 1 <= |k|^2 <= max_norm_sq, ordered by (|k|^2, k)."""
    if max_norm_sq < 1:
        raise ValueError("max_norm_sq must be >= 1")
    r = isqrt(max_norm_sq)
    out = []
    for k in itertools.product(range(-r, r + 1), repeat=7):
        n = sum(x * x for x in k)
        if 1 <= n <= max_norm_sq and next(x for x in k if x) > 0:
            out.append(FourierMode(k))
    out.sort(key=lambda m: (m.norm_sq, m.k))
    return out


# -- integer building blocks -------------------------------------------------


def _int_matrix(m) -> list[list[int]]:
    out = []
    for row in m:
        r = []
        for x in row:
            x = Fraction(x)
            if x.denominator != 1:
                raise ValueError("expected an integer matrix")
            r.append(int(x))
        out.append(r)
    return out


def _gammas_int():
    g = g2.standard_structure().gammas
    return [None] + [_int_matrix(g[i]) for i in range(1, 8)]


_GAMMAS = None
_PSI = None
_PSI_COLS = None


def _setup():
    global _GAMMAS, _PSI, _PSI_COLS
    if _GAMMAS is None:
        _GAMMAS = _gammas_int()
        _PSI = [int(x) for x in g2.standard_structure().psi]
        # column i = gamma_{i+1} psi, the spinor e_{i+1} . psi
        _PSI_COLS = [[sum(_GAMMAS[i][r][c] * _PSI[c] for c in range(8)) for r in range(8)] for i in range(1, 8)]
    return _GAMMAS, _PSI, _PSI_COLS


def rho_vector(k) -> list[list[int]]:
    """Integer matrix of Clifford multiplication by sum_i k_i e_i."""
    gam, _, _ = _setup()
    out = [[0] * 8 for _ in range(8)]
    for i, ki in enumerate(k, start=1):
        if ki:
            gi = gam[i]
            for r in range(8):
                row, gr = out[r], gi[r]
                for c in range(8):
                    if gr[c]:
                        row[c] += ki * gr[c]
    return out


def _imatvec(m, v):
    return [sum(x * y for x, y in zip(row, v) if x and y) for row in m]


def _imatmul(a, b):
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col) if x and y) for col in bt] for row in a]


def dirac_mode_matrix(mode: FourierMode) -> list[list[int]]:
    """16x16 integer matrix of D on span{cos(k.x), sin(k.x)} (x) Delta."""
    if mode.is_zero:
        raise ZeroModeError("k = 0 is handled by kernel_description()")
    a = rho_vector(mode.k)
    z = [0] * 8
    top = [z + a[r] for r in range(8)]
    bottom = [[-x for x in a[r]] + z for r in range(8)]
    return top + bottom


def _eigen_system(m: list[list[int]], sign: int, norm_sq: int, extra_rows=()):
    """(A, B, d) encoding M - sign*sqrt(norm_sq)*I stacked with integer extra rows."""
    n = len(m)
    r = isqrt(norm_sq)
    if r * r == norm_sq:
        a = [[m[i][j] - (sign * r if i == j else 0) for j in range(n)] for i in range(n)]
        b = [[0] * n for _ in range(n)]
        d = 1
    else:
        a = [row[:] for row in m]
        b = [[-sign if i == j else 0 for j in range(n)] for i in range(n)]
        d = norm_sq
    for row in extra_rows:
        a.append(list(row))
        b.append([0] * n)
    return a, b, d


def _is_eigvec(m, va, vb, sign, norm_sq) -> bool:
    """Exact test of M(va + s vb) = sign*s*(va + s vb) with s = sqrt(norm_sq)."""
    r = isqrt(norm_sq)
    if r * r == norm_sq:
        x = [p + r * q for p, q in zip(va, vb)]
        return any(x) and _imatvec(m, x) == [sign * r * y for y in x]
    if not (any(va) or any(vb)):
        return False
    return _imatvec(m, va) == [sign * norm_sq * x for x in vb] and _imatvec(m, vb) == [sign * x for x in va]


def _span_rank(vectors, norm_sq) -> int:
    """Rank over Q(sqrt norm_sq) of vectors given as (u, v) integer pairs."""
    if not vectors:
        return 0
    r = isqrt(norm_sq)
    if r * r == norm_sq:
        return linalg.zsqrt_rank([[x + r * y for x, y in zip(u, v)] for u, v in vectors], [[0] * len(vectors[0][0])] * len(vectors), 1)
    return linalg.zsqrt_rank([u for u, _ in vectors], [v for _, v in vectors], norm_sq)


# -- direct spectrum ---------------------------------------------------------


def direct_eigenspaces(mode: FourierMode) -> dict[int, list]:
    """Eigenvectors of the mode matrix for +|k| and -|k| by exact elimination.

    Raises TorusCheckError unless D^2 = |k|^2 Id, which is what confines the
    spectrum to these two values.
    """
    m = dirac_mode_matrix(mode)
    n2 = mode.norm_sq
    _check_square(m, mode)
    out = {}
    for s in (1, -1):
        a, b, d = _eigen_system(m, s, n2)
        out[s] = linalg.zsqrt_kernel(a, b, d)
    return out


def direct_eigen_dims(mode: FourierMode) -> dict[int, int]:
    """Nullities of D -+ |k| Id, after checking D^2 = |k|^2 Id."""
    m = dirac_mode_matrix(mode)
    _check_square(m, mode)
    out = {}
    for s in (1, -1):
        a, b, d = _eigen_system(m, s, mode.norm_sq)
        out[s] = 16 - linalg.zsqrt_rank(a, b, d)
    return out


def _check_square(m, mode):
    n2 = mode.norm_sq
    if _imatmul(m, m) != [[n2 if i == j else 0 for j in range(16)] for i in range(16)]:
        raise TorusCheckError(f"D^2 != |k|^2 Id for k={mode.k}")


def _as_spectrum(mode: FourierMode, mults: dict[int, int]) -> Spectrum:
    return [(mode.eigenvalue(s), mults[s]) for s in (-1, 1) if mults.get(s)]


def direct_spectrum(mode: FourierMode) -> Spectrum:
    return _as_spectrum(mode, direct_eigen_dims(mode))


# -- functions ---------------------------------------------------------------


def function_eigenspinors(mode: FourierMode, sign: int) -> list:
    """m * (f psi + (1/m) df . psi) for f = cos(k.x), sin(k.x), with m = sign*|k|.

    At Killing number 0 the coefficient 1/(m - 5a) is 1/m; scaling by m keeps
    the vectors in Z[sqrt |k|^2].
    """
    _, psi, _ = _setup()
    kpsi = _imatvec(rho_vector(mode.k), psi)
    zero = [0] * 8
    # f = cos: df = -sin(k.x) k  ->  cos part m psi, sin part -k.psi
    cos_u, cos_v = zero + [-x for x in kpsi], [sign * x for x in psi] + zero
    # f = sin: df = cos(k.x) k   ->  cos part k.psi, sin part m psi
    sin_u, sin_v = kpsi + zero, zero + [sign * x for x in psi]
    return [(cos_u, cos_v), (sin_u, sin_v)]


def predicted_from_functions(mode: FourierMode) -> Spectrum:
    if mode.is_zero:
        raise ZeroModeError("k = 0 has no non-constant eigenfunctions")
    m = dirac_mode_matrix(mode)
    mults = {}
    for s in (1, -1):
        vecs = function_eigenspinors(mode, s)
        for u, v in vecs:
            if not _is_eigvec(m, u, v, s, mode.norm_sq):
                raise TorusCheckError(f"function eigenspinor fails D psi = m psi at k={mode.k}, sign={s}")
        mults[s] = _span_rank(vecs, mode.norm_sq)
    return _as_spectrum(mode, mults)


# -- coclosed 1-forms --------------------------------------------------------


_CROSS_BASIS = None


def cross_matrix(mode: FourierMode) -> list[list[int]]:
    """Integer matrix of Lambda_k = sum_i k_i Lambda_{e_i} (Lambda is linear in k)."""
    global _CROSS_BASIS
    if _CROSS_BASIS is None:
        _CROSS_BASIS = [_int_matrix(g2.cross_operator(Multivector.basis(i))) for i in range(1, 8)]
    out = [[0] * 7 for _ in range(7)]
    for ki, basis in zip(mode.k, _CROSS_BASIS):
        if ki:
            for r in range(7):
                row, br = out[r], basis[r]
                for c in range(7):
                    if br[c]:
                        row[c] += ki * br[c]
    return out


def coupled_form_operator(mode: FourierMode) -> list[list[int]]:
    """14x14 matrix of (u, w) -> (-Lambda_k w, Lambda_k u).

    It encodes -m eta = L(d eta) for eta = cos(k.x) u + sin(k.x) w, where
    d eta = cos(k.x) k^w - sin(k.x) k^u.
    """
    lam = cross_matrix(mode)
    z = [0] * 7
    top = [z + [-x for x in lam[r]] for r in range(7)]
    bottom = [lam[r] + z for r in range(7)]
    return top + bottom


def coclosed_rows(mode: FourierMode) -> list[list[int]]:
    """k . u = 0 and k . w = 0: the divergence-free condition on plane waves."""
    k = list(mode.k)
    return [k + [0] * 7, [0] * 7 + k]


def form_eigenvectors(mode: FourierMode, sign: int) -> list:
    c = coupled_form_operator(mode)
    a, b, d = _eigen_system(c, sign, mode.norm_sq, coclosed_rows(mode))
    return linalg.zsqrt_kernel(a, b, d)


def form_spinor(u7, w7) -> list[int]:
    """cos(k.x) u.psi + sin(k.x) w.psi in mode coordinates."""
    _, _, cols = _setup()
    cos_part = [sum(cols[i][r] * u7[i] for i in range(7) if u7[i]) for r in range(8)]
    sin_part = [sum(cols[i][r] * w7[i] for i in range(7) if w7[i]) for r in range(8)]
    return cos_part + sin_part


def form_eigenspinors(mode: FourierMode, sign: int) -> list:
    out = []
    for u, v in form_eigenvectors(mode, sign):
        out.append((form_spinor(u[:7], u[7:]), form_spinor(v[:7], v[7:])))
    return out


def predicted_from_forms(mode: FourierMode) -> Spectrum:
    if mode.is_zero:
        raise ZeroModeError("k = 0 is handled by kernel_description()")
    m = dirac_mode_matrix(mode)
    mults = {}
    for s in (1, -1):
        spinors = form_eigenspinors(mode, s)
        for u, v in spinors:
            if not _is_eigvec(m, u, v, s, mode.norm_sq):
                raise TorusCheckError(f"form eigenspinor fails D psi = m psi at k={mode.k}, sign={s}")
        mults[s] = _span_rank(spinors, mode.norm_sq)
    return _as_spectrum(mode, mults)


def cross_operator_properties(mode: FourierMode) -> dict[str, bool]:
    lam = cross_matrix(mode)
    k = list(mode.k)
    n2 = mode.norm_sq
    lam2 = _imatmul(lam, lam)
    # Lambda^2 = -|k|^2 (Id - k k^T / |k|^2), i.e. -|k|^2 on k-perp and 0 on k
    target = [[-(n2 * (i == j)) + k[i] * k[j] for j in range(7)] for i in range(7)]
    return {
        "skew": all(lam[i][j] == -lam[j][i] for i in range(7) for j in range(7)),
        "annihilates_k": _imatvec(lam, k) == [0] * 7,
        "square_on_complement": lam2 == target,
    }


# -- per-mode comparison -----------------------------------------------------


def _multiset_union(*spectra: Spectrum) -> Spectrum:
    acc: dict[ExactEigenvalue, int] = {}
    for spec in spectra:
        for val, mult in spec:
            acc[val] = acc.get(val, 0) + mult
    return sorted(acc.items(), key=lambda t: t[0])


@dataclass
class ModeSpectrum:
    mode: FourierMode
    direct: Spectrum
    predicted_functions: Spectrum
    predicted_forms: Spectrum
    checks: dict[str, bool] = field(default_factory=dict)
    error: str | None = None

    @property
    def predicted(self) -> Spectrum:
        return _multiset_union(self.predicted_functions, self.predicted_forms)

    @property
    def matches(self) -> bool:
        return self.error is None and _multiset_union(self.direct) == self.predicted

    @property
    def passed(self) -> bool:
        return self.matches and all(self.checks.values())


def analyze_mode(mode: FourierMode) -> ModeSpectrum:
    """Direct spectrum, both predictions and the structural checks for one mode."""
    try:
        m = dirac_mode_matrix(mode)
        dims = direct_eigen_dims(mode)
        direct = _as_spectrum(mode, dims)
        checks = {
            "symmetric": all(m[i][j] == m[j][i] for i in range(16) for j in range(16)),
            "traceless": sum(m[i][i] for i in range(16)) == 0,
            "total_multiplicity_16": sum(dims.values()) == 16,
            "pm_symmetric": dims[1] == dims[-1],
        }
        checks.update(cross_operator_properties(mode))
        funcs, forms = {}, {}
        complete = True
        for s in (1, -1):
            fv = function_eigenspinors(mode, s)
            ev = form_eigenspinors(mode, s)
            ok_f = all(_is_eigvec(m, u, v, s, mode.norm_sq) for u, v in fv)
            ok_e = all(_is_eigvec(m, u, v, s, mode.norm_sq) for u, v in ev)
            checks[f"function_eigenspinors_{'+' if s > 0 else '-'}"] = ok_f
            checks[f"form_eigenspinors_{'+' if s > 0 else '-'}"] = ok_e
            funcs[s] = _span_rank(fv, mode.norm_sq)
            forms[s] = _span_rank(ev, mode.norm_sq)
            # together they must span the whole direct eigenspace
            complete &= _span_rank(fv + ev, mode.norm_sq) == dims[s]
        checks["span_complete"] = complete
        return ModeSpectrum(mode, direct, _as_spectrum(mode, funcs), _as_spectrum(mode, forms), checks)
    except (TorusCheckError, ZeroModeError) as exc:
        return ModeSpectrum(mode, [], [], [], {}, error=str(exc))


# -- kernel (k = 0) ----------------------------------------------------------


@dataclass
class KernelReport:
    kernel_dim: int
    function_part_dim: int
    form_part_dim: int
    direct_sum_dim: int
    forms_closed_coclosed: bool
    forms_in_kernel: bool

    @property
    def passed(self) -> bool:
        return (
            self.kernel_dim == 8
            and self.function_part_dim == 1
            and self.form_part_dim == 7
            and self.direct_sum_dim == 8
            and self.forms_closed_coclosed
            and self.forms_in_kernel
        )


def kernel_description() -> KernelReport:
    """Split the constant-spinor kernel as R.psi + {eta . psi : eta constant}."""
    _, psi, cols = _setup()
    d0 = [[0] * 8 for _ in range(8)]  # D on constant spinors
    kernel_dim = 8 - linalg.rank(d0)
    zero_k = FourierMode((0,) * 7)
    closed = True
    in_kernel = True
    for i in range(1, 8):
        wave = PlaneWave(zero_k, Multivector.basis(i), Multivector({}, 7))
        closed &= not wave.d().cos and not wave.d().sin and not wave.delta().cos and not wave.delta().sin
        in_kernel &= _imatvec(d0, cols[i - 1]) == [0] * 8
    fun_dim = linalg.rank([psi])
    form_dim = linalg.rank(cols)
    total = linalg.rank([psi] + cols)
    return KernelReport(kernel_dim, fun_dim, form_dim, total, closed, in_kernel)


# -- plane-wave forms and the 1-form Laplace relation at a = 0 --------------


@dataclass(frozen=True)
class PlaneWave:
    """cos(k.x) A + sin(k.x) B for constant-coefficient forms A, B."""

    mode: FourierMode
    cos: Multivector
    sin: Multivector

    def d(self) -> PlaneWave:
        k = self.mode.covector()
        return PlaneWave(self.mode, wedge(k, self.sin), -wedge(k, self.cos))

    def delta(self) -> PlaneWave:
        # delta = -sum_i e_i _| d/dx_i
        k = self.mode.covector()
        return PlaneWave(self.mode, -contract(k, self.sin), contract(k, self.cos))

    def laplacian(self) -> PlaneWave:
        a, b = self.d().delta(), self.delta().d()
        return PlaneWave(self.mode, a.cos + b.cos, a.sin + b.sin)


def _to_scalar(a: int, b: int, norm_sq: int):
    """a + b sqrt(norm_sq) as a Fraction or QuadraticNumber."""
    c, d = squarefree_decomposition(norm_sq)
    if d == 1:
        return Fraction(a + b * c)
    return QuadraticNumber(a, b * c, d)


@dataclass
class Lemma2Report:
    mode: FourierMode
    eigen_checks: list = field(default_factory=list)  # (c, coclosed, laplace_ok, relation_ok)
    no_harmonic_coclosed: bool = True

    @property
    def passed(self) -> bool:
        return self.no_harmonic_coclosed and all(all(row[1:]) for row in self.eigen_checks)


def lemma2_flat_check(mode: FourierMode) -> Lemma2Report:
    """Check delta(eta) = 0 and Laplace(eta) = c(c - 8a) eta at a = 0 on every form eigenvector."""
    if mode.is_zero:
        raise ZeroModeError("use kernel_description() for k = 0")
    n2 = mode.norm_sq
    report = Lemma2Report(mode)
    for s in (1, -1):
        m_val = mode.eigenvalue(s)
        c = -m_val  # c = (n - 2) a - m with a = 0
        lam = lemma2_lambda(7, 0, c)
        for u, v in form_eigenvectors(mode, s):
            coeffs = [_to_scalar(x, y, n2) for x, y in zip(u, v)]
            wave = PlaneWave(mode, Multivector.vector(coeffs[:7]), Multivector.vector(coeffs[7:]))
            dl = wave.delta()
            coclosed = not dl.cos and not dl.sin
            lap = wave.laplacian()
            laplace_ok = lap.cos == wave.cos * n2 and lap.sin == wave.sin * n2
            report.eigen_checks.append((c, coclosed, laplace_ok, lam == n2))
    # d(eta) . psi = 0 on coclosed plane waves forces eta = 0
    _, psi, _ = _setup()
    structure = g2.standard_structure()
    cols = []
    for j in range(14):
        u = [0] * 14
        u[j] = 1
        w = PlaneWave(mode, Multivector.vector(u[:7]), Multivector.vector(u[7:]))
        dw = w.d()
        cols.append(structure.act(dw.cos) + structure.act(dw.sin))
    system = linalg.transpose(cols) + coclosed_rows(mode)
    report.no_harmonic_coclosed = linalg.nullity(system) == 0
    return report


# -- sweep -------------------------------------------------------------------


@dataclass
class SweepResult:
    max_norm_sq: int
    modes: list[ModeSpectrum]
    kernel: KernelReport

    @property
    def failures(self) -> list[ModeSpectrum]:
        return [m for m in self.modes if not m.passed]

    @property
    def all_match(self) -> bool:
        return not self.failures and self.kernel.passed

    @property
    def lambda0(self) -> list[int]:
        return sorted({m.mode.norm_sq for m in self.modes if m.predicted_functions})

    def _form_values(self, sign: int) -> list[int]:
        # m = a - sqrt(16a^2 + l+) and m = a + sqrt(16a^2 + l-): at a = 0 the sign of m picks the list
        vals = set()
        for ms in self.modes:
            for val, _ in ms.predicted_forms:
                if val.sign() == sign:
                    vals.add(ms.mode.norm_sq)
        return sorted(vals)

    @property
    def lambda1_plus(self) -> list[int]:
        return self._form_values(-1)

    @property
    def lambda1_minus(self) -> list[int]:
        return self._form_values(1)

    @property
    def mu2_direct(self) -> int:
        return min(m.mode.norm_sq for m in self.modes if m.direct)


def spectrum_sweep(max_norm_sq: int, workers: int = 1) -> SweepResult:
    modes = enumerate_modes(max_norm_sq)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(analyze_mode, modes, chunksize=64))
    else:
        results = [analyze_mode(m) for m in modes]
    kernel = kernel_description()
    res = SweepResult(max_norm_sq, results, kernel)
    if res.failures:
        log.warning("%d modes failed: first k=%s", len(res.failures), res.failures[0].mode.k)
    return res

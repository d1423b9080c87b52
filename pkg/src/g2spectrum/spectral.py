"""Closed-form Dirac eigenvalue relations and second-eigenvalue bounds.

Everything is parametric in the dimension n and the Killing number a
(a rational). Dirac eigenvalues are ExactEigenvalues p + s*sqrt(q), so
every comparison and minimum below is exact.
"""

from __future__ import annotations

import enum
import functools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .radicals import ExactEigenvalue
from .scalars import format_rational

HALF = Fraction(1, 2)


class MissingSpectrumError(ValueError):
    pass


class FloorViolationError(ValueError):
    def __init__(self, violations):
        self.violations = violations
        super().__init__("; ".join(violations))


class KillingBranchError(ZeroDivisionError):
    """m + 2a - na = 0: the Killing-spinor branch, which has no df-term."""


class GeometryClass(enum.Enum):
    Parallel = "Parallel"
    ProperNearlyParallel = "ProperNearlyParallel"
    ProperWithKillingField = "ProperWithKillingField"
    SasakiEinstein = "SasakiEinstein"
    SasakiEinsteinIsomGe2 = "SasakiEinsteinIsomGe2"
    SasakiEinsteinRegularQuotient = "SasakiEinsteinRegularQuotient"
    ThreeSasakian = "ThreeSasakian"
    Generic = "Generic"

    @property
    def killing_spinor_count(self) -> int | None:
        return _KILLING_COUNT.get(self)

    @property
    def sasakian(self) -> bool:
        return self in _SASAKIAN


_KILLING_COUNT = {
    GeometryClass.ProperNearlyParallel: 1,
    GeometryClass.ProperWithKillingField: 1,
    GeometryClass.SasakiEinstein: 2,
    GeometryClass.SasakiEinsteinIsomGe2: 2,
    GeometryClass.SasakiEinsteinRegularQuotient: 2,
    GeometryClass.ThreeSasakian: 3,
}

_SASAKIAN = {
    GeometryClass.SasakiEinstein,
    GeometryClass.SasakiEinsteinIsomGe2,
    GeometryClass.SasakiEinsteinRegularQuotient,
    GeometryClass.ThreeSasakian,
}


def _q(x) -> Fraction:
    return Fraction(x)


def _ev(x) -> ExactEigenvalue:
    return ExactEigenvalue.coerce(x)


def _rational_or_ev(x):
    x = _ev(x)
    return x.p if x.is_rational() else x


# -- single relations --------------------------------------------------------


def mu1(n: int, a) -> Fraction:
    """Smallest eigenvalue of D^2 on a manifold with a Killing spinor: n^2 a^2."""
    return n * n * _q(a) ** 2


def scalar_curvature(n: int, a) -> Fraction:
    return 4 * _q(a) ** 2 * n * (n - 1)


def function_eigenvalue_relation(n: int, a, m) -> Fraction:
    """lambda0 = m^2 + 2am + a^2 (2n - n^2); refuses m that gives an irrational value."""
    a = _q(a)
    m = _ev(m)
    p, s, q = m.p, m.s, m.q
    rational = p * p + q + 2 * a * p + a * a * (2 * n - n * n)
    if s and p + a != 0:
        raise ValueError(f"m = {m} is not of the form -a +- sqrt(...); lambda0 would be irrational")
    return rational


def dirac_from_function(n: int, a, lambda0_i) -> tuple[ExactEigenvalue, ExactEigenvalue]:
    """The two Dirac eigenvalues -a +- sqrt(lambda0 + a^2 (1 - n)^2)."""
    a, lam = _q(a), _q(lambda0_i)
    if lam <= 0:
        raise ValueError("lambda0 must be positive")
    root = ExactEigenvalue.sqrt(lam + a * a * (1 - n) ** 2)
    return root - a, -root - a


def eigenspinor_coefficient(n: int, a, m) -> Fraction:
    """1/(m + 2a - na), the df coefficient of the function eigenspinor.

    m = -na is the Killing branch: there f is constant and the eigenspace is
    described separately, so the coefficient is refused.
    """
    m, a = _ev(m), _q(a)
    if m == -n * a:
        raise KillingBranchError(f"m = {m} = -na is the Killing branch (f constant)")
    denom = m + (2 - n) * a
    if denom == 0:
        raise KillingBranchError(f"m = {m} gives m + 2a - na = 0")
    if not denom.is_rational():
        raise ValueError("coefficient is irrational; use the field arithmetic of the torus module")
    return 1 / denom.p


def killing_form_eigenvalue(n: int, a) -> ExactEigenvalue:
    """(n + 2) a, the eigenvalue of X.psi for a Killing field X preserving psi."""
    return ExactEigenvalue((n + 2) * _q(a))


def lemma2_lambda(n: int, a, c):
    """Laplace eigenvalue c (c - (2n - 6) a) of eta when (c eta + d eta).psi = 0."""
    c = _ev(c)
    return _rational_or_ev(c * (c - (2 * n - 6) * _q(a)))


def form_relation_lambda(a, m):
    """(3a + m)(m - 5a): the 1-form Laplace eigenvalue attached to m in dimension 7."""
    m, a = _ev(m), _q(a)
    return _rational_or_ev((m + 3 * a) * (m - 5 * a))


def dirac_from_form(a, lambda1, sign: int) -> ExactEigenvalue:
    """a + sign * sqrt(16 a^2 + lambda1); sign -1 for the lambda1_plus family, +1 for lambda1_minus."""
    a = _q(a)
    return ExactEigenvalue.sqrt(16 * a * a + _q(lambda1), sign) + a


def floors(n: int, a) -> dict[str, Fraction]:
    """Gallot-Meyer floor for Lambda_1 and Lichnerowicz-Obata floor for lambda0_1 (strict off the sphere)."""
    a2 = _q(a) ** 2
    return {"gallot_meyer": 8 * (n - 1) * a2, "lichnerowicz_obata": 4 * a2 * n}


@dataclass(frozen=True)
class Theorem21Bound:
    n: int
    a: Fraction
    lambda0_1: Fraction
    upper: ExactEigenvalue
    mu1: Fraction
    eigenvalues_D2: tuple[ExactEigenvalue, ExactEigenvalue]

    def classify(self, mu) -> str:
        """'killing' for mu1, 'pure_form' strictly between mu1 and the bound, else 'undetermined'."""
        mu = _ev(mu)
        if mu == self.mu1:
            return "killing"
        if mu.compare(self.mu1) > 0 and mu.compare(self.upper) < 0:
            return "pure_form"
        return "undetermined"


def theorem21_bounds(n: int, a, lambda0_1) -> Theorem21Bound:
    """Upper bound (sqrt(lambda0_1 + a^2 (1-n)^2) - |a|)^2 for mu2(D^2)."""
    a, lam = _q(a), _q(lambda0_1)
    if lam <= 0:
        raise ValueError("lambda0_1 must be positive")
    root = ExactEigenvalue.sqrt(lam + a * a * (1 - n) ** 2)
    plus = (root - abs(a)).square()
    minus = (-root - abs(a)).square()
    return Theorem21Bound(n, a, lam, plus, mu1(n, a), (plus, minus))


def theorem25_form_bound(n: int, a, Lambda1) -> ExactEigenvalue:
    """Lower bound sqrt(Lambda1 + a^2 (n-3)^2) - |a| for |m| of a 1-form eigenspinor eta.psi."""
    a, lam = _q(a), _q(Lambda1)
    floor = floors(n, a)["gallot_meyer"]
    if lam < floor:
        raise FloorViolationError([f"Lambda1 = {lam} is below the Gallot-Meyer floor {floor}"])
    return ExactEigenvalue.sqrt(lam + a * a * (n - 3) ** 2) - abs(a)


def form_c_bound(n: int, a, Lambda1) -> ExactEigenvalue:
    """Lower bound sqrt(Lambda1 + a^2 (n-3)^2) - (n-3)|a| for |c| in (c eta + d eta).psi = 0."""
    a, lam = _q(a), _q(Lambda1)
    return ExactEigenvalue.sqrt(lam + a * a * (n - 3) ** 2) - (n - 3) * abs(a)


# -- inputs and reports ------------------------------------------------------


def _ascending(name: str, values) -> tuple[Fraction, ...]:
    vals = tuple(_q(v) for v in values)
    if any(v < 0 for v in vals):
        raise ValueError(f"{name}: negative eigenvalue")
    if any(x >= y for x, y in zip(vals, vals[1:])):
        raise ValueError(f"{name}: must be strictly ascending")
    return vals


@dataclass(frozen=True)
class SpectralInput:
    n: int
    a: Fraction
    geometry_class: GeometryClass = GeometryClass.Generic
    lambda0: tuple[Fraction, ...] = ()
    lambda1_plus: tuple[Fraction, ...] = ()
    lambda1_minus: tuple[Fraction, ...] = ()
    Lambda1: Fraction | None = None
    illustrative: bool = False

    def __post_init__(self):
        if self.n < 3:
            raise ValueError("n must be >= 3")
        object.__setattr__(self, "a", _q(self.a))
        object.__setattr__(self, "geometry_class", GeometryClass(self.geometry_class))
        for name in ("lambda0", "lambda1_plus", "lambda1_minus"):
            object.__setattr__(self, name, _ascending(name, getattr(self, name)))
        if self.Lambda1 is not None:
            object.__setattr__(self, "Lambda1", _q(self.Lambda1))

    @property
    def scalar_curvature(self) -> Fraction:
        return scalar_curvature(self.n, self.a)

    @property
    def killing_spinor_count(self) -> int | None:
        return self.geometry_class.killing_spinor_count


@dataclass
class Mu2Result:
    value: ExactEigenvalue
    provenance: str
    slots: dict[str, ExactEigenvalue]
    side_conditions: list[tuple[str, bool]] = field(default_factory=list)
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations and all(ok for _, ok in self.side_conditions)


def _need(seq: Sequence, idx: int, name: str):
    if len(seq) <= idx:
        raise MissingSpectrumError(f"{name}[{idx + 1}] is required for this geometry class")
    return seq[idx]


def function_slot(a, lambda0_1) -> ExactEigenvalue:
    """(sqrt(36a^2 + lambda0_1) - a)^2."""
    a = _q(a)
    return (ExactEigenvalue.sqrt(36 * a * a + _q(lambda0_1)) - a).square()


def plus_slot(a, lam) -> ExactEigenvalue:
    """(sqrt(16a^2 + lambda1_plus) - a)^2."""
    a = _q(a)
    return (ExactEigenvalue.sqrt(16 * a * a + _q(lam)) - a).square()


def minus_slot(a, lam) -> ExactEigenvalue:
    """(sqrt(16a^2 + lambda1_minus) + a)^2."""
    a = _q(a)
    return (ExactEigenvalue.sqrt(16 * a * a + _q(lam)) + a).square()


def minus_side_condition(a, lambda1_minus_1) -> bool:
    """sqrt(16a^2 + lambda1_minus_1) + a >= 9a."""
    a = _q(a)
    return (ExactEigenvalue.sqrt(16 * a * a + _q(lambda1_minus_1)) + a).compare(9 * a) >= 0


def function_side_condition(a, lambda0_1) -> bool:
    """-a - sqrt(36a^2 + lambda0_1) <= -9a."""
    a = _q(a)
    return (-ExactEigenvalue.sqrt(36 * a * a + _q(lambda0_1)) - a).compare(-9 * a) <= 0


def _argmin(slots: dict[str, ExactEigenvalue]) -> tuple[str, ExactEigenvalue]:
    name = None
    best = None
    for k, v in slots.items():
        if best is None or v.compare(best) < 0:
            name, best = k, v
    return name, best


def mu2_n7(inp: SpectralInput) -> Mu2Result:
    """Second eigenvalue of D^2 in dimension 7 by the formula matching the geometry class."""
    if inp.n != 7:
        raise ValueError("mu2_n7 needs n = 7")
    cls, a = inp.geometry_class, inp.a
    l0, lp, lm = inp.lambda0, inp.lambda1_plus, inp.lambda1_minus
    a2 = a * a
    slots: dict[str, ExactEigenvalue] = {}
    side: list[tuple[str, bool]] = []
    viol: list[str] = []

    def strict_floor(name, value, floor):
        if not value > floor:
            viol.append(f"{name} = {value} must exceed {floor}")

    def pinned(name, seq, value):
        if seq and seq[0] != value:
            viol.append(f"{name}[1] = {seq[0]} but this class forces {value}")

    if cls is GeometryClass.Generic:
        raise ValueError("Generic class has no closed form for mu2; use theorem21_bounds")

    if cls is GeometryClass.Parallel:
        if a != 0:
            raise ValueError("Parallel class needs a = 0")
        slots["lambda0_1"] = _ev(_need(l0, 0, "lambda0"))
        slots["lambda1_plus_1"] = _ev(_need(lp, 0, "lambda1_plus"))
        slots["lambda1_minus_1"] = _ev(_need(lm, 0, "lambda1_minus"))
        for name, v in slots.items():
            if not v.compare(0) > 0:
                viol.append(f"{name} must be positive")
    else:
        if a <= 0:
            raise ValueError(f"{cls.value} needs a > 0")
        if cls.sasakian and a != HALF:
            raise ValueError(f"{cls.value} is normalised to a = 1/2, got a = {format_rational(a)}")

    if cls is GeometryClass.ProperNearlyParallel:
        lam0, lamp, lamm = _need(l0, 0, "lambda0"), _need(lp, 0, "lambda1_plus"), _need(lm, 0, "lambda1_minus")
        strict_floor("lambda0_1", lam0, 28 * a2)
        strict_floor("lambda1_plus_1", lamp, 48 * a2)
        if lamm < 48 * a2:
            viol.append(f"lambda1_minus_1 = {lamm} is below 48a^2 = {48 * a2}")
        slots = {"function": function_slot(a, lam0), "form_plus_1": plus_slot(a, lamp), "form_minus_1": minus_slot(a, lamm)}
        side = [
            ("sqrt(16a^2 + lambda1_minus_1) + a >= 9a", minus_side_condition(a, lamm)),
            ("-a - sqrt(36a^2 + lambda0_1) <= -9a", function_side_condition(a, lam0)),
        ]
    elif cls is GeometryClass.ProperWithKillingField:
        lam0, lamp = _need(l0, 0, "lambda0"), _need(lp, 0, "lambda1_plus")
        strict_floor("lambda0_1", lam0, 28 * a2)
        strict_floor("lambda1_plus_1", lamp, 48 * a2)
        pinned("lambda1_minus", lm, 48 * a2)
        slots = {"function": function_slot(a, lam0), "form_plus_1": plus_slot(a, lamp), "killing_field": _ev(81 * a2)}
    elif cls is GeometryClass.SasakiEinstein:
        lam0, lamp2, lamm = _need(l0, 0, "lambda0"), _need(lp, 1, "lambda1_plus"), _need(lm, 0, "lambda1_minus")
        strict_floor("lambda0_1", lam0, 28 * a2)
        pinned("lambda1_plus", lp, 48 * a2)
        if lamm < 48 * a2:
            viol.append(f"lambda1_minus_1 = {lamm} is below 48a^2 = {48 * a2}")
        slots = {"function": function_slot(a, lam0), "form_plus_2": plus_slot(a, lamp2), "form_minus_1": minus_slot(a, lamm)}
    elif cls in (GeometryClass.SasakiEinsteinIsomGe2, GeometryClass.ThreeSasakian):
        lam0, lamp2 = _need(l0, 0, "lambda0"), _need(lp, 1, "lambda1_plus")
        strict_floor("lambda0_1", lam0, 28 * a2)
        pinned("lambda1_plus", lp, 48 * a2)
        pinned("lambda1_minus", lm, 48 * a2)
        slots = {"function": function_slot(a, lam0), "form_plus_2": plus_slot(a, lamp2), "killing_field": _ev(81 * a2)}
    elif cls is GeometryClass.SasakiEinsteinRegularQuotient:
        lamp2 = _need(lp, 1, "lambda1_plus")
        pinned("lambda1_plus", lp, 48 * a2)
        pinned("lambda1_minus", lm, 48 * a2)
        if l0 and l0[0] < 16:
            viol.append(f"lambda0_1 = {l0[0]} is below the quotient bound 16")
        slots = {"form_plus_2": plus_slot(a, lamp2), "killing_field": _ev(81 * a2)}

    name, value = _argmin(slots)
    return Mu2Result(value, name, slots, side, viol)


@dataclass
class SpectrumReport:
    n: int
    a: Fraction
    geometry_class: GeometryClass
    dirac_values: list[tuple[ExactEigenvalue, str]]
    mu1_D2: ExactEigenvalue
    mu2_D2: ExactEigenvalue | None
    mu2_provenance: str | None
    bounds: list[tuple[str, ExactEigenvalue, str]]
    complete_below: ExactEigenvalue | None
    side_conditions: list[tuple[str, bool]] = field(default_factory=list)
    violations: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    illustrative: bool = False

    def bound(self, name: str) -> ExactEigenvalue:
        return next(v for k, v, _ in self.bounds if k == name)

    def values_tagged(self, prefix: str) -> list[ExactEigenvalue]:
        return [v for v, t in self.dirac_values if t.startswith(prefix)]

    def to_json(self) -> dict:
        def ev(x):
            return None if x is None else {**x.to_json(), "text": str(x)}

        return {
            "n": self.n,
            "a": format_rational(self.a),
            "class": self.geometry_class.value,
            "illustrative": self.illustrative,
            "mu1_D2": ev(self.mu1_D2),
            "mu2_D2": ev(self.mu2_D2),
            "mu2_provenance": self.mu2_provenance,
            "complete_below_abs": ev(self.complete_below),
            "dirac_values": [{"value": ev(v), "source": t, "certified": self._certified(v)} for v, t in self.dirac_values],
            "bounds": [{"name": k, "value": ev(v), "kind": kind} for k, v, kind in self.bounds],
            "side_conditions": [{"name": k, "holds": ok} for k, ok in self.side_conditions],
            "violations": list(self.violations),
            "notes": list(self.notes),
        }

    def _certified(self, v: ExactEigenvalue) -> bool:
        return self.complete_below is not None and abs(v).compare(self.complete_below) <= 0


def _family_horizon(values: Sequence[Fraction], floor: Fraction, to_abs) -> ExactEigenvalue:
    # unprovided eigenvalues lie above the last provided one (or the floor)
    return to_abs(values[-1] if values else floor)


def dirac_spectrum_n7(inp: SpectralInput) -> list[tuple[ExactEigenvalue, str]]:
    """Tagged Dirac eigenvalues: -7a, -a +- sqrt(36a^2 + l0_i), a - sqrt(16a^2 + l+_i), a + sqrt(16a^2 + l-_i)."""
    if inp.n != 7:
        raise ValueError("dirac_spectrum_n7 needs n = 7")
    a = inp.a
    out: list[tuple[ExactEigenvalue, str]] = [(ExactEigenvalue(-7 * a), "killing")]
    for i, lam in enumerate(inp.lambda0, start=1):
        if lam == 0:
            continue  # constants: the Killing branch
        plus, minus = dirac_from_function(7, a, lam)
        out.append((plus, f"function_{i}"))
        out.append((minus, f"function_{i}"))
    for i, lam in enumerate(inp.lambda1_plus, start=1):
        out.append((dirac_from_form(a, lam, -1), f"form_plus_{i}"))
    for i, lam in enumerate(inp.lambda1_minus, start=1):
        out.append((dirac_from_form(a, lam, 1), f"form_minus_{i}"))
    return _sort_by_abs(out)


def _sort_by_abs(items):
    def cmp(x, y):
        c = abs(x[0]).compare(abs(y[0]))
        return c if c else x[0].compare(y[0])

    return sorted(items, key=functools.cmp_to_key(cmp))


def _horizon_n7(inp: SpectralInput) -> ExactEigenvalue:
    a = inp.a
    a2 = a * a
    f_floor = 28 * a2
    form_floor = 48 * a2
    cands = [
        _family_horizon(inp.lambda0, f_floor, lambda lam: ExactEigenvalue.sqrt(36 * a2 + lam) - abs(a)),
        _family_horizon(inp.lambda1_plus, form_floor, lambda lam: abs(dirac_from_form(a, lam, -1))),
        _family_horizon(inp.lambda1_minus, form_floor, lambda lam: abs(dirac_from_form(a, lam, 1))),
    ]
    return _argmin({str(i): c for i, c in enumerate(cands)})[1]


def _common_bounds(inp: SpectralInput) -> list[tuple[str, ExactEigenvalue, str]]:
    n, a = inp.n, inp.a
    fl = floors(n, a)
    out = [
        ("mu1", _ev(mu1(n, a)), "equality"),
        ("gallot_meyer_floor", _ev(fl["gallot_meyer"]), "lower"),
        ("lichnerowicz_obata_floor", _ev(fl["lichnerowicz_obata"]), "lower"),
    ]
    if inp.lambda0:
        out.append(("mu2_upper", theorem21_bounds(n, a, inp.lambda0[0]).upper, "upper"))
    if a != 0:
        out.append(("killing_field_upper", killing_form_eigenvalue(n, a).square(), "upper"))
    if inp.Lambda1 is not None:
        out.append(("form_abs_m_lower", theorem25_form_bound(n, a, inp.Lambda1), "lower"))
        out.append(("form_abs_c_lower", form_c_bound(n, a, inp.Lambda1), "lower"))
    return out


def spectrum_report(inp: SpectralInput) -> SpectrumReport:
    """Full report: the n = 7 spectrum and mu2 when available, the generic bounds otherwise."""
    bounds = _common_bounds(inp)
    notes = []
    side, viol = [], []
    mu2_val = prov = None
    if inp.n == 7:
        values = dirac_spectrum_n7(inp)
        horizon = _horizon_n7(inp)
        if inp.geometry_class is not GeometryClass.Generic:
            try:
                res = mu2_n7(inp)
            except MissingSpectrumError as exc:
                notes.append(f"mu2 not available: {exc}")
            else:
                mu2_val, prov, side, viol = res.value, res.provenance, res.side_conditions, res.violations
    else:
        values = [(ExactEigenvalue(-inp.n * inp.a), "killing")]
        for i, lam in enumerate(inp.lambda0, start=1):
            for v in dirac_from_function(inp.n, inp.a, lam):
                values.append((v, f"function_{i}"))
        values = _sort_by_abs(values)
        horizon = None
        notes.append("n != 7: only the function family and generic bounds are available")
    if inp.illustrative:
        notes.append("illustrative inputs: not taken from a known manifold")
    return SpectrumReport(
        inp.n, inp.a, inp.geometry_class, values, _ev(mu1(inp.n, inp.a)), mu2_val, prov,
        bounds, horizon, side, viol, notes, inp.illustrative,
    )


# -- presets -----------------------------------------------------------------


def preset(name: str) -> tuple[SpectralInput, list[str]]:
    """Named inputs with their notes. Only published numbers are embedded."""
    if name == "sasaki5":
        inp = SpectralInput(5, HALF, GeometryClass.Generic, lambda0=(Fraction(33, 4),))
        return inp, [
            "5-dim Sasaki-Einstein with 2-dim isometry group, lambda0_1 = 33/4",
            "killing_field_upper applies when a Killing field preserves psi (lambda0_1 >= 5 in the known families)",
        ]
    if name == "torus":
        vals = tuple(range(1, 11))
        inp = SpectralInput(7, 0, GeometryClass.Parallel, vals, vals, vals)
        return inp, ["flat torus R^7/(2 pi Z)^7: every 1 <= n <= 10 is a sum of seven squares"]
    if name == "three_sasakian":
        inp = SpectralInput(7, HALF, GeometryClass.ThreeSasakian, (), (Fraction(12),), (Fraction(12),))
        return inp, ["3-Sasakian: lambda1_plus_1 = lambda1_minus_1 = 12"]
    raise KeyError(f"unknown preset {name!r}")


PRESETS = ("sasaki5", "torus", "three_sasakian")

"""Command-line front end.

Exit codes: 0 when every check passes, 1 when a check fails, 2 for usage
or configuration errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
import time
from fractions import Fraction
from importlib import resources
from pathlib import Path

import jsonschema

from . import spectral, suites, torus
from .reports import RunReport
from .scalars import format_rational, parse_rational

REPORT_DIR_ENV = "G2SPECTRUM_REPORT_DIR"
DEFAULT_TORUS_CAP = 64
CSV_HEADER = ["k1", "k2", "k3", "k4", "k5", "k6", "k7", "norm_sq", "eigenvalue", "multiplicity", "source"]


class ConfigError(ValueError):
    pass


def _ev_json(x):
    return None if x is None else {**x.to_json(), "text": str(x)}


# -- commands ----------------------------------------------------------------


def cmd_verify_algebra(seed: int = 0, gammas=None) -> RunReport:
    return suites.verify_algebra(seed=seed, gammas=gammas)


def cmd_verify_sasakian() -> RunReport:
    return suites.verify_sasakian()


def _spectrum_rows(ms: torus.ModeSpectrum):
    for source, spec in (("direct", ms.direct), ("functions", ms.predicted_functions), ("forms", ms.predicted_forms)):
        for val, mult in spec:
            yield source, val, mult


def cmd_torus(max_norm_sq: int, cap: int = DEFAULT_TORUS_CAP, workers: int = 1) -> RunReport:
    if not 1 <= max_norm_sq <= cap:
        raise ConfigError(f"--max-norm-sq must be in 1..{cap}, got {max_norm_sq}")
    sweep = torus.spectrum_sweep(max_norm_sq, workers=workers)
    report = RunReport("torus")
    bad = sweep.failures
    report.check(
        "multiset_equality_all_modes",
        not bad,
        witness=[list(m.mode.k) for m in bad[:5]],
        detail=f"{len(sweep.modes)} canonical modes",
    )
    kern = sweep.kernel
    report.check("kernel_dim_8_as_1_plus_7", kern.passed, witness=vars(kern))

    par = spectral.SpectralInput(7, 0, "Parallel", sweep.lambda0[:1], sweep.lambda1_plus[:1], sweep.lambda1_minus[:1])
    mu2 = spectral.mu2_n7(par)
    report.check("mu2_equals_parallel_corollary", mu2.value == sweep.mu2_direct, witness=str(mu2.value))

    report.payload["modes"] = [
        {
            "k": list(ms.mode.k),
            "norm_sq": ms.mode.norm_sq,
            "direct": [{"eigenvalue": _ev_json(v), "multiplicity": m} for v, m in ms.direct],
            "functions": [{"eigenvalue": _ev_json(v), "multiplicity": m} for v, m in ms.predicted_functions],
            "forms": [{"eigenvalue": _ev_json(v), "multiplicity": m} for v, m in ms.predicted_forms],
            "passed": ms.passed,
        }
        for ms in sweep.modes
    ]
    report.payload["summary"] = {
        "max_norm_sq": max_norm_sq,
        "mode_count": len(sweep.modes),
        "mu1_D2": "0",
        "mu2_D2": str(sweep.mu2_direct),
        "mu2_corollary": str(mu2.value),
        "lambda0_1": str(sweep.lambda0[0]),
        "lambda1_plus_1": str(sweep.lambda1_plus[0]),
        "lambda1_minus_1": str(sweep.lambda1_minus[0]),
        "lambda0": sweep.lambda0,
        "lambda1_plus": sweep.lambda1_plus,
        "lambda1_minus": sweep.lambda1_minus,
        "multiset_equality": "pass" if not bad else "fail",
    }
    return report


def torus_csv(report: RunReport) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for mode in report.payload["modes"]:
        for source in ("direct", "functions", "forms"):
            for row in mode[source]:
                w.writerow(mode["k"] + [mode["norm_sq"], row["eigenvalue"]["text"], row["multiplicity"], source])
    s = report.payload["summary"]
    blank = [""] * 8
    w.writerow(blank + [s["mu1_D2"], "", "summary_mu1_D2"])
    w.writerow(blank + [s["mu2_D2"], "", "summary_mu2_D2"])
    w.writerow(blank + [s["multiset_equality"], "", "summary_multiset_equality"])
    return buf.getvalue()


def load_schema() -> dict:
    text = resources.files("g2spectrum").joinpath("predict_config.schema.json").read_text()
    return json.loads(text)


def parse_config(obj) -> spectral.SpectralInput:
    """Validate a predict config and build the SpectralInput; raises ConfigError."""
    validator = jsonschema.Draft202012Validator(load_schema())
    errors = sorted(validator.iter_errors(obj), key=lambda e: list(e.absolute_path))
    if errors:
        err = errors[0]
        path = "/".join(str(p) for p in err.absolute_path) or "<root>"
        msg = err.message
        if err.validator == "oneOf":
            msg = f"{err.instance!r} is not an exact rational 'p/q'"
        raise ConfigError(f"config field '{path}': {msg}")

    def rat(value, path):
        try:
            return parse_rational(value)
        except ValueError as exc:
            raise ConfigError(f"config field '{path}': {exc}") from exc

    try:
        return spectral.SpectralInput(
            n=obj["n"],
            a=rat(obj["a"], "a"),
            geometry_class=obj["class"],
            lambda0=[rat(v, f"lambda0/{i}") for i, v in enumerate(obj.get("lambda0", []))],
            lambda1_plus=[rat(v, f"lambda1_plus/{i}") for i, v in enumerate(obj.get("lambda1_plus", []))],
            lambda1_minus=[rat(v, f"lambda1_minus/{i}") for i, v in enumerate(obj.get("lambda1_minus", []))],
            Lambda1=None if "Lambda1" not in obj else rat(obj["Lambda1"], "Lambda1"),
            illustrative=obj.get("illustrative", False),
        )
    except ValueError as exc:
        raise ConfigError(f"config: {exc}") from exc


def cmd_predict(config_path: str | None = None, preset: str | None = None) -> RunReport:
    notes: list[str] = []
    if preset:
        try:
            inp, notes = spectral.preset(preset)
        except KeyError as exc:
            raise ConfigError(str(exc)) from exc
    else:
        try:
            obj = json.loads(Path(config_path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {config_path}: {exc}") from exc
        inp = parse_config(obj)
    try:
        sr = spectral.spectrum_report(inp)
    except (spectral.FloorViolationError, spectral.MissingSpectrumError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc
    sr.notes[:0] = notes
    report = RunReport("predict")
    for name, ok in sr.side_conditions:
        report.check(f"side_condition: {name}", ok)
    for v in sr.violations:
        report.check("floor", False, witness=v)
    if sr.mu2_D2 is not None:
        report.check("mu1_below_mu2", sr.mu1_D2.compare(sr.mu2_D2) < 0 or bool(sr.violations),
                     witness={"mu1": str(sr.mu1_D2), "mu2": str(sr.mu2_D2)})
    report.payload["preset"] = preset
    report.payload["spectrum"] = sr.to_json()
    return report


def cmd_bounds(n: int, a: Fraction, lambda0_1: Fraction, Lambda1: Fraction | None = None) -> RunReport:
    report = RunReport("bounds")
    try:
        t21 = spectral.theorem21_bounds(n, a, lambda0_1)
        out = {
            "n": n,
            "a": format_rational(a),
            "lambda0_1": format_rational(lambda0_1),
            "mu1_D2": _ev_json(spectral.ExactEigenvalue(t21.mu1)),
            "mu2_upper": _ev_json(t21.upper),
            "function_dirac_eigenvalues": [_ev_json(v) for v in spectral.dirac_from_function(n, a, lambda0_1)],
            "floors": {k: format_rational(v) for k, v in spectral.floors(n, a).items()},
            "killing_field_eigenvalue": _ev_json(spectral.killing_form_eigenvalue(n, a)),
            "killing_field_upper": _ev_json(spectral.killing_form_eigenvalue(n, a).square()),
        }
        if Lambda1 is not None:
            out["form_abs_m_lower"] = _ev_json(spectral.theorem25_form_bound(n, a, Lambda1))
            out["form_abs_c_lower"] = _ev_json(spectral.form_c_bound(n, a, Lambda1))
    except spectral.FloorViolationError as exc:
        report.check("gallot_meyer_floor", False, witness=str(exc))
        return report
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    lo = spectral.floors(n, a)["lichnerowicz_obata"]
    report.check("lambda0_1_above_lichnerowicz_obata", lambda0_1 > lo or a == 0,
                 witness=f"{format_rational(lambda0_1)} <= {format_rational(lo)}")
    report.payload["bounds"] = out
    return report


# -- entry point -------------------------------------------------------------


def _rational_arg(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="g2spectrum", description=__doc__.splitlines()[0])
    p.add_argument("--report-dir", help=f"also write <command>.json here (env {REPORT_DIR_ENV})")
    p.add_argument("--timing", action="store_true", help="include wall time in the report")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    va = sub.add_parser("verify-algebra", help="Clifford, Hodge and G2 lemma checks")
    va.add_argument("--seed", type=int, default=0)
    va.add_argument("--format", choices=("json", "text"), default="json")

    vs = sub.add_parser("verify-sasakian", help="3-Sasakian coframe relations")
    vs.add_argument("--format", choices=("json", "text"), default="json")

    t = sub.add_parser("torus", help="flat 7-torus Dirac spectrum sweep")
    t.add_argument("--max-norm-sq", type=int, required=True)
    t.add_argument("--format", choices=("json", "csv"), default="json")
    t.add_argument("--cap", type=int, default=DEFAULT_TORUS_CAP)
    t.add_argument("--workers", type=int, default=1)

    pr = sub.add_parser("predict", help="Dirac spectrum and mu2 from Laplace data")
    src = pr.add_mutually_exclusive_group(required=True)
    src.add_argument("--config")
    src.add_argument("--preset", choices=spectral.PRESETS)

    b = sub.add_parser("bounds", help="dimension-n bounds from lambda0_1")
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--a", type=_rational_arg, required=True)
    b.add_argument("--lambda0-1", dest="lambda0_1", type=_rational_arg, required=True)
    b.add_argument("--Lambda1", type=_rational_arg)
    return p


def run(args: argparse.Namespace) -> tuple[RunReport, str]:
    if args.command == "verify-algebra":
        r = cmd_verify_algebra(seed=args.seed)
    elif args.command == "verify-sasakian":
        r = cmd_verify_sasakian()
    elif args.command == "torus":
        r = cmd_torus(args.max_norm_sq, cap=args.cap, workers=args.workers)
        if args.format == "csv":
            return r, torus_csv(r)
    elif args.command == "predict":
        r = cmd_predict(args.config, args.preset)
    else:
        r = cmd_bounds(args.n, args.a, args.lambda0_1, args.Lambda1)
    if getattr(args, "format", "json") == "text":
        return r, "\n".join(r.summary_lines() + [f"overall: {'pass' if r.ok else 'fail'}"]) + "\n"
    return r, r.dumps() + "\n"


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    start = time.perf_counter()
    try:
        report, text = run(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.timing:
        report.timing_ms = (time.perf_counter() - start) * 1000
        if text.startswith("{"):
            text = report.dumps() + "\n"
    sys.stdout.write(text)
    report_dir = args.report_dir or os.environ.get(REPORT_DIR_ENV)
    if report_dir:
        out = Path(report_dir)
        out.mkdir(parents=True, exist_ok=True)
        (out / f"{args.command}.json").write_text(report.dumps() + "\n")
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())

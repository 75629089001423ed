"""Bundled invariant suite behind the `selftest` subcommand.

A condensed, seeded version of the property tests: enough to tell whether
an installation computes the right numbers, fast enough to run anywhere.
"""

from __future__ import annotations

import math

import numpy as np

from .certify import certify_equality, i1_i2_residuals
from .operators import gap_report
from .quadrature import gauss_rule_01
from .random_families import random_blaschke, random_family
from .spaces import (
    QuadConfig,
    SpaceSpec,
    bergman_norm,
    eval_functional_norm,
    extremal_function,
    hardy_norm,
)
from .symbols import (
    SymbolFamily,
    eval_symbol,
    format_symbol,
    integrate_family_at,
    parse_symbol,
)

__all__ = ["run_selftest"]

_CORPUS = (
    "z",
    "(c + t + z) * blaschke([0.5, 0.9]; 0)",
    "exp(i * pi * t)",
    "1 / (2 + z)",
    "(t^(-1)) * z",
    "-0.5 + z^3 - t * z",
    "blaschke([0.3+0.4i, -0.25]; 2)",
)


def _check_roundtrip():
    for text in _CORPUS:
        fam = parse_symbol(text, {"c": -0.5})
        again = parse_symbol(format_symbol(fam))
        if again.body != fam.body:
            return False, f"round-trip changed the AST for {text!r}"
    return True, f"{len(_CORPUS)} texts"


def _check_blaschke_modulus():
    rng = np.random.default_rng(2024)
    worst = 0.0
    for _ in range(20):
        fam = SymbolFamily(body=random_blaschke(rng, max_zeros=4))
        zs = np.exp(2j * np.pi * rng.uniform(0.0, 1.0, size=64))
        vals = np.abs(eval_symbol(fam, None, zs))
        worst = max(worst, float(np.max(np.abs(vals - 1.0))))
    return worst < 1e-10, f"worst boundary-modulus defect {worst:.2e}"


def _check_gauss_weights():
    for n in (16, 64):
        _, w = gauss_rule_01(n)
        if abs(float(np.sum(w)) - 1.0) > 1e-14:
            return False, f"weights of the {n}-node rule do not sum to 1"
    return True, "weights sum to 1"


def _check_integrated_phase():
    fam = parse_symbol("exp(i * pi * t)")
    val = integrate_family_at(fam, 0.3 + 0.0j, gauss_rule_01(64))
    err = abs(val - 2j / math.pi)
    return err < 1e-10, f"defect {err:.2e}"


def _check_extremal_attainment():
    q = QuadConfig()
    sp = SpaceSpec.hardy(2.0)
    f = extremal_function(0.9, sp)
    delta = eval_functional_norm(0.9, sp)
    attain = abs(complex(f(0.9)) - delta) / delta
    norm_err = abs(hardy_norm(f, 2.0, q) - 1.0)
    ok = attain < 1e-12 and norm_err < 1e-6
    return ok, f"attainment defect {attain:.2e}, norm defect {norm_err:.2e}"


def _check_bergman_unit():
    q = QuadConfig()
    err = abs(bergman_norm(lambda w: np.ones_like(np.asarray(w)), 2.0, 0.5, q) - 1.0)
    return err < 1e-10, f"norm of 1 off by {err:.2e}"


def _check_gap_identity():
    q = QuadConfig()
    sp = SpaceSpec.hardy(2.0)
    rep_eq = gap_report(parse_symbol("(c + t + z)", {"c": 0.3}), sp, q)
    rep_strict = gap_report(parse_symbol("(c + t + z)", {"c": -0.5}), sp, q)
    ok = abs(rep_eq.gap) < 1e-6 and abs(rep_strict.gap - 0.25) < 1e-6
    return ok, f"gaps {rep_eq.gap:.3e} and {rep_strict.gap:.6f}"


def _check_phase_defect():
    q = QuadConfig()
    sp = SpaceSpec.hardy(2.0)
    fam = parse_symbol("exp(i * pi * t)")
    r1, r2 = i1_i2_residuals(fam, sp, 1.0 + 0.0j, q)
    ok = abs(r1 - (1.0 - 2.0 / math.pi)) < 1e-8 and abs(r2) < 1e-10
    cert = certify_equality(fam, sp, q)
    ok = ok and cert.verdict == "StrictInequalityEvidence"
    return ok, f"r1={r1:.8f}, r2={r2:.2e}, verdict={cert.verdict}"


def _check_one_sided():
    rng = np.random.default_rng(99)
    q = QuadConfig(n_theta=1024, tol=1e-7)
    sp = SpaceSpec.hardy(2.0)
    worst = math.inf
    for _ in range(8):
        fam = random_family(rng)
        rep = gap_report(fam, sp, q)
        worst = min(worst, rep.gap)
    return worst >= -1e-6, f"smallest gap {worst:.3e}"


_CHECKS = (
    ("parse-roundtrip", _check_roundtrip),
    ("blaschke-boundary-modulus", _check_blaschke_modulus),
    ("gauss-weights", _check_gauss_weights),
    ("integrated-phase-symbol", _check_integrated_phase),
    ("extremal-attainment", _check_extremal_attainment),
    ("bergman-unit-norm", _check_bergman_unit),
    ("gap-identity", _check_gap_identity),
    ("phase-defect-family", _check_phase_defect),
    ("one-sided-inequality", _check_one_sided),
)


def run_selftest():
    """Run the bundled checks; returns (report payload, all passed)."""
    checks = []
    all_ok = True
    for name, fn in _CHECKS:
        try:
            ok, detail = fn()
        except Exception as exc:
            ok, detail = False, f"raised {exc!r}"
        checks.append({"name": name, "passed": ok, "detail": detail})
        all_ok = all_ok and ok
    payload = {"kind": "selftest", "checks": checks, "passed": all_ok}
    return payload, all_ok

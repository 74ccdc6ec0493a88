"""Acceptance criteria as runnable checks, grouped into suites.

Every check returns a :class:`CriterionResult`; tolerances are fixed here and
never relaxed by callers.
"""
from __future__ import annotations

import csv
import itertools
import time
from dataclasses import dataclass
from importlib import resources

import mpmath
from mpmath import mp, mpf

from .asymptotics.curves import s_xi_identity_residual
from .asymptotics.densities import density_nu, density_v, integrate_density, nu_support
from .asymptotics.potential import ks_distance, variational_report
from .asymptotics.support import (
    ONE,
    THREE,
    critical_c,
    critical_polynomial,
    sextic,
    support_intervals,
)
from .mhermite import (
    MultiIndex,
    WeightSystem,
    build_by_recurrence,
    build_explicit,
    lowering_residual,
    ode_residual,
    raising_residual,
)
from .numerics import relative_coeff_diff
from .quadrature import (
    build_rule,
    exactness_report,
    factor_by_intervals,
    gauss_factor_oracle,
    sign_pattern_check,
)
from .zeros import bounding_intervals, multiple_hermite_zeros, zero_interval_counts

TABLE1_RESOURCE = "weights_n10_c15.csv"
TABLE1_RUNTIME_LIMIT = 60.0


@dataclass(frozen=True)
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.number:2d} {self.title}: {self.detail}"

    def as_dict(self) -> dict:
        return {"number": self.number, "title": self.title, "passed": self.passed, "detail": self.detail}


def _fmt(x, digits: int = 3) -> str:
    return mpmath.nstr(x, digits)


def table1_reference() -> list:
    """(k, lambda_k^(1)) pairs for n = 10, c = 15, normalized weights."""
    text = resources.files("multihermite.data").joinpath(TABLE1_RESOURCE).read_text()
    return [(int(row["k"]), mpf(row["lambda_1"])) for row in csv.DictReader(text.splitlines())]


def significant_digit_tolerance(value) -> mpf:
    # 6 significant digits, or 4 below 1e-12
    return mpf("5e-4") if abs(value) < mpf("1e-12") else mpf("5e-6")


def check_table1() -> CriterionResult:
    with mp.workdps(max(mp.dps, 64)):
        start = time.perf_counter()
        rule = build_rule(10, WeightSystem.symmetric(15, 10))
        elapsed = time.perf_counter() - start
        bad = []
        for k, ref in table1_reference():
            rel = abs(rule.column(1)[k - 1] - ref) / abs(ref)
            if rel > significant_digit_tolerance(ref):
                bad.append(f"k={k} rel={_fmt(rel)}")
    passed = not bad and elapsed <= TABLE1_RUNTIME_LIMIT
    detail = f"{30 - len(bad)}/30 entries within tolerance"
    if elapsed > TABLE1_RUNTIME_LIMIT:
        detail += f", build exceeded {TABLE1_RUNTIME_LIMIT:.0f}s"
    if bad:
        detail += "; mismatches: " + ", ".join(bad)
    return CriterionResult(1, "reference weights (n=10, c=15)", passed, detail)


def check_normalization() -> CriterionResult:
    worst = mpf(0)
    for n in (2, 5, 10):
        rule = build_rule(n, WeightSystem.symmetric(15, n))
        for j in (1, 2, 3):
            worst = max(worst, abs(mpmath.fsum(rule.column(j)) - 1))
    return CriterionResult(2, "normalization sum = 1", worst <= mpf("1e-30"), f"max |sum - 1| = {_fmt(worst)}")


def check_exactness() -> CriterionResult:
    worst_exact, weakest_witness, failures = mpf(0), None, []
    for n, c in itertools.product(range(1, 7), (15, 30)):
        rule = build_rule(n, WeightSystem.symmetric(c, n))
        report = exactness_report(rule, 4 * n)
        exact = max(max(row) for row in report[: 4 * n])
        witness = max(report[4 * n])
        worst_exact = max(worst_exact, exact)
        weakest_witness = witness if weakest_witness is None else min(weakest_witness, witness)
        if exact > mpf("1e-20") or witness <= mpf("1e-6"):
            failures.append(f"(n={n}, c={c})")
    detail = f"max error deg<=4n-1 {_fmt(worst_exact)}, smallest deg-4n witness {_fmt(weakest_witness)}"
    if failures:
        detail += "; failing " + ", ".join(failures)
    return CriterionResult(3, "exactness degree 4n-1", not failures, detail)


def check_critical_c() -> CriterionResult:
    c = critical_c()
    gap = abs(c - mpf("4.10938818"))
    resid = abs(critical_polynomial(c))
    passed = gap <= mpf("5e-8") and resid <= mpf(10) ** (-(mp.dps - 10))
    return CriterionResult(4, "critical c*", passed, f"c* = {mpmath.nstr(c, 20)}, residual {_fmt(resid)}")


def check_phases() -> CriterionResult:
    problems = []
    for chat, phase in ((2, ONE), (8, THREE)):
        model = support_intervals(chat)
        if model.phase != phase:
            problems.append(f"chat={chat} phase {model.phase}")
        for e in model.endpoints():
            if abs(sextic(e, chat)) > mpf("1e-20"):
                problems.append(f"chat={chat} endpoint {_fmt(e)} residual {_fmt(sextic(e, chat))}")
        for lo, hi in model.intervals():
            if not sextic((lo + hi) / 2, chat) < 0:
                problems.append(f"chat={chat} sextic >= 0 at midpoint {_fmt((lo + hi) / 2)}")
        if phase == THREE and not 0 < model.d < model.a < model.b:
            problems.append("endpoints not ordered 0 < d < a < b")
    detail = "; ".join(problems) or "chat=2 one-interval, chat=8 three-interval, endpoints on the sextic"
    return CriterionResult(5, "phase classification", not problems, detail)


def check_masses(chat=6) -> CriterionResult:
    model = support_intervals(chat)
    masses = [mpmath.fsum(integrate_density(lambda x: density_v(x, chat), lo, hi) for lo, hi in model.intervals())]
    for j in (1, 2, 3):
        lo, hi = nu_support(j, model)
        masses.append(integrate_density(lambda x, j=j: density_nu(j, x, chat), lo, hi))
    mass_err = max(abs(m - 1) for m in masses)
    grid = [-model.b + 2 * model.b * (i + mpf(1) / 2) / 200 for i in range(200)]
    pointwise = max(
        abs(3 * density_v(x, chat) - mpmath.fsum(density_nu(j, x, chat) for j in (1, 2, 3))) for x in grid
    )
    passed = mass_err <= mpf("1e-6") and pointwise <= mpf("1e-8")
    return CriterionResult(
        6, "density masses and 3v = sum nu", passed,
        f"max |mass - 1| = {_fmt(mass_err)}, max |3v - sum nu| = {_fmt(pointwise)}",
    )


def off_axis_grid(chat, count: int = 100) -> list:
    model = support_intervals(chat)
    span = model.b + 1
    heights = (mpf("0.05"), mpf("0.3"), mpf(1), mpf(-0.3), mpf(-2))
    per_row = count // len(heights)
    xs = [-span + 2 * span * i / (per_row - 1) for i in range(per_row)]
    return [mpmath.mpc(x, y) for y in heights for x in xs]


def check_s_xi(chats=(5, 6)) -> CriterionResult:
    worst = mpf(0)
    for chat in chats:
        for z in off_axis_grid(chat):
            worst = max(worst, s_xi_identity_residual(z, chat))
    return CriterionResult(7, "S-xi relation off the axis", worst <= mpf("1e-8"), f"max residual {_fmt(worst)}")


def check_zero_law(n: int = 20, chat=6) -> CriterionResult:
    chat = mpf(chat)
    w = WeightSystem.symmetric(chat * mpmath.sqrt(n), n)
    zeros = multiple_hermite_zeros(MultiIndex.diagonal(n), w)
    ks = ks_distance(zeros.zeros, n, chat)
    return CriterionResult(8, "zero distribution vs v (KS)", ks <= mpf("0.08"), f"KS distance {_fmt(ks)} at n={n}")


def check_localization() -> CriterionResult:
    n, c = 10, 30
    w = WeightSystem.symmetric(c, n)
    zeros = multiple_hermite_zeros(MultiIndex.diagonal(n), w)
    counts = zero_interval_counts(zeros, bounding_intervals(n, c))
    return CriterionResult(9, "localization (n=10, c=30)", counts == (10, 10, 10, 0), f"counts {counts}")


def check_signs() -> CriterionResult:
    problems = []
    rule = build_rule(10, WeightSystem.symmetric(30, 10))
    for j, rep in sign_pattern_check(rule).items():
        if not rep["ok"]:
            problems.append(f"c=30 j={j} first violation k={rep['first_violation']}")
    table = build_rule(10, WeightSystem.symmetric(15, 10))
    for k, ref in table1_reference():
        if (table.column(1)[k - 1] > 0) != (ref > 0):
            problems.append(f"c=15 k={k} sign differs from the reference values")
    detail = "; ".join(problems) or "c=30 patterns hold for j=1,2,3; c=15 signs match the reference values"
    return CriterionResult(10, "sign patterns", not problems, detail)


def check_factored_weights() -> CriterionResult:
    worst = mpf(0)
    for n in (1, 2, 3):
        rule = build_rule(n, WeightSystem.symmetric(30, n))
        f = factor_by_intervals(rule, bounding_intervals(n, 30))
        for j in (1, 2, 3):
            worst = max(worst, gauss_factor_oracle(rule, f, j))
    tol = mpf(10) ** (-(mp.dps - 15))
    return CriterionResult(11, "factored-weight identities", worst <= tol, f"max discrepancy {_fmt(worst)}")


def check_variational(chat=6) -> CriterionResult:
    rep = variational_report(chat)
    flat = max(rep.on_support_spread)
    margin = min(rep.off_support_margin)
    passed = flat <= mpf("1e-3") and margin >= mpf("-1e-3") and rep.symmetry_gap <= mpf("1e-6")
    detail = (
        f"flatness {_fmt(flat)}, off-support margin {_fmt(margin)}, "
        f"|ell1 - ell3| {_fmt(rep.symmetry_gap)}, ell = {[mpmath.nstr(e, 10) for e in rep.ell]}"
    )
    return CriterionResult(12, "variational conditions", passed, detail)


def check_identities() -> CriterionResult:
    w = WeightSystem((-15, 0, 15))
    sym = WeightSystem.symmetric(15)
    low_tol = mpf(10) ** (-(mp.dps - 8))
    worst_low = worst_raise = worst_ode = worst_cross = mpf(0)
    for parts in itertools.product(range(10), repeat=3):
        if not 1 <= sum(parts) <= 9:
            continue
        n = MultiIndex(parts)
        worst_low = max(worst_low, lowering_residual(n, w))
        for j in (1, 2, 3):
            if parts[j - 1]:
                worst_raise = max(worst_raise, raising_residual(j, n, w))
    xs = [-12 + 24 * mpf(i) / 19 for i in range(20)]
    for n in range(1, 4):
        worst_ode = max(worst_ode, ode_residual(n, sym, xs))
    for n in range(1, 11):
        idx = MultiIndex.diagonal(n)
        diff = relative_coeff_diff(build_by_recurrence(idx, w).coeffs, build_explicit(idx, w).coeffs)
        worst_cross = max(worst_cross, diff)
    passed = (
        worst_low <= low_tol
        and worst_raise <= low_tol
        and worst_ode <= mpf(10) ** (-(mp.dps - 12))
        and worst_cross <= mpf(10) ** (-(mp.dps - 10))
    )
    detail = (
        f"lowering {_fmt(worst_low)}, raising {_fmt(worst_raise)}, "
        f"ode {_fmt(worst_ode)}, cross-method {_fmt(worst_cross)}"
    )
    return CriterionResult(13, "identity suites", passed, detail)


CHECKS = {
    1: check_table1,
    2: check_normalization,
    3: check_exactness,
    4: check_critical_c,
    5: check_phases,
    6: check_masses,
    7: check_s_xi,
    8: check_zero_law,
    9: check_localization,
    10: check_signs,
    11: check_factored_weights,
    12: check_variational,
    13: check_identities,
}

SUITES = {
    "identities": (2, 3, 9, 10, 11, 13),
    "table1": (1,),
    "asymptotics": (4, 5, 6, 7, 8, 12),
}
SUITES["all"] = tuple(sorted(CHECKS))


def run_suite(name: str = "all") -> list:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    return [CHECKS[k]() for k in SUITES[name]]

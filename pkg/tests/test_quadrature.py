import mpmath
import pytest
from mpmath import mp, mpf

from multihermite.mhermite import WeightSystem
from multihermite.numerics import MonicPoly, deflate_at, gaussian_mass, gaussian_moments, poly_eval, relative_coeff_diff
from multihermite.quadrature import (
    _vandermonde_weights,
    apply_rule,
    build_rule,
    decay_profile,
    exactness_report,
    expected_sign,
    factor_by_intervals,
    gauss_factor_oracle,
    scaled_rule_weights,
    sign_pattern_check,
)
from multihermite.zeros import bounding_intervals


def tol(k):
    return mpf(10) ** (-(mp.dps - k))


_cache = {}


def rule(n, c, normalized=True):
    key = (n, c, normalized)
    if key not in _cache:
        _cache[key] = build_rule(n, WeightSystem.symmetric(c, n), normalized)
    return _cache[key]


def test_table_entries():
    r = rule(10, 15)
    assert mpmath.nstr(r.column(1)[0], 10) == "6.887653865e-9"
    assert mpmath.nstr(r.column(1)[6], 10) == "0.372593396"
    assert abs(r.column(1)[29] / mpf("-3.903292274e-19") - 1) < mpf("2e-4")


@pytest.mark.parametrize("n", [1, 2, 5, 10])
def test_normalized_sums(n):
    r = rule(n, 15)
    for j in (1, 2, 3):
        assert abs(mpmath.fsum(r.column(j)) - 1) <= tol(20)


def test_raw_sums():
    r = rule(4, 15, normalized=False)
    for j, cj in enumerate(r.w.c, start=1):
        assert abs(mpmath.fsum(r.column(j)) / gaussian_mass(cj) - 1) <= tol(20)


def test_n1_matches_vandermonde():
    r = rule(1, 15)
    for j, cj in enumerate(r.w.c, start=1):
        ref = _vandermonde_weights(r.nodes.zeros, gaussian_moments(cj, 3).m)
        for a, b in zip(r.column(j), ref):
            assert abs(a - b) <= tol(15) * max(1, abs(b))


def test_apply_rule_low_moments():
    r = rule(3, 15)
    ones = [1] * r.size
    assert abs(apply_rule(r, 2, ones) - 1) <= tol(20)
    assert abs(apply_rule(r, 1, list(r.nodes)) + mpf("7.5")) <= tol(18)
    assert abs(apply_rule(r, 2, [x * x for x in r.nodes]) - mpf(1) / 2) <= tol(18)
    with pytest.raises(ValueError):
        apply_rule(r, 1, ones[:-1])


def test_exactness_n5():
    report = exactness_report(rule(5, 15), 20)
    assert max(max(row) for row in report[:20]) <= mpf("1e-20")
    assert max(report[20]) > mpf("1e-6")


def test_exactness_n1():
    report = exactness_report(rule(1, 15), 3)
    assert max(max(row) for row in report) <= mpf("1e-20")


def test_exactness_report_limit():
    with pytest.raises(ValueError):
        exactness_report(rule(1, 15), 9)


@pytest.mark.parametrize("n", [3, 10])
def test_factor_product_reproduces_h(n):
    r = rule(n, 30)
    f = factor_by_intervals(r, bounding_intervals(n, 30))
    assert all(p.degree == n for p in f)
    with mp.workdps(mp.dps + 30):
        product = MonicPoly.from_roots([z for g in f.groups for z in g])
    assert relative_coeff_diff(product.coeffs, r.poly.coeffs) <= tol(10)


def test_factor_n1_c100():
    r = rule(1, 100)
    f = factor_by_intervals(r, bounding_intervals(1, 100))
    root = -f.p.coeffs[0]
    assert abs(root + 50) < 1
    assert f.q.coeffs[0] == 0


def test_factor_requires_localization():
    with pytest.raises(ValueError):
        factor_by_intervals(rule(10, 15), bounding_intervals(10, 15))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_factored_weight_oracles(n):
    r = rule(n, 30)
    f = factor_by_intervals(r, bounding_intervals(n, 30))
    for j in (1, 2, 3):
        assert gauss_factor_oracle(r, f, j) <= tol(15)


def test_sign_patterns_table_point():
    r = rule(10, 15)
    col = r.column(1)
    assert all(v > 0 for v in col[:11])
    assert all((col[k] > 0) == ((k + 1 - 10) % 2 == 1) for k in range(10, 30))
    assert sign_pattern_check(r)[1]["ok"]


@pytest.mark.parametrize("n", [1, 2, 4, 6, 8, 10])
def test_sign_patterns_safe_regime(n):
    c = 1.2 * 4 * float(mpmath.sqrt(4 * n + 1))
    report = sign_pattern_check(build_rule(n, WeightSystem.symmetric(c, n)))
    assert all(rep["ok"] for rep in report.values()), report


def test_expected_sign_formulas():
    n = 10
    assert [expected_sign(2, k, n) for k in (1, 2, 11, 20, 21, 22)] == [-1, 1, 1, 1, 1, -1]
    assert [expected_sign(3, k, n) for k in (1, 2, 21, 30)] == [-1, 1, 1, 1]
    with pytest.raises(ValueError):
        expected_sign(4, 1, n)


def test_decay_profile_values():
    prof = dict(decay_profile(rule(10, 15), 1))
    assert abs(prof[11] - mpf("6.755525278e-6") ** mpf("0.1")) < mpf("1e-6")
    assert abs(prof[11] - mpf("0.3042")) < mpf("2e-4")
    assert abs(prof[30] - mpf("0.0144")) < mpf("1e-4")
    assert all(v < 1 for v in prof.values())
    assert set(prof) == set(range(11, 31))


def test_scaling_invariance():
    r = rule(6, 30)
    scaled = scaled_rule_weights(r)
    for j in range(3):
        for a, b in zip(r.weights[j], scaled[j]):
            assert abs(a - b) <= tol(15) * abs(a)


def test_interpolatory_identity():
    r = rule(3, 15)
    for k, xk in enumerate(r.nodes):
        q, _ = deflate_at(r.poly, xk)
        q = q.coeffs if isinstance(q, MonicPoly) else q
        dp = poly_eval(q, xk)
        basis = [poly_eval(q, x) / dp for x in r.nodes]
        for j in (1, 2, 3):
            assert abs(apply_rule(r, j, basis) - r.column(j)[k]) <= tol(15) * max(1, abs(r.column(j)[k]))


def test_reflection_symmetry():
    r = rule(5, 20)
    N = r.size
    for k in range(N):
        assert abs(r.column(1)[k] - r.column(3)[N - 1 - k]) <= tol(15) * abs(r.column(1)[k])
        assert abs(r.column(2)[k] - r.column(2)[N - 1 - k]) <= tol(15) * abs(r.column(2)[k])


def test_rejects_zero_degree():
    with pytest.raises(ValueError):
        build_rule(0, WeightSystem.symmetric(15))

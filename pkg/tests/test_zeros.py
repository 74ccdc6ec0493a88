import mpmath
import pytest
from mpmath import mp, mpf

from multihermite.mhermite import MultiIndex, WeightSystem, build_by_recurrence
from multihermite.numerics import MonicPoly, poly_eval
from multihermite.zeros import (
    IsolationFailure,
    bounding_intervals,
    find_zeros,
    multiple_hermite_zeros,
    residual_scale,
    zero_interval_counts,
)


def zeros_for(n, c):
    return multiple_hermite_zeros(MultiIndex.diagonal(n), WeightSystem.symmetric(c, n))


def test_closed_form_n1():
    zs = zeros_for(1, 15)
    root = mpmath.sqrt(mpf(3) / 2 + mpf(225) / 4)
    assert len(zs) == 3
    assert abs(zs[0] + root) <= mpf(10) ** (-(mp.dps - 5))
    assert zs[1] == 0
    assert mpmath.nstr(zs[2], 7) == "7.599342"


@pytest.mark.parametrize("n,c", [(3, 15), (5, 30), (10, 15)])
def test_zero_set_contract(n, c):
    w = WeightSystem.symmetric(c, n)
    index = MultiIndex.diagonal(n)
    p = build_by_recurrence(index, w)
    zs = multiple_hermite_zeros(index, w, p)
    assert len(zs) == 3 * n
    assert all(a < b for a, b in zip(zs, zs[1:]))
    for z in zs:
        assert abs(poly_eval(p, z)) <= mpf(10) ** (-(mp.dps - 15)) * residual_scale(p, z)
    # simple zeros
    assert min(b - a for a, b in zip(zs, zs[1:])) >= mpf(10) ** (-(mp.dps // 2))
    # symmetric about the origin
    for a, b in zip(zs, reversed(zs.zeros)):
        assert abs(a + b) <= mpf(10) ** (-(mp.dps - 12)) * max(1, abs(a))


def test_residual_history_settles():
    zs = zeros_for(4, 20)
    floor = mpf(10) ** (-(mp.dps - 20))
    for hist in zs.residual_history:
        assert hist[-1] <= floor or all(b <= a for a, b in zip(hist, hist[1:]))


@pytest.mark.parametrize("n,c", [(10, 30), (5, 25), (2, 15)])
def test_localization_when_separated(n, c):
    L = bounding_intervals(n, c)
    assert L.disjoint == (c > 4 * mpmath.sqrt(4 * n + 1))
    if L.disjoint:
        assert zero_interval_counts(zeros_for(n, c), L) == (n, n, n, 0)


def test_overlapping_intervals_still_count_every_zero():
    L = bounding_intervals(10, 15)
    assert not L.disjoint
    assert sum(zero_interval_counts(zeros_for(10, 15), L)) == 30


def test_bounding_interval_validation():
    with pytest.raises(ValueError):
        bounding_intervals(0, 15)
    with pytest.raises(ValueError):
        bounding_intervals(3, -1)


def test_complex_roots_are_reported():
    with pytest.raises(IsolationFailure):
        find_zeros(MonicPoly((mpf(1), mpf(0), mpf(1))), -5, 5)


def test_exact_grid_zero():
    zs = find_zeros(MonicPoly.from_roots([-1, 0, 1]), -2, 2)
    assert list(zs) == [-1, 0, 1]

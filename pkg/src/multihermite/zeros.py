"""Real zeros of multiple Hermite polynomials and their localization."""
from __future__ import annotations

from dataclasses import dataclass, field

import mpmath
from mpmath import mp, mpf

from .mhermite import MultiIndex, WeightSystem
from .numerics import GUARD_DIGITS, MonicPoly, poly_eval, poly_eval_with_derivative, wide

SCAN_FACTOR = 16
MAX_REFINEMENTS = 6  # 16 * 2**6 = 2**10 points per degree
MAX_POLISH_STEPS = 400


class IsolationFailure(ArithmeticError):
    """Raised when fewer sign changes than the degree are found."""


@dataclass(frozen=True)
class ZeroSet:
    zeros: tuple
    n: MultiIndex | None = None
    w: WeightSystem | None = None
    # |p(z)| over the last polishing iterations, one tuple per zero
    residual_history: tuple = field(default=(), compare=False, repr=False)

    def __len__(self):
        return len(self.zeros)

    def __iter__(self):
        return iter(self.zeros)

    def __getitem__(self, k):
        return self.zeros[k]


@dataclass(frozen=True)
class LocalizationIntervals:
    I1: tuple
    I2: tuple
    I3: tuple
    disjoint: bool

    def __iter__(self):
        return iter((self.I1, self.I2, self.I3))


def bounding_intervals(n: int, c) -> LocalizationIntervals:
    """Intervals of half-width sqrt(4n+1) about -c/2, 0, c/2.

    For c > 4 sqrt(4n+1) they are disjoint and each holds n zeros of H_{n,n,n}.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    c = wide(c)
    if c <= 0:
        raise ValueError("c must be positive")
    h = mpmath.sqrt(4 * n + 1)
    return LocalizationIntervals(
        I1=(-c / 2 - h, -c / 2 + h),
        I2=(-h, h),
        I3=(c / 2 - h, c / 2 + h),
        disjoint=bool(c > 4 * h),
    )


def search_window(n: MultiIndex, w: WeightSystem):
    """Bracket [lo, hi] handed to :func:`find_zeros` for H_n."""
    h = mpmath.sqrt(4 * n.size + 1)
    return min(w.c) / 2 - h - 1, max(w.c) / 2 + h + 1


def _sign(v) -> int:
    return (v > 0) - (v < 0)


def _scan(p: MonicPoly, lo, hi, points: int):
    """Brackets (a, b, exact) from a uniform grid; ``exact`` is set for grid nodes where p vanishes."""
    step = (hi - lo) / points
    brackets = []
    prev_x, prev_s, hit = None, 0, False
    for k in range(points + 1):
        x = lo + k * step
        s = _sign(poly_eval(p, x))
        if s == 0:
            brackets.append((x, x, x))
            hit = True
            continue
        if prev_s * s < 0 and not hit:
            brackets.append((prev_x, x, None))
        prev_x, prev_s, hit = x, s, False
    return brackets


def _polish(p: MonicPoly, a, b, exact=None):
    """Safeguarded Newton inside the sign-change bracket [a, b]."""
    if exact is not None:
        return exact, (mpf(0),)
    fa = poly_eval(p, a)
    x = (a + b) / 2
    tol_exp = -(mp.dps - 10)
    history = []
    for _ in range(MAX_POLISH_STEPS):
        fx, dfx = poly_eval_with_derivative(p, x)
        history.append(abs(fx))
        if fx == 0:
            break
        if _sign(fx) == _sign(fa):
            a, fa = x, fx
        else:
            b = x
        newton = x - fx / dfx if dfx != 0 else None
        if newton is None or not (a < newton < b):
            newton = (a + b) / 2
        step = abs(newton - x)
        x = newton
        if step < mpf(10) ** tol_exp * max(1, abs(x)):
            fx = poly_eval(p, x)
            history.append(abs(fx))
            break
    else:
        raise IsolationFailure("Newton polishing did not converge")
    return x, tuple(history[-4:])


def find_zeros(p: MonicPoly, lo, hi, n: MultiIndex | None = None, w: WeightSystem | None = None) -> ZeroSet:
    """All real zeros of ``p`` in [lo, hi], assumed real and simple.

    A uniform grid of 16 * deg points is doubled until deg sign changes are
    found (at most 2**10 * deg points), then each bracket is polished on the
    undeflated polynomial with guard digits.
    """
    deg = p.degree
    if deg == 0:
        return ZeroSet((), n, w)
    lo, hi = wide(lo), wide(hi)
    with mp.workdps(mp.dps + GUARD_DIGITS):
        points = SCAN_FACTOR * deg
        for _ in range(MAX_REFINEMENTS + 1):
            brackets = _scan(p, lo, hi, points)
            if len(brackets) >= deg:
                break
            points *= 2
        if len(brackets) != deg:
            raise IsolationFailure(
                f"found {len(brackets)} sign changes for degree {deg} "
                "(multiple roots, roots outside the window, or too little precision)"
            )
        zeros, history = [], []
        for a, b, exact in brackets:
            z, h = _polish(p, a, b, exact)
            zeros.append(z)
            history.append(h)
    return ZeroSet(tuple(zeros), n, w, tuple(history))


def multiple_hermite_zeros(n: MultiIndex, w: WeightSystem, poly: MonicPoly | None = None) -> ZeroSet:
    from .mhermite import build_by_recurrence

    p = poly or build_by_recurrence(n, w)
    lo, hi = search_window(n, w)
    return find_zeros(p, lo, hi, n, w)


def zero_interval_counts(zs, L: LocalizationIntervals):
    """Counts (k1, k2, k3, outside); a zero in overlapping intervals counts once, first match."""
    counts = [0, 0, 0, 0]
    for z in zs:
        for i, (a, b) in enumerate(L):
            if a <= z <= b:
                counts[i] += 1
                break
        else:
            counts[3] += 1
    return tuple(counts)


def residual_scale(p: MonicPoly, z) -> mpf:
    return p.max_coeff() * max(1, abs(z)) ** p.degree

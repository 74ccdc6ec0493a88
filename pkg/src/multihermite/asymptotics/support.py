"""Support of the limiting zero density and the one/three interval transition.

The branch points of the S-curve are the zeros of the sextic

    256 c^6 z^6 - 128 c^4 (c^4 + 18c^2 - 18) z^4
      + 16 c^2 (c^8 + 12c^6 + 240c^4 - 1008c^2 + 432) z^2
      - 32 c^2 (c^2 + 4c + 6)^2 (c^2 - 4c + 6)^2

(its discriminant in S) and the density lives where the sextic is
negative. Being even, it is solved as a cubic in w = z^2.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import mpmath
from mpmath import mp, mpf

from ..numerics import GUARD_DIGITS, wide

ONE = "one-interval"
THREE = "three-interval"
CRITICAL = "critical"

CRITICAL_WINDOW = mpf("1e-10")


@dataclass(frozen=True)
class SupportModel:
    chat: mpf
    phase: str
    b: mpf
    d: mpf | None = None
    a: mpf | None = None

    def intervals(self) -> list:
        """Support intervals in increasing order."""
        if self.phase == ONE:
            return [(-self.b, self.b)]
        if self.phase == CRITICAL:
            return [(-self.b, self.b)]
        return [(-self.b, -self.a), (-self.d, self.d), (self.a, self.b)]

    def contains(self, x) -> bool:
        return any(lo <= x <= hi for lo, hi in self.intervals())

    def endpoints(self) -> list:
        if self.phase == ONE:
            return [self.b]
        return [self.d, self.a, self.b]


def sextic_w_coefficients(chat) -> list:
    """Ascending coefficients of the sextic as a cubic in w = z^2."""
    c = wide(chat)
    c2 = c * c
    return [
        -32 * c2 * (c2 + 4 * c + 6) ** 2 * (c2 - 4 * c + 6) ** 2,
        16 * c2 * (c2**4 + 12 * c2**3 + 240 * c2**2 - 1008 * c2 + 432),
        -128 * c2**2 * (c2**2 + 18 * c2 - 18),
        256 * c2**3,
    ]


def sextic(z, chat):
    """Value of the branch-point sextic at z."""
    w = z * z
    a0, a1, a2, a3 = sextic_w_coefficients(chat)
    return ((a3 * w + a2) * w + a1) * w + a0


def _cubic(coeffs, w):
    a0, a1, a2, a3 = coeffs
    return ((a3 * w + a2) * w + a1) * w + a0


def _cubic_der(coeffs, w):
    _, a1, a2, a3 = coeffs
    return (3 * a3 * w + 2 * a2) * w + a1


def bracketed_root(f, df, lo, hi, max_iter: int = 500):
    """Newton safeguarded by bisection on a sign-change bracket."""
    flo, fhi = f(lo), f(hi)
    if flo == 0:
        return lo
    if fhi == 0:
        return hi
    if flo * fhi > 0:
        raise ValueError("no sign change in bracket")
    x = (lo + hi) / 2
    tol = mpf(10) ** (-(mp.dps - 5))
    for _ in range(max_iter):
        fx = f(x)
        if fx == 0:
            return x
        if (fx < 0) == (flo < 0):
            lo, flo = x, fx
        else:
            hi = x
        dfx = df(x)
        nxt = x - fx / dfx if dfx != 0 else None
        if nxt is None or not lo < nxt < hi:
            nxt = (lo + hi) / 2
        if abs(nxt - x) <= tol * max(1, abs(x)):
            return nxt
        x = nxt
    return x


def _real_cubic_roots(coeffs) -> list:
    """Real roots of the cubic, double roots included once, in increasing order."""
    a0, a1, a2, a3 = coeffs
    f = lambda w: _cubic(coeffs, w)
    df = lambda w: _cubic_der(coeffs, w)
    bound = 1 + max(abs(a0), abs(a1), abs(a2)) / abs(a3)
    disc = a2 * a2 - 3 * a3 * a1
    if disc <= 0:
        return [bracketed_root(f, df, -bound, bound)]
    s = mpmath.sqrt(disc)
    crit = sorted([(-a2 - s) / (3 * a3), (-a2 + s) / (3 * a3)])
    knots = [-bound] + crit + [bound]
    roots = []
    scale = max(abs(a) for a in coeffs) * max(1, abs(crit[1])) ** 3
    for lo, hi in zip(knots, knots[1:]):
        if f(lo) * f(hi) < 0:
            roots.append(bracketed_root(f, df, lo, hi))
    for cp in crit:
        if abs(f(cp)) <= scale * mpf(10) ** (-(mp.dps - 10)):
            roots.append(cp)
    return sorted(roots)


def critical_c() -> mpf:
    """Positive root of c^6 - (27/2) c^4 - 54 c^2 - 54, the one/three interval threshold."""
    return _critical_c(mp.dps)


@lru_cache(maxsize=8)
def _critical_c(dps: int) -> mpf:
    with mp.workdps(dps + GUARD_DIGITS):
        f = lambda u: ((u - mpf(27) / 2) * u - 54) * u - 54
        df = lambda u: (3 * u - 27) * u - 54
        u = bracketed_root(f, df, mpf(0), mpf(30))
        root = mpmath.sqrt(u)
    return +root


def critical_polynomial(chat):
    c2 = wide(chat) ** 2
    return ((c2 - mpf(27) / 2) * c2 - 54) * c2 - 54


def support_intervals(chat) -> SupportModel:
    """Classify the phase and return the support endpoints for scaled shift ``chat``."""
    chat = wide(chat)
    if chat <= 0:
        raise ValueError("chat must be positive")
    return _support(chat, mp.dps)


@lru_cache(maxsize=64)
def _support(chat: mpf, dps: int) -> SupportModel:
    with mp.workdps(dps + GUARD_DIGITS):
        coeffs = sextic_w_coefficients(chat)
        positive = [w for w in _real_cubic_roots(coeffs) if w > 0]
        if abs(chat - critical_c()) < CRITICAL_WINDOW:
            ends = [mpmath.sqrt(w) for w in positive]
            model = SupportModel(chat, CRITICAL, b=ends[-1], d=ends[0], a=ends[0])
        elif len(positive) == 3:
            d, a, b = (mpmath.sqrt(w) for w in positive)
            model = SupportModel(chat, THREE, b=b, d=d, a=a)
        elif len(positive) == 1:
            model = SupportModel(chat, ONE, b=mpmath.sqrt(positive[0]))
        else:
            raise ArithmeticError(f"unexpected branch-point structure: {positive}")
    return SupportModel(model.chat, model.phase, +model.b,
                        None if model.d is None else +model.d,
                        None if model.a is None else +model.a)

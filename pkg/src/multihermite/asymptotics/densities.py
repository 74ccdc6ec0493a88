"""Equilibrium densities on the real line and their sampled representation.

Densities are boundary values of branch jumps: v = |Im S_(1)(x + i0)| / (3 pi)
and nu_j' = |Im xi_{j+1}(x + i0)| / pi. Where the sextic is negative the
quartic has exactly one conjugate pair of roots at real x, and the branch
with the jump belongs to it, so the boundary value is read off that pair
without continuation (continuation stalls next to the branch points).
:func:`tracked_density_v` keeps the labelled route at x + 1e-20 i.

A density with square-root endpoints on [lo, hi] is stored through
G(theta) = half * f(mid + half cos theta), which is a smooth odd function of
theta and is expanded in sin((k+1) theta). Mass, distribution function and
logarithmic potential then integrate in closed form against that series.
"""
from __future__ import annotations

from dataclasses import dataclass

import mpmath
import numpy as np
from mpmath import mp, mpf

from ..numerics import GUARD_DIGITS, wide
from .curves import s_coefficients, solve_S_branches, solve_xi_branches, xi_coefficients
from .support import ONE, SupportModel, support_intervals

EPSILON = mpf("1e-20")
DEFAULT_SAMPLES = 96


class UnsupportedPhase(ValueError):
    """The nu-decomposition is only available in the three-interval phase."""


def conjugate_pair_imag(coeffs) -> mpf:
    """|Im| of the non-real pair of a real quartic (0 if all roots are real)."""
    with mp.workdps(mp.dps + GUARD_DIGITS):
        roots = mpmath.polyroots(coeffs, maxsteps=400, extraprec=4 * mp.dps)
        im = max(abs(r.imag) for r in roots)
    return +im


def density_v(x, chat) -> mpf:
    """Density of the limiting scaled zero distribution; exactly zero off the support."""
    x, chat = wide(x), wide(chat)
    if not support_intervals(chat).contains(x):
        return mpf(0)
    return conjugate_pair_imag(s_coefficients(x, chat)) / (3 * mp.pi)


def tracked_density_v(x, chat) -> mpf:
    """Same density through the labelled branch S_(1) at x + 1e-20 i (interior points only)."""
    x, chat = wide(x), wide(chat)
    if not support_intervals(chat).contains(x):
        return mpf(0)
    s1 = solve_S_branches(mpmath.mpc(x, EPSILON), chat)[0]
    return abs(s1.imag) / (3 * mp.pi)


def nu_support(j: int, model: SupportModel) -> tuple:
    if model.phase == ONE:
        raise UnsupportedPhase("nu components exist only for chat > c*")
    if j not in (1, 2, 3):
        raise ValueError("j must be 1, 2 or 3")
    return model.intervals()[j - 1]


def density_nu(j: int, x, chat) -> mpf:
    """nu_j'(x) for j = 1, 2, 3 on [-b,-a], [-d,d], [a,b] respectively."""
    x, chat = wide(x), wide(chat)
    lo, hi = nu_support(j, support_intervals(chat))
    if not lo <= x <= hi:
        return mpf(0)
    return conjugate_pair_imag(xi_coefficients(x, chat)) / mp.pi


def tracked_density_nu(j: int, x, chat) -> mpf:
    x, chat = wide(x), wide(chat)
    lo, hi = nu_support(j, support_intervals(chat))
    if not lo <= x <= hi:
        return mpf(0)
    xi = solve_xi_branches(mpmath.mpc(x, EPSILON), chat)[j]
    return abs(xi.imag) / mp.pi


@dataclass(frozen=True)
class DensitySample:
    x: mpf
    v: mpf
    nu1: mpf
    nu2: mpf
    nu3: mpf


def density_sample(x, chat) -> DensitySample:
    x = wide(x)
    model = support_intervals(chat)
    if model.phase == ONE:
        nus = (mpf(0),) * 3
    else:
        nus = tuple(density_nu(j, x, chat) for j in (1, 2, 3))
    return DensitySample(x, density_v(x, chat), *nus)


def _chebyshev_values(s, count: int) -> list:
    """T_0(s) .. T_{count-1}(s)."""
    out = [mpf(1), s]
    while len(out) < count:
        out.append(2 * s * out[-1] - out[-2])
    return out[:count]


@dataclass(frozen=True)
class SinePiece:
    """Density on [lo, hi] through half * f(mid + half cos t) = sum_k a_k sin((k+1) t)."""

    lo: mpf
    hi: mpf
    coeffs: tuple

    @property
    def mid(self):
        return (self.lo + self.hi) / 2

    @property
    def half(self):
        return (self.hi - self.lo) / 2

    @classmethod
    def from_function(cls, f, lo, hi, samples: int = DEFAULT_SAMPLES) -> "SinePiece":
        lo, hi = wide(lo), wide(hi)
        mid, half = (lo + hi) / 2, (hi - lo) / 2
        thetas = [(i + mpf(1) / 2) * mp.pi / samples for i in range(samples)]
        g = [half * f(mid + half * mpmath.cos(t)) for t in thetas]
        coeffs = []
        for k in range(samples - 1):
            acc = mpmath.fsum(gi * mpmath.sin((k + 1) * t) for gi, t in zip(g, thetas))
            coeffs.append(2 * acc / samples)
        return cls(lo, hi, tuple(coeffs))

    def _theta(self, x):
        s = (wide(x) - self.mid) / self.half
        return mpmath.acos(max(-1, min(1, s)))

    def __call__(self, x):
        x = wide(x)
        if not self.lo < x < self.hi:
            return mpf(0)
        t = self._theta(x)
        g = mpmath.fsum(a * mpmath.sin((k + 1) * t) for k, a in enumerate(self.coeffs))
        return g / self.half

    @property
    def mass(self):
        return self.coeffs[0] * mp.pi / 2

    def cdf(self, x):
        x = wide(x)
        if x <= self.lo:
            return mpf(0)
        if x >= self.hi:
            return self.mass
        t = self._theta(x)

        def prim(m):
            return mp.pi - t if m == 0 else -mpmath.sin(m * t) / m

        return mpmath.fsum(a * (prim(k) - prim(k + 2)) for k, a in enumerate(self.coeffs)) / 2

    def potential(self, x):
        """int log(1/|x - y|) f(y) dy, exact for the truncated series."""
        x = wide(x)
        s = (x - self.mid) / self.half
        count = len(self.coeffs) + 2
        if abs(s) <= 1:
            L = [-mpmath.log(2)] + [-t / m for m, t in enumerate(_chebyshev_values(s, count)) if m]
        else:
            root = mpmath.sqrt(s * s - 1)
            zeta = s + root if s > 0 else s - root
            L = [mpmath.log(abs(zeta)) - mpmath.log(2)]
            L += [-(zeta ** (-m)) / m for m in range(1, count)]
        acc = mpmath.fsum(a * (L[k] - L[k + 2]) for k, a in enumerate(self.coeffs))
        return -self.mass * mpmath.log(self.half) - mp.pi / 2 * acc

    def moment_integral(self, g, order: int = 80):
        """int g(y) f(y) dy by Gauss-Legendre in the angle variable."""
        nodes, weights = np.polynomial.legendre.leggauss(order)
        total = mpf(0)
        for t, wt in zip(nodes, weights):
            theta = mp.pi * (mpf(t) + 1) / 2
            y = self.mid + self.half * mpmath.cos(theta)
            total += mpf(wt) * g(y) * self.half * self(y) * mpmath.sin(theta)
        return total * mp.pi / 2


@dataclass(frozen=True)
class SampledDensity:
    pieces: tuple
    label: str = ""

    def __call__(self, x):
        return mpmath.fsum(p(x) for p in self.pieces)

    @property
    def mass(self):
        return mpmath.fsum(p.mass for p in self.pieces)

    def cdf(self, x):
        return mpmath.fsum(p.cdf(x) for p in self.pieces)

    def potential(self, x):
        return mpmath.fsum(p.potential(x) for p in self.pieces)

    def stieltjes(self, z, order: int = 80):
        """int f(y) / (z - y) dy for z off the support."""
        return mpmath.fsum(p.moment_integral(lambda y: 1 / (z - y), order) for p in self.pieces)

    @property
    def endpoints(self):
        return [(p.lo, p.hi) for p in self.pieces]

    def scaled(self, factor) -> "SampledDensity":
        factor = wide(factor)
        return SampledDensity(
            tuple(SinePiece(p.lo, p.hi, tuple(factor * a for a in p.coeffs)) for p in self.pieces),
            self.label,
        )

    def __add__(self, other: "SampledDensity") -> "SampledDensity":
        return SampledDensity(self.pieces + other.pieces, f"{self.label}+{other.label}")


def sample_v(chat, samples: int = DEFAULT_SAMPLES) -> SampledDensity:
    chat = wide(chat)
    pieces = tuple(
        SinePiece.from_function(lambda x: density_v(x, chat), lo, hi, samples)
        for lo, hi in support_intervals(chat).intervals()
    )
    return SampledDensity(pieces, "v")


def sample_nu(j: int, chat, samples: int = DEFAULT_SAMPLES) -> SampledDensity:
    chat = wide(chat)
    lo, hi = nu_support(j, support_intervals(chat))
    piece = SinePiece.from_function(lambda x: density_nu(j, x, chat), lo, hi, samples)
    return SampledDensity((piece,), f"nu{j}")


def integrate_density(f, lo, hi, order: int = 120) -> mpf:
    """Independent mass oracle: Gauss-Legendre in the angle variable on the raw density function.

    The substitution y = mid + half cos(theta) absorbs square-root endpoints.
    """
    lo, hi = wide(lo), wide(hi)
    mid, half = (lo + hi) / 2, (hi - lo) / 2
    nodes, weights = np.polynomial.legendre.leggauss(order)
    total = mpf(0)
    for t, wt in zip(nodes, weights):
        theta = mp.pi * (mpf(t) + 1) / 2
        total += mpf(wt) * f(mid + half * mpmath.cos(theta)) * mpmath.sin(theta)
    return total * half * mp.pi / 2


def stieltjes_consistency(chat, z=None, samples: int = DEFAULT_SAMPLES) -> mpf:
    """|S_(1)(z) - sum_j int nu_j'(x)/(z - x) dx|, default z = 3b + i."""
    chat = wide(chat)
    model = support_intervals(chat)
    if z is None:
        z = mpmath.mpc(3 * model.b, 1)
    total = mpmath.fsum(sample_nu(j, chat, samples).stieltjes(z) for j in (1, 2, 3))
    return abs(solve_S_branches(z, chat)[0] - total)


def density_grid(chat, count: int, margin=None) -> list:
    """DensitySample rows on a uniform grid covering [-b - margin, b + margin]."""
    chat = wide(chat)
    model = support_intervals(chat)
    margin = model.b / 10 if margin is None else wide(margin)
    lo, hi = -model.b - margin, model.b + margin
    if count < 2:
        raise ValueError("need at least two grid points")
    return [density_sample(lo + (hi - lo) * i / (count - 1), chat) for i in range(count)]

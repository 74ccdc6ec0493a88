"""Logarithmic potentials, variational conditions and zero-based diagnostics."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import mpmath
from mpmath import mp, mpf

from ..numerics import wide
from .densities import DEFAULT_SAMPLES, SampledDensity, sample_nu, sample_v
from .support import ONE, support_intervals

ON_SUPPORT_SAMPLES = 41
OFF_SUPPORT_SAMPLES = 121


def log_potential(density: SampledDensity, x) -> mpf:
    """U(x; mu) = int log(1/|x - y|) dmu(y) for a sampled density."""
    return density.potential(x)


def discrete_potential(zeros: Sequence, n: int, x) -> mpf:
    """-(1/n) sum_i log|x - z_i / sqrt(n)|."""
    x = wide(x)
    root = mpmath.sqrt(n)
    total = mpf(0)
    for z in zeros:
        gap = abs(x - wide(z) / root)
        if gap == 0:
            raise ValueError(f"x = {x} coincides with a scaled node")
        total += mpmath.log(gap)
    return -total / n


def external_fields(chat):
    chat = wide(chat)
    return (
        lambda x: x * x + chat * x,
        lambda x: x * x,
        lambda x: x * x - chat * x,
    )


# rows of the interaction matrix acting on (U1, U2, U3)
INTERACTION = ((2, 1, 1), (1, 2, 1), (1, 1, 2))


@dataclass(frozen=True)
class EquilibriumModel:
    chat: mpf
    nus: tuple  # SampledDensity for nu_1, nu_2, nu_3
    intervals: tuple

    def potentials(self, x) -> tuple:
        return tuple(nu.potential(x) for nu in self.nus)

    def combinations(self, x) -> tuple:
        """The three left-hand sides of the variational conditions at x."""
        u = self.potentials(x)
        fields = external_fields(self.chat)
        return tuple(
            sum(w * uj for w, uj in zip(row, u)) + fields[i](x)
            for i, row in enumerate(INTERACTION)
        )

    def ell(self) -> tuple:
        """Lagrange constants read off at the midpoint of each support interval."""
        return tuple(
            self.combinations((lo + hi) / 2)[i] for i, (lo, hi) in enumerate(self.intervals)
        )


def equilibrium_model(chat, samples: int = DEFAULT_SAMPLES) -> EquilibriumModel:
    chat = wide(chat)
    model = support_intervals(chat)
    if model.phase == ONE:
        raise ValueError("variational conditions are set up for the three-interval phase")
    nus = tuple(sample_nu(j, chat, samples) for j in (1, 2, 3))
    return EquilibriumModel(chat, nus, tuple(model.intervals()))


@dataclass(frozen=True)
class VariationalReport:
    chat: mpf
    ell: tuple
    on_support_residual: tuple  # per condition, max |E_j - ell_j| on its interval
    on_support_spread: tuple  # per condition, max - min of E_j on its interval
    off_support_margin: tuple  # per condition, min (E_j - ell_j) off its interval

    @property
    def symmetry_gap(self) -> mpf:
        return abs(self.ell[0] - self.ell[2])


def _interior_grid(lo, hi, count):
    # Chebyshev points of the second kind without the endpoints
    mid, half = (lo + hi) / 2, (hi - lo) / 2
    return [mid - half * mpmath.cos(mp.pi * (i + 1) / (count + 1)) for i in range(count)]


def variational_report(
    chat,
    samples: int = DEFAULT_SAMPLES,
    on_support: int = ON_SUPPORT_SAMPLES,
    off_support: int = OFF_SUPPORT_SAMPLES,
    model: EquilibriumModel | None = None,
) -> VariationalReport:
    """Check the three equalities on the supports and the three inequalities off them."""
    model = model or equilibrium_model(chat, samples)
    ell = model.ell()
    residual, spread, margin = [], [], []
    b = model.intervals[2][1]
    outer = [-b - 2 + (2 * b + 4) * i / (off_support - 1) for i in range(off_support)]
    for j, (lo, hi) in enumerate(model.intervals):
        on = [model.combinations(x)[j] for x in _interior_grid(lo, hi, on_support)]
        residual.append(max(abs(e - ell[j]) for e in on))
        spread.append(max(on) - min(on))
        off = [model.combinations(x)[j] - ell[j] for x in outer if not lo <= x <= hi]
        margin.append(min(off))
    return VariationalReport(model.chat, ell, tuple(residual), tuple(spread), tuple(margin))


def scaled_zeros(zeros: Sequence, n: int) -> list:
    root = mpmath.sqrt(n)
    return [wide(z) / root for z in zeros]


def ks_distance(zeros: Sequence, n: int, chat, samples: int = DEFAULT_SAMPLES) -> mpf:
    """Kolmogorov-Smirnov distance between the scaled-zero counting measure and v."""
    v = sample_v(chat, samples)
    pts = sorted(scaled_zeros(zeros, n))
    m = len(pts)
    worst = mpf(0)
    for i, x in enumerate(pts):
        F = v.cdf(x)
        worst = max(worst, abs(F - mpf(i) / m), abs(F - mpf(i + 1) / m))
    return worst


def decay_bound(model: EquilibriumModel, j: int, x, n: int) -> mpf:
    """Predicted bound on |lambda_k^(j)|^(1/n) for normalized weights near scaled node x.

    The limsup bound exp(E_j(x) - V_j(x) - ell_j) refers to the weight
    exp(-n V_j) in the scaled variable; dividing by the total mass of the
    weight converts it to normalized weights.
    """
    x = wide(x)
    ell = model.ell()[j - 1]
    u = model.potentials(x)
    row = INTERACTION[j - 1]
    exponent = sum(w * uj for w, uj in zip(row, u)) - ell
    if j != 2:
        exponent -= model.chat**2 / 4
    return mpmath.exp(exponent) * (n / mp.pi) ** (mpf(1) / (2 * n))

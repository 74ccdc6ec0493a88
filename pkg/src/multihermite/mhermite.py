"""Multiple Hermite polynomials H_n for weights exp(-x^2 + c_j x).

Two independent constructions are provided: the nearest-neighbour
recurrence (dynamic programming over the multi-index box) and the explicit
binomial sum over classical Hermite polynomials. The differential
identities (raising, lowering, fourth-order ODE for the symmetric triple)
are exposed as residual checks.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Sequence

import mpmath
from mpmath import mp, mpf

from .numerics import (
    GUARD_DIGITS,
    MonicPoly,
    gaussian_moments,
    hermite_classical_coeffs,
    moment_functional,
    poly_add,
    poly_derivative,
    poly_eval,
    poly_mul,
    poly_mul_linear,
    poly_scale,
    wide,
)


class DimensionMismatch(ValueError):
    pass


@dataclass(frozen=True)
class MultiIndex:
    parts: tuple

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if not parts:
            raise ValueError("multi-index needs at least one part")
        if any(p < 0 for p in parts):
            raise ValueError(f"multi-index parts must be >= 0: {parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def diagonal(cls, n: int, r: int = 3) -> "MultiIndex":
        return cls((n,) * r)

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def r(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __getitem__(self, j):
        return self.parts[j]


@dataclass(frozen=True)
class WeightSystem:
    """Shift parameters c_1..c_r of the weights exp(-x^2 + c_j x)."""

    c: tuple
    chat: mpf | None = field(default=None, compare=False)

    def __post_init__(self):
        cs = tuple(wide(v) for v in self.c)
        if not cs:
            raise ValueError("need at least one weight")
        if len(set(cs)) != len(cs):
            raise ValueError(f"shift parameters must be pairwise distinct: {cs}")
        object.__setattr__(self, "c", cs)

    @classmethod
    def symmetric(cls, c, n: int | None = None) -> "WeightSystem":
        """The triple (-c, 0, c); ``n`` attaches the scaled value c / sqrt(n)."""
        c = wide(c)
        if c <= 0:
            raise ValueError("symmetric triple needs c > 0")
        chat = c / mpmath.sqrt(n) if n else None
        return cls((-c, mpf(0), c), chat=chat)

    @property
    def r(self) -> int:
        return len(self.c)

    @property
    def is_symmetric(self) -> bool:
        return self.r == 3 and self.c[1] == 0 and self.c[0] == -self.c[2] and self.c[2] > 0


def _check_dims(n: MultiIndex, w: WeightSystem):
    if n.r != w.r:
        raise DimensionMismatch(f"multi-index has {n.r} parts but {w.r} weights were given")


def _last_step(m: tuple, path: str) -> int:
    if path == "round_robin":
        top = max(m)
        return max(j for j, v in enumerate(m) if v == top)
    if path == "block":
        return max(j for j, v in enumerate(m) if v > 0)
    raise ValueError(f"unknown path {path!r}")


@lru_cache(maxsize=32)
def _recurrence_table(parts: tuple, c: tuple, path: str, dps: int) -> dict:
    r = len(parts)
    with mp.workdps(dps + GUARD_DIGITS):
        half = mpf(1) / 2
        table = {(0,) * r: [mpf(1)]}
        box = sorted(itertools.product(*(range(p + 1) for p in parts)), key=sum)
        for m in box[1:]:
            k = _last_step(m, path)
            base = m[:k] + (m[k] - 1,) + m[k + 1:]
            poly = poly_mul_linear(table[base], c[k] / 2)
            for j, bj in enumerate(base):
                if bj:
                    lower = base[:j] + (bj - 1,) + base[j + 1:]
                    poly = poly_add(poly, poly_scale(table[lower], -half * bj))
            poly[-1] = mpf(1)
            table[m] = poly
    return table


def hermite_table(n: MultiIndex, w: WeightSystem, path: str = "round_robin") -> dict:
    """All H_m for m in the box below ``n``, keyed by the parts tuple."""
    _check_dims(n, w)
    return _recurrence_table(n.parts, w.c, path, mp.dps)


def build_by_recurrence(n: MultiIndex, w: WeightSystem, path: str = "round_robin") -> MonicPoly:
    """H_n from the nearest-neighbour recurrence

        x H_m = H_{m+e_k} + (c_k/2) H_m + 1/2 sum_j m_j H_{m-e_j}.

    ``path`` selects which direction k is used for the last step into each
    multi-index ("round_robin" or "block"); the result does not depend on it.
    """
    table = hermite_table(n, w, path)
    return MonicPoly(tuple(table[n.parts]))


def build_explicit(n: MultiIndex, w: WeightSystem) -> MonicPoly:
    """H_n from the explicit binomial sum over classical Hermite polynomials.

    The sum over k_1..k_r is grouped by |k|; each group weight is the
    coefficient of t^s in prod_j (t + c_j)^{n_j}.
    """
    _check_dims(n, w)
    size = n.size
    with mp.workdps(mp.dps + GUARD_DIGITS):
        weights = [mpf(1)]
        for nj, cj in zip(n.parts, w.c):
            factor = [comb(nj, k) * cj ** (nj - k) for k in range(nj + 1)]
            merged = [mpf(0)] * (len(weights) + nj)
            for i, a in enumerate(weights):
                for k, b in enumerate(factor):
                    merged[i + k] += a * b
            weights = merged
        coeffs = [mpf(0)] * (size + 1)
        for s, a_s in enumerate(weights):
            sign = -1 if s % 2 else 1
            for i, h in enumerate(hermite_classical_coeffs(s)):
                if h:
                    coeffs[i] += sign * a_s * h
        scale = (-1) ** size * mpf(2) ** (-size)
        coeffs = [scale * v for v in coeffs]
        coeffs[-1] = mpf(1)
    return MonicPoly(tuple(coeffs))


def _rel_residual(residual: Sequence, reference: Sequence) -> mpf:
    scale = max(max(abs(v) for v in reference), mpf(1))
    return max(abs(v) for v in residual) / scale


def lowering_residual(n: MultiIndex, w: WeightSystem) -> mpf:
    """Relative residual of H_n' - sum_j n_j H_{n-e_j}."""
    if n.size < 1:
        raise ValueError("lowering identity needs |n| >= 1")
    table = hermite_table(n, w)
    deriv = poly_derivative(table[n.parts])
    rhs = [mpf(0)]
    for j, nj in enumerate(n.parts):
        if nj:
            lower = n.parts[:j] + (nj - 1,) + n.parts[j + 1:]
            rhs = poly_add(rhs, poly_scale(table[lower], nj))
    return _rel_residual(poly_add(deriv, poly_scale(rhs, -1)), deriv)


def raising_residual(j: int, n: MultiIndex, w: WeightSystem) -> mpf:
    """Relative residual of H_{n-e_j}' + (-2x + c_j) H_{n-e_j} + 2 H_n (``j`` is 1-based)."""
    idx = j - 1
    if not 0 <= idx < n.r:
        raise ValueError(f"weight index {j} out of range 1..{n.r}")
    if n.parts[idx] < 1:
        raise ValueError(f"raising identity needs n_{j} >= 1")
    table = hermite_table(n, w)
    lower = table[n.parts[:idx] + (n.parts[idx] - 1,) + n.parts[idx + 1:]]
    full = table[n.parts]
    terms = poly_add(poly_derivative(lower), poly_scale(lower, w.c[idx]))
    terms = poly_add(terms, poly_mul_linear(poly_scale(lower, -2), 0))
    terms = poly_add(terms, poly_scale(full, 2))
    return _rel_residual(terms, poly_scale(full, 2))


def ode_residual(n: int, w: WeightSystem, xs: Sequence) -> mpf:
    """Max scaled residual of the fourth-order ODE satisfied by H_{n,n,n}.

    y'''' - 6x y''' + (12x^2 - c^2 - 6) y'' + (-8x^3 + (2c^2 + 12) x) y'
        = -2n (3 y'' - 12 x y' + (12x^2 - c^2 - 6) y)
    """
    if not w.is_symmetric:
        raise ValueError("ODE check needs the symmetric triple (-c, 0, c)")
    c = w.c[2]
    y0 = build_by_recurrence(MultiIndex.diagonal(n), w).coeffs
    y1 = poly_derivative(y0)
    y2 = poly_derivative(y1)
    y3 = poly_derivative(y2)
    y4 = poly_derivative(y3)
    worst = mpf(0)
    with mp.workdps(mp.dps + GUARD_DIGITS):
        for x in xs:
            x = wide(x)
            d0, d1, d2, d3, d4 = (poly_eval(p, x) for p in (y0, y1, y2, y3, y4))
            quad = 12 * x**2 - c**2 - 6
            lhs_terms = [d4, -6 * x * d3, quad * d2, (-8 * x**3 + (2 * c**2 + 12) * x) * d1]
            rhs_terms = [-6 * n * d2, 24 * n * x * d1, -2 * n * quad * d0]
            resid = abs(mpmath.fsum(lhs_terms) - mpmath.fsum(rhs_terms))
            scale = 1 + max(abs(t) for t in lhs_terms + rhs_terms)
            worst = max(worst, resid / scale)
    return +worst


def orthogonality_defect(p: MonicPoly, n: MultiIndex, w: WeightSystem) -> mpf:
    """Largest |int x^k p(x) w_j(x) dx| over 0 <= k < n_j and all j.

    Integrals are exact moment functionals of the normalized weights, and
    each is scaled by its Cauchy-Schwarz bound ||x^k|| ||p|| in L2(w_j).
    """
    worst = mpf(0)
    with mp.workdps(mp.dps + GUARD_DIGITS):
        for nj, cj in zip(n.parts, w.c):
            if nj == 0:
                continue
            mom = gaussian_moments(cj, 2 * p.degree + 1, normalized=True).m
            norm_p = mpmath.sqrt(moment_functional(poly_mul(p.coeffs, p.coeffs), mom))
            for k in range(nj):
                val = moment_functional(p.coeffs, mom, shift=k)
                worst = max(worst, abs(val) / (norm_p * mpmath.sqrt(mom[2 * k])))
    return +worst

"""Extended-precision kernel: working precision, dense monic polynomials,
classical Hermite evaluation and moments of shifted Gaussian weights.

All scalars are :class:`mpmath.mpf` values. The working precision is the
global ``mpmath.mp.dps`` and is set once per run through
:func:`set_precision`.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import mpmath
from mpmath import mp, mpf

DEFAULT_PRECISION = 64
MIN_PRECISION = 30

# extra digits carried inside cancellation-prone routines
GUARD_DIGITS = 30


def set_precision(digits: int) -> int:
    """Set the global working precision in decimal digits."""
    digits = int(digits)
    if digits < MIN_PRECISION:
        raise ValueError(f"precision must be >= {MIN_PRECISION} digits, got {digits}")
    mp.dps = digits
    return digits


def precision() -> int:
    return mp.dps


def wide(value) -> mpf:
    """Convert ints, decimal strings, floats or mpf to the wide scalar type."""
    if isinstance(value, mpf):
        return value
    if isinstance(value, str):
        return mpf(value.strip())
    return mpf(value)


def to_decimal(value, digits: int | None = None) -> str:
    """Serialize a scalar as a decimal string with ``digits`` significant digits."""
    digits = digits or mp.dps
    value = mpmath.mpmathify(value)
    if isinstance(value, mpmath.mpc):
        value = value.real
    if value == 0:
        return "0.0"
    return mpmath.nstr(value, digits, min_fixed=0, max_fixed=0, strip_zeros=False)


@dataclass(frozen=True)
class MonicPoly:
    """Monic polynomial, coefficients in ascending degree order."""

    coeffs: tuple

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("empty coefficient list")
        if self.coeffs[-1] != 1:
            raise ValueError("leading coefficient must be exactly 1")

    @classmethod
    def from_coeffs(cls, coeffs: Iterable) -> "MonicPoly":
        """Build from ascending coefficients, forcing the leading entry to 1."""
        cs = [wide(c) for c in coeffs]
        cs[-1] = mpf(1)
        return cls(tuple(cs))

    @classmethod
    def from_roots(cls, roots: Iterable) -> "MonicPoly":
        cs = [mpf(1)]
        for z in roots:
            cs = poly_mul_linear(cs, wide(z))
        return cls(tuple(cs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x):
        return poly_eval(self, x)

    def max_coeff(self) -> mpf:
        return max(abs(c) for c in self.coeffs)


def _coeffs(p) -> Sequence:
    return p.coeffs if isinstance(p, MonicPoly) else p


def poly_eval(p, x):
    """Horner evaluation; ``p`` is a MonicPoly or an ascending coefficient list."""
    cs = _coeffs(p)
    acc = cs[-1] * 1
    for c in reversed(cs[:-1]):
        acc = acc * x + c
    return acc


def poly_eval_with_derivative(p, x):
    """Return ``(p(x), p'(x))`` by a single Horner sweep."""
    cs = _coeffs(p)
    val = cs[-1] * 1
    der = 0 * val
    for c in reversed(cs[:-1]):
        der = der * x + val
        val = val * x + c
    return val, der


def poly_derivative(p) -> list:
    """Coefficient-wise derivative; a constant maps to the zero polynomial ``[0]``."""
    cs = _coeffs(p)
    if len(cs) == 1:
        return [mpf(0)]
    return [k * cs[k] for k in range(1, len(cs))]


def deflate_at(p, x0):
    """Synthetic division ``p(x) = (x - x0) * quotient(x) + remainder``."""
    cs = _coeffs(p)
    if len(cs) < 2:
        raise ValueError("cannot deflate a constant polynomial")
    n = len(cs) - 1
    q = [mpf(0)] * n
    # guard digits; results are left unrounded for the caller
    with mp.workdps(mp.dps + GUARD_DIGITS):
        acc = cs[n]
        for k in range(n - 1, -1, -1):
            q[k] = acc
            acc = cs[k] + acc * x0
    quotient = MonicPoly(tuple(q)) if q[-1] == 1 else q
    return quotient, acc


def poly_add(a: Sequence, b: Sequence) -> list:
    n = max(len(a), len(b))
    zero = mpf(0)
    return [(a[i] if i < len(a) else zero) + (b[i] if i < len(b) else zero) for i in range(n)]


def poly_scale(a: Sequence, s) -> list:
    return [s * c for c in a]


def poly_mul(a: Sequence, b: Sequence) -> list:
    out = [mpf(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            out[i + j] += ai * bj
    return out


def poly_mul_linear(a: Sequence, x0) -> list:
    """Multiply ascending coefficients by ``(x - x0)``."""
    out = [mpf(0)] * (len(a) + 1)
    for i, ai in enumerate(a):
        out[i + 1] += ai
        out[i] -= x0 * ai
    return out


def max_abs_diff(a: Sequence, b: Sequence) -> mpf:
    diff = poly_add(a, poly_scale(b, -1))
    return max(abs(c) for c in diff)


def relative_coeff_diff(a: Sequence, b: Sequence) -> mpf:
    """Max coefficient difference scaled by the largest coefficient of ``a``."""
    scale = max(abs(c) for c in _coeffs(a))
    return max_abs_diff(_coeffs(a), _coeffs(b)) / max(scale, mpf(1))


def hermite_classical_eval(m: int, x):
    """Physicists' Hermite polynomial H_m(x) by the three-term recurrence."""
    if m < 0:
        raise ValueError("degree must be non-negative")
    x = wide(x) if not isinstance(x, (mpf, mpmath.mpc)) else x
    h_prev, h = mpf(1), 2 * x
    if m == 0:
        return h_prev
    for k in range(1, m):
        h_prev, h = h, 2 * x * h - 2 * k * h_prev
    return h


def hermite_classical_coeffs(m: int) -> list:
    """Integer coefficients (ascending) of the physicists' Hermite H_m."""
    h_prev, h = [1], [0, 2]
    if m == 0:
        return h_prev
    for k in range(1, m):
        nxt = [0] * (len(h) + 1)
        for i, c in enumerate(h):
            nxt[i + 1] += 2 * c
        for i, c in enumerate(h_prev):
            nxt[i] -= 2 * k * c
        h_prev, h = h, nxt
    return h


@dataclass(frozen=True)
class MomentVector:
    c: mpf
    normalized: bool
    m: tuple

    def __getitem__(self, j):
        return self.m[j]

    def __len__(self):
        return len(self.m)


def normal_moments(mean, variance, count: int, mass=1) -> list:
    """Moments of ``mass`` times the normal density N(mean, variance)."""
    if count < 1:
        raise ValueError("count must be >= 1")
    mean, variance = wide(mean), wide(variance)
    m = [wide(mass)]
    if count > 1:
        m.append(mean * m[0])
    for j in range(1, count - 1):
        m.append(mean * m[j] + j * variance * m[j - 1])
    return m


def gaussian_mass(c) -> mpf:
    """Total mass of exp(-x^2 + c x): sqrt(pi) * exp(c^2 / 4)."""
    c = wide(c)
    return mpmath.sqrt(mp.pi) * mpmath.exp(c * c / 4)


def gaussian_moments(c, count: int, normalized: bool = True) -> MomentVector:
    """Moments of exp(-x^2 + c x), raw or divided by its mass.

    Seeded in closed form and continued by the two-term recurrence
    m[j+1] = (c/2) m[j] + (j/2) m[j-1].
    """
    c = wide(c)
    mass = mpf(1) if normalized else gaussian_mass(c)
    m = normal_moments(c / 2, mpf(1) / 2, count, mass)
    return MomentVector(c=c, normalized=normalized, m=tuple(m))


def moment_functional(coeffs: Sequence, moments: Sequence, shift: int = 0):
    """Integral of x^shift * p(x) against the measure with the given moments."""
    return mpmath.fsum(c * moments[i + shift] for i, c in enumerate(coeffs))

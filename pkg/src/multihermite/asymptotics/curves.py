"""The two quartic curves of the symmetric triple and labelled branch tracking.

S-curve (Stieltjes transform of the limiting zero counting measure)::

    S^4 - 6z S^3 + (12z^2 - c^2 + 6) S^2 + (-8z^3 + 2c^2 z - 24z) S + 2(12z^2 - c^2) = 0

xi-curve (its uniformizing companion, S = 2/xi + 2/(xi + c) + 2/(xi - c))::

    xi^4 - 2z xi^3 + (6 - c^2) xi^2 + 2c^2 z xi - 2c^2 = 0

Here c stands for the scaled shift chat. Branches are labelled by their
behaviour at infinity and continued to the target point along a path that
stays in one half plane, so no real branch point is crossed. Tracking runs
in complex double precision; the end points are then polished by Newton's
method at the working precision.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import mpmath
import numpy as np
from mpmath import mp, mpc, mpf

from ..numerics import GUARD_DIGITS, wide

NEWTON_ITERS = 8
RESIDUAL_SPIKE = 1e-6
INITIAL_STEP = 0.02
MAX_STEP = 0.1
MIN_STEP = 1e-6


class TrackingFailure(ArithmeticError):
    pass


def s_coefficients(z, chat) -> list:
    """Descending coefficients of the S-quartic at z."""
    c2 = chat * chat
    return [1, -6 * z, 12 * z * z - c2 + 6, -8 * z**3 + 2 * c2 * z - 24 * z, 2 * (12 * z * z - c2)]


def xi_coefficients(z, chat) -> list:
    """Descending coefficients of the xi-quartic at z."""
    c2 = chat * chat
    return [1, -2 * z, 6 - c2, 2 * c2 * z, -2 * c2]


def s_asymptotics(z, chat) -> list:
    """Leading terms of S_(1)..S_(4) as z -> infinity."""
    return [3 / z, 2 * z + chat, 2 * z, 2 * z - chat]


def xi_asymptotics(z, chat) -> list:
    """Leading terms of xi_1..xi_4 as z -> infinity."""
    return [2 * z - 3 / z, -chat + 1 / z, 1 / z, chat + 1 / z]


@dataclass(frozen=True)
class Curve:
    name: str
    coefficients: object
    asymptotics: object


S_CURVE = Curve("S", s_coefficients, s_asymptotics)
XI_CURVE = Curve("xi", xi_coefficients, xi_asymptotics)


@dataclass(frozen=True)
class BranchValues:
    z: mpc
    values: tuple  # labelled roots, index 0 is branch 1
    curve: str
    chat: mpf

    def __getitem__(self, k):
        return self.values[k]

    def __iter__(self):
        return iter(self.values)


def _horner(coeffs, x):
    val = coeffs[0]
    der = 0
    for a in coeffs[1:]:
        der = der * x + val
        val = val * x + a
    return val, der


def _residual_scale(coeffs, x):
    ax = abs(x)
    return sum(abs(a) * ax ** (len(coeffs) - 1 - i) for i, a in enumerate(coeffs))


def relative_residual(coeffs, x):
    val, _ = _horner(coeffs, x)
    return abs(val) / _residual_scale(coeffs, x)


def _match(roots, guesses):
    """Permutation of ``roots`` closest to ``guesses`` in total distance."""
    best = min(
        itertools.permutations(range(len(roots))),
        key=lambda perm: sum(abs(roots[p] - g) for p, g in zip(perm, guesses)),
    )
    return [roots[p] for p in best]


def _newton_double(coeffs, x):
    """Newton in complex doubles; success means the relative residual fell below the spike level."""
    res = relative_residual(coeffs, x)
    for _ in range(NEWTON_ITERS):
        val, der = _horner(coeffs, x)
        if der == 0:
            break
        x -= val / der
        new_res = relative_residual(coeffs, x)
        if new_res <= 1e-14 or new_res >= res:
            res = min(res, new_res)
            break
        res = new_res
    return x, res < RESIDUAL_SPIKE


def _corrector(curve: Curve, z: complex, chat: float, predicted):
    coeffs = curve.coefficients(z, chat)
    out = []
    for p in predicted:
        x, ok = _newton_double(coeffs, p)
        if not ok:
            return None
        out.append(x)
    # every corrected root must stay clearly closest to its own predictor
    for i, x in enumerate(out):
        gap = min(abs(predicted[i] - predicted[k]) for k in range(len(out)) if k != i)
        if abs(x - predicted[i]) > 0.3 * gap:
            return None
    return out


def _track_upper(curve: Curve, target: complex, chat: float, start_offset: float = 0.0):
    radius = 10.0 * (1.0 + chat)
    start = complex(target.real + start_offset, max(radius, abs(target) + radius))
    roots = list(np.roots(curve.coefficients(start, chat)))
    roots = _match([complex(r) for r in roots], curve.asymptotics(start, chat))
    roots = _corrector(curve, start, chat, roots)
    if roots is None:
        raise TrackingFailure("could not seed the branches at the reference point")
    t, h = 0.0, INITIAL_STEP
    prev = None
    while t < 1.0:
        t_new = min(1.0, t + h)
        z_new = start + t_new * (target - start)
        if prev is None:
            predicted = roots
        else:
            t_prev, r_prev = prev
            ratio = (t_new - t) / (t - t_prev)
            predicted = [r + ratio * (r - q) for r, q in zip(roots, r_prev)]
        corrected = _corrector(curve, z_new, chat, predicted)
        if corrected is None:
            h /= 2
            if h < MIN_STEP:
                raise TrackingFailure(f"step size underflow near z = {z_new}")
            continue
        prev = (t, roots)
        t, roots = t_new, corrected
        h = min(MAX_STEP, 1.5 * h)
    return roots


def _polish(coeffs, x):
    tol = mpf(10) ** (-(mp.dps - 5))
    for _ in range(60):
        val, der = _horner(coeffs, x)
        if der == 0:
            break
        dx = val / der
        x -= dx
        if abs(dx) <= tol * (1 + abs(x)):
            break
    return x


def track_branches(curve: Curve, z, chat) -> BranchValues:
    """All four labelled branches of ``curve`` at ``z`` (complex), polished to working precision."""
    z = mpmath.mpmathify(z)
    z = mpc(z)
    chat = wide(chat)
    flip = z.imag < 0
    zt = mpmath.conj(z) if flip else z
    target = complex(zt)
    if zt.imag == 0 and target.imag == 0:
        target = complex(target.real, 0.0)
    chat_f = float(chat)
    approx = None
    last_error = None
    for offset in (0.0, 0.5 * (1 + chat_f), -0.5 * (1 + chat_f), 2.0 * (1 + chat_f)):
        try:
            approx = _track_upper(curve, target, chat_f, offset)
            break
        except TrackingFailure as exc:
            last_error = exc
    if approx is None:
        raise TrackingFailure(f"{curve.name}-branch tracking failed at z = {z}: {last_error}")
    with mp.workdps(mp.dps + GUARD_DIGITS):
        coeffs = curve.coefficients(zt, chat)
        polished = [_polish(coeffs, mpc(a)) for a in approx]
        for i, (a, p) in enumerate(zip(approx, polished)):
            others = min(abs(a - approx[k]) for k in range(4) if k != i)
            if abs(complex(p) - a) > 0.3 * others:
                raise TrackingFailure(f"polishing moved branch {i + 1} onto another sheet")
    values = [mpmath.conj(v) if flip else v for v in polished]
    return BranchValues(z, tuple(+v for v in values), curve.name, chat)


def solve_S_branches(z, chat) -> BranchValues:
    """S_(1)..S_(4) at z; S_(1) ~ 3/z is the Stieltjes transform of the zero distribution."""
    return track_branches(S_CURVE, z, chat)


def solve_xi_branches(z, chat) -> BranchValues:
    """xi_1..xi_4 at z, labelled by 2z - 3/z, -c + 1/z, 1/z, c + 1/z at infinity."""
    return track_branches(XI_CURVE, z, chat)


def s_from_xi(xi, chat):
    return 2 / xi + 2 / (xi + chat) + 2 / (xi - chat)


def s_xi_identity_residual(z, chat) -> mpf:
    """|S_(1)(z) - (2/xi_1 + 2/(xi_1 + c) + 2/(xi_1 - c))| with independently tracked branches."""
    chat = wide(chat)
    s1 = solve_S_branches(z, chat)[0]
    xi1 = solve_xi_branches(z, chat)[0]
    return abs(s1 - s_from_xi(xi1, chat))


def branch_residuals(bv: BranchValues) -> list:
    curve = S_CURVE if bv.curve == "S" else XI_CURVE
    with mp.workdps(mp.dps + GUARD_DIGITS):
        coeffs = curve.coefficients(bv.z, bv.chat)
        return [relative_residual(coeffs, v) for v in bv.values]

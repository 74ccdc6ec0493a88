"""Simultaneous Gaussian quadrature at the zeros of H_{n,...,n}.

Weights are interpolatory: lambda_k^(j) = int l_k(x) w_j(x) dx with the
Lagrange basis l_k = H / ((x - x_k) H'(x_k)) obtained by synthetic division
and integrated exactly against Gaussian moments.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import mpmath
from mpmath import mp, mpf

from .mhermite import MultiIndex, WeightSystem, build_by_recurrence
from .numerics import (
    GUARD_DIGITS,
    MonicPoly,
    deflate_at,
    gaussian_moments,
    moment_functional,
    normal_moments,
    poly_eval,
    poly_eval_with_derivative,
    poly_mul,
)
from .zeros import LocalizationIntervals, ZeroSet, multiple_hermite_zeros, zero_interval_counts


@dataclass(frozen=True)
class QuadratureRule:
    nodes: ZeroSet
    weights: tuple  # weights[j][k], j over weights, k over nodes
    normalized: bool
    n: int
    w: WeightSystem
    poly: MonicPoly

    @property
    def size(self) -> int:
        return len(self.nodes)

    @property
    def r(self) -> int:
        return len(self.weights)

    def column(self, j: int) -> tuple:
        """Weights of the j-th integral (1-based)."""
        return self.weights[j - 1]


@dataclass(frozen=True)
class FactoredNodes:
    """H = p q r with the zeros of each factor in one localization interval."""

    p: MonicPoly
    q: MonicPoly
    r: MonicPoly
    groups: tuple = ()  # roots of p, q, r

    def __iter__(self):
        return iter((self.p, self.q, self.r))


def interpolatory_weights(poly: MonicPoly, nodes: Sequence, moments: Sequence) -> list:
    """Weights int l_k dmu for the Lagrange basis at the zeros of ``poly``."""
    out = []
    for x in nodes:
        quotient, _ = deflate_at(poly, x)
        coeffs = quotient.coeffs if isinstance(quotient, MonicPoly) else quotient
        _, dp = poly_eval_with_derivative(poly, x)
        out.append(moment_functional(coeffs, moments) / dp)
    return out


def weight_moments(w: WeightSystem, count: int, normalized: bool) -> list:
    return [gaussian_moments(cj, count, normalized).m for cj in w.c]


def build_rule(n: int, w: WeightSystem, normalized: bool = True) -> QuadratureRule:
    """Simultaneous rule at the r*n zeros of H_{n,...,n}, exact to degree (r+1)n - 1."""
    if n < 1:
        raise ValueError("n must be >= 1")
    index = MultiIndex.diagonal(n, w.r)
    poly = build_by_recurrence(index, w)
    nodes = multiple_hermite_zeros(index, w, poly)
    with mp.workdps(mp.dps + GUARD_DIGITS):
        weights = tuple(
            tuple(interpolatory_weights(poly, nodes.zeros, mom))
            for mom in weight_moments(w, poly.degree, normalized)
        )
    return QuadratureRule(nodes, weights, normalized, n, w, poly)


def apply_rule(rule: QuadratureRule, j: int, fvals: Sequence):
    """sum_k lambda_k^(j) f(x_k) for the j-th weight (1-based)."""
    if len(fvals) != rule.size:
        raise ValueError(f"expected {rule.size} function values, got {len(fvals)}")
    return mpmath.fsum(lam * f for lam, f in zip(rule.column(j), fvals))


def exactness_report(rule: QuadratureRule, up_to: int) -> list:
    """errors[d][j-1] = |Q_j(x^d) - mu_d^(j)| / max(1, |mu_d^(j)|) for d = 0..up_to."""
    if up_to > 2 * rule.size + 2 * rule.n:
        raise ValueError("up_to is limited to 8n for the diagonal triple")
    with mp.workdps(mp.dps + GUARD_DIGITS):
        moments = weight_moments(rule.w, up_to + 1, rule.normalized)
        errors = []
        for d in range(up_to + 1):
            fvals = [x**d for x in rule.nodes]
            row = []
            for j, mom in enumerate(moments, start=1):
                exact = mom[d]
                row.append(abs(apply_rule(rule, j, fvals) - exact) / max(1, abs(exact)))
            errors.append(row)
    return [[+e for e in row] for row in errors]


def factor_by_intervals(rule: QuadratureRule, L: LocalizationIntervals) -> FactoredNodes:
    """Group the nodes by localization interval and rebuild the three monic factors."""
    n = rule.n
    counts = zero_interval_counts(rule.nodes, L)
    if counts != (n, n, n, 0):
        raise ValueError(f"zeros are not localized as (n, n, n, 0): {counts}")
    groups = [[], [], []]
    for z in rule.nodes:
        for i, (a, b) in enumerate(L):
            if a <= z <= b:
                groups[i].append(z)
                break
    with mp.workdps(mp.dps + GUARD_DIGITS):
        p, q, r = (MonicPoly.from_roots(g) for g in groups)
    return FactoredNodes(p, q, r, tuple(tuple(g) for g in groups))


def block_multiplier(f: FactoredNodes, j: int, block: int) -> list:
    """Polynomial m with lambda_k^(j) m(x_k) = interpolatory weight of m w_j at the block's zeros.

    For the block of the j-th factor it is the product of the two other
    factors (a Gauss rule); for another block it is the square of the j-th
    factor times the remaining one.
    """
    factors = [f.p.coeffs, f.q.coeffs, f.r.coeffs]
    own = factors[j - 1]
    if block == j:
        others = [factors[i] for i in range(3) if i != j - 1]
        return poly_mul(others[0], others[1])
    rest = [factors[i] for i in range(3) if i not in (j - 1, block - 1)][0]
    return poly_mul(poly_mul(own, own), rest)


def _vandermonde_weights(nodes: Sequence, moments: Sequence) -> list:
    size = len(nodes)
    A = mpmath.matrix(size, size)
    for m in range(size):
        for k, x in enumerate(nodes):
            A[m, k] = x**m
    b = mpmath.matrix([moments[m] for m in range(size)])
    sol = mpmath.lu_solve(A, b)
    return [sol[k] for k in range(size)]


def gauss_factor_oracle(rule: QuadratureRule, f: FactoredNodes, j: int = 1) -> mpf:
    """Max relative gap between lambda_k^(j) m(x_k) and the small-rule weights of m w_j.

    The reference weights come from a Vandermonde solve against the exact
    moments of m(x) w_j(x) at the zeros of each factor separately.
    """
    n = rule.n
    worst = mpf(0)
    with mp.workdps(mp.dps + GUARD_DIGITS):
        base = gaussian_moments(rule.w.c[j - 1], 5 * n + 1, rule.normalized).m
        for block in (1, 2, 3):
            mult = block_multiplier(f, j, block)
            mom = [moment_functional(mult, base, shift=s) for s in range(n)]
            ref = _vandermonde_weights(f.groups[block - 1], mom)
            for i, k in enumerate(range((block - 1) * n, block * n)):
                lhs = rule.column(j)[k] * poly_eval(mult, rule.nodes[k])
                worst = max(worst, abs(lhs - ref[i]) / abs(ref[i]))
    return +worst


def expected_sign(j: int, k: int, n: int) -> int:
    """Sign of lambda_k^(j) for the symmetric triple in the well-separated regime (k is 1-based)."""
    if j == 1:
        return 1 if k <= n else (-1) ** (k - n + 1)
    if j == 2:
        if n < k <= 2 * n:
            return 1
        return (-1) ** (k - n) if k <= n else (-1) ** (k + 1)
    if j == 3:
        return 1 if k > 2 * n else (-1) ** k
    raise ValueError("sign patterns are stated for j = 1, 2, 3")


def sign_pattern_check(rule: QuadratureRule) -> dict:
    """Per weight index: {'ok': bool, 'first_violation': k or None}."""
    report = {}
    for j in range(1, 4):
        bad = None
        for k, lam in enumerate(rule.column(j), start=1):
            if (lam > 0) - (lam < 0) != expected_sign(j, k, rule.n):
                bad = k
                break
        report[j] = {"ok": bad is None, "first_violation": bad}
    return report


def own_block(j: int, n: int) -> range:
    """1-based node indices of the positive block for weight j."""
    return range((j - 1) * n + 1, j * n + 1)


def decay_profile(rule: QuadratureRule, j: int) -> list:
    """(k, |lambda_k^(j)|^(1/n)) for the nodes outside the j-th positive block."""
    n = rule.n
    own = own_block(j, n)
    return [
        (k, abs(lam) ** (mpf(1) / n))
        for k, lam in enumerate(rule.column(j), start=1)
        if k not in own
    ]


def scaled_rule_weights(rule: QuadratureRule) -> tuple:
    """Normalized weights recomputed in the scaled picture x -> x / sqrt(n).

    Nodes become x_k / sqrt(n) and the weights become normal densities with
    means c_j / (2 sqrt(n)) and variance 1 / (2n); the result must equal the
    normalized weights of ``rule``.
    """
    n = rule.n
    with mp.workdps(mp.dps + GUARD_DIGITS):
        root = mpmath.sqrt(n)
        nodes = [x / root for x in rule.nodes]
        poly = MonicPoly.from_roots(nodes)
        out = []
        for cj in rule.w.c:
            mom = normal_moments(cj / (2 * root), mpf(1) / (2 * n), poly.degree)
            out.append(tuple(interpolatory_weights(poly, nodes, mom)))
    return tuple(tuple(+v for v in col) for col in out)

"""Classical Humbert functions and the two limit checks for Psi1 / Psi2.

q -> 1 (with p = q): termwise, (q^a;q)_n / (1-q)^n -> (a)_n, so the q-series
tend to the classical ones once x and y absorb the right powers of (1-q) and
(1-p).  Three argument scalings are offered:

``printed``    Psi1: (x, y/(1-q));          Psi2: (x, (1-p) y/(1-q))
``symmetric``  both: (x, (1-p) y/(1-q))
``confluent``  Psi1: ((1-q) x, (1-p) y/(1-q));  Psi2: ((1-q) x, (1-p)^2 y/(1-q))

Only the last one matches the termwise power counting for the x-row (the
x^k coefficient carries (1-q)^(-k)); the first two are kept so the checker
can report which scaling actually converges.

b -> infinity: (p^b;p)_l -> 1, so Psi1 tends to Psi2 with Psi1's (c, d)
moved into Psi2's (b, c) slots.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..qcore import DEFAULT_POLICY, DomainError, EvalResult, TruncationPolicy, as_base
from .direct import HumbertParams, power_array, psi1, psi2, psi2_slots_from_psi1, rectangle_sum

__all__ = [
    "SCALINGS",
    "psi1_classical",
    "psi2_classical",
    "scaled_arguments",
    "limit_gap",
    "LimitStudy",
    "classical_limit_study",
    "extrapolated_limit",
    "psi2_b_limit_check",
    "b_for_negligible",
]

SCALINGS = ("printed", "symmetric", "confluent")


def _rising(a: complex, n: int) -> np.ndarray:
    out = np.empty(n, dtype=complex)
    out[0] = 1.0
    np.cumprod(complex(a) + np.arange(n - 1), out=out[1:])
    return out


def _factorials(n: int) -> np.ndarray:
    return _rising(1.0, n)


def _check_classical(x, y) -> tuple[complex, complex]:
    x, y = complex(x), complex(y)
    if abs(x) > 0.5 or abs(y) > 0.5:
        raise DomainError("classical Humbert series are only evaluated for |x|, |y| <= 0.5")
    return x, y


def psi1_classical(a, b, c, d, x, y, policy: TruncationPolicy = DEFAULT_POLICY) -> EvalResult:
    """sum (a)_{k+l} (b)_l / ((c)_l (d)_k k! l!) x^k y^l."""
    x, y = _check_classical(x, y)

    def terms(n: int, m: int) -> np.ndarray:
        diag = _rising(a, n + m - 1)
        row = power_array(x, n) / (_rising(d, n) * _factorials(n))
        col = _rising(b, m) * power_array(y, m) / (_rising(c, m) * _factorials(m))
        return diag[np.add.outer(np.arange(n), np.arange(m))] * row[:, None] * col[None, :]

    return rectangle_sum(terms, max(abs(x), abs(y)), policy)


def psi2_classical(a, b, c, x, y, policy: TruncationPolicy = DEFAULT_POLICY) -> EvalResult:
    """sum (a)_{k+l} / ((b)_l (c)_k k! l!) x^k y^l."""
    x, y = _check_classical(x, y)

    def terms(n: int, m: int) -> np.ndarray:
        diag = _rising(a, n + m - 1)
        row = power_array(x, n) / (_rising(c, n) * _factorials(n))
        col = power_array(y, m) / (_rising(b, m) * _factorials(m))
        return diag[np.add.outer(np.arange(n), np.arange(m))] * row[:, None] * col[None, :]

    return rectangle_sum(terms, max(abs(x), abs(y)), policy)


def scaled_arguments(which: str, scaling: str, q: float, p: float, x, y) -> tuple[complex, complex]:
    """Arguments fed to the q-function so that it approaches the classical one."""
    x, y = complex(x), complex(y)
    if scaling == "printed":
        return (x, y / (1 - q)) if which == "psi1" else (x, (1 - p) * y / (1 - q))
    if scaling == "symmetric":
        return x, (1 - p) * y / (1 - q)
    if scaling == "confluent":
        power = 1 if which == "psi1" else 2
        return (1 - q) * x, (1 - p) ** power * y / (1 - q)
    raise ValueError(f"unknown scaling {scaling!r}; expected one of {SCALINGS}")


def _q_value(which, a, b, c, d, q, x, y, scaling, policy) -> EvalResult:
    xs, ys = scaled_arguments(which, scaling, q, q, x, y)
    params = HumbertParams(a, b, c, d, q, q)
    if which == "psi1":
        return psi1(params, xs, ys, policy)
    return psi2(params, xs, ys, policy)


def _classical(which, a, b, c, d, x, y, policy) -> EvalResult:
    if which == "psi1":
        return psi1_classical(a, b, c, d, x, y, policy)
    return psi2_classical(a, b, c, x, y, policy)


def limit_gap(which: str, a, b, c, d, x, y, q: float, scaling: str, policy: TruncationPolicy = DEFAULT_POLICY) -> float:
    """|Psi_q(scaled args) - Psi_classical| at p = q; inf when the q-side is out of its domain."""
    classical = _classical(which, a, b, c, d, x, y, policy).value
    try:
        value = _q_value(which, a, b, c, d, q, x, y, scaling, policy)
    except DomainError:
        return math.inf
    if not value.converged:
        return math.inf
    return abs(value.value - classical)


@dataclass(frozen=True)
class LimitStudy:
    which: str
    scaling: str
    qs: tuple
    gaps: tuple
    ratios: tuple          # gap[i] / gap[i+1]
    converges: bool        # every ratio >= min_ratio

    def as_dict(self) -> dict:
        return {
            "which": self.which,
            "scaling": self.scaling,
            "qs": list(self.qs),
            "gaps": list(self.gaps),
            "ratios": list(self.ratios),
            "converges": self.converges,
        }


def classical_limit_study(
    which: str,
    a, b, c, d, x, y,
    scaling: str,
    qs=(0.9, 0.99, 0.999),
    min_ratio: float = 5.0,
    policy: TruncationPolicy = DEFAULT_POLICY,
) -> LimitStudy:
    """Gap sequence along q = p -> 1 and whether it shrinks by ``min_ratio`` per step."""
    gaps = tuple(limit_gap(which, a, b, c, d, x, y, q, scaling, policy) for q in qs)
    ratios = []
    for g0, g1 in zip(gaps, gaps[1:]):
        if math.isfinite(g0) and math.isfinite(g1) and g1 > 0:
            ratios.append(g0 / g1)
        elif math.isfinite(g0) and g1 == 0:
            ratios.append(math.inf)
        else:
            ratios.append(0.0)
    converges = all(r >= min_ratio for r in ratios)
    return LimitStudy(which, scaling, tuple(qs), gaps, tuple(ratios), converges)


def extrapolated_limit(
    which: str,
    a, b, c, d, x, y,
    scaling: str = "confluent",
    hs=(0.02, 0.01, 0.005, 0.0025, 0.00125),
    policy: TruncationPolicy = DEFAULT_POLICY,
) -> EvalResult:
    """Neville extrapolation to h = 0 of Psi_q at q = p = 1 - h.

    The q-function is smooth in h near 0 for the confluent scaling, so a
    polynomial extrapolation through a handful of h values recovers the
    classical value to roughly 1e-9.
    """
    hs = [float(h) for h in hs]
    vals = []
    ok = True
    for h in hs:
        r = _q_value(which, a, b, c, d, 1 - h, x, y, scaling, policy)
        ok = ok and r.converged
        vals.append(r.value)
    table = list(vals)
    n = len(hs)
    prev_best = table[0]
    for level in range(1, n):
        prev_best = table[n - level]
        for i in range(n - level):
            j = i + level
            table[i] = (hs[j] * table[i] - hs[i] * table[i + 1]) / (hs[j] - hs[i])
    value = table[0]
    return EvalResult(value, abs(value - prev_best), n, ok)


def b_for_negligible(p, floor: float = 1e-14, minimum: float = 80.0) -> float:
    """Smallest b >= minimum (rounded up to an integer) with |p^b| < floor."""
    ap = abs(as_base(p).value)
    return max(minimum, float(math.ceil(math.log(floor) / math.log(ap))))


def psi2_b_limit_check(params: HumbertParams, x, y, policy: TruncationPolicy = DEFAULT_POLICY) -> float:
    """Relative residual between Psi1 at the given (large) b and its b -> inf limit.

    The limit is Psi2 with Psi1's (c, d) moved into Psi2's (b, c) slots.
    """
    lhs = psi1(params, x, y, policy).value
    rhs = psi2(psi2_slots_from_psi1(params), x, y, policy).value
    return abs(lhs - rhs) / (abs(lhs) + abs(rhs) + 1e-30)

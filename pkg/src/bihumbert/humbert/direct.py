"""Direct double-series evaluation of the bibasic Humbert functions.

Psi1(q^a, p^b; p^c, q^d; q, p, x, y)
    = sum_{k,l} (q^a;q)_{k+l} (p^b;p)_l / ((p^c;p)_l (q^d;q)_k (q;q)_k (p;p)_l) x^k y^l

Psi2(q^a; p^b, q^c; q, p, x, y)
    = sum_{k,l} (q^a;q)_{k+l} / ((p^b;p)_l (q^c;q)_k (q;q)_k (p;p)_l) x^k y^l

Both are summed over a growing rectangle k < N, l < M.  Pochhammer arrays are
built by cumulative products (one factor per index step) and the term matrix
is the outer product of a row factor, a column factor and the Hankel array
(q^a;q)_{k+l}.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Callable

import numpy as np

from ..qcore import (
    DEFAULT_POLICY,
    POLE_THRESHOLD,
    Base,
    BaseLike,
    DomainError,
    EvalResult,
    PoleError,
    TruncationPolicy,
    as_base,
    qpow,
)

__all__ = [
    "HumbertParams",
    "psi2_slots_from_psi1",
    "psi1",
    "psi2",
    "psi1_values",
    "psi2_values",
    "rectangle_sum",
    "poch_array",
    "ZERO",
]

# Sentinel exponent whose evaluated parameter value is exactly zero, as in
# Psi2(q^a; 0, q^d; ...).
ZERO = float("inf")


@dataclass(frozen=True)
class HumbertParams:
    """Exponents a, b, c, d and the two bases.

    Psi2 reads only a, b, c (its slots q^a; p^b, q^c).  An exponent equal to
    :data:`ZERO` (``+inf``) evaluates to a zero parameter value.
    """

    a: complex
    b: complex
    c: complex
    d: complex = 0.0
    q: Base = Base(0.5)
    p: Base = Base(0.5)

    def __post_init__(self):
        object.__setattr__(self, "q", as_base(self.q))
        object.__setattr__(self, "p", as_base(self.p))

    def qv(self, e) -> complex:
        return _power(self.q, e)

    def pv(self, e) -> complex:
        return _power(self.p, e)

    def psi1_values(self) -> tuple:
        return self.qv(self.a), self.pv(self.b), self.pv(self.c), self.qv(self.d)

    def psi2_values(self) -> tuple:
        return self.qv(self.a), self.pv(self.b), self.qv(self.c)

    def shifted(self, **deltas) -> "HumbertParams":
        """Copy with exponents shifted, e.g. ``shifted(a=1, d=-1)``."""
        return replace(self, **{k: getattr(self, k) + v for k, v in deltas.items()})

    def with_(self, **values) -> "HumbertParams":
        return replace(self, **values)

    def as_dict(self) -> dict:
        return {k: getattr(self, k) for k in ("a", "b", "c", "d")} | {
            "q": self.q.value,
            "p": self.p.value,
        }


def _power(base: Base, e) -> complex:
    if isinstance(e, float) and e == ZERO:
        return 0j
    return qpow(base, e)


def psi2_slots_from_psi1(params: HumbertParams) -> HumbertParams:
    """Psi1's (a; c, d) slots become Psi2's (a; b, c) when Psi1's b-slot is dropped."""
    return HumbertParams(a=params.a, b=params.c, c=params.d, d=0.0, q=params.q, p=params.p)


def poch_array(z: complex, q: complex, n: int, *, denominator: bool = False) -> np.ndarray:
    """[(z;q)_0, ..., (z;q)_{n-1}]; with ``denominator`` set, poles raise."""
    factors = 1 - z * q ** np.arange(n - 1, dtype=float)
    if denominator and factors.size and np.min(np.abs(factors)) < POLE_THRESHOLD:
        j = int(np.argmin(np.abs(factors)))
        raise PoleError(f"denominator (z;q)_n vanishes: 1 - z q^{j} = 0 for z={z!r}")
    out = np.empty(n, dtype=complex)
    out[0] = 1.0
    np.cumprod(factors, out=out[1:])
    return out


def power_array(x: complex, n: int) -> np.ndarray:
    out = np.empty(n, dtype=complex)
    out[0] = 1.0
    np.cumprod(np.full(n - 1, complex(x)), out=out[1:])
    return out


def rectangle_sum(
    term_matrix: Callable[[int, int], np.ndarray],
    decay: float,
    policy: TruncationPolicy = DEFAULT_POLICY,
) -> EvalResult:
    """Sum a double series from its ``N x M`` term matrices.

    The rectangle grows in whichever direction still has a large border: the
    last ``small_run`` rows and the last ``small_run`` columns must each have
    absolute mass below ``rel_tol * |S| + abs_tol``.  ``decay`` is the
    geometric ratio used for the tail bound (usually max(|x|, |y|)).
    """
    run = policy.small_run
    start = max(8, run + 2)
    n = m = min(start, policy.max_terms)
    while True:
        with np.errstate(all="ignore"):
            terms = term_matrix(n, m)
        if not np.all(np.isfinite(terms)):
            return EvalResult(complex("nan"), float("inf"), n * m, False)
        total = complex(terms.sum())
        thr = policy.threshold(total)
        mag = np.abs(terms)
        row_mass = mag[-run:, :].sum(axis=1)
        col_mass = mag[:, -run:].sum(axis=0)
        rows_ok = bool(np.all(row_mass <= thr)) or n < run
        cols_ok = bool(np.all(col_mass <= thr)) or m < run
        border = float(row_mass[-1] + col_mass[-1])
        err = border / (1 - min(decay, 0.999999))
        if rows_ok and cols_ok:
            return EvalResult(total, err, n * m, True)
        grow_n = not rows_ok and n < policy.max_terms
        grow_m = not cols_ok and m < policy.max_terms
        if not (grow_n or grow_m):
            return EvalResult(total, err, n * m, False)
        if grow_n:
            n = min(policy.max_terms, n + max(8, n // 2))
        if grow_m:
            m = min(policy.max_terms, m + max(8, m // 2))


def _check_args(x: complex, y: complex) -> None:
    if not (abs(x) < 1 and abs(y) < 1):
        raise DomainError(f"Humbert series need |x|, |y| < 1; got |x|={abs(x):.6g}, |y|={abs(y):.6g}")


def psi1_values(A, B, C, D, q: BaseLike, p: BaseLike, x, y, policy: TruncationPolicy = DEFAULT_POLICY) -> EvalResult:
    """Psi1 from evaluated parameters A=q^a, B=p^b, C=p^c, D=q^d."""
    qv, pv = as_base(q).value, as_base(p).value
    A, B, C, D, x, y = (complex(v) for v in (A, B, C, D, x, y))
    _check_args(x, y)

    def terms(n: int, m: int) -> np.ndarray:
        diag = poch_array(A, qv, n + m - 1)
        row = power_array(x, n) / (poch_array(D, qv, n, denominator=True) * poch_array(qv, qv, n))
        col = poch_array(B, pv, m) * power_array(y, m) / (poch_array(C, pv, m, denominator=True) * poch_array(pv, pv, m))
        return _hankel(diag, n, m) * row[:, None] * col[None, :]

    return rectangle_sum(terms, max(abs(x), abs(y)), policy)


def psi2_values(A, B, C, q: BaseLike, p: BaseLike, x, y, policy: TruncationPolicy = DEFAULT_POLICY) -> EvalResult:
    """Psi2 from evaluated parameters A=q^a, B=p^b, C=q^c."""
    qv, pv = as_base(q).value, as_base(p).value
    A, B, C, x, y = (complex(v) for v in (A, B, C, x, y))
    _check_args(x, y)

    def terms(n: int, m: int) -> np.ndarray:
        diag = poch_array(A, qv, n + m - 1)
        row = power_array(x, n) / (poch_array(C, qv, n, denominator=True) * poch_array(qv, qv, n))
        col = power_array(y, m) / (poch_array(B, pv, m, denominator=True) * poch_array(pv, pv, m))
        return _hankel(diag, n, m) * row[:, None] * col[None, :]

    return rectangle_sum(terms, max(abs(x), abs(y)), policy)


def _hankel(diag: np.ndarray, n: int, m: int) -> np.ndarray:
    return diag[np.add.outer(np.arange(n), np.arange(m))]


def psi1(params: HumbertParams, x, y, policy: TruncationPolicy = DEFAULT_POLICY) -> EvalResult:
    return psi1_values(*params.psi1_values(), params.q, params.p, x, y, policy)


def psi2(params: HumbertParams, x, y, policy: TruncationPolicy = DEFAULT_POLICY) -> EvalResult:
    return psi2_values(*params.psi2_values(), params.q, params.p, x, y, policy)

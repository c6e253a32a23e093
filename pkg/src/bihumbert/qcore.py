"""Complex q-calculus primitives: q-integers, q-shifted factorials, q-Gamma, E_q.

Everything here works in double-precision complex arithmetic.  Functions that
take a base accept either a :class:`Base` or a bare number; bare numbers are
validated on the way in.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from typing import Union

__all__ = [
    "Base",
    "TruncationPolicy",
    "EvalResult",
    "DomainError",
    "PoleError",
    "BaseLike",
    "as_base",
    "qpow",
    "q_integer",
    "q_pochhammer",
    "q_pochhammer_inf",
    "q_factorial",
    "q_gamma",
    "q_exp_E",
    "POLE_THRESHOLD",
    "DEFAULT_POLICY",
    "sum_series",
]

POLE_THRESHOLD = 1e-13


class DomainError(ValueError):
    """An argument lies outside the region where a series or operator is defined."""


class PoleError(ZeroDivisionError):
    """A denominator q-shifted factorial (or a q-Gamma pole) vanishes."""


@dataclass(frozen=True)
class Base:
    """A q-calculus base inside the punctured unit disc."""

    value: complex

    def __post_init__(self):
        v = complex(self.value)
        if not (0.0 < abs(v) < 1.0):
            raise DomainError(f"base must satisfy 0 < |q| < 1, got {self.value!r}")
        object.__setattr__(self, "value", v)

    def __complex__(self):
        return self.value

    @property
    def is_real(self) -> bool:
        return self.value.imag == 0.0


BaseLike = Union[Base, complex, float]


def as_base(q: BaseLike) -> Base:
    return q if isinstance(q, Base) else Base(q)


def _bv(q: BaseLike) -> complex:
    return as_base(q).value


@dataclass(frozen=True)
class TruncationPolicy:
    """Stopping rule shared by every infinite sum and product.

    A series stops once ``small_run`` consecutive terms (or border blocks, for
    double series) fall below ``rel_tol * |partial sum| + abs_tol``.
    ``max_terms`` caps each summation index separately.
    """

    rel_tol: float = 1e-12
    abs_tol: float = 1e-300
    max_terms: int = 10_000
    small_run: int = 3

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise ValueError("rel_tol must be positive")
        if self.abs_tol < 0:
            raise ValueError("abs_tol must be non-negative")
        if self.max_terms < 1:
            raise ValueError("max_terms must be >= 1")
        if self.small_run < 1:
            raise ValueError("small_run must be >= 1")

    def threshold(self, total: complex) -> float:
        return self.rel_tol * abs(total) + self.abs_tol

    def as_dict(self) -> dict:
        return {
            "rel_tol": self.rel_tol,
            "abs_tol": self.abs_tol,
            "max_terms": self.max_terms,
            "small_run": self.small_run,
        }


DEFAULT_POLICY = TruncationPolicy()


@dataclass(frozen=True)
class EvalResult:
    value: complex
    err_estimate: float
    terms_used: int
    converged: bool

    def __complex__(self):
        return complex(self.value)


def qpow(q: BaseLike, a) -> complex:
    """Principal-branch power ``q**a``; the one place the branch is chosen."""
    qv = _bv(q)
    if a == 0:
        return 1.0 + 0j
    return cmath.exp(complex(a) * cmath.log(qv))


def q_integer(chi: int, q: BaseLike) -> complex:
    """[chi]_q = (1 - q**chi) / (1 - q)."""
    qv = _bv(q)
    return (1 - qv**chi) / (1 - qv)


def q_pochhammer(z: complex, q: BaseLike, k: int) -> complex:
    """Finite product (z; q)_k = prod_{r<k} (1 - z q^r)."""
    if k < 0:
        raise ValueError("k must be non-negative")
    qv = _bv(q)
    out = 1.0 + 0j
    zr = complex(z)
    for _ in range(k):
        out *= 1 - zr
        zr *= qv
    return out


def q_pochhammer_inf(z: complex, q: BaseLike, policy: TruncationPolicy = DEFAULT_POLICY) -> EvalResult:
    """Infinite product (z; q)_inf.

    Stops after ``small_run`` consecutive factors with ``|z q^r| < rel_tol``;
    the error estimate is the geometric tail bound ``|value| |z q^r| / (1 - |q|)``.
    """
    qv = _bv(q)
    zr = complex(z)
    value = 1.0 + 0j
    run = 0
    n = 0
    while n < policy.max_terms:
        value *= 1 - zr
        n += 1
        small = abs(zr) < policy.rel_tol
        zr *= qv
        run = run + 1 if small else 0
        if run >= policy.small_run or zr == 0:
            err = abs(value) * abs(zr) / (1 - abs(qv))
            return EvalResult(value, err, n, True)
    return EvalResult(value, abs(value) * abs(zr) / (1 - abs(qv)), n, False)


def q_factorial(r: int, q: BaseLike) -> complex:
    """[r]_q! = [1]_q [2]_q ... [r]_q."""
    out = 1.0 + 0j
    for j in range(1, r + 1):
        out *= q_integer(j, q)
    return out


def q_gamma(b, p: BaseLike, policy: TruncationPolicy = DEFAULT_POLICY) -> EvalResult:
    """q-Gamma via the product formula (p;p)_inf / (p^b;p)_inf * (1-p)^(1-b).

    Raises :class:`PoleError` when p^(b+j) = 1 for some j >= 0 within the
    truncation horizon.
    """
    pv = _bv(p)
    pb = qpow(pv, b)
    # scan the ladder p^b, p^(b+1), ... for the poles
    z = pb
    for _ in range(policy.max_terms):
        if abs(1 - z) < POLE_THRESHOLD:
            raise PoleError(f"q-Gamma pole at b={b!r}, p={p!r}")
        if abs(z) < policy.rel_tol:
            break
        z *= pv
    num = q_pochhammer_inf(pv, pv, policy)
    den = q_pochhammer_inf(pb, pv, policy)
    prefactor = cmath.exp((1 - complex(b)) * cmath.log(1 - pv))
    value = num.value / den.value * prefactor
    rel = num.err_estimate / max(abs(num.value), 1e-300) + den.err_estimate / max(abs(den.value), 1e-300)
    return EvalResult(
        value,
        abs(value) * rel,
        num.terms_used + den.terms_used,
        num.converged and den.converged,
    )


def q_exp_E(t: complex, p: BaseLike, policy: TruncationPolicy = DEFAULT_POLICY) -> EvalResult:
    """E_p(t) = sum_r p^(r(r-1)/2) t^r / [r]_p!  (entire in t)."""
    pv = _bv(p)
    t = complex(t)
    term = 1.0 + 0j
    total = term
    run = 0
    for r in range(1, policy.max_terms + 1):
        # ratio term_r / term_{r-1} = p^(r-1) t / [r]_p
        term *= pv ** (r - 1) * t / q_integer(r, pv)
        total += term
        run = run + 1 if abs(term) <= policy.threshold(total) else 0
        if run >= policy.small_run:
            return EvalResult(total, abs(term), r + 1, True)
    return EvalResult(total, abs(term), policy.max_terms + 1, False)


def sum_series(term_at, policy: TruncationPolicy = DEFAULT_POLICY, start: int = 0) -> EvalResult:
    """Sum ``term_at(n)`` for n = start, start+1, ... under ``policy``.

    ``term_at`` is called once per index, in order, so it may keep state.
    """
    total = 0j
    run = 0
    last = 0.0
    for i in range(policy.max_terms):
        term = complex(term_at(start + i))
        total += term
        last = abs(term)
        run = run + 1 if last <= policy.threshold(total) else 0
        if run >= policy.small_run:
            return EvalResult(total, last, i + 1, True)
    return EvalResult(total, last, policy.max_terms, False)

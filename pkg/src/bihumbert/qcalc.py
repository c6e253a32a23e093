"""Jackson q-difference operators and q-integrals.

Every "derivative" here is the exact difference quotient, never an h -> 0
approximation, so identity residuals built on these operators measure only
series truncation and rounding.

A ScalarFunction is any deterministic, side-effect free callable
``complex -> complex``; sweeps may evaluate it from several workers at once.
"""

from __future__ import annotations

from typing import Callable

from .qcore import (
    DEFAULT_POLICY,
    BaseLike,
    DomainError,
    EvalResult,
    TruncationPolicy,
    as_base,
    q_exp_E,
    qpow,
)

__all__ = [
    "ScalarFunction",
    "MAX_ITER_ORDER",
    "qdiff",
    "qdiff_iter",
    "qdiff_iter_expanded",
    "param_qdiff",
    "jackson_integral",
    "qgamma_via_integral",
]

ScalarFunction = Callable[[complex], complex]

MAX_ITER_ORDER = 8


def qdiff(f: ScalarFunction, x: complex, q: BaseLike) -> complex:
    """D_{x,q} f(x) = (f(x) - f(qx)) / ((1-q) x)."""
    qv = as_base(q).value
    x = complex(x)
    if x == 0:
        raise DomainError("q-derivative is undefined at x = 0")
    return (complex(f(x)) - complex(f(qv * x))) / ((1 - qv) * x)


def qdiff_iter(f: ScalarFunction, x: complex, q: BaseLike, r: int) -> complex:
    """r-fold D_{x,q} by literal nesting (r <= 8); r = 0 returns f(x)."""
    if r < 0:
        raise ValueError("order must be non-negative")
    if r > MAX_ITER_ORDER:
        raise ValueError(f"order {r} exceeds the nesting limit {MAX_ITER_ORDER}")
    if complex(x) == 0 and r > 0:
        raise DomainError("q-derivative is undefined at x = 0")
    g = f
    for _ in range(r):
        g = _wrap_qdiff(g, q)
    return complex(g(complex(x)))


def _wrap_qdiff(g: ScalarFunction, q: BaseLike) -> ScalarFunction:
    return lambda z: qdiff(g, z, q)


def qdiff_iter_expanded(f: ScalarFunction, x: complex, q: BaseLike, r: int) -> complex:
    """Closed q-binomial form of D^r:

        D^r f(x) = sum_j (-1)^(r-j) q^(j(j-1)/2) [r choose j]_q f(q^(r-j) x)
                   / ((1-q)^r q^(r(r-1)/2) x^r)

    Kept as an independent cross-check of :func:`qdiff_iter`.
    """
    qv = as_base(q).value
    x = complex(x)
    if r == 0:
        return complex(f(x))
    total = 0j
    binom = 1.0 + 0j  # Gaussian binomial [r choose j]_q
    for j in range(r + 1):
        total += (-1) ** (r - j) * qv ** (j * (j - 1) // 2) * binom * complex(f(qv ** (r - j) * x))
        binom *= (1 - qv ** (r - j)) / (1 - qv ** (j + 1))
    return total / ((1 - qv) ** r * qv ** (r * (r - 1) // 2) * x**r)


def param_qdiff(g: Callable, a: complex, q: BaseLike) -> complex:
    """q-difference of ``g`` through its exponent slot: (g(a) - g(a+1)) / ((1-q) q^a)."""
    qv = as_base(q).value
    return (complex(g(a)) - complex(g(a + 1))) / ((1 - qv) * qpow(qv, a))


def jackson_integral(
    f: ScalarFunction,
    upper: float,
    p: BaseLike,
    policy: TruncationPolicy = DEFAULT_POLICY,
) -> EvalResult:
    """Jackson integral over (0, upper]: upper (1-p) sum_j p^j f(upper p^j).

    Only real p in (0, 1) and real upper > 0 are accepted.
    """
    base = as_base(p)
    if not base.is_real or not 0 < base.value.real < 1:
        raise DomainError("Jackson integrals need a real base in (0, 1)")
    upper = float(upper)
    if not upper > 0:
        raise DomainError("upper limit must be positive")
    pv = base.value.real
    total = 0j
    run = 0
    node = upper
    weight = 1.0
    last = 0.0
    for j in range(policy.max_terms):
        term = weight * complex(f(node))
        total += term
        last = abs(term)
        run = run + 1 if last <= policy.threshold(total) else 0
        if run >= policy.small_run:
            scale = upper * (1 - pv)
            return EvalResult(scale * total, scale * last / (1 - pv), j + 1, True)
        weight *= pv
        node *= pv
    scale = upper * (1 - pv)
    return EvalResult(scale * total, scale * last / (1 - pv), policy.max_terms, False)


def qgamma_via_integral(b: float, p: BaseLike, policy: TruncationPolicy = DEFAULT_POLICY) -> EvalResult:
    """Gamma_p(b) as the Jackson integral of E_p(-p t) t^(b-1) over (0, 1/(1-p)]."""
    base = as_base(p)
    if not base.is_real:
        raise DomainError("integral form of q-Gamma needs a real base")
    b = float(b)
    if not b > 0:
        raise DomainError("integral form of q-Gamma needs b > 0")
    pv = base.value.real

    def integrand(t: complex) -> complex:
        return q_exp_E(-pv * t, pv, policy).value * t.real ** (b - 1)

    return jackson_integral(integrand, 1 / (1 - pv), pv, policy)

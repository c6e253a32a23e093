"""One-variable basic hypergeometric series and the transforms built on them.

All evaluators take *evaluated* parameters (``q**a`` rather than ``a``), so a
literal zero parameter such as the ``0`` in 2phi1(q^a, 0; q^c; q, x) is just
``0``.

Conventions for 1phi1 and 0phi1
-------------------------------
``"standard"`` carries the factor ``[(-1)^k q^(k(k-1)/2)]^(1+s-r)``; for
r phi s with s >= r this is the usual Gasper-Rahman normalisation.
``"plain"`` drops the factor, leaving the bare Pochhammer ratio times x^k.
Which one a given identity needs is decided empirically by the identity
harness.
"""

from __future__ import annotations

import enum

from .qcore import (
    DEFAULT_POLICY,
    POLE_THRESHOLD,
    BaseLike,
    DomainError,
    EvalResult,
    PoleError,
    TruncationPolicy,
    as_base,
    q_pochhammer_inf,
)

__all__ = [
    "PhiKind",
    "CONVENTIONS",
    "phi",
    "phi21",
    "phi11",
    "phi10",
    "phi01",
    "kummer_rhs",
    "heine_rhs",
]

CONVENTIONS = ("standard", "plain")


class PhiKind(enum.Enum):
    Phi21 = (2, 1)
    Phi11 = (1, 1)
    Phi10 = (1, 0)
    Phi01 = (0, 1)

    @property
    def r(self) -> int:
        return self.value[0]

    @property
    def s(self) -> int:
        return self.value[1]


def _check_convention(convention: str) -> None:
    if convention not in CONVENTIONS:
        raise ValueError(f"unknown convention {convention!r}; expected one of {CONVENTIONS}")


def phi(
    kind: PhiKind,
    upper: tuple,
    lower: tuple,
    q: BaseLike,
    x: complex,
    policy: TruncationPolicy = DEFAULT_POLICY,
    convention: str = "standard",
) -> EvalResult:
    """Generic r phi s for the four kinds used here."""
    _check_convention(convention)
    qv = as_base(q).value
    x = complex(x)
    upper = tuple(complex(u) for u in upper)
    lower = tuple(complex(v) for v in lower)
    if len(upper) != kind.r or len(lower) != kind.s:
        raise ValueError(f"{kind.name} takes {kind.r} upper and {kind.s} lower parameters")

    power = 1 + kind.s - kind.r if convention == "standard" else 0
    if power <= 0 and abs(x) >= 1:
        raise DomainError(f"{kind.name} needs |x| < 1 under the {convention} convention, got |x|={abs(x):.6g}")

    term = 1.0 + 0j
    total = term
    run = 0
    qk = 1.0 + 0j  # q^k
    for k in range(policy.max_terms):
        num = 1.0 + 0j
        for u in upper:
            num *= 1 - u * qk
        den = 1 - qk * qv  # (q;q) factor 1 - q^(k+1)
        for v in lower:
            f = 1 - v * qk
            if abs(f) < POLE_THRESHOLD:
                raise PoleError(f"{kind.name}: lower parameter {v!r} hits a pole at k={k}")
            den *= f
        ratio = num / den * x
        if power:
            # [(-1)^k q^(k(k-1)/2)] advances by -q^k per step
            ratio *= (-qk) ** power
        term *= ratio
        total += term
        qk *= qv
        run = run + 1 if abs(term) <= policy.threshold(total) else 0
        if run >= policy.small_run:
            return EvalResult(total, abs(term), k + 2, True)
    return EvalResult(total, abs(term), policy.max_terms + 1, False)


def phi21(a_val, b_val, c_val, q: BaseLike, x, policy: TruncationPolicy = DEFAULT_POLICY) -> EvalResult:
    """2phi1(a, b; c; q, x) for |x| < 1."""
    return phi(PhiKind.Phi21, (a_val, b_val), (c_val,), q, x, policy)


def phi11(a_val, c_val, q: BaseLike, x, policy: TruncationPolicy = DEFAULT_POLICY, convention: str = "standard") -> EvalResult:
    """1phi1(a; c; q, x); entire in x under the standard convention."""
    return phi(PhiKind.Phi11, (a_val,), (c_val,), q, x, policy, convention)


def phi10(a_val, q: BaseLike, x, policy: TruncationPolicy = DEFAULT_POLICY) -> EvalResult:
    """1phi0(a; -; q, x) for |x| < 1."""
    return phi(PhiKind.Phi10, (a_val,), (), q, x, policy)


def phi01(c_val, q: BaseLike, x, policy: TruncationPolicy = DEFAULT_POLICY, convention: str = "standard") -> EvalResult:
    """0phi1(-; c; q, x); carries q^(k(k-1)) per term under the standard convention."""
    return phi(PhiKind.Phi01, (), (c_val,), q, x, policy, convention)


def _inf(z, q, policy) -> complex:
    return q_pochhammer_inf(z, q, policy).value


def kummer_rhs(
    a_val,
    c_val,
    q: BaseLike,
    x,
    form: int = 1,
    policy: TruncationPolicy = DEFAULT_POLICY,
    convention: str = "standard",
) -> EvalResult:
    """Right-hand sides of the two Kummer-type rewritings of 2phi1(a, 0; c; q, x).

    form 1:  1phi1(c/a; c; q, a x) / (x; q)_inf
    form 2:  (a x; q)_inf / ((c; q)_inf (x; q)_inf) * 1phi1(x; a x; q, c)
    """
    a_val, c_val, x = complex(a_val), complex(c_val), complex(x)
    if form == 1:
        inner = phi11(c_val / a_val, c_val, q, a_val * x, policy, convention)
        pre = 1 / _inf(x, q, policy)
    elif form == 2:
        inner = phi11(x, a_val * x, q, c_val, policy, convention)
        pre = _inf(a_val * x, q, policy) / (_inf(c_val, q, policy) * _inf(x, q, policy))
    else:
        raise ValueError("form must be 1 or 2")
    return EvalResult(pre * inner.value, abs(pre) * inner.err_estimate, inner.terms_used, inner.converged)


def heine_rhs(
    c_val,
    q: BaseLike,
    x,
    form: int = 1,
    policy: TruncationPolicy = DEFAULT_POLICY,
    convention: str = "standard",
) -> EvalResult:
    """Right-hand sides of the two Heine-type rewritings of 2phi1(0, 0; c; q, x).

    form 1:  1phi1(x; 0; q, c) / ((c; q)_inf (x; q)_inf)
    form 2:  0phi1(-; c; q, x c) / (x; q)_inf
    """
    c_val, x = complex(c_val), complex(x)
    if form == 1:
        inner = phi11(x, 0, q, c_val, policy, convention)
        pre = 1 / (_inf(c_val, q, policy) * _inf(x, q, policy))
    elif form == 2:
        inner = phi01(c_val, q, x * c_val, policy, convention)
        pre = 1 / _inf(x, q, policy)
    else:
        raise ValueError("form must be 1 or 2")
    return EvalResult(pre * inner.value, abs(pre) * inner.err_estimate, inner.terms_used, inner.converged)

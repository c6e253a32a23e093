"""Double-sum representations of Psi1 and Psi2 on a single base (p = q).

Each representation is a sum over r, s of products of simple coefficients
with a one-variable basic series whose parameters depend on r and s.  The
inner series are tabulated once on a grid, so the double sum reduces to a
bilinear form  alpha^T G beta.
"""

from __future__ import annotations

import enum

import numpy as np

from ..qcore import (
    DEFAULT_POLICY,
    DomainError,
    EvalResult,
    TruncationPolicy,
    q_pochhammer_inf,
    sum_series,
)
from ..qseries import phi10, phi11, phi01, phi21
from .direct import HumbertParams, poch_array, power_array
from .forms import coefficient_sequence

__all__ = ["SameBasePsi1Form", "SameBasePsi2Form", "psi1_same_base", "psi2_same_base"]


class SameBasePsi1Form(enum.Enum):
    Heine2phi1 = "heine-2phi1"      # inner 2phi1(0,0; q^(a+s) y; q, q^r x)
    Heine1phi1 = "heine-1phi1"      # same, rewritten through 1phi1
    Heine0phi1 = "heine-0phi1"      # same, rewritten through 0phi1
    Kummer2phi1 = "kummer-2phi1"    # inner 2phi1(0,0; x q^a; q, q^(r+s) y)
    Kummer1phi1 = "kummer-1phi1"
    Kummer0phi1 = "kummer-0phi1"
    Triple1phi0 = "triple-1phi0"    # three-index form with an inner 1phi0


class SameBasePsi2Form(enum.Enum):
    RowProducts = "row-products"
    ColumnProducts = "column-products"


def _inf(z, q, policy) -> complex:
    return q_pochhammer_inf(z, q, policy).value


def _inf_array(z: np.ndarray, q: complex, policy: TruncationPolicy) -> np.ndarray:
    return np.array([_inf(v, q, policy) for v in z])


def _series_length(x: complex, q: complex, policy: TruncationPolicy) -> int:
    """Terms needed for sum_k x^k / (q;q)_k (the dominant inner shape)."""
    ax = abs(x)
    if ax == 0:
        return 1
    floor = abs(_inf(abs(q), abs(q), policy))
    n = 1
    while ax**n / floor > policy.rel_tol * 1e-2 and n < policy.max_terms:
        n += 1
    return n + policy.small_run


def _require_same_base(params: HumbertParams) -> complex:
    if params.p != params.q:
        raise DomainError("same-base representations need p == q")
    return params.q.value


def _heine(params: HumbertParams, x, y, which: str, policy, convention) -> EvalResult:
    q = _require_same_base(params)
    a, b, c, d = params.a, params.b, params.c, params.d
    A, B = params.qv(a), params.qv(b)
    x, y = complex(x), complex(y)
    alpha, ok_a = coefficient_sequence(params.qv(d - a), A, q, policy)
    # beta_s = (q^(c-b))_s (y)_s q^(bs) / ((q^a y)_s (q)_s); grow until negligible
    beta = [1.0 + 0j]
    term = 1.0 + 0j
    total = term
    run = 0
    zc = params.qv(c - b)
    ok_b = False
    for s in range(policy.max_terms - 1):
        term *= (1 - zc * q**s) * (1 - y * q**s) * B / ((1 - A * y * q**s) * (1 - q ** (s + 1)))
        beta.append(term)
        total += term
        run = run + 1 if abs(term) <= policy.threshold(total) else 0
        if run >= policy.small_run:
            ok_b = True
            break
    beta = np.array(beta)
    R, S = alpha.size, beta.size
    Cs = A * y * q ** np.arange(S, dtype=float)       # q^(a+s) y
    xr = x * q ** np.arange(R, dtype=float)           # q^r x
    K = max(_series_length(x, q, policy), _series_length(A * y, q, policy))
    k = np.arange(K, dtype=float)
    qfac = poch_array(q, q, K)
    if which == "2phi1":
        # G[s, r] = sum_k x^k q^(rk) / ((Cs;q)_k (q;q)_k)
        inv = np.array([1 / (poch_array(cs, q, K) * qfac) for cs in Cs]) * power_array(x, K)[None, :]
        G = inv @ (q ** np.multiply.outer(k, np.arange(R)))
        G = G.T
    elif which == "1phi1":
        # 1phi1(x q^r; 0; q, Cs) / ((Cs)_inf (x q^r)_inf)
        w = 1 / qfac
        if convention == "standard":
            w = w * (-1.0) ** k * q ** (k * (k - 1) / 2)
        Z = np.array([poch_array(v, q, K) for v in xr])
        Cpow = np.array([power_array(cs, K) for cs in Cs]).T
        G = (Z * w[None, :]) @ Cpow
        G = G / _inf_array(xr, q, policy)[:, None] / _inf_array(Cs, q, policy)[None, :]
    else:
        # 0phi1(-; Cs; q, x q^r Cs) / (x q^r)_inf
        w = 1 / qfac
        if convention == "standard":
            w = w * q ** (k * (k - 1))
        rows = np.array([power_array(cs, K) / poch_array(cs, q, K) for cs in Cs]) * (w * power_array(x, K))[None, :]
        G = (rows @ (q ** np.multiply.outer(k, np.arange(R)))).T
        G = G / _inf_array(xr, q, policy)[:, None]
    value = alpha @ G @ beta
    pre = (
        _inf(A, q, policy) * _inf(B, q, policy) * _inf(A * y, q, policy)
        / (_inf(params.qv(c), q, policy) * _inf(params.qv(d), q, policy) * _inf(y, q, policy))
    )
    tail = abs(pre) * (abs(alpha[-1]) * np.abs(G).max() * np.abs(beta).sum() + abs(beta[-1]) * np.abs(G).max() * np.abs(alpha).sum())
    return EvalResult(pre * complex(value), float(tail), R * S * K, ok_a and ok_b)


def _kummer(params: HumbertParams, x, y, which: str, policy, convention) -> EvalResult:
    q = _require_same_base(params)
    a, b, c, d = params.a, params.b, params.c, params.d
    A, B = params.qv(a), params.qv(b)
    x, y = complex(x), complex(y)
    alpha, ok_a = coefficient_sequence(params.qv(d - a), A, q, policy)
    gamma, ok_g = coefficient_sequence(params.qv(c - b), B, q, policy)
    R, S = alpha.size, gamma.size
    n = np.arange(R + S - 1)
    xA = x * A
    flags = []
    if which == "2phi1":
        K = _series_length(y, q, policy)
        k = np.arange(K, dtype=float)
        w = power_array(y, K) / (poch_array(xA, q, K) * poch_array(q, q, K))
        F = (q ** np.multiply.outer(n.astype(float), k)) @ w
    else:
        F = np.empty(n.size, dtype=complex)
        for i, nn in enumerate(n):
            yn = q**nn * y
            if which == "1phi1":
                inner = phi11(yn, 0, q, xA, policy, convention)
                F[i] = inner.value / (_inf(xA, q, policy) * _inf(yn, q, policy))
            else:
                inner = phi01(xA, q, xA * yn, policy, convention)
                F[i] = inner.value / _inf(yn, q, policy)
            flags.append(inner.converged)
    H = F[np.add.outer(np.arange(R), np.arange(S))]
    value = alpha @ H @ gamma
    pre = (
        _inf(A, q, policy) * _inf(B, q, policy) * _inf(xA, q, policy)
        / (_inf(params.qv(c), q, policy) * _inf(params.qv(d), q, policy) * _inf(x, q, policy))
    )
    tail = abs(pre) * np.abs(F).max() * (abs(alpha[-1]) * np.abs(gamma).sum() + abs(gamma[-1]) * np.abs(alpha).sum())
    return EvalResult(pre * complex(value), float(tail), R * S, ok_a and ok_g and all(flags))


def _triple(params: HumbertParams, x, y, policy) -> EvalResult:
    q = _require_same_base(params)
    a, b, c, d = params.a, params.b, params.c, params.d
    A, B = params.qv(a), params.qv(b)
    x, y = complex(x), complex(y)
    alpha, ok_a = coefficient_sequence(params.qv(d - a), A, q, policy)
    gamma, ok_g = coefficient_sequence(params.qv(c - b), B, q, policy)
    asum = complex(alpha.sum())
    flags = []
    state = {"den": 1.0 + 0j}

    def term(l: int) -> complex:
        if l:
            state["den"] *= 1 - q**l
        gsum = complex(np.sum(gamma * q ** (l * np.arange(gamma.size, dtype=float))))
        inner = phi10(A * q**l, q, q**l * x, policy)
        flags.append(inner.converged)
        return asum * gsum * y**l / state["den"] * inner.value

    res = sum_series(term, policy)
    pre = _inf(A, q, policy) * _inf(B, q, policy) / (_inf(params.qv(c), q, policy) * _inf(params.qv(d), q, policy))
    return EvalResult(pre * res.value, abs(pre) * res.err_estimate, res.terms_used, res.converged and ok_a and ok_g and all(flags))


def psi1_same_base(
    form: SameBasePsi1Form,
    params: HumbertParams,
    x,
    y,
    policy: TruncationPolicy = DEFAULT_POLICY,
    convention: str = "standard",
) -> EvalResult:
    """Psi1 at p = q through one of the double-sum representations."""
    form = SameBasePsi1Form(form)
    if form is SameBasePsi1Form.Triple1phi0:
        return _triple(params, x, y, policy)
    family, which = form.value.split("-")
    if family == "heine":
        return _heine(params, x, y, which, policy, convention)
    return _kummer(params, x, y, which, policy, convention)


def psi2_same_base(
    form: SameBasePsi2Form,
    params: HumbertParams,
    x,
    y,
    policy: TruncationPolicy = DEFAULT_POLICY,
) -> EvalResult:
    """Psi2 at p = q as a single sum of infinite-product ratios times 2phi1."""
    q = _require_same_base(params)
    form = SameBasePsi2Form(form)
    A = params.qv(params.a)
    if form is SameBasePsi2Form.RowProducts:
        outer_val, other, var, inner_arg = params.qv(params.b), params.qv(params.c), complex(y), complex(x)
    else:
        outer_val, other, var, inner_arg = params.qv(params.c), params.qv(params.b), complex(x), complex(y)
    flags = []
    state = {"fac": 1.0 + 0j}

    def term(j: int) -> complex:
        if j:
            state["fac"] *= 1 - q**j
        ratio = _inf(outer_val * q**j, q, policy) / _inf(A * q**j, q, policy)
        inner = phi21(A * q**j, 0, other, q, inner_arg, policy)
        flags.append(inner.converged)
        return ratio / state["fac"] * var**j * inner.value

    res = sum_series(term, policy)
    pre = _inf(A, q, policy) / _inf(outer_val, q, policy)
    return EvalResult(pre * res.value, abs(pre) * res.err_estimate, res.terms_used, res.converged and all(flags))

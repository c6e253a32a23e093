"""Alternate representations of Psi1 and Psi2, each evaluated literally.

Nested sums are grouped with numpy: an inner sum over r of c_r q^(rk) is a
matrix-vector product, so a four-index representation costs one rectangle
sweep instead of four nested Python loops.  Every summation index is capped
by ``policy.max_terms`` on its own.
"""

from __future__ import annotations

import enum

import numpy as np

from ..qcore import (
    DEFAULT_POLICY,
    EvalResult,
    TruncationPolicy,
    q_pochhammer_inf,
    sum_series,
)
from ..qseries import phi10, phi11, phi21
from .direct import (
    HumbertParams,
    ZERO,
    poch_array,
    power_array,
    psi1,
    psi2,
    rectangle_sum,
)

__all__ = [
    "Psi1Form",
    "Psi2Form",
    "psi1_as",
    "psi2_as",
    "coefficient_sequence",
    "combine",
]


class Psi1Form(enum.Enum):
    Direct = "direct"
    RowSum = "rowsum"
    Connection = "connection"
    SeriesRepA = "series-a"
    SeriesRepB = "series-b"
    SeriesRepC = "series-c"
    KummerA = "kummer-a"
    KummerB = "kummer-b"


class Psi2Form(enum.Enum):
    Direct = "direct"
    RowSum = "rowsum"
    SeriesRep = "series"
    KummerA = "kummer-a"
    KummerB = "kummer-b"


def _inf(z, q, policy) -> complex:
    return q_pochhammer_inf(z, q, policy).value


def combine(pre: complex, inner: EvalResult, *others: EvalResult) -> EvalResult:
    """Scale ``inner`` by ``pre``, folding in the convergence of helper sums."""
    ok = inner.converged and all(o.converged for o in others)
    return EvalResult(pre * inner.value, abs(pre) * inner.err_estimate, inner.terms_used, ok)


def coefficient_sequence(z: complex, w: complex, q: complex, policy: TruncationPolicy) -> tuple[np.ndarray, bool]:
    """Terms (z;q)_r w^r / (q;q)_r, r = 0, 1, ... until they are negligible.

    The stopping test is the usual small-run rule on the partial sum.  Callers
    multiply these terms by further factors of modulus <= 1, so truncating at
    the unweighted tail is safe.
    """
    out = [1.0 + 0j]
    total = 1.0 + 0j
    term = 1.0 + 0j
    qr = 1.0 + 0j
    run = 0
    for _ in range(policy.max_terms - 1):
        term *= (1 - z * qr) * w / (1 - qr * q)
        qr *= q
        out.append(term)
        total += term
        run = run + 1 if abs(term) <= policy.threshold(total) else 0
        if run >= policy.small_run:
            return np.array(out), True
    return np.array(out), False


def _row_coefficients(params: HumbertParams, with_b: bool):
    """Stateful l-coefficients (q^a;q)_l [(p^b;p)_l] / ((p^c;p)_l (p;p)_l) for Psi1,
    or (q^a;q)_l / ((p^b;p)_l (p;p)_l) for Psi2."""
    qv, pv = params.q.value, params.p.value
    A = params.qv(params.a)
    if with_b:
        num_p, den_p = params.pv(params.b), params.pv(params.c)
    else:
        num_p, den_p = 0j, params.pv(params.b)
    state = {"coef": 1.0 + 0j, "l": 0}

    def coef(l: int) -> complex:
        # called with l = 0, 1, 2, ... in order
        while state["l"] < l:
            j = state["l"]
            state["coef"] *= (1 - A * qv**j) * (1 - num_p * pv**j) / ((1 - den_p * pv**j) * (1 - pv ** (j + 1)))
            state["l"] += 1
        return state["coef"]

    return coef


def _row_sum(params: HumbertParams, x, y, lower_exp, with_b: bool, policy) -> EvalResult:
    qv = params.q.value
    A = params.qv(params.a)
    low = params.qv(lower_exp)
    coef = _row_coefficients(params, with_b)
    flags = []

    def term(l: int) -> complex:
        inner = phi21(A * qv**l, 0, low, qv, x, policy)
        flags.append(inner.converged)
        return coef(l) * complex(y) ** l * inner.value

    res = sum_series(term, policy)
    return EvalResult(res.value, res.err_estimate, res.terms_used, res.converged and all(flags))


def _kummer(params: HumbertParams, x, y, lower_exp, with_b: bool, variant: str, policy, convention) -> EvalResult:
    qv = params.q.value
    A = params.qv(params.a)
    low = params.qv(lower_exp)
    x, y = complex(x), complex(y)
    coef = _row_coefficients(params, with_b)
    flags = []

    if variant == "A":
        def term(l: int) -> complex:
            Al = A * qv**l
            inner = phi11(low / Al, low, qv, x * Al, policy, convention)
            flags.append(inner.converged)
            return coef(l) * y**l * inner.value

        pre = 1 / _inf(x, qv, policy)
    else:
        def term(l: int) -> complex:
            xAl = x * A * qv**l
            inner = phi11(x, xAl, qv, low, policy, convention)
            flags.append(inner.converged)
            return coef(l) * _inf(xAl, qv, policy) * y**l * inner.value

        pre = 1 / (_inf(low, qv, policy) * _inf(x, qv, policy))
    res = sum_series(term, policy)
    return EvalResult(pre * res.value, abs(pre) * res.err_estimate, res.terms_used, res.converged and all(flags))


def _connection(params: HumbertParams, x, y, policy) -> EvalResult:
    """(p^b)_inf/(p^c)_inf sum_s (p^(c-b))_s p^(bs)/(p)_s Psi2(q^a; 0, q^d; x, p^s y)."""
    pv = params.p.value
    B, C = params.pv(params.b), params.pv(params.c)
    seq, ok = coefficient_sequence(params.pv(params.c - params.b), B, pv, policy)
    inner_params = HumbertParams(a=params.a, b=ZERO, c=params.d, q=params.q, p=params.p)
    flags = [ok]
    total = 0j
    err = 0.0
    terms = 0
    for s, cs in enumerate(seq):
        r = psi2(inner_params, x, pv**s * complex(y), policy)
        flags.append(r.converged)
        total += cs * r.value
        err += abs(cs) * r.err_estimate
        terms += r.terms_used
    pre = _inf(B, pv, policy) / _inf(C, pv, policy)
    return EvalResult(pre * total, abs(pre) * err, terms, all(flags))


def _weighted_sums(seq: np.ndarray, base: complex, n: int) -> np.ndarray:
    """[sum_r seq_r base^(r k) for k < n]."""
    r = np.arange(seq.size)
    k = np.arange(n)
    return (base ** np.multiply.outer(k, r).astype(float)) @ seq


def _series_a(params: HumbertParams, x, y, policy) -> EvalResult:
    """Four-index representation, grouped as a (k, l) rectangle of r- and s-sums."""
    qv, pv = params.q.value, params.p.value
    A, B, C, D = params.psi1_values()
    x, y = complex(x), complex(y)
    rseq, ok_r = coefficient_sequence(params.qv(params.d - params.a), A, qv, policy)
    sseq, ok_s = coefficient_sequence(params.pv(params.c - params.b), B, pv, policy)

    def terms(n: int, m: int) -> np.ndarray:
        rk = _weighted_sums(rseq, qv, n) * power_array(x, n) / poch_array(qv, qv, n)
        sl = _weighted_sums(sseq, pv, m) * power_array(y, m) / poch_array(pv, pv, m)
        return _shifted_poch_matrix(A, qv, n, m) * rk[:, None] * sl[None, :]

    res = rectangle_sum(terms, max(abs(x), abs(y)), policy)
    pre = _inf(A, qv, policy) * _inf(B, pv, policy) / (_inf(D, qv, policy) * _inf(C, pv, policy))
    return combine(pre, res, EvalResult(0, 0, 0, ok_r and ok_s))


def _shifted_poch_matrix(A: complex, q: complex, n: int, m: int) -> np.ndarray:
    """M[k, l] = (A q^k; q)_l."""
    idx = np.add.outer(np.arange(n), np.arange(max(m - 1, 0))).astype(float)
    out = np.ones((n, m), dtype=complex)
    if m > 1:
        out[:, 1:] = np.cumprod(1 - A * q**idx, axis=1)
    return out


def _series_b(params: HumbertParams, x, y, policy) -> EvalResult:
    """Three-index form: sum over r, s, l with (q^r p^s y)^l / ((x q^a;q)_l (p;p)_l)."""
    qv, pv = params.q.value, params.p.value
    A, B, C, D = params.psi1_values()
    x, y = complex(x), complex(y)
    rseq, ok_r = coefficient_sequence(params.qv(params.d - params.a), A, qv, policy)
    sseq, ok_s = coefficient_sequence(params.pv(params.c - params.b), B, pv, policy)
    xA = x * A
    state = {"den": 1.0 + 0j}

    def term(l: int) -> complex:
        if l:
            state["den"] *= (1 - xA * qv ** (l - 1)) * (1 - pv**l)
        rsum = complex(np.sum(rseq * qv ** (l * np.arange(rseq.size, dtype=float))))
        ssum = complex(np.sum(sseq * pv ** (l * np.arange(sseq.size, dtype=float))))
        return rsum * ssum * y**l / state["den"]

    res = sum_series(term, policy)
    pre = (
        _inf(A, qv, policy) * _inf(B, pv, policy) * _inf(xA, qv, policy)
        / (_inf(D, qv, policy) * _inf(C, pv, policy) * _inf(x, qv, policy))
    )
    return combine(pre, res, EvalResult(0, 0, 0, ok_r and ok_s))


def _series_c(params: HumbertParams, x, y, policy) -> EvalResult:
    """Three-index form with a 1phi0 in the l-sum; the bold 1Phi0 is read as 1phi0."""
    qv, pv = params.q.value, params.p.value
    A, B, C, D = params.psi1_values()
    x, y = complex(x), complex(y)
    rseq, ok_r = coefficient_sequence(params.qv(params.d - params.a), A, qv, policy)
    sseq, ok_s = coefficient_sequence(params.pv(params.c - params.b), B, pv, policy)
    rsum = complex(np.sum(rseq))
    flags = []
    state = {"den": 1.0 + 0j}

    def term(l: int) -> complex:
        if l:
            state["den"] *= 1 - pv**l
        ssum = complex(np.sum(sseq * pv ** (l * np.arange(sseq.size, dtype=float))))
        inner = phi10(A * qv**l, qv, qv**l * x, policy)
        flags.append(inner.converged)
        return rsum * ssum * y**l / state["den"] * inner.value

    res = sum_series(term, policy)
    pre = _inf(A, qv, policy) * _inf(B, pv, policy) / (_inf(D, qv, policy) * _inf(C, pv, policy))
    return combine(pre, res, EvalResult(0, 0, 0, ok_r and ok_s and all(flags)))


def _psi2_series(params: HumbertParams, x, y, policy) -> EvalResult:
    qv, pv = params.q.value, params.p.value
    A, B, Cq = params.psi2_values()
    x, y = complex(x), complex(y)
    rseq, ok_r = coefficient_sequence(params.qv(params.c - params.a), A, qv, policy)

    def terms(n: int, m: int) -> np.ndarray:
        rk = _weighted_sums(rseq, qv, n) * power_array(x, n) / poch_array(qv, qv, n)
        col = power_array(y, m) / (poch_array(B, pv, m, denominator=True) * poch_array(pv, pv, m))
        return _shifted_poch_matrix(A, qv, n, m) * rk[:, None] * col[None, :]

    res = rectangle_sum(terms, max(abs(x), abs(y)), policy)
    pre = _inf(A, qv, policy) / _inf(Cq, qv, policy)
    return combine(pre, res, EvalResult(0, 0, 0, ok_r))


def psi1_as(
    form: Psi1Form,
    params: HumbertParams,
    x,
    y,
    policy: TruncationPolicy = DEFAULT_POLICY,
    convention: str = "standard",
) -> EvalResult:
    """Evaluate Psi1 through the named representation.

    ``convention`` only affects the Kummer forms, whose inner 1phi1 depends on it.
    """
    form = Psi1Form(form)
    if form is Psi1Form.Direct:
        return psi1(params, x, y, policy)
    if form is Psi1Form.RowSum:
        return _row_sum(params, x, y, params.d, True, policy)
    if form is Psi1Form.Connection:
        return _connection(params, x, y, policy)
    if form is Psi1Form.SeriesRepA:
        return _series_a(params, x, y, policy)
    if form is Psi1Form.SeriesRepB:
        return _series_b(params, x, y, policy)
    if form is Psi1Form.SeriesRepC:
        return _series_c(params, x, y, policy)
    variant = "A" if form is Psi1Form.KummerA else "B"
    return _kummer(params, x, y, params.d, True, variant, policy, convention)


def psi2_as(
    form: Psi2Form,
    params: HumbertParams,
    x,
    y,
    policy: TruncationPolicy = DEFAULT_POLICY,
    convention: str = "standard",
) -> EvalResult:
    """Evaluate Psi2 through the named representation."""
    form = Psi2Form(form)
    if form is Psi2Form.Direct:
        return psi2(params, x, y, policy)
    if form is Psi2Form.RowSum:
        return _row_sum(params, x, y, params.c, False, policy)
    if form is Psi2Form.SeriesRep:
        return _psi2_series(params, x, y, policy)
    variant = "A" if form is Psi2Form.KummerA else "B"
    return _kummer(params, x, y, params.c, False, variant, policy, convention)

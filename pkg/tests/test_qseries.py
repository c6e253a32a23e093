import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bihumbert.qcore import PoleError, TruncationPolicy, q_pochhammer_inf, qpow
from bihumbert.qseries import CONVENTIONS, heine_rhs, kummer_rhs, phi, phi01, phi10, phi11, phi21
from conftest import cval, rel

TIGHT = TruncationPolicy(rel_tol=1e-16)


def res(a, b):
    return abs(a - b) / (abs(a) + abs(b) + 1e-30)


def test_x_zero_gives_one():
    assert phi21(0.3, 0.4, 0.5, 0.5, 0).value == 1
    assert phi11(0.3, 0.5, 0.5, 0).value == 1
    assert phi10(0.3, 0.5, 0).value == 1
    assert phi01(0.3, 0.5, 0).value == 1


def test_phi21_against_oracle(frozen):
    v = phi21(0.5, 0.5, 0.25, 0.5, 0.25, TIGHT).value
    assert rel(v, cval(frozen["scalars"]["phi21_q_q_q2"])) < 1e-14


def test_phi10_q_binomial():
    q, a, x = 0.5, 1.2, 0.3
    A = qpow(q, a)
    lhs = phi10(A, q, x, TIGHT).value
    rhs = q_pochhammer_inf(A * x, q, TIGHT).value / q_pochhammer_inf(x, q, TIGHT).value
    assert res(lhs, rhs) <= 1e-10


def test_phi10_a_zero_is_one():
    assert phi10(1.0, 0.5, 0.4).value == 1


def test_phi11_equal_parameters():
    q, x = 0.5, 0.4
    direct = phi11(0.3, 0.3, q, x, TIGHT).value
    k = np.arange(80)
    qfac = np.cumprod(np.concatenate([[1.0], 1 - q ** np.arange(1, 80)]))
    series = np.sum((-1.0) ** k * q ** (k * (k - 1) / 2) * x**k / qfac)
    assert res(direct, series) <= 1e-14


def test_kummer_consistency_example():
    q, x = 0.5, 0.3
    lhs = phi21(q**0.5, 0, q**1.5, q, x, TIGHT).value
    rhs = kummer_rhs(q**0.5, q**1.5, q, x, 1, TIGHT).value
    assert res(lhs, rhs) <= 1e-10


@pytest.mark.parametrize("form", [1, 2])
def test_heine_consistency_example(form):
    q, x, c = 0.5, 0.2, 0.5**1.5
    lhs = phi21(0, 0, c, q, x, TIGHT).value
    rhs = heine_rhs(c, q, x, form, TIGHT).value
    assert res(lhs, rhs) <= 1e-10


def test_plain_convention_differs():
    a = phi11(0.3, 0.6, 0.5, 0.4, TIGHT, "standard").value
    b = phi11(0.3, 0.6, 0.5, 0.4, TIGHT, "plain").value
    assert abs(a - b) > 1e-3
    assert set(CONVENTIONS) == {"standard", "plain"}


def test_bad_convention():
    with pytest.raises(ValueError):
        phi11(0.3, 0.6, 0.5, 0.4, TIGHT, "other")


def test_denominator_pole():
    # (c;q)_k vanishes from k = 3 on when c = q^-2
    with pytest.raises(PoleError):
        phi21(0.3, 0.4, 4.0, 0.5, 0.1)


@settings(max_examples=25, deadline=None)
@given(a=st.floats(0.2, 2), c=st.floats(0.2, 2), q=st.floats(0.1, 0.9),
       r=st.floats(0, 0.5), t=st.floats(0, 2 * np.pi))
def test_truncation_consistency(a, c, q, r, t):
    x = r * np.exp(1j * t)
    base = TruncationPolicy(max_terms=2000)
    doubled = TruncationPolicy(max_terms=4000)
    v1 = phi21(q**a, 0, q**c, q, x, base)
    v2 = phi21(q**a, 0, q**c, q, x, doubled)
    assert v1.converged
    assert abs(v1.value - v2.value) <= 10 * v1.err_estimate + 1e-300

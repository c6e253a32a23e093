import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bihumbert.humbert import HumbertParams, psi1
from bihumbert.qcalc import (
    MAX_ITER_ORDER,
    jackson_integral,
    param_qdiff,
    qdiff,
    qdiff_iter,
    qdiff_iter_expanded,
    qgamma_via_integral,
)
from bihumbert.qcore import DomainError, TruncationPolicy, q_gamma, q_integer, q_pochhammer, q_pochhammer_inf

TIGHT = TruncationPolicy(rel_tol=1e-16)


def res(a, b):
    return abs(a - b) / (abs(a) + abs(b) + 1e-30)


def test_qdiff_examples():
    assert qdiff(lambda t: 3.0, 0.4, 0.5) == 0
    assert qdiff(lambda t: t, 0.4, 0.3) == pytest.approx(1, rel=1e-15)
    assert qdiff(lambda t: t * t, 0.3, 0.5) == pytest.approx(0.45, rel=1e-14)


def test_qdiff_iter_examples():
    assert qdiff_iter(lambda t: t**3, 1.0, 0.5, 2) == pytest.approx(2.625, rel=1e-14)
    assert qdiff_iter(lambda t: 2.0, 0.7, 0.5, 3) == 0


def test_qdiff_iter_order_cap():
    with pytest.raises(ValueError):
        qdiff_iter(lambda t: t, 0.5, 0.5, MAX_ITER_ORDER + 1)


def test_qdiff_zero_point():
    with pytest.raises(DomainError):
        qdiff(lambda t: t, 0, 0.5)


@pytest.mark.parametrize("n", range(1, 9))
def test_monomial_exactness(n):
    q, x = 0.6, 0.7 - 0.2j
    for r in range(1, n + 1):
        expect = 1.0
        for j in range(r):
            expect *= q_integer(n - j, q)
        expect *= x ** (n - r)
        assert res(qdiff_iter(lambda t: t**n, x, q, r), expect) <= 1e-13


def test_expanded_form_agrees():
    f = lambda t: 1 / (1 - t)  # noqa: E731
    for r in (1, 2, 3):
        assert res(qdiff_iter(f, 0.3, 0.5, r), qdiff_iter_expanded(f, 0.3, 0.5, r)) < 1e-12


def test_param_qdiff_examples():
    q = 0.5
    assert param_qdiff(lambda a: 4.0, 1.0, q) == 0
    assert param_qdiff(lambda a: q**a, 1.3, q) == pytest.approx(1, rel=1e-14)
    got = param_qdiff(lambda a: q_pochhammer(q**a, q, 2), 1.0, q)
    expect = (q_pochhammer(0.5, 0.5, 2) - q_pochhammer(0.25, 0.5, 2)) / (0.5 * 0.5)
    assert got == pytest.approx(expect, rel=1e-14)


def test_jackson_closed_forms():
    assert jackson_integral(lambda t: 1.0, 1.0, 0.5, TIGHT).value == pytest.approx(1, rel=1e-13)
    assert jackson_integral(lambda t: t, 1.0, 0.5, TIGHT).value == pytest.approx(2 / 3, rel=1e-13)
    # t^n over (0, u]: u^(n+1) (1-p) / (1 - p^(n+1))
    for n, u, p in ((2, 1.5, 0.3), (3, 0.7, 0.8)):
        got = jackson_integral(lambda t: t**n, u, p, TIGHT).value
        assert res(got, u ** (n + 1) * (1 - p) / (1 - p ** (n + 1))) <= 1e-13


def test_jackson_rejects_complex_base():
    with pytest.raises(DomainError):
        jackson_integral(lambda t: t, 1.0, 0.5j)


def test_jackson_linearity():
    f = lambda t: t**1.5  # noqa: E731
    g = lambda t: 1 / (1 + t)  # noqa: E731
    al, be = 0.7, -1.3
    lhs = jackson_integral(lambda t: al * f(t) + be * g(t), 1.0, 0.4, TIGHT).value
    rhs = al * jackson_integral(f, 1.0, 0.4, TIGHT).value + be * jackson_integral(g, 1.0, 0.4, TIGHT).value
    assert res(lhs, rhs) <= 1e-13


def test_qgamma_integral_examples():
    assert qgamma_via_integral(1, 0.5).value == pytest.approx(1, rel=1e-10)
    assert qgamma_via_integral(2, 0.5).value == pytest.approx(1, rel=1e-10)
    assert res(qgamma_via_integral(2.7, 0.3).value, q_gamma(2.7, 0.3).value) <= 1e-8


def test_q_beta_normalisation():
    b, c, p = 1.2, 2.5, 0.5
    norm = q_gamma(c, p, TIGHT).value / (q_gamma(b, p, TIGHT).value * q_gamma(c - b, p, TIGHT).value)

    def kernel(t):
        return t ** (b - 1) * q_pochhammer_inf(p * t, p, TIGHT).value / q_pochhammer_inf(t * p ** (c - b), p, TIGHT).value

    assert norm * jackson_integral(kernel, 1.0, p, TIGHT).value == pytest.approx(1, rel=1e-12)


def test_qdiff_iter_on_psi1_matches_shifted():
    hp = HumbertParams(1.0, 1.0, 1.0, 1.0, q=0.5, p=0.3)
    x, y, q = 0.2, 0.1, 0.5
    lhs = qdiff_iter(lambda t: psi1(hp, t, y, TIGHT).value, x, q, 2)
    pre = q_pochhammer(q, q, 2) / ((1 - q) ** 2 * q_pochhammer(q, q, 2))
    rhs = pre * psi1(hp.shifted(a=2, d=2), x, y, TIGHT).value
    assert res(lhs, rhs) <= 1e-10


@settings(max_examples=30, deadline=None)
@given(n=st.integers(0, 8), q=st.floats(0.1, 0.9), x=st.floats(0.05, 2))
def test_qdiff_monomial_property(n, q, x):
    expect = q_integer(n, q) * x ** (n - 1) if n else 0.0
    got = qdiff(lambda t: t**n, x, q)
    assert abs(got - expect) <= 1e-13 * max(abs(expect), 1e-300) + (1e-300 if n else 0)

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import central_difference

from helifront import jets
from helifront.expr import parse
from helifront.jets import DivisionByVanishing, Jet, OrderOutOfRange, SqrtOfVanishing, jet_lift

coef = st.floats(-3, 3, allow_nan=False)


def test_polynomial_lift():
    assert jet_lift("u^2", 0.0, 3).coeffs == (0.0, 0.0, 1.0, 0.0)


def test_sin_maclaurin():
    got = jet_lift("sin(u)", 0.0, 5).coeffs
    assert np.allclose(got, (0, 1, 0, -1 / 6, 0, 1 / 120), rtol=0, atol=1e-16)


def test_example_two_beta():
    assert np.allclose(jet_lift("sqrt(1 + 4*u^2)", 0.0, 2).coeffs, (1, 0, 2), atol=1e-15)


def test_polynomial_read_back_is_exact():
    j = jet_lift("2 - 3*u + 0.5*u^2 + u^3", 1.5, 4)
    # Taylor coefficients of the cubic at 1.5
    want = (2 - 4.5 + 1.125 + 3.375, -3 + 1.5 + 6.75, 0.5 + 4.5, 1.0, 0.0)
    assert j.coeffs == pytest.approx(want, abs=1e-14)


@given(st.lists(coef, min_size=4, max_size=4), st.lists(coef, min_size=4, max_size=4), coef)
def test_leibniz(p, q, u0):
    P = np.polynomial.Polynomial(p)
    Q = np.polynomial.Polynomial(q)
    order = 6

    def taylor(poly):
        shifted = poly(np.polynomial.Polynomial([u0, 1.0]))
        c = np.zeros(order + 1)
        c[: len(shifted.coef)] = shifted.coef[: order + 1]
        return Jet(u0, c)

    prod = taylor(P) * taylor(Q)
    want = taylor(P * Q)
    scale = max(1.0, max(abs(c) for c in want.coeffs))
    assert np.allclose(prod.coeffs, want.coeffs, rtol=0, atol=1e-14 * scale * 10)


@given(st.floats(-4, 4))
def test_pythagoras(u0):
    j = jet_lift("sin(u)^2 + cos(u)^2", u0, 6)
    assert np.allclose(j.coeffs, (1, 0, 0, 0, 0, 0, 0), atol=1e-14)


@pytest.mark.parametrize("text", ["sin(u)*sqrt(2 + u^2)", "1/(1 + u^2)", "cos(u^2 - u)/(3 + sin(u))"])
@pytest.mark.parametrize("u0", [-0.7, 0.1, 1.3])
def test_agrees_with_finite_differences(text, u0):
    f = parse(text)
    j = jet_lift(text, u0, 3)
    for k in (1, 2):
        fd = central_difference(f, u0, k)
        assert abs(j.deriv(k) - fd) <= 1e-6 * max(1.0, abs(fd))
    # a third difference of f at this step drowns in rounding; difference each
    # jet derivative once instead
    for k in (1, 2, 3):
        fd = central_difference(lambda t: jet_lift(text, t, 2).deriv(k - 1), u0, 1)
        assert abs(j.deriv(k) - fd) <= 1e-6 * max(1.0, abs(fd))


def test_deriv_is_factorial_scaled():
    j = jet_lift("u^4", 1.0, 4)
    assert [j.deriv(k) for k in range(5)] == pytest.approx([1, 4, 12, 24, 24])


def test_division_by_vanishing():
    u = Jet.variable(0.0, 3)
    with pytest.raises(DivisionByVanishing):
        1.0 / u


def test_sqrt_of_vanishing():
    with pytest.raises(SqrtOfVanishing):
        jet_lift("sqrt(u^2)", 0.0, 2)


@pytest.mark.parametrize("order", [0, 7])
def test_order_out_of_range(order):
    with pytest.raises(OrderOutOfRange):
        jet_lift("u", 0.0, order)


def test_compose_matches_direct_lift():
    inner = jet_lift("u^2 + u", 0.3, 4)
    outer = jet_lift("sin(u)", inner.value, 4)
    direct = jet_lift("sin(u^2 + u)", 0.3, 4)
    assert np.allclose(outer.compose(inner).coeffs, direct.coeffs, atol=1e-14)


def test_integral_inverts_derivative():
    j = jet_lift("cos(u)", 0.2, 5)
    back = j.derivative().integral(j.value)
    assert np.allclose(back.coeffs, j.coeffs, atol=1e-15)


def test_dispatch_on_arrays():
    u = np.linspace(0, 1, 5)
    assert np.allclose(jets.sin(u), np.sin(u))
    assert jets.value(2.5) == 2.5 and jets.coeff(2.5, 1) == 0.0
    assert math.isclose(jets.sqrt(4.0), 2.0)

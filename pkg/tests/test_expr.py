import math

import numpy as np
import pytest

from helifront.expr import ExpressionError, parse
from helifront.jets import Jet


@pytest.mark.parametrize(
    "text, u, want",
    [
        ("1 + 2*3", 0.0, 7.0),
        ("-u^2", 3.0, -9.0),
        ("2^3^2", 0.0, 512.0),
        ("u**2/4", 2.0, 1.0),
        ("sqrt(8 + 12*u + 9*u^2)", 0.0, math.sqrt(8)),
        ("sin(pi/2) + cos(t)", 0.0, 2.0),
        (".5e1 - 1.", 0.0, 4.0),
    ],
)
def test_evaluates(text, u, want):
    assert parse(text)(u) == pytest.approx(want)


def test_arrays_and_jets():
    f = parse("u^3 - u")
    assert np.allclose(f(np.array([0.0, 1.0, 2.0])), [0, 0, 6])
    j = f(Jet.variable(2.0, 2))
    assert j.coeffs == pytest.approx((6.0, 11.0, 6.0))


def test_numbers_pass_through():
    assert parse(3)(10.0) == 3.0
    tree = parse("u")
    assert parse(tree) is tree


@pytest.mark.parametrize(
    "text, pos",
    [
        ("1 + ", 4),
        ("exp(u)", 0),
        ("u + (2", 6),
        ("2 * $", 4),
        ("u^u", 1),
    ],
)
def test_error_positions(text, pos):
    with pytest.raises(ExpressionError) as info:
        parse(text)
    assert info.value.pos == pos
    assert f"position {pos}" in str(info.value)

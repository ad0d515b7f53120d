import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from helifront.fixtures import EXAMPLES, axis_line
from helifront.legendre import (
    CurveSpecError,
    EmptyGrid,
    LegendreCurvature,
    LegendreCurve,
    StepCountTooSmall,
    curvature_of_legendre,
    curve_from_spec,
    jets_from_curvature_coeffs,
    legendre_check,
    reconstruct_curve,
    reconstruct_jets,
)
from helifront.singularity import CuspTag, classify_plane_cusp

GRID = np.linspace(-1, 1, 101)


def test_example_two_is_legendre():
    rep = legendre_check(EXAMPLES["example2"].curve, GRID)
    assert rep.valid
    assert rep.norm_deviation < 1e-12 and rep.legendre_deviation < 1e-12


@pytest.mark.parametrize("name", sorted(EXAMPLES))
def test_all_examples_are_legendre(name):
    assert legendre_check(EXAMPLES[name].curve, GRID).valid


def test_tangent_normal_is_rejected():
    rep = legendre_check(LegendreCurve.from_expressions("u", 0, 1, 0), GRID)
    assert not rep.valid
    assert rep.legendre_deviation == pytest.approx(1.0)


def test_line_with_constant_normal():
    rep = legendre_check(LegendreCurve.from_expressions("u", 0, 0, 1), GRID)
    assert rep.valid and rep.norm_deviation == 0 and rep.legendre_deviation == 0


def test_empty_grid():
    with pytest.raises(EmptyGrid):
        legendre_check(axis_line(), [])


def test_curvature_example_two():
    p = curvature_of_legendre(EXAMPLES["example2"].curve, 0.0)
    assert (p.ell, p.beta) == pytest.approx((-2.0, 1.0), abs=1e-12)


def test_curvature_example_three():
    p = curvature_of_legendre(EXAMPLES["example3"].curve, 0.0)
    assert p.ell == pytest.approx(0.0, abs=1e-12)
    assert p.ell_jet.deriv(1) == pytest.approx(-6.0, abs=1e-12)
    assert p.beta == pytest.approx(1.0, abs=1e-12)


def test_curvature_of_axis_line():
    p = curvature_of_legendre(axis_line(), 0.3)
    assert (p.ell, p.beta) == pytest.approx((0.0, 1.0))


@pytest.mark.parametrize("name", sorted(EXAMPLES))
def test_curvature_matches_printed_formulas(name):
    ex = EXAMPLES[name]
    for u0 in np.linspace(-0.9, 0.9, 7):
        p = curvature_of_legendre(ex.curve, float(u0))
        assert p.ell == pytest.approx(ex.ell(float(u0)), abs=1e-12)
        assert p.beta == pytest.approx(ex.beta(float(u0)), abs=1e-12)


@pytest.mark.parametrize("name", sorted(EXAMPLES))
def test_frenet_consistency(name):
    curve = EXAMPLES[name].curve
    for u0 in np.linspace(-1, 1, 21):
        cj = curve.jets(float(u0), 2)
        assert cj.x.deriv(1) == pytest.approx(-cj.beta.value * cj.b.value, abs=1e-10)
        assert cj.z.deriv(1) == pytest.approx(cj.beta.value * cj.a.value, abs=1e-10)


@given(st.floats(-math.pi, math.pi), st.floats(-5, 5), st.floats(-5, 5), st.floats(-1, 1))
def test_congruence_invariance(angle, tx, tz, u0):
    curve = EXAMPLES["example1"].curve
    p = curvature_of_legendre(curve, u0)
    q = curvature_of_legendre(curve.transformed(angle, (tx, tz)), u0)
    assert abs(p.ell - q.ell) < 1e-10 and abs(p.beta - q.beta) < 1e-10


def test_zero_curvature_gives_line():
    s = reconstruct_curve(LegendreCurvature.from_expressions(0, 1), (0.0, 1.0), 64)
    assert np.allclose(s.x, 0, atol=1e-15) and np.allclose(s.z, s.u, atol=1e-14)
    assert np.allclose(s.a, 1) and np.allclose(s.b, 0)


def test_unit_circle():
    s = reconstruct_curve(LegendreCurvature.from_expressions(1, 1), (0.0, 2 * math.pi), 4096)
    err = np.hypot(s.x - (np.cos(s.u) - 1), s.z - np.sin(s.u))
    assert err.max() < 1e-8


def test_interior_base_point_pins_constants():
    curv = LegendreCurvature.from_expressions("u", 1)
    s = reconstruct_curve(curv, (-1.0, 1.0), 256, u0=0.25, gamma0=(2.0, -1.0), angle0=0.5)
    assert s(0.25)[0] == pytest.approx(2.0, abs=1e-12)
    assert s(0.25)[1] == pytest.approx(-1.0, abs=1e-12)
    assert math.atan2(s(0.25)[3], s(0.25)[2]) == pytest.approx(0.5, abs=1e-12)


def test_step_count_too_small():
    with pytest.raises(StepCountTooSmall):
        reconstruct_curve(LegendreCurvature.from_expressions(1, 1), (0.0, 1.0), 4)


def test_round_trip():
    curv = LegendreCurvature.from_expressions("1 + u^2", "cos(u) + 2")
    s = reconstruct_curve(curv, (-1.0, 1.0), 4096)
    ell, beta = s.curvature_from_samples(s.u)
    assert np.abs(ell - curv.ell(s.u)).max() < 1e-6
    assert np.abs(beta - curv.beta(s.u)).max() < 1e-6


def test_reconstructed_cusp_is_three_halves():
    curv = LegendreCurvature.from_expressions(1, "u")
    x, z, _, _ = reconstruct_jets(curv, 0.0, (0.0, 0.0), 0.0, 5)
    assert classify_plane_cusp((x, z)).tag is CuspTag.CUSP_3_2
    # and through the sampled curve's jet view
    sampled = reconstruct_curve(curv, (-1.0, 1.0), 512, u0=0.0).as_legendre_curve()
    cj = sampled.jets(0.0, 5)
    assert classify_plane_cusp((cj.x, cj.z)).tag is CuspTag.CUSP_3_2


def test_jets_from_coefficients_match_reconstruction():
    cj = jets_from_curvature_coeffs((1.0, 0.5, 0.0, 0.0, 0.0), (2.0, -1.0, 0.0, 0.0, 0.0), 0.0, (0.1, 0.2), 0.3)
    curv = LegendreCurvature.from_expressions("1 + 0.5*u", "2 - u")
    x, z, a, b = reconstruct_jets(curv, 0.0, (0.1, 0.2), 0.3, 5)
    for p, q in ((cj.x, x), (cj.z, z), (cj.a, a), (cj.b, b)):
        assert np.allclose(p.coeffs, q.coeffs[: p.order + 1], atol=1e-15)


def test_spec_explicit_and_curvature():
    c = curve_from_spec({"kind": "explicit", "x": "u^2", "z": "u", "a": "1/sqrt(1+4*u^2)", "b": "-2*u/sqrt(1+4*u^2)"})
    assert curvature_of_legendre(c, 0.0).ell == pytest.approx(-2.0)
    r = curve_from_spec({"kind": "curvature", "ell": "1", "beta": "1", "domain": [0, 3], "steps": 512})
    assert r.x(np.array([math.pi / 2]))[0] == pytest.approx(-1.0, abs=1e-8)


@pytest.mark.parametrize(
    "spec",
    [
        [],
        {"kind": "explicit", "x": "u"},
        {"kind": "curvature", "ell": "1"},
        {"kind": "polar"},
        {"kind": "explicit", "x": "u", "z": "u", "a": "1", "b": "0", "domain": [1, 0]},
        {"kind": "curvature", "ell": "1", "beta": "1", "steps": 3},
    ],
)
def test_bad_specs(spec):
    with pytest.raises(CurveSpecError):
        curve_from_spec(spec)

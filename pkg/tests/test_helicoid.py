import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import fundamental_curvatures

from helifront import helicoid
from helifront.fixtures import EXAMPLES, offset_circle, vertical_line
from helifront.framed import basic_invariants, framed_curvature, gfs_basic_invariants
from helifront.helicoid import HelicoidalSurface, PolarDataUndefined
from helifront.legendre import LegendreCurve

EX2 = EXAMPLES["example2"].helicoid()
GRID = np.linspace(-1, 1, 81)


def test_pitch_must_be_nonzero():
    with pytest.raises(ValueError):
        HelicoidalSurface(vertical_line(), 0.0)


def test_eval_example_two_at_origin():
    p = helicoid.helicoid_eval(EX2, 0.0, 0.0)
    assert p.point == pytest.approx([0, 0, 0])
    assert p.r_u == pytest.approx([0, 0, 1])
    assert p.r_v == pytest.approx([0, 0, 0.5])
    assert p.normal == pytest.approx([0, 0, 0])


def test_eval_example_two_at_one():
    assert helicoid.helicoid_eval(EX2, 1.0, 0.0).point == pytest.approx([1, 0, 1])


@given(st.floats(-1, 1), st.floats(-10, 10))
def test_screw_periodicity(u, v):
    h = EXAMPLES["example1"].helicoid()
    p = np.array(h(u, v))
    q = np.array(h(u, v + 2 * math.pi))
    assert q - p == pytest.approx([0, 0, 2 * math.pi * h.lam], abs=1e-12)


@given(st.floats(-1, 1), st.floats(0, 6.3))
def test_normal_decomposition(u, v):
    h = EXAMPLES["example4"].helicoid()
    p = helicoid.helicoid_eval(h, u, v)
    assert p.normal == pytest.approx(p.coeff_nu1 * p.nu1 + p.coeff_nu2 * p.nu2, abs=1e-12)


def test_gfs_example_two():
    inv = helicoid.gfs_invariants(EX2, 0.0)
    assert inv.G == pytest.approx(np.array([[0, 0, 1], [0, 0, 0.5]]), abs=1e-12)
    assert (inv.f1, inv.e2, inv.g2) == pytest.approx((-2, 1, 0), abs=1e-12)


def test_gfs_example_one_reduced_minors_vanish():
    inv = helicoid.gfs_invariants(EXAMPLES["example1"].helicoid(), 0.0)
    assert inv.alpha_r == pytest.approx(0, abs=1e-12) and inv.beta_r == pytest.approx(0, abs=1e-12)


@pytest.mark.parametrize("name", sorted(EXAMPLES))
def test_gfs_matches_frame_differentiation(name):
    h = EXAMPLES[name].helicoid()
    nu1, nu2 = helicoid.gfs_frames(h)
    for u in (-0.8, -0.1, 0.35, 0.9):
        for v in (0.0, 2.2):
            got = helicoid.gfs_invariants(h, u, v).as_dict()
            want = gfs_basic_invariants(h, nu1, nu2, u, v).as_dict()
            assert got == pytest.approx(want, abs=1e-10)


def test_select_k_example_two():
    k = helicoid.select_k(EX2)
    dn, dc = helicoid.selection_residuals(EX2, k, GRID)
    assert dn < 1e-12 and dc < 1e-12
    for u in (-0.6, 0.0, 0.3):
        r = math.sqrt(1 / (1 + 4 * u * u) + u * u)
        want = np.array([-1 / math.sqrt(1 + 4 * u * u), u]) / r
        got = np.array([k.first(u), k.second(u)])
        assert abs(abs(got @ want) - 1) < 1e-12


def test_select_k_example_four():
    h = EXAMPLES["example4"].helicoid()
    k = helicoid.select_k(h)
    dn, dc = helicoid.selection_residuals(h, k, GRID)
    assert dn < 1e-12 and dc < 1e-12
    # continuity across the joint zero and the deflation boundary
    us = np.linspace(-0.2, 0.2, 801)
    vals = np.array([[k.first(float(u)), k.second(float(u))] for u in us])
    assert np.abs(np.diff(vals, axis=0)).max() < 5e-3


def test_select_k_circle_needs_no_deflation():
    h = HelicoidalSurface(offset_circle(), 0.5)
    k = helicoid.select_k(h)
    assert k.common_zeros == ()
    dn, dc = helicoid.selection_residuals(h, k, np.linspace(-3, 3, 61))
    assert dn < 1e-15 and dc < 1e-12


def test_framed_invariants_example_two_origin():
    inv = helicoid.framed_invariants(EX2, helicoid.select_k(EX2), 0.0)
    assert (inv.a1, inv.b1, inv.a2, inv.b2, inv.f2) == pytest.approx((1, 0, 0.5, 0, -1), abs=1e-12)


@pytest.mark.parametrize("name", sorted(EXAMPLES))
def test_framed_matches_frame_differentiation(name):
    """Catches the sign of e2 in particular."""
    h = EXAMPLES[name].helicoid()
    k = helicoid.select_k(h)
    n, s, _ = helicoid.frame_vectors(h, k)
    rng = np.random.default_rng(5)
    for u in rng.uniform(-1, 1, 8):
        got = helicoid.framed_invariants(h, k, float(u), 0.4).as_dict()
        want = basic_invariants(h, n, s, float(u), 0.4).as_dict()
        assert got == pytest.approx(want, abs=1e-10)


@pytest.mark.parametrize("name", sorted(EXAMPLES))
def test_v_independence(name):
    h = EXAMPLES[name].helicoid()
    k = helicoid.select_k(h)
    for u in (-0.7, 0.2):
        for fn in (helicoid.gfs_invariants, lambda h_, u_, v_: helicoid.framed_invariants(h_, k, u_, v_)):
            p = fn(h, u, 0.0).as_dict()
            q = fn(h, u, 4.1).as_dict()
            assert p == pytest.approx(q, abs=1e-12)


@pytest.mark.parametrize("name", sorted(EXAMPLES))
def test_closed_form_curvature_matches_definition(name):
    h = EXAMPLES[name].helicoid()
    k = helicoid.select_k(h)
    for u in np.random.default_rng(3).uniform(-1, 1, 100):
        closed = helicoid.helicoid_curvature(h, k, float(u))
        direct = framed_curvature(helicoid.framed_invariants(h, k, float(u)))
        assert closed.framed == pytest.approx(tuple(direct), abs=1e-12)
        assert closed.KF_printed == pytest.approx(-direct.KF, abs=1e-12)


def test_example_two_curvature():
    k = helicoid.select_k(EX2)
    assert helicoid.helicoid_curvature(EX2, k, 0.0).JF == pytest.approx(0, abs=1e-14)
    cf = helicoid.helicoid_curvature(EX2, k, 0.5)
    n, _, _ = helicoid.frame_vectors(EX2, k)
    K, H = fundamental_curvatures(EX2, 0.5, 0.0, normal=n(0.5, 0.0))
    assert cf.KF / cf.JF == pytest.approx(K, rel=1e-8)
    assert cf.HF / cf.JF == pytest.approx(H, rel=1e-8)


def test_slice_example_two():
    u = np.array([0.0, 0.4, -0.9])
    c1, c2 = helicoid.slice_curve(EX2, u, "c")
    assert c1 == pytest.approx(u**2 * np.cos(2 * u)) and c2 == pytest.approx(u**2 * np.sin(2 * u))


@given(st.floats(-1, 1))
def test_slice_mirror(u):
    h = EXAMPLES["example3"].helicoid()
    s, c = helicoid.slice_curve(h, u, "s"), helicoid.slice_curve(h, u, "c")
    assert s[0] == c[0] and s[1] == -c[1]


@pytest.mark.parametrize("name", sorted(EXAMPLES))
def test_slice_vanishes_on_axis(name):
    assert helicoid.slice_curve(EXAMPLES[name].helicoid(), 0.0) == pytest.approx((0, 0))


def test_slice_pair_example_two():
    sel = helicoid.select_l(EX2)
    for u in (0.0, 0.5, -0.3):
        want = np.array([u, 1.0]) / math.sqrt(1 + u * u)
        assert abs(abs(np.array([sel.first(u), sel.second(u)]) @ want) - 1) < 1e-12
    assert helicoid.slice_legendre(EX2, 0.0, sel).beta_s == pytest.approx(0, abs=1e-14)


def test_slice_of_vertical_line_is_circle():
    h = HelicoidalSurface(vertical_line(), 0.5)
    u = np.linspace(-1, 1, 11)
    s1, s2 = helicoid.slice_curve(h, u)
    assert np.hypot(s1, s2) == pytest.approx(np.ones_like(u))
    for ui in u:
        sl = helicoid.slice_legendre(h, float(ui))
        assert abs(sl.beta_s) == pytest.approx(1 / h.lam)


@pytest.mark.parametrize("name", sorted(EXAMPLES))
def test_slice_frenet_equations(name):
    h = EXAMPLES[name].helicoid()
    sel = helicoid.select_l(h)
    for u in np.linspace(-0.95, 0.95, 15):
        sl = helicoid.slice_legendre(h, float(u), sel)
        assert sl.frenet_residual < 1e-10 and sl.normal_residual < 1e-10
        assert abs(sl.constraint_residual) < 1e-10


def test_printed_slice_curvature_is_off_by_pitch():
    sl = helicoid.slice_legendre(EX2, 0.5)
    assert sl.printed_frenet_residual > 1e-3
    assert sl.frenet_residual < 1e-12


@given(st.floats(-1, 1), st.floats(0, 6.3), st.floats(-1, 1))
def test_parallel_surface_offset(u, v, t):
    k = helicoid.select_k(EX2)
    p = helicoid.parallel_surface(EX2, k, t, u, v)
    assert np.linalg.norm(p - np.array(EX2(u, v))) == pytest.approx(abs(t), abs=1e-12)
    assert np.array_equal(helicoid.parallel_surface(EX2, k, 0.0, u, v), np.array(EX2(u, v), dtype=float))


def test_parallel_example_two():
    k = helicoid.select_k(EX2)
    n, _, _ = helicoid.frame_vectors(EX2, k)
    want = np.array(EX2(0.5, 0.0)) + 0.1 * np.array(n(0.5, 0.0))
    assert helicoid.parallel_surface(EX2, k, 0.1, 0.5, 0.0) == pytest.approx(want, abs=1e-12)


def test_rotation_relation_example_two():
    k, sel = helicoid.select_k(EX2), helicoid.select_l(EX2)
    assert helicoid.rotation_relation_residual(EX2, k, sel, 0.05, 0.5) < 1e-9
    assert helicoid.rotation_relation_residual(EX2, k, sel, 0.0, 0.5) == 0.0


def test_rotation_relation_vertical_line():
    h = HelicoidalSurface(vertical_line(), 0.5)
    k, sel = helicoid.select_k(h), helicoid.select_l(h)
    pd = helicoid.parallel_data(h, k, sel, 0.2, 0.3)
    assert np.array_equal(pd.M, np.eye(2)) and abs(pd.t) == pytest.approx(0.2)
    assert helicoid.rotation_relation_residual(h, k, sel, 0.2, 0.3) < 1e-12


def test_polar_data_undefined_on_axis():
    k, sel = helicoid.select_k(EX2), helicoid.select_l(EX2)
    with pytest.raises(PolarDataUndefined):
        helicoid.parallel_data(EX2, k, sel, 0.0, 0.0)


@pytest.mark.parametrize("name", sorted(EXAMPLES))
def test_singular_trichotomy_and_area(name):
    h = EXAMPLES[name].helicoid()
    k = helicoid.select_k(h)
    for u in np.linspace(-1, 1, 201):
        p = helicoid.helicoid_eval(h, float(u), 0.0)
        singular = np.linalg.norm(p.normal) < 1e-9
        f = h.fields(float(u))
        beta0 = abs(f.beta) < 1e-9
        axis = abs(f.x) < 1e-9 and abs(f.b) < 1e-9
        assert singular == (beta0 or axis)
        JF = helicoid.helicoid_curvature(h, k, float(u)).JF
        assert (abs(JF) < 1e-9) == singular


@pytest.mark.parametrize("name", sorted(EXAMPLES))
def test_frame_constraint(name):
    h = EXAMPLES[name].helicoid()
    _, dc = helicoid.selection_residuals(h, helicoid.select_k(h), GRID)
    assert dc < 1e-9


def test_axis_profile_has_no_smooth_selection():
    # x and b vanish identically, so (b lam, x) has no isolated zero to divide out
    h = HelicoidalSurface(LegendreCurve.from_expressions(0, "u", 1, 0), 0.5)
    with pytest.raises(helicoid.NoSmoothSelection):
        helicoid.select_k(h).first(0.3)

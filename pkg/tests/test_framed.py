import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import sphere, surface_partials

from helifront import helicoid
from helifront.fixtures import EXAMPLES
from helifront.framed import (
    FrameInvariants,
    FrameNotOrthonormal,
    FramedCurvature,
    NotStrictFramed,
    NotTangent,
    basic_invariants,
    framed_curvature,
    gfs_basic_invariants,
    immersion_predicates,
    integrability_residual,
)
from helifront.jets import Jet


def plane(u, v):
    return (u, v, 0.0)


def const(*vec):
    return lambda u, v: vec


def sphere_s(u, v):
    from helifront import jets

    return (-jets.sin(u) * jets.cos(v), -jets.sin(u) * jets.sin(v), jets.cos(u))


def test_flat_plane():
    inv = basic_invariants(plane, const(0.0, 0.0, 1.0), const(1.0, 0.0, 0.0), 0.2, -0.4)
    assert np.array_equal(inv.G, np.eye(2))
    assert not inv.F1.any() and not inv.F2.any()
    assert framed_curvature(inv) == (1.0, 0.0, 0.0)


@pytest.mark.parametrize("u, v", [(0.0, 0.0), (0.4, 1.1), (-1.2, 2.5)])
def test_round_sphere(u, v):
    inv = basic_invariants(sphere, sphere, sphere_s, u, v).values()
    assert inv.a1 == pytest.approx(1.0, abs=1e-12)
    assert inv.b1 == pytest.approx(0.0, abs=1e-12)
    # t = n x s = -(-sin v, cos v, 0) makes x_v . t = -cos u
    assert inv.b2 == pytest.approx(-math.cos(u), abs=1e-12)
    cf = framed_curvature(inv)
    assert cf.KF / cf.JF == pytest.approx(1.0, abs=1e-12)


def sphere_field(u, v):
    """Hand-computed invariants of the sphere frame; t = (sin v, -cos v, 0)."""
    from helifront import jets

    cu, su = jets.cos(u), jets.sin(u)
    zero = 0.0 * cu + 0.0 * v
    return FrameInvariants.framed(1 + zero, zero, zero, -cu + zero, 1 + zero, zero, zero, zero, -cu + zero, su + zero)


@pytest.mark.parametrize("u, v", [(0.3, 0.1), (-0.8, 2.0)])
def test_sphere_hand_invariants(u, v):
    got = basic_invariants(sphere, sphere, sphere_s, u, v).as_dict()
    want = sphere_field(u, v).values().as_dict()
    assert got == pytest.approx(want, abs=1e-12)
    assert np.abs(integrability_residual(sphere_field, u, v)).max() < 1e-14


def test_orthonormality_is_checked():
    with pytest.raises(FrameNotOrthonormal):
        basic_invariants(plane, const(0.0, 0.0, 1.0), const(1.0, 1.0, 0.0), 0.0, 0.0)


def test_tangency_is_checked():
    with pytest.raises(NotTangent):
        basic_invariants(plane, const(1.0, 0.0, 0.0), const(0.0, 1.0, 0.0), 0.0, 0.0)


def flat_field(g2=0.0):
    def field(u, v):
        z = 0.0 * u + 0.0 * v
        return FrameInvariants.framed(1 + z, z, z, 1 + z, z, z, z, z, z, g2 + z)

    return field


def test_flat_residuals_vanish():
    assert not integrability_residual(flat_field(), 0.3, 0.7).any()


def test_perturbed_g2():
    res = integrability_residual(flat_field(0.1), 0.3, 0.7)
    assert res == pytest.approx([0.0, 0.1, 0.0, 0.0, 0.0, 0.0], abs=1e-15)


def test_zero_invariants():
    def field(u, v):
        z = 0.0 * u + 0.0 * v
        return FrameInvariants.framed(*([z] * 10))

    assert not integrability_residual(field, 0.0, 0.0).any()


@given(st.lists(st.floats(-5, 5), min_size=10, max_size=10))
def test_skewness(vals):
    inv = FrameInvariants.framed(*vals)
    assert np.array_equal(inv.F1, -inv.F1.T) and np.array_equal(inv.F2, -inv.F2.T)


@given(st.lists(st.floats(-2, 2), min_size=6, max_size=6))
def test_reduced_minors(vals):
    a1, b1, c1, a2, b2, c2 = vals
    inv = FrameInvariants(a1, b1, c1, a2, b2, c2, 0, 0, 0, 0, 0, 0, gfs=True)
    assert inv.alpha_r == pytest.approx(np.linalg.det([[b1, c1], [b2, c2]]), abs=1e-10)
    assert inv.beta_r == pytest.approx(-np.linalg.det([[a1, c1], [a2, c2]]), abs=1e-10)


def test_gfs_rejected_by_framed_curvature():
    inv = FrameInvariants(1, 0, 0.5, 0, 1, 0, 0, 0, 0, 0, 0, 0, gfs=True)
    with pytest.raises(NotStrictFramed):
        framed_curvature(inv)


def test_immersion_predicates():
    assert immersion_predicates(FramedCurvature(1, 0, 0))[:2] == (True, True)
    assert immersion_predicates(FramedCurvature(0, 0, 0))[:2] == (False, False)
    assert immersion_predicates(FramedCurvature(1e-7, 0, 0)).marginal


def test_example_two_front_at_cusp():
    h = EXAMPLES["example2"].helicoid()
    inv = helicoid.framed_invariants(h, helicoid.select_k(h), 0.0)
    cf = framed_curvature(inv)
    assert cf.JF == pytest.approx(0.0, abs=1e-12)
    assert immersion_predicates(cf)[:2] == (False, True)


@pytest.mark.parametrize("name", sorted(EXAMPLES))
def test_jf_is_area_density(name):
    h = EXAMPLES[name].helicoid()
    k = helicoid.select_k(h)
    rng = np.random.default_rng(11)
    for u, v in zip(rng.uniform(-1, 1, 100), rng.uniform(0, 2 * math.pi, 100)):
        cf = framed_curvature(helicoid.framed_invariants(h, k, float(u), float(v)))
        ru, rv, *_ = surface_partials(h, float(u), float(v))
        area = np.linalg.norm(np.cross(ru, rv))
        assert abs(abs(cf.JF) - area) <= 1e-9 * max(1.0, area)


@pytest.mark.parametrize("name", sorted(EXAMPLES))
def test_gfs_product_condition(name):
    h = EXAMPLES[name].helicoid()
    nu1, nu2 = helicoid.gfs_frames(h)
    for u in np.linspace(-1, 1, 9):
        inv = gfs_basic_invariants(h, nu1, nu2, float(u), 0.7).values()
        assert abs(inv.a1 * inv.b2 - inv.a2 * inv.b1) < 1e-10

"""Framed and generalised framed surfaces: basic invariants, integrability and
the framed curvature ``C^F = (J^F, K^F, H^F)``.

A framed surface carries an orthonormal pair ``(n, s)`` with ``n`` normal to
the surface; with ``t = n x s``::

    x_u = a1 s + b1 t            n_u = e1 s + f1 t,   s_u = -e1 n + g1 t
    x_v = a2 s + b2 t            n_v = e2 s + f2 t,   s_v = -e2 n + g2 t

A generalised framed surface (GFS) uses a pair ``(nu1, nu2)`` spanning the
normal direction, ``nu3 = nu1 x nu2`` and ``x_u = a1 nu1 + b1 nu2 + c1 nu3``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields, replace
from typing import Callable, NamedTuple, Sequence

import numpy as np

from helifront import jets
from helifront.jets import Jet

EPS_ZERO = 1e-9
MARGINAL = 1e-6


class FrameNotOrthonormal(ValueError):
    pass


class NotTangent(ValueError):
    pass


class NotStrictFramed(ValueError):
    pass


@dataclass(frozen=True)
class FrameInvariants:
    """Basic invariants at one point; entries are floats or jets in u or v."""

    a1: object
    b1: object
    c1: object
    a2: object
    b2: object
    c2: object
    e1: object
    f1: object
    g1: object
    e2: object
    f2: object
    g2: object
    gfs: bool = False

    @classmethod
    def framed(cls, a1, b1, a2, b2, e1, f1, g1, e2, f2, g2) -> "FrameInvariants":
        return cls(a1, b1, 0.0, a2, b2, 0.0, e1, f1, g1, e2, f2, g2, gfs=False)

    def values(self) -> "FrameInvariants":
        return replace(self, **{f.name: jets.value(getattr(self, f.name)) for f in fields(self) if f.name != "gfs"})

    @property
    def G(self) -> np.ndarray:
        v = self.values()
        if not self.gfs:
            return np.array([[v.a1, v.b1], [v.a2, v.b2]])
        return np.array([[v.a1, v.b1, v.c1], [v.a2, v.b2, v.c2]])

    def _skew(self, e, f, g) -> np.ndarray:
        e, f, g = jets.value(e), jets.value(f), jets.value(g)
        return np.array([[0.0, e, f], [-e, 0.0, g], [-f, -g, 0.0]])

    @property
    def F1(self) -> np.ndarray:
        return self._skew(self.e1, self.f1, self.g1)

    @property
    def F2(self) -> np.ndarray:
        return self._skew(self.e2, self.f2, self.g2)

    @property
    def alpha_r(self):
        return self.b1 * self.c2 - self.b2 * self.c1

    @property
    def beta_r(self):
        return -(self.a1 * self.c2 - self.a2 * self.c1)

    def as_dict(self) -> dict[str, float]:
        v = self.values()
        return {f.name: getattr(v, f.name) for f in fields(v) if f.name != "gfs"}


class FramedCurvature(NamedTuple):
    JF: float
    KF: float
    HF: float

    @property
    def norm(self) -> float:
        return math.sqrt(self.JF**2 + self.KF**2 + self.HF**2)


# vector helpers working on floats and jets alike


def dot(p: Sequence, q: Sequence):
    return p[0] * q[0] + p[1] * q[1] + p[2] * q[2]


def cross(p: Sequence, q: Sequence):
    return (
        p[1] * q[2] - p[2] * q[1],
        p[2] * q[0] - p[0] * q[2],
        p[0] * q[1] - p[1] * q[0],
    )


def _partials(F: Callable, u: float, v: float):
    """Value, u-partial and v-partial of a vector map of (u, v)."""
    fu = [jets.as_jet(c, u, 1) for c in F(Jet.variable(u, 1), v)]
    fv = [jets.as_jet(c, v, 1) for c in F(u, Jet.variable(v, 1))]
    val = np.array([c.value for c in fu])
    return val, np.array([c.deriv(1) for c in fu]), np.array([c.deriv(1) for c in fv])


def basic_invariants(x: Callable, n: Callable, s: Callable, u: float, v: float) -> FrameInvariants:
    """Basic invariants of the framed surface ``(x, n, s)`` at ``(u, v)``.

    The maps take ``(u, v)`` (either may be a jet) and return 3-sequences.
    """
    _, xu, xv = _partials(x, u, v)
    nn, nu, nv = _partials(n, u, v)
    ss, su, sv = _partials(s, u, v)
    if (
        abs(nn @ nn - 1.0) > 1e-10
        or abs(ss @ ss - 1.0) > 1e-10
        or abs(nn @ ss) > 1e-10
    ):
        raise FrameNotOrthonormal(f"(n, s) is not orthonormal at ({u}, {v})")
    if abs(xu @ nn) > 1e-9 or abs(xv @ nn) > 1e-9:
        raise NotTangent(f"n is not normal to the surface at ({u}, {v})")
    t = np.cross(nn, ss)
    return FrameInvariants.framed(
        xu @ ss, xu @ t, xv @ ss, xv @ t,
        nu @ ss, nu @ t, su @ t,
        nv @ ss, nv @ t, sv @ t,
    )


def gfs_basic_invariants(x: Callable, nu1: Callable, nu2: Callable, u: float, v: float) -> FrameInvariants:
    """Basic invariants of the generalised framed surface ``(x, nu1, nu2)``."""
    _, xu, xv = _partials(x, u, v)
    n1, n1u, n1v = _partials(nu1, u, v)
    n2, n2u, n2v = _partials(nu2, u, v)
    if abs(n1 @ n1 - 1.0) > 1e-10 or abs(n2 @ n2 - 1.0) > 1e-10 or abs(n1 @ n2) > 1e-10:
        raise FrameNotOrthonormal(f"(nu1, nu2) is not orthonormal at ({u}, {v})")
    n3 = np.cross(n1, n2)
    return FrameInvariants(
        xu @ n1, xu @ n2, xu @ n3,
        xv @ n1, xv @ n2, xv @ n3,
        n1u @ n2, n1u @ n3, n2u @ n3,
        n1v @ n2, n1v @ n3, n2v @ n3,
        gfs=True,
    )


def integrability_residual(field: Callable, u: float, v: float) -> np.ndarray:
    """Left-minus-right residuals of the integrability conditions at ``(u, v)``.

    ``field(u, v)`` returns :class:`FrameInvariants` and must accept a jet in
    either argument.  Six residuals for a framed surface; for a GFS three
    tangential, three normal and finally ``a1 b2 - a2 b1``.
    """
    du = field(Jet.variable(u, 1), v)
    dv = field(u, Jet.variable(v, 1))
    P = du.values()

    def d_u(name):
        return jets.coeff(getattr(du, name), 1)

    def d_v(name):
        return jets.coeff(getattr(dv, name), 1)

    a1, b1, c1, a2, b2, c2 = P.a1, P.b1, P.c1, P.a2, P.b2, P.c2
    e1, f1, g1, e2, f2, g2 = P.e1, P.f1, P.g1, P.e2, P.f2, P.g2
    normal = [
        (d_v("e1") - f1 * g2) - (d_u("e2") - f2 * g1),
        (d_v("f1") - e2 * g1) - (d_u("f2") - e1 * g2),
        (d_v("g1") - e1 * f2) - (d_u("g2") - e2 * f1),
    ]
    if not du.gfs:
        tangent = [
            (d_v("a1") - b1 * g2) - (d_u("a2") - b2 * g1),
            (d_v("b1") - a2 * g1) - (d_u("b2") - a1 * g2),
            (a1 * e2 + b1 * f2) - (a2 * e1 + b2 * f1),
        ]
        return np.array(tangent + normal)
    tangent = [
        (d_v("a1") - b1 * e2 - c1 * f2) - (d_u("a2") - b2 * e1 - c2 * f1),
        (d_v("b1") + a1 * e2 - c1 * g2) - (d_u("b2") + a2 * e1 - c2 * g1),
        (d_v("c1") + a1 * f2 + b1 * g2) - (d_u("c2") + a2 * f1 + b2 * g1),
    ]
    return np.array(tangent + normal + [a1 * b2 - a2 * b1])


def framed_curvature(inv: FrameInvariants) -> FramedCurvature:
    """``J^F = det(a, b)``, ``K^F = det(e, f)``,
    ``H^F = -(det(a, f) - det(b, e)) / 2`` (columns indexed by 1, 2)."""
    v = inv.values()
    if inv.gfs or abs(v.c1) > EPS_ZERO or abs(v.c2) > EPS_ZERO:
        raise NotStrictFramed("framed curvature needs strict framed invariants (c1 = c2 = 0)")
    JF = v.a1 * v.b2 - v.a2 * v.b1
    KF = v.e1 * v.f2 - v.e2 * v.f1
    HF = -0.5 * ((v.a1 * v.f2 - v.a2 * v.f1) - (v.b1 * v.e2 - v.b2 * v.e1))
    return FramedCurvature(JF, KF, HF)


class ImmersionReport(NamedTuple):
    surface_regular: bool
    legendre_immersion: bool
    marginal: bool = False


def immersion_predicates(cf: FramedCurvature) -> ImmersionReport:
    j, c = abs(cf.JF), cf.norm
    marginal = EPS_ZERO < j < MARGINAL or EPS_ZERO < c < MARGINAL
    return ImmersionReport(j > EPS_ZERO, c > EPS_ZERO, marginal)


INVARIANT_COLUMNS = ("a1", "b1", "a2", "b2", "e1", "f1", "g1", "e2", "f2", "g2")

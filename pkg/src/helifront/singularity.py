"""Cusp recognition for plane curves and the cuspidal-edge classification of
helicoidal surfaces.

Along ``x = 0`` the helicoid is, up to a diffeomorphism, the product of the
slice curve ``c(u) = (x cos(z/lam), x sin(z/lam))`` with a line, so its edge
type is the cusp type of ``c``.  Derivatives of ``c`` have the shape

    c^(n) = [[C11, -C21], [C21, C11]] (cos(z/lam), sin(z/lam))^T

and ``(C11, C21)`` has closed forms in ``ell, beta, a, b, x``.  Away from the
axis the surface is a gamma-edge whose type is the cusp type of the profile.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from enum import Enum
from typing import NamedTuple, Sequence

import numpy as np

from helifront.jets import Jet
from helifront.legendre import CurveJets
from helifront.roots import isolate_zeros

EPS_ZERO = 1e-9
MARGINAL = 1e-6
PROPORTIONAL_TOL = 1e-9


class JetOrderTooLow(ValueError):
    pass


class C5RequiresXZero(ValueError):
    pass


class MarginalWarning(UserWarning):
    pass


class CuspTag(str, Enum):
    REGULAR = "RegularPoint"
    CUSP_3_2 = "Cusp_3_2"
    CUSP_5_2 = "Cusp_5_2"
    CUSP_4_3 = "Cusp_4_3"
    CUSP_5_3 = "Cusp_5_3"
    DEGENERATE = "Degenerate"


class EdgeTag(str, Enum):
    REGULAR = "RegularSurfacePoint"
    GAMMA_EDGE = "GammaEdge"
    EDGE_3_2 = "CuspidalEdge_3_2"
    EDGE_5_2 = "CuspidalEdge_5_2"
    EDGE_4_3 = "CuspidalEdge_4_3"
    EDGE_5_3 = "CuspidalEdge_5_3"
    DEGENERATE = "Degenerate"


@dataclass(frozen=True)
class CuspClass:
    tag: CuspTag
    witnesses: dict = field(default_factory=dict)
    warning: str | None = None

    def as_dict(self) -> dict:
        out = {"tag": self.tag.value, "witnesses": self.witnesses}
        if self.warning:
            out["warning"] = self.warning
        return out


@dataclass(frozen=True)
class EdgeClass:
    tag: EdgeTag
    case: int | None = None
    criterion: str | None = None
    cusp: CuspClass | None = None
    witnesses: dict = field(default_factory=dict)
    warning: str | None = None

    @property
    def label(self) -> str:
        if self.tag is EdgeTag.GAMMA_EDGE and self.cusp is not None:
            return f"GammaEdge({self.cusp.tag.value})"
        return self.tag.value

    def as_dict(self) -> dict:
        out = {"tag": self.label, "case": self.case, "criterion": self.criterion, "witnesses": self.witnesses}
        if self.cusp is not None:
            out["cusp"] = self.cusp.as_dict()
        if self.warning:
            out["warning"] = self.warning
        return out


def _state(value: float) -> str:
    v = abs(value)
    if v <= EPS_ZERO:
        return "zero"
    if v < MARGINAL:
        return "marginal"
    return "nonzero"


def _normdet(p: np.ndarray, q: np.ndarray) -> tuple[float, float]:
    """Raw determinant and the determinant divided by the operand norms
    (the raw value when either operand vanishes)."""
    raw = float(p[0] * q[1] - p[1] * q[0])
    npn, nq = float(np.hypot(*p)), float(np.hypot(*q))
    if npn <= EPS_ZERO or nq <= EPS_ZERO:
        return raw, raw
    return raw, raw / (npn * nq)


def plane_derivatives(curve_jet: Sequence[Jet]) -> list[np.ndarray]:
    X, Y = curve_jet
    order = min(X.order, Y.order)
    if order < 5:
        raise JetOrderTooLow(f"cusp recognition needs jets of order 5, got {order}")
    return [np.array([X.deriv(k), Y.deriv(k)]) for k in range(6)]


def classify_plane_cusp(curve_jet) -> CuspClass:
    """Cusp type of a plane curve germ from its derivatives at the base point.

    ``curve_jet`` is a pair of jets (order >= 5) or a sequence of six
    derivative vectors ``d[0..5]``.
    """
    if isinstance(curve_jet[0], Jet):
        d = plane_derivatives(curve_jet)
    else:
        d = [np.asarray(v, dtype=float) for v in curve_jet]
        if len(d) < 6:
            raise JetOrderTooLow(f"cusp recognition needs derivatives up to order 5, got {len(d) - 1}")
    w: dict = {"speed": float(np.hypot(*d[1]))}

    def degenerate(what=None):
        if what is None:
            return CuspClass(CuspTag.DEGENERATE, w)
        msg = f"numerically marginal {what}"
        warnings.warn(msg, MarginalWarning, stacklevel=3)
        return CuspClass(CuspTag.DEGENERATE, w, msg)

    st = _state(w["speed"])
    if st == "nonzero":
        return CuspClass(CuspTag.REGULAR, w)
    if st == "marginal":
        return degenerate("first derivative")
    n2 = float(np.hypot(*d[2]))
    raw23, det23 = _normdet(d[2], d[3])
    w.update(second=n2, det23=raw23, det23_normalized=det23)
    st2 = _state(n2)
    if st2 == "nonzero":
        s = _state(det23)
        if s == "nonzero":
            return CuspClass(CuspTag.CUSP_3_2, w)
        if s == "marginal":
            return degenerate("det(c'', c''')")
        i = int(np.argmax(np.abs(d[2])))
        k = float(d[3][i] / d[2][i])
        w["k"] = k
        if np.hypot(*(d[3] - k * d[2])) > PROPORTIONAL_TOL * max(1.0, float(np.hypot(*d[3]))):
            return degenerate("proportionality c''' = k c''")
        raw, det = _normdet(d[2], 3.0 * d[5] - 10.0 * k * d[4])
        w.update(det25=raw, det25_normalized=det)
        s = _state(det)
        if s == "nonzero":
            return CuspClass(CuspTag.CUSP_5_2, w)
        if s == "marginal":
            return degenerate("det(c'', 3c^(5) - 10k c^(4))")
        return degenerate()
    if st2 == "marginal":
        return degenerate("second derivative")
    raw34, det34 = _normdet(d[3], d[4])
    w.update(third=float(np.hypot(*d[3])), det34=raw34, det34_normalized=det34)
    s = _state(det34)
    if s == "nonzero":
        return CuspClass(CuspTag.CUSP_4_3, w)
    if s == "marginal":
        return degenerate("det(c''', c^(4))")
    raw35, det35 = _normdet(d[3], d[5])
    w.update(det35=raw35, det35_normalized=det35)
    s = _state(det35)
    if s == "nonzero":
        return CuspClass(CuspTag.CUSP_5_3, w)
    if s == "marginal":
        return degenerate("det(c''', c^(5))")
    return degenerate()


# closed-form slice derivatives ------------------------------------------------


class SliceJetMatrix(NamedTuple):
    n: int
    C11: float
    C21: float
    cos: float
    sin: float

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.C11, -self.C21], [self.C21, self.C11]])

    def derivative(self) -> np.ndarray:
        """``c^(n)`` at the base point."""
        return self.matrix @ np.array([self.cos, self.sin])


def slice_matrix_from_jets(cj: CurveJets, lam: float, n: int) -> SliceJetMatrix:
    """First column ``(C11, C21)`` of the n-th slice derivative, n = 1..5."""
    if not 1 <= n <= 5:
        raise ValueError(f"n must lie in 1..5, got {n}")
    need = max(0, n - 1)
    if min(cj.ell.order, cj.beta.order) < need:
        raise JetOrderTooLow(f"C^{n} needs curvature jets of order {need}")
    x, a, b = cj.x.value, cj.a.value, cj.b.value
    l0, l1, l2, l3 = (cj.ell.deriv(k) if k <= cj.ell.order else 0.0 for k in range(4))
    B0, B1, B2, B3, B4 = (cj.beta.deriv(k) if k <= cj.beta.order else 0.0 for k in range(5))
    L = lam
    th = cj.z.value / lam
    c, s = math.cos(th), math.sin(th)
    if n == 1:
        C = (-B0 * b, B0 * x * a / L)
    elif n == 2:
        C = (
            -b * B1 - l0 * a * B0 - B0**2 * a**2 * x / L**2,
            -(-x * a * B1 + 2 * a * b * B0**2 + l0 * x * b * B0) / L,
        )
    elif n == 3:
        C = (
            -2 * l0 * a * B1 - b * B2 - l1 * a * B0 + l0**2 * b * B0
            + (-3 * B0 * B1 * a**2 * x + 3 * B0**2 * a * b * l0 * x + 3 * B0**3 * a**2 * b) / L**2,
            (
                -6 * a * b * B0 * B1 - 2 * x * b * l0 * B1 + x * a * B2 + 3 * b**2 * l0 * B0**2
                - 3 * a**2 * l0 * B0**2 - l1 * x * b * B0 - x * a * l0**2 * B0
            ) / L
            - B0**3 * a**3 * x / L**3,
        )
    elif n == 4:
        C = (
            -3 * l1 * a * B1 + 3 * l0**2 * b * B1 - 3 * l0 * a * B2 - b * B3 - l2 * a * B0
            + 3 * l0 * l1 * b * B0 + l0**3 * a * B0
            + (
                -3 * B1**2 * a**2 * x - 4 * B0 * B2 * a**2 * x + 14 * B0 * B1 * a * l0 * b * x
                + 18 * B0**2 * B1 * a**2 * b - 3 * B0**2 * b**2 * l0**2 * x + 4 * B0**2 * a**2 * l0**2 * x
                + 4 * B0**2 * a * b * l1 * x - 12 * B0**3 * a * b**2 * l0 + 6 * B0**3 * a**3 * l0
            ) / L**2
            + B0**4 * a**4 * x / L**4,
            (
                14 * l0 * b**2 * B0 * B1 - 14 * a**2 * l0 * B0 * B1 - 6 * a * b * B1**2 - 8 * a * b * B0 * B2
                - 3 * l0**2 * a * x * B1 - 3 * x * b * l1 * B1 - 3 * x * b * l0 * B2 + x * a * B3
                + 14 * a * b * l0**2 * B0**2 + 4 * b**2 * l1 * B0**2 - 4 * a**2 * l1 * B0**2
                - l2 * x * b * B0 - 3 * l1 * x * l0 * a * B0 + x * l0**3 * B0 * b
            ) / L
            + (-6 * B0**2 * B1 * a**3 * x + 4 * B0**4 * a**3 * b + 6 * B0**3 * a**2 * x * l0 * b) / L**3,
        )
    else:
        if abs(x) > EPS_ZERO:
            raise C5RequiresXZero(f"the closed form of C^5 omits terms carrying x; x = {x}")
        C = (
            -b * B0 * l0**4 + 4 * a * l0**3 * B1 + 6 * a * B0 * l0**2 * l1 + 12 * b * l0 * B1 * l1
            + 3 * b * B0 * l1**2 + 6 * b * l0**2 * B2 - 6 * a * l1 * B2 + 4 * b * B0 * l0 * l2
            - 4 * a * B1 * l2 - 4 * a * l0 * B3 - a * B0 * l3 - b * B4
            + (
                -60 * a**2 * b * B0**3 * l0**2 + 15 * b**3 * B0**3 * l0**2 + 50 * a**3 * B0**2 * l0 * B1
                - 100 * a * b**2 * B0**2 * l0 * B1 + 45 * a**2 * b * B0 * B1**2 + 10 * a**3 * B0**3 * l1
                - 20 * a * b**2 * B0**3 * l1 + 30 * a**2 * b * B0**2 * B2
            ) / L**2
            - 5 * a**4 * b * B0**5 / L**4,
            (
                15 * a**2 * B0**2 * l0**3 - 15 * b**2 * B0**2 * l0**3 + 90 * a * b * B0 * l0**2 * B1
                - 20 * a**2 * l0 * B1**2 + 20 * b**2 * l0 * B1**2 + 50 * a * b * B0**2 * l0 * l1
                - 25 * a**2 * B0 * B1 * l1 + 25 * b**2 * B0 * B1 * l1 - 25 * a**2 * B0 * l0 * B2
                + 25 * b**2 * B0 * l0 * B2 - 20 * a * b * B1 * B2 - 5 * a**2 * B0**2 * l2
                + 5 * b**2 * B0**2 * l2 - 10 * a * b * B0 * B3
            ) / L
            + (10 * a**4 * B0**4 * l0 - 30 * a**2 * b**2 * B0**4 * l0 + 40 * a**3 * b * B0**3 * B1) / L**3,
        )
    return SliceJetMatrix(n, float(C[0]), float(C[1]), c, s)


def slice_jet_closed_form(h, u0: float, n: int) -> SliceJetMatrix:
    """Closed-form ``(C11, C21)`` of ``c^(n)(u0)`` for n = 2..5 (n = 5 needs x(u0) = 0)."""
    if not 2 <= n <= 5:
        raise ValueError(f"n must lie in 2..5, got {n}")
    return slice_matrix_from_jets(h.jets(u0, 4), h.lam, n)


def det_identity_check(x11: float, x21: float, y11: float, y21: float, v1: float, v2: float) -> float:
    """``|det(X v, Y v) - (v1^2 + v2^2) det[[x11, y11], [x21, y21]]|`` for the
    rotation-scaling matrices X, Y with first columns (x11, x21), (y11, y21)."""
    p = (x11 * v1 - x21 * v2, x21 * v1 + x11 * v2)
    q = (y11 * v1 - y21 * v2, y21 * v1 + y11 * v2)
    lhs = p[0] * q[1] - p[1] * q[0]
    rhs = (v1 * v1 + v2 * v2) * (x11 * y21 - x21 * y11)
    return abs(lhs - rhs)


# helicoid classification ------------------------------------------------------


def singular_case(cj: CurveJets) -> int:
    """0 at regular points, otherwise the case 1, 2 or 3 of the singular set."""
    beta0 = _state(cj.beta.value) == "zero"
    axis = _state(cj.x.value) == "zero" and _state(cj.b.value) == "zero"
    if beta0 and not axis:
        return 1
    if axis and not beta0:
        return 2
    if axis and beta0:
        return 3
    return 0


def slice_derivatives(cj: CurveJets, lam: float, order: int = 5) -> list[np.ndarray]:
    """``c^(n)`` for n = 0..order computed by jet arithmetic on x and z."""
    th = cj.z / lam
    s, c = th.sin_cos()
    X, Y = cj.x * c, cj.x * s
    return [np.array([X.deriv(n), Y.deriv(n)]) for n in range(order + 1)]


def classify_edge(cj: CurveJets, lam: float) -> EdgeClass:
    """Edge type of the helicoid at the base point of ``cj`` (curve jets of order >= 4)."""
    if cj.x.order < 5 or cj.z.order < 5 or cj.beta.order < 4:
        raise JetOrderTooLow("edge classification needs profile jets of order 5")
    x, a, b = cj.x.value, cj.a.value, cj.b.value
    B0, B1, B2 = (cj.beta.deriv(k) for k in range(3))
    l0, l1 = cj.ell.deriv(0), cj.ell.deriv(1)
    w: dict = {
        "x": x, "a": a, "b": b,
        "beta": B0, "beta_dot": B1, "beta_ddot": B2,
        "ell": l0, "ell_dot": l1,
        "ell_beta_dot": l0 * B1,
    }
    nu = abs(B0) * math.hypot(x, b * lam)
    w["normal_norm"] = nu
    case = singular_case(cj)

    def out(tag, criterion=None, cusp=None, what=None):
        msg = None
        if what is not None:
            msg = f"numerically marginal {what}"
            warnings.warn(msg, MarginalWarning, stacklevel=3)
        return EdgeClass(tag, case or None, criterion, cusp, w, msg)

    st = _state(nu)
    if st == "nonzero":
        return out(EdgeTag.REGULAR)
    if st == "marginal":
        return out(EdgeTag.DEGENERATE, what="|r_u x r_v|")
    sx = _state(x)
    if sx == "nonzero":
        gamma = [cj.x.derivatives(), cj.z.derivatives()]
        cusp = classify_plane_cusp([np.array([gamma[0][k], gamma[1][k]]) for k in range(6)])
        return out(EdgeTag.GAMMA_EDGE, cusp=cusp)
    if sx == "marginal":
        return out(EdgeTag.DEGENERATE, what="x")
    d = slice_derivatives(cj, lam)
    w["determinants"] = {
        "c2_c3": float(d[2][0] * d[3][1] - d[2][1] * d[3][0]),
        "c3_c4": float(d[3][0] * d[4][1] - d[3][1] * d[4][0]),
        "c3_c5": float(d[3][0] * d[5][1] - d[3][1] * d[5][0]),
        "c2_norm": float(np.hypot(*d[2])),
        "c3_norm": float(np.hypot(*d[3])),
    }
    sb, sB = _state(b), _state(B0)
    if "marginal" in (sb, sB):
        return out(EdgeTag.DEGENERATE, what="b or beta")
    if sB == "zero" and sb == "nonzero":
        s = _state(l0 * B1)
        if s == "nonzero":
            return out(EdgeTag.EDGE_5_2, "I")
        if s == "marginal":
            return out(EdgeTag.DEGENERATE, "I", what="ell * beta_dot")
        w["c2_zero_c3_nonzero"] = _state(B1) == "zero" and _state(B2) != "zero"
        return out(EdgeTag.DEGENERATE, "I")
    if sB == "nonzero" and sb == "zero":
        s = _state(l0)
        if s == "nonzero":
            return out(EdgeTag.EDGE_3_2, "II")
        if s == "marginal":
            return out(EdgeTag.DEGENERATE, "II", what="ell")
        s = _state(l1)
        if s == "nonzero":
            return out(EdgeTag.EDGE_4_3, "II")
        if s == "marginal":
            return out(EdgeTag.DEGENERATE, "II", what="ell_dot")
        return out(EdgeTag.DEGENERATE, "II")
    s = _state(l0 * B1)
    if s == "nonzero":
        return out(EdgeTag.EDGE_5_3, "III")
    if s == "marginal":
        return out(EdgeTag.DEGENERATE, "III", what="ell * beta_dot")
    return out(EdgeTag.DEGENERATE, "III")


def classify_helicoid_singularity(h, u0: float) -> EdgeClass:
    return classify_edge(h.jets(u0, 5), h.lam)


class SingularPoint(NamedTuple):
    u_star: float
    case: int
    edge: EdgeClass

    def as_dict(self) -> dict:
        out = {"u_star": self.u_star, "case": self.case}
        out.update(self.edge.as_dict())
        out["case"] = self.case
        return out


def singular_locus_scan(h, interval=None, n_grid: int = 257) -> list[SingularPoint]:
    """Singular parameters of the helicoid (zeros of beta, joint zeros of x and b)."""
    if n_grid < 64:
        raise ValueError(f"n_grid must be >= 64, got {n_grid}")
    lo, hi = interval or h.domain

    def beta(t):
        return h.jets(t, 0).beta.value

    def dbeta(t):
        return h.jets(t, 1).beta.deriv(1)

    def g(t):
        cj = h.jets(t, 0)
        return cj.x.value**2 + cj.b.value**2

    def dg(t):
        cj = h.jets(t, 1)
        return 2.0 * (cj.x.value * cj.x.deriv(1) + cj.b.value * cj.b.deriv(1))

    found = isolate_zeros(beta, (lo, hi), n_grid, df=dbeta, zero_tol=EPS_ZERO)
    found += isolate_zeros(g, (lo, hi), n_grid, df=dg, zero_tol=EPS_ZERO**2)
    points: list[float] = []
    for p in sorted(found):
        if not points or p - points[-1] > 1e-8:
            points.append(p)
    out = []
    for p in points:
        cj = h.jets(p, 5)
        out.append(SingularPoint(p, singular_case(cj), classify_edge(cj, h.lam)))
    return out

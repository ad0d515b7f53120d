"""Helicoidal surfaces ``r(u, v) = (x cos v, x sin v, z + lam v)`` of a frontal.

Two frames are provided.  The generalised frame ``nu1 = (a cos v, a sin v, b)``,
``nu2 = (-sin v, cos v, 0)`` always exists.  The strict frame

    n = (k2 a cos v + k1 sin v, k2 a sin v - k1 cos v, k2 b)
    s = (-b cos v, -b sin v, a)

needs a smooth unit pair ``(k1, k2)`` with ``-k1 x + k2 b lam = 0``.  Such a
pair is built from ``(b lam, x)`` by dividing out the common factor
``(u - u*)^m`` at joint zeros and normalising; the slice-curve pair
``(l1, l2)`` is built the same way from ``(x a, -b lam)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, NamedTuple

import numpy as np

from helifront import jets
from helifront.framed import FrameInvariants, FramedCurvature
from helifront.jets import Jet
from helifront.legendre import CurveJets, LegendreCurve
from helifront.roots import isolate_zeros, vanishing_order

EPS_ZERO = 1e-9
DEFLATE_RADIUS = 0.05
ZERO_SCAN = 257

_SN, _SW = np.polynomial.legendre.leggauss(16)
_SN = 0.5 * (_SN + 1.0)
_SW = 0.5 * _SW


class NoSmoothSelection(ValueError):
    pass


class PolarDataUndefined(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class HelicoidalSurface:
    profile: LegendreCurve
    lam: float

    def __post_init__(self):
        if not abs(self.lam) > 1e-12:
            raise ValueError("the pitch lambda must be nonzero")

    @property
    def domain(self) -> tuple[float, float]:
        return self.profile.domain

    def jets(self, u0: float, order: int) -> CurveJets:
        return self.profile.jets(u0, order)

    def fields(self, u) -> CurveJets:
        """x, z, a, b, ell, beta at ``u`` (floats, or jets when u is a jet)."""
        if isinstance(u, Jet):
            cj = self.profile.jets(u.value, u.order)
            return cj if u.is_identity() else CurveJets(*(j.compose(u) for j in cj))
        return CurveJets(*(j.value for j in self.profile.jets(float(u), 0)))

    def __call__(self, u, v):
        x, z = self.profile.x(u), self.profile.z(u)
        return (x * jets.cos(v), x * jets.sin(v), z + self.lam * v)


# evaluation -------------------------------------------------------------------


class HelicoidPoint(NamedTuple):
    point: np.ndarray
    r_u: np.ndarray
    r_v: np.ndarray
    normal: np.ndarray
    nu1: np.ndarray
    nu2: np.ndarray
    coeff_nu1: float
    coeff_nu2: float


def helicoid_eval(h: HelicoidalSurface, u: float, v: float) -> HelicoidPoint:
    """Point, partials and ``r_u x r_v = -beta x nu1 + beta b lam nu2``."""
    p = h.fields(u)
    c, s = math.cos(v), math.sin(v)
    point = np.array([p.x * c, p.x * s, p.z + h.lam * v])
    r_u = p.beta * np.array([-p.b * c, -p.b * s, p.a])
    r_v = np.array([-p.x * s, p.x * c, h.lam])
    nu1, nu2 = np.array([p.a * c, p.a * s, p.b]), np.array([-s, c, 0.0])
    return HelicoidPoint(point, r_u, r_v, np.cross(r_u, r_v), nu1, nu2, -p.beta * p.x, p.beta * p.b * h.lam)


def gfs_frames(h: HelicoidalSurface) -> tuple[Callable, Callable]:
    def nu1(u, v):
        a, b = h.profile.a(u), h.profile.b(u)
        return (a * jets.cos(v), a * jets.sin(v), b)

    def nu2(u, v):
        return (-jets.sin(v), jets.cos(v), 0.0)

    return nu1, nu2


def gfs_invariant_field(h: HelicoidalSurface) -> Callable:
    """``(u, v) -> FrameInvariants`` of the generalised frame; u may be a jet."""

    def inv(u, v):
        p = h.fields(u)
        lam = h.lam
        return FrameInvariants(
            0.0, 0.0, p.beta,
            lam * p.b, p.x, lam * p.a,
            0.0, p.ell, 0.0,
            p.a, 0.0, p.b,
            gfs=True,
        )

    return inv


def gfs_invariants(h: HelicoidalSurface, u: float, v: float = 0.0) -> FrameInvariants:
    return gfs_invariant_field(h)(u, v).values()


# smooth unit pairs ------------------------------------------------------------


class UnitPair:
    """A smooth unit vector field ``(first, second)`` of u, jet-evaluable."""

    strategy = "user"
    common_zeros: tuple[tuple[float, int], ...] = ()

    def jets(self, u0: float, order: int) -> tuple[Jet, Jet]:
        raise NotImplementedError

    def _component(self, idx: int, u):
        if isinstance(u, Jet):
            j = self.jets(u.value, u.order)[idx]
            return j if u.is_identity() else j.compose(u)
        if isinstance(u, np.ndarray):
            return np.vectorize(lambda t: self.jets(float(t), 0)[idx].value, otypes=[float])(u)
        return self.jets(float(u), 0)[idx].value

    def first(self, u):
        return self._component(0, u)

    def second(self, u):
        return self._component(1, u)

    def with_derivative(self, u):
        """``(p1, p2, p1', p2')`` at u; jets of the same order as u when u is a jet."""
        if isinstance(u, Jet):
            j1, j2 = self.jets(u.value, u.order + 1)
            out = (j1.truncate(u.order), j2.truncate(u.order), j1.derivative(), j2.derivative())
            return out if u.is_identity() else tuple(j.compose(u) for j in out)
        j1, j2 = self.jets(float(u), 1)
        return j1.value, j2.value, j1.deriv(1), j2.deriv(1)


class ExplicitPair(UnitPair):
    def __init__(self, first: Callable, second: Callable):
        from helifront.expr import parse

        self._f = parse(first) if isinstance(first, str) else first
        self._g = parse(second) if isinstance(second, str) else second

    def jets(self, u0, order):
        u = Jet.variable(u0, order)
        return jets.as_jet(self._f(u), u0, order), jets.as_jet(self._g(u), u0, order)


class DeflatedPair(UnitPair):
    """Normalised ``(P, Q)`` with common factors ``(u - u*)^m`` divided out.

    Near a joint zero the quotient is evaluated through the integral form of
    the Taylor remainder,

        P(u) / (u - u*)^m = 1/(m-1)! int_0^1 (1-s)^(m-1) P^(m)(u* + s (u - u*)) ds,

    which stays well conditioned as u approaches u*.
    """

    strategy = "default"

    def __init__(self, h: HelicoidalSurface, P: Callable, Q: Callable, zeros):
        self.h, self.P, self.Q = h, P, Q
        self.common_zeros = tuple(zeros)
        radii = []
        for i, (ui, _) in enumerate(self.common_zeros):
            gaps = [abs(ui - uj) for j, (uj, _) in enumerate(self.common_zeros) if j != i]
            radii.append(min([DEFLATE_RADIUS] + [0.5 * g for g in gaps]))
        self._radii = radii
        self._cache: dict = {}

    def _pq_coeffs(self, u0: float, order: int) -> tuple[tuple, tuple]:
        cj = self.h.jets(u0, order)
        return self.P(cj, self.h.lam).coeffs, self.Q(cj, self.h.lam).coeffs

    def _deflated(self, us: float, m: int, u0: float, order: int) -> tuple[Jet, Jet]:
        if m + order > jets.MAX_ORDER - 1:
            raise jets.OrderOutOfRange(
                f"deflation by (u - u*)^{m} leaves jets up to order {jets.MAX_ORDER - 1 - m}"
            )
        hstep = u0 - us
        if hstep == 0.0:
            p, q = self._pq_coeffs(us, m + order)
            return Jet(u0, p[m:]), Jet(u0, q[m:])
        P = np.zeros(order + 1)
        Q = np.zeros(order + 1)
        for s, w in zip(_SN, _SW):
            p, q = self._pq_coeffs(us + s * hstep, m + order)
            for j in range(order + 1):
                scale = w * (1.0 - s) ** (m - 1) * s**j * math.perm(m + j, m)
                P[j] += scale * p[m + j]
                Q[j] += scale * q[m + j]
        f = 1.0 / math.factorial(m - 1)
        return Jet(u0, P * f), Jet(u0, Q * f)

    def jets(self, u0: float, order: int) -> tuple[Jet, Jet]:
        key = (float(u0), order)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        near = [
            i for i, (us, _) in enumerate(self.common_zeros) if abs(u0 - us) < self._radii[i]
        ]
        sign = 1.0
        if near:
            i = near[0]
            us, m = self.common_zeros[i]
            P, Q = self._deflated(us, m, u0, order)
        else:
            i = -1
            p, q = self._pq_coeffs(u0, order)
            P, Q = Jet(u0, p), Jet(u0, q)
        for j, (uj, mj) in enumerate(self.common_zeros):
            if j != i and mj % 2 and u0 < uj:
                sign = -sign
        norm2 = P * P + Q * Q
        if norm2.value <= EPS_ZERO**2:
            raise NoSmoothSelection(f"the pair vanishes at u = {u0} outside any located joint zero")
        norm = norm2.sqrt()
        out = ((P / norm) * sign, (Q / norm) * sign)
        if len(self._cache) > 4096:
            self._cache.clear()
        self._cache[key] = out
        return out


def joint_zeros(h: HelicoidalSurface, interval=None, n_grid: int = ZERO_SCAN) -> list[float]:
    """Parameters where x and b vanish together."""
    lo, hi = interval or h.domain

    def g(t):
        p = h.fields(t)
        return p.x * p.x + p.b * p.b

    def dg(t):
        cj = h.jets(t, 1)
        return 2.0 * (cj.x.value * cj.x.deriv(1) + cj.b.value * cj.b.deriv(1))

    return isolate_zeros(g, (lo, hi), n_grid, df=dg, zero_tol=EPS_ZERO**2)


def _deflation_orders(h: HelicoidalSurface, P, Q, zeros) -> list[tuple[float, int]]:
    out = []
    for us in zeros:
        cj = h.jets(us, jets.MAX_ORDER - 1)
        mp = vanishing_order(P(cj, h.lam).coeffs)
        mq = vanishing_order(Q(cj, h.lam).coeffs)
        orders = [m for m in (mp, mq) if m is not None]
        if not orders:
            raise NoSmoothSelection(f"no finite vanishing order at u = {us}")
        m = min(orders)
        if m > 0:
            out.append((us, m))
    return out


class FrameSelection(DeflatedPair):
    """Unit pair ``(k1, k2)`` with ``-k1 x + k2 b lam = 0``."""

    k1 = UnitPair.first
    k2 = UnitPair.second


class UserFrameSelection(ExplicitPair):
    k1 = UnitPair.first
    k2 = UnitPair.second


class SliceSelection(DeflatedPair):
    """Unit pair ``(l1, l2)`` with ``l1 b lam + l2 x a = 0``."""

    l1 = UnitPair.first
    l2 = UnitPair.second


class UserSliceSelection(ExplicitPair):
    l1 = UnitPair.first
    l2 = UnitPair.second


def _k_P(cj, lam):
    return cj.b * lam


def _k_Q(cj, lam):
    return cj.x


def _l_P(cj, lam):
    return cj.x * cj.a


def _l_Q(cj, lam):
    return cj.b * (-lam)


def select_k(h: HelicoidalSurface) -> FrameSelection:
    """Default smooth ``(k1, k2)``: ``(b lam, x)`` normalised, deflated at joint zeros."""
    zeros = _deflation_orders(h, _k_P, _k_Q, joint_zeros(h))
    return FrameSelection(h, _k_P, _k_Q, zeros)


def select_l(h: HelicoidalSurface) -> SliceSelection:
    """Default smooth ``(l1, l2)``: ``(x a, -b lam)`` normalised, deflated at joint zeros."""
    zeros = _deflation_orders(h, _l_P, _l_Q, joint_zeros(h))
    return SliceSelection(h, _l_P, _l_Q, zeros)


def selection_residuals(h: HelicoidalSurface, k: UnitPair, grid, kind: str = "k") -> tuple[float, float]:
    """Largest ``|k1^2 + k2^2 - 1|`` and largest constraint residual on ``grid``."""
    dn = dc = 0.0
    for u in np.atleast_1d(grid):
        p = h.fields(float(u))
        k1, k2 = k.first(float(u)), k.second(float(u))
        dn = max(dn, abs(k1 * k1 + k2 * k2 - 1.0))
        if kind == "k":
            dc = max(dc, abs(-k1 * p.x + k2 * p.b * h.lam))
        else:
            dc = max(dc, abs(k1 * p.b * h.lam + k2 * p.x * p.a))
    return dn, dc


# the strict frame -------------------------------------------------------------


def frame_vectors(h: HelicoidalSurface, k: UnitPair) -> tuple[Callable, Callable, Callable]:
    """Callables ``n(u, v)``, ``s(u, v)``, ``t(u, v) = n x s``."""

    def n(u, v):
        a, b = h.profile.a(u), h.profile.b(u)
        k1, k2 = k.first(u), k.second(u)
        c, s = jets.cos(v), jets.sin(v)
        return (k2 * a * c + k1 * s, k2 * a * s - k1 * c, k2 * b)

    def s(u, v):
        a, b = h.profile.a(u), h.profile.b(u)
        return (-b * jets.cos(v), -b * jets.sin(v), a)

    def t(u, v):
        a, b = h.profile.a(u), h.profile.b(u)
        k1, k2 = k.first(u), k.second(u)
        c, sn = jets.cos(v), jets.sin(v)
        return (k2 * sn - k1 * a * c, -k2 * c - k1 * a * sn, -k1 * b)

    return n, s, t


def framed_invariant_field(h: HelicoidalSurface, k: UnitPair) -> Callable:
    """``(u, v) -> FrameInvariants`` of ``(r, n, s)``; u may be a jet."""

    def inv(u, v):
        p = h.fields(u)
        k1, k2, k1d, k2d = k.with_derivative(u)
        lam = h.lam
        return FrameInvariants.framed(
            p.beta, 0.0,
            lam * p.a, -k2 * p.x - k1 * p.b * lam,
            k2 * p.ell, k2 * k1d - k1 * k2d, k1 * p.ell,
            -k1 * p.b, -p.a, k2 * p.b,
        )

    return inv


def framed_invariants(h: HelicoidalSurface, k: UnitPair, u: float, v: float = 0.0) -> FrameInvariants:
    return framed_invariant_field(h, k)(u, v).values()


class HelicoidCurvature(NamedTuple):
    JF: float
    KF: float
    HF: float
    KF_printed: float

    @property
    def framed(self) -> FramedCurvature:
        return FramedCurvature(self.JF, self.KF, self.HF)


def helicoid_curvature(h: HelicoidalSurface, k: UnitPair, u: float) -> HelicoidCurvature:
    """Closed-form ``(J^F, K^F, H^F)`` of the helicoid in the strict frame.

    ``K^F = e1 f2 - e2 f1`` evaluates to ``-(k2' b + k2 ell a)``;
    ``KF_printed`` carries the opposite-sign expression for comparison.
    """
    p = h.fields(u)
    k1, k2, k1d, k2d = k.with_derivative(u)
    lam = h.lam
    w = k2 * p.x + k1 * p.b * lam
    JF = -p.beta * w
    KF_printed = k2d * p.b + k2 * p.ell * p.a
    HF = -0.5 * (-p.beta * p.a - lam * p.a * (k2 * k1d - k1 * k2d) - w * k2 * p.ell)
    return HelicoidCurvature(JF, -KF_printed, HF, KF_printed)


# slice curve ------------------------------------------------------------------


def slice_curve(h: HelicoidalSurface, u, variant: str = "s"):
    """``s = (x cos(z/lam), -x sin(z/lam))``; variant ``c`` flips the second coordinate."""
    if variant not in ("s", "c"):
        raise ValueError(f"variant must be 's' or 'c', got {variant!r}")
    x, z = h.profile.x(u), h.profile.z(u)
    th = z / h.lam
    first, second = x * jets.cos(th), x * jets.sin(th)
    return (first, -second) if variant == "s" else (first, second)


def slice_normal(h: HelicoidalSurface, sel: UnitPair, u):
    """``nu^s = (-l2 sin(z/lam) - l1 cos(z/lam), -l2 cos(z/lam) + l1 sin(z/lam))``."""
    th = h.profile.z(u) / h.lam
    l1, l2 = sel.first(u), sel.second(u)
    c, s = jets.cos(th), jets.sin(th)
    return (-l2 * s - l1 * c, -l2 * c + l1 * s)


@dataclass(frozen=True)
class SliceLegendre:
    """Legendre data of the slice curve at one parameter value.

    ``ell_s`` and ``beta_s`` satisfy ``s' = beta_s mu_s`` and
    ``nu_s' = ell_s mu_s``; the ``*_printed`` values drop the ``1/lam``
    factors and are kept for comparison.
    """

    u: float
    l1: float
    l2: float
    nu_s: np.ndarray
    mu_s: np.ndarray
    ell_s: float
    beta_s: float
    ell_s_printed: float
    beta_s_printed: float
    frenet_residual: float
    normal_residual: float
    printed_frenet_residual: float
    printed_normal_residual: float
    constraint_residual: float
    selection: UnitPair = field(repr=False, compare=False, default=None)


def slice_legendre(h: HelicoidalSurface, u: float, sel: UnitPair | None = None) -> SliceLegendre:
    sel = sel if sel is not None else select_l(h)
    U = Jet.variable(float(u), 1)
    s1, s2 = slice_curve(h, U, "s")
    n1, n2 = slice_normal(h, sel, U)
    l1, l2, l1d, l2d = sel.with_derivative(float(u))
    p = h.fields(float(u))
    lam = h.lam
    nu = np.array([n1.value, n2.value])
    mu = np.array([-nu[1], nu[0]])
    ds = np.array([s1.deriv(1), s2.deriv(1)])
    dnu = np.array([n1.deriv(1), n2.deriv(1)])
    ell_s = -p.a * p.beta / lam + l1 * l2d - l1d * l2
    beta_s = (l1 * p.x * p.a / lam - l2 * p.b) * p.beta
    ell_p = -p.a * p.beta + l1 * l2d - l1d * l2
    beta_p = (l1 * p.x * p.a - l2 * p.b) * p.beta
    return SliceLegendre(
        float(u), l1, l2, nu, mu, ell_s, beta_s, ell_p, beta_p,
        float(np.linalg.norm(ds - beta_s * mu)),
        float(np.linalg.norm(dnu - ell_s * mu)),
        float(np.linalg.norm(ds - beta_p * mu)),
        float(np.linalg.norm(dnu - ell_p * mu)),
        l1 * p.b * lam + l2 * p.x * p.a,
        sel,
    )


# parallels --------------------------------------------------------------------


def parallel_surface(h: HelicoidalSurface, k: UnitPair, t_tilde: float, u: float, v: float) -> np.ndarray:
    n, _, _ = frame_vectors(h, k)
    return np.array(h(u, v), dtype=float) + t_tilde * np.array(n(u, v), dtype=float)


def parallel_slice(h: HelicoidalSurface, sel: UnitPair, t: float, u: float) -> np.ndarray:
    return np.array(slice_curve(h, u, "s"), dtype=float) + t * np.array(slice_normal(h, sel, u), dtype=float)


@dataclass(frozen=True)
class ParallelData:
    t_tilde: float
    t: float
    A: float
    theta: float
    B: float
    tau: float
    M: np.ndarray
    sigma: float


def parallel_data(h: HelicoidalSurface, k: UnitPair, sel: UnitPair, t_tilde: float, u: float) -> ParallelData:
    """Polar data of the offset profile and the matching slice offset ``t(u)``.

    ``t l = t_tilde (-k2 a, k1)`` fixes ``t = sigma t_tilde sqrt(1 - k2^2 b^2)``.
    """
    p = h.fields(u)
    k1, k2 = k.first(u), k.second(u)
    l1, l2 = sel.first(u), sel.second(u)
    X, Y = p.x + t_tilde * k2 * p.a, t_tilde * k1
    A = math.hypot(X, Y)
    if A < EPS_ZERO:
        raise PolarDataUndefined(f"offset profile passes through the axis at u = {u}")
    theta = math.atan2(Y, X)
    sigma = 1.0 if l1 * (-k2 * p.a) + l2 * k1 >= 0.0 else -1.0
    t = sigma * t_tilde * math.sqrt(max(0.0, 1.0 - (k2 * p.b) ** 2))
    B = math.hypot(p.x - t * l1, -t * l2)
    tau = math.atan2(-t * l2, p.x - t * l1)
    phi = t_tilde * k2 * p.b / h.lam
    M = np.array([[math.cos(phi), math.sin(phi)], [-math.sin(phi), math.cos(phi)]])
    return ParallelData(t_tilde, t, A, theta, B, tau, M, sigma)


def rotation_relation_residual(
    h: HelicoidalSurface, k: UnitPair, sel: UnitPair, t_tilde: float, u: float
) -> float:
    """``|s[r^t_tilde](u) - M(t_tilde, u) s^t(u)|``.

    The left side is read off the parallel surface itself: the point of the
    helix ``v -> r^t_tilde(u, v)`` lying in the plane of zero height.
    """
    pd = parallel_data(h, k, sel, t_tilde, u)
    p = h.fields(u)
    k2 = k.second(u)
    v_star = -(p.z + t_tilde * k2 * p.b) / h.lam
    lhs = parallel_surface(h, k, t_tilde, u, v_star)[:2]
    rhs = pd.M @ parallel_slice(h, sel, pd.t, u)
    return float(np.linalg.norm(lhs - rhs))

"""Plane Legendre curves ``(gamma, nu)`` and their curvature ``(ell, beta)``.

Conventions: ``gamma = (x, z)``, ``nu = (a, b)`` with ``|nu| = 1`` and
``gamma' . nu = 0``; ``mu = J(nu) = (-b, a)``; ``ell = nu' . mu`` and
``beta = gamma' . mu``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, NamedTuple, Sequence

import numpy as np
from scipy.interpolate import CubicSpline

from helifront import jets
from helifront.expr import parse
from helifront.jets import Jet

LEGENDRE_TOL = 1e-9

Func = Callable


class EmptyGrid(ValueError):
    pass


class StepCountTooSmall(ValueError):
    pass


class CurveSpecError(ValueError):
    pass


class CurveJets(NamedTuple):
    x: Jet
    z: Jet
    a: Jet
    b: Jet
    ell: Jet
    beta: Jet


def _elementwise(fn: Callable, u):
    if isinstance(u, np.ndarray):
        return np.vectorize(fn, otypes=[float])(u)
    return fn(u)


@dataclass(frozen=True, eq=False)
class LegendreCurvature:
    """The pair ``(ell, beta)`` as jet-evaluable functions of u."""

    ell: Func
    beta: Func

    @classmethod
    def from_expressions(cls, ell, beta) -> "LegendreCurvature":
        return cls(parse(ell), parse(beta))

    def jets(self, u0: float, order: int) -> tuple[Jet, Jet]:
        u = Jet.variable(u0, order)
        return jets.as_jet(self.ell(u), u0, order), jets.as_jet(self.beta(u), u0, order)


@dataclass(frozen=True, eq=False)
class LegendreCurve:
    """Profile ``gamma = (x, z)`` with unit normal ``nu = (a, b)``.

    ``x, z, a, b`` accept floats, numpy arrays or jets.  When ``ell_fn`` and
    ``beta_fn`` are given they are used for the curvature instead of
    differentiating the frame.
    """

    x: Func
    z: Func
    a: Func
    b: Func
    domain: tuple[float, float] = (-1.0, 1.0)
    ell_fn: Func | None = None
    beta_fn: Func | None = None
    name: str = ""
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    @classmethod
    def from_expressions(cls, x, z, a, b, domain=(-1.0, 1.0), name: str = "") -> "LegendreCurve":
        return cls(parse(x), parse(z), parse(a), parse(b), tuple(domain), name=name)

    def jets(self, u0: float, order: int) -> CurveJets:
        """Jets at ``u0`` of x, z, a, b, ell and beta, all of the given order (<= 5)."""
        key = (float(u0), order)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        u = Jet.variable(u0, order + 1)
        x, z, a, b = (jets.as_jet(f(u), u0, order + 1) for f in (self.x, self.z, self.a, self.b))
        if self.ell_fn is not None:
            ell, beta = LegendreCurvature(self.ell_fn, self.beta_fn).jets(u0, order)
        else:
            ell, beta = frenet_curvature(x, z, a, b)
        out = CurveJets(*(j.truncate(order) for j in (x, z, a, b)), ell, beta)
        if len(self._cache) > 4096:
            self._cache.clear()
        self._cache[key] = out
        return out

    def _lift(self, name: str, u):
        if isinstance(u, Jet):
            if u.order >= jets.MAX_ORDER:
                raise jets.OrderOutOfRange("curvature jets are available up to order 5")
            j = getattr(self.jets(u.value, u.order), name)
            return j if u.is_identity() else j.compose(u)
        return _elementwise(lambda t: getattr(self.jets(t, 0), name).value, u)

    def ell(self, u):
        return self._lift("ell", u)

    def beta(self, u):
        return self._lift("beta", u)

    def curvature(self) -> LegendreCurvature:
        return LegendreCurvature(self.ell, self.beta)

    def transformed(self, angle: float, translation: Sequence[float]) -> "LegendreCurve":
        """The congruent curve ``(A gamma + t, A nu)`` with A the rotation by ``angle``."""
        c, s = math.cos(angle), math.sin(angle)
        tx, tz = translation
        x, z, a, b = self.x, self.z, self.a, self.b
        return LegendreCurve(
            lambda u: c * x(u) - s * z(u) + tx,
            lambda u: s * x(u) + c * z(u) + tz,
            lambda u: c * a(u) - s * b(u),
            lambda u: s * a(u) + c * b(u),
            self.domain,
            name=self.name,
        )


def frenet_curvature(x: Jet, z: Jet, a: Jet, b: Jet) -> tuple[Jet, Jet]:
    """``ell = nu' . mu`` and ``beta = gamma' . mu`` from jets of the curve (order drops by one)."""
    n = x.order - 1
    a_, b_ = a.truncate(n), b.truncate(n)
    ell = a.derivative() * (-b_) + b.derivative() * a_
    beta = x.derivative() * (-b_) + z.derivative() * a_
    return ell, beta


class LegendreReport(NamedTuple):
    norm_deviation: float
    legendre_deviation: float

    @property
    def valid(self) -> bool:
        return self.norm_deviation < LEGENDRE_TOL and self.legendre_deviation < LEGENDRE_TOL


def legendre_check(curve: LegendreCurve, grid: Sequence[float]) -> LegendreReport:
    """Largest deviations of ``|nu| - 1`` and ``gamma' . nu`` over ``grid``."""
    grid = np.atleast_1d(np.asarray(grid, dtype=float))
    if grid.size == 0:
        raise EmptyGrid("legendre_check needs at least one grid point")
    dn = dl = 0.0
    for u0 in grid:
        u = Jet.variable(u0, 1)
        x, z, a, b = (jets.as_jet(f(u), u0, 1) for f in (curve.x, curve.z, curve.a, curve.b))
        dn = max(dn, abs(math.hypot(a.value, b.value) - 1.0))
        dl = max(dl, abs(x.deriv(1) * a.value + z.deriv(1) * b.value))
    return LegendreReport(dn, dl)


class CurvaturePoint(NamedTuple):
    ell: float
    beta: float
    ell_jet: Jet
    beta_jet: Jet


def curvature_of_legendre(curve, u0: float, order: int = 4) -> CurvaturePoint:
    """Curvature ``(ell, beta)`` at ``u0`` with its jets.

    Sampled curves are differentiated through their cubic interpolant, so
    their jets are limited to order 2.
    """
    if isinstance(curve, SampledLegendreCurve):
        ell, beta = curve.curvature_jets(u0, min(order, 2))
    else:
        cj = curve.jets(u0, order)
        ell, beta = cj.ell, cj.beta
    return CurvaturePoint(ell.value, beta.value, ell, beta)


# reconstruction -------------------------------------------------------------

_GL_X, _GL_W = np.polynomial.legendre.leggauss(6)
_GL_X = 0.5 * (_GL_X + 1.0)
_GL_W = 0.5 * _GL_W


def _eval(f: Callable, u: np.ndarray) -> np.ndarray:
    out = f(u)
    return np.broadcast_to(np.asarray(out, dtype=float), u.shape)


def _grid(lo: float, hi: float, u0: float, n_steps: int) -> tuple[np.ndarray, int]:
    if not lo <= u0 <= hi:
        raise ValueError(f"base point {u0} outside [{lo}, {hi}]")
    if u0 == lo or u0 == hi:
        g = np.linspace(lo, hi, n_steps + 1)
        return g, 0 if u0 == lo else n_steps
    n_left = max(1, round(n_steps * (u0 - lo) / (hi - lo)))
    left = np.linspace(lo, u0, n_left + 1)
    right = np.linspace(u0, hi, n_steps - n_left + 1)
    return np.concatenate([left, right[1:]]), n_left


@dataclass(frozen=True, eq=False)
class SampledLegendreCurve:
    """Dense samples of a reconstructed Legendre curve with cubic interpolants."""

    u: np.ndarray
    x: np.ndarray
    z: np.ndarray
    a: np.ndarray
    b: np.ndarray
    theta: np.ndarray
    curvature: LegendreCurvature

    def __post_init__(self):
        splines = {k: CubicSpline(self.u, getattr(self, k)) for k in ("x", "z", "a", "b", "theta")}
        object.__setattr__(self, "_splines", splines)

    def spline(self, name: str) -> CubicSpline:
        return self._splines[name]

    def __call__(self, u):
        return tuple(self._splines[k](u) for k in ("x", "z", "a", "b"))

    def curvature_from_samples(self, u) -> tuple[np.ndarray, np.ndarray]:
        """``(ell, beta)`` from derivatives of the interpolated samples."""
        x, z, a, b = (self._splines[k] for k in ("x", "z", "a", "b"))
        ell = a(u, 1) * -b(u) + b(u, 1) * a(u)
        beta = x(u, 1) * -b(u) + z(u, 1) * a(u)
        return ell, beta

    def curvature_jets(self, u0: float, order: int) -> tuple[Jet, Jet]:
        def jet(name):
            s = self._splines[name]
            return Jet(u0, [float(s(u0, k)) / math.factorial(k) for k in range(order + 2)])

        return frenet_curvature(jet("x"), jet("z"), jet("a"), jet("b"))

    def as_legendre_curve(self, name: str = "") -> LegendreCurve:
        """Jet-evaluable view: floats go through the splines, jets through a local
        Frenet expansion anchored at the interpolated state."""

        def component(idx: int, key: str):
            def f(u):
                if isinstance(u, Jet):
                    t0 = float(self._splines["theta"](u.value))
                    g0 = (float(self._splines["x"](u.value)), float(self._splines["z"](u.value)))
                    j = reconstruct_jets(self.curvature, u.value, g0, t0, u.order)[idx]
                    return j if u.is_identity() else j.compose(u)
                return self._splines[key](u)

            return f

        return LegendreCurve(
            component(0, "x"),
            component(1, "z"),
            component(2, "a"),
            component(3, "b"),
            (float(self.u[0]), float(self.u[-1])),
            ell_fn=self.curvature.ell,
            beta_fn=self.curvature.beta,
            name=name,
        )


def reconstruct_curve(
    curv: LegendreCurvature,
    interval: tuple[float, float],
    n_steps: int,
    u0: float | None = None,
    gamma0: Sequence[float] = (0.0, 0.0),
    angle0: float = 0.0,
) -> SampledLegendreCurve:
    """Legendre curve with curvature ``curv`` sampled on ``interval``.

    ``nu = (cos T, sin T)`` with ``T = angle0 + int ell`` and
    ``gamma = gamma0 + int beta (-sin T, cos T)``, all integrals taken from
    ``u0`` (default: the left end).  Each step is integrated with 6-point
    Gauss-Legendre; the angle is integrated first and then reused at the
    quadrature nodes of the position integral.
    """
    if n_steps < 16:
        raise StepCountTooSmall(f"n_steps must be >= 16, got {n_steps}")
    lo, hi = map(float, interval)
    u0 = lo if u0 is None else float(u0)
    u, i0 = _grid(lo, hi, u0, n_steps)
    h = np.diff(u)
    left = u[:-1]
    # angle at nodes
    nodes = left[:, None] + h[:, None] * _GL_X[None, :]
    seg = h * (_eval(curv.ell, nodes) @ _GL_W)
    theta_nodes = np.concatenate([[0.0], np.cumsum(seg)])
    theta_nodes += angle0 - theta_nodes[i0]
    # angle at the quadrature points of every step
    inner = left[:, None, None] + (h[:, None, None] * _GL_X[None, :, None]) * _GL_X[None, None, :]
    partial = (h[:, None] * _GL_X[None, :]) * (_eval(curv.ell, inner) @ _GL_W)
    theta_q = theta_nodes[:-1, None] + partial
    beta_q = _eval(curv.beta, nodes)
    dx = h * ((-beta_q * np.sin(theta_q)) @ _GL_W)
    dz = h * ((beta_q * np.cos(theta_q)) @ _GL_W)
    x = np.concatenate([[0.0], np.cumsum(dx)])
    z = np.concatenate([[0.0], np.cumsum(dz)])
    x += gamma0[0] - x[i0]
    z += gamma0[1] - z[i0]
    return SampledLegendreCurve(u, x, z, np.cos(theta_nodes), np.sin(theta_nodes), theta_nodes, curv)


def reconstruct_jets(
    curv: LegendreCurvature, u0: float, gamma0: Sequence[float], angle0: float, order: int
) -> tuple[Jet, Jet, Jet, Jet]:
    """Jets of ``(x, z, a, b)`` at ``u0`` of the curve with curvature ``curv``
    passing through ``gamma0`` with normal angle ``angle0``."""
    if order < 1:
        raise jets.OrderOutOfRange("reconstruct_jets needs order >= 1")
    u = Jet.variable(u0, order - 1)
    ell = jets.as_jet(curv.ell(u), u0, order - 1)
    beta = jets.as_jet(curv.beta(u), u0, order - 1)
    return _integrate_frenet(ell, beta, gamma0, angle0)


def _integrate_frenet(ell: Jet, beta: Jet, gamma0, angle0):
    n = ell.order
    theta = ell.integral(angle0)
    s, c = theta.sin_cos()
    x = (-(beta * s.truncate(n))).integral(gamma0[0])
    z = (beta * c.truncate(n)).integral(gamma0[1])
    return x, z, c, s


def jets_from_curvature_coeffs(
    ell_coeffs: Sequence[float], beta_coeffs: Sequence[float], u0: float, gamma0, angle0: float
) -> CurveJets:
    """Curve jets built directly from Taylor coefficients of ``ell`` and ``beta``."""
    ell = Jet(u0, ell_coeffs)
    beta = Jet(u0, beta_coeffs)
    x, z, a, b = _integrate_frenet(ell, beta, gamma0, angle0)
    n = ell.order
    return CurveJets(x.truncate(n), z.truncate(n), a.truncate(n), b.truncate(n), ell, beta)


# curve-spec files -------------------------------------------------------------


def curve_from_spec(spec: dict, n_steps: int = 4096) -> LegendreCurve:
    """Build a curve from a curve-spec mapping (explicit or curvature kind)."""
    if not isinstance(spec, dict):
        raise CurveSpecError("curve spec must be a JSON object")
    kind = spec.get("kind")
    domain = tuple(float(t) for t in spec.get("domain", (-1.0, 1.0)))
    if len(domain) != 2 or not domain[0] < domain[1]:
        raise CurveSpecError(f"bad domain {spec.get('domain')!r}")
    try:
        if kind == "explicit":
            missing = [k for k in ("x", "z", "a", "b") if k not in spec]
            if missing:
                raise CurveSpecError(f"explicit curve spec lacks {missing}")
            return LegendreCurve.from_expressions(
                spec["x"], spec["z"], spec["a"], spec["b"], domain, name=spec.get("name", "")
            )
        if kind == "curvature":
            if "ell" not in spec or "beta" not in spec:
                raise CurveSpecError("curvature spec needs 'ell' and 'beta'")
            init = spec.get("init", {})
            curv = LegendreCurvature.from_expressions(spec["ell"], spec["beta"])
            sampled = reconstruct_curve(
                curv,
                domain,
                int(spec.get("steps", n_steps)),
                u0=float(init.get("u0", domain[0])),
                gamma0=tuple(float(t) for t in init.get("gamma0", (0.0, 0.0))),
                angle0=float(init.get("angle0", 0.0)),
            )
            return sampled.as_legendre_curve(spec.get("name", ""))
    except (TypeError, ValueError) as exc:
        if isinstance(exc, CurveSpecError):
            raise
        raise CurveSpecError(str(exc)) from exc
    raise CurveSpecError(f"unknown curve kind {kind!r}")

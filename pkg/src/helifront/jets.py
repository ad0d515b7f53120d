"""Truncated Taylor jets of smooth real functions of one variable.

A :class:`Jet` carries the normalised Taylor coefficients
``coeffs[k] = f^(k)(u0) / k!`` of a function at a base point ``u0``.
Arithmetic on jets is exact up to floating point rounding, so every
derivative needed by the singularity criteria is obtained without any
finite-difference error.

The module-level functions :func:`sin`, :func:`cos` and :func:`sqrt` dispatch
on their argument (float, numpy array or :class:`Jet`), which lets the same
callable be evaluated on a grid of points and lifted to a jet.
"""

from __future__ import annotations

import math
from numbers import Real
from typing import Callable, Sequence, Union

import numpy as np

MAX_ORDER = 6
VANISHING_TOL = 1e-12


class JetError(ValueError):
    pass


class DivisionByVanishing(JetError):
    pass


class SqrtOfVanishing(JetError):
    pass


class OrderOutOfRange(JetError):
    pass


class Jet:
    """Truncated Taylor expansion ``sum_k coeffs[k] (u - base_point)^k``."""

    __slots__ = ("base_point", "coeffs")

    def __init__(self, base_point: float, coeffs: Sequence[float]):
        coeffs = tuple(float(c) for c in coeffs)
        if not 1 <= len(coeffs) <= MAX_ORDER + 1:
            raise OrderOutOfRange(f"jet order must lie in 0..{MAX_ORDER}, got {len(coeffs) - 1}")
        self.base_point = float(base_point)
        self.coeffs = coeffs

    @classmethod
    def variable(cls, u0: float, order: int) -> "Jet":
        """The identity function ``u`` expanded at ``u0``."""
        if order == 0:
            return cls(u0, (u0,))
        return cls(u0, (u0, 1.0) + (0.0,) * (order - 1))

    @classmethod
    def constant(cls, c: float, u0: float, order: int) -> "Jet":
        return cls(u0, (c,) + (0.0,) * order)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def value(self) -> float:
        return self.coeffs[0]

    def derivatives(self) -> np.ndarray:
        """Raw derivatives ``f^(k)(u0)`` for k = 0..order."""
        return np.array([c * math.factorial(k) for k, c in enumerate(self.coeffs)])

    def deriv(self, k: int = 0) -> float:
        return self.coeffs[k] * math.factorial(k)

    def derivative(self) -> "Jet":
        """Jet of ``f'``; the order drops by one."""
        if self.order == 0:
            raise OrderOutOfRange("cannot differentiate an order-0 jet")
        return Jet(self.base_point, [k * c for k, c in enumerate(self.coeffs) if k > 0])

    def integral(self, constant: float = 0.0) -> "Jet":
        """Jet of the antiderivative taking the value ``constant`` at the base point."""
        coeffs = [constant] + [c / (k + 1) for k, c in enumerate(self.coeffs)]
        return Jet(self.base_point, coeffs[: MAX_ORDER + 1])

    def truncate(self, order: int) -> "Jet":
        if order > self.order:
            raise OrderOutOfRange(f"cannot raise jet order {self.order} to {order}")
        return Jet(self.base_point, self.coeffs[: order + 1])

    def is_identity(self) -> bool:
        c = self.coeffs
        return c[0] == self.base_point and (len(c) == 1 or (c[1] == 1.0 and not any(c[2:])))

    def compose(self, inner: "Jet") -> "Jet":
        """Jet of ``f(g)`` where ``self`` is the jet of f at ``g(inner.base_point)``."""
        if abs(inner.value - self.base_point) > 1e-12 * max(1.0, abs(self.base_point)):
            raise ValueError("inner jet value does not match the outer base point")
        order = min(self.order, inner.order)
        shift = Jet(inner.base_point, (0.0,) + inner.coeffs[1 : order + 1])
        out = Jet.constant(self.coeffs[order], inner.base_point, order)
        for c in reversed(self.coeffs[:order]):
            out = out * shift + c
        return out

    # arithmetic -----------------------------------------------------------

    def _coerce(self, other) -> "Jet | None":
        if isinstance(other, Jet):
            if other.base_point != self.base_point:
                raise ValueError(
                    f"jets expanded at different points ({self.base_point} vs {other.base_point})"
                )
            return other
        if isinstance(other, (Real, np.floating, np.integer)):
            return Jet.constant(float(other), self.base_point, self.order)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = min(self.order, o.order)
        return Jet(self.base_point, [self.coeffs[k] + o.coeffs[k] for k in range(n + 1)])

    __radd__ = __add__

    def __neg__(self):
        return Jet(self.base_point, [-c for c in self.coeffs])

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = min(self.order, o.order)
        return Jet(self.base_point, [self.coeffs[k] - o.coeffs[k] for k in range(n + 1)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (Real, np.floating, np.integer)):
            return Jet(self.base_point, [c * other for c in self.coeffs])
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        p, q = self.coeffs, o.coeffs
        n = min(len(p), len(q))
        return Jet(self.base_point, [sum(p[j] * q[k - j] for j in range(k + 1)) for k in range(n)])

    __rmul__ = __mul__

    def reciprocal(self) -> "Jet":
        d = self.coeffs
        if abs(d[0]) <= VANISHING_TOL:
            raise DivisionByVanishing(f"divisor vanishes at u = {self.base_point}")
        q: list[float] = []
        for k in range(len(d)):
            s = 1.0 if k == 0 else 0.0
            s -= sum(d[j] * q[k - j] for j in range(1, k + 1))
            q.append(s / d[0])
        return Jet(self.base_point, q)

    def __truediv__(self, other):
        if isinstance(other, (Real, np.floating, np.integer)):
            if abs(other) <= VANISHING_TOL:
                raise DivisionByVanishing("division by a vanishing constant")
            return Jet(self.base_point, [c / other for c in self.coeffs])
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = min(self.order, o.order)
        p, d = self.coeffs, o.coeffs
        if abs(d[0]) <= VANISHING_TOL:
            raise DivisionByVanishing(f"divisor vanishes at u = {self.base_point}")
        q: list[float] = []
        for k in range(n + 1):
            q.append((p[k] - sum(d[j] * q[k - j] for j in range(1, k + 1))) / d[0])
        return Jet(self.base_point, q)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, p):
        if isinstance(p, Jet):
            raise JetError("exponent must be a constant")
        p = float(p)
        if p.is_integer():
            n = int(p)
            base = self if n >= 0 else self.reciprocal()
            n = abs(n)
            out = Jet.constant(1.0, self.base_point, self.order)
            while n:
                if n & 1:
                    out = out * base
                base = base * base
                n >>= 1
            return out
        f = self.coeffs
        if f[0] <= VANISHING_TOL:
            if abs(f[0]) <= VANISHING_TOL:
                raise SqrtOfVanishing(f"non-integer power of a function vanishing at u = {self.base_point}")
            raise JetError(f"non-integer power of a negative value at u = {self.base_point}")
        g = [f[0] ** p]
        for k in range(1, len(f)):
            s = sum(((p + 1) * j - k) * f[j] * g[k - j] for j in range(1, k + 1))
            g.append(s / (k * f[0]))
        return Jet(self.base_point, g)

    def sqrt(self) -> "Jet":
        return self**0.5

    def sin_cos(self) -> tuple["Jet", "Jet"]:
        f = self.coeffs
        s, c = [math.sin(f[0])], [math.cos(f[0])]
        for k in range(1, len(f)):
            s.append(sum(j * f[j] * c[k - j] for j in range(1, k + 1)) / k)
            c.append(-sum(j * f[j] * s[k - j] for j in range(1, k + 1)) / k)
        return Jet(self.base_point, s), Jet(self.base_point, c)

    def sin(self) -> "Jet":
        return self.sin_cos()[0]

    def cos(self) -> "Jet":
        return self.sin_cos()[1]

    def __float__(self):
        return self.coeffs[0]

    def __repr__(self):
        cs = ", ".join(f"{c:.6g}" for c in self.coeffs)
        return f"Jet(u0={self.base_point:.6g}, coeffs=({cs}))"


Scalar = Union[float, np.ndarray, Jet]


def sin(x):
    if isinstance(x, Jet):
        return x.sin()
    if isinstance(x, np.ndarray):
        return np.sin(x)
    return math.sin(x)


def cos(x):
    if isinstance(x, Jet):
        return x.cos()
    if isinstance(x, np.ndarray):
        return np.cos(x)
    return math.cos(x)


def sqrt(x):
    if isinstance(x, Jet):
        return x.sqrt()
    if isinstance(x, np.ndarray):
        return np.sqrt(x)
    return math.sqrt(x)


def value(x) -> float:
    """0-th coefficient of a jet, or the number itself."""
    return x.coeffs[0] if isinstance(x, Jet) else float(x)


def coeff(x, k: int) -> float:
    """Taylor coefficient k of a jet; constants have vanishing higher coefficients."""
    if isinstance(x, Jet):
        return x.coeffs[k] if k <= x.order else 0.0
    return float(x) if k == 0 else 0.0


def as_jet(x, u0: float, order: int) -> Jet:
    if isinstance(x, Jet):
        return x
    return Jet.constant(float(x), u0, order)


def jet_lift(expr, u0: float, order: int) -> Jet:
    """Truncated Taylor expansion of ``expr`` at ``u0``.

    ``expr`` is an expression string, a parsed expression tree, or any
    callable built from jet-aware operations.
    """
    from helifront.expr import parse

    if not 1 <= order <= MAX_ORDER:
        raise OrderOutOfRange(f"order must lie in 1..{MAX_ORDER}, got {order}")
    f: Callable = parse(expr) if isinstance(expr, str) else expr
    return as_jet(f(Jet.variable(u0, order)), u0, order)


def lift_at(f: Callable, u: Jet, extra: int = 0) -> Jet:
    """Evaluate a function of u on the jet ``u``, expanding ``extra`` orders deeper.

    The function is lifted at the identity jet of order ``u.order + extra`` and
    then composed with ``u``; the result has order ``u.order + extra`` when u is
    the identity, otherwise ``u.order``.
    """
    order = u.order + extra
    base = as_jet(f(Jet.variable(u.value, order)), u.value, order)
    if u.is_identity():
        return base
    return base.compose(u)

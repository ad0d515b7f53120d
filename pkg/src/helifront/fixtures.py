"""Built-in profiles: the four worked examples (pitch 1/2) and a few simple curves."""

from __future__ import annotations

from dataclasses import dataclass

from helifront.expr import parse
from helifront.helicoid import HelicoidalSurface
from helifront.legendre import LegendreCurve

LAMBDA = 0.5


@dataclass(frozen=True, eq=False)
class Example:
    name: str
    curve: LegendreCurve
    lam: float
    ell: object
    beta: object
    k1_printed: object
    k2_printed: object
    expected_tag: str
    expected_case: str

    def helicoid(self, lam: float | None = None) -> HelicoidalSurface:
        return HelicoidalSurface(self.curve, self.lam if lam is None else lam)


def _example(name, x, z, a, b, ell, beta, k1, k2, tag, case) -> Example:
    curve = LegendreCurve.from_expressions(x, z, a, b, (-1.0, 1.0), name=name)
    return Example(name, curve, LAMBDA, parse(ell), parse(beta), parse(k1), parse(k2), tag, case)


EXAMPLES: dict[str, Example] = {
    "example1": _example(
        "example1",
        "u^2 + u^3",
        "u^2",
        "2/sqrt(8 + 12*u + 9*u^2)",
        "-(2 + 3*u)/sqrt(8 + 12*u + 9*u^2)",
        "-6/(8 + 12*u + 9*u^2)",
        "u*sqrt(8 + 12*u + 9*u^2)",
        "(2 + 3*u)/sqrt((2 + 3*u)^2 + 4*(u^2 + u^3)^2*(8 + 12*u + 9*u^2))",
        "-2*(u^2 + u^3)*sqrt(8 + 12*u + 9*u^2)/sqrt((2 + 3*u)^2 + 4*(u^2 + u^3)^2*(8 + 12*u + 9*u^2))",
        "CuspidalEdge_5_2",
        "I",
    ),
    "example2": _example(
        "example2",
        "u^2",
        "u",
        "1/sqrt(1 + 4*u^2)",
        "-2*u/sqrt(1 + 4*u^2)",
        "-2/(1 + 4*u^2)",
        "sqrt(1 + 4*u^2)",
        "1/sqrt(1 + u^2*(1 + 4*u^2))",
        "-u*sqrt(1 + 4*u^2)/(1 + u^2*(1 + 4*u^2))",
        "CuspidalEdge_3_2",
        "II",
    ),
    "example3": _example(
        "example3",
        "u^3",
        "u",
        "1/sqrt(1 + 9*u^4)",
        "-3*u^2/sqrt(1 + 9*u^4)",
        "-6*u/(1 + 9*u^4)",
        "sqrt(1 + 9*u^4)",
        "3/sqrt(9 + 4*u^2*(1 + 9*u^4))",
        "-2*u*sqrt(1 + 9*u^4)/(9 + 4*u^2*(1 + 9*u^4))",
        "CuspidalEdge_4_3",
        "II",
    ),
    "example4": _example(
        "example4",
        "u^3",
        "u^2",
        "2/sqrt(4 + 9*u^2)",
        "-3*u/sqrt(4 + 9*u^2)",
        "-6/(4 + 9*u^2)",
        "u*sqrt(4 + 9*u^2)",
        "3/sqrt(9 + 4*u^4*(4 + 9*u^2))",
        "-2*u^2*sqrt(4 + 9*u^2)/(9 + 4*u^4*(4 + 9*u^2))",
        "CuspidalEdge_5_3",
        "III",
    ),
}


def example(name: str) -> Example:
    try:
        return EXAMPLES[name]
    except KeyError:
        raise KeyError(f"unknown builtin {name!r}; choose from {sorted(EXAMPLES)}") from None


def vertical_line(x0: float = 1.0, domain=(-1.0, 1.0)) -> LegendreCurve:
    """``gamma = (x0, u)`` with ``nu = (1, 0)``."""
    return LegendreCurve.from_expressions(x0, "u", 1, 0, domain, name="vertical_line")


def axis_line(domain=(-1.0, 1.0)) -> LegendreCurve:
    """``gamma = (0, u)`` with ``nu = (1, 0)``."""
    return LegendreCurve.from_expressions(0, "u", 1, 0, domain, name="axis_line")


def offset_circle(domain=(-3.0, 3.0)) -> LegendreCurve:
    """``gamma = (cos u + 2, sin u)`` with the outward normal; never meets the axis."""
    return LegendreCurve.from_expressions("cos(u) + 2", "sin(u)", "cos(u)", "sin(u)", domain, name="offset_circle")

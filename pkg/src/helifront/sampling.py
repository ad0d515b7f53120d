"""Random profile germs forced into the singular cases I, II, III.

A germ is generated from polynomial curvature data: random Taylor
coefficients of ``ell`` and ``beta`` are pushed through the Frenet system at
the jet level, starting on the axis (``x(u0) = 0``).  Case I puts the normal
off the horizontal (``b != 0``) with ``beta(u0) = 0``; case II keeps
``beta(u0) != 0`` with a horizontal normal (``b = 0``); case III combines both.
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from helifront.legendre import CurveJets, jets_from_curvature_coeffs
from helifront.singularity import CuspTag, classify_plane_cusp, slice_derivatives

ORDER = 5
ALLOWED = {
    "I": {CuspTag.CUSP_5_2, CuspTag.DEGENERATE},
    "II": {CuspTag.CUSP_3_2, CuspTag.CUSP_4_3, CuspTag.DEGENERATE},
    "III": {CuspTag.CUSP_5_3, CuspTag.DEGENERATE},
}


class Germ(NamedTuple):
    case: str
    jets: CurveJets
    lam: float


def _coeffs(rng: np.random.Generator, n: int) -> np.ndarray:
    mag = rng.uniform(0.2, 2.0, n)
    return mag * rng.choice((-1.0, 1.0), n)


def random_germ(rng: np.random.Generator, case: str, degenerate_rate: float = 0.25) -> Germ:
    """One random germ in the given case; with probability ``degenerate_rate``
    the first coefficient deciding the type is zeroed as well."""
    ell = _coeffs(rng, ORDER + 1)
    beta = _coeffs(rng, ORDER + 1)
    lam = float(rng.choice((-1.0, 1.0)) * rng.uniform(0.2, 2.0))
    push = rng.random() < degenerate_rate
    if case == "I":
        angle = float(rng.uniform(0.2, math.pi - 0.2) * rng.choice((-1.0, 1.0)))
        beta[0] = 0.0
        if push:
            if rng.random() < 0.5:
                beta[1] = 0.0
            else:
                ell[0] = 0.0
    elif case == "II":
        angle = float(rng.choice((0.0, math.pi)))
        if push:
            ell[0] = 0.0
            if rng.random() < 0.5:
                ell[1] = 0.0
    elif case == "III":
        angle = float(rng.choice((0.0, math.pi)))
        beta[0] = 0.0
        if push:
            if rng.random() < 0.5:
                beta[1] = 0.0
            else:
                ell[0] = 0.0
    else:
        raise ValueError(f"unknown case {case!r}")
    z0 = float(rng.uniform(-1.0, 1.0))
    cj = jets_from_curvature_coeffs(ell, beta, 0.0, (0.0, z0), angle)
    return Germ(case, cj, lam)


def slice_cusp(germ: Germ):
    return classify_plane_cusp(slice_derivatives(germ.jets, germ.lam))


class SuiteResult(NamedTuple):
    case: str
    trials: int
    violations: int
    counts: dict


def never_occur_suite(case: str, trials: int, seed: int = 0) -> SuiteResult:
    """Classify the slice curve of ``trials`` random germs; count types outside
    the set the criteria allow for the case."""
    import warnings

    from helifront.singularity import MarginalWarning

    rng = np.random.default_rng([seed, ("I", "II", "III").index(case)])
    counts: dict = {}
    bad = 0
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", MarginalWarning)
        for _ in range(trials):
            tag = slice_cusp(random_germ(rng, case)).tag
            counts[tag.value] = counts.get(tag.value, 0) + 1
            if tag not in ALLOWED[case]:
                bad += 1
    return SuiteResult(case, trials, bad, counts)

"""Helicoidal surfaces of frontals: framed invariants, slice curves and
cuspidal-edge classification, driven by exact Taylor-jet arithmetic."""

from helifront.jets import Jet, jet_lift
from helifront.legendre import LegendreCurvature, LegendreCurve
from helifront.helicoid import HelicoidalSurface

__all__ = ["Jet", "jet_lift", "LegendreCurve", "LegendreCurvature", "HelicoidalSurface"]
__version__ = "0.1.0"

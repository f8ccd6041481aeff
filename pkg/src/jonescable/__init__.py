"""Colored Jones polynomials of knots and cables, their degree
quasi-polynomials, and checks of the slope conjectures on tabulated knots."""

from .bracket import BraidWord, PDCode, colored_jones, kauffman_bracket
from .cabling import (
    CableParams,
    SurfaceData,
    cable_jones,
    cable_surface,
    closed_form_period2,
    predict_cable_degree,
)
from .checker import check_b_nonpositive, check_slope, check_strong_slope
from .families import catalog, torus_degree, torus_jones
from .fusion import FusionParams, delta, dplus_model
from .laurent import QLaurent
from .quasipoly import QuasiPoly, fit

__all__ = [
    "BraidWord",
    "CableParams",
    "FusionParams",
    "PDCode",
    "QLaurent",
    "QuasiPoly",
    "SurfaceData",
    "cable_jones",
    "cable_surface",
    "catalog",
    "check_b_nonpositive",
    "check_slope",
    "check_strong_slope",
    "closed_form_period2",
    "colored_jones",
    "delta",
    "dplus_model",
    "fit",
    "kauffman_bracket",
    "predict_cable_degree",
    "torus_degree",
    "torus_jones",
]

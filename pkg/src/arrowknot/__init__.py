"""Arrow polynomial of virtual knots, computed from signed Gauss codes."""

from .arrowpoly import ArrowMonomial, ArrowPolynomial, LaurentA, PolynomialSyntaxError, parse_poly
from .bounds import (
    BoundsReport,
    InvariantReport,
    bounds_report,
    full_report,
    genus_lower_bound,
    virtual_crossing_lower_bound,
)
from .diagram import (
    GaussCode,
    GaussCodeError,
    GaussPass,
    MultiComponentError,
    Strand,
    format_gauss,
    mirror,
    parse_gauss,
    reverse,
    writhe,
)
from .statesum import CALIBRATED, CalibrationError, Convention, bracket_oracle, calibrate_convention, expand

__all__ = [
    "ArrowMonomial", "ArrowPolynomial", "LaurentA", "PolynomialSyntaxError", "parse_poly",
    "BoundsReport", "InvariantReport", "bounds_report", "full_report",
    "genus_lower_bound", "virtual_crossing_lower_bound",
    "GaussCode", "GaussCodeError", "GaussPass", "MultiComponentError", "Strand",
    "format_gauss", "mirror", "parse_gauss", "reverse", "writhe",
    "CALIBRATED", "CalibrationError", "Convention", "bracket_oracle", "calibrate_convention", "expand",
]

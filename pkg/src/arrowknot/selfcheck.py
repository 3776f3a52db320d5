"""Built-in regression checks for the shipped sign convention and state sum."""

from __future__ import annotations

from typing import Callable

from . import statesum
from .arrowpoly import parse_poly
from .diagram import enumerate_codes, parse_gauss
from .statesum import CalibrationError, bracket_oracle, calibrate_convention, expand
from .tables import builtin_path, read_knot_table

# (label, gauss code, unnormalized arrow polynomial)
CALIBRATION_FIXTURES = [
    ("positive kink", "O1+U1+", "-A^3"),
    ("right trefoil", "O1+U2+O3+U1+O2+U3+", "A^-7 - A^-3 - A^5"),
    ("virtual trefoil", "O1+U2+O3-U1+O2+U3-", "-A^-5 + A^-5*K1^2 - A^3*K1^2"),
    (
        "4.22",
        "O1+O2+O3-U1+U2+O4-U3-U4-",
        "-A^-6*K1 + A^-6*K1^3 - A^-4*K1^2 - A^-2*K1 - A^-2*K1*K2 + 2*A^-2*K1^3 + 2 - K1^2"
        " + K2 + A^2*K1 - A^2*K1*K2 + A^2*K1^3 - A^6*K1",
    ),
]


def calibration_fixtures():
    return [(parse_gauss(code), parse_poly(poly)) for _, code, poly in CALIBRATION_FIXTURES]


def check_calibration() -> str | None:
    try:
        found = calibrate_convention(calibration_fixtures())
    except CalibrationError as exc:
        return f"calibration failed: {exc}"
    if found != statesum.CALIBRATED:
        return f"shipped convention {statesum.CALIBRATED} differs from calibrated {found}"
    return None


def check_fixtures() -> str | None:
    for label, code, poly in CALIBRATION_FIXTURES:
        got = expand(parse_gauss(code), statesum.CALIBRATED)
        if got != parse_poly(poly):
            return f"{label}: expected {poly}, got {got.to_canonical()}"
    return None


def check_oracle() -> str | None:
    codes = [c for n in (0, 1, 2) for c in enumerate_codes(n)]
    records, _ = read_knot_table(builtin_path("knots4.tsv"))
    codes += [r.code for r in records]
    for code in codes:
        if expand(code, statesum.CALIBRATED).specialize_k_one() != bracket_oracle(code):
            return f"bracket mismatch for {code}"
    return None


CHECKS: list[tuple[str, Callable[[], str | None]]] = [
    ("calibration", check_calibration),
    ("fixtures", check_fixtures),
    ("bracket oracle", check_oracle),
]


def run(out=print) -> int:
    """Run every check, report each one, and return 0 if all pass."""
    status = 0
    for label, check in CHECKS:
        problem = check()
        out(f"{label}: {'ok' if problem is None else 'FAIL ' + problem}")
        if problem is not None:
            status = 1
    return status

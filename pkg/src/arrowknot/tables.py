"""Knot-table, fixture and allow-list files, plus report formatting.

All three file kinds are UTF-8, tab separated, one record per line; blank
lines and lines starting with ``#`` are ignored.

* knot table: ``name<TAB>gauss_code``
* fixtures:   ``name<TAB>polynomial<TAB>v<TAB>g``
* allow list: ``name<TAB>field`` with field in ``polynomial``, ``v``, ``g``
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterable

from .arrowpoly import ArrowPolynomial, PolynomialSyntaxError, parse_poly
from .bounds import InvariantReport
from .diagram import GaussCode, GaussCodeError, parse_gauss

__all__ = [
    "TableFormatError",
    "LineError",
    "KnotRecord",
    "Fixture",
    "ErrataEntry",
    "ERRATA_FIELDS",
    "FORMATS",
    "BOUNDS_FIELDS",
    "builtin_path",
    "read_knot_table",
    "read_fixtures",
    "read_allow_list",
    "compare",
    "format_reports",
    "latex_row",
]

ERRATA_FIELDS = ("polynomial", "v", "g")
FORMATS = ("text", "csv", "json", "latex")
BOUNDS_FIELDS = ("name", "gauss_code", "writhe", "max_k_degree", "v_lower", "genus_lower")


class TableFormatError(ValueError):
    """A file that cannot be used at all (as opposed to a single bad line)."""


@dataclass(frozen=True)
class LineError:
    path: str
    line_no: int
    message: str

    def __str__(self) -> str:
        return f"{self.path}:{self.line_no}: {self.message}"


@dataclass(frozen=True)
class KnotRecord:
    name: str
    code: GaussCode
    line_no: int = 0


@dataclass(frozen=True)
class Fixture:
    name: str
    polynomial: ArrowPolynomial
    v: int
    g: int


@dataclass(frozen=True)
class ErrataEntry:
    name: str
    field: str
    expected: str
    computed: str

    def __post_init__(self) -> None:
        if self.field not in ERRATA_FIELDS:
            raise ValueError(f"unknown errata field {self.field!r}")
        if self.expected == self.computed:
            raise ValueError("an errata entry needs expected != computed")

    def __str__(self) -> str:
        return f"{self.name}\t{self.field}\texpected={self.expected}\tcomputed={self.computed}"


def builtin_path(filename: str) -> Path:
    """Path of a data file shipped with the package (``knots4.tsv`` etc.)."""
    return Path(str(resources.files("arrowknot") / "data" / filename))


def _records(path: str | Path) -> Iterable[tuple[int, list[str]]]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise TableFormatError(f"cannot read {path}: {exc}") from exc
    for line_no, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        yield line_no, line.split("\t")


def read_knot_table(path: str | Path) -> tuple[list[KnotRecord], list[LineError]]:
    """Read a knot table; malformed lines are returned as errors, not raised."""
    records: list[KnotRecord] = []
    errors: list[LineError] = []
    for line_no, cols in _records(path):
        if len(cols) != 2 or not cols[0].strip():
            errors.append(LineError(str(path), line_no, f"expected name<TAB>gauss_code, got {len(cols)} column(s)"))
            continue
        try:
            code = parse_gauss(cols[1])
        except GaussCodeError as exc:
            errors.append(LineError(str(path), line_no, str(exc)))
            continue
        records.append(KnotRecord(cols[0].strip(), code, line_no))
    return records, errors


def read_fixtures(path: str | Path) -> dict[str, Fixture]:
    out: dict[str, Fixture] = {}
    for line_no, cols in _records(path):
        where = f"{path}:{line_no}"
        if len(cols) != 4:
            raise TableFormatError(f"{where}: expected name<TAB>polynomial<TAB>v<TAB>g")
        name = cols[0].strip()
        try:
            poly = parse_poly(cols[1])
            v, g = int(cols[2]), int(cols[3])
        except (PolynomialSyntaxError, ValueError) as exc:
            raise TableFormatError(f"{where}: {exc}") from exc
        if name in out:
            raise TableFormatError(f"{where}: duplicate fixture {name!r}")
        out[name] = Fixture(name, poly, v, g)
    return out


def read_allow_list(path: str | Path) -> set[tuple[str, str]]:
    """Pairs ``(name, field)`` whose mismatch is known and tolerated."""
    out = set()
    for line_no, cols in _records(path):
        if len(cols) < 2 or cols[1].strip() not in ERRATA_FIELDS:
            raise TableFormatError(f"{path}:{line_no}: expected name<TAB>field with field in {ERRATA_FIELDS}")
        out.add((cols[0].strip(), cols[1].strip()))
    return out


def compare(report: InvariantReport, fixture: Fixture, *, normalized: bool = False) -> list[ErrataEntry]:
    """Differences between a computed report and a tabulated fixture."""
    poly = report.normalized_polynomial if normalized else report.arrow_polynomial
    pairs = [
        ("polynomial", fixture.polynomial.to_canonical(), poly),
        ("v", str(fixture.v), str(report.v_lower)),
        ("g", str(fixture.g), str(report.genus_lower)),
    ]
    return [ErrataEntry(report.name, f, e, c) for f, e, c in pairs if e != c]


def _shown_poly(r: InvariantReport, normalized: bool) -> str:
    return r.normalized_polynomial if normalized else r.arrow_polynomial


def latex_row(r: InvariantReport, *, normalized: bool = False) -> str:
    poly = parse_poly(_shown_poly(r, normalized)).to_latex()
    return f"{r.name} & ${poly}$ & {r.v_lower} & {r.genus_lower} \\\\"


def format_reports(
    reports: Iterable[InvariantReport],
    fmt: str = "text",
    *,
    normalized: bool = False,
    bounds_only: bool = False,
) -> str:
    """Render reports; the result is deterministic for identical input."""
    reports = list(reports)
    fields = BOUNDS_FIELDS if bounds_only else InvariantReport.FIELDS
    if fmt == "json":
        return "".join(json.dumps({f: getattr(r, f) for f in fields}) + "\n" for r in reports)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(fields)
        for r in reports:
            w.writerow([getattr(r, f) for f in fields])
        return buf.getvalue()
    if fmt == "latex":
        if not reports:
            return ""
        if bounds_only:
            head = "\\begin{tabular}{|c|c|c|}\n\\hline\nKnot & v(K) & g(K) \\\\\n\\hline\n"
            rows = [f"{r.name} & {r.v_lower} & {r.genus_lower} \\\\" for r in reports]
        else:
            head = "\\begin{tabular}{|c|c|c|c|}\n\\hline\nKnot & Arrow Polynomial & v(K) & g(K) \\\\\n\\hline\n"
            rows = [latex_row(r, normalized=normalized) for r in reports]
        return head + "".join(row + "\n\\hline\n" for row in rows) + "\\end{tabular}\n"
    if fmt == "text":
        blocks = []
        for r in reports:
            if bounds_only:
                keys = fields
            else:
                shown = "normalized_polynomial" if normalized else "arrow_polynomial"
                keys = [f for f in fields if f not in ("arrow_polynomial", "normalized_polynomial")]
                keys.insert(3, shown)
            width = max(len(k) for k in keys)
            blocks.append("".join(f"{k.ljust(width)}  {getattr(r, k)}\n" for k in keys))
        return "\n".join(blocks)
    raise ValueError(f"unknown format {fmt!r}; expected one of {FORMATS}")

"""Lower bounds read off the arrow polynomial.

* Virtual crossing number: at least the largest k-degree of any summand,
  where ``A^m K_i1^p1 ... K_in^pn`` has k-degree ``i1*p1 + ... + in*pn``.
* Genus of a supporting surface: a surface of genus ``g >= 2`` carries at
  most ``3g - 3`` disjoint essential curve classes (genus 1 carries one), so
  a summand mentioning ``d`` different ``K_i`` needs enough genus for ``d``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .arrowpoly import ArrowMonomial, ArrowPolynomial
from .diagram import GaussCode, format_gauss, writhe
from .statesum import CALIBRATED, Convention, expand

__all__ = [
    "BoundsReport",
    "InvariantReport",
    "k_degree",
    "virtual_crossing_lower_bound",
    "genus_for_curve_count",
    "genus_lower_bound",
    "bounds_report",
    "full_report",
]

GENUS_RULES = ("distinct", "multiplicity")


def k_degree(m: ArrowMonomial) -> int:
    return sum(i * p for i, p in m.k_powers)


def virtual_crossing_lower_bound(p: ArrowPolynomial) -> int:
    return max((k_degree(m) for m in p), default=0)


def _curve_count(m: ArrowMonomial, rule: str) -> int:
    if rule == "distinct":
        return len(m.k_powers)
    if rule == "multiplicity":
        return sum(p for _, p in m.k_powers)
    raise ValueError(f"unknown genus rule {rule!r}; expected one of {GENUS_RULES}")


def genus_for_curve_count(d: int) -> int:
    """Least genus whose surface can hold ``d`` disjoint essential curve classes."""
    if d <= 0:
        return 0
    if d == 1:
        return 1
    return max(2, -(-(d + 3) // 3))


def genus_lower_bound(p: ArrowPolynomial, rule: str = "distinct") -> int:
    """Genus bound from the summand with the most K-variables.

    With ``rule="distinct"`` only different indices count (``K1^3`` is one
    curve class); ``"multiplicity"`` counts every factor.
    """
    d = max((_curve_count(m, rule) for m in p), default=0)
    return genus_for_curve_count(d)


@dataclass(frozen=True)
class BoundsReport:
    max_k_degree: int
    v_lower: int
    genus_lower: int
    v_witnesses: tuple[ArrowMonomial, ...]
    genus_witnesses: tuple[ArrowMonomial, ...]

    @property
    def witness_monomials(self) -> dict[str, tuple[ArrowMonomial, ...]]:
        return {"v": self.v_witnesses, "genus": self.genus_witnesses}


def bounds_report(p: ArrowPolynomial, rule: str = "distinct") -> BoundsReport:
    monos = sorted(p)
    v = virtual_crossing_lower_bound(p)
    d = max((_curve_count(m, rule) for m in monos), default=0)
    v_w = tuple(m for m in monos if v and k_degree(m) == v)
    g_w = tuple(m for m in monos if d and _curve_count(m, rule) == d)
    return BoundsReport(v, v, genus_for_curve_count(d), v_w, g_w)


@dataclass(frozen=True)
class InvariantReport:
    """Everything computed for one knot; polynomials are in canonical text form."""

    name: str
    gauss_code: str
    writhe: int
    arrow_polynomial: str
    normalized_polynomial: str
    bracket: str
    max_k_degree: int
    v_lower: int
    genus_lower: int

    FIELDS = (
        "name", "gauss_code", "writhe", "arrow_polynomial", "normalized_polynomial",
        "bracket", "max_k_degree", "v_lower", "genus_lower",
    )

    def as_dict(self) -> dict:
        return {f: getattr(self, f) for f in self.FIELDS}


def full_report(
    code: GaussCode,
    name: str = "",
    *,
    conv: Convention = CALIBRATED,
    genus_rule: str = "distinct",
    workers: int = 1,
) -> InvariantReport:
    poly = expand(code, conv, workers=workers)
    w = writhe(code)
    b = bounds_report(poly, genus_rule)
    return InvariantReport(
        name=name,
        gauss_code=format_gauss(code),
        writhe=w,
        arrow_polynomial=poly.to_canonical(),
        normalized_polynomial=poly.normalize_writhe(w).to_canonical(),
        bracket=str(poly.specialize_k_one()),
        max_k_degree=b.max_k_degree,
        v_lower=b.v_lower,
        genus_lower=b.genus_lower,
    )

"""Exact sparse polynomials in Z[A, A^-1][K1, K2, ...].

Terms are stored in a dict keyed by :class:`ArrowMonomial`; coefficients are
Python ints, so nothing can overflow.  Zero coefficients and zero K-powers
are never stored, which makes ``==`` a structural comparison.

Canonical text form (used for every fixture file)::

    -A^-5 + A^-5*K1^2 - A^3*K1^2

Terms are sorted by ascending A-exponent, then by the K-part as a tuple of
``(index, power)`` pairs.  ``A^0`` and unit coefficients are omitted.
"""

from __future__ import annotations

import re
from collections import defaultdict
from typing import Iterable, Iterator, Mapping, NamedTuple

__all__ = [
    "PolynomialSyntaxError",
    "ArrowMonomial",
    "ArrowPolynomial",
    "LaurentA",
    "D_LOOP",
    "parse_poly",
]


class PolynomialSyntaxError(ValueError):
    pass


KPart = tuple[tuple[int, int], ...]


class ArrowMonomial(NamedTuple):
    """``A**a_exp * prod(K_i**p for i, p in k_powers)``; ``k_powers`` is sorted by index."""

    a_exp: int = 0
    k_powers: KPart = ()

    @classmethod
    def make(cls, a_exp: int = 0, k_powers: Mapping[int, int] | Iterable[tuple[int, int]] = ()) -> "ArrowMonomial":
        items = k_powers.items() if isinstance(k_powers, Mapping) else k_powers
        merged: dict[int, int] = defaultdict(int)
        for i, p in items:
            if i < 1 or p < 0:
                raise ValueError(f"bad K factor K{i}^{p}")
            merged[i] += p
        return cls(a_exp, tuple(sorted((i, p) for i, p in merged.items() if p)))

    def __mul__(self, other: "ArrowMonomial") -> "ArrowMonomial":  # type: ignore[override]
        if not other.k_powers:
            return ArrowMonomial(self.a_exp + other.a_exp, self.k_powers)
        if not self.k_powers:
            return ArrowMonomial(self.a_exp + other.a_exp, other.k_powers)
        return ArrowMonomial.make(self.a_exp + other.a_exp, self.k_powers + other.k_powers)

    def k_string(self) -> str:
        return "*".join(f"K{i}" if p == 1 else f"K{i}^{p}" for i, p in self.k_powers)


def _format_terms(items: Iterable[tuple[str, int]]) -> str:
    """Join ``(body, coefficient)`` pairs into ``a - b + 3*c`` form."""
    out = []
    for body, c in items:
        mag = abs(c)
        if not body:
            text = str(mag)
        elif mag == 1:
            text = body
        else:
            text = f"{mag}*{body}"
        if not out:
            out.append(text if c > 0 else f"-{text}")
        else:
            out.append(f"{'+' if c > 0 else '-'} {text}")
    return " ".join(out) if out else "0"


def _a_string(e: int) -> str:
    if e == 0:
        return ""
    return "A" if e == 1 else f"A^{e}"


class ArrowPolynomial:
    """Immutable element of Z[A, A^-1][K1, K2, ...]."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[ArrowMonomial, int] | Iterable[tuple[ArrowMonomial, int]] = ()):
        acc: dict[ArrowMonomial, int] = defaultdict(int)
        items = terms.items() if isinstance(terms, Mapping) else terms
        for m, c in items:
            if not isinstance(m, ArrowMonomial):
                m = ArrowMonomial.make(*m)
            acc[m] += int(c)
        self._terms = {m: c for m, c in acc.items() if c}
        self._hash: int | None = None

    @classmethod
    def _wrap(cls, terms: dict[ArrowMonomial, int]) -> "ArrowPolynomial":
        # terms must already be canonical
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def constant(cls, c: int) -> "ArrowPolynomial":
        return cls({ArrowMonomial(): c})

    @classmethod
    def monomial(cls, a_exp: int = 0, k_powers: Mapping[int, int] | Iterable[tuple[int, int]] = (), coeff: int = 1) -> "ArrowPolynomial":
        return cls({ArrowMonomial.make(a_exp, k_powers): coeff})

    @classmethod
    def k(cls, i: int) -> "ArrowPolynomial":
        return cls.monomial(0, {i: 1})

    @property
    def terms(self) -> dict[ArrowMonomial, int]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[ArrowMonomial, int]]:
        return iter(self._terms.items())

    def __iter__(self) -> Iterator[ArrowMonomial]:
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = ArrowPolynomial.constant(other)
        if not isinstance(other, ArrowPolynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"ArrowPolynomial({str(self)!r})"

    def __str__(self) -> str:
        return self.to_canonical()

    def __add__(self, other: "ArrowPolynomial | int") -> "ArrowPolynomial":
        if isinstance(other, int):
            other = ArrowPolynomial.constant(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return ArrowPolynomial._wrap(out)

    __radd__ = __add__

    def __neg__(self) -> "ArrowPolynomial":
        return ArrowPolynomial._wrap({m: -c for m, c in self._terms.items()})

    def __sub__(self, other: "ArrowPolynomial | int") -> "ArrowPolynomial":
        if isinstance(other, int):
            other = ArrowPolynomial.constant(other)
        return self + (-other)

    def __rsub__(self, other: int) -> "ArrowPolynomial":
        return ArrowPolynomial.constant(other) - self

    def __mul__(self, other: "ArrowPolynomial | int") -> "ArrowPolynomial":
        if isinstance(other, int):
            if other == 0:
                return ArrowPolynomial()
            return ArrowPolynomial._wrap({m: c * other for m, c in self._terms.items()})
        acc: dict[ArrowMonomial, int] = defaultdict(int)
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                acc[m1 * m2] += c1 * c2
        return ArrowPolynomial._wrap({m: c for m, c in acc.items() if c})

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "ArrowPolynomial":
        if e < 0:
            raise ValueError("negative powers are only defined for monomials in A")
        result = ArrowPolynomial.constant(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def shift_a(self, k: int, sign: int = 1) -> "ArrowPolynomial":
        """Multiply by ``sign * A**k``."""
        return ArrowPolynomial._wrap({ArrowMonomial(m.a_exp + k, m.k_powers): sign * c for m, c in self._terms.items()})

    def mul_d_power(self, e: int) -> "ArrowPolynomial":
        """Multiply by ``d**e`` with ``d = -A^2 - A^-2``."""
        if e < 0:
            raise ValueError("d has no inverse in this ring")
        return self * D_LOOP ** e

    def normalize_writhe(self, w: int) -> "ArrowPolynomial":
        """Multiply by ``(-A^3)**(-w)``."""
        return self.shift_a(-3 * w, -1 if w % 2 else 1)

    def mirror_a(self) -> "ArrowPolynomial":
        """Substitute ``A -> A^-1``."""
        return ArrowPolynomial._wrap({ArrowMonomial(-m.a_exp, m.k_powers): c for m, c in self._terms.items()})

    def specialize_k_one(self) -> "LaurentA":
        acc: dict[int, int] = defaultdict(int)
        for m, c in self._terms.items():
            acc[m.a_exp] += c
        return LaurentA(acc)

    def k_variables(self) -> set[int]:
        return {i for m in self._terms for i, _ in m.k_powers}

    def to_canonical(self) -> str:
        items = []
        for m in sorted(self._terms):
            parts = [s for s in (_a_string(m.a_exp), m.k_string()) if s]
            items.append(("*".join(parts), self._terms[m]))
        return _format_terms(items)

    def to_latex(self) -> str:
        """Render as a LaTeX math fragment, e.g. ``A^{8}K_1^{2} -3K_1^{2} +2``."""
        out = []
        for m in sorted(self._terms):
            c = self._terms[m]
            body = ""
            if m.a_exp:
                body += f"A^{{{m.a_exp}}}"
            for i, p in m.k_powers:
                body += f"K_{i}" if p == 1 else f"K_{i}^{{{p}}}"
            mag = abs(c)
            coeff = str(mag) if (mag != 1 or not body) else ""
            sign = "-" if c < 0 else ("+" if out else "")
            out.append(f"{sign}{coeff}{body}")
        return " ".join(out) if out else "0"


D_LOOP = ArrowPolynomial({ArrowMonomial(2): -1, ArrowMonomial(-2): -1})


class LaurentA:
    """Immutable Laurent polynomial in A with integer coefficients."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        acc: dict[int, int] = defaultdict(int)
        items = terms.items() if isinstance(terms, Mapping) else terms
        for e, c in items:
            acc[int(e)] += int(c)
        self._terms = {e: c for e, c in acc.items() if c}

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = LaurentA({0: other})
        if not isinstance(other, LaurentA):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: "LaurentA") -> "LaurentA":
        acc = dict(self._terms)
        for e, c in other._terms.items():
            acc[e] = acc.get(e, 0) + c
        return LaurentA(acc)

    def __mul__(self, other: "LaurentA") -> "LaurentA":
        acc: dict[int, int] = defaultdict(int)
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                acc[e1 + e2] += c1 * c2
        return LaurentA(acc)

    def __repr__(self) -> str:
        return f"LaurentA({str(self)!r})"

    def __str__(self) -> str:
        return _format_terms((_a_string(e), self._terms[e]) for e in sorted(self._terms))

    def to_arrow(self) -> ArrowPolynomial:
        return ArrowPolynomial({ArrowMonomial(e): c for e, c in self._terms.items()})


_TERM_RE = re.compile(r"^(?:(\d+)\*?)?((?:A|K\d+)(?:\^-?\d+)?(?:\*(?:A|K\d+)(?:\^-?\d+)?)*)?$")
_FACTOR_RE = re.compile(r"(A|K(\d+))(?:\^(-?\d+))?")


def _parse_term(text: str) -> tuple[ArrowMonomial, int]:
    m = _TERM_RE.match(text)
    if not m or not text:
        raise PolynomialSyntaxError(f"malformed term {text!r}")
    coeff_s, body = m.groups()
    coeff = int(coeff_s) if coeff_s else 1
    if coeff_s and body and not text[len(coeff_s):].startswith("*"):
        raise PolynomialSyntaxError(f"missing '*' after coefficient in {text!r}")
    a = 0
    ks: dict[int, int] = defaultdict(int)
    for f in (body.split("*") if body else []):
        fm = _FACTOR_RE.fullmatch(f)
        if fm is None:
            raise PolynomialSyntaxError(f"malformed factor {f!r} in {text!r}")
        e = int(fm.group(3)) if fm.group(3) is not None else 1
        if fm.group(1) == "A":
            a += e
        else:
            i = int(fm.group(2))
            if i < 1 or e < 0:
                raise PolynomialSyntaxError(f"bad K factor {f!r}")
            ks[i] += e
    return ArrowMonomial.make(a, ks), coeff


def parse_poly(text: str) -> ArrowPolynomial:
    """Parse the canonical text form; also accepts explicit ``1*`` and ``A^0`` factors."""
    s = text.strip()
    if not s:
        raise PolynomialSyntaxError("empty polynomial text")
    if s == "0":
        return ArrowPolynomial()
    tokens = re.split(r"\s+([+-])\s+", s)
    first = tokens[0]
    sign = 1
    if first.startswith("-"):
        sign, first = -1, first[1:]
    pieces = [(sign, first)] + [(1 if op == "+" else -1, t) for op, t in zip(tokens[1::2], tokens[2::2])]
    acc: dict[ArrowMonomial, int] = defaultdict(int)
    for sg, t in pieces:
        mono, c = _parse_term(t.strip())
        acc[mono] += sg * c
    return ArrowPolynomial(acc)

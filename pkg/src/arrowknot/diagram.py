"""Signed Gauss codes of virtual knots.

A Gauss code lists, in traversal order, every passage of the knot through a
classical crossing: ``O3+`` means "pass over crossing 3, which has sign +1".
Virtual crossings are not recorded; nothing computed here depends on them.

The text format is the one used by Green's virtual knot table::

    O1-O2-U1-U2-          (no separators)
    O1- O2- U1- U2-       (single spaces between tokens are allowed)

The empty string is the unknot.
"""

from __future__ import annotations

import enum
import itertools
import re
from dataclasses import dataclass
from typing import Iterator, Sequence

__all__ = [
    "GaussCodeError",
    "MultiComponentError",
    "Strand",
    "GaussPass",
    "GaussCode",
    "Move",
    "MovePair",
    "parse_gauss",
    "format_gauss",
    "writhe",
    "mirror",
    "reverse",
    "rotate",
    "relabel",
    "insert_r1",
    "insert_r2",
    "r3_fixture_pairs",
    "enumerate_codes",
]


class GaussCodeError(ValueError):
    """Raised for text or pass sequences that are not a valid knot Gauss code."""


class MultiComponentError(GaussCodeError):
    """Raised when the input uses link (multi-component) syntax."""


class Strand(enum.Enum):
    OVER = "O"
    UNDER = "U"

    def flipped(self) -> "Strand":
        return Strand.UNDER if self is Strand.OVER else Strand.OVER


@dataclass(frozen=True)
class GaussPass:
    crossing: int
    strand: Strand
    sign: int

    @property
    def is_over(self) -> bool:
        return self.strand is Strand.OVER

    def __str__(self) -> str:
        return f"{self.strand.value}{self.crossing}{'+' if self.sign > 0 else '-'}"


@dataclass(frozen=True)
class GaussCode:
    """A validated cyclic sequence of passes; construction checks every invariant."""

    passes: tuple[GaussPass, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "passes", tuple(self.passes))
        _validate(self.passes)

    def __len__(self) -> int:
        return len(self.passes)

    def __iter__(self) -> Iterator[GaussPass]:
        return iter(self.passes)

    def __str__(self) -> str:
        return format_gauss(self)

    @property
    def n_crossings(self) -> int:
        return len(self.passes) // 2

    @property
    def crossings(self) -> list[int]:
        """Crossing ids in order of first appearance."""
        return list(dict.fromkeys(p.crossing for p in self.passes))

    def signs(self) -> dict[int, int]:
        return {p.crossing: p.sign for p in self.passes}

    def positions(self) -> dict[int, tuple[int, int]]:
        """Map crossing id to ``(over_position, under_position)``."""
        over: dict[int, int] = {}
        under: dict[int, int] = {}
        for i, p in enumerate(self.passes):
            (over if p.is_over else under)[p.crossing] = i
        return {c: (over[c], under[c]) for c in over}


def _validate(passes: Sequence[GaussPass]) -> None:
    seen: dict[int, list[GaussPass]] = {}
    for p in passes:
        if not isinstance(p.crossing, int) or p.crossing < 1:
            raise GaussCodeError(f"crossing id must be a positive integer, got {p.crossing!r}")
        if p.sign not in (1, -1):
            raise GaussCodeError(f"crossing sign must be +1 or -1, got {p.sign!r}")
        seen.setdefault(p.crossing, []).append(p)
    for cid, ps in seen.items():
        if len(ps) != 2:
            raise GaussCodeError(f"crossing {cid} appears {len(ps)} times (expected 2)")
        a, b = ps
        if a.strand is b.strand:
            word = "over" if a.is_over else "under"
            raise GaussCodeError(f"crossing {cid} is passed {word} twice")
        if a.sign != b.sign:
            raise GaussCodeError(f"crossing {cid} has inconsistent signs")


_TOKEN = re.compile(r"([OU])(\d+)([+\-−])")
_LINK_SYNTAX = re.compile(r"[,;|()\[\]{}/]")


def parse_gauss(text: str) -> GaussCode:
    """Parse Gauss-code text such as ``"O1-O2-U1-U2-"`` into a :class:`GaussCode`."""
    text = text.strip()
    if _LINK_SYNTAX.search(text):
        raise MultiComponentError(f"multi-component Gauss codes are not supported: {text!r}")
    passes = []
    pos = 0
    while pos < len(text):
        if text[pos] == " " and pos > 0 and text[pos - 1] != " ":
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if m is None:
            raise GaussCodeError(f"malformed token at offset {pos}: {text[pos:pos + 8]!r}")
        strand, k, s = m.groups()
        if int(k) < 1:
            raise GaussCodeError(f"crossing id must be >= 1 at offset {pos}")
        passes.append(GaussPass(int(k), Strand(strand), 1 if s == "+" else -1))
        pos = m.end()
    return GaussCode(tuple(passes))


def format_gauss(code: GaussCode, *, separator: str = "") -> str:
    return separator.join(str(p) for p in code.passes)


def writhe(code: GaussCode) -> int:
    return sum(p.sign for p in code.passes if p.is_over)


def mirror(code: GaussCode) -> GaussCode:
    """Swap over/under at every crossing; this negates every sign."""
    return GaussCode(tuple(GaussPass(p.crossing, p.strand.flipped(), -p.sign) for p in code.passes))


def reverse(code: GaussCode) -> GaussCode:
    return GaussCode(tuple(reversed(code.passes)))


def rotate(code: GaussCode, k: int) -> GaussCode:
    if not code.passes:
        return code
    k %= len(code.passes)
    return GaussCode(code.passes[k:] + code.passes[:k])


def relabel(code: GaussCode, mapping: dict[int, int] | None = None) -> GaussCode:
    """Rename crossings; by default to ``1..n`` in order of first appearance."""
    if mapping is None:
        mapping = {c: i for i, c in enumerate(code.crossings, start=1)}
    return GaussCode(tuple(GaussPass(mapping[p.crossing], p.strand, p.sign) for p in code.passes))


def _fresh_id(code: GaussCode) -> int:
    return max((p.crossing for p in code.passes), default=0) + 1


def insert_r1(code: GaussCode, position: int, kink_sign: int, chirality: str = "OU") -> GaussCode:
    """Insert a Reidemeister I kink before ``position``.

    ``chirality`` is ``"OU"`` (over pass first) or ``"UO"``.
    """
    if not 0 <= position <= len(code):
        raise IndexError(f"position {position} out of range for code of length {len(code)}")
    if chirality not in ("OU", "UO"):
        raise ValueError(f"chirality must be 'OU' or 'UO', got {chirality!r}")
    c = _fresh_id(code)
    first = Strand(chirality[0])
    kink = (GaussPass(c, first, kink_sign), GaussPass(c, first.flipped(), kink_sign))
    ps = code.passes
    return GaussCode(ps[:position] + kink + ps[position:])


def insert_r2(
    code: GaussCode,
    pos_a: int,
    pos_b: int,
    variant: str = "over_first",
    *,
    parallel: bool = False,
    sign: int = 1,
) -> GaussCode:
    """Insert a Reidemeister II bigon between two arcs.

    Two fresh crossings ``i`` (sign ``sign``) and ``j`` (sign ``-sign``) are
    added: the arc at ``pos_a`` passes ``i, j`` on one level and the arc at
    ``pos_b`` passes ``j, i`` (or ``i, j`` when ``parallel``) on the other.
    ``variant="under_first"`` puts the ``pos_a`` arc underneath.
    """
    if not 0 <= pos_a <= pos_b <= len(code):
        raise IndexError(f"need 0 <= pos_a <= pos_b <= {len(code)}, got {pos_a}, {pos_b}")
    if variant not in ("over_first", "under_first"):
        raise ValueError(f"unknown R2 variant {variant!r}")
    i = _fresh_id(code)
    j = i + 1
    top = Strand.OVER if variant == "over_first" else Strand.UNDER
    first = (GaussPass(i, top, sign), GaussPass(j, top, -sign))
    second_order = (i, j) if parallel else (j, i)
    sgn = {i: sign, j: -sign}
    second = tuple(GaussPass(c, top.flipped(), sgn[c]) for c in second_order)
    ps = code.passes
    return GaussCode(ps[:pos_a] + first + ps[pos_a:pos_b] + second + ps[pos_b:])


class Move(enum.Enum):
    R1 = "R1"
    R2 = "R2"
    R3 = "R3"
    MIRROR = "Mirror"
    REVERSE = "Reverse"


@dataclass(frozen=True)
class MovePair:
    before: GaussCode
    after: GaussCode
    move: Move


# Closures of 3-strand braids (some with a virtual generator) before and after
# one braid relation s1 s2 s1 <-> s2 s1 s2 or s1 s2 s1^-1 <-> s2^-1 s1 s2.
_R3_PAIRS = [
    ("O1-O2-U2-U3-U1-O3-", "O1-O2-U3-U1-O3-U2-"),            # s1 s2 s1 v1
    ("O1-O2-U2-U3-O4-U1-O3-U4-", "O1-O2-U3-U1-O4-O3-U2-U4-"),  # s1 s2 s1 s1
    ("U1+U2+O1+U3+O2+O3+", "U1+U2+U3+O2+O3+O1+"),            # s1^-1 s2^-1 s1^-1 v2
    ("O1-O2-U2-O3+U1-U3+", "O1-O2-O3+U1-U3+U2-"),            # s1 s2 s1^-1 v1
    ("U1+O2-O3+O1+O4-U3+U2-U4-", "O1-U2+O3+O4-O2+U3+U4-U1-"),  # s1^-1 s2 s1 s2^-1
]


def r3_fixture_pairs() -> list[MovePair]:
    """Gauss-code pairs that differ by a single Reidemeister III move."""
    return [MovePair(parse_gauss(a), parse_gauss(b), Move.R3) for a, b in _R3_PAIRS]


def _matchings(points: list[int]) -> Iterator[list[tuple[int, int]]]:
    if not points:
        yield []
        return
    first = points[0]
    for k in range(1, len(points)):
        rest = points[1:k] + points[k + 1:]
        for m in _matchings(rest):
            yield [(first, points[k])] + m


def enumerate_codes(n: int) -> Iterator[GaussCode]:
    """Every Gauss code with exactly ``n`` crossings, labelled by first appearance.

    Rotations of one code are listed separately; there are
    ``(2n-1)!! * 4**n`` codes in total.
    """
    for chords in _matchings(list(range(2 * n))):
        for overs in itertools.product((True, False), repeat=n):
            for signs in itertools.product((1, -1), repeat=n):
                slots: list[GaussPass | None] = [None] * (2 * n)
                for c, ((a, b), first_over, s) in enumerate(zip(chords, overs, signs), start=1):
                    top = Strand.OVER if first_over else Strand.UNDER
                    slots[a] = GaussPass(c, top, s)
                    slots[b] = GaussPass(c, top.flipped(), s)
                yield GaussCode(tuple(slots))  # type: ignore[arg-type]

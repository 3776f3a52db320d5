"""State-sum expansion of the arrow polynomial.

Every classical crossing is smoothed in one of two ways.  The smoothing that
follows the strand orientation leaves no marks; the other one reverses the
orientation and leaves a cusp on each of its two new arcs.  A state is one
choice per crossing; it falls apart into closed loops.  A loop whose cusp
signs sum to ``s`` evaluates to ``K_{|s|/2}`` (``K_0 = 1``), and

    <K>_A = sum over states  A^(#A - #B) * d^(loops - 1) * prod(loop values)

with ``d = -A^2 - A^-2``.

Tracing works directly on the Gauss code.  Positions ``0..2n-1`` are the
passes; arc ``a`` runs from position ``a`` to ``a + 1``.  A traversal token
is an arc together with a direction.
"""

from __future__ import annotations

import itertools
import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .arrowpoly import D_LOOP, ArrowMonomial, ArrowPolynomial, LaurentA
from .diagram import GaussCode

__all__ = [
    "CalibrationError",
    "Convention",
    "CALIBRATED",
    "SmoothingChoice",
    "StateLoop",
    "trace_state",
    "reduce_loop",
    "expand",
    "candidate_conventions",
    "calibrate_convention",
    "bracket_oracle",
]

SINK, SOURCE = "sink", "source"


class CalibrationError(RuntimeError):
    """Fixture set left zero or several conventions standing."""

    def __init__(self, message: str, survivors: Sequence["Convention"] = ()):
        super().__init__(message)
        self.survivors = list(survivors)


@dataclass(frozen=True)
class Convention:
    """Which smoothing is orientation-preserving, and how cusps are signed.

    ``oriented_positive`` / ``oriented_negative`` give the smoothing letter
    ("A" or "B") that follows the orientation at a crossing of that sign.
    The four cusp fields give the cusp sign seen when a disoriented band is
    entered from the over strand; entering the same band from the under
    strand runs it the other way and sees the opposite sign.  The sink band
    joins the two incoming ends, the source band the two outgoing ends.
    """

    oriented_positive: str = "A"
    oriented_negative: str = "B"
    sink_positive: int = 1
    source_positive: int = -1
    sink_negative: int = -1
    source_negative: int = 1

    @property
    def oriented_letter(self) -> dict[int, str]:
        return {1: self.oriented_positive, -1: self.oriented_negative}

    @property
    def cusp_sign_rule(self) -> dict[tuple[int, str, bool], int]:
        """``(crossing sign, band, entered from over strand) -> cusp sign``."""
        base = {
            (1, SINK): self.sink_positive,
            (1, SOURCE): self.source_positive,
            (-1, SINK): self.sink_negative,
            (-1, SOURCE): self.source_negative,
        }
        rule = {}
        for (s, band), e in base.items():
            rule[(s, band, True)] = e
            rule[(s, band, False)] = -e
        return rule

    def cusp_sign(self, sign: int, band: str, from_over: bool) -> int:
        e = {SINK: {1: self.sink_positive, -1: self.sink_negative},
             SOURCE: {1: self.source_positive, -1: self.source_negative}}[band][sign]
        return e if from_over else -e

    def flipped(self) -> "Convention":
        """Negate every cusp sign; loop indices depend only on ``|sum|``, so nothing changes."""
        return Convention(self.oriented_positive, self.oriented_negative,
                          -self.sink_positive, -self.source_positive,
                          -self.sink_negative, -self.source_negative)


# Fixed by calibrate_convention against the bracket of a kink and a classical
# trefoil, the virtualized trefoil, and the tabulated four-crossing knots.
CALIBRATED = Convention()


@dataclass(frozen=True)
class SmoothingChoice:
    """Bit ``i`` of ``mask`` smooths the ``i``-th crossing (first-appearance order): 0 = A, 1 = B."""

    mask: int
    n: int

    def __post_init__(self) -> None:
        if not 0 <= self.mask < (1 << self.n):
            raise ValueError(f"mask {self.mask} does not fit {self.n} crossings")

    def letter(self, i: int) -> str:
        return "B" if (self.mask >> i) & 1 else "A"

    @property
    def a_count(self) -> int:
        return self.n - self.mask.bit_count()


@dataclass(frozen=True)
class StateLoop:
    cusp_word: tuple[int, ...] = ()

    @property
    def index(self) -> int:
        return reduce_loop(self.cusp_word)


def reduce_loop(word: Sequence[int]) -> int:
    """Loop index after cancelling adjacent opposite cusps: ``|sum| / 2``."""
    if len(word) % 2:
        raise ValueError(f"cusp word must have even length, got {len(word)}")
    return abs(sum(word)) // 2


class _Routing:
    """Per-token successor tables for one code under one convention."""

    def __init__(self, code: GaussCode, conv: Convention):
        passes = code.passes
        m = len(passes)
        order = {c: i for i, c in enumerate(code.crossings)}
        partner = [0] * m
        for c, (p, q) in code.positions().items():
            partner[p], partner[q] = q, p
        self.m = m
        self.n = len(order)
        self.bit = [0] * (2 * m)
        self.next_oriented = [0] * (2 * m)
        self.next_disoriented = [0] * (2 * m)
        self.cusp = [0] * (2 * m)
        for arc, d in itertools.product(range(m), (0, 1)):
            t = 2 * arc + d
            pos = (arc + 1) % m if d == 0 else arc
            pas = passes[pos]
            other = partner[pos]
            self.bit[t] = 1 << order[pas.crossing]
            if d == 0:
                # arriving on the incoming end
                self.next_oriented[t] = 2 * other
                self.next_disoriented[t] = 2 * ((other - 1) % m) + 1
                self.cusp[t] = conv.cusp_sign(pas.sign, SINK, pas.is_over)
            else:
                self.next_oriented[t] = 2 * ((other - 1) % m) + 1
                self.next_disoriented[t] = 2 * other
                self.cusp[t] = conv.cusp_sign(pas.sign, SOURCE, pas.is_over)
        signs = code.signs()
        self.flip_mask = 0
        for c, i in order.items():
            if conv.oriented_letter[signs[c]] == "B":
                self.flip_mask |= 1 << i

    def as_tuple(self) -> tuple:
        return (self.m, self.n, self.bit, self.next_oriented, self.next_disoriented, self.cusp, self.flip_mask)


def trace_state(code: GaussCode, choice: SmoothingChoice | int, conv: Convention = CALIBRATED) -> list[StateLoop]:
    """Split one state into loops, each with its cyclic word of cusp signs.

    Loops are listed by their lowest arc, each traversed starting forward
    along that arc.
    """
    if not code.passes:
        return [StateLoop()]
    r = _Routing(code, conv)
    if isinstance(choice, int):
        choice = SmoothingChoice(choice, r.n)
    dis = choice.mask ^ r.flip_mask
    seen = [False] * r.m
    loops = []
    for start_arc in range(r.m):
        if seen[start_arc]:
            continue
        word = []
        t = start = 2 * start_arc
        while True:
            seen[t >> 1] = True
            if dis & r.bit[t]:
                word.append(r.cusp[t])
                t = r.next_disoriented[t]
            else:
                t = r.next_oriented[t]
            if t == start:
                break
        loops.append(StateLoop(tuple(word)))
    return loops


def _count_states(table: tuple, lo: int, hi: int) -> Counter:
    """Tally ``(b_count, loop_count, sorted nonzero loop indices)`` over masks ``lo..hi-1``."""
    m, n, bit, nxt_o, nxt_d, cusp, flip = table
    tally: Counter = Counter()
    starts = range(0, 2 * m, 2)
    for mask in range(lo, hi):
        dis = mask ^ flip
        seen = bytearray(m)
        loops = 0
        kpart = []
        for start in starts:
            if seen[start >> 1]:
                continue
            t = start
            s = 0
            while True:
                seen[t >> 1] = 1
                if dis & bit[t]:
                    s += cusp[t]
                    t = nxt_d[t]
                else:
                    t = nxt_o[t]
                if t == start:
                    break
            loops += 1
            if s:
                kpart.append(abs(s) >> 1)
        if len(kpart) > 1:
            kpart.sort()
        tally[(mask.bit_count(), loops, tuple(kpart))] += 1
    return tally


def _assemble(n: int, tally: Counter) -> ArrowPolynomial:
    d_powers: dict[int, ArrowPolynomial] = {}
    acc: dict[ArrowMonomial, int] = Counter()
    for (b, loops, kpart), count in tally.items():
        dp = d_powers.get(loops)
        if dp is None:
            dp = d_powers[loops] = D_LOOP ** (loops - 1)
        kp = tuple(Counter(kpart).items())
        for mono, c in dp.items():
            acc[ArrowMonomial(mono.a_exp + n - 2 * b, kp)] += c * count
    return ArrowPolynomial(acc)


def _chunks(total: int, parts: int) -> list[tuple[int, int]]:
    parts = max(1, min(parts, total))
    step, extra = divmod(total, parts)
    out, lo = [], 0
    for i in range(parts):
        hi = lo + step + (1 if i < extra else 0)
        out.append((lo, hi))
        lo = hi
    return out


def _count_range(args: tuple) -> Counter:
    table, lo, hi = args
    return _count_states(table, lo, hi)


def expand(
    code: GaussCode,
    conv: Convention = CALIBRATED,
    *,
    workers: int = 1,
    chunks: int | None = None,
    stats: dict | None = None,
) -> ArrowPolynomial:
    """Unnormalized arrow polynomial ``<K>_A`` of ``code``.

    The ``2**n`` states are split into ``chunks`` contiguous mask ranges;
    with ``workers > 1`` the ranges are evaluated in a process pool.  Partial
    tallies are plain integer counts, so the result does not depend on how
    the state space is cut.  ``workers=0`` means one worker per CPU.
    """
    if not code.passes:
        if stats is not None:
            stats["states"] = stats.get("states", 0) + 1
        return ArrowPolynomial.constant(1)
    table = _Routing(code, conv).as_tuple()
    n = table[1]
    total = 1 << n
    if workers == 0:
        workers = os.cpu_count() or 1
    ranges = _chunks(total, chunks if chunks is not None else (1 if workers == 1 else 4 * workers))
    tally: Counter = Counter()
    if workers == 1:
        for lo, hi in ranges:
            tally.update(_count_states(table, lo, hi))
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for part in pool.map(_count_range, [(table, lo, hi) for lo, hi in ranges]):
                tally.update(part)
    if stats is not None:
        stats["states"] = stats.get("states", 0) + sum(tally.values())
    return _assemble(n, tally)


def candidate_conventions() -> Iterator[Convention]:
    """The 16 conventions left after fixing ``sink_positive = +1``.

    Flipping every cusp sign is an exact symmetry (see ``Convention.flipped``),
    so the other 16 of the full 2 x 16 space are duplicates.
    """
    for letters in (("A", "B"), ("B", "A")):
        for src_p, snk_n, src_n in itertools.product((1, -1), repeat=3):
            yield Convention(letters[0], letters[1], 1, src_p, snk_n, src_n)


def calibrate_convention(fixtures: Iterable[tuple[GaussCode, ArrowPolynomial]]) -> Convention:
    """Return the single candidate convention whose expansion matches every fixture."""
    fixtures = list(fixtures)
    if not fixtures:
        raise ValueError("calibration needs at least one fixture")
    survivors = [
        conv for conv in candidate_conventions()
        if all(expand(code, conv) == target for code, target in fixtures)
    ]
    if len(survivors) != 1:
        raise CalibrationError(
            f"{len(survivors)} conventions match the {len(fixtures)} fixtures (expected exactly 1)",
            survivors,
        )
    return survivors[0]


def _find(parent: list[int], x: int) -> int:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def bracket_oracle(code: GaussCode) -> LaurentA:
    """Classical bracket polynomial by loop counting only, with union-find on arc ends.

    At a crossing, the A-smoothing opens a channel between the two regions
    swept when the over strand turns counterclockwise.  For a positive crossing
    that joins incoming-over to outgoing-under; for a negative one it joins the
    two incoming ends.
    """
    m = len(code.passes)
    if m == 0:
        return LaurentA({0: 1})
    crossings = code.positions()
    signs = code.signs()
    order = code.crossings
    n = len(order)
    d = LaurentA({2: -1, -2: -1})
    d_pow = [LaurentA({0: 1})]
    for _ in range(n + 1):
        d_pow.append(d_pow[-1] * d)

    def head(arc: int) -> int:
        return 2 * (arc % m) + 1

    def tail(arc: int) -> int:
        return 2 * (arc % m)

    total: dict[int, int] = Counter()
    for bits in itertools.product((0, 1), repeat=n):
        parent = list(range(2 * m))
        for arc in range(m):
            parent[_find(parent, tail(arc))] = _find(parent, head(arc))
        for c, use_b in zip(order, bits):
            p, q = crossings[c]
            in_over, out_over = head(p - 1), tail(p)
            in_under, out_under = head(q - 1), tail(q)
            a_joins_oriented = signs[c] > 0
            if a_joins_oriented != bool(use_b):
                pairs = ((in_over, out_under), (in_under, out_over))
            else:
                pairs = ((in_over, in_under), (out_over, out_under))
            for x, y in pairs:
                parent[_find(parent, x)] = _find(parent, y)
        loops = len({_find(parent, x) for x in range(2 * m)})
        b = sum(bits)
        for e, c in d_pow[loops - 1].terms.items():
            total[e + n - 2 * b] += c
    return LaurentA(total)

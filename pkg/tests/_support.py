"""Shared generators for the test suite."""

from __future__ import annotations

import random

from hypothesis import strategies as st

from arrowknot.diagram import GaussCode, GaussPass, Strand


def build_code(order: list[int], first_over: list[bool], signs: list[int]) -> GaussCode:
    """``order`` lists each crossing index 0..n-1 twice; the first visit is over iff ``first_over``."""
    seen: set[int] = set()
    passes = []
    for c in order:
        over = first_over[c] if c not in seen else not first_over[c]
        seen.add(c)
        passes.append(GaussPass(c + 1, Strand.OVER if over else Strand.UNDER, signs[c]))
    return GaussCode(tuple(passes))


def random_code(rng: random.Random, n: int) -> GaussCode:
    order = [i for i in range(n) for _ in (0, 1)]
    rng.shuffle(order)
    return build_code(order, [rng.random() < 0.5 for _ in range(n)], [rng.choice((1, -1)) for _ in range(n)])


@st.composite
def gauss_codes(draw, max_crossings: int = 4, min_crossings: int = 0) -> GaussCode:
    n = draw(st.integers(min_crossings, max_crossings))
    order = draw(st.permutations([i for i in range(n) for _ in (0, 1)]))
    first_over = draw(st.lists(st.booleans(), min_size=n, max_size=n))
    signs = draw(st.lists(st.sampled_from((1, -1)), min_size=n, max_size=n))
    return build_code(list(order), first_over, signs)


def rewrite_reduce(word: tuple[int, ...]) -> int:
    """Cancel adjacent opposite cusps in a cyclic word until none remain; return half the leftover length.

    Every cancellation order is explored, and all of them must agree.
    """
    results = set()
    stack = [tuple(word)]
    seen = set()
    while stack:
        w = stack.pop()
        if w in seen:
            continue
        seen.add(w)
        m = len(w)
        moves = [i for i in range(m) if m >= 2 and w[i] == -w[(i + 1) % m]]
        if not moves:
            results.add(m // 2)
            continue
        for i in moves:
            j = (i + 1) % m
            stack.append(tuple(x for k, x in enumerate(w) if k not in (i, j)))
    if len(results) != 1:
        raise AssertionError(f"rewriting is not confluent on {word}: {results}")
    return results.pop()

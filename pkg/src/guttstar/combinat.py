"""Multiset enumeration helpers shared by the star-product formulas."""

from __future__ import annotations

from collections import Counter
from math import factorial, prod
from typing import Iterator, Sequence


def multiplicity_weight(seq: Sequence[int]) -> int:
    """prod of m_i! over the letter multiplicities of seq."""
    return prod(factorial(m) for m in Counter(seq).values())


def distinct_permutations(seq: Sequence[int]) -> Iterator[tuple]:
    """Each distinct arrangement of the multiset seq exactly once, in lex order."""
    counts = sorted(Counter(seq).items())
    letters = [c for c, _ in counts]
    left = [m for _, m in counts]
    n = len(seq)
    out: list = []

    def rec():
        if len(out) == n:
            yield tuple(out)
            return
        for i, c in enumerate(letters):
            if left[i]:
                left[i] -= 1
                out.append(c)
                yield from rec()
                out.pop()
                left[i] += 1

    yield from rec()


def distinct_prefixes(seq: Sequence[int], j: int) -> Iterator[tuple[tuple, tuple, int]]:
    """Ordered length-j prefixes drawn from the multiset seq.

    Yields (prefix, sorted remainder, count) where count is the number of
    permutations sigma of seq whose first j entries spell the prefix.
    """
    counts = sorted(Counter(seq).items())
    letters = [c for c, _ in counts]
    mult = [m for _, m in counts]
    left = mult[:]
    rest_fact = factorial(len(seq) - j)
    out: list = []

    def rec():
        if len(out) == j:
            w = rest_fact
            for m, l in zip(mult, left):
                w *= factorial(m) // factorial(l)
            rest = tuple(c for c, l in zip(letters, left) for _ in range(l))
            yield tuple(out), rest, w
            return
        for i, c in enumerate(letters):
            if left[i]:
                left[i] -= 1
                out.append(c)
                yield from rec()
                out.pop()
                left[i] += 1

    yield from rec()

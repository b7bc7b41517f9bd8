"""Pure-Python perfect-matching enumeration (fallback kernel).

Ports are integers 0..n-1; allowed[i] is a bitmask of partners port i may pair
with. Enumerates every way to pair up all n ports into allowed pairs, emitting
each matching as a tuple of (i, j) pairs with i < j, ordered by i. Always
pairing the lowest unmatched port keeps the output in lexicographic order and
each matching canonical by construction.

The compiled twin in _matching_c must produce byte-identical output; the
selection between them happens in robocim.matching.
"""

from __future__ import annotations

from typing import Sequence


def enumerate_matchings(n: int, allowed: Sequence[int]) -> list[tuple[tuple[int, int], ...]]:
    if n == 0:
        return [()]
    if n % 2:
        return []
    out: list[tuple[tuple[int, int], ...]] = []
    pairs: list[tuple[int, int]] = []

    def rec(remaining: int) -> None:
        if not remaining:
            out.append(tuple(pairs))
            return
        low = remaining & -remaining
        i = low.bit_length() - 1
        rest = remaining ^ low
        cand = allowed[i] & rest
        while cand:
            jbit = cand & -cand
            cand ^= jbit
            pairs.append((i, jbit.bit_length() - 1))
            rec(rest ^ jbit)
            pairs.pop()

    rec((1 << n) - 1)
    return out

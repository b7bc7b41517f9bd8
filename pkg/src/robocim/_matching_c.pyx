# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled perfect-matching enumeration kernel.

Same contract as robocim._matching_py.enumerate_matchings: for n ports and
per-port partner bitmasks, emit every total pairing as a tuple of (i, j)
pairs in lexicographic order. Limited to 64 ports (single-word bitmasks);
the selector falls back to the Python kernel beyond that.
"""

MAX_PORTS = 64


cdef int _lowest_bit(unsigned long long mask):
    cdef int i = 0
    while not (mask & 1):
        mask >>= 1
        i += 1
    return i


cdef void _rec(
    unsigned long long remaining,
    unsigned long long* adj,
    int* stack,
    int depth,
    list out,
):
    cdef unsigned long long low, cand, jbit
    cdef int i, j, d
    if remaining == 0:
        result = []
        for d in range(depth):
            result.append((stack[2 * d], stack[2 * d + 1]))
        out.append(tuple(result))
        return
    low = remaining & (~remaining + 1)
    i = _lowest_bit(low)
    remaining ^= low
    cand = adj[i] & remaining
    while cand:
        jbit = cand & (~cand + 1)
        cand ^= jbit
        j = _lowest_bit(jbit)
        stack[2 * depth] = i
        stack[2 * depth + 1] = j
        _rec(remaining ^ jbit, adj, stack, depth + 1, out)


def enumerate_matchings(int n, allowed):
    if n == 0:
        return [()]
    if n % 2:
        return []
    if n > MAX_PORTS:
        raise ValueError(f"compiled kernel supports at most {MAX_PORTS} ports, got {n}")
    cdef unsigned long long adj[64]
    cdef int stack[64]
    cdef int i
    for i in range(n):
        adj[i] = allowed[i]
    out = []
    _rec((<unsigned long long>1 << n) - 1, adj, stack, 0, out)
    return out

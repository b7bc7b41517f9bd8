"""Matching kernel: compiled and pure twins must agree exactly."""

import itertools
import random

import pytest

from robocim._matching_py import enumerate_matchings as py_kernel

try:
    from robocim._matching_c import enumerate_matchings as c_kernel
except ImportError:
    c_kernel = None

needs_ext = pytest.mark.skipif(c_kernel is None, reason="compiled kernel not built")


def random_masks(rng, n, density):
    allowed = [0] * n
    for i, j in itertools.combinations(range(n), 2):
        if rng.random() < density:
            allowed[i] |= 1 << j
            allowed[j] |= 1 << i
    return allowed


def brute_reference(n, allowed):
    """Third opinion: filter every permutation-derived pairing."""
    found = set()
    for perm in itertools.permutations(range(n)):
        pairs = []
        ok = True
        for idx in range(0, n, 2):
            i, j = sorted((perm[idx], perm[idx + 1]))
            if not (allowed[i] >> j) & 1:
                ok = False
                break
            pairs.append((i, j))
        if ok:
            found.add(tuple(sorted(pairs)))
    return sorted(found)


def test_empty_and_odd_inputs():
    assert py_kernel(0, []) == [()]
    assert py_kernel(3, [0, 0, 0]) == []


def test_matches_brute_reference_on_small_instances():
    rng = random.Random(41)
    for n in (2, 4, 6):
        for _ in range(15):
            allowed = random_masks(rng, n, rng.uniform(0.2, 0.9))
            assert py_kernel(n, allowed) == brute_reference(n, allowed)


def test_output_is_canonical_and_lexicographically_sorted():
    rng = random.Random(43)
    for _ in range(20):
        n = rng.choice((4, 6, 8, 10))
        out = py_kernel(n, random_masks(rng, n, 0.6))
        assert out == sorted(out)
        for matching in out:
            assert all(i < j for i, j in matching)
            assert [p[0] for p in matching] == sorted(p[0] for p in matching)
            used = [x for pair in matching for x in pair]
            assert sorted(used) == list(range(n))


@needs_ext
def test_compiled_kernel_equals_python_kernel():
    rng = random.Random(47)
    for _ in range(40):
        n = rng.choice((2, 4, 6, 8, 10, 12))
        allowed = random_masks(rng, n, rng.uniform(0.1, 0.95))
        assert c_kernel(n, allowed) == py_kernel(n, allowed)


@needs_ext
def test_compiled_kernel_rejects_oversized_inputs():
    with pytest.raises(ValueError):
        c_kernel(66, [0] * 66)


def test_selector_falls_back_cleanly(monkeypatch):
    import importlib

    import robocim.matching as m

    monkeypatch.setenv("ROBOCIM_PURE_PYTHON", "1")
    reloaded = importlib.reload(m)
    try:
        assert reloaded.kernel_backend() == "python"
    finally:
        monkeypatch.delenv("ROBOCIM_PURE_PYTHON")
        importlib.reload(m)

"""Justification ordering and basic model behavior."""

import pytest

from robocim import JustificationLevel, justification_stronger
from robocim.model import CERTAINTY_RANK, DEFAULT_GRADE

L = JustificationLevel


def test_strength_order_is_primary_down_to_observation():
    ranked = sorted(L, key=lambda lvl: lvl.rank, reverse=True)
    assert [lvl.value for lvl in ranked] == ["primary", "empirical", "secondary", "observation"]


@pytest.mark.parametrize(
    "a,b,expected",
    [
        (L.PRIMARY, L.OBSERVATION, True),
        (L.EMPIRICAL, L.EMPIRICAL, False),  # strict order is irreflexive
        (L.SECONDARY, L.EMPIRICAL, False),
        (L.PRIMARY, L.EMPIRICAL, True),
        (L.EMPIRICAL, L.SECONDARY, True),
        (L.SECONDARY, L.OBSERVATION, True),
        (L.OBSERVATION, L.PRIMARY, False),
    ],
)
def test_justification_stronger(a, b, expected):
    assert justification_stronger(a, b) is expected


def test_stronger_is_a_strict_total_order():
    levels = list(L)
    for a in levels:
        for b in levels:
            if a is b:
                assert not justification_stronger(a, b)
            else:
                # exactly one direction holds
                assert justification_stronger(a, b) != justification_stronger(b, a)


def test_default_grade_ranks_below_every_level():
    assert all(CERTAINTY_RANK[DEFAULT_GRADE] < CERTAINTY_RANK[lvl.value] for lvl in L)

"""Property checks over seeded random catalogs.

Plain seeded loops rather than a fuzzing framework: failures reproduce exactly
and the generator (robocim.randgen) is shared with the benchmarks.
"""

import dataclasses
import random

from robocim import (
    JustificationLevel,
    Polarity,
    QueryRequirements,
    Scope,
    VerdictStatus,
    check_configuration,
    check_port_connection,
    enumerate_configurations,
    loads_catalog,
    resolve_compatibility,
    serialize_catalog,
    validate_catalog,
)
from robocim.randgen import random_catalog

from conftest import chain_catalog, claim

LEVELS = list(JustificationLevel)


def pairs_of(cat):
    ids = sorted(cat.products_by_id)
    return [(a, b) for i, a in enumerate(ids) for b in ids[i + 1 :]]


def test_generator_output_is_always_valid():
    rng = random.Random(11)
    for _ in range(50):
        cat = random_catalog(rng, with_series=rng.random() < 0.3)
        assert validate_catalog(cat) == []


def test_round_trip_over_random_catalogs():
    rng = random.Random(13)
    for _ in range(30):
        cat = random_catalog(rng, with_series=rng.random() < 0.3)
        assert loads_catalog(serialize_catalog(cat)) == cat


def test_resolution_symmetry():
    rng = random.Random(17)
    for _ in range(40):
        cat = random_catalog(rng, claim_count=5)
        for a, b in pairs_of(cat):
            for scope in Scope:
                assert resolve_compatibility(cat, a, b, scope) == resolve_compatibility(cat, b, a, scope)


def test_adding_compatible_claims_never_turns_default_into_incompatible():
    rng = random.Random(19)
    for _ in range(60):
        cat = random_catalog(rng, claim_count=3)
        a, b = rng.sample(sorted(cat.products_by_id), 2)
        scope = rng.choice(list(Scope))
        before = resolve_compatibility(cat, a, b, scope)
        added = claim("compatible", scope.value, a, b, rng.choice(LEVELS).value, "added")
        after = resolve_compatibility(dataclasses.replace(cat, claims=cat.claims + (added,)), a, b, scope)
        if before.status is VerdictStatus.COMPATIBLE_BY_DEFAULT:
            assert after.status not in (
                VerdictStatus.INCOMPATIBLE,
                VerdictStatus.CONDITIONALLY_INCOMPATIBLE,
            )
        # and never back to "no evidence"
        assert after.status is not VerdictStatus.COMPATIBLE_BY_DEFAULT


def test_adding_incompatible_claims_never_yields_default():
    rng = random.Random(23)
    for _ in range(60):
        cat = random_catalog(rng, claim_count=3)
        a, b = rng.sample(sorted(cat.products_by_id), 2)
        scope = rng.choice(list(Scope))
        added = claim("incompatible", scope.value, a, b, rng.choice(LEVELS).value, "added")
        after = resolve_compatibility(dataclasses.replace(cat, claims=cat.claims + (added,)), a, b, scope)
        assert after.status is not VerdictStatus.COMPATIBLE_BY_DEFAULT


def _agreement(status, polarity):
    """2 = verdict agrees with the claim's polarity, 1 = undecided, 0 = opposes."""
    agree = {
        Polarity.COMPATIBLE: (VerdictStatus.COMPATIBLE_BY_EVIDENCE,),
        Polarity.INCOMPATIBLE: (VerdictStatus.INCOMPATIBLE, VerdictStatus.CONDITIONALLY_INCOMPATIBLE),
    }[polarity]
    if status in agree:
        return 2
    if status in (VerdictStatus.CONFLICT, VerdictStatus.COMPATIBLE_BY_DEFAULT):
        return 1
    return 0


def test_upgrading_a_claims_level_never_flips_against_it():
    rng = random.Random(29)
    checked = 0
    while checked < 60:
        cat = random_catalog(rng, claim_count=4)
        weak = [
            (i, c)
            for i, c in enumerate(cat.claims)
            if c.level is not JustificationLevel.PRIMARY and c.condition is None
        ]
        if not weak:
            continue
        idx, target = rng.choice(weak)
        stronger = rng.choice([lvl for lvl in LEVELS if lvl.rank > target.level.rank])
        upgraded = dataclasses.replace(
            target, justification=dataclasses.replace(target.justification, level=stronger)
        )
        new_claims = cat.claims[:idx] + (upgraded,) + cat.claims[idx + 1 :]
        cat2 = dataclasses.replace(cat, claims=new_claims)
        # evaluate on concrete member pairs the claim applies to
        subs = []
        for s in target.subjects:
            subs.append(
                [s] if s in cat.products_by_id else [p.id for p in cat.products if p.series_id == s]
            )
        for a in subs[0]:
            for b in subs[1]:
                if a == b:
                    continue
                before = resolve_compatibility(cat, a, b, target.scope)
                after = resolve_compatibility(cat2, a, b, target.scope)
                assert _agreement(after.status, target.polarity) >= _agreement(before.status, target.polarity)
        checked += 1


def test_threshold_monotonicity_of_check_configuration():
    # anything accepted at a level is accepted at every weaker level
    order = [None, JustificationLevel.OBSERVATION, JustificationLevel.SECONDARY,
             JustificationLevel.EMPIRICAL, JustificationLevel.PRIMARY]
    rng = random.Random(31)
    for _ in range(25):
        cat = random_catalog(rng, claim_count=8)
        results = {}
        for level in order:
            req = QueryRequirements(application="any", size_k=4, min_justification=level)
            results[level] = {(c.products, c.matching) for c in enumerate_configurations(cat, req)}
        for weaker, stronger in zip(order, order[1:]):
            assert results[stronger] <= results[weaker]


def test_accepted_configurations_pass_each_connection_check():
    rng = random.Random(37)
    for _ in range(20):
        cat = random_catalog(rng, claim_count=5)
        req = QueryRequirements(application="any", size_k=4)
        for cfg in enumerate_configurations(cat, req):
            assert check_configuration(cat, cfg.products, cfg.matching, req) == []
            for pa, pb in cfg.matching:
                assert check_port_connection(cat, pa, pb).allowed

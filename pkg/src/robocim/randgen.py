"""Seeded random catalog generation for fuzzing and benchmarks.

Generates valid catalogs (validate_catalog returns nothing) with realistic
shape: role-typed products whose port sets draw from small mechanical/data
type pools, plus random claims across polarity, scope, level and the
occasional mediator condition. Catalog sizes stay small enough for the
brute-force oracle.
"""

from __future__ import annotations

import random
from typing import Optional

from .model import (
    ApplicationSpec,
    Attribute,
    AttributeValue,
    Catalog,
    CompatibilityClaim,
    Justification,
    JustificationLevel,
    Orientation,
    Polarity,
    Port,
    Product,
    ProductSeries,
    Scope,
)

MECH_TYPES = ("robot_flange_a", "robot_flange_b", "tool_plate_q")
DATA_TYPES = ("bus_x", "bus_y")
LEVELS = tuple(JustificationLevel)


def _jst(rng: random.Random, source: str) -> Justification:
    return Justification(level=rng.choice(LEVELS), source=source)


def _attr(rng: random.Random, name: str, value: str) -> Attribute:
    return Attribute(name=name, value=AttributeValue(value=value, justification=_jst(rng, f"sheet-{name}")))


def _port(rng: random.Random, pid: str, ptype: str, orientation: Orientation) -> Port:
    return Port(
        id=pid,
        orientation=orientation,
        port_type=AttributeValue(value=ptype, justification=_jst(rng, f"sheet-{pid}")),
    )


def random_catalog(
    rng: random.Random,
    max_products: int = 12,
    claim_count: Optional[int] = None,
    with_series: bool = False,
) -> Catalog:
    """One random, structurally valid catalog."""
    mech = rng.sample(MECH_TYPES, rng.randint(1, 2))
    data = rng.sample(DATA_TYPES, rng.randint(1, 2))

    counts = {
        "robotic_arm": rng.randint(1, 3),
        "eecd": rng.randint(1, 3),
        "end_effector": rng.randint(1, 3),
        "data_connection": rng.randint(1, 3),
        "flange_adapter": rng.randint(0, 2),
    }
    while sum(counts.values()) > max_products:
        # keep at least one of each required role; adapters may drop to zero
        slack = {t: counts[t] - (0 if t == "flange_adapter" else 1) for t in counts}
        heavy = max(slack, key=lambda t: (slack[t], t))
        if slack[heavy] <= 0:
            break
        counts[heavy] -= 1

    series = ()
    series_id = None
    if with_series:
        series_id = "series_arm"
        series = (
            ProductSeries(
                id=series_id,
                display_name="Arm series",
                shared_attributes=(_attr(rng, "controller", "ctrl_os"),),
                shared_ports=(_port(rng, "aux", data[0], Orientation.OUTPUT),),
            ),
        )

    products = []
    n = 0
    for role, count in counts.items():
        for _ in range(count):
            n += 1
            pid = f"{role[:4]}_{n:02d}"
            ports = []
            attrs = [_attr(rng, "type", role)]
            if role == "robotic_arm":
                ports.append(_port(rng, "flange", rng.choice(mech), Orientation.OUTPUT))
                if rng.random() < 0.85:
                    ports.append(_port(rng, "data", rng.choice(data), Orientation.OUTPUT))
            elif role == "eecd":
                ports.append(_port(rng, "arm_side", rng.choice(mech), Orientation.INPUT))
                ports.append(_port(rng, "tool_side", rng.choice(mech), Orientation.OUTPUT))
                if rng.random() < 0.15:
                    ports.append(_port(rng, "chain_in", rng.choice(data), Orientation.INPUT))
                    ports.append(_port(rng, "chain_out", rng.choice(data), Orientation.OUTPUT))
            elif role == "end_effector":
                attrs.append(_attr(rng, "subtype", rng.choice(("gripper", "screwdriver"))))
                ports.append(_port(rng, "mount", rng.choice(mech), Orientation.INPUT))
                if rng.random() < 0.85:
                    ports.append(_port(rng, "data", rng.choice(data), Orientation.INPUT))
            elif role == "data_connection":
                ports.append(_port(rng, "up", rng.choice(data), Orientation.INPUT))
                ports.append(_port(rng, "down", rng.choice(data), Orientation.OUTPUT))
            else:  # flange_adapter
                ports.append(_port(rng, "arm_side", rng.choice(mech), Orientation.INPUT))
                ports.append(_port(rng, "tool_side", rng.choice(mech), Orientation.OUTPUT))
            use_series = with_series and role == "robotic_arm" and rng.random() < 0.5
            products.append(
                Product(
                    id=pid,
                    display_name=pid.replace("_", " ").title(),
                    manufacturer=rng.choice(("Apex Dynamics", "Boldt Automation", "Croma Tools")),
                    series_id=series_id if use_series else None,
                    attributes=tuple(attrs),
                    ports=tuple(ports),
                )
            )

    claims = []
    ids = [p.id for p in products]
    dcs = [p.id for p in products if p.attributes[0].value.value == "data_connection"]
    if claim_count is None:
        claim_count = rng.randint(0, 6)
    for i in range(claim_count):
        a, b = rng.sample(ids, 2)
        scope = rng.choice((Scope.DIRECT, Scope.CONFIGURATION))
        polarity = rng.choice((Polarity.COMPATIBLE, Polarity.INCOMPATIBLE))
        condition = None
        if scope is Scope.DIRECT and rng.random() < 0.25:
            mediators = [d for d in dcs if d not in (a, b)]
            if mediators:
                condition = rng.choice(mediators)
                polarity = Polarity.INCOMPATIBLE if rng.random() < 0.8 else Polarity.COMPATIBLE
        claims.append(
            CompatibilityClaim(
                polarity=polarity,
                scope=scope,
                subjects=(a, b),
                justification=_jst(rng, f"claim-{i}"),
                condition=condition,
            )
        )

    applications = [ApplicationSpec(name="any")]
    if rng.random() < 0.7:
        applications.append(ApplicationSpec(name="pick-and-place", end_effector_subtype="gripper"))
    if rng.random() < 0.7:
        applications.append(ApplicationSpec(name="screwdriving", end_effector_subtype="screwdriver"))

    return Catalog(
        format_version=1,
        series=series,
        products=tuple(products),
        claims=tuple(claims),
        applications=tuple(applications),
    )

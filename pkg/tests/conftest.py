"""Shared fixtures and catalog builders for the test suite."""

from pathlib import Path

import pytest

from robocim import (
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
    Scope,
    load_catalog,
)

FIXTURES = Path(__file__).parent / "fixtures"


def fixture_path(name: str) -> Path:
    return FIXTURES / name


@pytest.fixture(scope="session")
def fixture_names() -> list[str]:
    return sorted(p.name for p in FIXTURES.glob("*.json"))


def load_fixture(name: str) -> Catalog:
    return load_catalog(fixture_path(name))


# ---------------------------------------------------------------------------
# compact builders for in-test catalogs

def jst(level="primary", source="datasheet") -> Justification:
    return Justification(level=JustificationLevel(level), source=source)


def attr(name: str, value: str, level="primary") -> Attribute:
    return Attribute(name=name, value=AttributeValue(value=value, justification=jst(level)))


def port(pid: str, orientation: str, ptype: str, level="primary") -> Port:
    return Port(
        id=pid,
        orientation=Orientation(orientation),
        port_type=AttributeValue(value=ptype, justification=jst(level)),
    )


def product(pid, ptype, ports, subtype=None, series_id=None, extra=()):
    attrs = [attr("type", ptype)]
    if subtype is not None:
        attrs.append(attr("subtype", subtype))
    attrs.extend(extra)
    return Product(
        id=pid,
        display_name=pid.replace("_", " ").title(),
        manufacturer="Test Works",
        series_id=series_id,
        attributes=tuple(attrs),
        ports=tuple(ports),
    )


def claim(polarity, scope, a, b, level="primary", source="datasheet", mediator=None):
    return CompatibilityClaim(
        polarity=Polarity(polarity),
        scope=Scope(scope),
        subjects=(a, b),
        justification=jst(level, source),
        condition=mediator,
    )


def catalog(products, claims=(), applications=None, series=(), port_rules=()):
    if applications is None:
        applications = (ApplicationSpec(name="any"),)
    return Catalog(
        format_version=1,
        series=tuple(series),
        products=tuple(products),
        claims=tuple(claims),
        applications=tuple(applications),
        port_rules=tuple(port_rules),
    )


def chain_catalog(claims=(), applications=None):
    """The canonical four-product chain: arm-eecd-tool plus the data link."""
    return catalog(
        [
            product("arm_1", "robotic_arm", [port("flange", "output", "iso_flange"), port("data", "output", "bus")]),
            product("eecd_1", "eecd", [port("arm_side", "input", "iso_flange"), port("tool_side", "output", "qc")]),
            product("ee_1", "end_effector", [port("mount", "input", "qc"), port("data", "input", "bus")],
                    subtype="gripper"),
            product("dc_1", "data_connection", [port("up", "input", "bus"), port("down", "output", "bus")]),
        ],
        claims=claims,
        applications=applications,
    )


CHAIN_MATCHING = (
    (("arm_1", "data"), ("dc_1", "up")),
    (("arm_1", "flange"), ("eecd_1", "arm_side")),
    (("dc_1", "down"), ("ee_1", "data")),
    (("ee_1", "mount"), ("eecd_1", "tool_side")),
)

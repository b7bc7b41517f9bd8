"""Domain model: products, ports, evidence-backed attributes and claims.

Every fact in a catalog carries a justification naming where it came from.
Justification levels form a strict total order

    primary > empirical > secondary > observation

(vendor documentation beats a physical test, which beats third-party
documentation, which beats expert opinion). Compatibility between products is
not stored as a boolean but as defeasible claims; the reasoning layer resolves
them against this order.

All model objects are frozen: a loaded catalog is immutable and safe to share
between threads. Derived views (series inheritance, id indexes) are cached
lazily on the Catalog instance.
"""

from __future__ import annotations

import enum
import hashlib
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional


class JustificationLevel(enum.Enum):
    PRIMARY = "primary"
    EMPIRICAL = "empirical"
    SECONDARY = "secondary"
    OBSERVATION = "observation"

    @property
    def rank(self) -> int:
        return _LEVEL_RANK[self]

    def __str__(self) -> str:
        return self.value


_LEVEL_RANK = {
    JustificationLevel.OBSERVATION: 1,
    JustificationLevel.SECONDARY: 2,
    JustificationLevel.EMPIRICAL: 3,
    JustificationLevel.PRIMARY: 4,
}

# Certainty grades extend the level order downwards with "default" (no
# evidence at all, the connection rests on the default assumption).
DEFAULT_GRADE = "default"
CERTAINTY_RANK = {DEFAULT_GRADE: 0, **{lvl.value: lvl.rank for lvl in JustificationLevel}}


def justification_stronger(a: JustificationLevel, b: JustificationLevel) -> bool:
    """True iff a is strictly stronger evidence than b."""
    return a.rank > b.rank


class Orientation(enum.Enum):
    INPUT = "input"
    OUTPUT = "output"

    def __str__(self) -> str:
        return self.value


class Polarity(enum.Enum):
    COMPATIBLE = "compatible"
    INCOMPATIBLE = "incompatible"

    def __str__(self) -> str:
        return self.value


class Scope(enum.Enum):
    DIRECT = "direct"
    CONFIGURATION = "configuration"

    def __str__(self) -> str:
        return self.value


# Product "type" vocabulary. Unknown types load fine but are flagged by
# validate_catalog so extended catalogs are visible, not silently accepted.
PRODUCT_TYPES = (
    "robotic_arm",
    "eecd",
    "end_effector",
    "data_connection",
    "flange_adapter",
)

ANY_APPLICATION = "any"


@dataclass(frozen=True)
class Justification:
    level: JustificationLevel
    source: str


@dataclass(frozen=True)
class AttributeValue:
    value: str
    justification: Justification


@dataclass(frozen=True)
class Attribute:
    name: str
    value: AttributeValue


@dataclass(frozen=True)
class Port:
    id: str
    orientation: Orientation
    port_type: AttributeValue


@dataclass(frozen=True)
class Product:
    id: str
    display_name: str
    manufacturer: str
    series_id: Optional[str] = None
    attributes: tuple[Attribute, ...] = ()
    ports: tuple[Port, ...] = ()


@dataclass(frozen=True)
class ProductSeries:
    id: str
    display_name: str
    shared_attributes: tuple[Attribute, ...] = ()
    shared_ports: tuple[Port, ...] = ()


@dataclass(frozen=True)
class CompatibilityClaim:
    polarity: Polarity
    scope: Scope
    subjects: tuple[str, str]  # product or series ids
    justification: Justification
    condition: Optional[str] = None  # mediator product id

    @property
    def level(self) -> JustificationLevel:
        return self.justification.level


@dataclass(frozen=True)
class ApplicationSpec:
    name: str
    end_effector_subtype: Optional[str] = None


@dataclass(frozen=True)
class PortRule:
    """Catalog-level rule: products of product_type need a port from this class."""

    product_type: str
    port_type_class: str
    members: tuple[str, ...] = ()


@dataclass(frozen=True)
class Diagnostic:
    """A named invariant violation pointing at the offending entity."""

    code: str
    subject: str
    message: str

    def __str__(self) -> str:
        return f"[{self.code}] {self.subject}: {self.message}"


@dataclass(frozen=True)
class Catalog:
    format_version: int = 1
    series: tuple[ProductSeries, ...] = ()
    products: tuple[Product, ...] = ()
    claims: tuple[CompatibilityClaim, ...] = ()
    applications: tuple[ApplicationSpec, ...] = ()
    port_rules: tuple[PortRule, ...] = ()
    # Memo for pairwise claim resolution, keyed (min_id, max_id, scope).
    # init=False keeps it out of equality and out of dataclasses.replace, so a
    # modified copy never inherits stale verdicts.
    _verdict_cache: dict = field(default_factory=dict, init=False, compare=False, repr=False)

    @cached_property
    def products_by_id(self) -> dict[str, Product]:
        return {p.id: p for p in self.products}

    @cached_property
    def series_by_id(self) -> dict[str, ProductSeries]:
        return {s.id: s for s in self.series}

    @cached_property
    def applications_by_name(self) -> dict[str, ApplicationSpec]:
        return {a.name: a for a in self.applications}

    def effective_attributes(self, product_id: str) -> dict[str, AttributeValue]:
        """Attributes after series inheritance; a local name fully replaces the shared one."""
        return self._effective[product_id][0]

    def effective_ports(self, product_id: str) -> tuple[Port, ...]:
        """Ports after series inheritance; a local port id fully replaces the shared one."""
        return self._effective[product_id][1]

    @cached_property
    def _effective(self) -> dict[str, tuple[dict[str, AttributeValue], tuple[Port, ...]]]:
        resolved = {}
        for p in self.products:
            series = self.series_by_id.get(p.series_id) if p.series_id else None
            attrs: dict[str, AttributeValue] = {}
            if series is not None:
                for a in series.shared_attributes:
                    attrs[a.name] = a.value
            for a in p.attributes:
                attrs[a.name] = a.value
            local_port_ids = {port.id for port in p.ports}
            ports = []
            if series is not None:
                ports.extend(sp for sp in series.shared_ports if sp.id not in local_port_ids)
            ports.extend(p.ports)
            resolved[p.id] = (attrs, tuple(ports))
        return resolved

    def product_type(self, product_id: str) -> Optional[str]:
        attr = self.effective_attributes(product_id).get("type")
        return attr.value if attr is not None else None

    def product_subtype(self, product_id: str) -> Optional[str]:
        attr = self.effective_attributes(product_id).get("subtype")
        return attr.value if attr is not None else None

    @cached_property
    def _port_index(self) -> dict[tuple[str, str], Port]:
        return {
            (pid, port.id): port
            for pid in self.products_by_id
            for port in self.effective_ports(pid)
        }

    def port(self, product_id: str, port_id: str) -> Optional[Port]:
        return self._port_index.get((product_id, port_id))

    @cached_property
    def fingerprint(self) -> str:
        """Hash of the canonical serialization; changes iff the catalog content changes."""
        from .catalog_io import serialize_catalog  # local import: avoid cycle

        return hashlib.sha256(serialize_catalog(self).encode("utf-8")).hexdigest()

"""Catalog file format: strict JSON loading, serialization and validation.

The on-disk format is UTF-8 JSON, format_version 1. Loading is strict: unknown
keys are rejected everywhere (typo protection for hand-edited catalogs),
duplicate ids and dangling references fail immediately. Semantic invariants
that should not block loading (missing "type" attribute, unknown product type,
claim subject rules, ...) are reported by validate_catalog as diagnostics so a
partially wrong catalog can still be inspected.
"""

from __future__ import annotations

import json
from typing import Any

from .errors import DuplicateIdError, ParseError, SchemaError, UnknownReferenceError
from .model import (
    ANY_APPLICATION,
    ApplicationSpec,
    Attribute,
    AttributeValue,
    Catalog,
    CompatibilityClaim,
    Diagnostic,
    Justification,
    JustificationLevel,
    Orientation,
    Polarity,
    Port,
    PortRule,
    Product,
    ProductSeries,
    PRODUCT_TYPES,
    Scope,
)

FORMAT_VERSION = 1

_TOP_KEYS = {"format_version", "series", "products", "claims", "applications", "port_rules"}


def load_catalog(path) -> Catalog:
    """Load and structurally validate a catalog file.

    Raises ParseError / SchemaError / DuplicateIdError / UnknownReferenceError.
    OS-level errors (missing file, permissions) propagate unchanged.
    """
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    return loads_catalog(text)


def loads_catalog(text: str) -> Catalog:
    """Load a catalog from a JSON string. Same error contract as load_catalog."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno, column=exc.colno) from exc
    return catalog_from_obj(raw)


def catalog_from_obj(raw: Any) -> Catalog:
    """Build a Catalog from already-parsed JSON data."""
    obj = _expect_object(raw, "catalog", _TOP_KEYS, required={"format_version", "products"})
    version = obj["format_version"]
    if version != FORMAT_VERSION:
        raise SchemaError(f"unsupported format_version {version!r} (expected {FORMAT_VERSION})")

    series = tuple(_parse_series(s, i) for i, s in enumerate(_expect_list(obj.get("series", []), "series")))
    products = tuple(_parse_product(p, i) for i, p in enumerate(_expect_list(obj["products"], "products")))
    claims = tuple(_parse_claim(c, i) for i, c in enumerate(_expect_list(obj.get("claims", []), "claims")))
    applications = tuple(
        _parse_application(a, i) for i, a in enumerate(_expect_list(obj.get("applications", []), "applications"))
    )
    port_rules = tuple(
        _parse_port_rule(r, i) for i, r in enumerate(_expect_list(obj.get("port_rules", []), "port_rules"))
    )

    catalog = Catalog(
        format_version=version,
        series=series,
        products=products,
        claims=claims,
        applications=applications,
        port_rules=port_rules,
    )
    _check_duplicates(catalog)
    _check_references(catalog)
    return catalog


# ---------------------------------------------------------------------------
# parsing helpers

def _expect_object(raw, where: str, allowed: set, required: set = frozenset()) -> dict:
    if not isinstance(raw, dict):
        raise SchemaError(f"{where}: expected an object, got {type(raw).__name__}")
    unknown = set(raw) - allowed
    if unknown:
        raise SchemaError(f"{where}: unknown key(s) {sorted(unknown)}")
    missing = required - set(raw)
    if missing:
        raise SchemaError(f"{where}: missing required key(s) {sorted(missing)}")
    return raw


def _expect_list(raw, where: str) -> list:
    if not isinstance(raw, list):
        raise SchemaError(f"{where}: expected a list, got {type(raw).__name__}")
    return raw


def _expect_str(raw, where: str) -> str:
    if not isinstance(raw, str):
        raise SchemaError(f"{where}: expected a string, got {type(raw).__name__}")
    return raw


def _parse_justification(raw, where: str) -> Justification:
    obj = _expect_object(raw, where, {"level", "source"}, required={"level", "source"})
    level_text = _expect_str(obj["level"], f"{where}.level")
    try:
        level = JustificationLevel(level_text)
    except ValueError:
        raise SchemaError(f"{where}.level: unknown level {level_text!r}") from None
    return Justification(level=level, source=_expect_str(obj["source"], f"{where}.source"))


def _parse_attribute_value(raw, where: str) -> AttributeValue:
    obj = _expect_object(raw, where, {"value", "justification"}, required={"value", "justification"})
    return AttributeValue(
        value=_expect_str(obj["value"], f"{where}.value"),
        justification=_parse_justification(obj["justification"], f"{where}.justification"),
    )


def _parse_attribute(raw, where: str) -> Attribute:
    obj = _expect_object(raw, where, {"name", "value", "justification"}, required={"name", "value", "justification"})
    return Attribute(
        name=_expect_str(obj["name"], f"{where}.name"),
        value=AttributeValue(
            value=_expect_str(obj["value"], f"{where}.value"),
            justification=_parse_justification(obj["justification"], f"{where}.justification"),
        ),
    )


def _parse_port(raw, where: str) -> Port:
    obj = _expect_object(raw, where, {"id", "orientation", "port_type"}, required={"id", "orientation", "port_type"})
    orientation_text = _expect_str(obj["orientation"], f"{where}.orientation")
    try:
        orientation = Orientation(orientation_text)
    except ValueError:
        raise SchemaError(f"{where}.orientation: must be 'input' or 'output', got {orientation_text!r}") from None
    return Port(
        id=_expect_str(obj["id"], f"{where}.id"),
        orientation=orientation,
        port_type=_parse_attribute_value(obj["port_type"], f"{where}.port_type"),
    )


def _parse_series(raw, index: int) -> ProductSeries:
    where = f"series[{index}]"
    obj = _expect_object(raw, where, {"id", "display_name", "attributes", "ports"}, required={"id", "display_name"})
    return ProductSeries(
        id=_expect_str(obj["id"], f"{where}.id"),
        display_name=_expect_str(obj["display_name"], f"{where}.display_name"),
        shared_attributes=tuple(
            _parse_attribute(a, f"{where}.attributes[{i}]")
            for i, a in enumerate(_expect_list(obj.get("attributes", []), f"{where}.attributes"))
        ),
        shared_ports=tuple(
            _parse_port(p, f"{where}.ports[{i}]")
            for i, p in enumerate(_expect_list(obj.get("ports", []), f"{where}.ports"))
        ),
    )


def _parse_product(raw, index: int) -> Product:
    where = f"products[{index}]"
    obj = _expect_object(
        raw,
        where,
        {"id", "display_name", "manufacturer", "series_id", "attributes", "ports"},
        required={"id", "display_name", "manufacturer"},
    )
    series_id = obj.get("series_id")
    if series_id is not None:
        series_id = _expect_str(series_id, f"{where}.series_id")
    return Product(
        id=_expect_str(obj["id"], f"{where}.id"),
        display_name=_expect_str(obj["display_name"], f"{where}.display_name"),
        manufacturer=_expect_str(obj["manufacturer"], f"{where}.manufacturer"),
        series_id=series_id,
        attributes=tuple(
            _parse_attribute(a, f"{where}.attributes[{i}]")
            for i, a in enumerate(_expect_list(obj.get("attributes", []), f"{where}.attributes"))
        ),
        ports=tuple(
            _parse_port(p, f"{where}.ports[{i}]")
            for i, p in enumerate(_expect_list(obj.get("ports", []), f"{where}.ports"))
        ),
    )


def _parse_claim(raw, index: int) -> CompatibilityClaim:
    where = f"claims[{index}]"
    obj = _expect_object(
        raw,
        where,
        {"polarity", "scope", "subjects", "condition", "justification"},
        required={"polarity", "scope", "subjects", "justification"},
    )
    polarity_text = _expect_str(obj["polarity"], f"{where}.polarity")
    try:
        polarity = Polarity(polarity_text)
    except ValueError:
        raise SchemaError(f"{where}.polarity: must be 'compatible' or 'incompatible'") from None
    scope_text = _expect_str(obj["scope"], f"{where}.scope")
    try:
        scope = Scope(scope_text)
    except ValueError:
        raise SchemaError(f"{where}.scope: must be 'direct' or 'configuration'") from None
    subjects = _expect_list(obj["subjects"], f"{where}.subjects")
    if len(subjects) != 2:
        raise SchemaError(f"{where}.subjects: expected exactly 2 ids")
    condition = None
    if obj.get("condition") is not None:
        cond = _expect_object(obj["condition"], f"{where}.condition", {"mediator"}, required={"mediator"})
        condition = _expect_str(cond["mediator"], f"{where}.condition.mediator")
    return CompatibilityClaim(
        polarity=polarity,
        scope=scope,
        subjects=(
            _expect_str(subjects[0], f"{where}.subjects[0]"),
            _expect_str(subjects[1], f"{where}.subjects[1]"),
        ),
        justification=_parse_justification(obj["justification"], f"{where}.justification"),
        condition=condition,
    )


def _parse_application(raw, index: int) -> ApplicationSpec:
    where = f"applications[{index}]"
    obj = _expect_object(raw, where, {"name", "end_effector_subtype"}, required={"name"})
    subtype = obj.get("end_effector_subtype")
    if subtype is not None:
        subtype = _expect_str(subtype, f"{where}.end_effector_subtype")
    return ApplicationSpec(name=_expect_str(obj["name"], f"{where}.name"), end_effector_subtype=subtype)


def _parse_port_rule(raw, index: int) -> PortRule:
    where = f"port_rules[{index}]"
    obj = _expect_object(
        raw, where, {"product_type", "port_type_class", "members"},
        required={"product_type", "port_type_class", "members"},
    )
    return PortRule(
        product_type=_expect_str(obj["product_type"], f"{where}.product_type"),
        port_type_class=_expect_str(obj["port_type_class"], f"{where}.port_type_class"),
        members=tuple(
            _expect_str(m, f"{where}.members[{i}]")
            for i, m in enumerate(_expect_list(obj["members"], f"{where}.members"))
        ),
    )


# ---------------------------------------------------------------------------
# load-time integrity (hard errors)

def _check_duplicates(catalog: Catalog) -> None:
    seen: set[str] = set()
    for p in catalog.products:
        if p.id in seen:
            raise DuplicateIdError(f"duplicate product id {p.id!r}")
        seen.add(p.id)
    seen = set()
    for s in catalog.series:
        if s.id in seen:
            raise DuplicateIdError(f"duplicate series id {s.id!r}")
        seen.add(s.id)
    for owner_kind, owner_id, ports in (
        *((("product", p.id, p.ports) for p in catalog.products)),
        *((("series", s.id, s.shared_ports) for s in catalog.series)),
    ):
        port_ids = set()
        for port in ports:
            if port.id in port_ids:
                raise DuplicateIdError(f"duplicate port id {port.id!r} in {owner_kind} {owner_id!r}")
            port_ids.add(port.id)
    names = set()
    for a in catalog.applications:
        if a.name in names:
            raise DuplicateIdError(f"duplicate application name {a.name!r}")
        names.add(a.name)


def _check_references(catalog: Catalog) -> None:
    product_ids = {p.id for p in catalog.products}
    series_ids = {s.id for s in catalog.series}
    for p in catalog.products:
        if p.series_id is not None and p.series_id not in series_ids:
            raise UnknownReferenceError(p.series_id, f"series_id of product {p.id!r}")
    for i, claim in enumerate(catalog.claims):
        for subject in claim.subjects:
            if subject not in product_ids and subject not in series_ids:
                raise UnknownReferenceError(subject, f"subject of claims[{i}]")
        if claim.condition is not None and claim.condition not in product_ids:
            raise UnknownReferenceError(claim.condition, f"mediator of claims[{i}]")


# ---------------------------------------------------------------------------
# serialization

def serialize_catalog(catalog: Catalog) -> str:
    """Serialize back to the file format (compact, stable key order).

    load(serialize(load(x))) is structurally identical to load(x): inheritance
    stays unresolved on disk, products keep only their local attributes/ports.
    """
    return json.dumps(catalog_to_obj(catalog), ensure_ascii=False, separators=(",", ":"))


def catalog_to_obj(catalog: Catalog) -> dict:
    obj: dict = {"format_version": catalog.format_version}
    obj["series"] = [
        {
            "id": s.id,
            "display_name": s.display_name,
            "attributes": [_attribute_to_obj(a) for a in s.shared_attributes],
            "ports": [_port_to_obj(p) for p in s.shared_ports],
        }
        for s in catalog.series
    ]
    products = []
    for p in catalog.products:
        entry: dict = {"id": p.id, "display_name": p.display_name, "manufacturer": p.manufacturer}
        if p.series_id is not None:
            entry["series_id"] = p.series_id
        entry["attributes"] = [_attribute_to_obj(a) for a in p.attributes]
        entry["ports"] = [_port_to_obj(port) for port in p.ports]
        products.append(entry)
    obj["products"] = products
    claims = []
    for c in catalog.claims:
        entry = {
            "polarity": c.polarity.value,
            "scope": c.scope.value,
            "subjects": list(c.subjects),
        }
        if c.condition is not None:
            entry["condition"] = {"mediator": c.condition}
        entry["justification"] = _justification_to_obj(c.justification)
        claims.append(entry)
    obj["claims"] = claims
    apps = []
    for a in catalog.applications:
        entry = {"name": a.name}
        if a.end_effector_subtype is not None:
            entry["end_effector_subtype"] = a.end_effector_subtype
        apps.append(entry)
    obj["applications"] = apps
    obj["port_rules"] = [
        {"product_type": r.product_type, "port_type_class": r.port_type_class, "members": list(r.members)}
        for r in catalog.port_rules
    ]
    return obj


def _justification_to_obj(j: Justification) -> dict:
    return {"level": j.level.value, "source": j.source}


def _attribute_to_obj(a: Attribute) -> dict:
    return {"name": a.name, "value": a.value.value, "justification": _justification_to_obj(a.value.justification)}


def _port_to_obj(p: Port) -> dict:
    return {
        "id": p.id,
        "orientation": p.orientation.value,
        "port_type": {"value": p.port_type.value, "justification": _justification_to_obj(p.port_type.justification)},
    }


# ---------------------------------------------------------------------------
# semantic validation (diagnostics, not failures)

def validate_catalog(catalog: Catalog) -> list[Diagnostic]:
    """Check every model invariant; empty result means the catalog is sound.

    Unlike loading, this never raises: it is also usable on catalogs built in
    code, and reports all problems at once.
    """
    diags: list[Diagnostic] = []
    product_ids = {p.id for p in catalog.products}
    series_ids = {s.id for s in catalog.series}

    seen_products: set[str] = set()
    for p in catalog.products:
        if p.id in seen_products:
            diags.append(Diagnostic("duplicate_product_id", p.id, "product id is not unique"))
        seen_products.add(p.id)
        if p.series_id is not None and p.series_id not in series_ids:
            diags.append(Diagnostic("dangling_series", p.id, f"series {p.series_id!r} does not exist"))
            continue
        _validate_product(catalog, p, diags)

    seen_series: set[str] = set()
    for s in catalog.series:
        if s.id in seen_series:
            diags.append(Diagnostic("duplicate_series_id", s.id, "series id is not unique"))
        seen_series.add(s.id)
        _validate_attr_ports(s.id, s.shared_attributes, s.shared_ports, diags)

    for i, claim in enumerate(catalog.claims):
        subject = f"claims[{i}]"
        a, b = claim.subjects
        if a == b:
            diags.append(Diagnostic("claim_subjects_identical", subject, "subjects must be distinct"))
        for s in claim.subjects:
            if s not in product_ids and s not in series_ids:
                diags.append(Diagnostic("dangling_subject", subject, f"subject {s!r} does not exist"))
        if claim.condition is not None:
            if claim.scope is not Scope.DIRECT:
                diags.append(
                    Diagnostic("condition_scope", subject, "a mediator condition requires scope 'direct'")
                )
            if claim.condition not in product_ids:
                diags.append(Diagnostic("dangling_mediator", subject, f"mediator {claim.condition!r} does not exist"))
            if claim.condition in claim.subjects:
                diags.append(Diagnostic("mediator_is_subject", subject, "mediator must differ from both subjects"))
        if not claim.justification.source:
            diags.append(Diagnostic("empty_source", subject, "justification source must be non-empty"))

    seen_apps: set[str] = set()
    for app in catalog.applications:
        if app.name in seen_apps:
            diags.append(Diagnostic("duplicate_application", app.name, "application name is not unique"))
        seen_apps.add(app.name)
        if app.name == ANY_APPLICATION and app.end_effector_subtype is not None:
            diags.append(Diagnostic("any_with_subtype", app.name, "'any' must not constrain the end effector"))
        if app.end_effector_subtype is not None and not app.end_effector_subtype:
            diags.append(Diagnostic("empty_subtype", app.name, "end_effector_subtype must be non-empty"))

    seen_rules: set[str] = set()
    for i, rule in enumerate(catalog.port_rules):
        subject = f"port_rules[{i}]"
        if rule.product_type in seen_rules:
            diags.append(Diagnostic("duplicate_port_rule", subject, f"second rule for {rule.product_type!r}"))
        seen_rules.add(rule.product_type)
        if rule.product_type not in PRODUCT_TYPES:
            diags.append(Diagnostic("unknown_product_type", subject, f"unknown product type {rule.product_type!r}"))
        if not rule.members:
            diags.append(Diagnostic("empty_port_rule", subject, "members must be non-empty"))

    return diags


def _validate_product(catalog: Catalog, p: Product, diags: list[Diagnostic]) -> None:
    _validate_attr_ports(p.id, p.attributes, p.ports, diags)
    # effective view: series inheritance applied
    attrs = catalog.effective_attributes(p.id)
    ports = catalog.effective_ports(p.id)
    if not ports:
        diags.append(Diagnostic("no_ports", p.id, "every product must own at least one port"))
    type_attr = attrs.get("type")
    if type_attr is None:
        diags.append(Diagnostic("missing_type", p.id, "product has no 'type' attribute"))
    elif type_attr.value not in PRODUCT_TYPES:
        diags.append(Diagnostic("unknown_product_type", p.id, f"unknown product type {type_attr.value!r}"))
    elif type_attr.value == "end_effector" and "subtype" not in attrs:
        diags.append(Diagnostic("missing_subtype", p.id, "end effectors must carry a 'subtype' attribute"))


def _validate_attr_ports(owner: str, attributes, ports, diags: list[Diagnostic]) -> None:
    names: set[str] = set()
    for a in attributes:
        if a.name in names:
            diags.append(Diagnostic("duplicate_attribute", owner, f"attribute {a.name!r} declared twice"))
        names.add(a.name)
        if not a.value.value:
            diags.append(Diagnostic("empty_value", owner, f"attribute {a.name!r} has an empty value"))
        if not a.value.justification.source:
            diags.append(Diagnostic("empty_source", owner, f"attribute {a.name!r} has an empty justification source"))
    port_ids: set[str] = set()
    for port in ports:
        if port.id in port_ids:
            diags.append(Diagnostic("duplicate_port_id", owner, f"port {port.id!r} declared twice"))
        port_ids.add(port.id)
        if not port.port_type.value:
            diags.append(Diagnostic("empty_port_type", owner, f"port {port.id!r} has an empty port type"))
        if not port.port_type.justification.source:
            diags.append(Diagnostic("empty_source", owner, f"port {port.id!r} has an empty justification source"))

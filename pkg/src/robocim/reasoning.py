"""Compatibility reasoning: claim resolution, port checks, configuration rules.

Compatibility is defeasible. Two products whose ports structurally match are
compatible *by default*; that conclusion is retracted the moment the catalog
carries contrary evidence. Claims are resolved by evidence strength:

  1. collect every claim matching the pair (product- and series-level) at the
     requested scope; direct scope additionally inherits configuration-scope
     incompatibility (products that cannot coexist cannot be neighbors);
  2. no claims at all -> compatible_by_default;
  3. one side only -> that side wins at its strongest justification; a
     mediator-bearing claim resolves to conditionally_incompatible(mediator):
     the pair must not connect directly but may coexist when routed through
     the mediator;
  4. both sides present -> strictly stronger justification wins; at equal
     strength a side holding a product-level claim beats one holding only
     series-level claims; a genuine tie is a conflict, and configurations
     containing conflicted evidence are rejected (safe default).

Within the "no direct connection" side, an unconditioned incompatible claim at
strictly stronger level beats a mediator claim; at equal level the mediator
claim is the more informative refinement and wins (a datasheet that declares
products incompatible and then names the one routing that works is stating a
single rule, whether encoded as one claim or two).

The rule vocabulary enforced by check_configuration (see also the README rule
table):

  no_self_connection          a port never connects to itself
  orientation_required        every port is an input or an output
  structural_match            connections pair opposite orientations of equal port type
  direct_incompatibility      directly incompatible products are never neighbors
  coexistence_incompatibility configuration-incompatible products never share a system
  evidence_threshold          with a minimum level set, every connection needs
                              claim backing at or above it (defaults don't count)
  required_product_types      exactly one arm, eecd, end effector and data
                              connection; five-product systems add exactly one
                              flange adapter
  required_port_types         products of a type must own a port from the
                              configured class (validation-side rule)
  application_subtype         the chosen application pins the end effector subtype

All functions are pure over an immutable Catalog and safe for concurrent use.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import InvalidQuery, UnknownPort, UnknownProduct
from .model import (
    ANY_APPLICATION,
    Catalog,
    CompatibilityClaim,
    Diagnostic,
    JustificationLevel,
    Orientation,
    Polarity,
    PortRule,
    Product,
    Scope,
)

# (product id, port id) endpoint and a matched pair of endpoints
PortRef = tuple[str, str]
MatchedPair = tuple[PortRef, PortRef]

ROLE_ORDER = {
    4: ("robotic_arm", "eecd", "end_effector", "data_connection"),
    5: ("robotic_arm", "flange_adapter", "eecd", "end_effector", "data_connection"),
}

VALID_SIZES = tuple(sorted(ROLE_ORDER))


class VerdictStatus(enum.Enum):
    COMPATIBLE_BY_DEFAULT = "compatible_by_default"
    COMPATIBLE_BY_EVIDENCE = "compatible_by_evidence"
    INCOMPATIBLE = "incompatible"
    CONDITIONALLY_INCOMPATIBLE = "conditionally_incompatible"
    CONFLICT = "conflict"

    def __str__(self) -> str:
        return self.value


# statuses under which two ports may actually be connected
CONNECTABLE = (VerdictStatus.COMPATIBLE_BY_DEFAULT, VerdictStatus.COMPATIBLE_BY_EVIDENCE)


@dataclass(frozen=True)
class CompatibilityVerdict:
    status: VerdictStatus
    supporting_claims: tuple[CompatibilityClaim, ...] = ()
    strength: Optional[JustificationLevel] = None
    mediator: Optional[str] = None  # set iff status is CONDITIONALLY_INCOMPATIBLE

    @property
    def connectable(self) -> bool:
        return self.status in CONNECTABLE


@dataclass(frozen=True)
class ConnectionCheck:
    port_a: PortRef
    port_b: PortRef
    structural_ok: bool
    verdict: Optional[CompatibilityVerdict]  # None when the owners coincide

    @property
    def allowed(self) -> bool:
        return self.structural_ok and self.verdict is not None and self.verdict.connectable


@dataclass(frozen=True)
class QueryRequirements:
    application: str
    size_k: int
    min_justification: Optional[JustificationLevel] = None
    # (product type, attribute name, required value) triples
    extra_required_attributes: tuple[tuple[str, str, str], ...] = ()


# ---------------------------------------------------------------------------
# claim resolution

def claim_applies_to(catalog: Catalog, subject: str, product_id: str) -> bool:
    """A subject id names either the product itself or the series it belongs to."""
    if subject == product_id:
        return True
    product = catalog.products_by_id.get(product_id)
    return product is not None and product.series_id == subject


def claims_for_pair(catalog: Catalog, a: str, b: str, scope: Scope) -> list[CompatibilityClaim]:
    """All claims constraining the unordered pair (a, b) at the given scope.

    Direct scope inherits configuration-scope incompatibility: evidence that two
    products cannot share a system also rules out connecting them directly.
    """
    matched = []
    for claim in catalog.claims:
        s1, s2 = claim.subjects
        if not (
            (claim_applies_to(catalog, s1, a) and claim_applies_to(catalog, s2, b))
            or (claim_applies_to(catalog, s1, b) and claim_applies_to(catalog, s2, a))
        ):
            continue
        if claim.scope is scope:
            matched.append(claim)
        elif (
            scope is Scope.DIRECT
            and claim.scope is Scope.CONFIGURATION
            and claim.polarity is Polarity.INCOMPATIBLE
        ):
            matched.append(claim)
    return matched


def claim_sort_key(claim: CompatibilityClaim):
    return (
        -claim.level.rank,
        claim.polarity.value,
        claim.scope.value,
        claim.subjects,
        claim.condition or "",
        claim.justification.source,
    )


def _specificity(catalog: Catalog, claim: CompatibilityClaim) -> int:
    """Number of subjects that are concrete products (series ids are less specific)."""
    return sum(1 for s in claim.subjects if s in catalog.products_by_id)


def resolve_compatibility(catalog: Catalog, a: str, b: str, scope: Scope) -> CompatibilityVerdict:
    """Resolve all evidence about the pair (a, b) into a single verdict."""
    if a == b:
        raise UnknownProduct(f"cannot resolve a product against itself: {a!r}")
    for pid in (a, b):
        if pid not in catalog.products_by_id:
            raise UnknownProduct(f"unknown product {pid!r}")
    key = (min(a, b), max(a, b), scope)
    cached = catalog._verdict_cache.get(key)
    if cached is None:
        cached = _resolve_uncached(catalog, a, b, scope)
        catalog._verdict_cache[key] = cached
    return cached


def _resolve_uncached(catalog: Catalog, a: str, b: str, scope: Scope) -> CompatibilityVerdict:
    claims = claims_for_pair(catalog, a, b, scope)
    if not claims:
        return CompatibilityVerdict(status=VerdictStatus.COMPATIBLE_BY_DEFAULT)

    positive = [c for c in claims if c.polarity is Polarity.COMPATIBLE and c.condition is None]
    hard_negative = [c for c in claims if c.polarity is Polarity.INCOMPATIBLE and c.condition is None]
    conditional = [c for c in claims if c.condition is not None]
    negative = hard_negative + conditional

    def side_strength(side):
        return max(c.level.rank for c in side)

    def side_specificity(side):
        top = side_strength(side)
        return max(_specificity(catalog, c) for c in side if c.level.rank == top)

    if positive and negative:
        pos_s, neg_s = side_strength(positive), side_strength(negative)
        if pos_s == neg_s:
            # strength tie: a product-level claim is more specific than a series one
            pos_sp, neg_sp = side_specificity(positive), side_specificity(negative)
            if pos_sp == neg_sp:
                top = [c for c in claims if c.level.rank == pos_s]
                return CompatibilityVerdict(
                    status=VerdictStatus.CONFLICT,
                    supporting_claims=tuple(sorted(top, key=claim_sort_key)),
                    strength=_level_for_rank(pos_s),
                )
            winner = positive if pos_sp > neg_sp else negative
        else:
            winner = positive if pos_s > neg_s else negative
    else:
        winner = positive or negative

    strength = _level_for_rank(side_strength(winner))
    supporting = tuple(sorted(winner, key=claim_sort_key))
    if winner is positive:
        return CompatibilityVerdict(
            status=VerdictStatus.COMPATIBLE_BY_EVIDENCE, supporting_claims=supporting, strength=strength
        )

    # negative side: does the verdict stay unconditional or name a mediator?
    hard_top = side_strength(hard_negative) if hard_negative else 0
    cond_top = side_strength(conditional) if conditional else 0
    if cond_top >= hard_top and conditional:
        mediators = sorted(c.condition for c in conditional if c.level.rank == cond_top)
        return CompatibilityVerdict(
            status=VerdictStatus.CONDITIONALLY_INCOMPATIBLE,
            supporting_claims=supporting,
            strength=strength,
            mediator=mediators[0],
        )
    return CompatibilityVerdict(
        status=VerdictStatus.INCOMPATIBLE, supporting_claims=supporting, strength=strength
    )


def _level_for_rank(rank: int) -> JustificationLevel:
    for lvl in JustificationLevel:
        if lvl.rank == rank:
            return lvl
    raise ValueError(f"no justification level with rank {rank}")


# ---------------------------------------------------------------------------
# port-level checking

def check_port_connection(catalog: Catalog, pa: PortRef, pb: PortRef) -> ConnectionCheck:
    """Structural match (distinct ports, distinct owners, opposite orientation,
    equal port type) plus the direct-scope compatibility verdict of the owners."""
    (pid_a, port_id_a), (pid_b, port_id_b) = pa, pb
    port_a = _resolve_port(catalog, pid_a, port_id_a)
    port_b = _resolve_port(catalog, pid_b, port_id_b)

    structural_ok = (
        pa != pb
        and pid_a != pid_b
        and {port_a.orientation, port_b.orientation} == {Orientation.INPUT, Orientation.OUTPUT}
        and port_a.port_type.value == port_b.port_type.value
    )
    verdict = resolve_compatibility(catalog, pid_a, pid_b, Scope.DIRECT) if pid_a != pid_b else None
    return ConnectionCheck(port_a=pa, port_b=pb, structural_ok=structural_ok, verdict=verdict)


def _resolve_port(catalog: Catalog, product_id: str, port_id: str):
    if product_id not in catalog.products_by_id:
        raise UnknownProduct(f"unknown product {product_id!r}")
    port = catalog.port(product_id, port_id)
    if port is None:
        raise UnknownPort(f"product {product_id!r} has no port {port_id!r}")
    return port


# ---------------------------------------------------------------------------
# query validation

def validate_query(catalog: Catalog, req: QueryRequirements) -> None:
    if req.size_k not in ROLE_ORDER:
        raise InvalidQuery(f"size_k must be one of {list(VALID_SIZES)}, got {req.size_k!r}")
    if req.application != ANY_APPLICATION and req.application not in catalog.applications_by_name:
        raise InvalidQuery(f"unknown application {req.application!r}")


def application_subtype(catalog: Catalog, application: str) -> Optional[str]:
    """The end-effector subtype the application pins down, if any."""
    if application == ANY_APPLICATION:
        return None
    spec = catalog.applications_by_name.get(application)
    if spec is None:
        raise InvalidQuery(f"unknown application {application!r}")
    return spec.end_effector_subtype


# ---------------------------------------------------------------------------
# configuration-level checking

def check_configuration(
    catalog: Catalog,
    product_ids: Iterable[str],
    matching: Iterable[MatchedPair],
    req: QueryRequirements,
) -> list[Diagnostic]:
    """Validate a candidate system; empty result means the configuration is valid.

    Checks, in order: role composition, application subtype, extra required
    attributes, total port matching, per-connection validity, coexistence
    claims, mediator routing, evidence threshold, connectivity.
    """
    products = sorted(product_ids)
    pairs = [tuple(sorted(pair)) for pair in matching]
    pairs.sort()
    diags: list[Diagnostic] = []

    for pid in products:
        if pid not in catalog.products_by_id:
            raise UnknownProduct(f"unknown product {pid!r}")
    if len(set(products)) != len(products):
        diags.append(Diagnostic("duplicate_product", ",".join(products), "configuration repeats a product"))
        return diags
    if len(products) != req.size_k:
        diags.append(
            Diagnostic(
                "size_mismatch",
                ",".join(products),
                f"configuration has {len(products)} products, query asks for {req.size_k}",
            )
        )

    roles = ROLE_ORDER.get(req.size_k, ROLE_ORDER[4])
    type_counts: dict[str, list[str]] = {}
    for pid in products:
        ptype = catalog.product_type(pid) or "<untyped>"
        type_counts.setdefault(ptype, []).append(pid)
    for role in roles:
        owners = type_counts.get(role, [])
        if len(owners) != 1:
            diags.append(
                Diagnostic(
                    "required_product_types",
                    role,
                    f"need exactly one {role}, found {len(owners)}"
                    + (f" ({', '.join(owners)})" if owners else ""),
                )
            )
    for ptype, owners in sorted(type_counts.items()):
        if ptype not in roles:
            diags.append(
                Diagnostic("required_product_types", ",".join(owners), f"product type {ptype!r} has no role here")
            )

    subtype = application_subtype(catalog, req.application)
    if subtype is not None:
        for pid in type_counts.get("end_effector", []):
            actual = catalog.product_subtype(pid)
            if actual != subtype:
                diags.append(
                    Diagnostic(
                        "application_subtype",
                        pid,
                        f"application {req.application!r} needs subtype {subtype!r}, found {actual!r}",
                    )
                )

    for ptype, name, value in req.extra_required_attributes:
        owners = type_counts.get(ptype, [])
        if not owners:
            diags.append(
                Diagnostic("extra_attribute", ptype, f"no {ptype!r} present to satisfy {name}={value!r}")
            )
        for pid in owners:
            attr = catalog.effective_attributes(pid).get(name)
            if attr is None or attr.value != value:
                found = attr.value if attr is not None else None
                diags.append(
                    Diagnostic("extra_attribute", pid, f"requires {name}={value!r}, found {found!r}")
                )

    # (a) total matching: every port of every product used exactly once
    universe = {
        (pid, port.id) for pid in products for port in catalog.effective_ports(pid)
    }
    usage: dict[PortRef, int] = {}
    for pa, pb in pairs:
        for ref in (pa, pb):
            _resolve_port(catalog, *ref)  # raises UnknownPort on bad ids
            if ref[0] not in set(products):
                diags.append(
                    Diagnostic("total_matching", ref[0], "matching uses a product outside the configuration")
                )
            usage[ref] = usage.get(ref, 0) + 1
    for ref, count in sorted(usage.items()):
        if count > 1:
            diags.append(
                Diagnostic("total_matching", f"{ref[0]}/{ref[1]}", f"port used {count} times (max one partner)")
            )
    for ref in sorted(universe - set(usage)):
        diags.append(Diagnostic("total_matching", f"{ref[0]}/{ref[1]}", "port is unused; every port must be used"))

    # (b) each connection structurally valid and claim-allowed
    for pa, pb in pairs:
        cc = check_port_connection(catalog, pa, pb)
        if cc.allowed:
            continue
        where = f"{pa[0]}/{pa[1]} - {pb[0]}/{pb[1]}"
        if not cc.structural_ok:
            if pa == pb:
                diags.append(Diagnostic("no_self_connection", where, "a port cannot connect to itself"))
            else:
                diags.append(
                    Diagnostic(
                        "structural_match",
                        where,
                        "connection needs distinct products, opposite orientations and one port type",
                    )
                )
        else:
            status = cc.verdict.status
            code = "conflict" if status is VerdictStatus.CONFLICT else "direct_incompatibility"
            diags.append(Diagnostic(code, where, f"owners resolve to {status} at direct scope"))

    # product-pair claims: coexistence and mediator routing
    adjacency = _adjacency(products, pairs)
    thr = req.min_justification
    for i, x in enumerate(products):
        for y in products[i + 1 :]:
            cfg_verdict = resolve_compatibility(catalog, x, y, Scope.CONFIGURATION)
            if cfg_verdict.status is VerdictStatus.INCOMPATIBLE:
                diags.append(
                    Diagnostic("coexistence_incompatibility", f"{x},{y}", "products must not share a configuration")
                )
            elif cfg_verdict.status is VerdictStatus.CONFLICT:
                diags.append(
                    Diagnostic("conflict", f"{x},{y}", "contradictory coexistence evidence at equal strength")
                )
            direct_verdict = resolve_compatibility(catalog, x, y, Scope.DIRECT)
            if direct_verdict.status is VerdictStatus.CONDITIONALLY_INCOMPATIBLE:
                mediator = direct_verdict.mediator
                if mediator not in set(products):
                    diags.append(
                        Diagnostic(
                            "mediator_missing", f"{x},{y}", f"pair requires mediator {mediator!r} in the configuration"
                        )
                    )
                elif not _path_through(adjacency, x, y, mediator):
                    diags.append(
                        Diagnostic(
                            "mediator_not_on_path",
                            f"{x},{y}",
                            f"no connection route between the pair passes through {mediator!r}",
                        )
                    )
                if thr is not None and direct_verdict.strength.rank < thr.rank:
                    diags.append(
                        Diagnostic(
                            "evidence_threshold",
                            f"{x},{y}",
                            f"mediated coexistence rests on {direct_verdict.strength} evidence, below {thr}",
                        )
                    )

    # (f) evidence threshold on every connection actually used
    if thr is not None:
        for pa, pb in pairs:
            cc = check_port_connection(catalog, pa, pb)
            if cc.verdict is None or not cc.structural_ok:
                continue  # already flagged above
            where = f"{pa[0]}/{pa[1]} - {pb[0]}/{pb[1]}"
            if cc.verdict.status is VerdictStatus.COMPATIBLE_BY_DEFAULT:
                diags.append(
                    Diagnostic("evidence_threshold", where, "connection rests on the default assumption only")
                )
            elif cc.verdict.status is VerdictStatus.COMPATIBLE_BY_EVIDENCE and cc.verdict.strength.rank < thr.rank:
                diags.append(
                    Diagnostic(
                        "evidence_threshold",
                        where,
                        f"connection backed by {cc.verdict.strength} evidence, below {thr}",
                    )
                )

    # (g) one connected system
    if not _connected(products, adjacency):
        diags.append(Diagnostic("connectivity", ",".join(products), "configuration splits into disconnected parts"))

    return diags


def _adjacency(products: Sequence[str], pairs: Sequence[MatchedPair]) -> dict[str, set[str]]:
    adj: dict[str, set[str]] = {p: set() for p in products}
    for (pid_a, _), (pid_b, _) in pairs:
        if pid_a in adj and pid_b in adj and pid_a != pid_b:
            adj[pid_a].add(pid_b)
            adj[pid_b].add(pid_a)
    return adj


def _connected(products: Sequence[str], adj: dict[str, set[str]]) -> bool:
    if not products:
        return True
    seen = {products[0]}
    stack = [products[0]]
    while stack:
        for nxt in adj[stack.pop()]:
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return len(seen) == len(products)


def _path_through(adj: dict[str, set[str]], a: str, b: str, m: str) -> bool:
    """True iff some simple path from a to b passes through m."""
    if m not in adj:
        return False

    def dfs(node: str, visited: frozenset) -> bool:
        if node == b:
            return m in visited
        for nxt in adj[node]:
            if nxt not in visited and dfs(nxt, visited | {nxt}):
                return True
        return False

    return dfs(a, frozenset((a,)))


# ---------------------------------------------------------------------------
# required-port-types rule (validation-side)

# With no catalog-provided rules, robotic arms must expose a robot-flange-class
# port; class membership falls back to a name pattern. ISO 9409 names the
# standardized tool flange, so it counts as flange-class out of the box.
_FLANGE_PATTERN = re.compile(r"robot.*flange|iso.?9409", re.IGNORECASE)

DEFAULT_PORT_RULES = (PortRule(product_type="robotic_arm", port_type_class="robot_flange", members=()),)


def required_ports_check(catalog: Catalog, product: Product) -> list[Diagnostic]:
    """Check the product against the catalog's required-port rules table."""
    rules = {r.product_type: r for r in DEFAULT_PORT_RULES}
    rules.update({r.product_type: r for r in catalog.port_rules})
    ptype = catalog.product_type(product.id)
    rule = rules.get(ptype)
    if rule is None:
        return []
    for port in catalog.effective_ports(product.id):
        value = port.port_type.value
        if rule.members:
            if value in rule.members:
                return []
        elif _FLANGE_PATTERN.search(value):
            return []
    return [
        Diagnostic(
            "required_port_types",
            product.id,
            f"{ptype} must own a {rule.port_type_class!r}-class port",
        )
    ]

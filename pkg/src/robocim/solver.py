"""Enumeration of all valid configurations, with oracle and reports.

Two independent routes produce configurations:

* enumerate_configurations: backtracking over role slots in canonical order
  (arm, [flange adapter], eecd, end effector, data connection), pruning on
  coexistence incompatibility, then enumerating total port matchings with the
  matching kernel and filtering every candidate through check_configuration.
* enumerate_bruteforce: the correctness oracle. Tries every size-k product
  subset and every orientation/type-respecting total pairing of their ports
  with a deliberately naive recursion (no claims knowledge, no kernel, no
  propagation) and filters through check_configuration.

Both emit the same canonical form: products in role order, matching pairs with
endpoints ordered by (product id, port id), results sorted lexicographically
by (product list, matching). Identical inputs therefore produce identical
output, byte for byte once serialized.

The certainty grade of a configuration is the weakest evidence used by any of
its connections, with "default" (no evidence, default assumption) grading
below observation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Optional

from .errors import CatalogTooLarge, StaleConfiguration
from .matching import enumerate_matchings
from .model import (
    Catalog,
    CompatibilityClaim,
    DEFAULT_GRADE,
    CERTAINTY_RANK,
    JustificationLevel,
    Orientation,
)
from .reasoning import (
    MatchedPair,
    PortRef,
    QueryRequirements,
    ROLE_ORDER,
    Scope,
    VerdictStatus,
    application_subtype,
    check_configuration,
    resolve_compatibility,
    validate_query,
)

BRUTE_FORCE_LIMIT = 14


@dataclass(frozen=True)
class ConnectionEvidence:
    """Why one matched pair is allowed: structure plus claims or the default."""

    endpoints: MatchedPair
    port_type: str
    orientations: tuple[str, str]
    basis: str  # "default" | "evidence"
    strength: Optional[JustificationLevel]
    claims: tuple[CompatibilityClaim, ...]

    @property
    def grade(self) -> str:
        return self.strength.value if self.strength is not None else DEFAULT_GRADE


@dataclass(frozen=True)
class MediationEvidence:
    """A coexisting pair that must be routed through a named mediator."""

    pair: tuple[str, str]
    mediator: str
    strength: JustificationLevel
    claims: tuple[CompatibilityClaim, ...]


@dataclass(frozen=True)
class Configuration:
    products: tuple[str, ...]  # canonical role order
    matching: tuple[MatchedPair, ...]  # canonical pair order
    certainty: str  # a justification level value or "default"
    connections: tuple[ConnectionEvidence, ...]
    mediations: tuple[MediationEvidence, ...]
    catalog_fingerprint: str

    @property
    def explanations(self) -> tuple:
        return self.connections + self.mediations

    @property
    def sort_key(self):
        return (self.products, self.matching)


@dataclass(frozen=True)
class UncertaintyEntry:
    pair: tuple[str, str]
    reason: str  # "default_only" | "conflict" | "below_threshold"
    details: str


# ---------------------------------------------------------------------------
# main solver

def enumerate_configurations(catalog: Catalog, req: QueryRequirements) -> list[Configuration]:
    """All valid configurations for the query, in canonical deterministic order."""
    return list(_generate(catalog, req))


def enumerate_capped(
    catalog: Catalog, req: QueryRequirements, max_results: Optional[int]
) -> tuple[list[Configuration], bool]:
    """Like enumerate_configurations but stopping after max_results; the flag
    reports whether more configurations exist beyond the cap."""
    gen = _generate(catalog, req)
    if max_results is None:
        return list(gen), False
    head = list(itertools.islice(gen, max_results))
    truncated = next(gen, None) is not None
    return head, truncated


def _generate(catalog: Catalog, req: QueryRequirements) -> Iterator[Configuration]:
    validate_query(catalog, req)
    roles = ROLE_ORDER[req.size_k]
    domains = _role_domains(catalog, req)

    def descend(idx: int, chosen: tuple[str, ...]) -> Iterator[Configuration]:
        if idx == len(roles):
            yield from _configurations_for_set(catalog, chosen, req)
            return
        for cand in domains[roles[idx]]:
            # coexistence pruning is safe: the filter rejects these sets anyway
            if any(
                resolve_compatibility(catalog, prev, cand, Scope.CONFIGURATION).status
                in (VerdictStatus.INCOMPATIBLE, VerdictStatus.CONFLICT)
                for prev in chosen
            ):
                continue
            yield from descend(idx + 1, chosen + (cand,))

    yield from descend(0, ())


def _role_domains(catalog: Catalog, req: QueryRequirements) -> dict[str, list[str]]:
    subtype = application_subtype(catalog, req.application)
    required = {
        ptype: [(name, value) for t, name, value in req.extra_required_attributes if t == ptype]
        for ptype, _, _ in req.extra_required_attributes
    }
    domains: dict[str, list[str]] = {}
    for role in ROLE_ORDER[req.size_k]:
        cands = []
        for pid in sorted(catalog.products_by_id):
            if catalog.product_type(pid) != role:
                continue
            if role == "end_effector" and subtype is not None and catalog.product_subtype(pid) != subtype:
                continue
            attrs = catalog.effective_attributes(pid)
            if any(
                attrs.get(name) is None or attrs[name].value != value
                for name, value in required.get(role, [])
            ):
                continue
            cands.append(pid)
        domains[role] = cands
    return domains


def _configurations_for_set(
    catalog: Catalog, chosen: tuple[str, ...], req: QueryRequirements
) -> Iterator[Configuration]:
    """Enumerate canonical matchings of one product set and filter them."""
    ports: list[PortRef] = sorted(
        (pid, port.id) for pid in chosen for port in catalog.effective_ports(pid)
    )
    n = len(ports)
    if n % 2:
        return
    # necessary condition for a total matching: inputs and outputs balance per type
    balance: dict[str, int] = {}
    for pid, port_id in ports:
        port = catalog.port(pid, port_id)
        delta = 1 if port.orientation is Orientation.OUTPUT else -1
        balance[port.port_type.value] = balance.get(port.port_type.value, 0) + delta
    if any(balance.values()):
        return

    connectable = {}
    for x, y in itertools.combinations(sorted(set(chosen)), 2):
        connectable[(x, y)] = resolve_compatibility(catalog, x, y, Scope.DIRECT).connectable

    masks = [0] * n
    for i, j in itertools.combinations(range(n), 2):
        (pid_i, port_i), (pid_j, port_j) = ports[i], ports[j]
        if pid_i == pid_j:
            continue
        a, b = catalog.port(pid_i, port_i), catalog.port(pid_j, port_j)
        if a.orientation is b.orientation or a.port_type.value != b.port_type.value:
            continue
        if not connectable[(min(pid_i, pid_j), max(pid_i, pid_j))]:
            continue
        masks[i] |= 1 << j
        masks[j] |= 1 << i

    for matching in enumerate_matchings(n, masks):
        pairs = tuple((ports[i], ports[j]) for i, j in matching)
        if check_configuration(catalog, chosen, pairs, req):
            continue
        yield _build_configuration(catalog, chosen, pairs)


def _build_configuration(
    catalog: Catalog, products: tuple[str, ...], pairs: tuple[MatchedPair, ...]
) -> Configuration:
    connections = []
    for pa, pb in pairs:
        port_a = catalog.port(*pa)
        port_b = catalog.port(*pb)
        verdict = resolve_compatibility(catalog, pa[0], pb[0], Scope.DIRECT)
        basis = "default" if verdict.status is VerdictStatus.COMPATIBLE_BY_DEFAULT else "evidence"
        connections.append(
            ConnectionEvidence(
                endpoints=(pa, pb),
                port_type=port_a.port_type.value,
                orientations=(port_a.orientation.value, port_b.orientation.value),
                basis=basis,
                strength=verdict.strength,
                claims=verdict.supporting_claims,
            )
        )
    mediations = []
    ordered = sorted(products)
    for x, y in itertools.combinations(ordered, 2):
        verdict = resolve_compatibility(catalog, x, y, Scope.DIRECT)
        if verdict.status is VerdictStatus.CONDITIONALLY_INCOMPATIBLE:
            mediations.append(
                MediationEvidence(
                    pair=(x, y),
                    mediator=verdict.mediator,
                    strength=verdict.strength,
                    claims=verdict.supporting_claims,
                )
            )
    certainty = min(
        (c.grade for c in connections),
        key=lambda grade: CERTAINTY_RANK[grade],
        default=DEFAULT_GRADE,
    )
    return Configuration(
        products=products,
        matching=pairs,
        certainty=certainty,
        connections=tuple(connections),
        mediations=tuple(mediations),
        catalog_fingerprint=catalog.fingerprint,
    )


# ---------------------------------------------------------------------------
# brute-force oracle

def enumerate_bruteforce(catalog: Catalog, req: QueryRequirements) -> list[Configuration]:
    """Exhaustive reference enumeration; must equal enumerate_configurations.

    Tries every size-k subset and every orientation/type-respecting pairing of
    all their ports (pairings violating even those trivially fail the filter),
    then lets check_configuration decide. Claims are intentionally invisible
    to the generator so the filter semantics carry all the weight.
    """
    if len(catalog.products) > BRUTE_FORCE_LIMIT:
        raise CatalogTooLarge(
            f"brute force is limited to {BRUTE_FORCE_LIMIT} products, got {len(catalog.products)}"
        )
    validate_query(catalog, req)
    roles = ROLE_ORDER[req.size_k]
    results = []
    for subset in itertools.combinations(sorted(catalog.products_by_id), req.size_k):
        items = sorted(
            ((pid, port.id), port.orientation, port.port_type.value)
            for pid in subset
            for port in catalog.effective_ports(pid)
        )
        for pairs in _structural_pairings(items):
            if check_configuration(catalog, subset, pairs, req):
                continue
            by_type = {catalog.product_type(pid): pid for pid in subset}
            products = tuple(by_type[role] for role in roles)
            results.append(_build_configuration(catalog, products, pairs))
    results.sort(key=lambda cfg: cfg.sort_key)
    return results


def _structural_pairings(items: list) -> Iterator[tuple[MatchedPair, ...]]:
    """Every way to pair all ports such that owners differ, orientations are
    opposite and the port types agree. Naive recursion, independent of the
    matching kernel."""
    if not items:
        yield ()
        return
    if len(items) % 2:
        return
    (ref_a, orient_a, type_a) = items[0]
    rest = items[1:]
    for idx, (ref_b, orient_b, type_b) in enumerate(rest):
        if ref_a[0] == ref_b[0] or orient_a is orient_b or type_a != type_b:
            continue
        for tail in _structural_pairings(rest[:idx] + rest[idx + 1 :]):
            yield ((ref_a, ref_b),) + tail


# ---------------------------------------------------------------------------
# explanation and uncertainty reports

def explain(catalog: Catalog, cfg: Configuration) -> dict:
    """Explanation document for one configuration.

    Raises StaleConfiguration when the catalog content no longer matches the
    one the configuration was produced from.
    """
    if cfg.catalog_fingerprint != catalog.fingerprint:
        raise StaleConfiguration("catalog changed since this configuration was produced")
    from .serialize import connection_to_obj, mediation_to_obj  # no cycle: serialize imports nothing from solver

    return {
        "products": [
            {
                "id": pid,
                "display_name": catalog.products_by_id[pid].display_name,
                "type": catalog.product_type(pid),
            }
            for pid in cfg.products
        ],
        "certainty": cfg.certainty,
        "connections": [connection_to_obj(c) for c in cfg.connections],
        "mediations": [mediation_to_obj(m) for m in cfg.mediations],
    }


def report_uncertain(catalog: Catalog, req: QueryRequirements) -> list[UncertaintyEntry]:
    """Pairs worth investigating: structurally connectable but with default-only,
    conflicting, or below-threshold evidence."""
    entries = []
    pids = sorted(catalog.products_by_id)
    for i, a in enumerate(pids):
        for b in pids[i + 1 :]:
            if not _structurally_possible(catalog, a, b):
                continue
            verdict = resolve_compatibility(catalog, a, b, Scope.DIRECT)
            if verdict.status is VerdictStatus.COMPATIBLE_BY_DEFAULT:
                reason = "default_only"
                details = "no evidence either way; compatibility rests on the default assumption"
            elif verdict.status is VerdictStatus.CONFLICT:
                reason = "conflict"
                details = f"contradictory claims at equal strength ({verdict.strength})"
            elif (
                req.min_justification is not None
                and verdict.strength.rank < req.min_justification.rank
            ):
                reason = "below_threshold"
                details = f"strongest evidence is {verdict.strength}, below {req.min_justification}"
            else:
                continue
            entries.append(UncertaintyEntry(pair=(a, b), reason=reason, details=details))
    return entries


def _structurally_possible(catalog: Catalog, a: str, b: str) -> bool:
    ports_b = catalog.effective_ports(b)
    for pa in catalog.effective_ports(a):
        for pb in ports_b:
            if pa.orientation is not pb.orientation and pa.port_type.value == pb.port_type.value:
                return True
    return False

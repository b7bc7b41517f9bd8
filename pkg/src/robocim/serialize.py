"""Stable JSON serialization of solver results.

The CLI's --format json output and the service's POST /api/configure body are
produced by the same functions here, so they are byte-identical for identical
catalog + query inputs: fixed key order, compact separators, UTF-8, one
trailing newline.
"""

from __future__ import annotations

import json
from typing import Optional

from .model import CompatibilityClaim
from .reasoning import QueryRequirements
from .solver import Configuration, ConnectionEvidence, MediationEvidence, UncertaintyEntry

# enumeration cap shared by the CLI and the service (ROBOCIM_MAX_RESULTS overrides)
DEFAULT_MAX_RESULTS = 1000


def claim_to_obj(claim: CompatibilityClaim) -> dict:
    return {
        "polarity": claim.polarity.value,
        "scope": claim.scope.value,
        "subjects": list(claim.subjects),
        "condition": {"mediator": claim.condition} if claim.condition is not None else None,
        "justification": {"level": claim.level.value, "source": claim.justification.source},
    }


def connection_to_obj(ev: ConnectionEvidence) -> dict:
    return {
        "kind": "connection",
        "endpoints": [list(ev.endpoints[0]), list(ev.endpoints[1])],
        "port_type": ev.port_type,
        "orientations": list(ev.orientations),
        "basis": ev.basis,
        "strength": ev.strength.value if ev.strength is not None else None,
        "claims": [claim_to_obj(c) for c in ev.claims],
    }


def mediation_to_obj(ev: MediationEvidence) -> dict:
    return {
        "kind": "mediation",
        "pair": list(ev.pair),
        "mediator": ev.mediator,
        "strength": ev.strength.value,
        "claims": [claim_to_obj(c) for c in ev.claims],
    }


def configuration_to_obj(cfg: Configuration) -> dict:
    return {
        "products": list(cfg.products),
        "matching": [[list(pa), list(pb)] for pa, pb in cfg.matching],
        "certainty": cfg.certainty,
        "explanations": [connection_to_obj(c) for c in cfg.connections]
        + [mediation_to_obj(m) for m in cfg.mediations],
    }


def query_to_obj(req: QueryRequirements) -> dict:
    return {
        "application": req.application,
        "size_k": req.size_k,
        "min_justification": req.min_justification.value if req.min_justification else None,
        "extra_required_attributes": [list(t) for t in req.extra_required_attributes],
    }


def uncertainty_to_obj(entry: UncertaintyEntry) -> dict:
    return {"pair": list(entry.pair), "reason": entry.reason, "details": entry.details}


def result_document(
    req: QueryRequirements,
    configurations: list[Configuration],
    uncertain: list[UncertaintyEntry],
    truncated: bool,
) -> dict:
    return {
        "query": query_to_obj(req),
        "configurations": [configuration_to_obj(c) for c in configurations],
        "uncertain": [uncertainty_to_obj(u) for u in uncertain],
        "truncated": truncated,
    }


def serialize_document(doc) -> bytes:
    """Canonical wire form: compact JSON, insertion key order, trailing newline."""
    return (json.dumps(doc, ensure_ascii=False, separators=(",", ":")) + "\n").encode("utf-8")


def solve_to_document(catalog, req: QueryRequirements, max_results: Optional[int] = None) -> dict:
    """Run the query end to end and build the result document."""
    from .solver import enumerate_capped, report_uncertain

    configurations, truncated = enumerate_capped(catalog, req, max_results)
    uncertain = report_uncertain(catalog, req)
    return result_document(req, configurations, uncertain, truncated)

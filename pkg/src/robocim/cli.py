"""Command-line frontend.

    robocim validate  <catalog>
    robocim configure <catalog> --application A --size K [--min-justification L]
                                [--format json|table]
    robocim explain   <catalog> --config-index N --application A --size K [...]
    robocim uncertain <catalog> [--min-justification L] [--format json|table]
    robocim serve     <catalog> --bind HOST:PORT

Exit codes: 0 success, 1 validation failure, 2 usage error, 3 I/O error.
ROBOCIM_MAX_RESULTS overrides the enumeration cap (default 1000).
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Optional

from .catalog_io import load_catalog, validate_catalog
from .errors import (
    CatalogError,
    InvalidQuery,
    ParseError,
    RobocimError,
)
from .model import Catalog, JustificationLevel
from .reasoning import QueryRequirements, required_ports_check
from .serialize import DEFAULT_MAX_RESULTS, serialize_document, solve_to_document, uncertainty_to_obj
from .solver import enumerate_capped, explain, report_uncertain

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_USAGE = 2
EXIT_IO = 3

LEVEL_CHOICES = [lvl.value for lvl in JustificationLevel]


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="robocim", description="modular robot system configurator")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a catalog against all model invariants")
    p.add_argument("catalog")

    p = sub.add_parser("configure", help="enumerate all valid configurations")
    p.add_argument("catalog")
    _query_args(p)
    p.add_argument("--format", choices=["json", "table"], default="table")

    p = sub.add_parser("explain", help="explain one configuration of a query")
    p.add_argument("catalog")
    p.add_argument("--config-index", type=int, required=True, metavar="N", help="0-based result index")
    _query_args(p)

    p = sub.add_parser("uncertain", help="report pairs with weak or conflicting evidence")
    p.add_argument("catalog")
    p.add_argument("--min-justification", choices=LEVEL_CHOICES)
    p.add_argument("--format", choices=["json", "table"], default="table")

    p = sub.add_parser("serve", help="serve the HTTP API")
    p.add_argument("catalog")
    p.add_argument("--bind", default="127.0.0.1:8000", metavar="HOST:PORT")

    return parser


def _query_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--application", default="any")
    p.add_argument("--size", type=int, default=4, metavar="K", help="products per configuration (4 or 5)")
    p.add_argument("--min-justification", choices=LEVEL_CHOICES)
    p.add_argument(
        "--require",
        action="append",
        default=[],
        metavar="TYPE:NAME=VALUE",
        help="extra required attribute, e.g. end_effector:payload=5kg (repeatable)",
    )


def _load(path: str) -> Catalog:
    """Load a catalog, translating failures into exit codes."""
    try:
        return load_catalog(path)
    except (ParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_IO) from exc
    except CatalogError as exc:
        print(f"error: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_VALIDATION) from exc


def _load_validated(path: str) -> Catalog:
    catalog = _load(path)
    diagnostics = validate_catalog(catalog)
    if diagnostics:
        for d in diagnostics:
            print(str(d), file=sys.stderr)
        raise SystemExit(EXIT_VALIDATION)
    return catalog


def _requirements(catalog: Catalog, args) -> QueryRequirements:
    extra = []
    for raw in args.require:
        head, sep, value = raw.partition("=")
        ptype, sep2, name = head.partition(":")
        if not sep or not sep2 or not ptype or not name:
            print(f"error: --require expects TYPE:NAME=VALUE, got {raw!r}", file=sys.stderr)
            raise SystemExit(EXIT_USAGE)
        extra.append((ptype, name, value))
    level = JustificationLevel(args.min_justification) if args.min_justification else None
    req = QueryRequirements(
        application=args.application,
        size_k=args.size,
        min_justification=level,
        extra_required_attributes=tuple(extra),
    )
    return req


def _max_results() -> int:
    return int(os.environ.get("ROBOCIM_MAX_RESULTS", DEFAULT_MAX_RESULTS))


def _cmd_validate(args) -> int:
    catalog = _load(args.catalog)
    diagnostics = list(validate_catalog(catalog))
    for product in catalog.products:
        diagnostics.extend(required_ports_check(catalog, product))
    for d in diagnostics:
        print(str(d), file=sys.stderr)
    if diagnostics:
        return EXIT_VALIDATION
    print(f"{args.catalog}: ok ({len(catalog.products)} products)")
    return EXIT_OK


def _cmd_configure(args) -> int:
    catalog = _load_validated(args.catalog)
    req = _requirements(catalog, args)
    try:
        doc = solve_to_document(catalog, req, max_results=_max_results())
    except InvalidQuery as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.format == "json":
        sys.stdout.buffer.write(serialize_document(doc))
        return EXIT_OK
    configs = doc["configurations"]
    for i, cfg in enumerate(configs):
        names = " + ".join(
            catalog.products_by_id[pid].display_name for pid in cfg["products"]
        )
        print(f"{i:4d}  [{cfg['certainty']:<11}]  {names}")
    suffix = " (truncated)" if doc["truncated"] else ""
    print(f"{len(configs)} configuration(s){suffix}")
    return EXIT_OK


def _cmd_explain(args) -> int:
    catalog = _load_validated(args.catalog)
    req = _requirements(catalog, args)
    try:
        configs, _ = enumerate_capped(catalog, req, _max_results())
    except InvalidQuery as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if not 0 <= args.config_index < len(configs):
        print(
            f"error: --config-index {args.config_index} out of range (found {len(configs)})",
            file=sys.stderr,
        )
        return EXIT_USAGE
    doc = explain(catalog, configs[args.config_index])
    print(f"configuration #{args.config_index}: certainty {doc['certainty']}")
    for p in doc["products"]:
        print(f"  {p['id']} ({p['type']}): {p['display_name']}")
    print("connections:")
    for conn in doc["connections"]:
        (pa, porta), (pb, portb) = conn["endpoints"]
        line = (
            f"  {pa}/{porta} ({conn['orientations'][0]}) <-> {pb}/{portb} ({conn['orientations'][1]})"
            f" via {conn['port_type']}"
        )
        print(line)
        if conn["basis"] == "default":
            print("      default assumption: same interface, no contrary evidence")
        else:
            for claim in conn["claims"]:
                j = claim["justification"]
                print(f"      {claim['polarity']} claim [{j['level']}] {j['source']}")
    for med in doc["mediations"]:
        a, b = med["pair"]
        print(f"  {a} and {b} may coexist only via {med['mediator']} [{med['strength']}]")
    return EXIT_OK


def _cmd_uncertain(args) -> int:
    catalog = _load_validated(args.catalog)
    level = JustificationLevel(args.min_justification) if args.min_justification else None
    req = QueryRequirements(application="any", size_k=4, min_justification=level)
    entries = report_uncertain(catalog, req)
    if args.format == "json":
        sys.stdout.buffer.write(serialize_document([uncertainty_to_obj(e) for e in entries]))
        return EXIT_OK
    for e in entries:
        print(f"{e.pair[0]} - {e.pair[1]}: {e.reason} ({e.details})")
    print(f"{len(entries)} uncertain pair(s)")
    return EXIT_OK


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    catalog = _load_validated(args.catalog)
    host, _, port = args.bind.rpartition(":")
    try:
        port_num = int(port)
    except ValueError:
        print(f"error: --bind expects HOST:PORT, got {args.bind!r}", file=sys.stderr)
        return EXIT_USAGE
    app = create_app(catalog)
    uvicorn.run(app, host=host or "127.0.0.1", port=port_num, log_level="warning")
    return EXIT_OK


def main(argv: Optional[list[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits on usage errors and --help
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    handlers = {
        "validate": _cmd_validate,
        "configure": _cmd_configure,
        "explain": _cmd_explain,
        "uncertain": _cmd_uncertain,
        "serve": _cmd_serve,
    }
    try:
        return handlers[args.command](args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_VALIDATION
    except RobocimError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())

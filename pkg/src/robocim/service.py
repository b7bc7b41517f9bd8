"""HTTP API over one immutable catalog.

Endpoints (all JSON, all under /api):

  GET  /api/health                          liveness probe
  GET  /api/catalog                         the full catalog in file format
  GET  /api/applications                    application names ("any" always included)
  GET  /api/products?type=...               effective products, optionally filtered
  POST /api/configure                       run a query, solver result document
  GET  /api/uncertain?min_justification=L   uncertainty report

Responses are pure functions of (catalog bytes, request): the catalog is
loaded once and never mutated, so identical requests return identical bodies.
The /api/configure body is the exact byte output of robocim.serialize, shared
with the CLI. Errors use {"error_code", "message"}; request validation is done
by hand so invalid queries come back as structured 400s.
"""

from __future__ import annotations

import json
import os
from typing import Optional, Sequence

from fastapi import FastAPI, Request, Response
from fastapi.middleware.cors import CORSMiddleware

from .catalog_io import catalog_to_obj, load_catalog, validate_catalog
from .errors import InvalidQuery, RobocimError
from .model import ANY_APPLICATION, Catalog, JustificationLevel
from .reasoning import QueryRequirements, VALID_SIZES
from .serialize import DEFAULT_MAX_RESULTS, serialize_document, solve_to_document, uncertainty_to_obj
from .solver import report_uncertain


def _json_bytes(payload) -> bytes:
    return (json.dumps(payload, ensure_ascii=False, separators=(",", ":")) + "\n").encode("utf-8")


def _json_response(payload, status_code: int = 200) -> Response:
    return Response(content=_json_bytes(payload), status_code=status_code, media_type="application/json")


def _error(code: str, message: str, status_code: int = 400) -> Response:
    return _json_response({"error_code": code, "message": message}, status_code=status_code)


class RequestError(Exception):
    def __init__(self, code: str, message: str):
        self.code = code
        self.message = message
        super().__init__(message)


def _parse_level(raw, field: str) -> Optional[JustificationLevel]:
    if raw is None:
        return None
    try:
        return JustificationLevel(raw)
    except (ValueError, TypeError):
        raise RequestError("invalid_justification", f"{field}: unknown justification level {raw!r}") from None


def parse_configure_request(catalog: Catalog, body) -> QueryRequirements:
    """Validate a POST /api/configure body into QueryRequirements."""
    if not isinstance(body, dict):
        raise RequestError("invalid_request", "request body must be a JSON object")
    allowed = {"application", "size_k", "min_justification", "extra_required_attributes"}
    unknown = set(body) - allowed
    if unknown:
        raise RequestError("invalid_request", f"unknown key(s) {sorted(unknown)}")
    if "application" not in body or not isinstance(body["application"], str):
        raise RequestError("invalid_request", "'application' (string) is required")
    application = body["application"]
    size_k = body.get("size_k")
    if not isinstance(size_k, int) or isinstance(size_k, bool) or size_k not in VALID_SIZES:
        raise RequestError("invalid_size", f"size_k must be one of {list(VALID_SIZES)}")
    if application != ANY_APPLICATION and application not in catalog.applications_by_name:
        raise RequestError("unknown_application", f"unknown application {application!r}")
    level = _parse_level(body.get("min_justification"), "min_justification")
    extra = []
    raw_extra = body.get("extra_required_attributes", [])
    if not isinstance(raw_extra, list):
        raise RequestError("invalid_request", "extra_required_attributes must be a list of [type, name, value]")
    for item in raw_extra:
        if not (isinstance(item, (list, tuple)) and len(item) == 3 and all(isinstance(x, str) for x in item)):
            raise RequestError("invalid_request", "extra_required_attributes entries are [type, name, value] strings")
        extra.append(tuple(item))
    return QueryRequirements(
        application=application,
        size_k=size_k,
        min_justification=level,
        extra_required_attributes=tuple(extra),
    )


def create_app(
    catalog: Catalog,
    max_results: Optional[int] = None,
    cors_origins: Optional[Sequence[str]] = None,
) -> FastAPI:
    """Build the API over an already loaded and validated catalog."""
    if max_results is None:
        max_results = int(os.environ.get("ROBOCIM_MAX_RESULTS", DEFAULT_MAX_RESULTS))
    if cors_origins is None:
        cors_origins = os.environ.get("ROBOCIM_CORS_ORIGINS", "*").split(",")
    app = FastAPI(title="robocim", docs_url=None, redoc_url=None, openapi_url=None)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=list(cors_origins),
        allow_methods=["GET", "POST"],
        allow_headers=["*"],
    )

    catalog_bytes = _json_bytes(catalog_to_obj(catalog))
    applications = sorted({ANY_APPLICATION, *(a.name for a in catalog.applications)})

    @app.exception_handler(RobocimError)
    async def _robocim_error(_request, exc: RobocimError):
        status = 400 if isinstance(exc, InvalidQuery) else 500
        return _error("invalid_query" if isinstance(exc, InvalidQuery) else "internal_error", str(exc), status)

    @app.get("/api/health")
    def health():
        return _json_response({"status": "ok"})

    @app.get("/api/catalog")
    def full_catalog():
        return Response(content=catalog_bytes, media_type="application/json")

    @app.get("/api/applications")
    def list_applications():
        return _json_response(applications)

    @app.get("/api/products")
    def list_products(type: Optional[str] = None):
        products = []
        for pid in sorted(catalog.products_by_id):
            ptype = catalog.product_type(pid)
            if type is not None and ptype != type:
                continue
            p = catalog.products_by_id[pid]
            products.append(
                {
                    "id": pid,
                    "display_name": p.display_name,
                    "manufacturer": p.manufacturer,
                    "type": ptype,
                    "subtype": catalog.product_subtype(pid),
                    "ports": [
                        {
                            "id": port.id,
                            "orientation": port.orientation.value,
                            "port_type": port.port_type.value,
                        }
                        for port in catalog.effective_ports(pid)
                    ],
                }
            )
        return _json_response(products)

    @app.post("/api/configure")
    async def configure(request: Request):
        try:
            body = await request.json()
        except Exception:
            return _error("invalid_json", "request body is not valid JSON")
        try:
            req = parse_configure_request(catalog, body)
        except RequestError as exc:
            return _error(exc.code, exc.message)
        try:
            doc = solve_to_document(catalog, req, max_results=max_results)
        except InvalidQuery as exc:
            return _error("invalid_query", str(exc))
        return Response(content=serialize_document(doc), media_type="application/json")

    @app.get("/api/uncertain")
    def uncertain(min_justification: Optional[str] = None):
        try:
            level = _parse_level(min_justification, "min_justification")
        except RequestError as exc:
            return _error(exc.code, exc.message)
        req = QueryRequirements(application=ANY_APPLICATION, size_k=4, min_justification=level)
        entries = [uncertainty_to_obj(e) for e in report_uncertain(catalog, req)]
        return _json_response(entries)

    return app


def serve(catalog_path, bind_address: str = "127.0.0.1:8000", **app_kwargs) -> None:
    """Load, validate and serve a catalog until interrupted."""
    import uvicorn

    catalog = load_catalog(catalog_path)
    diagnostics = validate_catalog(catalog)
    if diagnostics:
        lines = "\n".join(str(d) for d in diagnostics)
        raise SystemExit(f"catalog failed validation:\n{lines}")
    host, _, port = bind_address.rpartition(":")
    app = create_app(catalog, **app_kwargs)
    uvicorn.run(app, host=host or "127.0.0.1", port=int(port), log_level="warning")

"""robocim: a defeasible-compatibility configurator for modular robot systems.

Enumerates every valid way to compose a robot system (arm, coupler, end
effector, data connection, optional flange adapter) from a product catalog,
treating vendor compatibility statements as evidence-backed claims rather than
facts: matching interfaces are compatible by default, explicit evidence
overrides the default, stronger evidence overrides weaker, and contradictions
are surfaced instead of silently resolved.
"""

from .catalog_io import (
    load_catalog,
    loads_catalog,
    serialize_catalog,
    validate_catalog,
)
from .errors import (
    CatalogError,
    CatalogTooLarge,
    DuplicateIdError,
    InvalidQuery,
    ParseError,
    RobocimError,
    SchemaError,
    StaleConfiguration,
    UnknownPort,
    UnknownProduct,
    UnknownReferenceError,
)
from .matching import kernel_backend
from .model import (
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
    Scope,
    justification_stronger,
)
from .reasoning import (
    CompatibilityVerdict,
    ConnectionCheck,
    QueryRequirements,
    VerdictStatus,
    check_configuration,
    check_port_connection,
    required_ports_check,
    resolve_compatibility,
)
from .serialize import serialize_document, solve_to_document
from .solver import (
    Configuration,
    UncertaintyEntry,
    enumerate_bruteforce,
    enumerate_capped,
    enumerate_configurations,
    explain,
    report_uncertain,
)

__version__ = "0.1.0"


def __getattr__(name):
    # the service module pulls in fastapi; load it only when asked for
    if name in ("create_app", "serve"):
        from . import service

        return getattr(service, name)
    raise AttributeError(f"module {__name__!r} has no attribute {name!r}")

__all__ = [
    "ApplicationSpec",
    "Attribute",
    "AttributeValue",
    "Catalog",
    "CatalogError",
    "CatalogTooLarge",
    "CompatibilityClaim",
    "CompatibilityVerdict",
    "Configuration",
    "ConnectionCheck",
    "Diagnostic",
    "DuplicateIdError",
    "InvalidQuery",
    "Justification",
    "JustificationLevel",
    "Orientation",
    "ParseError",
    "Polarity",
    "Port",
    "PortRule",
    "Product",
    "ProductSeries",
    "QueryRequirements",
    "RobocimError",
    "SchemaError",
    "Scope",
    "StaleConfiguration",
    "UncertaintyEntry",
    "UnknownPort",
    "UnknownProduct",
    "UnknownReferenceError",
    "VerdictStatus",
    "check_configuration",
    "check_port_connection",
    "create_app",
    "enumerate_bruteforce",
    "enumerate_capped",
    "enumerate_configurations",
    "explain",
    "justification_stronger",
    "kernel_backend",
    "load_catalog",
    "loads_catalog",
    "report_uncertain",
    "required_ports_check",
    "resolve_compatibility",
    "serialize_catalog",
    "serialize_document",
    "serve",
    "solve_to_document",
    "validate_catalog",
]

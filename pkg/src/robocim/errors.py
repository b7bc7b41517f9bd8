"""Exception types raised across the package.

Catalog loading distinguishes four failure classes so callers (CLI, service)
can map them to distinct exit codes / HTTP statuses: unreadable bytes
(ParseError), wrong shape (SchemaError), colliding ids (DuplicateIdError) and
dangling ids (UnknownReferenceError). Everything else is a lookup or query
error raised by the reasoning and solver layers.
"""


class RobocimError(Exception):
    """Base class for all errors raised by robocim."""


class CatalogError(RobocimError):
    """Base class for catalog load failures."""


class ParseError(CatalogError):
    """The catalog file is not well-formed JSON."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)


class SchemaError(CatalogError):
    """A required field is missing, has the wrong type, or an unknown key is present."""


class DuplicateIdError(CatalogError):
    """Two entities share an identifier that must be unique."""


class UnknownReferenceError(CatalogError):
    """An id reference (series, claim subject, mediator) does not resolve."""

    def __init__(self, ref, context=""):
        self.ref = ref
        suffix = f" ({context})" if context else ""
        super().__init__(f"unknown reference {ref!r}{suffix}")


class UnknownProduct(RobocimError):
    """A product id does not exist in the catalog."""


class UnknownPort(RobocimError):
    """A (product, port) pair does not resolve."""


class InvalidQuery(RobocimError):
    """Query requirements are malformed (bad size, unknown application, bad level)."""


class CatalogTooLarge(RobocimError):
    """The brute-force oracle refuses catalogs above its size guard."""


class StaleConfiguration(RobocimError):
    """A configuration is being explained against a catalog it was not produced from."""

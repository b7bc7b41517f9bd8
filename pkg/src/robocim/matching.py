"""Kernel selection: compiled matching enumeration with pure-Python fallback.

The compiled kernel is used when the extension built and ROBOCIM_PURE_PYTHON
is unset; anything else falls back to the Python twin. Both are importable
directly for cross-checking and benchmarking.
"""

from __future__ import annotations

import os

from ._matching_py import enumerate_matchings as enumerate_matchings_py

try:
    from ._matching_c import enumerate_matchings as enumerate_matchings_c
except ImportError:  # extension not built
    enumerate_matchings_c = None

_FORCED_PURE = bool(os.environ.get("ROBOCIM_PURE_PYTHON"))

if enumerate_matchings_c is not None and not _FORCED_PURE:
    _default = enumerate_matchings_c
    _BACKEND = "compiled"
else:
    _default = enumerate_matchings_py
    _BACKEND = "python"


def enumerate_matchings(n: int, allowed) -> list:
    """Enumerate all total port pairings; see _matching_py for the contract."""
    if n > 64 and _default is enumerate_matchings_c:
        return enumerate_matchings_py(n, allowed)
    return _default(n, allowed)


def kernel_backend() -> str:
    """Which kernel the solver is using: 'compiled' or 'python'."""
    return _BACKEND

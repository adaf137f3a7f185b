"""Record tokenizer backend, chosen at import.

The compiled ``_speedups`` extension is used when it was built; otherwise
the pure-Python twin in ``_pure``. Set ``SYNTAGMA_PURE_PYTHON=1`` to force
the fallback.
"""

from __future__ import annotations

import os

from . import _pure

if os.environ.get("SYNTAGMA_PURE_PYTHON"):
    _impl = _pure
else:
    try:
        from . import _speedups as _impl  # type: ignore[attr-defined]
    except ImportError:
        _impl = _pure

BACKEND = "cython" if _impl is not _pure else "python"

split_fields = _impl.split_fields
split_pairs = _impl.split_pairs
form_fields = _impl.form_fields


def backends() -> dict:
    """All importable backends by name, for equivalence tests and benchmarks."""
    found = {"python": _pure}
    try:
        from . import _speedups  # type: ignore[attr-defined]
    except ImportError:
        pass
    else:
        found["cython"] = _speedups
    return found

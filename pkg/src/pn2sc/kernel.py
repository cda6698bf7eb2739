"""Select the scheduler kernel implementation.

The compiled extension is used when it was built; otherwise, or when the
environment variable ``PN2SC_PURE`` is set to a non-empty value, the
pure-Python module is used.
"""

import os

from . import _kernel_py as pure

compiled = None
if not os.environ.get("PN2SC_PURE"):
    try:
        from . import _kernel as compiled  # type: ignore[no-redef]
    except ImportError:
        compiled = None

default = compiled if compiled is not None else pure


def available() -> dict:
    """Kernel implementations importable in this process, keyed by name."""
    found = {"pure": pure}
    if compiled is not None:
        found["compiled"] = compiled
    return found

"""Backend selection for the hot GF(2) kernels.

The compiled ``_speedups`` extension is used when it imports; otherwise
the pure-Python ``_purepy`` module. Setting ``BLOCKGROUP_PUREPY=1``
forces the fallback.
"""

from __future__ import annotations

import os
from types import ModuleType

from . import _purepy

purepy: ModuleType = _purepy
compiled: ModuleType | None

try:
    from . import _speedups as compiled  # type: ignore[no-redef]
except ImportError:  # pragma: no cover - depends on the build
    compiled = None

if compiled is not None and not os.environ.get("BLOCKGROUP_PUREPY"):
    backend: ModuleType = compiled
else:
    backend = purepy

BACKEND = "compiled" if backend is compiled else "python"


def use(name: str) -> None:
    """Switch backend at runtime (``"compiled"`` or ``"python"``)."""
    global backend, BACKEND
    if name == "python":
        backend = purepy
    elif name == "compiled":
        if compiled is None:
            raise RuntimeError("compiled extension is not built")
        backend = compiled
    else:
        raise ValueError(f"unknown backend {name!r}")
    BACKEND = name

"""Select the kernel implementation at import time.

``PWBENCH_BACKEND=python`` forces the pure-Python kernels, ``native`` requires
the compiled extension; anything else prefers native and falls back silently.
"""

from __future__ import annotations

import importlib
import os
from types import ModuleType

_NAMES = {"native": "pwbench.hashcore._native", "python": "pwbench.hashcore._pure"}


def load(name: str) -> ModuleType:
    return importlib.import_module(_NAMES[name])


def available() -> list[str]:
    found = []
    for name in _NAMES:
        try:
            load(name)
        except ImportError:
            continue
        found.append(name)
    return found


def _select() -> tuple[str, ModuleType]:
    forced = os.environ.get("PWBENCH_BACKEND", "").strip().lower()
    if forced in _NAMES:
        return forced, load(forced)
    try:
        return "native", load("native")
    except ImportError:
        return "python", load("python")


BACKEND, kernels = _select()

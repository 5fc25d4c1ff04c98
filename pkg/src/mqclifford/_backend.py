"""Pick the GF(2) kernel implementation.

The compiled extension is preferred. Setting ``MQCLIFFORD_PURE_PYTHON=1``
before import forces the numpy fallback, which is also used when the
extension was not built. :func:`use` switches at runtime.
"""

import os
from importlib import import_module

_MODULES = {"cython": "._gf2_kernels", "python": "._gf2_fallback"}


def available() -> list[str]:
    out = []
    for name, mod in _MODULES.items():
        try:
            import_module(mod, __package__)
        except ImportError:
            continue
        out.append(name)
    return out


def use(name: str) -> None:
    """Route all GF(2) kernels through ``name`` ("cython" or "python")."""
    global kernels, BACKEND
    if name not in _MODULES:
        raise ValueError(f"unknown backend {name!r}")
    kernels = import_module(_MODULES[name], __package__)
    BACKEND = name


if os.environ.get("MQCLIFFORD_PURE_PYTHON", "") not in ("", "0") or "cython" not in available():
    use("python")
else:
    use("cython")

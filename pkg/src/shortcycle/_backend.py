"""Backend selection: compiled kernels when the extension imported, pure
Python otherwise.  SHORTCYCLE_BACKEND=pure|fast overrides the default."""

import os

try:
    from . import _fast  # noqa: F401
    HAVE_FAST = True
except ImportError:
    HAVE_FAST = False

_ENV = "SHORTCYCLE_BACKEND"


def resolve(name=None) -> str:
    choice = name or os.environ.get(_ENV, "").strip().lower() or "auto"
    if choice == "auto":
        return "fast" if HAVE_FAST else "pure"
    if choice == "pure":
        return "pure"
    if choice == "fast":
        if not HAVE_FAST:
            raise RuntimeError("compiled backend requested but shortcycle._fast is not built")
        return "fast"
    raise ValueError(f"unknown backend {choice!r} (expected auto, fast, or pure)")

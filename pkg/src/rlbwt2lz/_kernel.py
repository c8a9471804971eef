"""Selection between the compiled hot loops and the pure Python fallback.

The compiled extension accelerates the two O(n)-iteration loops (the
partition max walk and the conversion driver).  Absence of the extension
only costs speed; results are identical.  Set RLBWT2LZ_KERNEL=python or
=compiled to force a choice.
"""

import os

try:
    from . import _speedups  # noqa: F401
    HAVE_SPEEDUPS = True
except ImportError:
    HAVE_SPEEDUPS = False


def available_kernels():
    return ("compiled", "python") if HAVE_SPEEDUPS else ("python",)


def default_kernel() -> str:
    env = os.environ.get("RLBWT2LZ_KERNEL", "").strip().lower()
    if env in ("compiled", "python"):
        if env == "compiled" and not HAVE_SPEEDUPS:
            raise RuntimeError("RLBWT2LZ_KERNEL=compiled but the extension is not built")
        return env
    return "compiled" if HAVE_SPEEDUPS else "python"


def resolve_kernel(choice) -> str:
    if choice is None or choice == "auto":
        return default_kernel()
    if choice not in ("compiled", "python"):
        raise ValueError(f"unknown kernel {choice!r}")
    if choice == "compiled" and not HAVE_SPEEDUPS:
        raise RuntimeError("compiled kernel requested but the extension is not built")
    return choice

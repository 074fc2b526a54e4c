"""Kernel backend selection.

The compiled Cython kernels are preferred when the extension built; the
numpy fallback is selected otherwise. Both produce bit-identical hit counts
for the same input arrays. Set ``HARDVIRIAL_KERNELS=py`` (or ``cy``) to force
a backend; forcing ``cy`` raises if the extension is missing.
"""

import os

_requested = os.environ.get("HARDVIRIAL_KERNELS", "").strip().lower()

if _requested in ("py", "python", "numpy"):
    from . import _kernels_py as kernels
elif _requested in ("cy", "cython", "compiled"):
    from . import _kernels_cy as kernels  # type: ignore[no-redef]
elif _requested == "":
    try:
        from . import _kernels_cy as kernels  # type: ignore[no-redef]
    except ImportError:
        from . import _kernels_py as kernels
else:
    raise ValueError(f"unknown HARDVIRIAL_KERNELS value {_requested!r}")


def backend_name() -> str:
    """Name of the active kernel backend ('cython' or 'python')."""
    return kernels.BACKEND_NAME

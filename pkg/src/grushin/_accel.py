"""Backend selection for the hot numeric kernels.

The environment variable GRUSHIN_BACKEND picks the implementation of the
inner loops in :mod:`grushin._kernels`:

* ``auto`` (default): use numba when it is importable, numpy otherwise.
* ``numba``: require numba, fail hard if it is missing.
* ``numpy``: force the pure-numpy fallback even when numba is installed.

The flag is read once at import time; both implementations stay importable
so they can be benchmarked and cross-checked against each other.
"""

import os

_requested = os.environ.get("GRUSHIN_BACKEND", "auto").strip().lower()
if _requested not in ("auto", "numba", "numpy"):
    raise RuntimeError(
        f"GRUSHIN_BACKEND must be one of auto|numba|numpy, got {_requested!r}"
    )

if _requested == "numpy":
    HAS_NUMBA = False
else:
    try:
        import numba  # noqa: F401

        HAS_NUMBA = True
    except ImportError:
        if _requested == "numba":
            raise RuntimeError("GRUSHIN_BACKEND=numba but numba is not importable")
        HAS_NUMBA = False

BACKEND = "numba" if HAS_NUMBA else "numpy"


def backend_name() -> str:
    """Name of the kernel backend selected at import time."""
    return BACKEND

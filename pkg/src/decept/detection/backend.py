"""Kernel backend selection.

The compiled extension is preferred when it imported cleanly; setting
DECEPT_PURE=1 forces the pure-Python kernels. Both backends produce
bit-identical results (see tests/test_backends.py), so the choice only
affects speed.
"""

import os

if os.environ.get("DECEPT_PURE", "") not in ("", "0"):
    from . import _sweeps_py as _impl

    BACKEND = "python"
else:
    try:
        from . import _sweeps as _impl  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        from . import _sweeps_py as _impl

        BACKEND = "python"

LouvainSweeper = _impl.LouvainSweeper
LabelSweeper = _impl.LabelSweeper


def get_kernels(prefer: str | None = None):
    """Return (LouvainSweeper, LabelSweeper, name) for an explicit backend.

    `prefer` is "compiled" or "python"; None keeps the import-time choice.
    Used by the benchmark script; raises ImportError when the compiled
    kernels were requested but are unavailable.
    """
    if prefer is None or prefer == BACKEND:
        return LouvainSweeper, LabelSweeper, BACKEND
    if prefer == "python":
        from . import _sweeps_py

        return _sweeps_py.LouvainSweeper, _sweeps_py.LabelSweeper, "python"
    if prefer == "compiled":
        from . import _sweeps  # raises ImportError when missing

        return _sweeps.LouvainSweeper, _sweeps.LabelSweeper, "compiled"
    raise ValueError(f"unknown backend {prefer!r}")

"""Measurement-kernel backend selection.

The compiled Cython kernel is used when it was built; set ``QCAUSAL_PURE=1``
to force the NumPy fallback.  Both backends implement the same contracts
(see ``pure.py``), agree on probabilities to float round-off, and feed the
same NumPy ``Generator`` for shot sampling; byte determinism of reports is
guaranteed per backend (a fixed environment always selects the same one).
"""

from __future__ import annotations

import os

from . import pure

AXIS_VECS = pure.AXIS_VECS
PAIRS = pure.PAIRS

if os.environ.get("QCAUSAL_PURE"):
    _impl = pure
else:
    try:
        from . import _fast as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = pure

joint_probs_common = _impl.joint_probs_common
joint_probs_causal = _impl.joint_probs_causal


def backend() -> str:
    """Name of the active backend: ``"compiled"`` or ``"pure"``."""
    return "pure" if _impl is pure else "compiled"


def backends() -> dict[str, object]:
    """All importable backends, keyed by name (for benchmarks and tests)."""
    found: dict[str, object] = {"pure": pure}
    try:
        from . import _fast

        found["compiled"] = _fast
    except ImportError:
        pass
    return found

"""Collision timing for non-deterministic turn-to-bearing maneuvers.

Thin wrapper over the C++ core. The native module is looked up first on the
normal path (installed package), then in ``TURNWAVE_MODULE_DIR`` (used by the
build-tree test harness).
"""

import os
import sys

try:
    from ._turnwave import *  # noqa: F401,F403
    from ._turnwave import __doc__ as _core_doc  # noqa: F401
except ImportError:
    _dir = os.environ.get("TURNWAVE_MODULE_DIR")
    if not _dir:
        raise
    sys.path.insert(0, _dir)
    from _turnwave import *  # noqa: F401,F403

__all__ = [
    "TurnSpec",
    "in_envelope",
    "d_min",
    "d_max",
    "point_timing",
    "classify_region",
    "encounter_interval",
    "monte_carlo_check",
    "analyze_file",
    "InfeasibleError",
    "ParseError",
]

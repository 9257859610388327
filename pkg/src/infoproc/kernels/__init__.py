"""Hot kernels with a compiled (Cython) core and a pure numpy fallback.

The compiled module is optional: if the extension was not built, the pure
implementations are used instead. Both expose the same three functions:

    step_states(states, rule, n_cells)   synchronous ring update, packed states
    basin_masses(rule, n_cells)          attractor states and their masses
    best_subset(codes, classes, n)       exhaustive most-informative subset

``IMPLEMENTATION`` records which backend was selected at import time.
"""

from __future__ import annotations

try:
    from infoproc.kernels import _speedups as _impl

    IMPLEMENTATION = "compiled"
except ImportError:  # pragma: no cover - depends on build environment
    from infoproc.kernels import _pure as _impl

    IMPLEMENTATION = "pure"

from infoproc.kernels import _pure as pure

step_states = _impl.step_states
basin_masses = _impl.basin_masses
best_subset = _impl.best_subset

__all__ = [
    "IMPLEMENTATION",
    "step_states",
    "basin_masses",
    "best_subset",
    "pure",
]

"""Kernel backend selection: numba-compiled or pure-Python/numpy.

The SAGSIM_BACKEND environment variable picks the path:

  unset    -> "numba" when numba imports, else "numpy"
  "numba"  -> force the @njit-compiled kernels (error if numba is missing)
  "numpy"  -> force the uncompiled fallback

Both backends execute the same kernel source (see _kernels), so results are
bit-identical; only speed differs. bench/bench_backends.py measures the gap.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Callable

from . import _kernels
from .errors import ConfigError

ENV_VAR = "SAGSIM_BACKEND"
BACKENDS = ("numba", "numpy")


@dataclass(frozen=True)
class KernelSet:
    name: str
    solve_optimal: Callable
    solve_greedy: Callable
    solve_random: Callable


def _numba_kernels() -> KernelSet:
    from numba import njit

    jit = njit(cache=True)
    return KernelSet(
        name="numba",
        solve_optimal=jit(_kernels.solve_optimal),
        solve_greedy=jit(_kernels.solve_greedy),
        solve_random=jit(_kernels.solve_random),
    )


def load_kernels(name: str) -> KernelSet:
    """Build a kernel set for an explicit backend name."""
    if name == "numpy":
        return KernelSet(
            name="numpy",
            solve_optimal=_kernels.solve_optimal,
            solve_greedy=_kernels.solve_greedy,
            solve_random=_kernels.solve_random,
        )
    if name == "numba":
        return _numba_kernels()
    raise ConfigError(f"backend {name!r} unknown; supported: {BACKENDS}")


_active: KernelSet | None = None


def active_kernels() -> KernelSet:
    """Kernel set selected by SAGSIM_BACKEND, resolved once per process."""
    global _active
    if _active is None:
        requested = os.environ.get(ENV_VAR, "").strip().lower()
        if requested == "":
            try:
                _active = _numba_kernels()
            except ImportError:
                _active = load_kernels("numpy")
        else:
            _active = load_kernels(requested)
    return _active


def active_backend() -> str:
    return active_kernels().name

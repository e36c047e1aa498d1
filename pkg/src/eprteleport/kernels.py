"""Backend dispatch for the hot outcome kernels.

The compiled extension (eprteleport._core, Cython) is used when it imported
successfully and n_points is a power of two (its FFT is radix-2); otherwise
the numpy implementation runs.  EPRTELEPORT_BACKEND=auto|python|cython
overrides the choice.  Both backends implement the same contract and agree
to floating-point accuracy; a given backend is bitwise deterministic.
"""

import os

from . import _kernels_py

try:
    from . import _core

    HAVE_EXT = True
except ImportError:  # build without Cython / compiler
    _core = None
    HAVE_EXT = False


def _is_pow2(n: int) -> bool:
    return n >= 2 and (n & (n - 1)) == 0


def active_backend(n_points: int) -> str:
    """Backend that will run for a grid of this size."""
    mode = os.environ.get("EPRTELEPORT_BACKEND", "auto").lower()
    if mode not in ("auto", "python", "cython"):
        raise ValueError(f"EPRTELEPORT_BACKEND must be auto|python|cython, got {mode!r}")
    if mode == "python":
        return "python"
    if mode == "cython":
        if not HAVE_EXT:
            raise RuntimeError("EPRTELEPORT_BACKEND=cython but the extension is not built")
        if not _is_pow2(n_points):
            raise ValueError("cython backend requires power-of-two n_points")
        return "cython"
    return "cython" if (HAVE_EXT and _is_pow2(n_points)) else "python"


def density_reductions(F2, f3, shift, backend=None):
    backend = backend or active_backend(F2.shape[0])
    mod = _core if backend == "cython" else _kernels_py
    return mod.density_reductions(F2, f3, shift)


def outcome_reductions(
    F2, f3, shift, fin_conj, vlo_conj, vhi_conj, w_lo, w_hi, w_x, phase, backend=None
):
    backend = backend or active_backend(F2.shape[0])
    mod = _core if backend == "cython" else _kernels_py
    return mod.outcome_reductions(
        F2, f3, shift, fin_conj, vlo_conj, vhi_conj, w_lo, w_hi, w_x, phase
    )

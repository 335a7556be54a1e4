"""Kernel dispatch: compiled extension when importable, numpy fallback
otherwise. Set SCARFCS_NO_EXT=1 before import to force the fallback."""

import os

import numpy as np

if os.environ.get("SCARFCS_NO_EXT"):
    from . import _kernels_py as _impl

    BACKEND = "python"
else:
    try:
        from . import _ckernels as _impl

        BACKEND = "compiled"
    except ImportError:
        from . import _kernels_py as _impl

        BACKEND = "python"


def backend():
    """Name of the active backend: 'compiled' or 'python'."""
    return BACKEND


def jacobi_table(n_max, a, b, x):
    """Values P_k^(a,b)(x), rows k = 0..n_max, one column per x."""
    x = np.atleast_1d(np.ascontiguousarray(x, dtype=np.float64))
    out = np.empty((int(n_max) + 1, x.shape[0]), dtype=np.float64)
    _impl.jacobi_table(int(n_max), float(a), float(b), x, out)
    return out


def carpet_densities(coeff, energies, psi, times):
    """|sum_n c_n exp(-i E_n t) psi_n(x)|^2 on the (t, x) product grid."""
    coeff = np.ascontiguousarray(coeff, dtype=np.complex128)
    energies = np.ascontiguousarray(energies, dtype=np.float64)
    psi = np.ascontiguousarray(psi, dtype=np.float64)
    times = np.atleast_1d(np.ascontiguousarray(times, dtype=np.float64))
    out = np.empty((times.shape[0], psi.shape[1]), dtype=np.float64)
    _impl.carpet_densities(coeff, energies, psi, times, out)
    return out

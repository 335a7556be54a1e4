"""Pure-numpy fallbacks for the compiled kernels.

Kept in lockstep with _ckernels.pyx: identical recurrence coefficients
and an n-ascending accumulation order, so repeated calls are
deterministic and the two backends agree to floating-point noise.
"""

import numpy as np


def jacobi_table(n_max, a, b, x, out):
    apb = a + b
    out[0] = 1.0
    if n_max == 0:
        return
    out[1] = 0.5 * (a - b) + 0.5 * (apb + 2.0) * x
    for n in range(2, n_max + 1):
        tn = 2.0 * n + apb
        c1 = 2.0 * n * (n + apb) * (tn - 2.0)
        c2 = (tn - 1.0) * (a * a - b * b)
        c3 = (tn - 1.0) * tn * (tn - 2.0)
        c4 = 2.0 * (n + a - 1.0) * (n + b - 1.0) * tn
        out[n] = ((c2 + c3 * x) * out[n - 1] - c4 * out[n - 2]) / c1


def carpet_densities(coeff, energies, psi, times, out):
    rot = coeff[None, :] * np.exp(-1j * np.outer(times, energies))
    acc = np.zeros((times.shape[0], psi.shape[1]), dtype=np.complex128)
    for n in range(psi.shape[0]):
        acc += rot[:, n, None] * psi[n][None, :]
    np.square(acc.real, out=out)
    out += acc.imag * acc.imag

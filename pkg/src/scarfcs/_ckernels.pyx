# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops: Jacobi recurrence tables and carpet accumulation.

Must stay in lockstep with _kernels_py (same recurrence coefficients,
same n-ascending accumulation) so either backend is deterministic on
its own and the two agree to floating-point noise.
"""

from libc.math cimport cos, sin
from libc.stdlib cimport free, malloc


def jacobi_table(int n_max, double a, double b, const double[::1] x,
                 double[:, ::1] out):
    """Fill out[k, j] = P_k^(a,b)(x[j]) for k = 0..n_max."""
    cdef Py_ssize_t m = x.shape[0]
    cdef Py_ssize_t j, n
    cdef double apb = a + b
    cdef double tn, c1, c2, c3, c4

    for j in range(m):
        out[0, j] = 1.0
    if n_max == 0:
        return
    for j in range(m):
        out[1, j] = 0.5 * (a - b) + 0.5 * (apb + 2.0) * x[j]
    for n in range(2, n_max + 1):
        tn = 2.0 * n + apb
        c1 = 2.0 * n * (n + apb) * (tn - 2.0)
        c2 = (tn - 1.0) * (a * a - b * b)
        c3 = (tn - 1.0) * tn * (tn - 2.0)
        c4 = 2.0 * (n + a - 1.0) * (n + b - 1.0) * tn
        for j in range(m):
            out[n, j] = ((c2 + c3 * x[j]) * out[n - 1, j]
                         - c4 * out[n - 2, j]) / c1


def carpet_densities(const double complex[::1] coeff,
                     const double[::1] energies,
                     const double[:, ::1] psi, const double[::1] times,
                     double[:, ::1] out):
    """out[i, j] = |sum_n coeff[n] exp(-i E_n t_i) psi[n, j]|^2."""
    cdef Py_ssize_t nt = times.shape[0]
    cdef Py_ssize_t ns = psi.shape[0]
    cdef Py_ssize_t nx = psi.shape[1]
    cdef Py_ssize_t i, j, n
    cdef double t, ph, cr, ci, ar, ai, p
    cdef double *rot_r = <double *> malloc(ns * sizeof(double))
    cdef double *rot_i = <double *> malloc(ns * sizeof(double))
    if rot_r == NULL or rot_i == NULL:
        free(rot_r)
        free(rot_i)
        raise MemoryError()
    try:
        for i in range(nt):
            t = times[i]
            for n in range(ns):
                ph = -energies[n] * t
                cr = cos(ph)
                ci = sin(ph)
                rot_r[n] = coeff[n].real * cr - coeff[n].imag * ci
                rot_i[n] = coeff[n].real * ci + coeff[n].imag * cr
            for j in range(nx):
                ar = 0.0
                ai = 0.0
                for n in range(ns):
                    p = psi[n, j]
                    ar += rot_r[n] * p
                    ai += rot_i[n] * p
                out[i, j] = ar * ar + ai * ai
    finally:
        free(rot_r)
        free(rot_i)

# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels.

Semantics match ``_kernels_py`` exactly; see its docstrings.  These loops
exist because the fixed-point solver evaluates the metric at a handful of
knots thousands of times per solve, where array-dispatch overhead dominates
the actual arithmetic.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport exp

cnp.import_array()


def local_diag_metric_batch(data, probes, double sigma_sq,
                            double variance_floor, bint want_jacobian):
    data_arr = np.ascontiguousarray(data, dtype=np.float64)
    probes_arr = np.ascontiguousarray(np.atleast_2d(probes), dtype=np.float64)

    cdef double[:, ::1] dat = data_arr
    cdef double[:, ::1] pro = probes_arr
    cdef Py_ssize_t n_data = dat.shape[0]
    cdef Py_ssize_t dim = dat.shape[1]
    cdef Py_ssize_t n_pro = pro.shape[0]

    mdiag_arr = np.empty((n_pro, dim))
    jac_arr = np.empty((n_pro, dim, dim)) if want_jacobian else None

    cdef double[:, ::1] mdiag = mdiag_arr
    cdef double[:, :, ::1] jac = jac_arr if want_jacobian else np.empty((1, 1, 1))

    diff_arr = np.empty(dim)
    sec_arr = np.empty(dim)
    first_arr = np.empty(dim)
    grad_arr = np.empty((dim, dim))
    cdef double[::1] diff = diff_arr
    cdef double[::1] second = sec_arr
    cdef double[::1] first = first_arr
    cdef double[:, ::1] grad = grad_arr

    cdef Py_ssize_t p, n, d, e
    cdef double sq, w, wd2, md, g

    for p in range(n_pro):
        for d in range(dim):
            second[d] = 0.0
            first[d] = 0.0
            for e in range(dim):
                grad[d, e] = 0.0

        for n in range(n_data):
            sq = 0.0
            for d in range(dim):
                diff[d] = dat[n, d] - pro[p, d]
                sq += diff[d] * diff[d]
            w = exp(-0.5 * sq / sigma_sq)
            for d in range(dim):
                wd2 = w * diff[d] * diff[d]
                second[d] += wd2
                if want_jacobian:
                    first[d] += w * diff[d]
                    for e in range(dim):
                        grad[d, e] += wd2 * diff[e]

        for d in range(dim):
            md = 1.0 / (second[d] + variance_floor)
            mdiag[p, d] = md
            if want_jacobian:
                for e in range(dim):
                    g = grad[d, e] / sigma_sq
                    if d == e:
                        g -= 2.0 * first[d]
                    jac[p, d, e] = -md * md * g

    return mdiag_arr, jac_arr


def diag_geodesic_rhs_batch(mdiag, jac, velocities):
    mdiag_arr = np.ascontiguousarray(mdiag, dtype=np.float64)
    jac_arr = np.ascontiguousarray(jac, dtype=np.float64)
    vel_arr = np.ascontiguousarray(velocities, dtype=np.float64)

    cdef double[:, ::1] m = mdiag_arr
    cdef double[:, :, ::1] j = jac_arr
    cdef double[:, ::1] v = vel_arr
    cdef Py_ssize_t n_pro = m.shape[0]
    cdef Py_ssize_t dim = m.shape[1]

    out_arr = np.empty((n_pro, dim))
    cdef double[:, ::1] out = out_arr

    cdef Py_ssize_t p, d, e
    cdef double lin, quad

    for p in range(n_pro):
        for d in range(dim):
            lin = 0.0
            quad = 0.0
            for e in range(dim):
                lin += j[p, d, e] * v[p, e]
                quad += v[p, e] * v[p, e] * j[p, e, d]
            out[p, d] = -0.5 * (2.0 * lin * v[p, d] - quad) / m[p, d]

    return out_arr

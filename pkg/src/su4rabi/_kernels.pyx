# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False, cdivision=True
"""Compiled fixed-step RK4 core for the driven four-level problem.

Works entirely in matrix row order; the caller handles level relabeling.
The implicit matrix is diag(d) plus kappa_k * exp(-i w_k t) at (hi_k, lo_k)
and the conjugate below, so one derivative costs a few complex multiplies.
"""

from libc.math cimport cos, sin


cdef inline void _rhs(double t,
                      const double complex* y,
                      double complex* out,
                      const double* diag,
                      Py_ssize_t n_tr,
                      const long long* hi,
                      const long long* lo,
                      const double* kappa,
                      const double* omega) noexcept:
    cdef Py_ssize_t i, k
    cdef double ph, cr, si
    cdef double complex e_minus, e_plus
    for i in range(4):
        out[i] = diag[i] * y[i]
    for k in range(n_tr):
        ph = omega[k] * t
        cr = cos(ph)
        si = sin(ph)
        e_minus = cr - 1j * si
        e_plus = cr + 1j * si
        out[hi[k]] = out[hi[k]] + kappa[k] * e_minus * y[lo[k]]
        out[lo[k]] = out[lo[k]] + kappa[k] * e_plus * y[hi[k]]
    for i in range(4):
        out[i] = out[i] * (-1j)


def rk4_trace(const double[::1] diag,
              const long long[::1] hi,
              const long long[::1] lo,
              const double[::1] kappa,
              const double[::1] omega,
              const double complex[::1] c0,
              double t0,
              double h,
              Py_ssize_t n_steps,
              double[:, ::1] pops,
              double complex[::1] c_out):
    """Integrate n_steps of classic RK4, recording |c|^2 per grid point."""
    cdef Py_ssize_t n_tr = kappa.shape[0]
    cdef Py_ssize_t i, step
    cdef double t
    cdef double complex c[4]
    cdef double complex y[4]
    cdef double complex k1[4]
    cdef double complex k2[4]
    cdef double complex k3[4]
    cdef double complex k4[4]
    cdef const double* dg = &diag[0]
    cdef const long long* hip = &hi[0]
    cdef const long long* lop = &lo[0]
    cdef const double* kp = &kappa[0]
    cdef const double* wp = &omega[0]

    for i in range(4):
        c[i] = c0[i]
        pops[0, i] = c[i].real * c[i].real + c[i].imag * c[i].imag

    for step in range(n_steps):
        t = t0 + step * h
        _rhs(t, c, k1, dg, n_tr, hip, lop, kp, wp)
        for i in range(4):
            y[i] = c[i] + 0.5 * h * k1[i]
        _rhs(t + 0.5 * h, y, k2, dg, n_tr, hip, lop, kp, wp)
        for i in range(4):
            y[i] = c[i] + 0.5 * h * k2[i]
        _rhs(t + 0.5 * h, y, k3, dg, n_tr, hip, lop, kp, wp)
        for i in range(4):
            y[i] = c[i] + h * k3[i]
        _rhs(t + h, y, k4, dg, n_tr, hip, lop, kp, wp)
        for i in range(4):
            c[i] = c[i] + (h / 6.0) * (k1[i] + 2.0 * (k2[i] + k3[i]) + k4[i])
            pops[step + 1, i] = c[i].real * c[i].real + c[i].imag * c[i].imag

    for i in range(4):
        c_out[i] = c[i]

"""Pure NumPy twin of the compiled RK4 core.

Same signature and step arithmetic as ``_kernels.rk4_trace`` so the two
backends are interchangeable; this one is the fallback when the extension
is not built (and the baseline for the benchmark).
"""

from __future__ import annotations

import numpy as np


def _rhs(t, y, diag, hi, lo, kappa, omega):
    out = diag * y
    for k in range(len(kappa)):
        phase = np.exp(-1j * omega[k] * t)
        out[hi[k]] += kappa[k] * phase * y[lo[k]]
        out[lo[k]] += kappa[k] * phase.conjugate() * y[hi[k]]
    return -1j * out


def rk4_trace(diag, hi, lo, kappa, omega, c0, t0, h, n_steps, pops, c_out):
    """Integrate n_steps of classic RK4, recording |c|^2 per grid point."""
    c = np.array(c0, dtype=complex)
    pops[0] = np.abs(c) ** 2
    # a divergent state must overflow to inf/nan silently, like the compiled
    # kernel; the caller detects it with an isfinite check
    with np.errstate(over="ignore", invalid="ignore"):
        for step in range(n_steps):
            t = t0 + step * h
            k1 = _rhs(t, c, diag, hi, lo, kappa, omega)
            k2 = _rhs(t + 0.5 * h, c + 0.5 * h * k1, diag, hi, lo, kappa, omega)
            k3 = _rhs(t + 0.5 * h, c + 0.5 * h * k2, diag, hi, lo, kappa, omega)
            k4 = _rhs(t + h, c + h * k3, diag, hi, lo, kappa, omega)
            c = c + (h / 6.0) * (k1 + 2.0 * (k2 + k3) + k4)
            pops[step + 1] = np.abs(c) ** 2
    c_out[:] = c

"""Time evolution: lab-frame RK4 integration and the exact spectral trace.

The two routes are deliberately independent. ``rk4_solve`` marches the
time-dependent lab-frame equation dC/dt = -i H(t) C with classic fixed-step
RK4 and never touches the rotating frame; ``trace_via_spectral`` evaluates
the closed-form solution from the frame matrix eigensystem. Populations are
frame invariant (the frame transformation is a diagonal unitary), so the two
must agree wherever both apply, which is the backbone cross-check of the
whole package.
"""

from __future__ import annotations

import numpy as np

from ._backend import USING_COMPILED, kernels
from .errors import ConfigurationError, NumericsError
from .frame import RESONANCE_TOL, rotate
from .models import (
    DriveParams,
    ModelConfig,
    PopulationTrace,
    StateVector,
    hamiltonian_t,
    row_of,
    to_level_order,
    to_row_order,
)
from .spectral import jacobi_eigh

__all__ = [
    "USING_COMPILED",
    "rk4_solve",
    "schrodinger_rhs",
    "trace_via_spectral",
]


def schrodinger_rhs(
    model: ModelConfig, drive: DriveParams, t: float, amplitudes: np.ndarray
) -> np.ndarray:
    """-i H(t) c for a level-ordered amplitude vector (any norm).

    Reference implementation used by tests; the integrator backends carry
    their own equivalent inner loop.
    """
    c_rows = to_row_order(np.asarray(amplitudes, dtype=complex))
    return to_level_order(-1j * (hamiltonian_t(model, drive, t) @ c_rows))


def _validate_grid(t_grid: np.ndarray) -> tuple[float, float, int]:
    """Return (t0, h, n_steps) for a uniform strictly increasing grid."""
    if t_grid.ndim != 1 or t_grid.size < 1:
        raise ConfigurationError("time grid must be a non-empty 1-d array")
    if t_grid.size == 1:
        return float(t_grid[0]), 0.0, 0
    spacings = np.diff(t_grid)
    if np.any(spacings <= 0):
        raise ConfigurationError("time grid must be strictly increasing")
    h = float(spacings[0])
    if float(np.abs(spacings - h).max()) > 1e-9 * max(1.0, abs(h)):
        raise ConfigurationError("time grid must be uniform for fixed-step RK4")
    return float(t_grid[0]), h, t_grid.size - 1


def rk4_solve(
    model: ModelConfig, drive: DriveParams, c0: StateVector, t_grid
) -> tuple[PopulationTrace, StateVector]:
    """Fixed-step RK4 march of the lab-frame equation over a uniform grid.

    Records populations at every grid point. Raises NumericsError when the
    state leaves the finite range (the step size was far too coarse for the
    couplings involved).
    """
    drive.validate_for(model)
    t_grid = np.asarray(t_grid, dtype=float)
    t0, h, n_steps = _validate_grid(t_grid)

    transitions = model.sorted_transitions()
    diag = np.ascontiguousarray(to_row_order(model.energies(drive.omega)), dtype=float)
    hi = np.array([row_of(a) for a, _ in transitions], dtype=np.int64)
    lo = np.array([row_of(b) for _, b in transitions], dtype=np.int64)
    kappa = np.array([drive.coupling[tr] for tr in transitions], dtype=float)
    omega = np.array([drive.field_freq[tr] for tr in transitions], dtype=float)

    c_rows = np.ascontiguousarray(to_row_order(c0.amplitudes), dtype=complex)
    pops_rows = np.empty((n_steps + 1, 4), dtype=float)
    c_final_rows = np.empty(4, dtype=complex)
    kernels.rk4_trace(
        diag, hi, lo, kappa, omega, c_rows, t0, h, n_steps, pops_rows, c_final_rows
    )

    if not (np.all(np.isfinite(pops_rows)) and np.all(np.isfinite(c_final_rows.view(float)))):
        raise NumericsError(
            "RK4 state became non-finite; reduce the step size or the couplings"
        )
    trace = PopulationTrace(times=t_grid, populations=pops_rows[:, ::-1].copy())
    final = StateVector(to_level_order(c_final_rows), norm_tol=1e-6)
    return trace, final


def trace_via_spectral(
    model: ModelConfig,
    drive: DriveParams,
    c0: StateVector,
    t_grid,
    allow_nonresonant: bool = False,
) -> PopulationTrace:
    """Exact populations on an arbitrary strictly increasing grid.

    Diagonalizes the rotating-frame matrix once and evaluates the propagator
    in closed form per grid point. The frame matrix is real symmetric for any
    drive, but off resonance its diagonal is nonzero and the caller must opt
    in explicitly; the resonant case is the primary regime for this route.
    """
    drive.validate_for(model)
    fr = rotate(model, drive)
    if not allow_nonresonant and not fr.is_resonant():
        raise ConfigurationError(
            f"drive is off resonance (max detuning {fr.max_detuning():.2e}"
            f" > {RESONANCE_TOL:.0e}); pass allow_nonresonant=True to proceed"
        )
    t_grid = np.asarray(t_grid, dtype=float)
    if t_grid.ndim != 1 or t_grid.size < 1:
        raise ConfigurationError("time grid must be a non-empty 1-d array")

    es = jacobi_eigh(fr.h_tilde)
    t_mat = es.diagonalizer
    weights = t_mat @ to_row_order(c0.amplitudes)
    phases = np.exp(-1j * np.outer(t_grid, es.eigenvalues))
    c_rows = (phases * weights) @ t_mat
    populations = np.abs(c_rows[:, ::-1]) ** 2
    return PopulationTrace(times=t_grid, populations=populations)

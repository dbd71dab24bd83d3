"""Rotating-frame reduction of the driven Hamiltonians.

For every configuration the three field frequencies admit a diagonal frame
generator K with

    K_a - K_b = -w_ab   for each allowed transition (a, b),
    sum_i K_i = 0,

a well-posed linear system because the allowed transitions form a spanning
tree on the four levels. In the frame rotated by ``exp(i K t)`` the
transformed matrix

    H~ = K + exp(-i K t) H(t) exp(i K t)

is time independent, real, and symmetric: the oscillating phases cancel
exactly and each transition keeps its bare coupling. Its diagonal holds the
per-level detunings E_i + K_i, whose pairwise differences along allowed
transitions are the field detunings D_ab = (E_a - E_b) - w_ab. Driving every
transition at resonance (w_ab = E_a - E_b) zeroes the whole diagonal.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import ConfigurationError
from .models import (
    DriveParams,
    ModelConfig,
    Transition,
    hamiltonian_t,
    row_of,
    to_row_order,
)

RESONANCE_TOL = 1e-12


@dataclass(frozen=True)
class RotatingFrame:
    """Frame data for one (model, drive) pair.

    ``K`` and ``diag_detunings`` are level-ordered 4-vectors; ``h_tilde`` is
    the 4x4 real symmetric frame matrix in row order (top level first).
    ``detunings`` maps each allowed transition to D_ab.
    """

    model: ModelConfig
    K: np.ndarray
    h_tilde: np.ndarray
    detunings: dict[Transition, float]
    diag_detunings: np.ndarray

    def max_detuning(self) -> float:
        return max(abs(v) for v in self.detunings.values())

    def is_resonant(self, tol: float = RESONANCE_TOL) -> bool:
        return self.max_detuning() < tol


def frame_generator(model: ModelConfig, drive: DriveParams) -> np.ndarray:
    """Solve for the level-ordered frame generator (K1, K2, K3, K4).

    Raises ConfigurationError when the transition set does not determine the
    generator (the linear system is singular off a spanning tree).
    """
    drive.validate_for(model)
    transitions = model.sorted_transitions()
    a_mat = np.zeros((4, 4))
    rhs = np.zeros(4)
    for row, (a, b) in enumerate(transitions):
        a_mat[row, a - 1] = 1.0
        a_mat[row, b - 1] = -1.0
        rhs[row] = -drive.field_freq[(a, b)]
    a_mat[3, :] = 1.0
    try:
        return np.linalg.solve(a_mat, rhs)
    except np.linalg.LinAlgError as exc:
        raise ConfigurationError(
            f"transition set {sorted(transitions)} is not a spanning tree;"
            " the frame generator is underdetermined"
        ) from exc


def rotate(model: ModelConfig, drive: DriveParams) -> RotatingFrame:
    """Build the time-independent frame matrix and its detunings."""
    k_levels = frame_generator(model, drive)
    energies = model.energies(drive.omega)
    diag_det = energies + k_levels

    h = np.diag(to_row_order(diag_det)).copy()
    for (a, b) in model.sorted_transitions():
        kappa = drive.coupling[(a, b)]
        h[row_of(a), row_of(b)] = kappa
        h[row_of(b), row_of(a)] = kappa

    detunings = {
        (a, b): float((energies[a - 1] - energies[b - 1]) - drive.field_freq[(a, b)])
        for (a, b) in model.sorted_transitions()
    }
    return RotatingFrame(
        model=model, K=k_levels, h_tilde=h, detunings=detunings, diag_detunings=diag_det
    )


def transform_at(
    model: ModelConfig, drive: DriveParams, t: float, k_levels: np.ndarray
) -> np.ndarray:
    """Evaluate K + exp(-iKt) H(t) exp(iKt) at one instant, no cancellation
    assumed. Used to certify time independence of the constructed frame."""
    k_rows = to_row_order(np.asarray(k_levels, dtype=float))
    phase = np.exp(-1j * k_rows * t)
    h_lab = hamiltonian_t(model, drive, t)
    return np.diag(k_rows).astype(complex) + phase[:, None] * h_lab * phase.conj()[None, :]


def check_time_independence(
    model: ModelConfig,
    drive: DriveParams,
    sample_times: Iterable[float],
    k_levels: np.ndarray | None = None,
) -> float:
    """Max elementwise drift of the transformed matrix across sample times.

    With the solved generator the drift is rounding noise; passing a wrong
    ``k_levels`` leaves oscillating phases and a visible residual.
    """
    times = list(sample_times)
    if len(times) < 2:
        raise ConfigurationError("need at least two sample times")
    if k_levels is None:
        k_levels = frame_generator(model, drive)
    reference = transform_at(model, drive, times[0], k_levels)
    drift = 0.0
    for t in times[1:]:
        drift = max(drift, float(np.abs(transform_at(model, drive, t, k_levels) - reference).max()))
    return drift


def resonant_drive(
    model: ModelConfig,
    omega: tuple[float, float, float],
    coupling: dict[Transition, float],
) -> DriveParams:
    """Drive with every field frequency set to its level gap E_a - E_b."""
    energies = model.energies(omega)
    field_freq = {
        (a, b): float(energies[a - 1] - energies[b - 1]) for (a, b) in model.allowed
    }
    return DriveParams(omega=tuple(omega), field_freq=field_freq, coupling=dict(coupling))

"""Pure NumPy measurement kernels (reference implementation).

Computes the per-axis joint outcome probabilities of same-Pauli measurements
on both qubits under arbitrary early/late observable frames.  Outcome order
per axis is ``(up,up), (up,down), (down,up), (down,down)``.

The compiled twin in ``_fast.pyx`` implements the same contracts; results are
identical up to floating-point round-off.
"""

from __future__ import annotations

import numpy as np

_SQ2 = 1.0 / np.sqrt(2.0)

# AXIS_VECS[i, s] = eigenvector s (0=up, 1=down) of the axis-(i+1) Pauli.
AXIS_VECS = np.array(
    [
        [[_SQ2, _SQ2], [_SQ2, -_SQ2]],          # X
        [[_SQ2, _SQ2 * 1j], [_SQ2, -_SQ2 * 1j]],  # Y
        [[1.0, 0.0], [0.0, 1.0]],               # Z
    ],
    dtype=complex,
)
AXIS_VECS.setflags(write=False)

PAIRS = ((0, 0), (0, 1), (1, 0), (1, 1))


def joint_probs_common(rho: np.ndarray, f_early: np.ndarray, f_late: np.ndarray) -> np.ndarray:
    """Joint outcome probabilities for a two-qubit state, shape (3, 4).

    ``p[i, (a,b)] = <phi_ab| rho |phi_ab>`` with
    ``|phi_ab> = (F_early |xi_i^a>) (x) (F_late |xi_i^b>)``.
    """
    early = AXIS_VECS @ f_early.T  # (3, 2, 2): frame-rotated eigenvectors
    late = AXIS_VECS @ f_late.T
    out = np.empty((3, 4))
    for i in range(3):
        for col, (a, b) in enumerate(PAIRS):
            phi = np.kron(early[i, a], late[i, b])
            out[i, col] = (phi.conj() @ rho @ phi).real
    return out


def joint_probs_causal(
    u: np.ndarray, rho_early: np.ndarray, f_early: np.ndarray, f_late: np.ndarray
) -> np.ndarray:
    """Joint outcome probabilities for a direct cause, shape (3, 4).

    ``p[i, (a,b)] = <a|rho_early|a> |<b| U |a>|^2`` with ``|a> = F_early |xi_i^a>``
    and ``|b> = F_late |xi_i^b>`` (first measurement collapses the qubit).
    """
    early = AXIS_VECS @ f_early.T
    late = AXIS_VECS @ f_late.T
    out = np.empty((3, 4))
    for i in range(3):
        for col, (a, b) in enumerate(PAIRS):
            va = early[i, a]
            wb = late[i, b]
            p_first = (va.conj() @ rho_early @ va).real
            amp = wb.conj() @ u @ va
            out[i, col] = p_first * (amp.real**2 + amp.imag**2)
    return out

"""Brute-force reference computation of the statistic.

Everything here is recomputed from first principles: measurement projectors
come from an eigendecomposition of the Pauli matrices (not from the closed
formulas), joints from explicit projector sandwiches and collapse, so this
module is an independent check on ``stats`` and its closed forms.  It must
not import ``stats``'s computational paths.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .. import qcore


@lru_cache(maxsize=None)
def _eigenprojectors(axis: int) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """(P_up, P_down, v_up, v_down) of sigma_axis via numpy's eigendecomposition."""
    evals, evecs = np.linalg.eigh(np.asarray(qcore.pauli(axis)))
    order = np.argsort(-evals)  # +1 eigenvector first
    v_up = evecs[:, order[0]].copy()
    v_down = evecs[:, order[1]].copy()
    return np.outer(v_up, v_up.conj()), np.outer(v_down, v_down.conj()), v_up, v_down


def brute_joint(scenario, frames) -> np.ndarray:
    """Per-axis joint outcome probabilities, shape (3, 4), from first principles."""
    from ..stats import CommonCause, DirectCause  # type definitions only

    fe, fl = frames.early, frames.late
    out = np.empty((3, 4))
    for i, axis in enumerate((1, 2, 3)):
        proj_up, proj_down, v_up, v_down = _eigenprojectors(axis)
        if isinstance(scenario, CommonCause):
            rho = scenario.rho
            col = 0
            for pa in (proj_up, proj_down):
                ma = fe @ pa @ fe.conj().T
                for pb in (proj_up, proj_down):
                    mb = fl @ pb @ fl.conj().T
                    out[i, col] = np.trace(np.kron(ma, mb) @ rho).real
                    col += 1
        elif isinstance(scenario, DirectCause):
            rho_e = scenario.early_state
            if rho_e is None:
                rho_e = qcore.MAXIMALLY_MIXED_2
            col = 0
            for va in (fe @ v_up, fe @ v_down):
                p_first = (va.conj() @ rho_e @ va).real
                collapsed = scenario.u @ va  # state after the channel
                for vb in (fl @ v_up, fl @ v_down):
                    out[i, col] = p_first * abs(vb.conj() @ collapsed) ** 2
                    col += 1
        else:
            raise TypeError(f"not a scenario: {scenario!r}")
    return out


def brute_stat(scenario, frames=None):
    """Reference statistic of a scenario under frames (identity by default)."""
    from ..stats import FramePair, StatP

    if frames is None:
        frames = FramePair.identity()
    probs = brute_joint(scenario, frames)
    signs = np.array([1.0, -1.0, -1.0, 1.0])
    return StatP.from_array(probs @ signs)

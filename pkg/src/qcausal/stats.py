"""The correlation statistic P: exact Born-rule evaluation, shot sampling,
and the closed forms that the oracle certifies independently.

``P = (C11, C22, C33)`` where ``C_ii = p(k=m|ii) - p(k!=m|ii)`` for same-Pauli
measurements on the early and late qubit.  Frames conjugate the measured
observables: measuring under frame ``F`` means measuring ``F sigma_i F†``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels, qcore
from .qcore import (
    MAXIMALLY_MIXED_2,
    BellWeights,
    CanonicalUnitary,
    GeneralUnitaryForm,
    LocalRotation,
)

#: Outcome order of every per-axis joint distribution.
OUTCOME_PAIRS = kernels.PAIRS  # (up,up), (up,down), (down,up), (down,down)

#: Signs of the outcome pairs in C_ii = sum_ab sign(a,b) p(a,b).
_PAIR_SIGNS = np.array([1.0, -1.0, -1.0, 1.0])


@dataclass(frozen=True)
class StatP:
    """The statistic ``(C11, C22, C33)``; ``plane_const`` is its l(b) plane constant."""

    c11: float
    c22: float
    c33: float

    def __post_init__(self):
        for entry in (self.c11, self.c22, self.c33):
            if not (-1.0 - 1e-9 <= entry <= 1.0 + 1e-9):
                raise ValueError(f"statistic entries must lie in [-1, 1], got {entry!r}")

    @classmethod
    def from_array(cls, a) -> "StatP":
        a = np.asarray(a, dtype=float)
        return cls(float(a[0]), float(a[1]), float(a[2]))

    def as_array(self) -> np.ndarray:
        return np.array([self.c11, self.c22, self.c33])

    @property
    def plane_const(self) -> float:
        return self.c11 + self.c22 + self.c33

    def allclose(self, other: "StatP", tol: float) -> bool:
        """Entrywise closeness within ``tol`` (the flowchart's equality test)."""
        return (
            abs(self.c11 - other.c11) <= tol
            and abs(self.c22 - other.c22) <= tol
            and abs(self.c33 - other.c33) <= tol
        )


@dataclass(frozen=True)
class FramePair:
    """Cumulative observable frames for the early and late measurement."""

    early: np.ndarray
    late: np.ndarray

    @classmethod
    def identity(cls) -> "FramePair":
        eye = np.eye(2, dtype=complex)
        return cls(eye, eye.copy())

    def compose_same(self, v: np.ndarray) -> "FramePair":
        """Apply one rotation to both observables (right-composition)."""
        return FramePair(self.early @ v, self.late @ v)

    def compose(self, v_early: np.ndarray, v_late: np.ndarray) -> "FramePair":
        """Apply distinct rotations to the early/late observables."""
        return FramePair(self.early @ v_early, self.late @ v_late)


@dataclass(frozen=True)
class JointDistribution:
    """Per-axis joint outcome probabilities, shape (3, 4) in OUTCOME_PAIRS order."""

    probs: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.probs, dtype=float)
        if p.shape != (3, 4):
            raise ValueError(f"joint distribution must have shape (3, 4), got {p.shape}")
        if p.min() < -1e-12:
            raise ValueError(f"negative joint probability: {p.min()!r}")
        sums = p.sum(axis=1)
        if np.max(np.abs(sums - 1.0)) > 1e-12:
            raise ValueError(f"per-axis probabilities must sum to 1, got {sums!r}")
        object.__setattr__(self, "probs", p)

    def axis(self, i: int) -> np.ndarray:
        """The four outcome probabilities of measurement axis i in 1..3."""
        return self.probs[i - 1]


@dataclass(frozen=True)
class CommonCause:
    """Scenario: a joint two-qubit state correlates both measurements."""

    rho: np.ndarray


@dataclass(frozen=True)
class DirectCause:
    """Scenario: a unitary channel connects the early post-measurement state
    to the late measurement.  The statistic does not depend on ``early_state``;
    the default is the maximally mixed qubit."""

    u: np.ndarray
    early_state: np.ndarray | None = None


Scenario = CommonCause | DirectCause


def _clamped(probs: np.ndarray) -> np.ndarray:
    # Born-rule round-off can produce ~-1e-17 entries; clamp before wrapping.
    probs = np.clip(probs, 0.0, 1.0)
    probs /= probs.sum(axis=1, keepdims=True)
    return probs


def joint_common(
    rho: np.ndarray, frames: FramePair, *, validate: bool = True
) -> JointDistribution:
    """Joint distribution of same-axis outcomes for a common cause under frames."""
    if validate:
        if not qcore.is_density(rho, 1e-9):
            raise ValueError("rho is not a valid density matrix")
        if not (qcore.is_unitary(frames.early, 1e-9) and qcore.is_unitary(frames.late, 1e-9)):
            raise ValueError("frames must be unitary")
    probs = kernels.joint_probs_common(rho, frames.early, frames.late)
    return JointDistribution(_clamped(probs))


def joint_causal(
    u: np.ndarray,
    early_state: np.ndarray | None,
    frames: FramePair,
    *,
    validate: bool = True,
) -> JointDistribution:
    """Joint distribution for a direct cause: first outcome from ``early_state``,
    collapse, evolve through ``u``, then the late measurement."""
    if early_state is None:
        early_state = MAXIMALLY_MIXED_2
    if validate:
        if not qcore.is_unitary(u, 1e-9):
            raise ValueError("u is not unitary")
        if not qcore.is_density(early_state, 1e-9):
            raise ValueError("early_state is not a valid density matrix")
        if not (qcore.is_unitary(frames.early, 1e-9) and qcore.is_unitary(frames.late, 1e-9)):
            raise ValueError("frames must be unitary")
    probs = kernels.joint_probs_causal(u, early_state, frames.early, frames.late)
    return JointDistribution(_clamped(probs))


def joint_of(scenario: Scenario, frames: FramePair, *, validate: bool = True) -> JointDistribution:
    """Dispatch ``joint_common``/``joint_causal`` on a scenario value."""
    if isinstance(scenario, CommonCause):
        return joint_common(scenario.rho, frames, validate=validate)
    if isinstance(scenario, DirectCause):
        return joint_causal(scenario.u, scenario.early_state, frames, validate=validate)
    raise TypeError(f"not a scenario: {scenario!r}")


def stat_from_joint(joint: JointDistribution) -> StatP:
    """``C_ii = p(k=m|ii) - p(k!=m|ii)`` per axis."""
    return StatP.from_array(joint.probs @ _PAIR_SIGNS)


def stat_exact(scenario: Scenario, frames: FramePair | None = None) -> StatP:
    """Exact statistic of a scenario (identity frames by default)."""
    if frames is None:
        frames = FramePair.identity()
    return stat_from_joint(joint_of(scenario, frames))


def sample_axis_counts(probs: np.ndarray, shots: int, rng: np.random.Generator) -> np.ndarray:
    """Multinomial outcome-pair counts for one axis."""
    if shots < 1:
        raise ValueError(f"shots must be >= 1, got {shots!r}")
    p = np.clip(np.asarray(probs, dtype=float), 0.0, None)
    return rng.multinomial(shots, p / p.sum())


def sample_stat(joint: JointDistribution, shots_per_axis: int, rng: np.random.Generator) -> StatP:
    """Estimate the statistic from ``shots_per_axis`` sampled outcome pairs per axis."""
    est = np.empty(3)
    for i in range(3):
        counts = sample_axis_counts(joint.probs[i], shots_per_axis, rng)
        est[i] = (counts @ _PAIR_SIGNS) / shots_per_axis
    return StatP.from_array(est)


# ---------------------------------------------------------------------------
# Closed forms.  Each is certified against the brute-force oracle; they share
# no code with the projector-based computation above.
# ---------------------------------------------------------------------------


def c33_closed_common(bw: BellWeights, v: LocalRotation) -> float:
    """Closed form of ``C33`` for a pure common cause with ``w4 = 0`` under the
    same-frame rotation ``v``; depends on psi and chi only through their sum."""
    if abs(bw.w[3]) > 1e-12:
        raise ValueError("c33_closed_common requires w4 = 0")
    phi, sum_pc = v.phi, v.chi + v.psi
    t1 = 0.5j * math.sin(2 * phi) ** 2 * math.sin(2 * sum_pc)
    t2 = 0.5j * math.sin(4 * phi) * math.sin(sum_pc)
    t3 = -0.5 * math.sin(4 * phi) * math.cos(sum_pc)
    t4 = math.sin(2 * phi) ** 2 * math.sin(sum_pc) ** 2
    t5 = math.sin(2 * phi) ** 2 * math.cos(sum_pc) ** 2
    m = np.array(
        [
            [1.0 - t4, -t1, -t2, 0.0],
            [t1, 1.0 - t5, t3, 0.0],
            [t2, t3, 0.5 * (1.0 - math.cos(4 * phi)), 0.0],
            [0.0, 0.0, 0.0, 0.0],
        ],
        dtype=complex,
    )
    amps = bw.amplitudes()
    p_same = float((amps.conj() @ m @ amps).real)
    return 2.0 * p_same - 1.0


def causal_coefficients(u: CanonicalUnitary, v: LocalRotation) -> tuple[float, float, float, float]:
    """The coefficients ``(a1, a2, b1, b2)`` of ``V† U V`` as trig functions of
    the parameters of ``u`` and ``v``."""
    cp, sp = math.cos(u.phi0), math.sin(u.phi0)
    g1, g2 = u.gamma1, u.gamma2
    psi, chi, phi = v.psi, v.chi, v.phi
    c2f, s2f = math.cos(2 * phi), math.sin(2 * phi)
    cf2, sf2 = math.cos(phi) ** 2, math.sin(phi) ** 2
    a1 = cp * math.cos(g1)
    a2 = cp * c2f * math.sin(g1) - sp * s2f * math.sin(g2 - psi - chi)
    b1 = (
        sp * cf2 * math.cos(g2 - 2 * psi)
        + sp * sf2 * math.cos(g2 - 2 * chi)
        - cp * s2f * math.sin(chi - psi) * math.sin(g1)
    )
    b2 = (
        -sp * sf2 * math.sin(g2 - 2 * chi)
        + sp * cf2 * math.sin(g2 - 2 * psi)
        + cp * s2f * math.cos(chi - psi) * math.sin(g1)
    )
    return a1, a2, b1, b2


def stat_closed_causal(u: CanonicalUnitary, v: LocalRotation) -> StatP:
    """Closed form of the statistic of a direct cause under same-frame ``v``."""
    a1, a2, b1, b2 = causal_coefficients(u, v)
    return StatP(
        2.0 * (a1 * a1 + b2 * b2) - 1.0,
        2.0 * (a1 * a1 + b1 * b1) - 1.0,
        2.0 * (a1 * a1 + a2 * a2) - 1.0,
    )


def stat_general_unitary(g: GeneralUnitaryForm) -> StatP:
    """Closed form of the statistic of a general-form unitary.

    The second entry uses ``2(c+d) - 1``; the ``+1`` variant fails the identity
    test ``P(sigma_0) = (1,1,1)`` and the oracle (see the sign-defect claim).
    """
    c = 0.5 + g.a1 * g.a2 * math.sin(g.alpha) + 0.5 * math.cos(g.alpha) * (g.a1**2 - g.a2**2)
    d = g.b1 * g.b2 * math.sin(g.alpha) + 0.5 * math.cos(g.alpha) * (g.b1**2 - g.b2**2)
    return StatP(
        2.0 * (c - d) - 1.0,
        2.0 * (c + d) - 1.0,
        2.0 * (g.a1**2 + g.a2**2) - 1.0,
    )

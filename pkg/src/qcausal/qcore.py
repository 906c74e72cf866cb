"""Quantum primitives for the two-qubit causal discrimination problem.

Matrices are plain ``numpy`` arrays of ``complex128``: 2x2 for single-qubit
operators, 4x4 for two-qubit operators, with the computational basis ordered
``|00>, |01>, |10>, |11>``.  Everything here is an immutable value: module
constants are write-protected and the parameter dataclasses are frozen.

Conventions (pinned by the correlation-vector vertices, see tests):

* Pauli axes: ``sigma_1 = X``, ``sigma_2 = Y``, ``sigma_3 = Z``.
* Bell labels: ``b1 = Phi+``, ``b2 = Phi-``, ``b3 = Psi+``, ``b4 = Psi-``,
  the unique assignment whose correlation vectors are ``(1,-1,1)``,
  ``(-1,1,1)``, ``(1,1,-1)``, ``(-1,-1,-1)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

DEFAULT_TOL = 1e-12

_SQ2 = 1.0 / math.sqrt(2.0)


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


_PAULIS = (
    _frozen(np.eye(2, dtype=complex)),
    _frozen(np.array([[0, 1], [1, 0]], dtype=complex)),
    _frozen(np.array([[0, -1j], [1j, 0]], dtype=complex)),
    _frozen(np.array([[1, 0], [0, -1]], dtype=complex)),
)

_BELL_KETS = (
    _frozen(_SQ2 * np.array([1, 0, 0, 1], dtype=complex)),   # b1 = Phi+
    _frozen(_SQ2 * np.array([1, 0, 0, -1], dtype=complex)),  # b2 = Phi-
    _frozen(_SQ2 * np.array([0, 1, 1, 0], dtype=complex)),   # b3 = Psi+
    _frozen(_SQ2 * np.array([0, 1, -1, 0], dtype=complex)),  # b4 = Psi-
)

_BELL_MATRIX = _frozen(np.column_stack(_BELL_KETS))

MAXIMALLY_MIXED_2 = _frozen(np.eye(2, dtype=complex) / 2.0)


def pauli(i: int) -> np.ndarray:
    """Return sigma_i (read-only); i=0 is the identity, 1..3 the measurement axes."""
    if i not in (0, 1, 2, 3):
        raise ValueError(f"Pauli index must be 0..3, got {i!r}")
    return _PAULIS[i]


def bell_basis() -> tuple[tuple[np.ndarray, ...], np.ndarray]:
    """Return the four Bell kets ``(b1, b2, b3, b4)`` and the unitary ``B`` with them as columns."""
    return _BELL_KETS, _BELL_MATRIX


def bell_ket(j: int) -> np.ndarray:
    """Return |b_j> for j in 1..4."""
    if j not in (1, 2, 3, 4):
        raise ValueError(f"Bell label must be 1..4, got {j!r}")
    return _BELL_KETS[j - 1]


def tensor(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product (first factor acts on the early qubit)."""
    return np.kron(a, b)


def dagger(m: np.ndarray) -> np.ndarray:
    return m.conj().T


def is_unitary(m: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    """True iff ``m m† = I`` entrywise within ``tol`` and all entries are finite."""
    m = np.asarray(m)
    if not np.all(np.isfinite(m.view(float))):
        return False
    eye = np.eye(m.shape[0])
    return bool(np.max(np.abs(m @ m.conj().T - eye)) <= tol)


def is_density(m: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    """True iff ``m`` is Hermitian, unit-trace and PSD, each within ``tol``."""
    m = np.asarray(m)
    if not np.all(np.isfinite(m.view(float))):
        return False
    if np.max(np.abs(m - m.conj().T)) > tol:
        return False
    if abs(m.trace() - 1.0) > tol:
        return False
    eigs = np.linalg.eigvalsh(m)
    return bool(eigs.min() >= -tol)


def _check_angle(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise ValueError(f"{name} must be finite, got {value!r}")
    return value


@dataclass(frozen=True)
class SpectralProjectors:
    """Eigenprojectors of one Pauli axis and the joint same-outcome projectors.

    ``xi_up``/``xi_down`` are the rank-1 projectors onto the +1/-1 eigenspaces
    of ``sigma_axis``; ``xi_uu = xi_up (x) xi_up`` and ``xi_dd = xi_down (x)
    xi_down``, whose sum is the +1 spectral projector of
    ``sigma_axis (x) sigma_axis``.
    """

    axis: int
    xi_up: np.ndarray
    xi_down: np.ndarray
    xi_uu: np.ndarray
    xi_dd: np.ndarray


def spectral_projectors(axis: int) -> SpectralProjectors:
    """Build the spectral projectors for measurement axis 1..3."""
    if axis not in (1, 2, 3):
        raise ValueError(f"measurement axis must be 1..3, got {axis!r}")
    s = pauli(axis)
    eye = np.eye(2, dtype=complex)
    up = (eye + s) / 2.0
    down = (eye - s) / 2.0
    return SpectralProjectors(
        axis=axis,
        xi_up=_frozen(up),
        xi_down=_frozen(down),
        xi_uu=_frozen(np.kron(up, up)),
        xi_dd=_frozen(np.kron(down, down)),
    )


@dataclass(frozen=True)
class CanonicalUnitary:
    """Direct-cause unitary in the canonical parameterization.

    The realized matrix is
    ``e^{i theta/2} [[e^{i g1} cos(phi0), e^{i g2} sin(phi0)],
    [-e^{-i g2} sin(phi0), e^{-i g1} cos(phi0)]]``.

    ``labels`` records the discrete branch ``(n1, n2, k1, k2)`` when the
    instance was enumerated from a Pauli-vertex mixture; it is metadata only.
    """

    phi0: float
    gamma1: float
    gamma2: float
    theta: float = 0.0
    labels: tuple[int, int, int, int] | None = None

    def __post_init__(self):
        for name in ("phi0", "gamma1", "gamma2", "theta"):
            _check_angle(name, getattr(self, name))

    @property
    def c1(self) -> float:
        return math.cos(self.phi0) ** 2

    @property
    def c2(self) -> float:
        return self.c1 * math.cos(2.0 * self.gamma1)

    @property
    def d1(self) -> float:
        return math.sin(self.phi0) ** 2

    @property
    def d2(self) -> float:
        return self.d1 * math.cos(2.0 * self.gamma2)

    def pauli_mixture(self) -> np.ndarray:
        """Vertex weights (p0, p1, p2, p3) of the realized correlation vector."""
        c1, c2, d1, d2 = self.c1, self.c2, self.d1, self.d2
        return np.array([(c1 + c2) / 2, (d1 - d2) / 2, (d1 + d2) / 2, (c1 - c2) / 2])


def realize_canonical(u: CanonicalUnitary) -> np.ndarray:
    """Matrix of a canonical unitary, including its global phase."""
    c, s = math.cos(u.phi0), math.sin(u.phi0)
    e1 = complex(math.cos(u.gamma1), math.sin(u.gamma1))
    e2 = complex(math.cos(u.gamma2), math.sin(u.gamma2))
    m = np.array(
        [[e1 * c, e2 * s], [-e2.conjugate() * s, e1.conjugate() * c]], dtype=complex
    )
    if u.theta != 0.0:
        m *= complex(math.cos(u.theta / 2), math.sin(u.theta / 2))
    return m


@dataclass(frozen=True)
class LocalRotation:
    """Observable-frame rotation ``V(psi, chi, phi)``.

    The realized matrix is
    ``[[e^{i psi} cos(phi), e^{i chi} sin(phi)],
    [-e^{-i chi} sin(phi), e^{-i psi} cos(phi)]]`` (determinant 1).
    """

    psi: float
    chi: float
    phi: float

    def __post_init__(self):
        for name in ("psi", "chi", "phi"):
            _check_angle(name, getattr(self, name))


IDENTITY_ROTATION = LocalRotation(0.0, 0.0, 0.0)


def realize_rotation(v: LocalRotation) -> np.ndarray:
    """Matrix of a frame rotation."""
    c, s = math.cos(v.phi), math.sin(v.phi)
    ep = complex(math.cos(v.psi), math.sin(v.psi))
    ec = complex(math.cos(v.chi), math.sin(v.chi))
    return np.array(
        [[ep * c, ec * s], [-ec.conjugate() * s, ep.conjugate() * c]], dtype=complex
    )


@dataclass(frozen=True)
class BellWeights:
    """Bell-basis amplitudes ``(w_j, theta_j)`` of a pure common cause.

    ``sum w_j^2 = 1``; ``theta_1`` is a global phase and must be 0.
    """

    w: tuple[float, float, float, float]
    theta: tuple[float, float, float, float] = (0.0, 0.0, 0.0, 0.0)

    def __post_init__(self):
        w = tuple(float(x) for x in self.w)
        theta = tuple(float(x) for x in self.theta)
        if len(w) != 4 or len(theta) != 4:
            raise ValueError("w and theta must have 4 entries")
        norm = sum(x * x for x in w)
        if abs(norm - 1.0) > 1e-12:
            raise ValueError(f"bell weights must satisfy sum w^2 = 1, got {norm!r}")
        if theta[0] != 0.0:
            raise ValueError("theta_1 is a global phase and must be 0")
        object.__setattr__(self, "w", w)
        object.__setattr__(self, "theta", theta)

    def amplitudes(self) -> np.ndarray:
        """Bell-basis amplitudes ``w_j e^{i theta_j}`` as a length-4 vector."""
        return np.array(self.w) * np.exp(1j * np.array(self.theta))

    def ket(self) -> np.ndarray:
        """The state vector in the computational basis."""
        return _BELL_MATRIX @ self.amplitudes()


def state_from_bell_weights(bw: BellWeights) -> np.ndarray:
    """Rank-1 density matrix of the pure state with the given Bell amplitudes."""
    ket = bw.ket()
    return np.outer(ket, ket.conj())


def mixed_state(components: list[tuple[float, np.ndarray]]) -> np.ndarray:
    """Convex combination of density matrices; weights must be >= 0 and sum to 1."""
    if not components:
        raise ValueError("mixed_state needs at least one component")
    total = 0.0
    rho = np.zeros((4, 4), dtype=complex)
    for weight, component in components:
        weight = float(weight)
        if weight < 0.0:
            raise ValueError(f"mixture weights must be nonnegative, got {weight!r}")
        total += weight
        rho += weight * np.asarray(component, dtype=complex)
    if abs(total - 1.0) > 1e-12:
        raise ValueError(f"mixture weights must sum to 1, got {total!r}")
    return rho


@dataclass(frozen=True)
class GeneralUnitaryForm:
    """Generic 2x2 unitary written as entries ``a1+i a2``, ``b1+i b2`` and phase ``alpha``.

    The matrix is ``[[a1+i a2, b1+i b2], [-e^{i alpha}(b1-i b2), e^{i alpha}(a1-i a2)]]``
    with ``a1^2 + a2^2 + b1^2 + b2^2 = 1``.
    """

    a1: float
    a2: float
    b1: float
    b2: float
    alpha: float = 0.0

    def __post_init__(self):
        norm = self.a1**2 + self.a2**2 + self.b1**2 + self.b2**2
        if abs(norm - 1.0) > 1e-12:
            raise ValueError(f"general form requires a1^2+a2^2+b1^2+b2^2 = 1, got {norm!r}")
        _check_angle("alpha", self.alpha)


def general_form_from_matrix(w: np.ndarray, tol: float = 1e-9) -> GeneralUnitaryForm:
    """Decompose a 2x2 unitary into its general form (alpha = arg det)."""
    w = np.asarray(w, dtype=complex)
    if not is_unitary(w, tol):
        raise ValueError("general_form_from_matrix requires a unitary matrix")
    alpha = float(np.angle(np.linalg.det(w)))
    a, b = w[0, 0], w[0, 1]
    return GeneralUnitaryForm(
        a1=float(a.real), a2=float(a.imag), b1=float(b.real), b2=float(b.imag), alpha=alpha
    )


def realize_general_form(g: GeneralUnitaryForm) -> np.ndarray:
    """Matrix of a general-form unitary."""
    a = complex(g.a1, g.a2)
    b = complex(g.b1, g.b2)
    phase = complex(math.cos(g.alpha), math.sin(g.alpha))
    return np.array([[a, b], [-phase * b.conjugate(), phase * a.conjugate()]])

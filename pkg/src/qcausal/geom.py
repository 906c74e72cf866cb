"""Correlation-vector geometry: the TCC/TDC tetrahedra, l(b) planes, affine
coordinates of an observed statistic, and reconstruction of the candidate
cause families behind it.

Both tetrahedra are regular, dual to each other inside the ``[-1,1]^3`` cube;
their intersection (the ambiguous region) is the octahedron ``|x|+|y|+|z|<=1``.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass

import numpy as np

from .qcore import BellWeights, CanonicalUnitary, realize_canonical
from .stats import StatP

#: TDC vertices: rows are the statistics of sigma_0..sigma_3.
TDC_VERTICES = np.array(
    [[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]], dtype=float
)
TDC_VERTICES.setflags(write=False)

#: TCC vertices: rows are the statistics of |b1>..|b4>.
TCC_VERTICES = np.array(
    [[1, -1, 1], [-1, 1, 1], [1, 1, -1], [-1, -1, -1]], dtype=float
)
TCC_VERTICES.setflags(write=False)


class Basis(enum.Enum):
    TCC = "TCC"
    TDC = "TDC"


class Region(enum.Enum):
    OVERLAP = "OVERLAP"
    TDC_ONLY = "TDC_ONLY"
    TCC_ONLY = "TCC_ONLY"
    NEITHER = "NEITHER"


@dataclass(frozen=True)
class AffineCoords:
    """Affine coordinates of a statistic in one vertex basis.

    Entries sum to 1; negative entries certify that the point lies outside
    the corresponding tetrahedron.
    """

    coords: np.ndarray
    basis: Basis

    def __post_init__(self):
        c = np.asarray(self.coords, dtype=float)
        if c.shape != (4,):
            raise ValueError("affine coordinates must have 4 entries")
        if abs(c.sum() - 1.0) > 1e-9:
            raise ValueError(f"affine coordinates must sum to 1, got {c.sum()!r}")
        object.__setattr__(self, "coords", c)

    def min_coord(self) -> float:
        return float(self.coords.min())

    def inside(self, tol: float = 0.0) -> bool:
        return bool(self.coords.min() >= -tol)

    def reconstruct(self) -> np.ndarray:
        vertices = TCC_VERTICES if self.basis is Basis.TCC else TDC_VERTICES
        return self.coords @ vertices


@dataclass(frozen=True)
class PlaneL:
    """The plane with normal ``(1,1,1)`` and constant ``b`` that confines the
    statistic of a fixed scenario under all same-frame rotations."""

    b: float

    def contains(self, p: StatP, tol: float = 1e-9) -> bool:
        return abs(p.plane_const - self.b) <= tol


def plane_of(p: StatP) -> PlaneL:
    return PlaneL(p.plane_const)


def coords_tdc(p: StatP) -> AffineCoords:
    """Vertex weights ``p_j = (1 + <P, P(sigma_j)>) / 4``; reconstruction is exact."""
    return AffineCoords((1.0 + TDC_VERTICES @ p.as_array()) / 4.0, Basis.TDC)


def coords_tcc(p: StatP) -> AffineCoords:
    """Vertex weights ``w_j^2 = (1 + <P, P(b_j)>) / 4``; reconstruction is exact."""
    return AffineCoords((1.0 + TCC_VERTICES @ p.as_array()) / 4.0, Basis.TCC)


def region_of(p: StatP, tol: float = 0.0) -> Region:
    """Membership classification; coordinates down to ``-tol`` count as inside."""
    if tol < 0:
        raise ValueError("tol must be >= 0")
    in_tdc = coords_tdc(p).inside(tol)
    in_tcc = coords_tcc(p).inside(tol)
    if in_tdc and in_tcc:
        return Region.OVERLAP
    if in_tdc:
        return Region.TDC_ONLY
    if in_tcc:
        return Region.TCC_ONLY
    return Region.NEITHER


def project_to_hull(point: np.ndarray, vertices: np.ndarray) -> tuple[np.ndarray, float]:
    """Euclidean projection onto the convex hull of up to 4 affinely independent
    vertices, by exact enumeration of the faces; returns (projection, distance)."""
    point = np.asarray(point, dtype=float)
    best: tuple[np.ndarray, float] | None = None
    n = len(vertices)
    for size in range(1, n + 1):
        for subset in itertools.combinations(range(n), size):
            vs = vertices[list(subset)]
            # Affine least squares: minimize |lam @ vs - point| s.t. sum lam = 1.
            base = vs[0]
            if size == 1:
                proj = base
                lam_ok = True
            else:
                span = vs[1:] - base
                coeffs, *_ = np.linalg.lstsq(span.T, point - base, rcond=None)
                lam = np.concatenate([[1.0 - coeffs.sum()], coeffs])
                lam_ok = bool(lam.min() >= -1e-12)
                proj = lam @ vs
            if lam_ok:
                dist = float(np.linalg.norm(point - proj))
                if best is None or dist < best[1]:
                    best = (proj, dist)
    assert best is not None
    return best


def distance_to_tdc(p: StatP) -> float:
    return project_to_hull(p.as_array(), TDC_VERTICES)[1]


def distance_to_tcc(p: StatP) -> float:
    return project_to_hull(p.as_array(), TCC_VERTICES)[1]


def resolve_neither(p: StatP, tie_tol: float = 1e-12) -> Region:
    """Resolve a statistic outside both tetrahedra by Euclidean projection:
    the nearer tetrahedron wins; a tie is conservatively called OVERLAP."""
    d_tdc = distance_to_tdc(p)
    d_tcc = distance_to_tcc(p)
    if abs(d_tdc - d_tcc) <= tie_tol:
        return Region.OVERLAP
    return Region.TDC_ONLY if d_tdc < d_tcc else Region.TCC_ONLY


@dataclass(frozen=True)
class PauliMixture:
    """Nonnegative normalized vertex weights ``(p0, p1, p2, p3)`` of a TDC point."""

    p: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.p, dtype=float)
        if p.shape != (4,):
            raise ValueError("mixture must have 4 entries")
        if p.min() < 0.0 or abs(p.sum() - 1.0) > 1e-9:
            raise ValueError(f"mixture must be nonnegative and sum to 1, got {p!r}")
        object.__setattr__(self, "p", p)


def clamped_mixture(coords: AffineCoords, tol: float) -> PauliMixture:
    """Clamp small negative coordinates to 0 and renormalize.

    Raises ``ValueError`` when a coordinate is below ``-tol`` (the point is
    too far outside the tetrahedron for clamping to be honest).
    """
    c = coords.coords
    if c.min() < -tol:
        raise ValueError(
            f"coordinates {c!r} are outside the tetrahedron beyond tolerance {tol!r}"
        )
    clamped = np.clip(c, 0.0, None)
    return PauliMixture(clamped / clamped.sum())


def _lemma2_angles(p: np.ndarray, n1: int, n2: int, k1: int, k2: int) -> tuple[float, float, float]:
    """(phi0, gamma1, gamma2) of the branch (n1, n2, k1, k2) of the family over p."""
    c1, c2 = p[0] + p[3], p[0] - p[3]
    d1, d2 = p[1] + p[2], p[2] - p[1]
    phi0 = math.atan2(math.sqrt(max(d1, 0.0)), math.sqrt(max(c1, 0.0)))
    if c1 <= 0.0:
        g1 = 0.0
    else:
        # ratios can overshoot [-1,1] by round-off when p was sampled
        g1 = (-1.0) ** n1 * math.acos(min(1.0, max(-1.0, c2 / c1))) / 2.0 + k1 * math.pi
    if d1 <= 0.0:
        g2 = 0.0
    else:
        g2 = (-1.0) ** n2 * math.acos(min(1.0, max(-1.0, d2 / d1))) / 2.0 + k2 * math.pi
    return phi0, g1, g2


@dataclass(frozen=True)
class CandidateUnitaries:
    """The candidate direct causes behind an observed statistic.

    ``classes`` holds one list per equivalence class under same-frame
    statistics; every member realizes the observed statistic.  Generic
    mixtures give exactly 4 classes; degenerate mixtures collapse (e.g. a
    vertex gives a single class).
    """

    mixture: PauliMixture
    classes: tuple[tuple[CanonicalUnitary, ...], ...]

    @property
    def class_reps(self) -> tuple[CanonicalUnitary, ...]:
        return tuple(members[0] for members in self.classes)


def candidate_unitaries(p: StatP, tol: float = 1e-9) -> CandidateUnitaries:
    """Enumerate the candidate-unitary family of a statistic with TDC membership.

    Coordinates in ``[-tol, 0)`` are clamped to 0 and the weights renormalized;
    coordinates below ``-tol`` raise ``ValueError``.
    """
    mixture = clamped_mixture(coords_tdc(p), tol)
    return candidate_unitaries_from_mixture(mixture)


def candidate_unitaries_from_mixture(mixture: PauliMixture) -> CandidateUnitaries:
    """Enumerate the 16 branches over a mixture and group them into classes."""
    pv = mixture.p
    classes: list[list[CanonicalUnitary]] = []
    reps: list[np.ndarray] = []
    for orbit in _label_orbits():
        members = []
        for n1, n2, k1, k2 in orbit:
            phi0, g1, g2 = _lemma2_angles(pv, n1, n2, k1, k2)
            members.append(
                CanonicalUnitary(phi0, g1, g2, labels=(n1, n2, k1, k2))
            )
        classes.append(members)
        reps.append(realize_canonical(members[0]))
    # Degenerate mixtures collapse branches to the same matrix up to sign;
    # merge such classes so the vertex case yields a single class.
    merged: list[list[CanonicalUnitary]] = []
    merged_reps: list[np.ndarray] = []
    for members, rep in zip(classes, reps):
        for i, seen in enumerate(merged_reps):
            if np.allclose(rep, seen, atol=1e-12) or np.allclose(rep, -seen, atol=1e-12):
                merged[i].extend(members)
                break
        else:
            merged.append(list(members))
            merged_reps.append(rep)
    return CandidateUnitaries(
        mixture=mixture, classes=tuple(tuple(ms) for ms in merged)
    )


def _label_orbits() -> tuple[tuple[tuple[int, int, int, int], ...], ...]:
    """Label orbits sharing the statistic under every same-frame rotation.

    Flipping both k's negates the matrix (same statistic); flipping n1
    together with k1 maps gamma1 to pi - gamma1, which leaves every
    coefficient square of the closed form invariant.
    """
    orbits = []
    for n1 in (0, 1):
        for n2 in (0, 1):
            orbits.append(
                (
                    (n1, n2, 0, 0),
                    (n1, n2, 1, 1),
                    (1 - n1, n2, 1, 0),
                    (1 - n1, n2, 0, 1),
                )
            )
    return tuple(orbits)


def candidate_states(
    p: StatP, rng: np.random.Generator, count: int = 1, tol: float = 1e-9
) -> list[BellWeights]:
    """Sample ``count`` pure common causes realizing a statistic with TCC
    membership; phases are drawn uniformly (the statistic is phase-free)."""
    coords = coords_tcc(p)
    if coords.min_coord() < -tol:
        raise ValueError(
            f"coordinates {coords.coords!r} are outside the tetrahedron beyond tolerance {tol!r}"
        )
    w2 = np.clip(coords.coords, 0.0, None)
    w = np.sqrt(w2 / w2.sum())
    states = []
    for _ in range(count):
        theta = rng.uniform(0.0, 2.0 * math.pi, size=4)
        theta[0] = 0.0
        states.append(BellWeights(tuple(w), tuple(theta)))
    return states


@dataclass(frozen=True)
class CornerStateForm:
    """Parameters of a density matrix supported on ``|00>`` and ``|11>`` only:
    diagonal ``(f1, 0, 0, 1-f1)`` and corner entry ``rho_03 = f2 - i f3``."""

    f1: float
    f2: float
    f3: float


def corner_form_of(rho: np.ndarray, tol: float = 1e-9) -> CornerStateForm | None:
    """Extract the corner form of a density matrix, or None if entries outside
    the four corners exceed ``tol``."""
    rho = np.asarray(rho, dtype=complex)
    mask = np.ones((4, 4), dtype=bool)
    mask[0, 0] = mask[0, 3] = mask[3, 0] = mask[3, 3] = False
    if np.max(np.abs(rho[mask])) > tol:
        return None
    corner = rho[0, 3]
    return CornerStateForm(f1=float(rho[0, 0].real), f2=float(corner.real), f3=float(-corner.imag))

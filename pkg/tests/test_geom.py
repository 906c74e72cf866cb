"""Tetrahedron geometry, affine inversion, candidate reconstruction."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qcausal import geom
from qcausal.geom import (
    Basis,
    PauliMixture,
    Region,
    candidate_states,
    candidate_unitaries,
    candidate_unitaries_from_mixture,
    clamped_mixture,
    coords_tcc,
    coords_tdc,
    corner_form_of,
    distance_to_tcc,
    distance_to_tdc,
    plane_of,
    project_to_hull,
    region_of,
    resolve_neither,
)
from qcausal.oracle import brute_stat
from qcausal.qcore import bell_ket, realize_canonical, state_from_bell_weights
from qcausal.sampling import random_local_rotation
from qcausal.stats import CommonCause, DirectCause, StatP, stat_closed_causal

unit_interval = st.floats(min_value=-1.0, max_value=1.0, allow_nan=False)


class TestCoords:
    @pytest.mark.parametrize(
        "p, expected",
        [
            ((1, 1, 1), (1, 0, 0, 0)),
            ((0, 0, 0), (0.25, 0.25, 0.25, 0.25)),
            ((1, -1, 1), (0.5, 0.5, -0.5, 0.5)),
        ],
    )
    def test_tdc_cases(self, p, expected):
        coords = coords_tdc(StatP(*p))
        assert coords.basis is Basis.TDC
        np.testing.assert_allclose(coords.coords, expected, atol=1e-12)

    @pytest.mark.parametrize(
        "p, expected",
        [
            ((-1, -1, -1), (0, 0, 0, 1)),
            ((0, 0, 1), (0.5, 0.5, 0, 0)),
            ((1, 1, 1), (0.5, 0.5, 0.5, -0.5)),
        ],
    )
    def test_tcc_cases(self, p, expected):
        coords = coords_tcc(StatP(*p))
        np.testing.assert_allclose(coords.coords, expected, atol=1e-12)

    @given(unit_interval, unit_interval, unit_interval)
    @settings(max_examples=200, deadline=None)
    def test_roundtrip_exact(self, x, y, z):
        p = StatP(x, y, z)
        for coords in (coords_tdc(p), coords_tcc(p)):
            np.testing.assert_allclose(coords.reconstruct(), p.as_array(), atol=1e-12)
            assert coords.coords.sum() == pytest.approx(1.0, abs=1e-12)

    @given(unit_interval, unit_interval, unit_interval)
    @settings(max_examples=200, deadline=None)
    def test_plane_constants_agree(self, x, y, z):
        # 4 p0 - 1 and 1 - 4 w4^2 are the same plane constant for any point
        p = StatP(x, y, z)
        p0 = coords_tdc(p).coords[0]
        w4sq = coords_tcc(p).coords[3]
        assert 4 * p0 - 1 == pytest.approx(1 - 4 * w4sq, abs=1e-9)
        assert plane_of(p).b == pytest.approx(4 * p0 - 1, abs=1e-9)


class TestRegion:
    @pytest.mark.parametrize(
        "p, region",
        [
            ((0, 0, 1), Region.OVERLAP),
            ((0, 0, 0), Region.OVERLAP),
            ((1, 1, 1), Region.TDC_ONLY),
            ((-1, -1, -1), Region.TCC_ONLY),
            ((0.9, 0.95, -1.0), Region.NEITHER),
        ],
    )
    def test_cases(self, p, region):
        assert region_of(StatP(*p), 0.0) is region

    def test_tolerance_widens_membership(self):
        p = StatP(0.25, 0.25, 0.6)  # w4^2 = -0.025: outside TCC, barely
        assert region_of(p, 0.0) is Region.TDC_ONLY
        assert region_of(p, 0.1) is Region.OVERLAP

    def test_out_of_range_statistic_rejected(self):
        with pytest.raises(ValueError):
            StatP(0.0, 0.0, 1.02)

    def test_negative_tolerance_rejected(self):
        with pytest.raises(ValueError):
            region_of(StatP(0, 0, 0), -0.1)

    def test_resolve_neither_picks_nearer(self):
        # near the (1,1,1) corner the direct-cause tetrahedron is closest
        assert resolve_neither(StatP(0.95, 0.95, 0.8)) is Region.TDC_ONLY
        assert resolve_neither(StatP(-0.95, -0.95, -0.8)) is Region.TCC_ONLY


class TestProjection:
    def test_inside_distance_zero(self):
        assert distance_to_tdc(StatP(0, 0, 0)) == pytest.approx(0.0, abs=1e-9)
        assert distance_to_tcc(StatP(0, 0, 0)) == pytest.approx(0.0, abs=1e-9)

    def test_vertex_distances(self):
        # (1,1,1) is a TDC vertex; its TCC distance is reached at the centroid
        # of the b1,b2,b3 facet, (1/3,1/3,1/3)
        assert distance_to_tdc(StatP(1, 1, 1)) == pytest.approx(0.0, abs=1e-9)
        expected = np.linalg.norm(np.array([1, 1, 1]) - np.ones(3) / 3)
        assert distance_to_tcc(StatP(1, 1, 1)) == pytest.approx(expected, abs=1e-9)

    def test_projection_is_feasible_point(self, rng):
        for _ in range(50):
            point = rng.uniform(-1.5, 1.5, 3)
            proj, dist = project_to_hull(point, geom.TDC_VERTICES)
            coords = coords_tdc(StatP.from_array(proj))
            assert coords.min_coord() >= -1e-9
            assert dist == pytest.approx(np.linalg.norm(point - proj), abs=1e-12)
            # no interior point of the hull is closer than the projection
            for _ in range(20):
                lam = rng.dirichlet(np.ones(4))
                other = lam @ geom.TDC_VERTICES
                assert np.linalg.norm(point - other) >= dist - 1e-9


class TestClampedMixture:
    def test_small_negative_clamped(self):
        coords = coords_tdc(StatP(0.0, 0.0, 1.0 + 1e-12))
        mix = clamped_mixture(coords, 1e-9)
        assert mix.p.min() >= 0.0
        assert mix.p.sum() == pytest.approx(1.0, abs=1e-12)

    def test_too_far_outside_raises(self):
        with pytest.raises(ValueError):
            clamped_mixture(coords_tdc(StatP(1.0, -1.0, 1.0)), 0.1)

    def test_mixture_validation(self):
        with pytest.raises(ValueError):
            PauliMixture(np.array([0.5, 0.5, 0.5, -0.5]))


class TestCandidateUnitaries:
    def test_vertex_gives_single_class(self):
        cands = candidate_unitaries(StatP(1, 1, 1))
        assert len(cands.classes) == 1
        expected = np.eye(2)
        for u in cands.classes[0]:
            m = realize_canonical(u)
            ok_plus = np.allclose(m, expected, atol=1e-9)
            ok_minus = np.allclose(m, -expected, atol=1e-9)
            assert ok_plus or ok_minus

    def test_ambiguous_point_branch_structure(self):
        cands = candidate_unitaries(StatP(0, 0, 1))
        np.testing.assert_allclose(cands.mixture.p, (0.5, 0, 0, 0.5), atol=1e-12)
        for members in cands.classes:
            for u in members:
                assert u.phi0 == pytest.approx(0.0, abs=1e-12)
                assert u.gamma2 == pytest.approx(0.0, abs=1e-12)
                folded = abs(math.remainder(u.gamma1, math.pi))
                assert folded == pytest.approx(math.pi / 4, abs=1e-12)

    def test_every_member_realizes_target(self, rng):
        for _ in range(20):
            p = rng.dirichlet(np.ones(4))
            target = p @ geom.TDC_VERTICES
            cands = candidate_unitaries_from_mixture(PauliMixture(p))
            assert len(cands.classes) == 4
            for members in cands.classes:
                assert len(members) == 4
                for u in members:
                    got = brute_stat(DirectCause(realize_canonical(u))).as_array()
                    np.testing.assert_allclose(got, target, atol=1e-9)

    def test_exactly_four_statistic_classes(self, rng):
        p = rng.dirichlet(np.ones(4))
        cands = candidate_unitaries_from_mixture(PauliMixture(p))
        rotations = [random_local_rotation(rng) for _ in range(10)]

        def signature(u):
            return np.concatenate(
                [stat_closed_causal(u, v).as_array() for v in rotations]
            )

        reps = []
        for members in cands.classes:
            sig = signature(members[0])
            for u in members[1:]:
                np.testing.assert_allclose(signature(u), sig, atol=1e-9)
            reps.append(sig)
        assert len(reps) == 4
        for i in range(4):
            for j in range(i + 1, 4):
                assert np.max(np.abs(reps[i] - reps[j])) > 1e-6

    def test_outside_tdc_rejected(self):
        with pytest.raises(ValueError):
            candidate_unitaries(StatP(-1, -1, -1), tol=0.1)


class TestCandidateStates:
    def test_vertex_is_unique_state(self, rng):
        states = candidate_states(StatP(1, -1, 1), rng, count=3)
        b1 = bell_ket(1)
        for bw in states:
            rho = state_from_bell_weights(bw)
            np.testing.assert_allclose(rho, np.outer(b1, b1.conj()), atol=1e-12)

    def test_ambiguous_point_family(self, rng):
        for bw in candidate_states(StatP(0, 0, 1), rng, count=100):
            got = brute_stat(CommonCause(state_from_bell_weights(bw))).as_array()
            np.testing.assert_allclose(got, (0, 0, 1), atol=1e-9)
            assert bw.w[0] == pytest.approx(1 / math.sqrt(2), abs=1e-12)
            assert bw.w[1] == pytest.approx(1 / math.sqrt(2), abs=1e-12)

    def test_phase_independence(self, rng):
        p = StatP(0.1, -0.2, 0.3)
        states = candidate_states(p, rng, count=20)
        for bw in states:
            got = brute_stat(CommonCause(state_from_bell_weights(bw))).as_array()
            np.testing.assert_allclose(got, p.as_array(), atol=1e-9)

    def test_outside_tcc_rejected(self, rng):
        with pytest.raises(ValueError):
            candidate_states(StatP(1, 1, 1), rng)


class TestEntryExclusion:
    def test_entries_bounded_off_unit_plane(self, rng):
        # 10^3 states with w4^2 >= 0.01 under 10^2 same-frame rotations: no
        # entry of the rotated statistic gets within 0.01 of 1
        from qcausal.qcore import BellWeights, realize_rotation, state_from_bell_weights
        from qcausal.stats import FramePair, stat_exact

        frames = [
            FramePair.identity().compose_same(
                realize_rotation(random_local_rotation(rng))
            )
            for _ in range(100)
        ]
        worst = -1.0
        for _ in range(1000):
            w = rng.uniform(0, 1, 4)
            w[3] = max(w[3], 0.25)  # w4^2 >= 0.0625/3.0625 > 0.01 after normalizing
            w /= np.linalg.norm(w)
            theta = (0.0, *rng.uniform(0, 2 * math.pi, 3))
            scenario = CommonCause(
                state_from_bell_weights(BellWeights(tuple(w), theta))
            )
            for fr in frames:
                worst = max(worst, float(stat_exact(scenario, fr).as_array().max()))
        assert worst <= 1.0 - 0.01


class TestCornerForm:
    def test_bell1(self):
        k = bell_ket(1)
        corner = corner_form_of(np.outer(k, k.conj()))
        assert corner is not None
        assert (corner.f1, corner.f2, corner.f3) == pytest.approx((0.5, 0.5, 0.0), abs=1e-12)

    def test_half_mixture(self):
        rho = 0.5 * np.diag([1, 0, 0, 1]).astype(complex)
        corner = corner_form_of(rho)
        assert corner is not None
        assert (corner.f1, corner.f2, corner.f3) == pytest.approx((0.5, 0.0, 0.0), abs=1e-12)

    def test_maximally_mixed_is_not_corner(self):
        assert corner_form_of(np.eye(4, dtype=complex) / 4) is None

    def test_statistic_of_corner_states(self, rng):
        # corrected relation: P = (2 f2, -2 f2, 1)
        for _ in range(20):
            f1 = rng.uniform(0, 1)
            cap = math.sqrt(f1 * (1 - f1))
            f2, f3 = rng.uniform(-cap, cap, 2) * 0.7
            rho = np.zeros((4, 4), dtype=complex)
            rho[0, 0], rho[3, 3] = f1, 1 - f1
            rho[0, 3], rho[3, 0] = f2 - 1j * f3, f2 + 1j * f3
            if np.linalg.eigvalsh(rho).min() < 0:
                continue
            got = brute_stat(CommonCause(rho)).as_array()
            np.testing.assert_allclose(got, (2 * f2, -2 * f2, 1.0), atol=1e-9)
            extracted = corner_form_of(rho)
            assert (extracted.f1, extracted.f2, extracted.f3) == pytest.approx(
                (f1, f2, f3), abs=1e-12
            )

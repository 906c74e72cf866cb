"""Quantum primitives: conventions, realizations, structural predicates."""

import math

import numpy as np
import pytest

from qcausal.oracle import brute_stat
from qcausal.qcore import (
    BellWeights,
    CanonicalUnitary,
    GeneralUnitaryForm,
    LocalRotation,
    bell_basis,
    bell_ket,
    general_form_from_matrix,
    is_density,
    is_unitary,
    mixed_state,
    pauli,
    realize_canonical,
    realize_general_form,
    realize_rotation,
    spectral_projectors,
    state_from_bell_weights,
    tensor,
)
from qcausal.sampling import haar_unitary
from qcausal.stats import CommonCause, DirectCause

I2 = np.eye(2)
I4 = np.eye(4)


class TestPauli:
    def test_identity_case(self):
        np.testing.assert_array_equal(pauli(0), I2)

    def test_sigma3_convention(self):
        np.testing.assert_array_equal(pauli(3), np.diag([1.0, -1.0]))

    @pytest.mark.parametrize("i", [0, 1, 2, 3])
    def test_square_is_identity(self, i):
        np.testing.assert_allclose(pauli(i) @ pauli(i), I2, atol=1e-15)

    @pytest.mark.parametrize("i", [1, 2, 3])
    def test_traceless(self, i):
        assert abs(np.trace(pauli(i))) == 0.0

    def test_bad_index(self):
        with pytest.raises(ValueError):
            pauli(4)

    @pytest.mark.parametrize(
        "i, vertex",
        [(0, (1, 1, 1)), (1, (1, -1, -1)), (2, (-1, 1, -1)), (3, (-1, -1, 1))],
    )
    def test_direct_cause_vertices(self, i, vertex):
        got = brute_stat(DirectCause(pauli(i))).as_array()
        np.testing.assert_allclose(got, vertex, atol=1e-12)


class TestBellBasis:
    def test_unitary(self):
        _, b = bell_basis()
        np.testing.assert_allclose(b.conj().T @ b, I4, atol=1e-15)

    @pytest.mark.parametrize(
        "j, vertex",
        [(1, (1, -1, 1)), (2, (-1, 1, 1)), (3, (1, 1, -1)), (4, (-1, -1, -1))],
    )
    def test_common_cause_vertices(self, j, vertex):
        ket = bell_ket(j)
        got = brute_stat(CommonCause(np.outer(ket, ket.conj()))).as_array()
        np.testing.assert_allclose(got, vertex, atol=1e-12)

    def test_label_assignment_forced_by_vertices(self):
        # The labels must be Phi+, Phi-, Psi+, Psi- in that order: computing the
        # statistic of each conventional Bell state and matching the vertex
        # table singles out this assignment.
        s2 = 1 / math.sqrt(2)
        conventional = {
            "phi+": s2 * np.array([1, 0, 0, 1], dtype=complex),
            "phi-": s2 * np.array([1, 0, 0, -1], dtype=complex),
            "psi+": s2 * np.array([0, 1, 1, 0], dtype=complex),
            "psi-": s2 * np.array([0, 1, -1, 0], dtype=complex),
        }
        vertices = {
            "phi+": (1, -1, 1),
            "phi-": (-1, 1, 1),
            "psi+": (1, 1, -1),
            "psi-": (-1, -1, -1),
        }
        for name, ket in conventional.items():
            got = brute_stat(CommonCause(np.outer(ket, ket.conj()))).as_array()
            np.testing.assert_allclose(got, vertices[name], atol=1e-12)
            np.testing.assert_allclose(ket, bell_ket(1 + list(vertices).index(name)))


class TestTensor:
    def test_identity(self):
        np.testing.assert_array_equal(tensor(I2, I2), I4)

    def test_plus_eigenspace_axis3(self):
        proj = spectral_projectors(3)
        plus = proj.xi_uu + proj.xi_dd
        zz = tensor(pauli(3), pauli(3))
        np.testing.assert_allclose(zz @ plus, plus, atol=1e-15)

    def test_norm_multiplicative(self, rng):
        for _ in range(20):
            a, b = haar_unitary(rng), haar_unitary(rng)
            got = np.linalg.norm(tensor(a, b))
            assert got == pytest.approx(np.linalg.norm(a) * np.linalg.norm(b), abs=1e-12)

    def test_mixed_product_property(self, rng):
        a, b, c, d = (haar_unitary(rng) for _ in range(4))
        np.testing.assert_allclose(
            tensor(a, b) @ tensor(c, d), tensor(a @ c, b @ d), atol=1e-12
        )


class TestSpectralProjectors:
    @pytest.mark.parametrize("axis", [1, 2, 3])
    def test_structure(self, axis):
        p = spectral_projectors(axis)
        np.testing.assert_allclose(p.xi_up + p.xi_down, I2, atol=1e-12)
        np.testing.assert_allclose(p.xi_up @ p.xi_down, 0 * I2, atol=1e-12)
        np.testing.assert_allclose(p.xi_up @ p.xi_up, p.xi_up, atol=1e-12)
        np.testing.assert_allclose(p.xi_down @ p.xi_down, p.xi_down, atol=1e-12)
        np.testing.assert_allclose(p.xi_uu, tensor(p.xi_up, p.xi_up), atol=1e-15)
        np.testing.assert_allclose(p.xi_dd, tensor(p.xi_down, p.xi_down), atol=1e-15)

    @pytest.mark.parametrize("axis", [1, 2, 3])
    def test_sum_is_plus_eigenprojector(self, axis):
        p = spectral_projectors(axis)
        ss = tensor(pauli(axis), pauli(axis))
        plus = p.xi_uu + p.xi_dd
        np.testing.assert_allclose(ss @ plus, plus, atol=1e-12)
        # rank 2: the +1 eigenspace of sigma_i (x) sigma_i
        assert np.trace(plus).real == pytest.approx(2.0, abs=1e-12)


class TestRealizeCanonical:
    def test_identity(self):
        u = CanonicalUnitary(0.0, 0.0, 0.0)
        np.testing.assert_allclose(realize_canonical(u), I2, atol=1e-15)

    def test_sigma3_statistic_from_vertex_mixture(self):
        # p = (0,0,0,1): phi0 = 0, gamma1 = pi/2 realizes the sigma_3 vertex
        u = CanonicalUnitary(0.0, math.pi / 2, 0.0)
        got = brute_stat(DirectCause(realize_canonical(u))).as_array()
        np.testing.assert_allclose(got, (-1, -1, 1), atol=1e-12)

    def test_global_phase_unitary(self, rng):
        for _ in range(50):
            u = CanonicalUnitary(*rng.uniform(0, 2 * math.pi, size=4))
            assert is_unitary(realize_canonical(u), 1e-12)

    def test_sign_pair_and_statistic_equivalence(self, rng):
        # Flipping both k labels negates the matrix; flipping n1 with k1 gives
        # a different matrix with the same statistic under every frame.
        from qcausal.geom import PauliMixture, candidate_unitaries_from_mixture
        from qcausal.stats import stat_closed_causal
        from qcausal.sampling import random_local_rotation

        p = rng.dirichlet(np.ones(4))
        cands = candidate_unitaries_from_mixture(PauliMixture(p))
        mats = {}
        for members in cands.classes:
            for u in members:
                mats[u.labels] = realize_canonical(u)
        # 16 distinct matrices, 8 up to sign
        assert len(mats) == 16
        for (n1, n2, k1, k2), m in mats.items():
            np.testing.assert_allclose(m, -mats[(n1, n2, 1 - k1, 1 - k2)], atol=1e-12)
            partner = mats[(1 - n1, n2, 1 - k1, k2)]
            assert not np.allclose(m, partner, atol=1e-9)
            assert not np.allclose(m, -partner, atol=1e-9)
        # statistic equivalence of the (1-n1, n2, 1-k1, k2) partner
        for members in cands.classes:
            u0 = members[0]
            for v in (random_local_rotation(rng) for _ in range(5)):
                base = stat_closed_causal(u0, v).as_array()
                for u in members[1:]:
                    np.testing.assert_allclose(
                        stat_closed_causal(u, v).as_array(), base, atol=1e-9
                    )

    def test_mixture_accessors_roundtrip(self, rng):
        from qcausal.geom import PauliMixture, candidate_unitaries_from_mixture

        p = rng.dirichlet(np.ones(4))
        u = candidate_unitaries_from_mixture(PauliMixture(p)).class_reps[0]
        assert math.cos(u.phi0) == pytest.approx(math.sqrt(p[0] + p[3]), abs=1e-12)
        assert math.sin(u.phi0) == pytest.approx(math.sqrt(p[1] + p[2]), abs=1e-12)
        np.testing.assert_allclose(u.pauli_mixture(), p, atol=1e-12)


class TestRealizeRotation:
    def test_identity(self):
        np.testing.assert_allclose(realize_rotation(LocalRotation(0, 0, 0)), I2, atol=1e-15)

    def test_quarter_turn_is_antidiagonal(self):
        got = realize_rotation(LocalRotation(0.0, 0.0, math.pi / 2))
        np.testing.assert_allclose(got, [[0, 1], [-1, 0]], atol=1e-12)

    def test_nudge_rotation_unitary(self):
        from qcausal.scheme import v0

        m = realize_rotation(v0())
        np.testing.assert_allclose(m.conj().T @ m, I2, atol=1e-12)

    def test_determinant_unit_modulus(self, rng):
        for _ in range(50):
            v = LocalRotation(*rng.uniform(0, 2 * math.pi, size=3))
            m = realize_rotation(v)
            assert is_unitary(m, 1e-12)
            assert abs(np.linalg.det(m)) == pytest.approx(1.0, abs=1e-12)


class TestStates:
    def test_single_bell_state(self):
        bw = BellWeights((1.0, 0.0, 0.0, 0.0))
        k = bell_ket(1)
        np.testing.assert_allclose(state_from_bell_weights(bw), np.outer(k, k.conj()), atol=1e-15)

    def test_equal_superposition_statistic(self):
        # (|b1> + |b2>)/sqrt(2) averages the first two vertices: (0, 0, 1)
        s = 1 / math.sqrt(2)
        bw = BellWeights((s, s, 0.0, 0.0))
        got = brute_stat(CommonCause(state_from_bell_weights(bw))).as_array()
        np.testing.assert_allclose(got, (0, 0, 1), atol=1e-12)

    def test_phases_leave_statistic_invariant(self, rng):
        w = rng.uniform(0, 1, 4)
        w /= np.linalg.norm(w)
        base = brute_stat(CommonCause(state_from_bell_weights(BellWeights(tuple(w))))).as_array()
        for _ in range(20):
            theta = (0.0, *rng.uniform(0, 2 * math.pi, 3))
            rho = state_from_bell_weights(BellWeights(tuple(w), theta))
            np.testing.assert_allclose(
                brute_stat(CommonCause(rho)).as_array(), base, atol=1e-12
            )

    def test_not_normalized_rejected(self):
        with pytest.raises(ValueError):
            BellWeights((1.0, 1.0, 0.0, 0.0))

    def test_global_phase_slot_rejected(self):
        with pytest.raises(ValueError):
            BellWeights((1.0, 0.0, 0.0, 0.0), (0.1, 0.0, 0.0, 0.0))

    def test_mixed_single_component(self):
        k = bell_ket(2)
        rho = np.outer(k, k.conj())
        np.testing.assert_allclose(mixed_state([(1.0, rho)]), rho, atol=1e-15)

    def test_mixed_corner_fixture(self):
        from qcausal.geom import corner_form_of

        b1, b2 = bell_ket(1), bell_ket(2)
        rho = mixed_state(
            [(0.5, np.outer(b1, b1.conj())), (0.5, np.outer(b2, b2.conj()))]
        )
        np.testing.assert_allclose(
            brute_stat(CommonCause(rho)).as_array(), (0, 0, 1), atol=1e-12
        )
        corner = corner_form_of(rho)
        assert corner is not None
        assert corner.f1 == pytest.approx(0.5, abs=1e-12)
        assert corner.f2 == pytest.approx(0.0, abs=1e-12)
        assert corner.f3 == pytest.approx(0.0, abs=1e-12)

    def test_mixed_all_bells_is_maximally_mixed(self):
        comps = []
        for j in range(1, 5):
            k = bell_ket(j)
            comps.append((0.25, np.outer(k, k.conj())))
        rho = mixed_state(comps)
        np.testing.assert_allclose(rho, I4 / 4, atol=1e-15)
        np.testing.assert_allclose(
            brute_stat(CommonCause(rho)).as_array(), (0, 0, 0), atol=1e-12
        )

    def test_mixed_negative_weight_rejected(self):
        k = bell_ket(1)
        rho = np.outer(k, k.conj())
        with pytest.raises(ValueError):
            mixed_state([(1.5, rho), (-0.5, rho)])


class TestPredicates:
    def test_random_realizations_pass(self, rng):
        # structural predicates over a large random sweep
        for _ in range(10_000):
            kind = rng.integers(3)
            if kind == 0:
                m = realize_canonical(CanonicalUnitary(*rng.uniform(0, 2 * math.pi, 4)))
                assert is_unitary(m, 1e-12)
            elif kind == 1:
                m = realize_rotation(LocalRotation(*rng.uniform(0, 2 * math.pi, 3)))
                assert is_unitary(m, 1e-12)
            else:
                w = rng.uniform(0, 1, 4)
                w /= np.linalg.norm(w)
                theta = (0.0, *rng.uniform(0, 2 * math.pi, 3))
                rho = state_from_bell_weights(BellWeights(tuple(w), theta))
                assert is_density(rho, 1e-12)

    def test_rejections(self):
        assert not is_unitary(np.array([[1.0, 0.0], [0.0, 2.0]]))
        assert not is_unitary(np.array([[np.nan, 0.0], [0.0, 1.0]]))
        assert not is_density(np.diag([0.7, 0.7, -0.2, -0.2]))
        assert not is_density(np.diag([2.0, -1.0, 0.0, 0.0]))


class TestGeneralForm:
    def test_invariant_enforced(self):
        with pytest.raises(ValueError):
            GeneralUnitaryForm(1.0, 1.0, 0.0, 0.0, 0.0)

    def test_roundtrip(self, rng):
        for _ in range(50):
            w = haar_unitary(rng)
            g = general_form_from_matrix(w)
            np.testing.assert_allclose(realize_general_form(g), w, atol=1e-10)

    def test_non_unitary_rejected(self):
        with pytest.raises(ValueError):
            general_form_from_matrix(np.array([[1.0, 1.0], [0.0, 1.0]]))

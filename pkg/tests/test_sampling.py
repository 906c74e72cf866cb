"""Scenario samplers and seed discipline."""

import numpy as np
import pytest

from qcausal import sampling
from qcausal.qcore import is_density, is_unitary, realize_canonical
from qcausal.stats import CommonCause, DirectCause


def test_scenario_rngs_stable_and_disjoint():
    g1, m1 = sampling.scenario_rngs(7, 0, 1, 42)
    g2, m2 = sampling.scenario_rngs(7, 0, 1, 42)
    assert g1.random() == g2.random()
    assert m1.random() == m2.random()
    g3, _ = sampling.scenario_rngs(7, 0, 1, 43)
    assert g1.random() != g3.random()


def test_common_causes_are_valid_states(rng):
    for _ in range(100):
        scenario = sampling.random_common_cause(rng)
        assert isinstance(scenario, CommonCause)
        assert is_density(scenario.rho, 1e-9)


def test_direct_causes_are_unitary(rng):
    for _ in range(100):
        scenario = sampling.random_direct_cause(rng)
        assert isinstance(scenario, DirectCause)
        assert is_unitary(scenario.u, 1e-9)


def test_canonical_unitary_parameters_in_range(rng):
    for _ in range(100):
        u = sampling.random_canonical_unitary(rng)
        assert 0.0 <= u.phi0 <= np.pi / 2
        assert is_unitary(realize_canonical(u), 1e-12)


def test_unknown_kind_rejected(rng):
    with pytest.raises(ValueError):
        sampling.random_scenario("nope", rng)


def test_haar_unitary_is_unitary(rng):
    for _ in range(50):
        assert is_unitary(sampling.haar_unitary(rng), 1e-12)


def test_random_density_is_density(rng):
    for _ in range(50):
        assert is_density(sampling.random_density(rng), 1e-9)

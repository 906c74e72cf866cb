"""qcausal: two-qubit quantum causal discrimination.

Computes the same-Pauli correlation statistic of common-cause and
direct-cause scenarios, reconstructs the candidate cause families behind an
observed statistic, designs the frame rotations that separate them, and runs
the full observation-only discrimination flowchart with Monte-Carlo shot
noise.
"""

__version__ = "0.1.0"

from .qcore import (
    BellWeights,
    CanonicalUnitary,
    GeneralUnitaryForm,
    LocalRotation,
    bell_basis,
    bell_ket,
    is_density,
    is_unitary,
    mixed_state,
    pauli,
    realize_canonical,
    realize_rotation,
    spectral_projectors,
    state_from_bell_weights,
    tensor,
)
from .stats import (
    CommonCause,
    DirectCause,
    FramePair,
    JointDistribution,
    Scenario,
    StatP,
    c33_closed_common,
    joint_causal,
    joint_common,
    sample_stat,
    stat_closed_causal,
    stat_exact,
    stat_from_joint,
    stat_general_unitary,
)
from .geom import (
    AffineCoords,
    CandidateUnitaries,
    CornerStateForm,
    PauliMixture,
    PlaneL,
    Region,
    candidate_states,
    candidate_unitaries,
    coords_tcc,
    coords_tdc,
    corner_form_of,
    region_of,
)
from .scheme import (
    BlackBoxSystem,
    DiscriminationConfig,
    VDesign,
    Verdict,
    VerdictKind,
    design_for_classes,
    design_v,
    discriminate,
    transfer_pair,
    v0,
)
from .oracle import brute_stat, verify_all, verify_claim
from .experiment import ExperimentConfig, ExperimentReport, run_experiment

__all__ = [name for name in dir() if not name.startswith("_")]

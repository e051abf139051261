"""Tetrahedron SIC-POVM tomography, discrete Wigner functions and
source-controlled key distribution for two qubits."""

__version__ = "0.1.0"

from .errors import *  # noqa: F401,F403
from .numerics import hermitian_eigenvalues, tensor
from .pauli import LABELS, bell_state, rotation_unitary, sigma
from .sic import bloch_from_probabilities, frame, povm_probabilities, verify_frame_equivalence
from .wigner import (
    QuartitWigner,
    density_from_quartit_wigner,
    enumerate_qubit_wigner_sets,
    fidelity,
    grid_coordinates,
    grid_distribution,
    povm_probs_from_qubit_wigner,
    quartit_wigner,
    quartit_wigner_from_joint,
    qubit_wigner,
    weyl_coefficients,
)
from .striations import enumerate_quartit_wigner_sets, find_striations
from .correlations import candidate_state, enumerate_top_permutations, verify_properties_abc
from .sim import estimate, joint_table, misalign, sample_counts, werner
from .qkd import SessionParams, capability_report, mutual_information, run_session, tomographic_check, unscramble

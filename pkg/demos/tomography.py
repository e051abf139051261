"""
Two-qubit tomography with a pair of tetrahedron detectors
==========================================================

Coincidence counts between Alice's and Bob's four detectors are enough to
rebuild the shared two-qubit state linearly.
"""
import numpy as np

from tetratomo.pauli import bell_state
from tetratomo.sim import estimate, joint_table, sample_counts, werner
from tetratomo.wigner import W_TA_PSI_MINUS, W_TT_PSI_MINUS, quartit_wigner_from_joint

np.set_printoptions(precision=4, suppress=True)

# The singlet seen through two identical tetrahedra never fires matching detectors.
table = joint_table(bell_state("psi-minus"), "even", "even")
print("joint table, singlet, tetrahedron/tetrahedron:\n", table.p)

# Its discrete Wigner distribution has -1/8 on the diagonal.
print("Wigner distribution:\n", quartit_wigner_from_joint(table.p).values)

# With the anti-tetrahedron on Bob's side the same state is a diagonal 1/4.
ta = joint_table(bell_state("psi-minus"), "even", "odd")
print("tetrahedron/anti-tetrahedron:\n", quartit_wigner_from_joint(ta.p, ("even", "odd")).values)
assert np.allclose(quartit_wigner_from_joint(ta.p, ("even", "odd")).values, W_TA_PSI_MINUS)

# A noisy source sampled at 4e4 coincidences, as in a lab run.
counts = sample_counts(joint_table(werner(0.947)), 40_000, seed=1)
est = estimate(counts)
print("estimated fidelity with the singlet: %.4f" % est.fidelity_vs(W_TT_PSI_MINUS))
print("smallest eigenvalue of the linear estimate: %.4f" % est.min_eigenvalue)

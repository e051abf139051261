"""
Which perfect correlations can a pair of tetrahedra show?
==========================================================

Every relabelling of the four tops is a candidate pattern of correlations or
anti-correlations.  Rebuilding the operator behind each pattern tells us
whether a physical state produces it.
"""
from collections import Counter

from tetratomo.correlations import permutation_census, sweep_candidates, verify_properties_abc

# The 24 relabellings sorted by parity (sign of the realizing rotation), order and fixed points.
for (parity, order, fixed), n in sorted(permutation_census().items()):
    print(f"{parity:4s} order {order} fixed {fixed}: {n}")

# Sweep both frame configurations and both correlation modes.
candidates = sweep_candidates()
tally = Counter((c.config, c.mode, c.perm.parity, c.status) for c in candidates)
for key, n in sorted(tally.items()):
    print(*key, n)

# Only anti-correlations in an even configuration come from a state, and that state is a singlet in disguise.
report = verify_properties_abc()
print("physical counts:", report.physical_counts())
print("violations:", report.violations or "none")

"""
Discrete phase space for one and two qubits
============================================

The qubit has eight labelled sets of phase-point operators, four of each
parity.  Products of two qubit sets tile a 4x4 grid; only the mixed-parity
products carry the five families of parallel lines that a full phase space
needs.
"""
import numpy as np

from tetratomo.pauli import bell_state
from tetratomo.striations import canonical_grid_operators, enumerate_quartit_wigner_sets, find_striations
from tetratomo.wigner import enumerate_qubit_wigner_sets, grid_distribution, relabeled_tt_grid

np.set_printoptions(precision=4, suppress=True)

groups = enumerate_qubit_wigner_sets()
for parity, sets in groups.items():
    print(parity, [s.signs for s in sets])

# About two seconds: 64 products, each searched over 576 axis bijections.
products = enumerate_quartit_wigner_sets()
valid = [p for p in products if p.valid]
print("valid product sets:", len(valid), "of", len(products))
print("parities of valid sets:", sorted({(p.parity_a, p.parity_b) for p in valid}))

structure = find_striations(canonical_grid_operators("even", "odd"))
for s in structure.striations:
    print("direction", s.direction, s.kind)

# On the grid the singlet sits on the four corners.
print(grid_distribution(bell_state("psi-minus")).values)
print(relabeled_tt_grid(bell_state("psi-minus")).values)

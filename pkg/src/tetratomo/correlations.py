"""Symmetric (anti-)correlation candidates for the 24 tetrahedron relabellings.

Fixing the joint firing table to perfect correlations ``P_kl = delta_{pi(k), l}/4``
or to isotropic anti-correlations ``P_kl = (1 - delta_{pi(k), l})/12`` fixes the
two-qubit Wigner distribution (both marginals are uniform, so
``W = 3 P - 1/8``) and therefore a unique trace-one Hermitian operator.  This
module builds all those operators and checks which are states.
"""
import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .numerics import hermitian_eigenvalues, partial_trace
from .pauli import LABELS, SIGMAS, conjugate
from .sic import EVEN_DIRECTIONS
from .wigner import QuartitWigner, density_from_quartit_wigner

PHYSICALITY_TOL = 1e-9

CONFIG_PARITIES = {"TT": ("even", "even"), "TA": ("even", "odd")}
MODES = ("anticorrelated", "correlated")


def _cycles(mapping) -> list:
    seen = set()
    cycles = []
    for start in range(len(mapping)):
        if start in seen:
            continue
        cyc = []
        k = start
        while k not in seen:
            seen.add(k)
            cyc.append(k)
            k = mapping[k]
        cycles.append(tuple(cyc))
    return cycles


@dataclass(frozen=True)
class TopPermutation:
    """Relabelling ``k -> mapping[k]`` of the four tops (label indices 0..3)."""

    mapping: tuple
    realizer: np.ndarray = field(repr=False, compare=False)

    @property
    def determinant(self) -> float:
        return float(np.linalg.det(self.realizer))

    @property
    def parity(self) -> str:
        return "even" if self.determinant > 0 else "odd"

    @property
    def transposition_parity(self) -> str:
        n_transpositions = sum(len(c) - 1 for c in _cycles(self.mapping))
        return "even" if n_transpositions % 2 == 0 else "odd"

    @property
    def order(self) -> int:
        return math.lcm(*(len(c) for c in _cycles(self.mapping)))

    @property
    def fixed_points(self) -> int:
        return sum(1 for k, v in enumerate(self.mapping) if k == v)

    def labels(self) -> dict:
        return {LABELS[k]: LABELS[v] for k, v in enumerate(self.mapping)}


def realizer_for(mapping) -> np.ndarray:
    """Orthogonal 3x3 matrix ``R`` with ``R t_k = t_mapping[k]`` for every top."""
    t = EVEN_DIRECTIONS
    # sum_k t_k t_k^T = (4/3) I
    return 0.75 * sum(np.outer(t[mapping[k]], t[k]) for k in range(4))


def top_permutation(mapping) -> TopPermutation:
    mapping = tuple(int(v) for v in mapping)
    if sorted(mapping) != [0, 1, 2, 3]:
        raise ValueError(f"not a permutation of the four tops: {mapping!r}")
    return TopPermutation(mapping, realizer_for(mapping))


def enumerate_top_permutations() -> list:
    return [top_permutation(m) for m in itertools.permutations(range(4))]


def permutation_census(perms=None) -> dict:
    """Counts per class, keyed ``(parity, order, fixed_points)``."""
    perms = enumerate_top_permutations() if perms is None else perms
    census = {}
    for p in perms:
        key = (p.parity, p.order, p.fixed_points)
        census[key] = census.get(key, 0) + 1
    return census


CENSUS_CLASSES = (
    ("even", 1, 4),   # identity
    ("even", 2, 0),   # 180 degree turns about X, Y, Z
    ("odd", 2, 2),    # single transpositions
    ("even", 3, 1),   # 120 degree turns about a top
    ("odd", 4, 0),    # four-cycles
)


def pauli_permutation(idx) -> TopPermutation:
    """Relabelling of the tops induced by conjugation with ``sigma(idx)``."""
    s = SIGMAS[tuple(idx)]
    rotated = []
    for d in EVEN_DIRECTIONS:
        v = conjugate(s, sum(c * p for c, p in zip(d, _PAULIS)))
        rotated.append(np.array([0.5 * np.trace(v @ p).real for p in _PAULIS]))
    mapping = [int(np.argmin(np.linalg.norm(EVEN_DIRECTIONS - r, axis=1))) for r in rotated]
    return top_permutation(mapping)


_PAULIS = (SIGMAS[(1, 0)], SIGMAS[(1, 1)], SIGMAS[(0, 1)])


def symmetric_table(mode: str, perm: TopPermutation) -> np.ndarray:
    hit = np.zeros((4, 4))
    for k, v in enumerate(perm.mapping):
        hit[k, v] = 1.0
    if mode == "correlated":
        return hit / 4
    if mode == "anticorrelated":
        return (1 - hit) / 12
    raise ValueError(f"mode must be one of {MODES}, not {mode!r}")


@dataclass(frozen=True)
class CandidateOperator:
    config: str
    mode: str
    perm: TopPermutation
    matrix: np.ndarray = field(repr=False)
    eigenvalues: tuple

    @property
    def min_eigenvalue(self) -> float:
        return self.eigenvalues[0]

    @property
    def status(self) -> str:
        m = self.min_eigenvalue
        if abs(m) < PHYSICALITY_TOL:
            return "boundary"
        return "physical" if m >= PHYSICALITY_TOL else "nonphysical"

    @property
    def physical(self) -> bool:
        return self.min_eigenvalue >= -PHYSICALITY_TOL

    @property
    def purity(self) -> float:
        return float(np.trace(self.matrix @ self.matrix).real)

    def maximally_entangled(self, tol: float = 1e-10) -> bool:
        """Pure with both reduced states equal to I/2 (singlet up to local unitaries)."""
        if abs(self.purity - 1) > tol:
            return False
        half = np.eye(2) / 2
        return all(np.max(np.abs(partial_trace(self.matrix, side) - half)) <= tol for side in "ab")

    @property
    def overall_parity(self) -> str:
        """Parity of the configuration: the relabelling parity, flipped for TA frames."""
        flip = self.config == "TA"
        even = (self.perm.parity == "even") != flip
        return "even" if even else "odd"


def candidate_state(config: str, mode: str, perm: TopPermutation) -> CandidateOperator:
    if config not in CONFIG_PARITIES:
        raise ValueError(f"config must be 'TT' or 'TA', not {config!r}")
    P = symmetric_table(mode, perm)
    W = QuartitWigner(3 * P - 1 / 8, "detector", CONFIG_PARITIES[config])
    rho = density_from_quartit_wigner(W, *CONFIG_PARITIES[config])
    return CandidateOperator(config, mode, perm, rho, tuple(hermitian_eigenvalues(rho)))


def sweep_candidates() -> list:
    """All 24 x 2 x 2 candidates in (permutation, config, mode) order."""
    return [
        candidate_state(config, mode, perm)
        for perm in enumerate_top_permutations()
        for config in ("TT", "TA")
        for mode in MODES
    ]


@dataclass
class PropertyReport:
    candidates: list
    violations: list

    @property
    def ok(self) -> bool:
        return not self.violations

    def physical_counts(self) -> dict:
        c = self.candidates
        return {
            "A": sum(x.physical for x in c
                     if x.config == "TT" and x.mode == "anticorrelated" and x.perm.parity == "even"),
            "A_through_antitetrahedron": sum(x.physical for x in c
                                             if x.config == "TA" and x.mode == "anticorrelated"
                                             and x.perm.parity == "odd"),
            "B": sum(x.physical for x in c if x.mode == "anticorrelated" and x.overall_parity == "odd"),
            "C": sum(x.physical for x in c if x.mode == "correlated"),
            "total": sum(x.physical for x in c),
        }


def verify_properties_abc() -> PropertyReport:
    """Sweep all 96 candidates and check the three correlation properties.

    A: in every even configuration the anticorrelated candidate is a pure,
       maximally entangled state.
    B: in every odd configuration the anticorrelated candidate is not a state.
    C: no correlated candidate is a state.

    A configuration's parity is that of the relabelling for tetrahedron frames
    on both sides, and the opposite one when Bob holds the anti-tetrahedron.
    """
    candidates = sweep_candidates()
    violations = []
    for c in candidates:
        tag = f"{c.config}/{c.mode}/{c.perm.mapping}"
        if c.mode == "correlated":
            if c.physical:
                violations.append(f"C: {tag} is physical")
        elif c.overall_parity == "even":
            if not (c.physical and c.maximally_entangled()):
                violations.append(f"A: {tag} is not a maximally entangled state")
        elif c.physical:
            violations.append(f"B: {tag} is physical")
    return PropertyReport(candidates, violations)

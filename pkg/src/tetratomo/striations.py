"""Affine-plane structure of the two-qubit phase space.

The 4x4 grid is read as the affine plane over GF(4) after relabelling each
grid axis by a bijection onto the field elements.  A set of 16 two-qubit
phase-point operators is *striated* when, for some pair of axis bijections,
the average of the operators along every line is a rank-one projector,
parallel lines give orthogonal projectors and non-parallel lines give
projectors with overlap 1/4 -- five mutually unbiased bases, one per
direction.
"""
import itertools
from dataclasses import dataclass

import numpy as np

from .errors import NoValidStriation
from .numerics import hermitian_eigenvalues, partial_trace, tensor
from .pauli import LABELS, SIGMAS
from .wigner import SIGN_PATTERNS, PhasePointSet, grid_coordinates, phase_point_set

# GF(4) = {0, 1, w, w^2} encoded as 0, 1, 2, 3 with w^2 = w + 1; addition is XOR.
_LOG = {1: 0, 2: 1, 3: 2}
_EXP = (1, 2, 3)


def gf4_add(a: int, b: int) -> int:
    return a ^ b


def gf4_mul(a: int, b: int) -> int:
    if a == 0 or b == 0:
        return 0
    return _EXP[(_LOG[a] + _LOG[b]) % 3]


DIRECTIONS = ((0, 1), (1, 0), (1, 1), (1, 2), (1, 3))


def affine_lines(direction) -> list:
    """The four parallel lines ``{p + t d}`` of the plane GF(4)^2, canonically ordered."""
    lines = set()
    for p in itertools.product(range(4), repeat=2):
        pts = tuple(sorted((gf4_add(p[0], gf4_mul(t, direction[0])), gf4_add(p[1], gf4_mul(t, direction[1])))
                           for t in range(4)))
        lines.add(pts)
    return sorted(lines)


AFFINE_STRIATIONS = tuple(tuple(affine_lines(d)) for d in DIRECTIONS)


def grid_operators(set_a: PhasePointSet, set_b: PhasePointSet) -> np.ndarray:
    """``ops[m, n]`` = product operator placed at grid point ``(m, n)``."""
    ops = np.empty((4, 4, 4, 4), dtype=complex)
    for (ia, ja), (kb, lb) in itertools.product(LABELS, LABELS):
        m, n = grid_coordinates(ia, ja, kb, lb)
        ops[m, n] = tensor(set_a[(ia, ja)], set_b[(kb, lb)])
    return ops


def quartit_set_axioms(ops: np.ndarray, tol: float = 1e-12) -> dict:
    """Trace, orthogonality, displacement covariance and resolution of identity."""
    flat = ops.reshape(16, 4, 4)
    unit_trace = all(abs(np.trace(a) - 1) <= tol for a in flat)
    gram = np.einsum("aij,bji->ab", flat, flat).real
    orthogonal = np.allclose(gram, 4 * np.eye(16), atol=tol, rtol=0)
    resolution = np.allclose(flat.sum(axis=0), 4 * np.eye(4), atol=tol)
    # displacements act on the bits (i_a, j_a, k_b, l_b), i.e. as translations of the grid
    covariant = True
    for da, db in itertools.product(LABELS, LABELS):
        d = tensor(SIGMAS[da], SIGMAS[db])
        for (ia, ja), (kb, lb) in itertools.product(LABELS, LABELS):
            src = grid_coordinates(ia, ja, kb, lb)
            dst = grid_coordinates(ia ^ da[0], ja ^ da[1], kb ^ db[0], lb ^ db[1])
            if not np.allclose(d @ ops[src] @ d.conj().T, ops[dst], atol=tol):
                covariant = False
                break
        if not covariant:
            break
    return {
        "unit_trace": bool(unit_trace),
        "orthogonal": bool(orthogonal),
        "covariant": bool(covariant),
        "resolution": bool(resolution),
    }


@dataclass(frozen=True)
class Striation:
    direction: tuple
    lines: tuple           # four lines, each a tuple of four grid points (m, n)
    projectors: tuple      # line-average operators, one per line
    kind: str              # "factorizable" or "entangled"


@dataclass(frozen=True)
class StriationStructure:
    axis_maps: tuple       # (phi, psi): grid index -> GF(4) element along m and n
    striations: tuple

    def counts(self) -> dict:
        out = {"factorizable": 0, "entangled": 0}
        for s in self.striations:
            out[s.kind] = out.get(s.kind, 0) + 1
        return out


def _classify(projectors) -> str:
    purities = []
    for p in projectors:
        ra = partial_trace(p, "a")
        rb = partial_trace(p, "b")
        purities.append((np.trace(ra @ ra).real, np.trace(rb @ rb).real))
    if all(abs(pa - 1) <= 1e-10 and abs(pb - 1) <= 1e-10 for pa, pb in purities):
        return "factorizable"
    if all(abs(pa - 0.5) <= 1e-10 and abs(pb - 0.5) <= 1e-10 for pa, pb in purities):
        return "entangled"
    return "mixed"


def _verify(striations, tol=1e-10) -> bool:
    for s in striations:
        for p in s.projectors:
            ev = hermitian_eigenvalues(p)
            if any(abs(a - b) > tol for a, b in zip(ev, (0.0, 0.0, 0.0, 1.0))):
                return False
        for p, q in itertools.combinations(s.projectors, 2):
            if abs(np.trace(p @ q)) > tol:
                return False
    for s1, s2 in itertools.combinations(striations, 2):
        for p in s1.projectors:
            for q in s2.projectors:
                if abs(np.trace(p @ q) - 0.25) > tol:
                    return False
    return True


def find_striations(ops: np.ndarray, tol: float = 1e-10) -> StriationStructure:
    """Search all 24 x 24 axis bijections for a valid five-striation structure.

    ``ops`` is a ``(4, 4, 4, 4)`` array of operators indexed by grid point.
    The first structure in lexicographic order of the bijections is returned.
    """
    ops = np.asarray(ops, dtype=complex)
    cache = {}

    def line_ok(points):
        key = frozenset(points)
        if key not in cache:
            p = sum(ops[q] for q in points) / 4
            cache[key] = bool(np.allclose(p @ p, p, atol=tol, rtol=0))
        return cache[key]

    perms = list(itertools.permutations(range(4)))
    for phi in perms:
        for psi in perms:
            back = {(phi[m], psi[n]): (m, n) for m in range(4) for n in range(4)}
            candidate = []
            for lines in AFFINE_STRIATIONS:
                grid_lines = [tuple(sorted(back[pt] for pt in line)) for line in lines]
                if not all(line_ok(gl) for gl in grid_lines):
                    break
                candidate.append(tuple(sorted(grid_lines)))
            else:
                striations = []
                for direction, grid_lines in zip(DIRECTIONS, candidate):
                    projectors = tuple(sum(ops[q] for q in gl) / 4 for gl in grid_lines)
                    striations.append(Striation(direction, grid_lines, projectors, _classify(projectors)))
                if _verify(striations, tol):
                    return StriationStructure((phi, psi), tuple(striations))
    raise NoValidStriation("no axis bijection yields mutually unbiased line projectors")


@dataclass(frozen=True)
class ProductSetResult:
    signs_a: tuple
    signs_b: tuple
    parity_a: str
    parity_b: str
    axioms: dict
    structure: object      # StriationStructure or None

    @property
    def valid(self) -> bool:
        return self.structure is not None and all(self.axioms.values())


def enumerate_quartit_wigner_sets() -> list:
    """Classify all 64 products of labelled qubit phase-point sets."""
    results = []
    for sa in SIGN_PATTERNS:
        set_a = phase_point_set(sa)
        for sb in SIGN_PATTERNS:
            set_b = phase_point_set(sb)
            ops = grid_operators(set_a, set_b)
            try:
                structure = find_striations(ops)
            except NoValidStriation:
                structure = None
            results.append(ProductSetResult(sa, sb, set_a.parity, set_b.parity,
                                            quartit_set_axioms(ops), structure))
    return results


def canonical_grid_operators(parity_a: str = "even", parity_b: str = "odd") -> np.ndarray:
    signs = {"even": (1, 1, 1), "odd": (-1, -1, -1)}
    return grid_operators(phase_point_set(signs[parity_a]), phase_point_set(signs[parity_b]))

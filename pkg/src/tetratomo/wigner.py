"""Discrete Wigner distributions for one and two qubits.

Qubit phase-point operators are labelled by the grid point ``(k, l)`` and
built from a fiducial ``W00 = (I + sx X + sy Y + sz Z)/2`` by displacement,
``W_kl = sigma_kl W00 sigma_kl``.  The canonical even set (all signs +) is
the one whose Wigner function is the symplectic Fourier transform of the
Weyl coefficients; its operator at ``(k, l)`` points along the tetrahedron
top with the same label, which is how detector labels and phase-space labels
are identified everywhere in this package.

Two-qubit coefficients are ``W_kl = Tr(rho A_k (x) B_l) / 4`` with unit-trace
phase-point operators, so that ``rho = sum_kl W_kl A_k (x) B_l``.
"""
import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import IndexingMismatch, NotNormalized
from .numerics import hermitian_eigenvalues, tensor
from .pauli import I2, LABELS, SIGMAS, SX, SY, SZ, rotation_unitary
from .sic import LABEL_SWAP, SQRT3

SIGN_PATTERNS = tuple(itertools.product((1, -1), repeat=3))


# --- single qubit --------------------------------------------------------------

def weyl_coefficients(rho) -> np.ndarray:
    """``w[i, j] = Tr(rho sigma_ij) / 2`` as a real 2x2 array."""
    rho = np.asarray(rho, dtype=complex)
    w = np.empty((2, 2))
    for i, j in LABELS:
        w[i, j] = 0.5 * np.trace(rho @ SIGMAS[(i, j)]).real
    return w


def wigner_from_weyl(w) -> np.ndarray:
    w = np.asarray(w, dtype=float)
    out = np.empty((2, 2))
    for k, l in LABELS:
        out[k, l] = 0.5 * sum((-1) ** (i * l - j * k) * w[i, j] for i, j in LABELS)
    return out


def qubit_wigner(rho) -> np.ndarray:
    """Qubit Wigner distribution ``W[k, l]``, summing to one."""
    return wigner_from_weyl(weyl_coefficients(rho))


def povm_probs_from_qubit_wigner(W) -> np.ndarray:
    """Even-frame firing probabilities ``P_kl = W_kl/sqrt 3 + (1 - 1/sqrt 3)/4`` in label order."""
    W = np.asarray(W, dtype=float).reshape(4)
    return W / SQRT3 + (1 - 1 / SQRT3) / 4


def qubit_wigner_from_povm_probs(P) -> np.ndarray:
    P = np.asarray(P, dtype=float).reshape(4)
    return (SQRT3 * (P - (1 - 1 / SQRT3) / 4)).reshape(2, 2)


@dataclass(frozen=True)
class PhasePointSet:
    """Four qubit phase-point operators generated from one fiducial by displacement."""

    signs: tuple
    operators: tuple = field(repr=False)

    @property
    def parity(self) -> str:
        return "even" if math.prod(self.signs) > 0 else "odd"

    def __getitem__(self, label) -> np.ndarray:
        if isinstance(label, tuple):
            label = 2 * label[0] + label[1]
        return self.operators[label]


def phase_point_set(signs=(1, 1, 1)) -> PhasePointSet:
    sx, sy, sz = signs
    fid = 0.5 * (I2 + sx * SX + sy * SY + sz * SZ)
    ops = tuple(SIGMAS[lab] @ fid @ SIGMAS[lab] for lab in LABELS)
    return PhasePointSet(signs=tuple(signs), operators=ops)


def phase_point_operators(parity: str) -> PhasePointSet:
    """Canonical set of the given parity: signs (+,+,+) for even, (-,-,-) for odd."""
    if parity == "even":
        return phase_point_set((1, 1, 1))
    if parity == "odd":
        return phase_point_set((-1, -1, -1))
    raise ValueError(f"parity must be 'even' or 'odd', not {parity!r}")


def _is_rank_one_projector(p, tol=1e-10) -> bool:
    ev = hermitian_eigenvalues(p)
    target = [0.0] * (len(ev) - 1) + [1.0]
    return all(abs(a - b) <= tol for a, b in zip(ev, target))


QUBIT_STRIATIONS = {
    "rows": [[(k, 0), (k, 1)] for k in range(2)],
    "columns": [[(0, l), (1, l)] for l in range(2)],
    "diagonals": [[(0, 0), (1, 1)], [(0, 1), (1, 0)]],
}


def qubit_set_axioms(s: PhasePointSet, tol: float = 1e-12) -> dict:
    """Evaluate the phase-point axioms for a qubit set; returns name -> bool."""
    ops = s.operators
    unit_trace = all(abs(np.trace(a) - 1) <= tol for a in ops)
    gram = np.array([[np.trace(a @ b).real for b in ops] for a in ops])
    orthogonal = np.allclose(gram, 2 * np.eye(4), atol=tol, rtol=0)
    covariant = all(
        np.allclose(SIGMAS[d] @ s[lab] @ SIGMAS[d], s[((lab[0] + d[0]) % 2, (lab[1] + d[1]) % 2)], atol=tol)
        for d in LABELS for lab in LABELS
    )
    resolution = np.allclose(sum(ops), 2 * I2, atol=tol)

    projectors = {
        name: [0.5 * (s[a] + s[b]) for a, b in lines] for name, lines in QUBIT_STRIATIONS.items()
    }
    rank_one = all(_is_rank_one_projector(p) for ps in projectors.values() for p in ps)
    within = all(abs(np.trace(ps[0] @ ps[1])) <= 1e-10 for ps in projectors.values())
    across = all(
        abs(np.trace(p @ q).real - 0.5) <= 1e-10
        for n1, n2 in itertools.combinations(projectors, 2)
        for p in projectors[n1] for q in projectors[n2]
    )
    return {
        "unit_trace": bool(unit_trace),
        "orthogonal": bool(orthogonal),
        "covariant": bool(covariant),
        "resolution": bool(resolution),
        "line_projectors": bool(rank_one and within),
        "unbiased": bool(across),
    }


def enumerate_qubit_wigner_sets() -> dict:
    """All 8 labelled qubit phase-point sets, grouped by parity.

    Each key ``"even"`` / ``"odd"`` maps to the four sets of that parity,
    ordered by their fiducial sign pattern.
    """
    groups = {"even": [], "odd": []}
    for signs in SIGN_PATTERNS:
        s = phase_point_set(signs)
        groups[s.parity].append(s)
    return groups


def pauli_orbit(s: PhasePointSet) -> list:
    """Sign patterns reached by conjugating the fiducial of ``s`` with each Pauli."""
    orbit = []
    for lab in LABELS:
        fid = SIGMAS[lab] @ s[(0, 0)] @ SIGMAS[lab]
        signs = tuple(int(round(np.trace(fid @ p).real)) for p in (SX, SY, SZ))
        if signs not in orbit:
            orbit.append(signs)
    return orbit


# --- two qubits ----------------------------------------------------------------

@dataclass(frozen=True)
class QuartitWigner:
    """A 4x4 two-qubit Wigner array with its indexing convention.

    ``indexing`` is ``"detector"`` (rows: qubit-a label, columns: qubit-b label)
    or ``"grid"`` (phase-space coordinates ``(m, n)``).
    """

    values: np.ndarray
    indexing: str = "detector"
    parities: tuple = ("even", "even")

    def __post_init__(self):
        v = np.array(self.values, dtype=float)
        if v.shape != (4, 4):
            raise ValueError(f"Wigner array must be 4x4, got {v.shape}")
        if self.indexing not in ("detector", "grid"):
            raise ValueError(f"unknown indexing {self.indexing!r}")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    def total(self) -> float:
        return float(self.values.sum())


def _as_quartit(W, indexing="detector") -> QuartitWigner:
    if isinstance(W, QuartitWigner):
        return W
    return QuartitWigner(np.asarray(W, dtype=float), indexing=indexing)


def product_operators(parity_a: str, parity_b: str) -> np.ndarray:
    """Array ``ops[k, l]`` of two-qubit phase-point operators ``A_k (x) B_l``."""
    a = phase_point_operators(parity_a)
    b = phase_point_operators(parity_b)
    ops = np.empty((4, 4, 4, 4), dtype=complex)
    for k in range(4):
        for l in range(4):
            ops[k, l] = tensor(a[k], b[l])
    return ops


def quartit_wigner(rho, parity_a: str = "even", parity_b: str = "even") -> QuartitWigner:
    """Detector-indexed coefficients ``Tr(rho A_k (x) B_l) / 4``."""
    rho = np.asarray(rho, dtype=complex)
    ops = product_operators(parity_a, parity_b)
    vals = 0.25 * np.einsum("ij,klji->kl", rho, ops).real
    return QuartitWigner(vals, "detector", (parity_a, parity_b))


def quartit_wigner_from_joint(P, parities=("even", "even")) -> QuartitWigner:
    """Wigner coefficients from a 4x4 table of joint detector probabilities.

    ``W_kl = 3 P_kl + sqrt3 (1 - sqrt3)/4 (Pa_k + Pb_l) + ((1 - sqrt3)/4)**2``
    with ``Pa``/``Pb`` the row/column marginals.
    """
    if hasattr(P, "p"):
        parities = (P.parity_a, P.parity_b)
        P = P.p
    P = np.asarray(P, dtype=float)
    if P.shape != (4, 4):
        raise ValueError(f"joint table must be 4x4, got {P.shape}")
    total = float(P.sum())
    if abs(total - 1.0) > 1e-9:
        raise NotNormalized(f"joint probabilities sum to {total}")
    if np.any(P < 0):
        raise NotNormalized("joint probabilities must be nonnegative")
    c = (1 - SQRT3) / 4
    pa = P.sum(axis=1)
    pb = P.sum(axis=0)
    W = 3 * P + SQRT3 * c * (pa[:, None] + pb[None, :]) + c * c
    return QuartitWigner(W, "detector", tuple(parities))


def density_from_quartit_wigner(W, parity_a: str = "even", parity_b: str = "even") -> np.ndarray:
    """``rho = sum_kl W_kl A_k (x) B_l`` for detector-indexed coefficients."""
    W = _as_quartit(W)
    if W.indexing != "detector":
        raise IndexingMismatch("reconstruction needs detector-indexed coefficients")
    ops = product_operators(parity_a, parity_b)
    rho = np.einsum("kl,klij->ij", W.values, ops)
    return 0.5 * (rho + rho.conj().T)


def fidelity(W_exp, W_ref) -> float:
    """Overlap ``4 sum W_exp W_ref``; equals ``Tr(rho_exp rho_ref)`` for matching operator sets."""
    W_exp = _as_quartit(W_exp)
    W_ref = _as_quartit(W_ref)
    if W_exp.indexing != W_ref.indexing:
        raise IndexingMismatch(f"cannot compare {W_exp.indexing}- and {W_ref.indexing}-indexed arrays")
    return float(4.0 * np.sum(W_exp.values * W_ref.values))


W_TT_PSI_MINUS = np.full((4, 4), 1 / 8) - np.eye(4) / 4
W_TA_PSI_MINUS = np.eye(4) / 4
W_TT_PHI_PLUS = np.full((4, 4), 1 / 8) - np.fliplr(np.eye(4)) / 4


# --- phase-space grid ----------------------------------------------------------

def grid_coordinates(i_a: int, j_a: int, k_b: int, l_b: int) -> tuple:
    for b in (i_a, j_a, k_b, l_b):
        if b not in (0, 1):
            raise ValueError("grid coordinates take four bits")
    return i_a + 2 * k_b, j_a + 2 * l_b


def to_grid(W) -> QuartitWigner:
    """Re-index detector coefficients onto the ``(m, n)`` phase-space grid."""
    W = _as_quartit(W)
    if W.indexing == "grid":
        return W
    out = np.empty((4, 4))
    for (ia, ja), (kb, lb) in itertools.product(LABELS, LABELS):
        m, n = grid_coordinates(ia, ja, kb, lb)
        out[m, n] = W.values[2 * ia + ja, 2 * kb + lb]
    return QuartitWigner(out, "grid", W.parities)


def grid_distribution(rho, parity_b: str = "odd") -> QuartitWigner:
    """Grid-indexed Wigner distribution with tetrahedron operators on qubit a.

    The default pairs them with anti-tetrahedron operators on qubit b; passing
    ``parity_b="even"`` gives the tetrahedron-tetrahedron layout instead.
    """
    return to_grid(quartit_wigner(rho, "even", parity_b))


OMEGA_UNITARY = rotation_unitary(np.array([1.0, 0.0, -1.0]) / math.sqrt(2), math.pi)
"""Qubit unitary whose conjugation acts on Bloch vectors as the frame rotation ``O``."""


def relabeled_tt_grid(rho) -> QuartitWigner:
    """Grid distribution built from anti-tetrahedron operators on qubit b after
    swapping b-labels (0,1) <-> (1,0) and undoing the rotation ``O`` on b.

    For every state this reproduces the tetrahedron-tetrahedron coefficients
    laid out on the grid.
    """
    rho = np.asarray(rho, dtype=complex)
    a = phase_point_operators("even")
    odd = phase_point_operators("odd")
    u = OMEGA_UNITARY
    b_ops = [u.conj().T @ odd[LABEL_SWAP[L]] @ u for L in range(4)]
    vals = np.empty((4, 4))
    for (ia, ja), (kb, lb) in itertools.product(LABELS, LABELS):
        m, n = grid_coordinates(ia, ja, kb, lb)
        op = tensor(a[(ia, ja)], b_ops[2 * kb + lb])
        vals[m, n] = 0.25 * np.trace(rho @ op).real
    return QuartitWigner(vals, "grid", ("even", "even"))

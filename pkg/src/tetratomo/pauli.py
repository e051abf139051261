"""Qubit displacement (Pauli) operators, Bell states and rotation unitaries.

Pauli indices are bit pairs ``(i, j)``:

    (0, 0) -> identity    (0, 1) -> sigma_z
    (1, 0) -> sigma_x     (1, 1) -> sigma_y

The displacement ``sigma(i, j)`` acts on the computational basis as
``sqrt((-1)**(i*j)) * sum_k (-1)**(k*j) |k + i mod 2><k|``; with the root
chosen as ``+i`` for ``i = j = 1`` this gives the usual ``sigma_y``.
"""
import math

import numpy as np

from .errors import BadAxis
from .numerics import tensor

LABELS = ((0, 0), (0, 1), (1, 0), (1, 1))
"""Canonical label order, shared by Pauli indices, detectors and phase-point operators."""

BELL_NAMES = {
    "psi-minus": (0, 0),
    "psi-plus": (0, 1),
    "phi-minus": (1, 0),
    "phi-plus": (1, 1),
}

I2 = np.eye(2, dtype=complex)
SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
BLOCH_PAULIS = (SX, SY, SZ)


def label_index(label) -> int:
    i, j = label
    return 2 * i + j


def sigma(idx) -> np.ndarray:
    """Displacement operator for the Pauli index ``(i, j)``."""
    i, j = idx
    if i not in (0, 1) or j not in (0, 1):
        raise ValueError(f"Pauli index must be a pair of bits, got {idx!r}")
    phase = 1j if (i and j) else 1.0
    m = np.zeros((2, 2), dtype=complex)
    for k in range(2):
        m[(k + i) % 2, k] = (-1) ** (k * j)
    return phase * m + 0.0  # avoid signed zeros in the sigma_y entries


SIGMAS = {lab: sigma(lab) for lab in LABELS}


def bloch_operator(vec) -> np.ndarray:
    """``v . sigma`` for a real 3-vector ``v``."""
    vx, vy, vz = vec
    return vx * SX + vy * SY + vz * SZ


def density_from_bloch(p) -> np.ndarray:
    return 0.5 * (I2 + bloch_operator(p))


def bloch_vector(rho) -> np.ndarray:
    rho = np.asarray(rho, dtype=complex)
    return np.array([np.trace(rho @ s).real for s in BLOCH_PAULIS])


SINGLET_KET = np.array([0, -1, 1, 0], dtype=complex) / math.sqrt(2)
"""(|10> - |01>)/sqrt(2) in the |ab> basis ordering |00>, |01>, |10>, |11>."""


def bell_ket(label) -> np.ndarray:
    return tensor(I2, sigma(label)) @ SINGLET_KET


def bell_state(label) -> np.ndarray:
    """Bell projector obtained by displacing qubit b of the singlet by ``sigma(label)``."""
    if isinstance(label, str):
        label = BELL_NAMES[label]
    ket = bell_ket(label)
    return np.outer(ket, ket.conj())


def correlation_matrix(rho) -> np.ndarray:
    """``T[u, v] = Tr(rho sigma_u (x) sigma_v)`` over u, v in x, y, z."""
    rho = np.asarray(rho, dtype=complex)
    return np.array([[np.trace(rho @ tensor(su, sv)).real for sv in BLOCH_PAULIS] for su in BLOCH_PAULIS])


def rotation_unitary(axis, angle: float) -> np.ndarray:
    """``exp(-i angle/2 axis.sigma)``.

    Conjugation ``U (p.sigma) U^dagger`` rotates the Bloch vector ``p`` by
    ``angle`` about ``axis`` (right-hand rule).
    """
    n = np.asarray(axis, dtype=float)
    if n.shape != (3,) or abs(np.linalg.norm(n) - 1.0) > 1e-12:
        raise BadAxis(f"rotation axis must be a unit 3-vector, got {axis!r}")
    return math.cos(angle / 2) * I2 - 1j * math.sin(angle / 2) * bloch_operator(n)


def rotation_matrix(axis, angle: float) -> np.ndarray:
    """3x3 proper rotation about a unit axis (Rodrigues)."""
    n = np.asarray(axis, dtype=float)
    if n.shape != (3,) or abs(np.linalg.norm(n) - 1.0) > 1e-12:
        raise BadAxis(f"rotation axis must be a unit 3-vector, got {axis!r}")
    k = np.array([[0, -n[2], n[1]], [n[2], 0, -n[0]], [-n[1], n[0], 0]])
    return np.eye(3) + math.sin(angle) * k + (1 - math.cos(angle)) * (k @ k)


def conjugate(u, m) -> np.ndarray:
    u = np.asarray(u, dtype=complex)
    return u @ np.asarray(m, dtype=complex) @ u.conj().T

"""Tetrahedron and anti-tetrahedron SIC-POVM frames on a single qubit.

The even frame is the tetrahedron whose tops point along

    t00 = ( 1,  1,  1)/sqrt(3)     t01 = (-1, -1,  1)/sqrt(3)
    t10 = ( 1, -1, -1)/sqrt(3)     t11 = (-1,  1, -1)/sqrt(3)

and the odd frame (anti-tetrahedron) keeps the labels of the even tops but
points each of them through the origin, ``s_L = -t_L``.  Detector ``L`` of a
frame fires with probability ``(1 + d_L . p) / 4`` for a qubit with Bloch
vector ``p``.
"""
import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import NotNormalized, UnphysicalBloch
from .pauli import I2, LABELS, bloch_operator, sigma

SQRT3 = math.sqrt(3.0)

EVEN_DIRECTIONS = np.array(
    [[1, 1, 1], [-1, -1, 1], [1, -1, -1], [-1, 1, -1]], dtype=float
) / SQRT3

FRAME_ROTATION = np.array([[0, 0, -1], [0, -1, 0], [-1, 0, 0]], dtype=float)
"""Orthogonal map (a 180 degree turn about (1, 0, -1)/sqrt 2) carrying each frame onto the other."""

LABEL_SWAP = (0, 2, 1, 3)
"""Exchange of labels (0,1) and (1,0), as label indices."""


def _check_parity(parity: str) -> str:
    if parity not in ("even", "odd"):
        raise ValueError(f"parity must be 'even' or 'odd', not {parity!r}")
    return parity


@dataclass(frozen=True)
class TetrahedronFrame:
    parity: str
    directions: np.ndarray
    labels: tuple = LABELS

    @property
    def sign(self) -> int:
        return 1 if self.parity == "even" else -1

    def effects(self) -> list:
        """POVM effects ``(I + d_L . sigma) / 4`` in label order."""
        return [0.25 * (I2 + bloch_operator(d)) for d in self.directions]

    def probability_map(self) -> np.ndarray:
        """4x4 matrix sending ``(1, px, py, pz)`` to the four firing probabilities."""
        return 0.25 * np.hstack([np.ones((4, 1)), self.directions])


def frame(parity: str) -> TetrahedronFrame:
    _check_parity(parity)
    sign = 1.0 if parity == "even" else -1.0
    directions = sign * EVEN_DIRECTIONS
    directions.setflags(write=False)
    return TetrahedronFrame(parity=parity, directions=directions)


def povm_probabilities(p, f: TetrahedronFrame) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    norm = float(np.linalg.norm(p))
    if norm > 1 + 1e-9:
        raise UnphysicalBloch(f"|p| = {norm} exceeds 1")
    return 0.25 * (1.0 + f.directions @ p)


def bloch_from_probabilities(probs, f: TetrahedronFrame) -> np.ndarray:
    """Invert :func:`povm_probabilities`.

    Uses ``sum_L d_L d_L^T = (4/3) I`` and ``sum_L d_L = 0``, so that
    ``p = 3 sum_L P_L d_L``.  Inputs off the simplex by at most 1e-6 are
    renormalized; the result is not clipped to the Bloch ball.
    """
    probs = np.asarray(probs, dtype=float)
    total = float(probs.sum())
    if abs(total - 1.0) > 1e-6:
        raise NotNormalized(f"probabilities sum to {total}, not 1")
    probs = probs / total
    return 3.0 * (probs @ f.directions)


def fiducial_ket() -> np.ndarray:
    """Unit-norm pure state whose projector is ``(I + (X + Y + Z)/sqrt 3)/2``.

    Amplitudes ``sqrt(1 + 1/sqrt 3)`` and ``exp(i pi/4) sqrt(1 - 1/sqrt 3)`` are
    each divided by ``sqrt 2`` to give a normalized state.
    """
    alpha = math.sqrt(1 + 1 / SQRT3) / math.sqrt(2)
    beta_conj = cmath.exp(1j * math.pi / 4) * math.sqrt(1 - 1 / SQRT3) / math.sqrt(2)
    return np.array([alpha, beta_conj], dtype=complex)


def displaced_fiducials() -> list:
    """The four pure states ``sigma_L |phi>`` in label order."""
    phi = fiducial_ket()
    return [sigma(lab) @ phi for lab in LABELS]


def relabel(f: TetrahedronFrame, perm) -> TetrahedronFrame:
    """Frame whose label ``L`` carries the direction formerly at ``perm[L]``."""
    directions = f.directions[list(perm)]
    directions.setflags(write=False)
    return TetrahedronFrame(parity=f.parity, directions=directions)


@dataclass(frozen=True)
class FrameEquivalenceReport:
    images: np.ndarray
    targets: np.ndarray
    passed: tuple

    @property
    def ok(self) -> bool:
        return all(self.passed)


def verify_frame_equivalence(tol: float = 1e-12) -> FrameEquivalenceReport:
    """Check that the rotation ``O`` maps even top ``L`` onto odd top ``swap(L)``."""
    even = frame("even").directions
    odd = frame("odd").directions
    images = even @ FRAME_ROTATION.T
    targets = odd[list(LABEL_SWAP)]
    passed = tuple(bool(np.allclose(a, b, atol=tol, rtol=0)) for a, b in zip(images, targets))
    return FrameEquivalenceReport(images=images, targets=targets, passed=passed)

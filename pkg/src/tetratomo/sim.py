"""Born-rule detector statistics, noise, finite-shot sampling and estimation."""
from dataclasses import dataclass, field

import numpy as np

from .errors import NonPhysicalState, OutOfRange
from .numerics import hermitian_eigenvalues, min_eigenvalue, tensor
from .pauli import BLOCH_PAULIS, I2, bell_state, conjugate, rotation_unitary
from .sic import frame
from .wigner import (
    QuartitWigner,
    density_from_quartit_wigner,
    fidelity,
    quartit_wigner_from_joint,
)

STREAM_ALGORITHM = "numpy.random.PCG64"
STREAM_VERSION = f"{STREAM_ALGORITHM}/numpy-{np.__version__}"
ZERO_SNAP = 1e-15


def rng_for(seed) -> np.random.Generator:
    """Generator used for all sampling; the algorithm is recorded as ``STREAM_VERSION``."""
    return np.random.Generator(np.random.PCG64(seed))


@dataclass(frozen=True)
class JointProbabilityTable:
    p: np.ndarray
    parity_a: str = "even"
    parity_b: str = "even"

    def __post_init__(self):
        p = np.array(self.p, dtype=float)
        if p.shape != (4, 4):
            raise ValueError(f"joint table must be 4x4, got {p.shape}")
        if np.any(p < 0) or abs(p.sum() - 1) > 1e-9:
            raise ValueError("joint table must be nonnegative and sum to one")
        p.setflags(write=False)
        object.__setattr__(self, "p", p)

    @property
    def marginal_a(self) -> np.ndarray:
        return self.p.sum(axis=1)

    @property
    def marginal_b(self) -> np.ndarray:
        return self.p.sum(axis=0)


@dataclass(frozen=True)
class CountTable:
    counts: np.ndarray
    parity_a: str = "even"
    parity_b: str = "even"

    def __post_init__(self):
        c = np.array(self.counts, dtype=np.int64)
        if c.shape != (4, 4) or np.any(c < 0):
            raise ValueError("counts must be a 4x4 array of nonnegative integers")
        c.setflags(write=False)
        object.__setattr__(self, "counts", c)

    @property
    def shots(self) -> int:
        return int(self.counts.sum())

    def frequencies(self) -> np.ndarray:
        return self.counts / self.shots


def joint_table(rho, parity_a="even", parity_b="even", effects_a=None, effects_b=None) -> JointProbabilityTable:
    """``P_kl = Tr(rho E_k (x) F_l)`` for the two local frames.

    ``effects_a``/``effects_b`` override the canonical frame effects, e.g. with
    the output of :func:`misalign`.
    """
    rho = np.asarray(rho, dtype=complex)
    if min_eigenvalue(rho) < -1e-9:
        raise NonPhysicalState("joint statistics need a positive semidefinite state")
    ea = frame(parity_a).effects() if effects_a is None else effects_a
    eb = frame(parity_b).effects() if effects_b is None else effects_b
    p = np.array([[np.trace(rho @ tensor(a, b)).real for b in eb] for a in ea])
    p[np.abs(p) < ZERO_SNAP] = 0.0
    return JointProbabilityTable(p / p.sum(), parity_a, parity_b)


def werner(v: float) -> np.ndarray:
    """``v |Psi-><Psi-| + (1 - v) I/4``."""
    if not 0.0 <= v <= 1.0:
        raise OutOfRange(f"Werner visibility must lie in [0, 1], got {v}")
    return v * bell_state((0, 0)) + (1 - v) * np.eye(4) / 4


def with_white_noise(rho, v: float) -> np.ndarray:
    if not 0.0 <= v <= 1.0:
        raise OutOfRange(f"visibility must lie in [0, 1], got {v}")
    return v * np.asarray(rho, dtype=complex) + (1 - v) * np.eye(4) / 4


def depolarize(rho, p_a: float = 0.0, p_b: float = 0.0) -> np.ndarray:
    """Independent single-qubit depolarizing channels of strengths ``p_a``, ``p_b``."""
    rho = np.asarray(rho, dtype=complex)
    for p, side in ((p_a, 0), (p_b, 1)):
        if not 0.0 <= p <= 1.0:
            raise OutOfRange(f"depolarizing strength must lie in [0, 1], got {p}")
        kraus_terms = [tensor(s, I2) if side == 0 else tensor(I2, s) for s in BLOCH_PAULIS]
        rho = (1 - 3 * p / 4) * rho + (p / 4) * sum(k @ rho @ k.conj().T for k in kraus_terms)
    return rho


def misalign(parity: str, axis, angle: float) -> list:
    """Frame effects conjugated by the rotation about ``axis`` by ``angle``."""
    u = rotation_unitary(axis, angle)
    return [conjugate(u, e) for e in frame(parity).effects()]


def sample_counts(table: JointProbabilityTable, shots: int, seed) -> CountTable:
    """Multinomial draw of ``shots`` coincidences over the 16 detector pairs."""
    if shots < 1:
        raise ValueError("shots must be at least 1")
    p = table.p.ravel()
    counts = rng_for(seed).multinomial(shots, p / p.sum())
    return CountTable(counts.reshape(4, 4), table.parity_a, table.parity_b)


@dataclass(frozen=True)
class Estimate:
    W_hat: QuartitWigner
    rho_hat: np.ndarray = field(repr=False)
    eigenvalues: tuple
    shots: int

    @property
    def min_eigenvalue(self) -> float:
        return self.eigenvalues[0]

    def fidelity_vs(self, ref) -> float:
        return fidelity(self.W_hat, ref)


def estimate(counts: CountTable, parities=None) -> Estimate:
    """Linear-inversion estimate from coincidence counts.

    The reconstructed operator is reported as is, even when sampling noise
    leaves it with a negative eigenvalue.
    """
    parities = (counts.parity_a, counts.parity_b) if parities is None else tuple(parities)
    W_hat = quartit_wigner_from_joint(counts.frequencies(), parities)
    rho_hat = density_from_quartit_wigner(W_hat, *parities)
    return Estimate(W_hat, rho_hat, tuple(hermitian_eigenvalues(rho_hat)), counts.shots)

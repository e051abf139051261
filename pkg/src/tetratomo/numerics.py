"""Small dense complex matrix kernel for dimensions 2 and 4.

Matrices are plain ``numpy`` complex arrays; the helpers here validate shape,
finiteness and hermiticity, and provide a dependency-free eigenvalue routine
(closed form for 2x2, cyclic Jacobi for 4x4).
"""
import math

import numpy as np

from .errors import DimensionMismatch, NotHermitian

HERMITIAN_TOL = 1e-12
EIGEN_TOL = 1e-10

_ALLOWED_DIMS = (2, 4)


def as_matrix(m, dims=_ALLOWED_DIMS):
    """Return ``m`` as a complex square array, checking dimension and finiteness."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] not in dims:
        raise DimensionMismatch(f"expected a square matrix of dimension {dims}, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise DimensionMismatch("matrix entries must be finite")
    return a


def identity(dim: int) -> np.ndarray:
    return np.eye(dim, dtype=complex)


def adjoint(m) -> np.ndarray:
    return as_matrix(m).conj().T


def trace(m) -> complex:
    return complex(np.trace(as_matrix(m)))


def hermiticity_error(m) -> float:
    a = as_matrix(m)
    return float(np.max(np.abs(a - a.conj().T)))


def is_hermitian(m, tol: float = HERMITIAN_TOL) -> bool:
    return hermiticity_error(m) <= tol


def tensor(a, b) -> np.ndarray:
    """Kronecker product of two qubit operators.

    Entry ``(2i+k, 2j+l)`` of the result is ``a[i, j] * b[k, l]``.
    """
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape != (2, 2) or b.shape != (2, 2):
        raise DimensionMismatch("tensor expects two 2x2 operators")
    return np.kron(a, b)


def partial_trace(rho, keep: str) -> np.ndarray:
    """Reduced 2x2 operator of a 4x4 operator; ``keep`` is ``"a"`` or ``"b"``."""
    r = as_matrix(rho, dims=(4,)).reshape(2, 2, 2, 2)
    if keep == "a":
        return np.einsum("ikjk->ij", r)
    if keep == "b":
        return np.einsum("kikj->ij", r)
    raise ValueError(f"keep must be 'a' or 'b', not {keep!r}")


def _eig2(a: np.ndarray) -> list:
    p = a[0, 0].real
    q = a[1, 1].real
    mean = 0.5 * (p + q)
    r = math.hypot(0.5 * (p - q), abs(a[0, 1]))
    return [mean - r, mean + r]


def _jacobi_symmetric(s: np.ndarray, sweeps: int = 64) -> np.ndarray:
    # cyclic Jacobi on a real symmetric matrix; returns its diagonal after convergence
    s = s.copy()
    n = s.shape[0]
    scale = max(float(np.max(np.abs(s))), 1.0)
    for _ in range(sweeps):
        off = math.sqrt(float(np.sum(np.triu(s, 1) ** 2)))
        if off <= 1e-17 * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = s[p, q]
                if abs(apq) <= 1e-18 * scale:
                    s[p, q] = s[q, p] = 0.0
                    continue
                tau = (s[q, q] - s[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, tau) / (abs(tau) + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                sn = t * c
                rot = np.eye(n)
                rot[p, p] = c
                rot[q, q] = c
                rot[p, q] = sn
                rot[q, p] = -sn
                s = rot.T @ s @ rot
                s[p, q] = s[q, p] = 0.0
    return np.diag(s).copy()


def hermitian_eigenvalues(m) -> list:
    """Ascending real eigenvalues of a Hermitian 2x2 or 4x4 matrix.

    A 4x4 complex Hermitian ``H = A + iB`` is embedded as the real symmetric
    8x8 block matrix ``[[A, -B], [B, A]]`` whose spectrum is that of ``H`` with
    every eigenvalue doubled; cyclic Jacobi rotations diagonalize it.

    >>> hermitian_eigenvalues([[1, 0], [0, -1]])
    [-1.0, 1.0]
    """
    a = as_matrix(m)
    err = hermiticity_error(a)
    if err > HERMITIAN_TOL:
        raise NotHermitian(f"max |m - m^H| = {err:.3e} exceeds {HERMITIAN_TOL}")
    a = 0.5 * (a + a.conj().T)
    if a.shape[0] == 2:
        return _eig2(a)
    re, im = a.real, a.imag
    embedded = np.block([[re, -im], [im, re]])
    doubled = np.sort(_jacobi_symmetric(embedded))
    return [float(x) for x in doubled[::2]]


def min_eigenvalue(m) -> float:
    return hermitian_eigenvalues(m)[0]

"""Dense complex linear algebra and spin operators.

Matrices, state vectors and density matrices are plain ``complex128``
numpy arrays. The helpers here validate them and provide the Hermitian
eigensolver, the unitary propagator and positive semidefinite roots
used throughout the package.

Basis conventions: spin-1/2 ordered (up, down), spin-1 ordered
(+1, 0, -1). In composite spaces the spin-1/2 index is the slow one,
``index = 3 * s + m``.
"""

from __future__ import annotations

import numpy as np

from . import kernels
from .config import TOL
from .errors import NotHermitianError

_R2 = 1.0 / np.sqrt(2.0)


def spin_half_operators():
    """Pauli matrices ``(sigma_x, sigma_y, sigma_z)``."""
    sx = np.array([[0, 1], [1, 0]], dtype=complex)
    sy = np.array([[0, -1j], [1j, 0]], dtype=complex)
    sz = np.array([[1, 0], [0, -1]], dtype=complex)
    return sx, sy, sz


def spin_one_operators():
    """Spin-1 matrices ``(S_x, S_y, S_z)`` with ``S_z = diag(1, 0, -1)``."""
    sx = _R2 * np.array([[0, 1, 0], [1, 0, 1], [0, 1, 0]], dtype=complex)
    sy = _R2 * np.array([[0, -1j, 0], [1j, 0, -1j], [0, 1j, 0]], dtype=complex)
    sz = np.diag([1.0, 0.0, -1.0]).astype(complex)
    return sx, sy, sz


def kron(a, b):
    """Kronecker product, ``a``'s index slow."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def kron_vec(u, v):
    return np.kron(np.asarray(u, dtype=complex), np.asarray(v, dtype=complex))


def commutator(a, b):
    return a @ b - b @ a


def max_abs(a) -> float:
    return float(np.max(np.abs(a))) if np.size(a) else 0.0


def is_hermitian(m, tol: float = TOL.hermitian) -> bool:
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        return False
    return max_abs(m - m.conj().T) <= tol * max(1.0, max_abs(m))


def as_hermitian(m, name: str = "matrix"):
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise NotHermitianError(f"{name} must be square, got shape {m.shape}")
    if not is_hermitian(m):
        err = max_abs(m - m.conj().T)
        raise NotHermitianError(f"{name} is not Hermitian (max|M - M^dagger| = {err:.3e})")
    return m


def as_state(psi, name: str = "state"):
    """Validate a state vector: 1-d, unit norm within tolerance."""
    psi = np.asarray(psi, dtype=complex)
    if psi.ndim != 1:
        raise ValueError(f"{name} must be a vector, got shape {psi.shape}")
    nrm = np.linalg.norm(psi)
    if abs(nrm - 1.0) > TOL.norm:
        raise ValueError(f"{name} is not normalised (norm = {nrm!r})")
    return psi


def normalize(psi):
    psi = np.asarray(psi, dtype=complex)
    nrm = np.linalg.norm(psi)
    if nrm == 0.0:
        raise ValueError("cannot normalise the zero vector")
    return psi / nrm


def as_density(rho, name: str = "rho"):
    """Validate a density matrix: Hermitian, unit trace, PSD within tolerance."""
    rho = as_hermitian(rho, name)
    tr = np.trace(rho)
    if abs(tr - 1.0) > TOL.trace:
        raise ValueError(f"{name} has trace {tr!r}, expected 1")
    lo = float(np.min(np.linalg.eigvalsh(rho)))
    if lo < -TOL.psd:
        raise ValueError(f"{name} has negative eigenvalue {lo:.3e}")
    return rho


def _fix_gauge(vecs):
    # Largest-magnitude component real positive; argmax picks the lowest index on ties.
    out = vecs.copy()
    for k in range(out.shape[1]):
        col = out[:, k]
        mags = np.abs(col)
        idx = int(np.argmax(mags >= mags.max() * (1.0 - 1e-12)))
        out[:, k] = col * (abs(col[idx]) / col[idx])
    return out


def hermitian_eig(m):
    """Eigen-decomposition of a Hermitian matrix.

    Returns
    -------
    eigenvalues : ndarray of float, ascending
    eigenvectors : ndarray, orthonormal columns, gauge fixed so each
        column's largest-magnitude entry is real and positive
    """
    m = as_hermitian(m)
    m = 0.5 * (m + m.conj().T)
    w, v = kernels.eigh_raw(np.ascontiguousarray(m))
    order = np.argsort(w, kind="stable")
    return np.asarray(w)[order], _fix_gauge(np.asarray(v)[:, order])


def unitary_from_eig(w, v, t: float):
    return (v * np.exp(-1j * w * t)) @ v.conj().T


def matrix_exp_unitary(h, t: float):
    """``exp(-i t H)`` built from the eigendecomposition of ``H``."""
    w, v = hermitian_eig(h)
    return unitary_from_eig(w, v, t)


def psd_root(rho, l: int):
    """Hermitian PSD ``l``-th root ``R`` with ``R**l == rho``.

    Eigenvalues in ``[-1e-12, 0)`` are clamped to zero; anything more
    negative raises ``ValueError``.
    """
    if int(l) != l or l < 1:
        raise ValueError(f"root order must be a positive integer, got {l!r}")
    w, v = hermitian_eig(rho)
    if w.min() < -TOL.psd:
        raise ValueError(f"matrix is not positive semidefinite (min eigenvalue {w.min():.3e})")
    if l == 1:
        return np.array(rho, dtype=complex)
    w = np.clip(w, 0.0, None)
    return (v * w ** (1.0 / l)) @ v.conj().T

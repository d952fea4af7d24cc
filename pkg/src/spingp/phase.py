"""Geometric phases for cyclic unitary evolution.

Phases are reported as angles, but every comparison in this package is
done on unit phase factors: the angles are branch-dependent, the factors
are not.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import kernels
from .config import TOL
from .errors import GpUndefinedError
from .model import GroundSpace, validate_weights
from .spin_algebra import (as_hermitian, as_state, hermitian_eig, max_abs, psd_root,
                           unitary_from_eig)

TWO_PI = 2.0 * math.pi
DEFAULT_STEPS = 1024


def wrap_phase(x: float) -> float:
    """Representative of ``x`` in ``[0, 2 pi)``."""
    r = math.fmod(x, TWO_PI)
    if r < 0.0:
        r += TWO_PI
    # + 0.0 turns -0.0 into 0.0
    return 0.0 if r >= TWO_PI else r + 0.0


def factor_distance(a: complex, b: complex) -> float:
    return abs(a - b)


@dataclass(frozen=True)
class PhaseResult:
    gamma_total: float
    gamma_dynamical: float
    gamma_geometric: float
    phase_factor: complex
    overlap_magnitude: float


@dataclass(frozen=True)
class GpFactor:
    value: complex
    magnitude_before_normalization: float
    order: int = 1

    @property
    def gamma(self) -> float:
        return wrap_phase(cmath.phase(self.value))


def phase_normalize(z: complex) -> complex:
    """``z / |z|``; raises ``GpUndefinedError`` below ``|z| = 1e-10``."""
    z = complex(z)
    if abs(z) < TOL.gp_undefined:
        raise GpUndefinedError(f"|z| = {abs(z):.3e} is below {TOL.gp_undefined:g}; phase undefined")
    return z / abs(z)


def _result(gamma_total, gamma_dynamical, overlap):
    gg = wrap_phase(gamma_total - gamma_dynamical)
    return PhaseResult(gamma_total, gamma_dynamical, gg, cmath.exp(1j * gg), abs(overlap))


def dynamical_phase(psi0, h, T: float, steps: int = DEFAULT_STEPS, eig=None) -> float:
    """``-int_0^T <psi(t)|H|psi(t)> dt`` by composite Simpson with ``steps`` panels."""
    w, v = eig if eig is not None else hermitian_eig(h)
    integral = kernels.energy_integral(np.ascontiguousarray(w), np.ascontiguousarray(v),
                                       np.ascontiguousarray(psi0), np.ascontiguousarray(h),
                                       float(T), int(steps))
    return -float(integral)


def pure_state_gp(psi0, h, T: float, steps: int = DEFAULT_STEPS) -> PhaseResult:
    """Aharonov-Anandan phase of ``psi0`` after evolving for one period ``T``.

    The total phase is ``arg <psi0|U(T)|psi0>``; the dynamical phase is
    minus the time-integrated energy expectation.
    """
    if not T > 0:
        raise ValueError(f"period must be positive, got {T!r}")
    if int(steps) != steps or steps < 1:
        raise ValueError(f"steps must be a positive integer, got {steps!r}")
    psi0 = as_state(psi0, "psi0")
    h = as_hermitian(h, "H")
    w, v = hermitian_eig(h)
    overlap = np.vdot(psi0, unitary_from_eig(w, v, T) @ psi0)
    if abs(overlap) < TOL.gp_undefined:
        raise GpUndefinedError(f"|<psi0|U(T)|psi0>| = {abs(overlap):.3e}; geometric phase undefined")
    gamma_d = dynamical_phase(psi0, h, T, steps, eig=(w, v))
    return _result(cmath.phase(overlap), gamma_d, overlap)


def reduced_gp_commuting(psi0, h1, T: float, gs: Optional[GroundSpace] = None) -> PhaseResult:
    """Geometric phase from the perturbation alone, for ``[H0, H1] = 0``.

    ``arg <psi0|exp(-i H1 T)|psi0> + T <psi0|H1|psi0>``. When ``gs`` is
    given, ``psi0`` must lie in its span.
    """
    if not T > 0:
        raise ValueError(f"period must be positive, got {T!r}")
    psi0 = as_state(psi0, "psi0")
    h1 = as_hermitian(h1, "H1")
    if gs is not None:
        leak = np.linalg.norm(psi0 - gs.projector() @ psi0)
        if leak > TOL.ground_space:
            raise ValueError(f"psi0 leaves the ground space (residual {leak:.3e})")
    w, v = hermitian_eig(h1)
    overlap = np.vdot(psi0, unitary_from_eig(w, v, T) @ psi0)
    if abs(overlap) < TOL.gp_undefined:
        raise GpUndefinedError(f"|<psi0|exp(-i H1 T)|psi0>| = {abs(overlap):.3e}; phase undefined")
    mean = float(np.vdot(psi0, h1 @ psi0).real)
    return _result(cmath.phase(overlap), -mean * T, overlap)


def parallel_transport_operator(gs: GroundSpace, h1, T: float):
    """Parallel-transport unitary on the ground space, identity off it."""
    h1 = as_hermitian(h1, "H1")
    b = gs.basis
    diag = np.einsum("ik,ij,jk->k", b.conj(), h1, b).real
    phases = np.exp(1j * (gs.energy + diag) * T)
    n = h1.shape[0]
    return (b * phases) @ b.conj().T + (np.eye(n) - b @ b.conj().T)


def mixed_gp_factor(weights: Sequence[float], gs: GroundSpace, h1, T: float) -> GpFactor:
    """Diagonal geometric phase factor of a ground-basis-diagonal mixture."""
    if not T > 0:
        raise ValueError(f"period must be positive, got {T!r}")
    p = validate_weights(weights, gs.degeneracy)
    h1 = as_hermitian(h1, "H1")
    w, v = hermitian_eig(h1)
    u1 = unitary_from_eig(w, v, T)
    b = gs.basis
    returns = np.einsum("ik,ij,jk->k", b.conj(), u1, b)
    means = np.einsum("ik,ij,jk->k", b.conj(), h1, b).real
    z = complex(np.sum(p * returns * np.exp(1j * T * means)))
    return GpFactor(phase_normalize(z), abs(z), 1)


def off_diagonal_gp_factor(l: int, rhos: Sequence, u, vs: Sequence) -> GpFactor:
    """Order-``l`` phase factor ``Phi[Tr prod_a (U V_a rho_a^(1/l))]``.

    ``l = 1`` gives the diagonal mixed-state factor.
    """
    if int(l) != l or l < 1:
        raise ValueError(f"order must be a positive integer, got {l!r}")
    if len(rhos) != l or len(vs) != l:
        raise ValueError(f"need {l} density matrices and {l} transport operators, "
                         f"got {len(rhos)} and {len(vs)}")
    u = np.asarray(u, dtype=complex)
    n = u.shape[0]
    if max_abs(u.conj().T @ u - np.eye(n)) > TOL.eigen_residual:
        raise ValueError("U is not unitary")
    prod = np.eye(n, dtype=complex)
    for rho, vpar in zip(rhos, vs):
        vpar = np.asarray(vpar, dtype=complex)
        if max_abs(vpar.conj().T @ vpar - np.eye(n)) > TOL.eigen_residual:
            raise ValueError("transport operator is not unitary")
        prod = prod @ u @ vpar @ psd_root(rho, l)
    z = complex(np.trace(prod))
    return GpFactor(phase_normalize(z), abs(z), int(l))

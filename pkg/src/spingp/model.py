"""Spin-1 / spin-1/2 anisotropic Heisenberg pair.

H = H0 + H1 with
    H0 = (J/2) (sx Sx + sy Sy + delta sz Sz)
    H1 = B (sz/2 + Sz)
on the six-dimensional product space. H0 and H1 commute.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .config import TOL
from .spin_algebra import hermitian_eig, kron, max_abs, spin_half_operators, spin_one_operators

DIM = 6

# Product-basis labels and indices, index = 3 * s + m.
BASIS_LABELS = ("up,+1", "up,0", "up,-1", "down,+1", "down,0", "down,-1")
UP_PLUS, UP_ZERO, UP_MINUS, DOWN_PLUS, DOWN_ZERO, DOWN_MINUS = range(DIM)


def product_state(index: int):
    v = np.zeros(DIM, dtype=complex)
    v[index] = 1.0
    return v


@dataclass(frozen=True)
class ModelParams:
    J: float
    delta: float
    B: float = 0.0


class Regime(enum.Enum):
    ALIGNED_PAIR = "ALIGNED_PAIR"
    ENTANGLED_PAIR = "ENTANGLED_PAIR"
    FOURFOLD_CRITICAL = "FOURFOLD_CRITICAL"

    @property
    def label(self) -> str:
        return self.value

    @property
    def degeneracy(self) -> int:
        return 4 if self is Regime.FOURFOLD_CRITICAL else 2


@dataclass(frozen=True)
class GroundSpace:
    """Degenerate ground space of H0.

    ``basis`` holds the orthonormal ground vectors as columns.
    """

    energy: float
    basis: np.ndarray
    regime: Optional[Regime] = None

    @property
    def degeneracy(self) -> int:
        return self.basis.shape[1]

    @property
    def vectors(self):
        return [self.basis[:, k] for k in range(self.degeneracy)]

    def projector(self):
        return self.basis @ self.basis.conj().T


@dataclass(frozen=True)
class InitialStateSpec:
    """Initial-state description.

    Two-fold pure states use ``thetas=(theta,)``, ``phis=(phi,)``;
    four-fold pure states use three of each; mixed states set ``weights``.
    """

    thetas: tuple = ()
    phis: tuple = ()
    weights: Optional[tuple] = None

    @classmethod
    def twofold(cls, theta: float, phi: float = 0.0):
        return cls((float(theta),), (float(phi),))

    @classmethod
    def fourfold(cls, theta1, theta2, theta3, phi1=0.0, phi2=0.0, phi3=0.0):
        return cls((float(theta1), float(theta2), float(theta3)),
                   (float(phi1), float(phi2), float(phi3)))

    @classmethod
    def mixed(cls, weights: Sequence[float]):
        return cls(weights=tuple(float(w) for w in weights))

    @property
    def is_mixed(self) -> bool:
        return self.weights is not None

    @property
    def arity(self) -> int:
        return len(self.thetas) + len(self.phis)


def build_h0(params: ModelParams):
    sx, sy, sz = spin_half_operators()
    Sx, Sy, Sz = spin_one_operators()
    return 0.5 * params.J * (kron(sx, Sx) + kron(sy, Sy) + params.delta * kron(sz, Sz))


def build_h1(params: ModelParams):
    _, _, sz = spin_half_operators()
    _, _, Sz = spin_one_operators()
    return params.B * (0.5 * kron(sz, np.eye(3)) + kron(np.eye(2), Sz))


def build_h(params: ModelParams):
    return build_h0(params) + build_h1(params)


def classify_regime(J: float, delta: float) -> Regime:
    """Ground-space structure of H0 for coupling ``J`` and anisotropy ``delta``.

    The critical anisotropy is -1 for J > 0 and +1 for J < 0; it is
    matched with an absolute tolerance of 1e-12 only.
    """
    if J == 0:
        raise ValueError("J = 0: uncoupled spins, ground space is not classified")
    crit = -1.0 if J > 0 else 1.0
    if abs(delta - crit) <= TOL.critical:
        return Regime.FOURFOLD_CRITICAL
    if J > 0:
        return Regime.ALIGNED_PAIR if delta < crit else Regime.ENTANGLED_PAIR
    return Regime.ALIGNED_PAIR if delta > crit else Regime.ENTANGLED_PAIR


def _entangled_pair(J: float, delta: float):
    root = math.sqrt(delta * delta + 8.0)
    c = 2.0 * math.sqrt(2.0)
    if J > 0:
        v1 = product_state(DOWN_ZERO) - (delta + root) / c * product_state(UP_MINUS)
        v2 = product_state(DOWN_PLUS) + (delta - root) / c * product_state(UP_ZERO)
    else:
        v1 = (root - delta) / c * product_state(UP_MINUS) + product_state(DOWN_ZERO)
        v2 = (root + delta) / c * product_state(UP_ZERO) + product_state(DOWN_PLUS)
    return v1 / np.linalg.norm(v1), v2 / np.linalg.norm(v2)


def ground_energy(J: float, delta: float) -> float:
    regime = classify_regime(J, delta)
    if regime is Regime.ALIGNED_PAIR:
        return delta * J / 2.0
    if regime is Regime.FOURFOLD_CRITICAL:
        return -abs(J) / 2.0
    sign = -1.0 if J > 0 else 1.0
    return (-delta + sign * math.sqrt(8.0 + delta * delta)) * J / 4.0


def analytic_ground_basis(params: ModelParams, check: bool = True) -> GroundSpace:
    """Closed-form ground basis of H0 (the field B is ignored).

    Vectors keep the sign conventions of the closed forms; no gauge fixing
    is applied. With ``check`` the result is compared against the numeric
    spectrum of H0 and a ``RuntimeError`` is raised on mismatch.
    """
    J, delta = params.J, params.delta
    regime = classify_regime(J, delta)
    if regime is Regime.ALIGNED_PAIR:
        vecs = [product_state(UP_PLUS), product_state(DOWN_MINUS)]
    elif regime is Regime.ENTANGLED_PAIR:
        vecs = list(_entangled_pair(J, delta))
    else:
        vecs = [*_entangled_pair(J, delta), product_state(UP_PLUS), product_state(DOWN_MINUS)]
    gs = GroundSpace(ground_energy(J, delta), np.column_stack(vecs), regime)
    if check:
        _check_ground_space(gs, build_h0(ModelParams(J, delta, 0.0)))
    return gs


def _check_ground_space(gs: GroundSpace, h0):
    w, _ = hermitian_eig(h0)
    scale = max(1.0, abs(gs.energy))
    if abs(w[0] - gs.energy) > TOL.ground_space * scale:
        raise RuntimeError(f"analytic ground energy {gs.energy!r} differs from numeric {w[0]!r}")
    resid = h0 @ gs.basis - gs.energy * gs.basis
    if max_abs(resid) > TOL.ground_space * scale:
        raise RuntimeError(f"analytic ground vectors are not eigenvectors (residual {max_abs(resid):.3e})")
    gram = gs.basis.conj().T @ gs.basis
    if max_abs(gram - np.eye(gs.degeneracy)) > TOL.norm:
        raise RuntimeError("analytic ground basis is not orthonormal")


def numeric_ground_space(h0, tol: float = TOL.degeneracy) -> GroundSpace:
    """Ground space read off the numeric spectrum, levels grouped within ``tol``."""
    w, v = hermitian_eig(h0)
    deg = int(np.sum(w - w[0] <= tol * max(1.0, abs(w[0]))))
    return GroundSpace(float(np.mean(w[:deg])), v[:, :deg], None)


def pure_amplitudes(spec: InitialStateSpec):
    if spec.is_mixed:
        raise ValueError("mixed-state spec has no pure amplitudes")
    if len(spec.thetas) == 1 and len(spec.phis) == 1:
        (th,), (ph,) = spec.thetas, spec.phis
        return np.array([math.cos(th), math.sin(th) * np.exp(1j * ph)])
    if len(spec.thetas) == 3 and len(spec.phis) == 3:
        t1, t2, t3 = spec.thetas
        p1, p2, p3 = spec.phis
        s1, s2 = math.sin(t1), math.sin(t2)
        return np.array([
            s1 * s2 * math.cos(t3),
            s1 * s2 * math.sin(t3) * np.exp(1j * p1),
            s1 * math.cos(t2) * np.exp(1j * p2),
            math.cos(t1) * np.exp(1j * p3),
        ])
    raise ValueError(f"expected 2 or 6 angles, got {spec.arity}")


def initial_pure_state(gs: GroundSpace, spec: InitialStateSpec):
    """Superposition of the ground basis with angle-parametrised amplitudes.

    Two angles (theta, phi) for a two-fold space, six for the four-fold
    space ordered like ``analytic_ground_basis``.
    """
    expected = {2: 2, 4: 6}.get(gs.degeneracy)
    if spec.is_mixed or spec.arity != expected:
        raise ValueError(
            f"{gs.degeneracy}-fold ground space needs {expected} angles, got {spec.arity}"
            + (" (mixed weights supplied)" if spec.is_mixed else ""))
    psi = gs.basis @ pure_amplitudes(spec)
    return psi / np.linalg.norm(psi)


def validate_weights(weights: Sequence[float], count: Optional[int] = None):
    """Probabilities as an array; a sum off by at most 1e-12 is renormalised."""
    p = np.asarray(weights, dtype=float)
    if p.ndim != 1:
        raise ValueError("weights must be a flat sequence")
    if count is not None and p.size != count:
        raise ValueError(f"expected {count} weights, got {p.size}")
    if np.any(p < 0) or not np.all(np.isfinite(p)):
        raise ValueError(f"weights must be finite and non-negative: {p.tolist()}")
    total = p.sum()
    if abs(total - 1.0) > TOL.weight_sum:
        raise ValueError(f"weights sum to {total!r}, expected 1")
    return p / total


def initial_mixed_state(gs: GroundSpace, weights: Sequence[float]):
    p = validate_weights(weights, gs.degeneracy)
    return (gs.basis * p) @ gs.basis.conj().T

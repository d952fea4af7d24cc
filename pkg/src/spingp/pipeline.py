"""End-to-end evaluation: model -> initial state -> period -> phase."""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .closed_form import ClosedFormInput, gp_closed_form, mixed_gp_closed_form
from .config import TOL
from .errors import IncommensurateError, NoDriveError
from .evolution import CyclicPeriod, cyclic_period, evolve_density
from .model import (InitialStateSpec, ModelParams, Regime, analytic_ground_basis, build_h0,
                    build_h1, initial_mixed_state, initial_pure_state)
from .phase import DEFAULT_STEPS, mixed_gp_factor, pure_state_gp
from .spin_algebra import max_abs


@dataclass(frozen=True)
class GpOutcome:
    regime: Regime
    period: CyclicPeriod
    gamma_total: Optional[float]
    gamma_dynamical: Optional[float]
    gamma_geometric: float
    closed_form: float

    @property
    def T(self) -> float:
        return self.period.T

    @property
    def phase_factor(self) -> complex:
        return cmath.exp(1j * self.gamma_geometric)

    @property
    def abs_error(self) -> float:
        """Distance between numeric and closed-form unit phase factors."""
        return abs(self.phase_factor - cmath.exp(1j * self.closed_form))


def drive_period(gs, h0, h1, n: int = 1) -> CyclicPeriod:
    """Cyclic period of the whole ground space under the drive.

    Every state prepared in the ground space returns to itself after this
    time, though states with fewer populated levels may return sooner.
    """
    psi = gs.basis.sum(axis=1) / np.sqrt(gs.degeneracy)
    return cyclic_period(np.outer(psi, psi.conj()), h1, n, h0=h0)


def _check_cyclic(rho0, h, T):
    resid = max_abs(evolve_density(rho0, h, T) - rho0)
    if resid > TOL.period_check:
        raise IncommensurateError(f"state does not return at T = {T!r} (residual {resid:.3e})")


def run_gp(params: ModelParams, spec: InitialStateSpec, n: int = 1,
           steps: int = DEFAULT_STEPS) -> GpOutcome:
    """Geometric phase of the prepared ground-space state after one driven period.

    The evolution time is the drive period of the regime's ground space
    (``drive_period``), the time at which the closed forms are stated.
    Mixed states report no total or dynamical phase: their phase factor
    is not a difference of the two. Without a field every ground state is
    stationary and no driven period exists, so ``NoDriveError`` is raised.
    """
    gs = analytic_ground_basis(params)
    h0, h1 = build_h0(params), build_h1(params)
    if max_abs(h1) <= TOL.stationary:
        raise NoDriveError("B = 0: the ground space is stationary and has no driven period")
    period = drive_period(gs, h0, h1, n)
    if spec.is_mixed:
        rho0 = initial_mixed_state(gs, spec.weights)
        _check_cyclic(rho0, h0 + h1, period.T)
        factor = mixed_gp_factor(spec.weights, gs, h1, period.T)
        return GpOutcome(gs.regime, period, None, None, factor.gamma,
                         mixed_gp_closed_form(gs.regime))
    psi0 = initial_pure_state(gs, spec)
    _check_cyclic(np.outer(psi0, psi0.conj()), h0 + h1, period.T)
    res = pure_state_gp(psi0, h0 + h1, period.T, steps)
    cf = gp_closed_form(ClosedFormInput(gs.regime, spec.thetas, 1 if params.J > 0 else -1))
    return GpOutcome(gs.regime, period, res.gamma_total, res.gamma_dynamical,
                     res.gamma_geometric, cf)

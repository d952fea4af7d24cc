"""Geometric phases of a driven spin-1 / spin-1/2 Heisenberg pair."""

from .closed_form import ClosedFormInput, gp_closed_form, mixed_gp_closed_form
from .config import TOL, Tolerances
from .errors import GpUndefinedError, IncommensurateError, NoDriveError, NumericError
from .evolution import CyclicPeriod, PeriodMethod, cyclic_period, evolve_density, evolve_pure
from .kernels import BACKEND
from .model import (GroundSpace, InitialStateSpec, ModelParams, Regime, analytic_ground_basis,
                    build_h, build_h0, build_h1, classify_regime, initial_mixed_state,
                    initial_pure_state)
from .phase import (GpFactor, PhaseResult, mixed_gp_factor, off_diagonal_gp_factor,
                    parallel_transport_operator, phase_normalize, pure_state_gp,
                    reduced_gp_commuting)
from .pipeline import run_gp
from .spin_algebra import (hermitian_eig, kron, matrix_exp_unitary, psd_root, spin_half_operators,
                           spin_one_operators)

__version__ = "0.1.0"

"""Numerical tolerances shared by every module."""

from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    hermitian: float = 1e-12      # relative to max(1, max|M|)
    norm: float = 1e-12
    trace: float = 1e-12
    psd: float = 1e-12            # most negative eigenvalue clamped to zero
    critical: float = 1e-12       # |delta -+ 1| for the four-fold point
    weight_sum: float = 1e-12
    support: float = 1e-12        # population threshold for the period support
    stationary: float = 1e-12     # max|[rho0, H]| below which nothing evolves
    commensurate: float = 1e-9
    denominator_cap: int = 10**6
    period_check: float = 1e-9    # max|rho(T) - rho(0)|
    gp_undefined: float = 1e-10   # overlap / trace magnitude floor
    eigen_residual: float = 1e-10
    ground_space: float = 1e-10   # energy match for analytic ground vectors
    degeneracy: float = 1e-9      # level grouping in spectra


TOL = Tolerances()

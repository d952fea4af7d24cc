"""Unitary propagation and cyclic periods."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .config import TOL
from .errors import IncommensurateError, NoDriveError
from .spin_algebra import (as_density, as_hermitian, as_state, commutator, hermitian_eig,
                           matrix_exp_unitary, max_abs)


class PeriodMethod(enum.Enum):
    ANALYTIC_COMMENSURATE = "ANALYTIC_COMMENSURATE"
    NUMERIC_SCAN = "NUMERIC_SCAN"


@dataclass(frozen=True)
class CyclicPeriod:
    T: float
    n: int
    method: PeriodMethod
    stationary: bool = False
    residual: float = 0.0


def _check_dims(h, n, what):
    if h.shape[0] != n:
        raise ValueError(f"{what} has dimension {n} but the Hamiltonian is {h.shape[0]}x{h.shape[1]}")


def evolve_pure(psi0, h, t: float):
    psi0 = as_state(psi0, "psi0")
    h = as_hermitian(h, "H")
    _check_dims(h, psi0.shape[0], "psi0")
    return matrix_exp_unitary(h, t) @ psi0


def evolve_density(rho0, h, t: float):
    rho0 = np.asarray(rho0, dtype=complex)
    h = as_hermitian(h, "H")
    if rho0.ndim != 2:
        raise ValueError("rho0 must be a matrix")
    _check_dims(h, rho0.shape[0], "rho0")
    u = matrix_exp_unitary(h, t)
    return u @ rho0 @ u.conj().T


def rationalize(x: float, tol: float = TOL.commensurate, max_den: int = TOL.denominator_cap):
    """Smallest-denominator continued-fraction convergent within ``tol`` of ``x``.

    Tolerance is relative to ``max(1, |x|)``. Returns ``None`` when no
    convergent with denominator up to ``max_den`` is close enough.
    """
    target = tol * max(1.0, abs(x))
    h_prev, h = 1, math.floor(x)
    k_prev, k = 0, 1
    rem = x - math.floor(x)
    while True:
        if abs(x - h / k) <= target:
            return Fraction(h, k)
        if rem == 0.0:
            return None
        rem = 1.0 / rem
        a = math.floor(rem)
        rem -= a
        h_prev, h = h, a * h + h_prev
        k_prev, k = k, a * k + k_prev
        if k > max_den:
            return None


def _fraction_gcd(fracs):
    num = 0
    den = 1
    for f in fracs:
        num = math.gcd(num, f.numerator)
        den = den * f.denominator // math.gcd(den, f.denominator)
    return Fraction(num, den)


def frequency_gcd(diffs):
    """Largest ``g`` with every positive ``d`` an integer multiple of ``g``."""
    diffs = sorted(diffs)
    ref = diffs[0]
    ratios = []
    for d in diffs:
        r = rationalize(d / ref)
        if r is None:
            raise IncommensurateError(
                f"frequency ratio {d / ref!r} is not rational within tolerance")
        ratios.append(r)
    return ref * float(_fraction_gcd(ratios))


def cyclic_period(rho0, h1, n: int = 1, h0=None) -> CyclicPeriod:
    """``n``-th multiple of the smallest T > 0 with ``rho(T) == rho0``.

    Only H1 levels populated by ``rho0`` (population above 1e-12)
    constrain T. Pass ``h0`` when the full Hamiltonian should be used for
    the stationarity test and the final ``rho(T) == rho0`` check; for a
    ``rho0`` inside a degenerate H0 eigenspace the result is the same.

    A ``rho0`` that commutes with the Hamiltonian never moves. Any T is
    then cyclic; the convention ``2 pi n / max|h|`` is returned with
    ``stationary=True``.
    """
    if int(n) != n or n < 1:
        raise ValueError(f"winding index must be a positive integer, got {n!r}")
    n = int(n)
    rho0 = as_density(rho0, "rho0")
    h1 = as_hermitian(h1, "H1")
    _check_dims(h1, rho0.shape[0], "rho0")
    h = h1 if h0 is None else as_hermitian(h0, "H0") + h1

    w, v = hermitian_eig(h1)
    hmax = float(np.max(np.abs(w)))
    if max_abs(commutator(rho0, h)) <= TOL.stationary:
        T = 2.0 * math.pi * n / hmax if hmax > TOL.stationary else 2.0 * math.pi * n
        return CyclicPeriod(T, n, PeriodMethod.NUMERIC_SCAN, stationary=True)
    if hmax <= TOL.stationary:
        raise NoDriveError("H1 vanishes but rho0 is not stationary: no finite driven period")

    pops = np.real(np.einsum("ki,kl,li->i", v.conj(), rho0, v))
    levels = w[pops > TOL.support]
    gaps = np.abs(levels[:, None] - levels[None, :])
    gaps = gaps[gaps > TOL.stationary * max(1.0, hmax)]
    if gaps.size == 0:
        raise ValueError("rho0 evolves, but not under H1; the period is undefined here")
    g = frequency_gcd(gaps.tolist())
    T = 2.0 * math.pi * n / g

    resid = max_abs(evolve_density(rho0, h, T) - rho0)
    if resid > TOL.period_check:
        raise IncommensurateError(
            f"rho(T) differs from rho0 by {resid:.3e} at T = {T!r}; frequencies are not commensurate")
    return CyclicPeriod(T, n, PeriodMethod.ANALYTIC_COMMENSURATE, residual=resid)

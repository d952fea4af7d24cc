"""Regression and invariant checks behind ``spingp verify``.

Each criterion function returns a list of :class:`Check` rows holding the
worst deviation found and the tolerance it must stay under. All random
inputs come from fixed seeds so reports are byte-identical across runs.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass
from typing import Callable, Dict, List

import numpy as np

from .closed_form import ClosedFormInput, fourfold_gp, gp_closed_form
from .evolution import cyclic_period
from .model import (InitialStateSpec, ModelParams, Regime, analytic_ground_basis, build_h0,
                    build_h1, classify_regime, initial_mixed_state, initial_pure_state,
                    numeric_ground_space)
from .phase import (dynamical_phase, mixed_gp_factor, off_diagonal_gp_factor,
                    parallel_transport_operator, pure_state_gp, reduced_gp_commuting)
from .pipeline import drive_period, run_gp
from .spin_algebra import commutator, matrix_exp_unitary, max_abs

HALF_PI = 0.5 * math.pi
THETA_GRID = np.linspace(0.0, HALF_PI, 25)
PHI_VALUES = (0.0, math.pi / 3.0, 1.7)
FIELDS = (0.5, 1.0, 2.0)
# (J, delta) for each regime and sign of J
REGIME_POINTS = ((1.0, -2.0), (1.0, 0.0), (1.0, -1.0), (-1.0, 2.0), (-1.0, 0.0), (-1.0, 1.0))


@dataclass(frozen=True)
class Check:
    criterion: int
    name: str
    expected: str
    actual: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return bool(np.isfinite(self.actual)) and self.actual <= self.tolerance


def _factor(gamma: float) -> complex:
    return cmath.exp(1j * gamma)


def _twofold_sweep(J, delta, fields, formula):
    worst = 0.0
    for B in fields:
        for theta in THETA_GRID:
            for phi in PHI_VALUES:
                out = run_gp(ModelParams(J, delta, B), InitialStateSpec.twofold(theta, phi))
                worst = max(worst, abs(out.phase_factor - _factor(formula(theta))))
    return worst


def criterion_1() -> List[Check]:
    worst = _twofold_sweep(1.0, -2.0, FIELDS, lambda th: 2 * math.pi * math.cos(th) ** 2)
    return [Check(1, "aligned pair J=1 delta=-2: factor vs exp(i 2pi cos^2 theta)",
                  "0", worst, 1e-9)]


def criterion_2() -> List[Check]:
    checks = []
    for J in (1.0, -1.0):
        worst = _twofold_sweep(J, 0.0, FIELDS, lambda th: 2 * math.pi * math.sin(th) ** 2)
        checks.append(Check(2, f"entangled pair J={J:g} delta=0: factor vs exp(i 2pi sin^2 theta)",
                            "0", worst, 1e-9))
        rel = 0.0
        for B in FIELDS:
            out = run_gp(ModelParams(J, 0.0, B), InitialStateSpec.twofold(0.6, 0.2))
            rel = max(rel, abs(out.T - 2 * math.pi / B) / (2 * math.pi / B))
        checks.append(Check(2, f"entangled pair J={J:g}: period vs 2pi/B (relative)", "0", rel, 1e-12))
    return checks


def criterion_3() -> List[Check]:
    grid = np.linspace(0.0, HALF_PI, 5)
    worst = 0.0
    params = ModelParams(1.0, -1.0, 1.0)
    for t1, t2, t3 in itertools.product(grid, grid, grid):
        for p1, p2, p3 in itertools.product((0.0, 0.9), repeat=3):
            out = run_gp(params, InitialStateSpec.fourfold(t1, t2, t3, p1, p2, p3))
            worst = max(worst, abs(out.phase_factor - _factor(fourfold_gp(t1, t2, t3))))
    special = run_gp(params, InitialStateSpec.fourfold(math.atan(math.sqrt(3)), math.atan(math.sqrt(2)),
                                                       math.pi / 4))
    return [
        Check(3, "four-fold J=1 delta=-1: factor vs closed form on 5x5x5x8 grid", "0", worst, 1e-9),
        Check(3, "four-fold equal-weight point: |gamma_G - pi|", "0",
              abs(special.gamma_geometric - math.pi), 1e-10),
    ]


def _random_weights(rng, k):
    return rng.dirichlet(np.ones(k))


def criterion_4() -> List[Check]:
    rng = np.random.default_rng(4)
    checks = []
    for J, delta in REGIME_POINTS:
        params = ModelParams(J, delta, 1.0)
        gs = analytic_ground_basis(params)
        h0, h1 = build_h0(params), build_h1(params)
        driven_T = drive_period(gs, h0, h1).T
        worst = 0.0
        for _ in range(10):
            w = _random_weights(rng, gs.degeneracy)
            T = cyclic_period(initial_mixed_state(gs, w), h1, 1, h0=h0).T
            for tt in (T, driven_T):
                worst = max(worst, abs(mixed_gp_factor(w, gs, h1, tt).value - 1.0))
        checks.append(Check(4, f"mixed null phase {gs.regime.label} J={J:g}: |factor - 1|",
                            "0", worst, 1e-10))
    return checks


def criterion_5() -> List[Check]:
    cases = [
        ((1.0, -2.0), InitialStateSpec.twofold(0.6, 0.3), lambda B: 2 * math.pi / (3 * B)),
        ((-1.0, 2.0), InitialStateSpec.twofold(0.6, 0.3), lambda B: 2 * math.pi / (3 * B)),
        ((1.0, 0.0), InitialStateSpec.twofold(0.6, 0.3), lambda B: 2 * math.pi / B),
        ((-1.0, 0.0), InitialStateSpec.twofold(0.6, 0.3), lambda B: 2 * math.pi / B),
        ((1.0, -1.0), InitialStateSpec.fourfold(1.0, 0.8, 0.7, 0.1, 0.2, 0.3), lambda B: 2 * math.pi / B),
        ((-1.0, 1.0), InitialStateSpec.fourfold(1.0, 0.8, 0.7, 0.1, 0.2, 0.3), lambda B: 2 * math.pi / B),
    ]
    checks = []
    for (J, delta), spec, expected in cases:
        rel = resid = 0.0
        label = classify_regime(J, delta).label
        for B in (0.25, 1.0, 4.0):
            params = ModelParams(J, delta, B)
            psi0 = initial_pure_state(analytic_ground_basis(params), spec)
            per = cyclic_period(np.outer(psi0, psi0.conj()), build_h1(params), 1, h0=build_h0(params))
            rel = max(rel, abs(per.T - expected(B)) / expected(B))
            resid = max(resid, per.residual)
        checks.append(Check(5, f"period {label} J={J:g} (relative)", "0", rel, 1e-12))
        checks.append(Check(5, f"period {label} J={J:g}: max|rho(T)-rho(0)|", "0", resid, 1e-9))
    return checks


def _random_ground_state(rng, gs):
    amps = rng.normal(size=gs.degeneracy) + 1j * rng.normal(size=gs.degeneracy)
    psi = gs.basis @ amps
    return psi / np.linalg.norm(psi)


def criterion_6() -> List[Check]:
    rng = np.random.default_rng(6)
    worst = 0.0
    for i in range(200):
        J, delta = REGIME_POINTS[i % len(REGIME_POINTS)]
        params = ModelParams(J, delta, float(rng.uniform(0.25, 4.0)))
        gs = analytic_ground_basis(params)
        h0, h1 = build_h0(params), build_h1(params)
        psi0 = _random_ground_state(rng, gs)
        T = cyclic_period(np.outer(psi0, psi0.conj()), h1, 1, h0=h0).T
        a = pure_state_gp(psi0, h0 + h1, T).phase_factor
        b = reduced_gp_commuting(psi0, h1, T, gs).phase_factor
        worst = max(worst, abs(a - b))
    worst_l1 = 0.0
    for J, delta in REGIME_POINTS:
        for _ in range(5):
            params = ModelParams(J, delta, float(rng.uniform(0.25, 4.0)))
            gs = analytic_ground_basis(params)
            h0, h1 = build_h0(params), build_h1(params)
            w = _random_weights(rng, gs.degeneracy)
            T = float(rng.uniform(0.1, 10.0))
            u = matrix_exp_unitary(h0 + h1, T)
            vpar = parallel_transport_operator(gs, h1, T)
            od = off_diagonal_gp_factor(1, [initial_mixed_state(gs, w)], u, [vpar])
            worst_l1 = max(worst_l1, abs(od.value - mixed_gp_factor(w, gs, h1, T).value))
    return [
        Check(6, "reduced GP vs pure-state GP, 200 random ground states", "0", worst, 1e-9),
        Check(6, "off-diagonal factor l=1 vs diagonal mixed factor", "0", worst_l1, 1e-12),
    ]


def _random_hermitian(rng, n):
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return 0.5 * (a + a.conj().T)


def criterion_7() -> List[Check]:
    rng = np.random.default_rng(7)
    unit = comm = 0.0
    for _ in range(50):
        params = ModelParams(*rng.uniform(-3.0, 3.0, size=3))
        h0, h1 = build_h0(params), build_h1(params)
        comm = max(comm, max_abs(commutator(h0, h1)))
        for h in (h0 + h1, _random_hermitian(rng, 6)):
            u = matrix_exp_unitary(h, float(rng.uniform(-10.0, 10.0)))
            unit = max(unit, max_abs(u.conj().T @ u - np.eye(6)))

    proj = 0.0
    for J in (1.0, -1.0, 2.0, -2.0):
        for k in range(61):
            delta = round(-3.0 + 0.1 * k, 10)
            if classify_regime(J, delta) is Regime.FOURFOLD_CRITICAL:
                continue
            params = ModelParams(J, delta, 0.0)
            gs = analytic_ground_basis(params, check=False)
            num = numeric_ground_space(build_h0(params))
            proj = max(proj, float(np.linalg.norm(gs.projector() - num.projector())),
                       abs(gs.energy - num.energy))

    gauge = glob = 0.0
    for J, delta in REGIME_POINTS:
        params = ModelParams(J, delta, 1.0)
        gs = analytic_ground_basis(params)
        h = build_h0(params) + build_h1(params)
        four = gs.degeneracy == 4
        thetas = (1.0, 0.8, 0.7) if four else (0.6,)
        base = None
        for _ in range(5):
            phis = tuple(rng.uniform(0.0, 2 * math.pi, size=len(thetas)))
            spec = InitialStateSpec(thetas, phis)
            psi0 = initial_pure_state(gs, spec)
            T = cyclic_period(np.outer(psi0, psi0.conj()), build_h1(params), 1, h0=build_h0(params)).T
            f = pure_state_gp(psi0, h, T).phase_factor
            base = f if base is None else base
            gauge = max(gauge, abs(f - base))
            g = pure_state_gp(cmath.exp(1j * rng.uniform(0, 2 * math.pi)) * psi0, h, T).phase_factor
            glob = max(glob, abs(f - g))

    simpson = 0.0
    for _ in range(20):
        h = _random_hermitian(rng, 6)
        psi = rng.normal(size=6) + 1j * rng.normal(size=6)
        psi /= np.linalg.norm(psi)
        T = float(rng.uniform(0.1, 10.0))
        exact = -T * float(np.vdot(psi, h @ psi).real)
        simpson = max(simpson, abs(dynamical_phase(psi, h, T) - exact))

    return [
        Check(7, "propagator unitarity max|U^dagger U - I|", "0", unit, 1e-10),
        Check(7, "max|[H0, H1]|", "0", comm, 1e-12),
        Check(7, "analytic vs numeric ground projector (J,delta) grid", "0", proj, 1e-9),
        Check(7, "relative-phase (phi) invariance of phase factor", "0", gauge, 1e-10),
        Check(7, "global-phase invariance of phase factor", "0", glob, 1e-10),
        Check(7, "Simpson dynamical phase vs -T<H>", "0", simpson, 1e-10),
    ]


def criterion_8() -> List[Check]:
    """Spot values quoted in closed form, reproduced by the full pipeline."""
    aligned = run_gp(ModelParams(1.0, -2.0, 1.0), InitialStateSpec.twofold(math.pi / 3, 0.0))
    entangled = run_gp(ModelParams(1.0, 0.0, 1.0), InitialStateSpec.twofold(math.pi / 4, 0.0))
    mixed = run_gp(ModelParams(1.0, -2.0, 1.0), InitialStateSpec.mixed((0.3, 0.7)))
    return [
        Check(8, "aligned theta=pi/3: gamma_G = pi/2", "1.5707963267948966",
              abs(aligned.gamma_geometric - HALF_PI), 1e-9),
        Check(8, "aligned period at B=1: T = 2pi/3", "2.0943951023931953",
              abs(aligned.T - 2 * math.pi / 3), 1e-12),
        Check(8, "entangled theta=pi/4: gamma_G = pi", "3.1415926535897931",
              abs(entangled.gamma_geometric - math.pi), 1e-9),
        Check(8, "mixed a=0.3 aligned: gamma_G = 0", "0",
              abs(mixed.phase_factor - 1.0), 1e-10),
        Check(8, "closed-form oracle at the four-fold equal-weight point", "3.1415926535897931",
              abs(gp_closed_form(ClosedFormInput(Regime.FOURFOLD_CRITICAL,
                                                 (math.atan(math.sqrt(3)), math.atan(math.sqrt(2)),
                                                  math.pi / 4))) - math.pi), 1e-12),
    ]


CRITERIA: Dict[int, Callable[[], List[Check]]] = {
    1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4,
    5: criterion_5, 6: criterion_6, 7: criterion_7, 8: criterion_8,
}


def run_all() -> List[Check]:
    return [c for fn in CRITERIA.values() for c in fn()]


def format_report(checks: List[Check]) -> str:
    lines = ["criterion,check,expected,actual,tolerance,status"]
    for c in checks:
        lines.append(f'{c.criterion},"{c.name}",{c.expected},{c.actual:.3e},{c.tolerance:.0e},'
                     f'{"PASS" if c.passed else "FAIL"}')
    failed = sum(not c.passed for c in checks)
    lines.append(f"# {len(checks) - failed}/{len(checks)} checks passed")
    return "\n".join(lines) + "\n"

import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from spingp.errors import GpUndefinedError
from spingp.model import (DOWN_MINUS, UP_PLUS, InitialStateSpec, ModelParams, analytic_ground_basis,
                          build_h0, build_h1, initial_mixed_state, initial_pure_state, product_state)
from spingp.phase import (dynamical_phase, mixed_gp_factor, off_diagonal_gp_factor,
                          parallel_transport_operator, phase_normalize, pure_state_gp,
                          reduced_gp_commuting, wrap_phase)
from spingp.spin_algebra import matrix_exp_unitary

from conftest import random_hermitian, random_state

REGIME_POINTS = [(1.0, -2.0), (1.0, 0.0), (1.0, -1.0), (-1.0, 2.0), (-1.0, 0.0), (-1.0, 1.0)]
ALIGNED_T = 2 * math.pi / 3


def setup(J, delta, B=1.0):
    p = ModelParams(J, delta, B)
    return p, analytic_ground_basis(p), build_h0(p), build_h1(p)


def factor(g):
    return cmath.exp(1j * g)


def test_phase_normalize():
    assert phase_normalize(3 + 4j) == pytest.approx((3 + 4j) / 5)
    assert phase_normalize(-2) == -1
    with pytest.raises(GpUndefinedError):
        phase_normalize(1e-14)


def test_wrap_phase():
    assert wrap_phase(2 * math.pi) == 0.0
    assert wrap_phase(-1e-17) == 0.0
    assert wrap_phase(-math.pi / 2) == pytest.approx(1.5 * math.pi)


def test_pure_gp_aligned_example():
    _, gs, h0, h1 = setup(1.0, -2.0)
    psi = initial_pure_state(gs, InitialStateSpec.twofold(math.pi / 3, 0.8))
    res = pure_state_gp(psi, h0 + h1, ALIGNED_T)
    assert abs(res.phase_factor - 1j) < 1e-10
    assert res.gamma_geometric == pytest.approx(math.pi / 2, abs=1e-10)
    assert res.overlap_magnitude == pytest.approx(1.0)
    # total phase pi - E0 T with E0 = -1
    assert abs(factor(res.gamma_total) - factor(math.pi + ALIGNED_T)) < 1e-12


def test_pure_gp_entangled_example():
    _, gs, h0, h1 = setup(1.0, 0.0)
    psi = initial_pure_state(gs, InitialStateSpec.twofold(math.pi / 4))
    res = pure_state_gp(psi, h0 + h1, 2 * math.pi)
    assert res.gamma_geometric == pytest.approx(math.pi, abs=1e-10)


@pytest.mark.parametrize("J,delta,T", [(1.0, -2.0, ALIGNED_T), (1.0, 0.0, 2 * math.pi)])
def test_stationary_initial_state_has_zero_phase(J, delta, T):
    _, gs, h0, h1 = setup(J, delta)
    psi = initial_pure_state(gs, InitialStateSpec.twofold(0.0))
    assert abs(pure_state_gp(psi, h0 + h1, T).phase_factor - 1) < 1e-10


def test_result_invariants(rng):
    h = random_hermitian(rng)
    psi = random_state(rng)
    res = pure_state_gp(psi, h, 0.9)
    assert abs(res.phase_factor - cmath.exp(1j * res.gamma_geometric)) <= 1e-12
    assert abs(factor(res.gamma_geometric) - factor(res.gamma_total - res.gamma_dynamical)) <= 1e-10
    assert 0 <= res.gamma_geometric < 2 * math.pi
    assert -math.pi < res.gamma_total <= math.pi


def test_pure_gp_errors(rng):
    h = random_hermitian(rng)
    psi = random_state(rng)
    with pytest.raises(ValueError):
        pure_state_gp(psi, h, 0.0)
    with pytest.raises(ValueError):
        pure_state_gp(psi, h, -1.0)
    # |+x> under sigma_z for a half turn lands on |-x>
    sz = np.diag([1.0, -1.0]).astype(complex)
    plus = np.array([1, 1]) / math.sqrt(2)
    with pytest.raises(GpUndefinedError):
        pure_state_gp(plus, sz, math.pi / 2)


def test_dynamical_phase_sign_and_quadrature(rng):
    h = random_hermitian(rng)
    psi = random_state(rng)
    T = 3.3
    exact = -T * np.vdot(psi, h @ psi).real
    for steps in (1, 8, 1024):
        assert dynamical_phase(psi, h, T, steps) == pytest.approx(exact, abs=1e-10)


def test_reduced_gp_examples():
    _, gs, h0, h1 = setup(1.0, -2.0)
    psi = initial_pure_state(gs, InitialStateSpec.twofold(math.pi / 3, 0.1))
    a = reduced_gp_commuting(psi, h1, ALIGNED_T, gs)
    b = pure_state_gp(psi, h0 + h1, ALIGNED_T)
    assert a.gamma_geometric == pytest.approx(math.pi / 2, abs=1e-10)
    assert abs(a.phase_factor - b.phase_factor) < 1e-10

    _, gs, h0, h1 = setup(1.0, -1.0)
    spec = InitialStateSpec.fourfold(math.atan(math.sqrt(3)), math.atan(math.sqrt(2)), math.pi / 4)
    res = reduced_gp_commuting(initial_pure_state(gs, spec), h1, 2 * math.pi, gs)
    assert res.gamma_geometric == pytest.approx(math.pi, abs=1e-10)


def fourfold_formula(t1, t2, t3):
    return math.pi * (1 - 3 * math.cos(t1) ** 2
                      + math.sin(t1) ** 2 * (3 * math.cos(t2) ** 2 - math.cos(2 * t3) * math.sin(t2) ** 2))


def test_reduced_gp_fourfold_grid():
    _, gs, _, h1 = setup(1.0, -1.0)
    grid = np.linspace(0, math.pi / 2, 5)
    for t1 in grid:
        for t2 in grid:
            for t3 in grid:
                psi = initial_pure_state(gs, InitialStateSpec.fourfold(t1, t2, t3, 0.4, 1.0, 2.2))
                res = reduced_gp_commuting(psi, h1, 2 * math.pi, gs)
                assert abs(res.phase_factor - factor(fourfold_formula(t1, t2, t3))) < 1e-9


def test_reduced_gp_rejects_state_outside_ground_space():
    _, gs, _, h1 = setup(1.0, -2.0)
    with pytest.raises(ValueError):
        reduced_gp_commuting(np.ones(6) / math.sqrt(6), h1, 1.0, gs)


THETAS = np.linspace(0, math.pi / 2, 25)


@pytest.mark.parametrize("J,delta,T,formula", [
    (1.0, -2.0, ALIGNED_T, lambda t: 2 * math.pi * math.cos(t) ** 2),
    (1.0, 0.0, 2 * math.pi, lambda t: 2 * math.pi * math.sin(t) ** 2),
    (-1.0, 0.0, 2 * math.pi, lambda t: 2 * math.pi * math.sin(t) ** 2),
    (-1.0, 2.0, ALIGNED_T, lambda t: 2 * math.pi * math.cos(t) ** 2),
])
def test_closed_form_agreement(J, delta, T, formula):
    _, gs, h0, h1 = setup(J, delta)
    for theta in THETAS:
        for phi in (0.0, math.pi / 3, 1.7):
            psi = initial_pure_state(gs, InitialStateSpec.twofold(theta, phi))
            res = pure_state_gp(psi, h0 + h1, T)
            assert abs(res.phase_factor - factor(formula(theta))) < 1e-9


@pytest.mark.parametrize("J,delta", [(1.0, -2.0), (-1.0, 0.0)])
def test_field_independence(J, delta):
    vals = []
    for B in (0.25, 1.0, 4.0):
        _, gs, h0, h1 = setup(J, delta, B)
        psi = initial_pure_state(gs, InitialStateSpec.twofold(0.9, 0.3))
        T = 2 * math.pi / (3 * B) if delta * J < 0 and abs(delta) > 1 else 2 * math.pi / B
        vals.append(pure_state_gp(psi, h0 + h1, T).phase_factor)
    assert max(abs(v - vals[0]) for v in vals) < 1e-9


@settings(max_examples=25, deadline=None)
@given(st.lists(st.floats(0, 2 * math.pi), min_size=3, max_size=3), st.floats(0, 2 * math.pi))
def test_phase_factor_ignores_relative_and_global_phases(phis, chi):
    _, gs, h0, h1 = setup(1.0, -1.0)
    h = h0 + h1
    base = pure_state_gp(initial_pure_state(gs, InitialStateSpec.fourfold(1.0, 0.8, 0.6)), h, 2 * math.pi)
    psi = initial_pure_state(gs, InitialStateSpec.fourfold(1.0, 0.8, 0.6, *phis))
    res = pure_state_gp(psi, h, 2 * math.pi)
    assert abs(res.phase_factor - base.phase_factor) < 1e-10
    rotated = pure_state_gp(cmath.exp(1j * chi) * psi, h, 2 * math.pi)
    assert abs(rotated.phase_factor - res.phase_factor) < 1e-12


def test_parallel_transport_operator():
    p, gs, h0, h1 = setup(1.0, -2.0)
    assert np.abs(parallel_transport_operator(gs, h1, 0.0) - np.eye(6)).max() < 1e-15
    v = parallel_transport_operator(gs, h1, ALIGNED_T)
    e0 = gs.energy
    # <phi_k|H1|phi_k> = +-3/2 gives extra phases exp(+-i pi)
    assert v[UP_PLUS, UP_PLUS] == pytest.approx(cmath.exp(1j * e0 * ALIGNED_T) * cmath.exp(1j * math.pi))
    assert v[DOWN_MINUS, DOWN_MINUS] == pytest.approx(cmath.exp(1j * e0 * ALIGNED_T) * cmath.exp(-1j * math.pi))
    off = [i for i in range(6) if i not in (UP_PLUS, DOWN_MINUS)]
    assert np.abs(v[np.ix_(off, off)] - np.eye(4)).max() < 1e-15


@pytest.mark.parametrize("J,delta", REGIME_POINTS)
def test_parallel_transport_unitary(J, delta, rng):
    _, gs, _, h1 = setup(J, delta, float(rng.uniform(0.1, 3)))
    v = parallel_transport_operator(gs, h1, float(rng.uniform(0, 10)))
    assert np.abs(v.conj().T @ v - np.eye(6)).max() <= 1e-12


@pytest.mark.parametrize("J,delta", REGIME_POINTS)
def test_mixed_gp_factor_is_trivial(J, delta, rng):
    _, gs, _, h1 = setup(J, delta)
    for T in (ALIGNED_T, 2 * math.pi, float(rng.uniform(0.1, 9))):
        f = mixed_gp_factor(rng.dirichlet(np.ones(gs.degeneracy)), gs, h1, T)
        assert abs(f.value - 1) <= 1e-12 and f.gamma == 0.0 or abs(f.value - 1) <= 1e-12


def test_mixed_gp_factor_examples():
    _, gs, _, h1 = setup(1.0, -2.0)
    f = mixed_gp_factor([0.3, 0.7], gs, h1, ALIGNED_T)
    assert abs(f.value - 1) <= 1e-12
    assert f.magnitude_before_normalization == pytest.approx(1.0)
    assert f.order == 1


def test_mixed_factor_pure_limit_matches_reduced_gp():
    # a ground basis that is not an H1 eigenbasis gives a nontrivial factor
    _, gs, h0, h1 = setup(1.0, -2.0)
    r = 1 / math.sqrt(2)
    rotated = type(gs)(gs.energy, gs.basis @ np.array([[r, r], [r, -r]]), gs.regime)
    T = 0.7
    f = mixed_gp_factor([1.0, 0.0], rotated, h1, T)
    g = reduced_gp_commuting(rotated.basis[:, 0], h1, T)
    assert abs(f.value - g.phase_factor) < 1e-12


def test_mixed_factor_undefined():
    _, gs, _, h1 = setup(1.0, -2.0)
    r = 1 / math.sqrt(2)
    rotated = type(gs)(gs.energy, gs.basis @ np.array([[r, r], [r, -r]]), gs.regime)
    # cos(3T/2) = 0 makes each return amplitude vanish
    with pytest.raises(GpUndefinedError):
        mixed_gp_factor([0.5, 0.5], rotated, h1, math.pi / 3)


@pytest.mark.parametrize("J,delta", REGIME_POINTS)
def test_off_diagonal_order_one_matches_diagonal(J, delta, rng):
    _, gs, h0, h1 = setup(J, delta)
    w = rng.dirichlet(np.ones(gs.degeneracy))
    T = float(rng.uniform(0.2, 8))
    u = matrix_exp_unitary(h0 + h1, T)
    od = off_diagonal_gp_factor(1, [initial_mixed_state(gs, w)], u,
                                [parallel_transport_operator(gs, h1, T)])
    assert abs(od.value - mixed_gp_factor(w, gs, h1, T).value) <= 1e-12


def test_off_diagonal_order_one_pure_projector():
    _, gs, h0, h1 = setup(1.0, 0.0)
    T = 2 * math.pi
    v = gs.basis[:, 0]
    od = off_diagonal_gp_factor(1, [np.outer(v, v.conj())], matrix_exp_unitary(h0 + h1, T),
                                [parallel_transport_operator(gs, h1, T)])
    assert abs(od.value - 1) < 1e-12


def brute_force_trace(mats):
    # explicit index loops, no matrix products
    n = mats[0].shape[0]
    cur = np.eye(n, dtype=complex)
    for m in mats:
        nxt = np.zeros((n, n), dtype=complex)
        for i in range(n):
            for j in range(n):
                s = 0j
                for k in range(n):
                    s += cur[i, k] * m[k, j]
                nxt[i, j] = s
        cur = nxt
    return sum(cur[i, i] for i in range(n))


@pytest.mark.parametrize("T", [ALIGNED_T, 1.3])
def test_off_diagonal_order_two(T):
    _, gs, h0, h1 = setup(1.0, -2.0)
    a = product_state(UP_PLUS)
    b = (product_state(UP_PLUS) + cmath.exp(0.7j) * product_state(DOWN_MINUS)) / math.sqrt(2)
    rho1, rho2 = np.outer(a, a.conj()), np.outer(b, b.conj())
    u = matrix_exp_unitary(h0 + h1, T)
    v = parallel_transport_operator(gs, h1, T)
    got = off_diagonal_gp_factor(2, [rho1, rho2], u, [v, v])
    # square roots of projectors are the projectors themselves
    z = brute_force_trace([u, v, rho1, u, v, rho2])
    assert abs(got.value - z / abs(z)) < 1e-12
    assert got.magnitude_before_normalization == pytest.approx(abs(z))
    if T == ALIGNED_T:
        assert abs(got.value - 1) < 1e-12


def test_off_diagonal_undefined_for_orthogonal_pair():
    _, gs, h0, h1 = setup(1.0, -2.0)
    a, b = gs.vectors
    u = matrix_exp_unitary(h0 + h1, ALIGNED_T)
    v = parallel_transport_operator(gs, h1, ALIGNED_T)
    with pytest.raises(GpUndefinedError):
        off_diagonal_gp_factor(2, [np.outer(a, a.conj()), np.outer(b, b.conj())], u, [v, v])


def test_off_diagonal_length_mismatch():
    with pytest.raises(ValueError):
        off_diagonal_gp_factor(2, [np.eye(2) / 2], np.eye(2), [np.eye(2)])

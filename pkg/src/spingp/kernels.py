"""Hot numeric kernels.

Each kernel exists twice: a loop form compiled with numba, and a numpy
form used when numba is disabled (``SPINGP_NUMBA=0``) or unavailable.
``eigh_raw`` and ``energy_integral`` dispatch to whichever is active.
Both forms are importable directly so tests and the benchmark can run
them side by side.
"""

import numpy as np

from ._accel import USE_NUMBA, njit

JACOBI_MAX_SWEEPS = 100


def _jacobi_eigh_loop(a):
    """Cyclic complex Jacobi diagonalisation of a Hermitian matrix.

    Returns unsorted real eigenvalues and the unitary whose columns are
    the matching eigenvectors.
    """
    n = a.shape[0]
    m = a.copy()
    v = np.eye(n, dtype=np.complex128)
    scale = 0.0
    for i in range(n):
        for j in range(n):
            scale = max(scale, abs(m[i, j]))
    if scale == 0.0:
        return np.zeros(n), v
    eps = 1e-17 * scale
    for _ in range(JACOBI_MAX_SWEEPS):
        off = 0.0
        for p in range(n):
            for q in range(p + 1, n):
                off = max(off, abs(m[p, q]))
        if off <= eps:
            break
        for p in range(n):
            for q in range(p + 1, n):
                apq = m[p, q]
                g = abs(apq)
                if g <= eps:
                    continue
                ph = apq / g
                app = m[p, p].real
                aqq = m[q, q].real
                half = 0.5 * np.arctan2(2.0 * g, app - aqq)
                c = np.cos(half)
                s = np.sin(half)
                # R = diag(1, conj(ph)) @ [[c, -s], [s, c]]
                r_qp = s * np.conj(ph)
                r_qq = c * np.conj(ph)
                for k in range(n):
                    mkp = m[k, p]
                    mkq = m[k, q]
                    m[k, p] = mkp * c + mkq * r_qp
                    m[k, q] = -mkp * s + mkq * r_qq
                for k in range(n):
                    mpk = m[p, k]
                    mqk = m[q, k]
                    m[p, k] = c * mpk + np.conj(r_qp) * mqk
                    m[q, k] = -s * mpk + np.conj(r_qq) * mqk
                m[p, q] = 0.0
                m[q, p] = 0.0
                m[p, p] = m[p, p].real
                m[q, q] = m[q, q].real
                for k in range(n):
                    vkp = v[k, p]
                    vkq = v[k, q]
                    v[k, p] = vkp * c + vkq * r_qp
                    v[k, q] = -vkp * s + vkq * r_qq
    w = np.empty(n)
    for i in range(n):
        w[i] = m[i, i].real
    return w, v


def _energy_integral_loop(w, v, psi0, h, total_time, panels):
    n = w.shape[0]
    npts = 2 * panels + 1
    dt = total_time / (2 * panels)
    coeff = np.zeros(n, dtype=np.complex128)
    for i in range(n):
        acc = 0.0j
        for k in range(n):
            acc += np.conj(v[k, i]) * psi0[k]
        coeff[i] = acc
    phased = np.empty(n, dtype=np.complex128)
    psi = np.empty(n, dtype=np.complex128)
    total = 0.0
    for step in range(npts):
        t = step * dt
        for i in range(n):
            phased[i] = coeff[i] * np.exp(-1j * w[i] * t)
        for k in range(n):
            acc = 0.0j
            for i in range(n):
                acc += v[k, i] * phased[i]
            psi[k] = acc
        e = 0.0
        for a in range(n):
            row = 0.0j
            for b in range(n):
                row += h[a, b] * psi[b]
            e += (np.conj(psi[a]) * row).real
        if step == 0 or step == npts - 1:
            weight = 1.0
        elif step % 2 == 1:
            weight = 4.0
        else:
            weight = 2.0
        total += weight * e
    return total * dt / 3.0


jacobi_eigh_jit = njit(_jacobi_eigh_loop)
energy_integral_jit = njit(_energy_integral_loop)


def eigh_numpy(a):
    return np.linalg.eigh(a)


def simpson_weights(panels):
    wts = np.full(2 * panels + 1, 2.0)
    wts[1::2] = 4.0
    wts[0] = wts[-1] = 1.0
    return wts


def energy_integral_numpy(w, v, psi0, h, total_time, panels):
    times = np.linspace(0.0, total_time, 2 * panels + 1)
    coeff = v.conj().T @ psi0
    psi_t = (np.exp(-1j * np.outer(times, w)) * coeff) @ v.T
    energies = np.einsum("ti,ij,tj->t", psi_t.conj(), h, psi_t).real
    dt = total_time / (2 * panels)
    return float(simpson_weights(panels) @ energies) * dt / 3.0


if USE_NUMBA:
    eigh_raw = jacobi_eigh_jit
    energy_integral = energy_integral_jit
else:
    eigh_raw = eigh_numpy
    energy_integral = energy_integral_numpy

BACKEND = "numba" if USE_NUMBA else "numpy"

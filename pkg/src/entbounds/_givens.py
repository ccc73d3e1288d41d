"""Compiled kernel for Givens-rotation descent on unnormalized ensemble vectors.

Rows of ``phi`` are the vectors sqrt(t_j)|psi_j>. For such a row the weighted
concurrence t_j C(psi_j) equals sqrt(2 (|phi|^4 - Tr (M M^dagger)^2)) with M the
dimA x dimB reshape of the row, so the objective needs no normalization.

A pair move replaces rows (j, k) by

    a = c phi_j + e s phi_k,    b = -conj(e) s phi_j + c phi_k,

c = cos(theta), s = sin(theta), e = exp(i psi). The pair cost is pi/2-periodic
in theta and pi-periodic in psi (up to the swap a <-> b and row phases), and
both reduced-state purities are trigonometric polynomials whose coefficients
are traces of A = M_j M_j^dagger, B = M_k M_k^dagger and C = M_k M_j^dagger.
"""

import math

import numba
import numpy as np

N_GRID = 8  # grid points per angle before golden refinement
N_GOLDEN = 24
N_ROUNDS = 3
INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


@numba.njit(cache=True, nogil=True)
def weighted_concurrence(row, dA, dB):
    # sqrt(2(n^4 - Tr rho_A^2)) written as a sum of squared 2x2 minors, which is
    # exactly zero on product rows instead of sqrt(roundoff)
    acc = 0.0
    for a in range(dA):
        for a2 in range(a + 1, dA):
            for b in range(dB):
                for b2 in range(b + 1, dB):
                    z = row[a * dB + b] * row[a2 * dB + b2] - row[a * dB + b2] * row[a2 * dB + b]
                    acc += z.real * z.real + z.imag * z.imag
    return 2.0 * math.sqrt(acc)


@numba.njit(cache=True, nogil=True)
def objective(phi, dA, dB):
    total = 0.0
    for j in range(phi.shape[0]):
        total += weighted_concurrence(phi[j], dA, dB)
    return total


@numba.njit(cache=True, nogil=True)
def _rotate(theta, psi, pj, pk, outa, outb):
    c = math.cos(theta)
    s = math.sin(theta)
    e = complex(math.cos(psi), math.sin(psi))
    ce = e.conjugate()
    for x in range(pj.shape[0]):
        outa[x] = c * pj[x] + e * s * pk[x]
        outb[x] = -ce * s * pj[x] + c * pk[x]


@numba.njit(cache=True, nogil=True)
def _pair_coefficients(pj, pk, dA, dB, work, out):
    # work: (3, dA, dA) scratch for A, B, C
    for a in range(dA):
        for a2 in range(dA):
            sa = 0j
            sb = 0j
            sc = 0j
            for b in range(dB):
                xj = pj[a2 * dB + b].conjugate()
                sa += pj[a * dB + b] * xj
                sb += pk[a * dB + b] * pk[a2 * dB + b].conjugate()
                sc += pk[a * dB + b] * xj
            work[0, a, a2] = sa
            work[1, a, a2] = sb
            work[2, a, a2] = sc
    for x in range(10):
        out[x] = 0j
    for a in range(dA):
        out[0] += work[0, a, a]
        out[1] += work[1, a, a]
        out[2] += work[2, a, a]
        for a2 in range(dA):
            A = work[0, a, a2]
            B = work[1, a, a2]
            C = work[2, a, a2]
            out[3] += A.real * A.real + A.imag * A.imag
            out[4] += B.real * B.real + B.imag * B.imag
            out[9] += C.real * C.real + C.imag * C.imag
            out[5] += A * work[1, a2, a]
            out[6] += A * work[2, a2, a]
            out[7] += B * work[2, a2, a]
            out[8] += C * work[2, a2, a]


@numba.njit(cache=True, nogil=True)
def _smoothed(q, n, eps):
    q = q + eps * eps * n * n
    return math.sqrt(q) if q > 0.0 else 0.0


@numba.njit(cache=True, nogil=True)
def smoothed_concurrence(row, dA, dB, eps):
    n2 = 0.0
    for x in range(row.shape[0]):
        n2 += row[x].real * row[x].real + row[x].imag * row[x].imag
    g = weighted_concurrence(row, dA, dB)
    return _smoothed(g * g, n2, eps)


@numba.njit(cache=True, nogil=True)
def smoothed_objective(phi, dA, dB, eps):
    total = 0.0
    for j in range(phi.shape[0]):
        total += smoothed_concurrence(phi[j], dA, dB, eps)
    return total


@numba.njit(cache=True, nogil=True)
def _pair_cost(theta, psi, k, eps):
    c = math.cos(theta)
    s = math.sin(theta)
    u = c * c
    v = s * s
    w = c * s
    e = complex(math.cos(psi), math.sin(psi))
    nj = k[0].real
    nk = k[1].real
    re_c = (e * k[2]).real
    re_ac = (e * k[6]).real
    re_bc = (e * k[7]).real
    re_cc = (e * e * k[8]).real
    na = u * nj + v * nk + 2.0 * w * re_c
    nb = v * nj + u * nk - 2.0 * w * re_c
    common = 2.0 * u * v * k[5].real + w * w * (2.0 * re_cc + 2.0 * k[9].real)
    pa = u * u * k[3].real + v * v * k[4].real + 4.0 * u * w * re_ac + 4.0 * v * w * re_bc + common
    pb = v * v * k[3].real + u * u * k[4].real - 4.0 * v * w * re_ac - 4.0 * u * w * re_bc + common
    ga = max(0.0, 2.0 * (na * na - pa))
    gb = max(0.0, 2.0 * (nb * nb - pb))
    return _smoothed(ga, na, eps) + _smoothed(gb, nb, eps)


@numba.njit(cache=True, nogil=True)
def _golden(k, eps, theta, psi, which, lo, hi, f_best):
    # 1-D golden-section over theta (which == 0) or psi (which == 1)
    x1 = hi - INV_PHI * (hi - lo)
    x2 = lo + INV_PHI * (hi - lo)
    f1 = _pair_cost(x1, psi, k, eps) if which == 0 else _pair_cost(theta, x1, k, eps)
    f2 = _pair_cost(x2, psi, k, eps) if which == 0 else _pair_cost(theta, x2, k, eps)
    for _ in range(N_GOLDEN):
        if f1 < f2:
            hi = x2
            x2 = x1
            f2 = f1
            x1 = hi - INV_PHI * (hi - lo)
            f1 = _pair_cost(x1, psi, k, eps) if which == 0 else _pair_cost(theta, x1, k, eps)
        else:
            lo = x1
            x1 = x2
            f1 = f2
            x2 = lo + INV_PHI * (hi - lo)
            f2 = _pair_cost(x2, psi, k, eps) if which == 0 else _pair_cost(theta, x2, k, eps)
    x, f = (x1, f1) if f1 < f2 else (x2, f2)
    if f < f_best:
        return x, f
    return theta if which == 0 else psi, f_best


@numba.njit(cache=True, nogil=True)
def best_pair_move(k, eps):
    """Grid both angles, then alternate golden-section refinements on each."""
    t_step = 0.5 * math.pi / N_GRID
    p_step = math.pi / N_GRID
    best_t = 0.0
    best_p = 0.0
    best_f = _pair_cost(0.0, 0.0, k, eps)
    for i in range(N_GRID):
        for q in range(N_GRID):
            f = _pair_cost(i * t_step, q * p_step, k, eps)
            if f < best_f:
                best_f = f
                best_t = i * t_step
                best_p = q * p_step
    ht = t_step
    hp = p_step
    for _ in range(N_ROUNDS):
        best_t, best_f = _golden(k, eps, best_t, best_p, 0, best_t - ht, best_t + ht, best_f)
        best_p, best_f = _golden(k, eps, best_t, best_p, 1, best_p - hp, best_p + hp, best_f)
        ht *= 0.5
        hp *= 0.5
    return best_t, best_p


@numba.njit(cache=True, nogil=True)
def sweep(phi, dA, dB, eps):
    """One pass over all row pairs (j, k). A move is kept only if the directly
    evaluated (smoothed) pair cost goes down."""
    m, d = phi.shape
    bufa = np.empty(d, dtype=np.complex128)
    bufb = np.empty(d, dtype=np.complex128)
    coef = np.empty(10, dtype=np.complex128)
    work = np.empty((3, dA, dA), dtype=np.complex128)
    for j in range(m - 1):
        for k in range(j + 1, m):
            _pair_coefficients(phi[j], phi[k], dA, dB, work, coef)
            theta, psi = best_pair_move(coef, eps)
            if theta == 0.0:
                continue
            before = smoothed_concurrence(phi[j], dA, dB, eps) + smoothed_concurrence(phi[k], dA, dB, eps)
            _rotate(theta, psi, phi[j], phi[k], bufa, bufb)
            after = smoothed_concurrence(bufa, dA, dB, eps) + smoothed_concurrence(bufb, dA, dB, eps)
            if after < before:
                phi[j, :] = bufa
                phi[k, :] = bufb


@numba.njit(cache=True, nogil=True)
def descend(phi, dA, dB, schedule, max_sweeps, step_tolerance, history, best_phi):
    """Continuation descent over the smoothing levels in ``schedule``.

    Each level sweeps until its smoothed objective gains less than
    ``step_tolerance`` per sweep, within an equal share of ``max_sweeps``.
    ``best_phi`` holds the rows with the lowest exact objective seen;
    ``history[s]`` is that lowest value after sweep ``s`` (``history[0]`` at
    the start). Returns the number of sweeps run.
    """
    best = objective(phi, dA, dB)
    best_phi[:, :] = phi
    history[0] = best
    share = max(1, max_sweeps // schedule.shape[0])
    n = 0
    for level in range(schedule.shape[0]):
        eps = schedule[level]
        current = smoothed_objective(phi, dA, dB, eps)
        used = 0
        while used < share and n < max_sweeps:
            sweep(phi, dA, dB, eps)
            n += 1
            used += 1
            exact = objective(phi, dA, dB)
            if exact < best:
                best = exact
                best_phi[:, :] = phi
            history[n] = best
            new = smoothed_objective(phi, dA, dB, eps)
            gain = current - new
            current = new
            if gain < step_tolerance:
                break
    return n

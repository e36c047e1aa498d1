"""Pure-numpy implementation of the per-sector outcome kernels.

For each difference-frequency sector d (diagonal i1 - i3 = d of the
two-photon lattice) the conditional amplitude of photon 2 at time outcome
t_k is, up to a global phase, the zero-padded DFT over the diagonal index j
of g_d[j, i2] = F[i1(j), i2] * f[i3(j)].  The kernels return per-outcome
reductions of that DFT image A[k, i2]:

  norm2[d, k] = sum_i2 |A|^2                       (outcome density)
  rawC [d, k] = sum_i2 conj(f_in[i2]) A            (uncorrected overlap)
  CA   [d, k] = sum_i2 conj(v_lo[d, i2]) P[k, i2] A  (mirror overlap, low node)
  CB   [d, k] = same with v_hi                      (high interpolation node)
  nA   [d, k] = sum_i2 w_lo[d, i2] |A|^2            (mirrored-norm terms)
  nB   [d, k] = same with w_hi
  xC   [d, k] = sum_i2 w_x[d, i2] A[k, i2] conj(A[k, i2+1])

Global per-(d, k) phases cancel in every reported quantity, so they are not
applied here.
"""

import numpy as np


def _sector(n, d):
    """(i1_start, i3_start, length) of diagonal i1 - i3 = d."""
    return max(d, 0), max(-d, 0), n - abs(d)


def _sector_dft(F2, f3, dd, n, shift, buf):
    d = dd - (n - 1)
    i1, i3, length = _sector(n, d)
    buf[:length] = F2[i1 : i1 + length, :] * f3[i3 : i3 + length, None]
    buf[length:] = 0.0
    return np.roll(np.fft.fft(buf, axis=0), shift, axis=0)


def density_reductions(F2, f3, shift):
    """norm2[d, k] only (outcome-density map)."""
    n, n2 = F2.shape
    n_d = 2 * n - 1
    buf = np.empty((n, n2), dtype=np.complex128)
    norm2 = np.empty((n_d, n), dtype=np.float64)
    for dd in range(n_d):
        a = _sector_dft(F2, f3, dd, n, shift, buf)
        norm2[dd] = np.einsum("ki,ki->k", a.real, a.real) + np.einsum(
            "ki,ki->k", a.imag, a.imag
        )
    return norm2


def outcome_reductions(F2, f3, shift, fin_conj, vlo_conj, vhi_conj, w_lo, w_hi, w_x, phase):
    """All seven per-outcome reductions (density + fidelity inputs)."""
    n, n2 = F2.shape
    n_d = 2 * n - 1
    buf = np.empty((n, n2), dtype=np.complex128)
    norm2 = np.empty((n_d, n), dtype=np.float64)
    nA = np.empty((n_d, n), dtype=np.float64)
    nB = np.empty((n_d, n), dtype=np.float64)
    rawC = np.empty((n_d, n), dtype=np.complex128)
    CA = np.empty((n_d, n), dtype=np.complex128)
    CB = np.empty((n_d, n), dtype=np.complex128)
    xC = np.empty((n_d, n), dtype=np.complex128)
    for dd in range(n_d):
        a = _sector_dft(F2, f3, dd, n, shift, buf)
        a2 = a.real**2 + a.imag**2
        norm2[dd] = a2.sum(axis=1)
        rawC[dd] = a @ fin_conj
        b = phase * a
        CA[dd] = b @ vlo_conj[dd]
        CB[dd] = b @ vhi_conj[dd]
        nA[dd] = a2 @ w_lo[dd]
        nB[dd] = a2 @ w_hi[dd]
        xC[dd] = (a[:, :-1] * a[:, 1:].conj()) @ w_x[dd, :-1]
    return norm2, rawC, CA, CB, nA, nB, xC

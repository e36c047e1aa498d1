# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled outcome kernels: radix-2 FFT over each difference-frequency
sector plus fused per-outcome reductions.

Same contract as eprteleport._kernels_py (see its docstring for the
definitions); requires power-of-two n_points.
"""

import numpy as np


cdef void _fft_axis0(double complex[:, ::1] a,
                     const double complex[::1] tw,
                     const Py_ssize_t[::1] rev) noexcept nogil:
    """In-place DIT radix-2 FFT of every column, transforming along axis 0."""
    cdef Py_ssize_t n = a.shape[0], m = a.shape[1]
    cdef Py_ssize_t i, j, le, le2, step, p, q, col
    cdef double complex u, t, w
    for i in range(n):
        j = rev[i]
        if j > i:
            for col in range(m):
                t = a[i, col]
                a[i, col] = a[j, col]
                a[j, col] = t
    le = 2
    while le <= n:
        le2 = le >> 1
        step = n / le
        for j in range(le2):
            w = tw[j * step]
            i = j
            while i < n:
                p = i
                q = i + le2
                for col in range(m):
                    t = w * a[q, col]
                    u = a[p, col]
                    a[p, col] = u + t
                    a[q, col] = u - t
                i += le
        le <<= 1


def _tables(Py_ssize_t n):
    if n < 2 or (n & (n - 1)) != 0:
        raise ValueError("compiled kernel requires power-of-two n_points")
    tw = np.exp(-2j * np.pi * np.arange(n // 2) / n)
    rev = np.zeros(n, dtype=np.intp)
    cdef Py_ssize_t i, j, bit
    j = 0
    for i in range(1, n):
        bit = n >> 1
        while j & bit:
            j ^= bit
            bit >>= 1
        j |= bit
        rev[i] = j
    return tw, rev


cdef inline void _load_sector(double complex[:, ::1] buf,
                              const double complex[:, ::1] F2,
                              const double complex[::1] f3,
                              Py_ssize_t d) noexcept nogil:
    cdef Py_ssize_t n = F2.shape[0], n2 = F2.shape[1]
    cdef Py_ssize_t i1 = d if d > 0 else 0
    cdef Py_ssize_t i3 = -d if d < 0 else 0
    cdef Py_ssize_t length = n - (d if d > 0 else -d)
    cdef Py_ssize_t j, col
    cdef double complex c
    for j in range(length):
        c = f3[i3 + j]
        for col in range(n2):
            buf[j, col] = F2[i1 + j, col] * c
    for j in range(length, n):
        for col in range(n2):
            buf[j, col] = 0.0


def density_reductions(F2, f3, Py_ssize_t shift):
    """norm2[d, k] only (outcome-density map)."""
    F2 = np.ascontiguousarray(F2, dtype=np.complex128)
    f3 = np.ascontiguousarray(f3, dtype=np.complex128)
    cdef Py_ssize_t n = F2.shape[0], n2 = F2.shape[1]
    tw_np, rev_np = _tables(n)
    cdef const double complex[:, ::1] F2v = F2
    cdef const double complex[::1] f3v = f3
    cdef const double complex[::1] tw = tw_np
    cdef const Py_ssize_t[::1] rev = rev_np
    buf_np = np.empty((n, n2), dtype=np.complex128)
    cdef double complex[:, ::1] buf = buf_np
    out_np = np.empty((2 * n - 1, n), dtype=np.float64)
    cdef double[:, ::1] out = out_np
    cdef Py_ssize_t dd, krow, col, kout
    cdef double acc
    cdef double complex z
    with nogil:
        for dd in range(2 * n - 1):
            _load_sector(buf, F2v, f3v, dd - (n - 1))
            _fft_axis0(buf, tw, rev)
            for krow in range(n):
                kout = krow + shift
                if kout >= n:
                    kout -= n
                acc = 0.0
                for col in range(n2):
                    z = buf[krow, col]
                    acc += z.real * z.real + z.imag * z.imag
                out[dd, kout] = acc
    return out_np


def outcome_reductions(F2, f3, Py_ssize_t shift, fin_conj,
                       vlo_conj, vhi_conj, w_lo, w_hi, w_x, phase):
    """All seven per-outcome reductions (density + fidelity inputs)."""
    F2 = np.ascontiguousarray(F2, dtype=np.complex128)
    f3 = np.ascontiguousarray(f3, dtype=np.complex128)
    fin_conj = np.ascontiguousarray(fin_conj, dtype=np.complex128)
    vlo_conj = np.ascontiguousarray(vlo_conj, dtype=np.complex128)
    vhi_conj = np.ascontiguousarray(vhi_conj, dtype=np.complex128)
    w_lo = np.ascontiguousarray(w_lo, dtype=np.float64)
    w_hi = np.ascontiguousarray(w_hi, dtype=np.float64)
    w_x = np.ascontiguousarray(w_x, dtype=np.float64)
    phase = np.ascontiguousarray(phase, dtype=np.complex128)
    cdef Py_ssize_t n = F2.shape[0], n2 = F2.shape[1]
    tw_np, rev_np = _tables(n)
    cdef const double complex[:, ::1] F2v = F2
    cdef const double complex[::1] f3v = f3
    cdef const double complex[::1] finv = fin_conj
    cdef const double complex[:, ::1] vlo = vlo_conj
    cdef const double complex[:, ::1] vhi = vhi_conj
    cdef const double[:, ::1] wlo = w_lo
    cdef const double[:, ::1] whi = w_hi
    cdef const double[:, ::1] wx = w_x
    cdef const double complex[:, ::1] ph = phase
    cdef const double complex[::1] tw = tw_np
    cdef const Py_ssize_t[::1] rev = rev_np
    buf_np = np.empty((n, n2), dtype=np.complex128)
    cdef double complex[:, ::1] buf = buf_np
    cdef Py_ssize_t n_d = 2 * n - 1
    norm2_np = np.empty((n_d, n), dtype=np.float64)
    nA_np = np.empty((n_d, n), dtype=np.float64)
    nB_np = np.empty((n_d, n), dtype=np.float64)
    rawC_np = np.empty((n_d, n), dtype=np.complex128)
    CA_np = np.empty((n_d, n), dtype=np.complex128)
    CB_np = np.empty((n_d, n), dtype=np.complex128)
    xC_np = np.empty((n_d, n), dtype=np.complex128)
    cdef double[:, ::1] norm2 = norm2_np
    cdef double[:, ::1] nA = nA_np
    cdef double[:, ::1] nB = nB_np
    cdef double complex[:, ::1] rawC = rawC_np
    cdef double complex[:, ::1] CA = CA_np
    cdef double complex[:, ::1] CB = CB_np
    cdef double complex[:, ::1] xC = xC_np
    cdef Py_ssize_t dd, krow, col, kout
    cdef double s_norm, s_nA, s_nB, a2
    cdef double complex s_raw, s_ca, s_cb, s_x, z, zp
    with nogil:
        for dd in range(n_d):
            _load_sector(buf, F2v, f3v, dd - (n - 1))
            _fft_axis0(buf, tw, rev)
            for krow in range(n):
                kout = krow + shift
                if kout >= n:
                    kout -= n
                s_norm = 0.0
                s_nA = 0.0
                s_nB = 0.0
                s_raw = 0.0
                s_ca = 0.0
                s_cb = 0.0
                s_x = 0.0
                for col in range(n2):
                    z = buf[krow, col]
                    a2 = z.real * z.real + z.imag * z.imag
                    s_norm += a2
                    s_nA += wlo[dd, col] * a2
                    s_nB += whi[dd, col] * a2
                    s_raw += finv[col] * z
                    zp = ph[kout, col] * z
                    s_ca += vlo[dd, col] * zp
                    s_cb += vhi[dd, col] * zp
                    if col < n2 - 1 and wx[dd, col] != 0.0:
                        s_x += z * buf[krow, col + 1].conjugate()
                norm2[dd, kout] = s_norm
                nA[dd, kout] = s_nA
                nB[dd, kout] = s_nB
                rawC[dd, kout] = s_raw
                CA[dd, kout] = s_ca
                CB[dd, kout] = s_cb
                xC[dd, kout] = s_x
    return norm2_np, rawC_np, CA_np, CB_np, nA_np, nB_np, xC_np

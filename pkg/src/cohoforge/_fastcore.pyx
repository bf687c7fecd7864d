# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled row-reduction kernels (same contract as ``_purecore``)."""

from libc.stdint cimport uint64_t, uint8_t


def rref_gf2_packed(uint64_t[:, ::1] m, Py_ssize_t ncols):
    cdef Py_ssize_t nrows = m.shape[0]
    cdef Py_ssize_t nwords = m.shape[1]
    cdef Py_ssize_t r = 0, c, i, k, w
    cdef uint64_t bit, t
    pivots = []
    for c in range(ncols):
        if r == nrows:
            break
        w = c >> 6
        bit = (<uint64_t>1) << (c & 63)
        i = r
        while i < nrows and not (m[i, w] & bit):
            i += 1
        if i == nrows:
            continue
        if i != r:
            for k in range(w, nwords):
                t = m[i, k]
                m[i, k] = m[r, k]
                m[r, k] = t
        for i in range(nrows):
            if i != r and (m[i, w] & bit):
                for k in range(w, nwords):
                    m[i, k] ^= m[r, k]
        pivots.append(c)
        r += 1
    return pivots


def rref_modp(uint8_t[:, ::1] m, int p, Py_ssize_t ncols):
    cdef Py_ssize_t nrows = m.shape[0]
    cdef Py_ssize_t width = m.shape[1]
    cdef Py_ssize_t r = 0, c, i, k
    cdef int a, f
    cdef uint8_t t
    cdef int inv[256]
    inv[0] = 0
    for a in range(1, p):
        inv[a] = pow(a, p - 2, p)
    pivots = []
    for c in range(ncols):
        if r == nrows:
            break
        i = r
        while i < nrows and m[i, c] == 0:
            i += 1
        if i == nrows:
            continue
        if i != r:
            for k in range(c, width):
                t = m[i, k]
                m[i, k] = m[r, k]
                m[r, k] = t
        a = m[r, c]
        if a != 1:
            f = inv[a]
            for k in range(c, width):
                m[r, k] = <uint8_t>((m[r, k] * f) % p)
        for i in range(nrows):
            if i != r and m[i, c] != 0:
                f = p - m[i, c]
                for k in range(c, width):
                    if m[r, k]:
                        m[i, k] = <uint8_t>((m[i, k] + f * m[r, k]) % p)
        pivots.append(c)
        r += 1
    return pivots

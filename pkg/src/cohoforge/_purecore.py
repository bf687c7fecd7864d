"""Pure numpy row-reduction kernels; used when the compiled core is absent."""

import numpy as np


def rref_gf2_packed(m, ncols):
    """Reduce a bit-packed GF(2) matrix in place.

    ``m`` is a C-contiguous ``uint64`` array, one row per matrix row, with
    column ``c`` stored at bit ``c % 64`` of word ``c // 64``.  Rows are
    permuted so the pivot rows come first.  Returns the pivot columns.
    """
    nrows = m.shape[0]
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        w = c >> 6
        bit = np.uint64(1 << (c & 63))
        col = (m[r:, w] & bit) != 0
        hits = np.flatnonzero(col)
        if hits.size == 0:
            continue
        i = r + hits[0]
        if i != r:
            m[[r, i]] = m[[i, r]]
        rows = np.flatnonzero((m[:, w] & bit) != 0)
        rows = rows[rows != r]
        if rows.size:
            m[rows, w:] ^= m[r, w:]
        pivots.append(c)
        r += 1
    return pivots


def rref_modp(m, p, ncols):
    """Reduce a ``uint8`` matrix over GF(p) in place; returns pivot columns."""
    nrows = m.shape[0]
    inv = [0] + [pow(a, p - 2, p) for a in range(1, p)]
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        hits = np.flatnonzero(m[r:, c])
        if hits.size == 0:
            continue
        i = r + hits[0]
        if i != r:
            m[[r, i]] = m[[i, r]]
        a = int(m[r, c])
        if a != 1:
            m[r, c:] = (m[r, c:].astype(np.int32) * inv[a]) % p
        rows = np.flatnonzero(m[:, c])
        rows = rows[rows != r]
        if rows.size:
            f = (p - m[rows, c].astype(np.int32))[:, None]
            block = m[rows, c:].astype(np.int32) + f * m[r, c:].astype(np.int32)
            m[rows, c:] = block % p
        pivots.append(c)
        r += 1
    return pivots

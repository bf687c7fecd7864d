"""Exact dense linear algebra over GF(p).

Matrices are ``uint8`` numpy arrays with entries in ``[0, p)``.  For p = 2
the elimination runs on rows bit-packed into 64-bit words.  Pivot choice is
fixed (leftmost column, earliest row) so every basis produced here is
reproducible bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels


class DimensionMismatch(ValueError):
    pass


def as_fp(a, p: int) -> np.ndarray:
    arr = np.asarray(a, dtype=np.int64)
    if arr.ndim == 1:
        arr = arr[None, :]
    return np.ascontiguousarray(np.mod(arr, p).astype(np.uint8))


def _pack(a: np.ndarray) -> np.ndarray:
    rows, cols = a.shape
    nwords = max(1, (cols + 63) // 64)
    padded = np.zeros((rows, nwords * 64), dtype=np.uint8)
    padded[:, :cols] = a
    packed = np.packbits(padded, axis=1, bitorder="little")
    return np.ascontiguousarray(packed.view("<u8"))


def _unpack(m: np.ndarray, cols: int) -> np.ndarray:
    bits = np.unpackbits(m.view(np.uint8), axis=1, bitorder="little")
    return np.ascontiguousarray(bits[:, :cols])


def rref_array(a: np.ndarray, p: int, ncols: int | None = None):
    """Return ``(R, pivots)``: the nonzero rows of the RREF of ``a``.

    Pivots are sought only among the first ``ncols`` columns (all columns by
    default); trailing columns are carried along, which is how augmented
    systems track their row operations.
    """
    a = np.asarray(a, dtype=np.uint8)
    rows, cols = a.shape
    if ncols is None:
        ncols = cols
    if rows == 0 or cols == 0:
        return np.zeros((0, cols), dtype=np.uint8), []
    if p == 2:
        m = _pack(a)
        piv = kernels.rref_gf2_packed(m, ncols)
        out = _unpack(m[: len(piv)], cols)
    else:
        m = np.array(a, dtype=np.uint8, order="C", copy=True)
        piv = kernels.rref_modp(m, p, ncols)
        out = m[: len(piv)]
    return np.ascontiguousarray(out), list(piv)


def mulmod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Matrix product mod p, exact via floating BLAS for the sizes used here."""
    if a.shape[1] != b.shape[0]:
        raise DimensionMismatch(f"cannot multiply {a.shape} by {b.shape}")
    inner = a.shape[1]
    if inner == 0:
        return np.zeros((a.shape[0], b.shape[1]), dtype=np.uint8)
    bound = inner * (p - 1) ** 2
    if bound >= 1 << 53:  # float64 no longer exact; integer matmul is slower but safe
        return np.mod(a.astype(np.int64) @ b.astype(np.int64), p).astype(np.uint8)
    dt = np.float32 if bound < (1 << 24) else np.float64
    prod = a.astype(dt) @ b.astype(dt)
    return np.mod(prod, p).astype(np.uint8)


def reduce_against(v: np.ndarray, basis: np.ndarray, pivots, p: int) -> np.ndarray:
    """Eliminate the pivot columns of an RREF ``basis`` from the rows of ``v``."""
    v = np.atleast_2d(np.asarray(v, dtype=np.uint8))
    if len(pivots) == 0:
        return v.copy()
    coeff = v[:, list(pivots)]
    return np.mod(v.astype(np.int64) - mulmod(coeff, basis, p), p).astype(np.uint8)


def left_kernel(a: np.ndarray, p: int) -> np.ndarray:
    """RREF basis (as rows) of ``{x : x a = 0}``."""
    rows, cols = a.shape
    aug = np.concatenate([a.astype(np.uint8), np.eye(rows, dtype=np.uint8)], axis=1)
    r, piv = rref_array(aug, p)
    k = sum(1 for c in piv if c < cols)
    return np.ascontiguousarray(r[k:, cols:])


class RowSolver:
    """Solves ``x @ a = b`` for many right-hand sides against a fixed ``a``."""

    def __init__(self, a: np.ndarray, p: int):
        rows, cols = a.shape
        self.p = p
        self.shape = a.shape
        aug = np.concatenate([a.astype(np.uint8), np.eye(rows, dtype=np.uint8)], axis=1)
        r, piv = rref_array(aug, p, ncols=cols)
        self.pivots = list(piv)
        self.reduced = r[:, :cols]
        self.transform = r[:, cols:]

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def solve(self, b: np.ndarray, check: bool = True):
        b = np.atleast_2d(np.asarray(b, dtype=np.uint8))
        if b.shape[1] != self.shape[1]:
            raise DimensionMismatch(f"rhs width {b.shape[1]} != {self.shape[1]}")
        c = b[:, self.pivots]
        x = mulmod(c, self.transform, self.p)
        if check and not np.array_equal(mulmod(c, self.reduced, self.p), b):
            return None
        return x


@dataclass(frozen=True, eq=False)
class FpMatrix:
    p: int
    entries: np.ndarray

    def __post_init__(self):
        e = as_fp(self.entries, self.p)
        e.setflags(write=False)
        object.__setattr__(self, "entries", e)

    @classmethod
    def zeros(cls, p, rows, cols):
        return cls(p, np.zeros((rows, cols), dtype=np.uint8))

    @classmethod
    def identity(cls, p, n):
        return cls(p, np.eye(n, dtype=np.uint8))

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    def __eq__(self, other):
        return (
            isinstance(other, FpMatrix)
            and self.p == other.p
            and self.entries.shape == other.entries.shape
            and np.array_equal(self.entries, other.entries)
        )

    def __matmul__(self, other: FpMatrix) -> FpMatrix:
        if self.p != other.p:
            raise DimensionMismatch("different primes")
        return FpMatrix(self.p, mulmod(self.entries, other.entries, self.p))

    def transpose(self) -> FpMatrix:
        return FpMatrix(self.p, self.entries.T)

    def apply(self, x) -> np.ndarray:
        """Return ``m . x`` for a column vector ``x``."""
        x = as_fp(x, self.p)
        if x.shape[1] != self.cols:
            raise DimensionMismatch(f"vector of length {x.shape[1]} for {self.cols} columns")
        return mulmod(self.entries, x.T, self.p)[:, 0]

    def tolist(self):
        return self.entries.astype(int).tolist()


@dataclass(frozen=True, eq=False)
class Subspace:
    """A subspace of GF(p)^ambient, held as an RREF basis."""

    p: int
    ambient: int
    basis: np.ndarray
    pivots: tuple

    @classmethod
    def from_rows(cls, p: int, ambient: int, rows) -> Subspace:
        if ambient == 0:
            return cls(p, 0, np.zeros((0, 0), np.uint8), ())
        rows = np.asarray(rows, dtype=np.int64).reshape(-1, ambient)
        r, piv = rref_array(as_fp(rows, p) if rows.size else np.zeros((0, ambient), np.uint8), p)
        r.setflags(write=False)
        return cls(p, ambient, r, tuple(piv))

    @classmethod
    def zero(cls, p, ambient):
        return cls.from_rows(p, ambient, np.zeros((0, ambient)))

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and (self.p, self.ambient, self.pivots) == (other.p, other.ambient, other.pivots)
            and np.array_equal(self.basis, other.basis)
        )

    def __le__(self, other: Subspace) -> bool:
        return all(member(other, row) for row in self.basis)

    def reduce(self, v) -> np.ndarray:
        return reduce_against(as_fp(v, self.p), self.basis, self.pivots, self.p)

    def as_matrix(self) -> FpMatrix:
        return FpMatrix(self.p, self.basis if self.dim else np.zeros((0, self.ambient)))


def rref(m: FpMatrix):
    """RREF with zero rows dropped, plus the pivot columns."""
    r, piv = rref_array(m.entries, m.p)
    return FpMatrix(m.p, r if len(piv) else np.zeros((0, m.cols))), piv


def rank(m: FpMatrix) -> int:
    return len(rref_array(m.entries, m.p)[1])


def kernel_basis(m: FpMatrix) -> Subspace:
    """Null space ``{x : m x = 0}``."""
    k = left_kernel(m.entries.T, m.p)
    return Subspace.from_rows(m.p, m.cols, k)


def image_basis(m: FpMatrix) -> Subspace:
    """Column space of ``m``."""
    return Subspace.from_rows(m.p, m.rows, m.entries.T)


def solve(m: FpMatrix, rhs):
    """Some ``x`` with ``m x = rhs``, or ``None`` when the system is inconsistent."""
    b = as_fp(rhs, m.p)
    if b.shape[1] != m.rows:
        raise DimensionMismatch(f"rhs length {b.shape[1]} for {m.rows} rows")
    x = RowSolver(m.entries.T, m.p).solve(b)
    return None if x is None else x[0]


def member(s: Subspace, v) -> bool:
    v = as_fp(v, s.p)
    if v.shape[1] != s.ambient:
        raise DimensionMismatch(f"vector of length {v.shape[1]} in ambient {s.ambient}")
    return not s.reduce(v).any()


def subspace_sum(s1: Subspace, s2: Subspace) -> Subspace:
    if (s1.p, s1.ambient) != (s2.p, s2.ambient):
        raise DimensionMismatch("subspaces live in different spaces")
    return Subspace.from_rows(s1.p, s1.ambient, np.concatenate([s1.basis, s2.basis]))

"""Normalized bar complex: an independent cup product for small groups.

Cochains of degree n are functions on n-tuples of non-identity elements,
and the cup product is the Alexander–Whitney formula
``(f ∪ g)(g1..g_{m+n}) = f(g1..gm) g(g_{m+1}..g_{m+n})``.  Classes move
between the bar complex and a resolution through the chain map
``Phi: P -> Bar`` built with the bar contracting homotopy, so this route
never lifts a cocycle.
"""

from __future__ import annotations

from dataclasses import dataclass
import numpy as np

from .groups.core import FiniteGroup
from .linalg import RowSolver, left_kernel, mulmod, reduce_against, rref_array
from .resolution import CohClass, InsufficientLength, Resolution

MAX_ORDER = 9
MAX_DEGREE = 3


class BarSizeExceeded(ValueError):
    pass


def _check_size(G, n):
    if G.order > MAX_ORDER or n > MAX_DEGREE:
        raise BarSizeExceeded(f"bar oracle limited to |G| <= {MAX_ORDER}, degree <= {MAX_DEGREE}")


class BarComplex:
    """Normalized inhomogeneous cochains with trivial F_p coefficients."""

    def __init__(self, G: FiniteGroup, p: int):
        self.G, self.p = G, p
        self.k = G.order - 1  # non-identity elements are ids 1..k
        self._delta = {}
        self._spaces = {}

    def size(self, n: int) -> int:
        return self.k**n

    def tuples(self, n: int) -> np.ndarray:
        """All n-tuples of non-identity ids, in index order."""
        if n == 0:
            return np.zeros((1, 0), dtype=np.int64)
        grids = np.meshgrid(*[np.arange(1, self.k + 1)] * n, indexing="ij")
        return np.stack([g.reshape(-1) for g in grids], axis=1)

    def index(self, t: np.ndarray) -> np.ndarray:
        """Index of each row tuple; -1 where a coordinate is the identity."""
        t = np.atleast_2d(t)
        idx = np.zeros(len(t), dtype=np.int64)
        for j in range(t.shape[1]):
            idx = idx * self.k + (t[:, j] - 1)
        idx[(t == 0).any(axis=1)] = -1
        return idx

    def delta(self, n: int) -> np.ndarray:
        """Coboundary C^n -> C^{n+1} as a (|C^{n+1}|, |C^n|) matrix."""
        if n not in self._delta:
            _check_size(self.G, n)  # lands in degree n + 1
            T = self.tuples(n + 1)
            rows = np.arange(len(T))
            M = np.zeros((len(T), self.size(n)), dtype=np.int64)

            def add(cols, sign):
                ok = cols >= 0
                np.add.at(M, (rows[ok], cols[ok]), sign)

            add(self.index(T[:, 1:]), 1)
            for i in range(1, n + 1):
                merged = self.G.mul[T[:, i - 1], T[:, i]]
                t = np.concatenate([T[:, : i - 1], merged[:, None], T[:, i + 1 :]], axis=1)
                add(self.index(t), (-1) ** i)
            add(self.index(T[:, :n]), (-1) ** (n + 1))
            self._delta[n] = (M % self.p).astype(np.uint8)
        return self._delta[n]

    def cohomology(self, n: int) -> BarCohomology:
        if n not in self._spaces:
            self._spaces[n] = BarCohomology(self, n)
        return self._spaces[n]

    def cup(self, f: np.ndarray, g: np.ndarray) -> np.ndarray:
        """Alexander–Whitney product of cochains (flat vectors)."""
        return (np.outer(f, g).reshape(-1) % self.p).astype(np.uint8)


class BarCohomology:
    def __init__(self, bar: BarComplex, n: int):
        p = bar.p
        self.bar, self.degree = bar, n
        Z = left_kernel(bar.delta(n).T, p)
        if n == 0:
            self.bbasis, self.bpivots = np.zeros((0, 1), np.uint8), []
        else:
            self.bbasis, self.bpivots = rref_array(bar.delta(n - 1).T, p)
        red = reduce_against(Z, self.bbasis, self.bpivots, p)
        self.basis, self.pivots = rref_array(red, p)

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def coords(self, f) -> np.ndarray:
        return reduce_against(np.atleast_2d(f), self.bbasis, self.bpivots, self.bar.p)[:, self.pivots]

    def is_cocycle(self, f) -> bool:
        return not mulmod(self.bar.delta(self.degree), np.atleast_2d(f).T, self.bar.p).any()


@dataclass(frozen=True, eq=False)
class BarClass:
    bar: BarComplex
    degree: int
    cochain: np.ndarray

    def coords(self) -> np.ndarray:
        return self.bar.cohomology(self.degree).coords(self.cochain)[0]


class BarTransport:
    """The chain map ``Phi: P -> Bar`` and the induced isomorphism on H^n.

    ``Phi_n(e_i) = s(Phi_{n-1}(d_n e_i))`` with the contracting homotopy
    ``s(g0[g1|..]) = [g0|g1|..]`` (zero when g0 = 1).
    """

    def __init__(self, res: Resolution, bar: BarComplex | None = None):
        self.res = res
        self.bar = bar or BarComplex(res.group, res.p)
        if self.bar.G is not res.group or self.bar.p != res.p:
            raise ValueError("bar complex over a different group or prime")
        self._phi = [np.eye(1, res.group.order, dtype=np.int64)]  # the identity element
        self._inverses = {}

    def phi(self, n: int) -> np.ndarray:
        """Phi_n as an array (r_n, |G|, |G|^n): coefficient of g0[g1|..|gn]."""
        G, p = self.res.group, self.res.p
        _check_size(G, n)
        N = G.order
        while len(self._phi) <= n:
            m = len(self._phi)
            X = self._phi[-1].reshape(self.res.ranks[m - 1], N, -1)
            D = self.res.d(m).reshape(self.res.ranks[m], self.res.ranks[m - 1], N).astype(np.int64)
            gather = G.mul[G.inv[:, None], np.arange(N)[None, :]]  # (h, g') -> h^-1 g'
            Xh = X[:, gather, :]  # (r_{m-1}, h, g', rest): h . X
            Y = np.einsum("ijh,jhgr->igr", D, Xh) % p
            Y[:, 0, :] = 0  # s kills g0 = 1
            Z = np.zeros((len(Y), N, N * Y.shape[2]), dtype=np.int64)
            Z[:, 0, :] = Y.reshape(len(Y), -1)
            self._phi.append(Z)
        return self._phi[n]

    def pullback_matrix(self, n: int) -> np.ndarray:
        """Cochains to resolution cocycles: (r_n, |C^n|)."""
        N = self.res.group.order
        if n == 0:
            return np.ones((1, 1), dtype=np.uint8)
        P = self.phi(n).sum(axis=1)  # equivariant extension ignores g0
        P = P.reshape(len(P), *([N] * n))
        keep = np.ix_(*([np.arange(len(P))] + [np.arange(1, N)] * n))
        return (P[keep].reshape(len(P), -1) % self.res.p).astype(np.uint8)

    def to_resolution(self, c: BarClass) -> CohClass:
        f = mulmod(self.pullback_matrix(c.degree), np.atleast_2d(c.cochain).T, self.res.p)[:, 0]
        return CohClass(self.res, c.degree, f).canonical()

    def from_resolution(self, cls: CohClass) -> BarClass:
        """A bar cocycle whose pullback is cohomologous to ``cls``."""
        n, p = cls.degree, self.res.p
        if n not in self._inverses:
            Hb = self.bar.cohomology(n)
            images = cls.space.coords(mulmod(Hb.basis, self.pullback_matrix(n).T, p)) if Hb.dim else np.zeros((0, cls.space.dim), np.uint8)
            if images.shape != (Hb.dim, cls.space.dim):
                raise InsufficientLength("dimension mismatch between bar and resolution cohomology")
            self._inverses[n] = (RowSolver(images, p), Hb)
        solver, Hb = self._inverses[n]
        x = solver.solve(cls.coords()[None, :])
        if x is None:
            raise ValueError("class not in the image of the bar comparison")
        return BarClass(self.bar, n, mulmod(x, Hb.basis, p)[0] if Hb.dim else np.zeros(self.bar.size(n), np.uint8))


def cup_bar_oracle(G: FiniteGroup, p: int, a: BarClass, b: BarClass) -> BarClass:
    """Cup product of two bar classes by the cochain formula."""
    if a.bar is not b.bar or a.bar.G is not G or a.bar.p != p:
        raise ValueError("classes from a different bar complex")
    _check_size(G, a.degree + b.degree)
    return BarClass(a.bar, a.degree + b.degree, a.bar.cup(a.cochain, b.cochain))


def transported_cup(transport: BarTransport, a: CohClass, b: CohClass) -> CohClass:
    """The bar-route cup of two resolution classes, read back on the resolution."""
    A, B = transport.from_resolution(a), transport.from_resolution(b)
    return transport.to_resolution(cup_bar_oracle(transport.res.group, transport.res.p, A, B))

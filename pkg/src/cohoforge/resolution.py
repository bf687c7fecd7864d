"""Free resolutions of the trivial module over F_p[G] and their cohomology.

A free module of rank r is stored as vectors of length ``r*|G|``: entry
``j*|G| + h`` is the coefficient of ``h * e_j``.  An equivariant map is
given by the images of the free generators (one row each); it is expanded
over the group basis only when a kernel, image or preimage is needed.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .groups.core import FiniteGroup
from .groups.structure import is_p_group
from .linalg import RowSolver, left_kernel, mulmod, reduce_against, rref_array

MINIMAL = "minimal"
GREEDY = "greedy"

# Largest free-module dimension r*|G| a resolution may reach.
DEFAULT_BUDGET = 40_000


class BudgetExceeded(RuntimeError):
    pass


class InsufficientLength(ValueError):
    pass


def translate(G: FiniteGroup, g: int, v: np.ndarray) -> np.ndarray:
    """Left action ``g . v`` on rows of a free module."""
    v = np.atleast_2d(v)
    n = G.order
    r = v.shape[1] // n
    src = G.mul[G.inv[g]]  # (g.v)[j, h] = v[j, g^-1 h]
    return v.reshape(-1, r, n)[:, :, src].reshape(v.shape)


def expand(U: np.ndarray, n_src: int, tgt: FiniteGroup, image=None) -> np.ndarray:
    """Full matrix of an equivariant map from generator images.

    Row ``i*n_src + a`` is ``image(a) . U[i]``; ``image`` is the group map
    through which the source group acts (identity when omitted).
    """
    r_src, width = U.shape
    n = tgt.order
    r_t = width // n
    if image is None:
        image = np.arange(n_src)
    gather = tgt.mul[tgt.inv[np.asarray(image)]]  # (n_src, n)
    out = U.reshape(r_src, r_t, n)[:, :, gather]  # (r_src, r_t, n_src, n)
    return np.ascontiguousarray(out.transpose(0, 2, 1, 3).reshape(r_src * n_src, r_t * n))


def block_augment(U: np.ndarray, n: int, p: int) -> np.ndarray:
    """Apply the augmentation to every group-ring entry of ``U``."""
    r_src, width = U.shape
    return (U.reshape(r_src, width // n, n).sum(axis=2, dtype=np.int64) % p).astype(np.uint8)


@dataclass(frozen=True, eq=False)
class FreeModuleMap:
    group: FiniteGroup
    p: int
    source_rank: int
    target_rank: int
    generator_images: np.ndarray

    def expanded(self) -> np.ndarray:
        return expand(self.generator_images, self.group.order, self.group)

    def is_equivariant(self) -> bool:
        E = self.expanded()
        n = self.group.order
        for s in self.group.generators:
            rows = np.arange(self.source_rank * n).reshape(self.source_rank, n)
            moved = rows[:, self.group.mul[s]].reshape(-1)  # row of s.(h e_i)
            if not np.array_equal(E[moved], translate(self.group, s, E)):
                return False
        return True


def _minimal_generators(G, K, p):
    """Rows of K spanning K modulo I.K (I the augmentation ideal)."""
    if K.shape[0] == 0:
        return K
    # I.K = sum over generators s of (s - 1).K because I = sum (s - 1).F_pG
    if not G.generators:
        return rref_array(K, p)[0]
    IK = np.concatenate([(translate(G, s, K).astype(np.int16) - K) % p for s in G.generators]).astype(np.uint8)
    IKr, piv = rref_array(IK, p)
    R = reduce_against(K, IKr, piv, p)
    R = R[R.any(axis=1)]
    gens, _ = rref_array(R, p)
    return gens


def _greedy_generators(G, K, p):
    """Kernel rows in canonical order, keeping those outside the submodule
    generated by the ones already kept."""
    if K.shape[0] == 0:
        return K
    dimK = K.shape[0]
    M = np.zeros((0, K.shape[1]), np.uint8)
    piv = []
    chosen = []
    while len(piv) < dimK:
        red = reduce_against(K, M, piv, p)
        i = int(np.flatnonzero(red.any(axis=1))[0])
        chosen.append(K[i])
        orbit = np.concatenate([translate(G, g, K[i : i + 1]) for g in range(G.order)])
        M, piv = rref_array(np.concatenate([M, orbit]), p)
    return np.array(chosen, dtype=np.uint8)


@dataclass(eq=False)
class Resolution:
    group: FiniteGroup
    p: int
    strategy: str
    ranks: list
    diffs: list  # diffs[n - 1] is d_n, shape (r_n, r_{n-1} |G|)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    def __post_init__(self):
        self._expanded = {}
        self._solvers = {}
        self._cohomology = {}
        self._lifts = {}
        self._pullbacks = {}

    def __repr__(self):
        return f"Resolution({self.group.label}, p={self.p}, {self.strategy}, ranks={self.ranks})"

    @property
    def length(self) -> int:
        return len(self.ranks) - 1

    @property
    def minimal(self) -> bool:
        return self.strategy == MINIMAL

    def d(self, n: int) -> np.ndarray:
        if not 1 <= n <= self.length:
            raise InsufficientLength(f"d_{n} not available (length {self.length})")
        return self.diffs[n - 1]

    def differential(self, n: int) -> FreeModuleMap:
        return FreeModuleMap(self.group, self.p, self.ranks[n], self.ranks[n - 1], self.d(n))

    def expanded(self, n: int) -> np.ndarray:
        """Full matrix of d_n (n >= 1) or of the augmentation (n = 0)."""
        if n not in self._expanded:
            if n == 0:
                E = np.ones((self.group.order, 1), dtype=np.uint8)
            else:
                E = expand(self.d(n), self.group.order, self.group)
            self._expanded[n] = E
        return self._expanded[n]

    def solver(self, n: int) -> RowSolver:
        with self._lock:
            if n not in self._solvers:
                self._solvers[n] = RowSolver(self.expanded(n), self.p)
            return self._solvers[n]

    def augmented(self, n: int) -> np.ndarray:
        """The map induced by d_n on functionals, as an r_n x r_{n-1} matrix."""
        return block_augment(self.d(n), self.group.order, self.p)

    def cohomology(self, n: int) -> CohomologySpace:
        with self._lock:
            if n not in self._cohomology:
                self._cohomology[n] = CohomologySpace(self, n)
            return self._cohomology[n]

    def required_length(self, n: int) -> int:
        # a minimal resolution has zero augmented differentials, so every
        # functional is a cocycle and d_{n+1} is not needed
        return n if self.minimal else n + 1

    def unit(self) -> CohClass:
        return CohClass(self, 0, np.ones(1, dtype=np.uint8))


def build_resolution(G: FiniteGroup, p: int, N: int, strategy: str = MINIMAL, cache=None, budget: int = DEFAULT_BUDGET) -> Resolution:
    """Free resolution of F_p over F_p[G] through degree N.

    ``minimal`` (p-groups only) picks kernel generators modulo the
    augmentation-ideal multiples, so ranks equal cohomology dimensions.
    ``greedy`` works for any group.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    if strategy not in (MINIMAL, GREEDY):
        raise ValueError(f"unknown strategy {strategy!r}")
    if strategy == MINIMAL and not is_p_group(G, p):
        raise ValueError(f"minimal strategy needs a {p}-group; {G.label} has order {G.order}")
    if cache is not None:
        hit = cache.load(G, p, N, strategy)
        if hit is not None:
            return hit
    n = G.order
    ranks = [1]
    diffs = []
    E = np.ones((n, 1), dtype=np.uint8)
    pick = _minimal_generators if strategy == MINIMAL else _greedy_generators
    for _deg in range(1, N + 1):
        K = left_kernel(E, p) if E.shape[0] else np.zeros((0, E.shape[0]), np.uint8)
        gens = pick(G, K, p)
        if len(gens) * n > budget:
            raise BudgetExceeded(f"rank {len(gens)} over a group of order {n} exceeds the budget {budget}")
        gens = np.ascontiguousarray(gens.reshape(len(gens), ranks[-1] * n), dtype=np.uint8)
        diffs.append(gens)
        ranks.append(len(gens))
        E = expand(gens, n, G) if len(gens) else np.zeros((0, ranks[-2] * n), np.uint8)
    res = Resolution(G, p, strategy, ranks, diffs)
    res._expanded[N] = E
    if cache is not None:
        cache.store(res)
    return res


class CohomologySpace:
    """H^n as cocycles modulo coboundaries, with a canonical basis.

    The basis is the RREF of the cocycles after clearing the pivot columns
    of the coboundary space; coordinates are read off the basis pivots.
    """

    def __init__(self, res: Resolution, n: int):
        if n > res.length or res.required_length(n) > res.length:
            raise InsufficientLength(f"H^{n} needs resolution length {res.required_length(n)}, have {res.length}")
        p = res.p
        r = res.ranks[n]
        self.res, self.degree, self.p = res, n, p
        if res.minimal:
            self.bbasis, self.bpivots = np.zeros((0, r), np.uint8), []
            self.basis, self.pivots = np.eye(r, dtype=np.uint8), list(range(r))
            return
        Z = left_kernel(res.augmented(n + 1).T, p)
        if n == 0:
            self.bbasis, self.bpivots = np.zeros((0, r), np.uint8), []
        else:
            self.bbasis, self.bpivots = rref_array(res.augmented(n).T, p)
        red = reduce_against(Z, self.bbasis, self.bpivots, p) if len(Z) else Z
        self.basis, self.pivots = rref_array(red, p) if len(red) else (np.zeros((0, r), np.uint8), [])

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def is_cocycle(self, f) -> bool:
        res = self.res
        if res.minimal or self.degree + 1 > res.length:
            return True
        return not mulmod(res.augmented(self.degree + 1), np.atleast_2d(f).T, self.p).any()

    def coords(self, f) -> np.ndarray:
        red = reduce_against(np.atleast_2d(f), self.bbasis, self.bpivots, self.p)
        return red[:, self.pivots]

    def representative(self, c) -> np.ndarray:
        return mulmod(np.atleast_2d(np.asarray(c, dtype=np.uint8)), self.basis, self.p)


@dataclass(frozen=True, eq=False)
class CohClass:
    """A cohomology class given by a cocycle: a functional on the free
    generators of P_degree."""

    res: Resolution
    degree: int
    cocycle: np.ndarray

    def __post_init__(self):
        f = np.asarray(self.cocycle, dtype=np.int64).reshape(-1) % self.res.p
        object.__setattr__(self, "cocycle", f.astype(np.uint8))
        if len(f) != self.res.ranks[self.degree]:
            raise ValueError("cocycle length does not match the rank of P_n")

    @property
    def space(self) -> CohomologySpace:
        return self.res.cohomology(self.degree)

    def coords(self) -> np.ndarray:
        return self.space.coords(self.cocycle)[0]

    def is_zero(self) -> bool:
        return not self.coords().any()

    def is_cocycle(self) -> bool:
        return self.space.is_cocycle(self.cocycle)

    def canonical(self) -> CohClass:
        return CohClass(self.res, self.degree, self.space.representative(self.coords())[0])

    def _same(self, other):
        if other.res is not self.res or other.degree != self.degree:
            raise ValueError("classes live in different cohomology groups")

    def __add__(self, other: CohClass) -> CohClass:
        self._same(other)
        return CohClass(self.res, self.degree, self.cocycle.astype(np.int64) + other.cocycle)

    def __sub__(self, other: CohClass) -> CohClass:
        self._same(other)
        return CohClass(self.res, self.degree, self.cocycle.astype(np.int64) - other.cocycle)

    def __rmul__(self, k: int) -> CohClass:
        return CohClass(self.res, self.degree, self.cocycle.astype(np.int64) * int(k))

    def __eq__(self, other):
        if not isinstance(other, CohClass):
            return NotImplemented
        return other.res is self.res and other.degree == self.degree and np.array_equal(self.coords(), other.coords())

    def __repr__(self):
        return f"CohClass(H^{self.degree}({self.res.group.label}), coords={self.coords().tolist()})"


def cohomology_dims(res: Resolution, N: int) -> list:
    """dim H^n(G, F_p) for 0 <= n <= N."""
    if res.required_length(N) > res.length:
        raise InsufficientLength(f"dims through degree {N} need length {res.required_length(N)}")
    return [res.cohomology(n).dim for n in range(N + 1)]


def cocycle_basis(res: Resolution, n: int) -> list:
    H = res.cohomology(n)
    return [CohClass(res, n, row) for row in H.basis]


# --- degree one as homomorphisms -------------------------------------------------


@dataclass(frozen=True, eq=False)
class Character:
    """A homomorphism G -> F_p, by its values on all elements."""

    group: FiniteGroup
    p: int
    values: np.ndarray

    def on_generators(self) -> dict:
        return {name: int(self.values[g]) for name, g in zip(self.group.gen_names, self.group.generators)}


def h1_as_homs(G: FiniteGroup, p: int) -> list:
    """Basis of Hom(G, F_p), canonical in the generator values.

    Each element's value is a linear form in the generator values (read off
    a spanning tree); every other edge of the Cayley graph imposes one
    linear constraint.
    """
    k = len(G.generators)
    if k == 0:
        return []
    forms = np.full((G.order, k), -1, dtype=np.int64)
    forms[0] = 0
    constraints = []
    frontier = [0]
    while frontier:
        nxt = []
        for a in frontier:
            for i, s in enumerate(G.generators):
                b = int(G.mul[a, s])
                f = forms[a].copy()
                f[i] += 1
                if forms[b, 0] < 0:
                    forms[b] = f
                    nxt.append(b)
                else:
                    constraints.append(f - forms[b])
        frontier = nxt
    forms %= p
    C = np.array(constraints, dtype=np.int64).reshape(-1, k) % p
    basis = left_kernel(C.T.astype(np.uint8), p) if len(C) else np.eye(k, dtype=np.uint8)
    return [Character(G, p, mulmod(forms.astype(np.uint8), row[:, None], p)[:, 0]) for row in basis]


def character(G: FiniteGroup, p: int, generator_values: dict) -> Character:
    """The homomorphism with the given values on named generators (others 0)."""
    vals = np.array([generator_values.get(name, 0) % p for name in G.gen_names], dtype=np.uint8)
    basis = h1_as_homs(G, p)
    if not basis:
        if vals.any():
            raise ValueError("no nonzero homomorphism to F_p")
        return Character(G, p, np.zeros(G.order, np.uint8))
    B = np.array([[int(c.values[g]) for g in G.generators] for c in basis], dtype=np.uint8)
    sol = RowSolver(B, p).solve(vals[None, :])
    if sol is None:
        raise ValueError(f"generator values {generator_values} do not define a homomorphism")
    values = sum(int(c) * b.values.astype(np.int64) for c, b in zip(sol[0], basis)) % p
    return Character(G, p, np.asarray(values, dtype=np.uint8))


def hom_class(res: Resolution, chi: Character) -> CohClass:
    """The degree-1 class of a homomorphism: e_i -> chi(d_1 e_i)."""
    if chi.group is not res.group:
        raise ValueError("character of a different group")
    f = mulmod(res.d(1), chi.values[:, None].astype(np.uint8), res.p)[:, 0]
    return CohClass(res, 1, f)


# --- verification --------------------------------------------------------------


@dataclass
class ExactnessReport:
    ranks: list
    kernel_dims: list
    image_dims: list
    failures: list

    @property
    def passed(self) -> bool:
        return not self.failures


def verify_exactness(res: Resolution) -> ExactnessReport:
    """Recheck d∘d = 0, exactness below the top degree, and minimality."""
    G, p, N = res.group, res.p, res.length
    n_el = G.order
    fails = []
    rank_of = {}

    def rank(n):
        if n not in rank_of:
            E = expand(res.d(n), n_el, G) if n else np.ones((n_el, 1), np.uint8)
            rank_of[n] = len(rref_array(E, p)[1]) if E.size else 0
        return rank_of[n]

    if res.ranks[0] != 1:
        fails.append((0, "P_0 is not of rank 1"))
    kdims, idims = [], []
    for n in range(N + 1):
        if n >= 1:
            prev = expand(res.d(n - 1), n_el, G) if n >= 2 else np.ones((n_el, 1), np.uint8)
            if res.ranks[n] and mulmod(res.d(n), prev, p).any():
                fails.append((n, "d_{n-1} d_n != 0" if n > 1 else "augmentation of d_1 != 0"))
            if res.minimal and res.augmented(n).any():
                fails.append((n, "differential has an entry outside the augmentation ideal"))
        kdim = res.ranks[n] * n_el - rank(n) if n else n_el - 1
        kdims.append(kdim)
        if n < N:
            idim = rank(n + 1) if res.ranks[n + 1] else 0
            idims.append(idim)
            if kdim != idim:
                fails.append((n, f"not exact: dim ker {kdim} != dim im {idim}"))
    return ExactnessReport(list(res.ranks), kdims, idims, fails)

"""Cup products, inflation, restriction and the decomposable subalgebra.

Everything goes through one engine: a chain map between two resolutions,
found degree by degree by solving ``U_j . d_j = d_{s+j} . U_{j-1}`` in the
target.  A cup product with a degree-m class lifts that class to a chain
map shifting degrees by m; inflation and restriction are chain maps over a
group homomorphism.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .groups.core import GroupHom
from .groups.structure import is_p_group
from .linalg import Subspace, member, mulmod
from .resolution import (
    GREEDY,
    MINIMAL,
    CohClass,
    InsufficientLength,
    Resolution,
    build_resolution,
    expand,
    block_augment,
    h1_as_homs,
    hom_class,
)


class LiftError(RuntimeError):
    """A chain map could not be extended; the inputs are not a valid
    cocycle over an exact resolution."""


def _same_group(a, b) -> bool:
    return a is b or (a.order == b.order and np.array_equal(a.mul, b.mul))


def comparison_maps(src: Resolution, tgt: Resolution, u0: np.ndarray, upto: int, shift: int = 0, image=None, start=None) -> list:
    """Chain map ``U_j: P^src_{shift+j} -> P^tgt_j`` for ``j <= upto``.

    ``image`` gives the source group's action on the target through a group
    homomorphism (identity when omitted).  ``start`` continues a list
    already computed for smaller ``upto``.
    """
    if shift + upto > src.length:
        raise InsufficientLength(f"source resolution needs length {shift + upto}")
    if upto > tgt.length:
        raise InsufficientLength(f"target resolution needs length {upto}")
    p = src.p
    maps = list(start) if start else [np.asarray(u0, dtype=np.uint8)]
    for j in range(len(maps), upto + 1):
        rows = src.ranks[shift + j]
        if rows == 0:
            maps.append(np.zeros((0, tgt.ranks[j] * tgt.group.order), np.uint8))
            continue
        prev = expand(maps[-1], src.group.order, tgt.group, image)
        T = mulmod(src.d(shift + j), prev, p)
        U = tgt.solver(j).solve(T)
        if U is None:
            raise LiftError(f"no lift at stage {j}")
        maps.append(U)
    return maps


@dataclass(frozen=True, eq=False)
class ChainMapLift:
    """Chain map ``u_j: P_{m+j} -> P_j`` covering a degree-m cocycle."""

    cls: CohClass
    maps: list

    def stage(self, j: int) -> np.ndarray:
        return self.maps[j]

    def verify(self) -> bool:
        res, m, p = self.cls.res, self.cls.degree, self.cls.res.p
        n = res.group.order
        if not np.array_equal(block_augment(self.maps[0], n, p)[:, 0], self.cls.cocycle):
            return False
        for j in range(1, len(self.maps)):
            lhs = mulmod(self.maps[j], res.expanded(j), p)
            rhs = mulmod(res.d(m + j), expand(self.maps[j - 1], n, res.group), p)
            if not np.array_equal(lhs, rhs):
                return False
        return True


def _initial(cocycle: np.ndarray, tgt: Resolution) -> np.ndarray:
    u0 = np.zeros((len(cocycle), tgt.group.order), dtype=np.uint8)
    u0[:, 0] = cocycle
    return u0


def lift_cocycle(res: Resolution, cls: CohClass, k: int) -> ChainMapLift:
    if cls.res is not res:
        raise ValueError("class belongs to another resolution")
    maps = comparison_maps(res, res, _initial(cls.cocycle, res), k, shift=cls.degree)
    return ChainMapLift(cls, maps)


def _basis_lifts(res: Resolution, m: int, k: int) -> list:
    """Lifts of the canonical H^m basis through stage k, cached on ``res``."""
    H = res.cohomology(m)
    with res._lock:
        cached = res._lifts.get(m)
    if cached is not None and (not cached or len(cached[0]) > k):
        return cached
    out = []
    for i, row in enumerate(H.basis):
        start = cached[i] if cached else None
        out.append(comparison_maps(res, res, _initial(row, res), k, shift=m, start=start))
    with res._lock:
        res._lifts[m] = out
    return out


def _check_length(res: Resolution, degree: int):
    if res.required_length(degree) > res.length:
        raise InsufficientLength(f"degree {degree} needs resolution length {res.required_length(degree)}, have {res.length}")


def cup(a: CohClass, b: CohClass) -> CohClass:
    """Cup product: ``b`` composed with the degree-|b| stage of a lift of ``a``."""
    if a.res is not b.res:
        raise ValueError("classes live on different resolutions")
    res, m, n = a.res, a.degree, b.degree
    _check_length(res, m + n)
    lifts = _basis_lifts(res, m, n)
    coeffs = a.coords()
    U = np.zeros((res.ranks[m + n], res.ranks[n] * res.group.order), dtype=np.int64)
    for c, lift in zip(coeffs, lifts):
        if c:
            U += int(c) * lift[n].astype(np.int64)
    A = block_augment((U % res.p).astype(np.uint8), res.group.order, res.p)
    f = mulmod(A, b.cocycle[:, None], res.p)[:, 0]
    return CohClass(res, m + n, f).canonical()


# --- maps along group homomorphisms ---------------------------------------------


class Pullback:
    """The map H*(Q) -> H*(G) induced by a homomorphism G -> Q."""

    def __init__(self, phi: GroupHom, src: Resolution, tgt: Resolution):
        if not _same_group(phi.source, src.group) or not _same_group(phi.target, tgt.group):
            raise ValueError("resolutions do not match the homomorphism")
        if src.p != tgt.p:
            raise ValueError("resolutions over different primes")
        self.phi, self.src, self.tgt = phi, src, tgt
        self.image = np.asarray(phi.image)
        self._maps = None

    def maps(self, upto: int) -> list:
        if self._maps is None or len(self._maps) <= upto:
            u0 = np.zeros((1, self.tgt.group.order), dtype=np.uint8)
            u0[0, 0] = 1
            self._maps = comparison_maps(self.src, self.tgt, u0, upto, image=self.image, start=self._maps)
        return self._maps

    def __call__(self, cls: CohClass) -> CohClass:
        if cls.res is not self.tgt:
            raise ValueError("class is not on the target resolution")
        n = cls.degree
        _check_length(self.src, n)
        F = self.maps(n)[n]
        A = block_augment(F, self.tgt.group.order, self.src.p)
        f = mulmod(A, cls.cocycle[:, None], self.src.p)[:, 0]
        return CohClass(self.src, n, f).canonical()


def default_resolution(G, p, N) -> Resolution:
    strategy = MINIMAL if is_p_group(G, p) else GREEDY
    return build_resolution(G, p, N if strategy == MINIMAL else N + 1, strategy)


def _pullback(phi, src_res, tgt_res) -> Pullback:
    key = (id(tgt_res), tuple(int(x) for x in phi.image))
    with src_res._lock:
        pb = src_res._pullbacks.get(key)
        if pb is None or pb.tgt is not tgt_res:
            pb = Pullback(phi, src_res, tgt_res)
            src_res._pullbacks[key] = pb
    return pb


def inflation(phi: GroupHom, cls: CohClass, source_res: Resolution | None = None) -> CohClass:
    """Pull a class on Q back along a surjection G -> Q."""
    if not phi.is_surjective():
        raise ValueError("inflation needs a surjective homomorphism")
    if source_res is None:
        source_res = default_resolution(phi.source, cls.res.p, cls.degree)
    return _pullback(phi, source_res, cls.res)(cls)


def restriction(inclusion: GroupHom, cls: CohClass, sub_res: Resolution | None = None) -> CohClass:
    """Restrict a class on G to a subgroup H, given the inclusion H -> G."""
    if not inclusion.is_injective():
        raise ValueError("restriction needs an injective homomorphism")
    if sub_res is None:
        sub_res = default_resolution(inclusion.source, cls.res.p, cls.degree)
    return _pullback(inclusion, sub_res, cls.res)(cls)


# --- decomposable subalgebra ---------------------------------------------------


@dataclass(frozen=True, eq=False)
class DecLadder:
    """Subspaces Dec^n of H^n (canonical coordinates), n = 0..N."""

    res: Resolution
    spaces: tuple

    @property
    def top(self) -> int:
        return len(self.spaces) - 1

    @property
    def dec_dims(self) -> list:
        return [s.dim for s in self.spaces]

    @property
    def dims(self) -> list:
        return [s.ambient for s in self.spaces]

    def __getitem__(self, n) -> Subspace:
        return self.spaces[n]


def dec_ladder(res: Resolution, N: int, threads: int = 1) -> DecLadder:
    """Dec^1 = H^1 and Dec^n = H^1 . Dec^{n-1}."""
    _check_length(res, N)
    p = res.p
    spaces = [Subspace.from_rows(p, 1, [[1]])]
    if N >= 1:
        d1 = res.cohomology(1).dim
        spaces.append(Subspace.from_rows(p, d1, np.eye(d1, dtype=np.int64)))
    lifts = _basis_lifts(res, 1, N - 1) if N >= 2 else []
    G = res.group
    for n in range(2, N + 1):
        Hn, Hprev = res.cohomology(n), res.cohomology(n - 1)
        prev = spaces[-1]
        if prev.dim == 0 or not lifts:
            spaces.append(Subspace.zero(p, Hn.dim))
            continue
        B = Hprev.representative(prev.basis)  # cocycles, one per row

        def products(lift, n=n, B=B, Hn=Hn):
            A = block_augment(lift[n - 1], G.order, p)
            return Hn.coords(mulmod(A, B.T, p).T)

        if threads > 1:
            with ThreadPoolExecutor(threads) as ex:
                parts = list(ex.map(products, lifts))
        else:
            parts = [products(lift) for lift in lifts]
        spaces.append(Subspace.from_rows(p, Hn.dim, np.concatenate(parts)))
    return DecLadder(res, tuple(spaces))


def is_fully_decomposable(cls: CohClass, ladder: DecLadder) -> bool:
    if cls.res is not ladder.res:
        raise ValueError("class and ladder live on different resolutions")
    if cls.degree > ladder.top:
        raise InsufficientLength(f"ladder stops at degree {ladder.top}")
    return member(ladder[cls.degree], cls.coords())


# --- summaries -----------------------------------------------------------------


@dataclass(frozen=True)
class RingFingerprint:
    dims: tuple
    dec_dims: tuple
    identities: tuple  # (description, holds)

    def as_dict(self) -> dict:
        return {"dims": list(self.dims), "dec_dims": list(self.dec_dims), "identities": [[d, bool(v)] for d, v in self.identities]}


def named_degree_one(res: Resolution) -> dict:
    """Degree-1 classes dual to the generators, keyed ``w_<generator>``.

    The characters form the basis that is reduced in the generator values,
    so each is dual to one generator and vanishes on the other pivots.
    """
    G = res.group
    out = {}
    for chi in h1_as_homs(G, res.p):
        vals = [int(chi.values[g]) for g in G.generators]
        name = G.gen_names[next(i for i, v in enumerate(vals) if v)]
        out[f"w_{name}"] = hom_class(res, chi)
    return out


def degree_one_identities(res: Resolution) -> list:
    """Products of named degree-1 classes: which vanish, which coincide."""
    named = named_degree_one(res)
    items = sorted(named.items())
    out = []
    for i, (a, ca) in enumerate(items):
        sq = cup(ca, ca)
        out.append((f"{a}^2 = 0", sq.is_zero()))
        for b, cb in items[i + 1 :]:
            ba = cup(cb, ca)
            out.append((f"{b}*{a} = 0", ba.is_zero()))
            out.append((f"{a}^2 = {b}*{a}", sq == ba))
            out.append((f"{b}^2 = {a}*{b}", cup(cb, cb) == cup(ca, cb)))
    return out


def fingerprint(res: Resolution, N: int, threads: int = 1) -> RingFingerprint:
    ladder = dec_ladder(res, N, threads=threads)
    ident = degree_one_identities(res) if res.required_length(2) <= res.length else []
    return RingFingerprint(tuple(ladder.dims), tuple(ladder.dec_dims), tuple(ident))

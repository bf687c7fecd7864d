"""Finite groups as full multiplication tables, and homomorphisms between them."""

from __future__ import annotations

import hashlib
from collections import deque
from dataclasses import dataclass
from functools import cached_property

import numpy as np

DEFAULT_ORDER_CAP = 1024


class GroupError(ValueError):
    """A group could not be realized or a map is not a homomorphism."""


class OrderCapExceeded(GroupError):
    pass


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """A group on elements ``0..order-1`` with ``0`` the identity.

    ``mul[a, b]`` is the id of ``a*b``.  Generators carry names so maps can
    be specified by name matching.
    """

    mul: np.ndarray
    generators: tuple
    gen_names: tuple
    label: str = ""

    def __post_init__(self):
        mul = np.ascontiguousarray(self.mul, dtype=np.int32)
        mul.setflags(write=False)
        object.__setattr__(self, "mul", mul)
        object.__setattr__(self, "generators", tuple(int(g) for g in self.generators))
        object.__setattr__(self, "gen_names", tuple(self.gen_names))
        if len(self.generators) != len(self.gen_names):
            raise GroupError("one name per generator is required")

    @property
    def order(self) -> int:
        return self.mul.shape[0]

    def __len__(self):
        return self.order

    def __repr__(self):
        return f"FiniteGroup({self.label or '?'}, order={self.order})"

    @cached_property
    def inv(self) -> np.ndarray:
        rows, cols = np.nonzero(self.mul == 0)
        out = np.empty(self.order, dtype=np.int32)
        out[rows] = cols
        return out

    @cached_property
    def fingerprint(self) -> str:
        """Hash of the table; equal tables give equal fingerprints."""
        h = hashlib.sha256()
        h.update(np.int64(self.order).tobytes())
        h.update(self.mul.astype("<i4").tobytes())
        return h.hexdigest()[:24]

    def gen(self, name: str) -> int:
        try:
            return self.generators[self.gen_names.index(name)]
        except ValueError:
            raise KeyError(f"{self.label} has no generator named {name!r}") from None

    def power(self, g: int, k: int) -> int:
        if k < 0:
            g, k = int(self.inv[g]), -k
        out = 0
        for _ in range(k):
            out = int(self.mul[out, g])
        return out

    def word(self, letters) -> int:
        """Evaluate a word given as ``(generator name, exponent)`` pairs."""
        out = 0
        for name, e in letters:
            out = int(self.mul[out, self.power(self.gen(name), e)])
        return out

    def closure(self, elements) -> frozenset:
        """Subgroup generated by ``elements``."""
        gens = [int(g) for g in elements]
        seen = {0}
        frontier = [0]
        while frontier:
            nxt = []
            for a in frontier:
                for s in gens:
                    b = int(self.mul[a, s])
                    if b not in seen:
                        seen.add(b)
                        nxt.append(b)
            frontier = nxt
        return frozenset(seen)

    @cached_property
    def element_orders(self) -> np.ndarray:
        n = self.order
        orders = np.zeros(n, dtype=np.int64)
        cur = np.arange(n)
        k = 1
        todo = np.ones(n, dtype=bool)
        while todo.any():
            done = todo & (cur == 0)
            orders[done] = k
            todo &= ~done
            cur = self.mul[cur, np.arange(n)]
            k += 1
        return orders

    def check_invariants(self) -> None:
        """Raise GroupError unless the table is a group generated by ``generators``.

        Associativity uses Light's test against the generators, which is
        exhaustive for the whole table once the generators generate.
        """
        n = self.order
        mul = self.mul
        idx = np.arange(n)
        if mul.min() < 0 or mul.max() >= n:
            raise GroupError("table entries out of range")
        if not (np.array_equal(mul[0], idx) and np.array_equal(mul[:, 0], idx)):
            raise GroupError("0 is not a two-sided identity")
        for row in (mul, mul.T):
            if not (np.sort(row, axis=1) == idx).all():
                raise GroupError("table is not a Latin square")
        if len(self.closure(self.generators)) != n:
            raise GroupError("generators do not generate")
        for s in self.generators:
            if not np.array_equal(mul[mul, s], mul[:, mul[:, s]]):
                raise GroupError("multiplication is not associative")


def element_order(G: FiniteGroup, g: int) -> int:
    return int(G.element_orders[g])


@dataclass(frozen=True, eq=False)
class SubgroupHandle:
    parent: FiniteGroup
    elements: tuple

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(sorted(int(e) for e in self.elements)))

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, g):
        return g in self._set

    @cached_property
    def _set(self):
        return frozenset(self.elements)

    def __eq__(self, other):
        return isinstance(other, SubgroupHandle) and self.elements == other.elements

    def __hash__(self):
        return hash(self.elements)

    def __repr__(self):
        return f"SubgroupHandle(order={self.order} in {self.parent.label})"

    def is_subgroup(self) -> bool:
        s = self._set
        if 0 not in s:
            return False
        e = np.array(self.elements)
        prod = self.parent.mul[np.ix_(e, e)]
        return all(int(x) in s for x in np.unique(prod)) and all(
            int(self.parent.inv[x]) in s for x in e
        )

    def is_normal(self) -> bool:
        G = self.parent
        e = np.array(self.elements)
        for g in G.generators:
            conj = G.mul[G.mul[g, e], G.inv[g]]
            if set(conj.tolist()) != self._set:
                return False
        return True

    def generating_set(self) -> list:
        gens = []
        have = frozenset([0])
        for g in self.elements:
            if g not in have:
                gens.append(g)
                have = self.parent.closure(gens)
        return gens


@dataclass(frozen=True, eq=False)
class GroupHom:
    source: FiniteGroup
    target: FiniteGroup
    image: np.ndarray

    def __post_init__(self):
        img = np.ascontiguousarray(self.image, dtype=np.int32)
        img.setflags(write=False)
        object.__setattr__(self, "image", img)

    def __call__(self, g: int) -> int:
        return int(self.image[g])

    def is_homomorphism(self) -> bool:
        img = self.image
        if img.shape != (self.source.order,) or img[0] != 0:
            return False
        return np.array_equal(img[self.source.mul], self.target.mul[np.ix_(img, img)])

    def is_surjective(self) -> bool:
        return len(np.unique(self.image)) == self.target.order

    def is_injective(self) -> bool:
        return len(np.unique(self.image)) == self.source.order

    def kernel(self) -> SubgroupHandle:
        return SubgroupHandle(self.source, np.flatnonzero(self.image == 0))

    def compose(self, after: GroupHom) -> GroupHom:
        """``after ∘ self``."""
        if after.source is not self.target:
            raise GroupError("maps do not compose")
        return GroupHom(self.source, after.target, after.image[self.image])


def hom(source: FiniteGroup, target: FiniteGroup, generator_images) -> GroupHom:
    """Extend generator images (dict name->id, or a sequence aligned with
    ``source.generators``) to a homomorphism, verifying it is well defined."""
    if isinstance(generator_images, dict):
        imgs = [generator_images[name] for name in source.gen_names]
    else:
        imgs = list(generator_images)
    if len(imgs) != len(source.generators):
        raise GroupError("need one image per source generator")
    image = np.full(source.order, -1, dtype=np.int64)
    image[0] = 0
    queue = deque([0])
    while queue:
        a = queue.popleft()
        for s, t in zip(source.generators, imgs):
            b = int(source.mul[a, s])
            if image[b] < 0:
                image[b] = target.mul[image[a], t]
                queue.append(b)
    f = GroupHom(source, target, image)
    if (image < 0).any() or not f.is_homomorphism():
        raise GroupError("generator images do not extend to a homomorphism")
    return f


def identity_hom(G: FiniteGroup) -> GroupHom:
    return GroupHom(G, G, np.arange(G.order))


def _unique_names(left, right):
    taken = set(left)
    out = []
    for name in right:
        new = name
        k = 2
        while new in taken:
            new = f"{name}_{k}"
            k += 1
        taken.add(new)
        out.append(new)
    return out


def cyclic(n: int, name: str = "c") -> FiniteGroup:
    if n < 1:
        raise GroupError("cyclic order must be positive")
    idx = np.arange(n)
    mul = (idx[:, None] + idx[None, :]) % n
    gens = (1,) if n > 1 else ()
    return FiniteGroup(mul, gens, (name,) if n > 1 else (), label=f"C{n}")


def direct_product(a: FiniteGroup, b: FiniteGroup, cap: int = DEFAULT_ORDER_CAP, label=None):
    """Return ``(a x b, inj_a, inj_b, proj_a, proj_b)``.  Element ``(x, y)`` has id ``x*|b| + y``."""
    na, nb = a.order, b.order
    if na * nb > cap:
        raise OrderCapExceeded(f"order {na * nb} exceeds cap {cap}")
    mul = (a.mul[:, None, :, None] * nb + b.mul[None, :, None, :]).reshape(na * nb, na * nb)
    gens = [g * nb for g in a.generators] + list(b.generators)
    names = list(a.gen_names) + _unique_names(a.gen_names, b.gen_names)
    G = FiniteGroup(mul, gens, names, label=label or f"{a.label}x{b.label}")
    ia, ib = np.arange(na), np.arange(nb)
    inj_a = GroupHom(a, G, ia * nb)
    inj_b = GroupHom(b, G, ib)
    proj_a = GroupHom(G, a, np.repeat(ia, nb))
    proj_b = GroupHom(G, b, np.tile(ib, na))
    return G, inj_a, inj_b, proj_a, proj_b


def semidirect_product(N: FiniteGroup, K: FiniteGroup, action_gens, cap=DEFAULT_ORDER_CAP, label=""):
    """``N ⋊ K`` where ``action_gens[i]`` is the automorphism of N (an id
    permutation) by which the i-th generator of K acts by conjugation.

    Element ``(n, k)`` has id ``n*|K| + k`` and
    ``(n1, k1)(n2, k2) = (n1 * k1(n2), k1 k2)``.
    """
    nn, nk = N.order, K.order
    if nn * nk > cap:
        raise OrderCapExceeded(f"order {nn * nk} exceeds cap {cap}")
    auts = [np.asarray(a, dtype=np.int64) for a in action_gens]
    for a in auts:
        f = GroupHom(N, N, a)
        if not (f.is_homomorphism() and f.is_injective()):
            raise GroupError("action is not by automorphisms")
    act = np.full((nk, nn), -1, dtype=np.int64)
    act[0] = np.arange(nn)
    queue = deque([0])
    while queue:
        k = queue.popleft()
        for s, a in zip(K.generators, auts):
            k2 = int(K.mul[k, s])
            if act[k2, 0] < 0:
                act[k2] = act[k][a]
                queue.append(k2)
    # consistency: k -> act[k] must itself be a homomorphism K -> Aut(N)
    if not all(np.array_equal(act[K.mul[k1, k2]], act[k1][act[k2]]) for k1 in range(nk) for k2 in K.generators):
        raise GroupError("action does not respect the relations of the acting group")
    n1 = np.arange(nn)[:, None, None, None]
    k1 = np.arange(nk)[None, :, None, None]
    n2 = np.arange(nn)[None, None, :, None]
    k2 = np.arange(nk)[None, None, None, :]
    new_n = N.mul[n1, act[k1, n2]]
    new_k = K.mul[k1, k2]
    mul = (new_n * nk + new_k).reshape(nn * nk, nn * nk)
    gens = [g * nk for g in N.generators] + list(K.generators)
    names = list(N.gen_names) + _unique_names(N.gen_names, K.gen_names)
    return FiniteGroup(mul, gens, names, label=label or f"{N.label}:{K.label}")


def from_permutations(perms, names=None, label="") -> FiniteGroup:
    """Group generated by permutations (tuples of images), composed as
    functions: ``(a*b)(i) = a(b(i))``."""
    perms = [tuple(int(x) for x in q) for q in perms]
    deg = len(perms[0])
    ident = tuple(range(deg))
    elems = [ident]
    index = {ident: 0}
    queue = deque([ident])
    while queue:
        a = queue.popleft()
        for s in perms:
            b = tuple(a[s[i]] for i in range(deg))
            if b not in index:
                index[b] = len(elems)
                elems.append(b)
                queue.append(b)
    arr = np.array(elems)
    n = len(elems)
    mul = np.empty((n, n), dtype=np.int64)
    for i in range(n):
        comp = arr[i][arr]  # row j: a_i ∘ a_j
        mul[i] = [index[tuple(r)] for r in comp]
    names = names or [f"s{i + 1}" for i in range(len(perms))]
    return FiniteGroup(mul, [index[q] for q in perms], names, label=label)


def subgroup_group(S: SubgroupHandle, label=None):
    """Realize a subgroup as a group of its own; returns ``(group, inclusion)``."""
    G = S.parent
    elems = np.array(S.elements)
    pos = {int(e): i for i, e in enumerate(elems)}
    local = np.vectorize(pos.__getitem__, otypes=[np.int64])(G.mul[np.ix_(elems, elems)]) if len(elems) > 1 else np.zeros((1, 1), np.int64)
    gens = S.generating_set()
    names = [f"e{g}" for g in gens]
    H = FiniteGroup(local, [pos[g] for g in gens], names, label=label or f"sub({G.label},{len(elems)})")
    return H, GroupHom(H, G, elems)


def quotient_group(G: FiniteGroup, N: SubgroupHandle, label=None):
    """Realize ``G/N`` for a normal subgroup; returns ``(quotient, projection)``."""
    coset_of = np.full(G.order, -1, dtype=np.int64)
    reps = []
    nelems = np.array(N.elements)
    for g in range(G.order):
        if coset_of[g] < 0:
            coset_of[G.mul[g, nelems]] = len(reps)
            reps.append(g)
    reps = np.array(reps)
    mul = coset_of[G.mul[np.ix_(reps, reps)]]
    Q = FiniteGroup(mul, [int(coset_of[g]) for g in G.generators], G.gen_names, label=label or f"{G.label}/N")
    return Q, GroupHom(G, Q, coset_of)

"""Subgroup structure: O_{p'}, Sylow subgroups, normal subgroups, complements."""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product

import numpy as np

from .core import FiniteGroup, SubgroupHandle


def _p_part(n: int, p: int) -> int:
    q = 1
    while n % p == 0:
        n //= p
        q *= p
    return q


def is_p_group(G: FiniteGroup, p: int) -> bool:
    return _p_part(G.order, p) == G.order


def o_p_prime(G: FiniteGroup, p: int) -> SubgroupHandle:
    """Subgroup generated by the elements of order coprime to p."""
    coprime = [g for g in range(G.order) if math.gcd(int(G.element_orders[g]), p) == 1]
    return SubgroupHandle(G, G.closure(coprime))


def _normalizer(G: FiniteGroup, elems: frozenset) -> list:
    e = np.array(sorted(elems))
    out = []
    for g in range(G.order):
        conj = G.mul[G.mul[g, e], G.inv[g]]
        if elems.issuperset(conj.tolist()):
            out.append(g)
    return out


def sylow(G: FiniteGroup, p: int) -> SubgroupHandle:
    """A Sylow p-subgroup, grown one factor of p at a time.

    While P is not Sylow, N(P)/P has order divisible by p, so some g in
    N(P) \\ P has g^p in P and <P, g> has order p|P|.
    """
    target = _p_part(G.order, p)
    P = frozenset([0])
    while len(P) < target:
        for g in _normalizer(G, P):
            if g not in P and G.power(g, p) in P:
                P = G.closure(list(P) + [g])
                break
        else:  # pragma: no cover - impossible by the Sylow theorems
            raise RuntimeError("no p-element extends the current p-subgroup")
    return SubgroupHandle(G, P)


def conjugacy_classes(G: FiniteGroup) -> list:
    seen = np.zeros(G.order, dtype=bool)
    classes = []
    for g in range(G.order):
        if not seen[g]:
            cls = np.unique(G.mul[G.mul[np.arange(G.order), g], G.inv])
            seen[cls] = True
            classes.append(frozenset(int(x) for x in cls))
    return classes


def normal_closure(G: FiniteGroup, elems) -> frozenset:
    classes = [c for c in conjugacy_classes(G) if c & set(elems)]
    return G.closure(set().union(*classes) if classes else [])


def normal_subgroups(G: FiniteGroup) -> list:
    """All normal subgroups, sorted by (order, elements).

    Every normal subgroup is a union of conjugacy classes and the join of the
    normal closures of the classes it contains, so joins of class closures
    enumerate them all.
    """
    classes = conjugacy_classes(G)
    atoms = {G.closure(c) for c in classes}
    found = {frozenset([0])} | atoms
    frontier = list(found)
    while frontier:
        nxt = []
        for N in frontier:
            for A in atoms:
                if not A <= N:
                    J = G.closure(N | A)
                    if J not in found:
                        found.add(J)
                        nxt.append(J)
        frontier = nxt
    return [SubgroupHandle(G, N) for N in sorted(found, key=lambda s: (len(s), sorted(s)))]


def has_normal_complement(G: FiniteGroup, S: SubgroupHandle):
    """A normal N with N ∩ S = 1 and |N||S| = |G|, or None."""
    if G.order % S.order:
        return None
    want = G.order // S.order
    for N in normal_subgroups(G):
        if N.order == want and set(N.elements) & set(S.elements) == {0}:
            return N
    return None


def is_elementary_abelian(G: FiniteGroup, S: SubgroupHandle, p: int) -> bool:
    e = np.array(S.elements)
    if not np.array_equal(G.mul[np.ix_(e, e)], G.mul[np.ix_(e, e)].T):
        return False
    return all(int(G.element_orders[g]) in (1, p) for g in S.elements)


@dataclass(frozen=True)
class ClassifierVerdict:
    generated_in_degree_one: bool
    witness: SubgroupHandle | None
    status: str = "ok"  # or "p-does-not-divide-order": cohomology is concentrated in degree 0


def degree_one_classifier(G: FiniteGroup, p: int) -> ClassifierVerdict:
    """Decide whether H*(G, F_p) is generated in degree one.

    True exactly when p = 2 and a Sylow 2-subgroup is a nontrivial
    elementary abelian group with a normal complement; the witness is that
    complement.
    """
    if G.order % p:
        return ClassifierVerdict(False, None, "p-does-not-divide-order")
    if p != 2:
        return ClassifierVerdict(False, None)
    S = sylow(G, 2)
    if not is_elementary_abelian(G, S, 2):
        return ClassifierVerdict(False, None)
    N = has_normal_complement(G, S)
    return ClassifierVerdict(N is not None, N)


def is_isomorphic(A: FiniteGroup, B: FiniteGroup) -> bool:
    """Brute-force search for generator images, pruned by element orders."""
    if A.order != B.order:
        return False
    if np.bincount(A.element_orders).tolist() != np.bincount(B.element_orders).tolist():
        return False
    from .core import GroupError, hom

    gens = list(A.generators)
    candidates = [np.flatnonzero(B.element_orders == A.element_orders[g]) for g in gens]
    for imgs in product(*candidates):
        if len(B.closure(imgs)) != B.order:
            continue
        try:
            f = hom(A, B, list(imgs))
        except GroupError:
            continue
        if f.is_injective():
            return True
    return False

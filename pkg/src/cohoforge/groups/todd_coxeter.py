"""Todd–Coxeter coset enumeration (HLT strategy) over the trivial subgroup.

Words are lists of nonzero ints: ``k`` is generator ``k-1`` and ``-k`` its
inverse.  Columns of the coset table are ``2*i`` for generator ``i`` and
``2*i + 1`` for its inverse.
"""

from __future__ import annotations

import numpy as np

from .core import FiniteGroup, GroupError

DEFAULT_COSET_BOUND = 8192


class CosetBoundExceeded(GroupError):
    pass


def _col(letter: int) -> int:
    return 2 * (letter - 1) if letter > 0 else 2 * (-letter - 1) + 1


class _CosetTable:
    def __init__(self, ngens: int, bound: int):
        self.ncols = 2 * ngens
        self.bound = bound
        self.table = [[-1] * self.ncols]
        self.parent = [0]
        self.queue = []

    def alive(self, c):
        return self.parent[c] == c

    def define(self, c, x):
        if len(self.table) >= self.bound:
            raise CosetBoundExceeded(
                f"coset enumeration exceeded {self.bound} cosets (group infinite or bound too small)"
            )
        d = len(self.table)
        self.table.append([-1] * self.ncols)
        self.parent.append(d)
        self.table[c][x] = d
        self.table[d][x ^ 1] = c

    def rep(self, c):
        root = c
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[c] != root:
            self.parent[c], c = root, self.parent[c]
        return root

    def merge(self, a, b):
        a, b = self.rep(a), self.rep(b)
        if a == b:
            return
        lo, hi = min(a, b), max(a, b)
        self.parent[hi] = lo
        self.queue.append(hi)

    def coincidence(self, a, b):
        self.merge(a, b)
        t = self.table
        while self.queue:
            e = self.queue.pop(0)
            for x in range(self.ncols):
                f = t[e][x]
                if f < 0:
                    continue
                t[f][x ^ 1] = -1
                e1, f1 = self.rep(e), self.rep(f)
                if t[e1][x] >= 0:
                    self.merge(f1, t[e1][x])
                elif t[f1][x ^ 1] >= 0:
                    self.merge(e1, t[f1][x ^ 1])
                else:
                    t[e1][x] = f1
                    t[f1][x ^ 1] = e1

    def scan_and_fill(self, c, word):
        t = self.table
        f = b = c
        i, j = 0, len(word) - 1
        while True:
            while i <= j and t[f][word[i]] >= 0:
                f = t[f][word[i]]
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i and t[b][word[j] ^ 1] >= 0:
                b = t[b][word[j] ^ 1]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                t[f][word[i]] = b
                t[b][word[i] ^ 1] = f
                return
            self.define(f, word[i])


def enumerate_presentation(
    gen_names, relators, coset_bound: int = DEFAULT_COSET_BOUND, label: str = ""
) -> FiniteGroup:
    """Multiplication table of ``<gens | relators>``.

    ``relators`` are lists of signed generator indices (1-based).  Raises
    CosetBoundExceeded when more than ``coset_bound`` cosets are defined.
    """
    if coset_bound < 1:
        raise ValueError("coset_bound must be >= 1")
    ngens = len(gen_names)
    words = [[_col(x) for x in r] for r in relators if r]
    ct = _CosetTable(ngens, coset_bound)
    c = 0
    while c < len(ct.table):
        if ct.alive(c):
            for w in words:
                ct.scan_and_fill(c, w)
                if not ct.alive(c):
                    break
            if ct.alive(c):
                for x in range(ct.ncols):
                    if ct.table[c][x] < 0:
                        ct.define(c, x)
        c += 1

    # standardize: renumber live cosets in breadth-first order from coset 0
    t = ct.table
    order = [0]
    num = {0: 0}
    k = 0
    while k < len(order):
        row = t[order[k]]
        for x in range(ct.ncols):
            d = ct.rep(row[x])
            if d not in num:
                num[d] = len(order)
                order.append(d)
        k += 1
    n = len(order)
    right = np.array([[num[ct.rep(t[c][2 * i])] for i in range(ngens)] for c in order], dtype=np.int64).reshape(n, ngens)

    # mul[:, j] for j = k * s is right[mul[:, k], s]; walk a spanning tree from 0
    mul = np.full((n, n), -1, dtype=np.int64)
    mul[:, 0] = np.arange(n)
    frontier = [0]
    while frontier:
        nxt = []
        for j in frontier:
            for s in range(ngens):
                js = int(right[j, s])
                if mul[0, js] < 0:
                    mul[:, js] = right[mul[:, j], s]
                    nxt.append(js)
        frontier = nxt
    gens = [int(right[0, s]) for s in range(ngens)]
    G = FiniteGroup(mul, gens, gen_names, label=label)
    G.check_invariants()
    return G

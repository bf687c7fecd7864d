"""Graded rings given by generators and relations: degreewise dimensions.

Used as an oracle for computed cohomology.  A degree-n piece is spanned by
monomials; the ideal in degree n by monomial multiples of the relations.
Two conventions: ``"commutative"`` (polynomial ring) and ``"graded"``
(odd generators anticommute and square to zero).
"""

from __future__ import annotations

import re

import numpy as np

from .linalg import rref_array

COMMUTATIVE = "commutative"
GRADED = "graded"


class RelationError(ValueError):
    pass


def parse_polynomial(text: str, names, p: int, odd=None) -> dict:
    """``"y^2 + y*z + 2z^2"`` -> {exponent tuple: coefficient mod p}.

    Generator names match greedily (longest first); ``*`` is optional.
    Factors are multiplied left to right, so with ``odd`` flags set the
    order of anticommuting generators contributes a sign.
    """
    odd = odd or [False] * len(names)
    by_len = sorted(names, key=len, reverse=True)
    pos = {n: i for i, n in enumerate(names)}
    poly = {}
    s = text.replace(" ", "")
    if not s:
        raise RelationError("empty polynomial")
    for sign, term in re.findall(r"([+-]?)([^+-]+)", s):
        coeff = -1 if sign == "-" else 1
        m = re.match(r"\d+", term)
        if m:
            coeff *= int(m.group(0))
            term = term[m.end() :]
        exps = (0,) * len(names)
        term = term.lstrip("*")
        while term:
            name = next((n for n in by_len if term.startswith(n)), None)
            if name is None:
                raise RelationError(f"unknown generator in {text!r} at {term!r}")
            term = term[len(name) :]
            e = 1
            m = re.match(r"\^(\d+)", term)
            if m:
                e = int(m.group(1))
                term = term[m.end() :]
            factor = tuple(e if i == pos[name] else 0 for i in range(len(names)))
            prod = _times(exps, factor, odd)
            if prod is None:
                coeff = 0
                break
            exps, sgn = prod
            coeff *= sgn
            term = term.lstrip("*")
        poly[exps] = (poly.get(exps, 0) + coeff) % p
    return {k: v for k, v in poly.items() if v}


def _monomials(degrees, n, bounded):
    """Exponent vectors of total degree n; ``bounded`` gens have exponent <= 1."""
    out = []

    def rec(i, left, acc):
        if i == len(degrees):
            if left == 0:
                out.append(tuple(acc))
            return
        top = left // degrees[i]
        if bounded[i]:
            top = min(top, 1)
        for e in range(top + 1):
            rec(i + 1, left - e * degrees[i], acc + [e])

    rec(0, n, [])
    return out


def _times(a, b, odd):
    """Product of monomials as (monomial, sign), or None when it vanishes."""
    c = tuple(x + y for x, y in zip(a, b))
    if any(o and e > 1 for o, e in zip(odd, c)):
        return None
    # moving each odd factor of b left past the odd factors of a with larger index
    swaps = sum(a[i] * b[j] for i in range(len(a)) for j in range(i) if odd[i] and odd[j])
    return c, (-1) ** swaps


class PresentedRing:
    def __init__(self, generators, relations, p: int = 2, convention: str | None = None):
        """``generators``: sequence of (name, degree); ``relations``: strings."""
        self.names = [g for g, _ in generators]
        self.degrees = [int(d) for _, d in generators]
        if any(d < 1 for d in self.degrees):
            raise RelationError("generator degrees must be positive")
        self.p = p
        self.convention = convention or (COMMUTATIVE if p == 2 else GRADED)
        if self.convention not in (COMMUTATIVE, GRADED):
            raise RelationError(f"unknown convention {self.convention!r}")
        graded = self.convention == GRADED
        self.odd = [graded and d % 2 == 1 for d in self.degrees]
        self.relations = []
        for r in relations:
            poly = parse_polynomial(r, self.names, p, self.odd) if isinstance(r, str) else dict(r)
            degs = {self._deg(m) for m in poly}
            if len(degs) > 1:
                raise RelationError(f"relation {r!r} is not homogeneous")
            if poly:
                self.relations.append((degs.pop(), poly))

    def _deg(self, m):
        return sum(e * d for e, d in zip(m, self.degrees))

    def monomials(self, n):
        return _monomials(self.degrees, n, self.odd)

    def ideal(self, n) -> np.ndarray:
        """Rows spanning the degree-n part of the relation ideal."""
        basis = self.monomials(n)
        col = {m: i for i, m in enumerate(basis)}
        rows = []
        for deg, poly in self.relations:
            if deg > n:
                continue
            for mult in self.monomials(n - deg):
                row = np.zeros(len(basis), dtype=np.int64)
                for mono, c in poly.items():
                    prod = _times(mult, mono, self.odd)
                    if prod is not None:
                        row[col[prod[0]]] += prod[1] * c
                rows.append(row % self.p)
        out = np.zeros((len(rows), len(basis)), dtype=np.uint8)
        if rows:
            out[:] = rows
        return out

    def _rank(self, rows):
        return len(rref_array(rows, self.p)[1]) if rows.size else 0

    def dims(self, N: int) -> list:
        return [len(self.monomials(n)) - self._rank(self.ideal(n)) for n in range(N + 1)]

    def dec_dims(self, N: int) -> list:
        """Dimensions of the subalgebra generated by the degree-1 generators."""
        out = []
        for n in range(N + 1):
            basis = self.monomials(n)
            I = self.ideal(n)
            in_deg1 = [m for m in basis if all(e == 0 or d == 1 for e, d in zip(m, self.degrees))]
            D = np.zeros((len(in_deg1), len(basis)), dtype=np.uint8)
            for i, m in enumerate(in_deg1):
                D[i, basis.index(m)] = 1
            out.append(self._rank(np.concatenate([I, D])) - self._rank(I))
        return out


def presented_ring_dims(generators, relations, N: int, p: int = 2, convention: str | None = None) -> list:
    """Degreewise dimensions of ``F_p[generators] / (relations)``."""
    return PresentedRing(generators, relations, p, convention).dims(N)


def presented_ring_dec_dims(generators, relations, N: int, p: int = 2, convention: str | None = None) -> list:
    return PresentedRing(generators, relations, p, convention).dec_dims(N)


def kunneth_dims(a, b) -> list:
    """Convolution of two dimension sequences, truncated to the shorter one."""
    n = min(len(a), len(b))
    return [sum(a[i] * b[k - i] for i in range(k + 1)) for k in range(n)]

"""Built-in groups and the census catalog.

The fourteen groups of order 16 are built by direct and semidirect products
where they split, and by presentation otherwise.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .core import FiniteGroup, cyclic, direct_product, from_permutations, semidirect_product

# Presentations used verbatim by the quaternion scenarios.
Q8_PRES = "pres{g,h | g^4, g^2*h^-2, g*h*g^-1*h^-3}"
H32_PRES = "pres{g,h | g^8, g^4*h^-4, g*h*g^-1*h^-3}"
H2_PRES = "pres{g,h | g^4, h^4, g*h*g^-1*h^-3}"
Z8Z8_PRES = "pres{g,h | g^8, h^8, g*h*g^-1*h^-3}"


def _pres(text, label):
    from .spec import realize

    G = realize(text)
    return FiniteGroup(G.mul, G.generators, G.gen_names, label=label)


def _named(G, label, names=None):
    return FiniteGroup(G.mul, G.generators, names or G.gen_names, label=label)


def _prod(*groups, label):
    G = groups[0]
    for H in groups[1:]:
        G = direct_product(G, H)[0]
    return _named(G, label)


def _metacyclic(n, m, t, label, names=("y", "x")):
    """Split ``C_n ⋊ C_m`` with the generator of ``C_m`` acting as ``y -> y^t``."""
    base = cyclic(n, name=names[0])
    act = np.array([(i * t) % n for i in range(n)])
    return semidirect_product(base, cyclic(m, name=names[1]), [act], label=label)


def _dihedral(n):
    half = n // 2
    return _metacyclic(half, 2, -1, f"D{n}", names=("r", "s"))


def quaternion():
    return _pres(Q8_PRES, "Q8")


def klein():
    return _prod(cyclic(2, "a"), cyclic(2, "b"), label="V4")


def symmetric3():
    return from_permutations([(1, 2, 0), (1, 0, 2)], names=["r", "s"], label="S3")


def alternating4():
    return from_permutations([(1, 2, 0, 3), (1, 0, 3, 2)], names=["a", "b"], label="A4")


def symmetric4():
    return from_permutations([(1, 2, 3, 0), (1, 0, 2, 3)], names=["a", "b"], label="S4")


def dicyclic12():
    # C3 ⋊ C4, the generator of C4 inverting C3
    return _metacyclic(3, 4, -1, "Dic12", names=("y", "x"))


def c2sq_by_c4():
    # (C2 x C2) ⋊ C4, the generator of C4 swapping the two factors
    base = _prod(cyclic(2, "a"), cyclic(2, "b"), label="V4")
    # ids: (a, b) -> 2a + b ; swap -> 2b + a
    swap = np.array([0, 2, 1, 3])
    return semidirect_product(base, cyclic(4, "c"), [swap], label="K16")


def generalized_quaternion16():
    return _pres("pres{a,b | a^8, b^2*a^-4, b*a*b^-1*a}", "Q16")


def pauli16():
    # C4 ∘ D8: central z of order 4 with (xy)^2 = z^2
    return _pres("pres{z,x,y | z^4, x^2, y^2, z*x*z^-1*x^-1, z*y*z^-1*y^-1, x*y*x*y*z^-2}", "Pauli16")


def h32():
    return _pres(H32_PRES, "H32")


BUILTINS = {
    "Q8": quaternion,
    "V4": klein,
    "S3": symmetric3,
    "A4": alternating4,
    "S4": symmetric4,
    "Dic12": dicyclic12,
    "Q16": generalized_quaternion16,
    "SD16": lambda: _metacyclic(8, 2, 3, "SD16"),
    "M16": lambda: _metacyclic(8, 2, 5, "M16"),
    "K16": c2sq_by_c4,
    "Pauli16": pauli16,
    "H32": h32,
    "H2": lambda: _pres(H2_PRES, "H2"),
    "Z8Z8": lambda: _pres(Z8Z8_PRES, "Z8Z8"),
}


def _c(n):
    return cyclic(n)


def order16_groups():
    """The fourteen groups of order 16, in SmallGroups numbering."""
    C = _c
    return [
        _named(C(16), "C16"),
        _prod(C(4), C(4), label="C4xC4"),
        c2sq_by_c4(),
        _metacyclic(4, 4, -1, "C4:C4"),
        _prod(C(8), C(2), label="C8xC2"),
        _metacyclic(8, 2, 5, "M16"),
        _dihedral(16),
        _metacyclic(8, 2, 3, "SD16"),
        generalized_quaternion16(),
        _prod(C(4), C(2), C(2), label="C4xC2xC2"),
        _prod(_dihedral(8), C(2), label="D8xC2"),
        _prod(quaternion(), C(2), label="Q8xC2"),
        pauli16(),
        _prod(C(2), C(2), C(2), C(2), label="C2^4"),
    ]


def small_groups():
    """All groups of order at most 15."""
    C = _c
    return [
        _named(C(1), "C1"),
        _named(C(2), "C2"),
        _named(C(3), "C3"),
        _named(C(4), "C4"),
        klein(),
        _named(C(5), "C5"),
        _named(C(6), "C6"),
        symmetric3(),
        _named(C(7), "C7"),
        _named(C(8), "C8"),
        _prod(C(4), C(2), label="C4xC2"),
        _prod(C(2), C(2), C(2), label="C2^3"),
        _dihedral(8),
        quaternion(),
        _named(C(9), "C9"),
        _prod(C(3), C(3), label="C3xC3"),
        _named(C(10), "C10"),
        _dihedral(10),
        _named(C(11), "C11"),
        _named(C(12), "C12"),
        _prod(C(6), C(2), label="C6xC2"),
        alternating4(),
        _dihedral(12),
        dicyclic12(),
        _named(C(13), "C13"),
        _named(C(14), "C14"),
        _dihedral(14),
        _named(C(15), "C15"),
    ]


@lru_cache(maxsize=None)
def census_catalog():
    """Groups checked by the census: orders <= 15, all of order 16, S4 and H32."""
    groups = small_groups() + order16_groups() + [symmetric4(), h32()]
    for G in groups:
        G.check_invariants()
    return tuple(groups)

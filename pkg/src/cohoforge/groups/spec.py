"""Group-spec grammar.

::

    spec := atom | spec "x" spec
    atom := "C" INT | "D" INT | "A2(" INT ";" INT ")" | "B(" INT ";" INT ";" INT ";" INT ")"
          | BUILTIN | "pres{" ident ("," ident)* "|" word ("," word)* "}"
    word := (ident ("^" SINT)?)+ with optional "*" separators

``D n`` is the dihedral group of order n.  ``A2(n;d)`` is
``(C_{2^n})^d ⋊ C_2`` with inversion; ``B(p;n;d;k)`` is
``(C_{p^n})^d ⋊ C_{p^n}`` with the generator acting as ``y -> y^(p^k+1)``
(``k`` may be ``inf`` for the trivial action).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import reduce

import numpy as np

from .core import (
    DEFAULT_ORDER_CAP,
    FiniteGroup,
    GroupError,
    OrderCapExceeded,
    cyclic,
    direct_product,
    semidirect_product,
)
from .todd_coxeter import DEFAULT_COSET_BOUND, enumerate_presentation


class SpecSyntaxError(ValueError):
    def __init__(self, msg, text="", pos=0):
        super().__init__(f"{msg} at position {pos}" + (f" in {text!r}" if text else ""))
        self.pos = pos


class UnknownBuiltin(SpecSyntaxError):
    pass


# --- AST ---------------------------------------------------------------------


@dataclass(frozen=True)
class Cyclic:
    n: int


@dataclass(frozen=True)
class Dihedral:
    n: int


@dataclass(frozen=True)
class Builtin:
    name: str


@dataclass(frozen=True)
class Product:
    left: object
    right: object


@dataclass(frozen=True)
class Semidirect:
    """``(C_{base_order})^rank ⋊ C_{acting_order}``, acting by ``y -> y^twist``."""

    rank: int
    base_order: int
    acting_order: int
    twist: int
    family: str = ""  # "A2(n;d)" or "B(p;n;d;k)" source text, for printing


@dataclass(frozen=True)
class Presentation:
    gens: tuple
    relators: tuple  # tuple of tuples of (name, exponent)


GroupSpec = object


def format_spec(node) -> str:
    """Canonical text form; ``parse_group_spec(format_spec(x)) == x``."""
    if isinstance(node, Cyclic):
        return f"C{node.n}"
    if isinstance(node, Dihedral):
        return f"D{node.n}"
    if isinstance(node, Builtin):
        return node.name
    if isinstance(node, Product):
        return f"{format_spec(node.left)}x{format_spec(node.right)}"
    if isinstance(node, Semidirect):
        return node.family
    if isinstance(node, Presentation):
        words = ["*".join(f"{g}^{e}" if e != 1 else g for g, e in r) for r in node.relators]
        return "pres{" + ",".join(node.gens) + " | " + ", ".join(words) + "}"
    raise TypeError(node)


# --- parser ------------------------------------------------------------------

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_']*")
_INT = re.compile(r"[0-9]+")
_SINT = re.compile(r"[+-]?[0-9]+")


class _Parser:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def error(self, msg, cls=SpecSyntaxError):
        raise cls(msg, self.text, self.pos)

    def ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self, s):
        self.ws()
        return self.text.startswith(s, self.pos)

    def expect(self, s):
        if not self.peek(s):
            self.error(f"expected {s!r}")
        self.pos += len(s)

    def match(self, rx, what):
        self.ws()
        m = rx.match(self.text, self.pos)
        if not m:
            self.error(f"expected {what}")
        self.pos = m.end()
        return m.group(0)

    def integer(self):
        return int(self.match(_INT, "integer"))

    def spec(self):
        node = self.atom()
        while self.peek("x"):
            self.pos += 1
            node = Product(node, self.atom())
        return node

    def atom(self):
        self.ws()
        t, i = self.text, self.pos
        if t.startswith("pres{", i):
            return self.presentation()
        if t.startswith("A2(", i):
            self.pos += 3
            n = self.integer()
            self.expect(";")
            d = self.integer()
            self.expect(")")
            if n < 1 or d < 1:
                self.error("A2 parameters must be positive")
            return Semidirect(d, 2**n, 2, -1, family=f"A2({n};{d})")
        if t.startswith("B(", i):
            self.pos += 2
            p = self.integer()
            self.expect(";")
            n = self.integer()
            self.expect(";")
            d = self.integer()
            self.expect(";")
            self.ws()
            if self.text.startswith("inf", self.pos):
                self.pos += 3
                k = None
            else:
                k = self.integer()
            self.expect(")")
            if n < 1 or d < 1 or p < 2:
                self.error("B parameters out of range")
            twist = 1 if k is None else p**k + 1
            ktext = "inf" if k is None else str(k)
            return Semidirect(d, p**n, p**n, twist, family=f"B({p};{n};{d};{ktext})")
        m = re.compile(r"[A-Za-z][A-Za-z0-9]*").match(t, i)
        if not m:
            self.error("expected a group atom")
        word = m.group(0)
        # the product separator "x" may directly follow an atom
        word = word.split("x")[0] if "x" in word else word
        if re.fullmatch(r"C[0-9]+", word):
            self.pos += len(word)
            n = int(word[1:])
            if n < 1:
                self.error("cyclic order must be positive")
            return Cyclic(n)
        if re.fullmatch(r"D[0-9]+", word):
            self.pos += len(word)
            n = int(word[1:])
            if n < 2 or n % 2:
                self.error("dihedral order must be even")
            return Dihedral(n)
        from .catalog import BUILTINS

        if word in BUILTINS:
            self.pos += len(word)
            return Builtin(word)
        self.error(f"unknown builtin group {word!r}", UnknownBuiltin)

    def presentation(self):
        self.expect("pres{")
        gens = [self.match(_IDENT, "generator name")]
        while self.peek(","):
            self.pos += 1
            gens.append(self.match(_IDENT, "generator name"))
        if len(set(gens)) != len(gens):
            self.error("repeated generator name")
        self.expect("|")
        rels = [self.word(gens)]
        while self.peek(","):
            self.pos += 1
            rels.append(self.word(gens))
        self.expect("}")
        return Presentation(tuple(gens), tuple(rels))

    def word(self, gens):
        by_len = sorted(gens, key=len, reverse=True)
        letters = []
        while True:
            self.ws()
            if self.peek("*") and letters:
                self.pos += 1
                self.ws()
            name = next((g for g in by_len if self.text.startswith(g, self.pos)), None)
            if name is None:
                if not letters:
                    self.error("expected a generator")
                break
            self.pos += len(name)
            e = 1
            if self.peek("^"):
                self.pos += 1
                e = int(self.match(_SINT, "exponent"))
            letters.append((name, e))
        return tuple(letters)


def parse_group_spec(text: str):
    if not text or not text.strip():
        raise SpecSyntaxError("empty group spec", text, 0)
    p = _Parser(text)
    node = p.spec()
    p.ws()
    if p.pos != len(text):
        p.error("unexpected trailing input")
    return node


# --- realization ---------------------------------------------------------------


class RealizationError(GroupError):
    pass


def _power_map(G: FiniteGroup, t: int) -> np.ndarray:
    """The map g -> g^t on an abelian group, as an id permutation."""
    t %= int(G.element_orders.max()) if G.order > 1 else 1
    out = np.zeros(G.order, dtype=np.int64)
    for g in range(G.order):
        out[g] = G.power(g, t)
    return out


def realize_semidirect(node: Semidirect, cap=DEFAULT_ORDER_CAP) -> FiniteGroup:
    q, m = node.base_order, node.acting_order
    total = q**node.rank * m
    if total > cap:
        raise OrderCapExceeded(f"order {total} exceeds cap {cap}")
    t = node.twist % q
    if math.gcd(t, q) != 1 or pow(t, m, q) != 1:
        raise RealizationError(f"twist {node.twist} is not a unit of order dividing {m} mod {q}")
    names = ["y"] if node.rank == 1 else [f"y{i + 1}" for i in range(node.rank)]
    factors = [cyclic(q, name=nm) for nm in names]
    base = reduce(lambda a, b: direct_product(a, b, cap=cap)[0], factors)
    base = FiniteGroup(base.mul, base.generators, names, label=f"C{q}^{node.rank}")
    K = cyclic(m, name="x")
    G = semidirect_product(base, K, [_power_map(base, t)], cap=cap, label=node.family)
    return G


def realize(spec, cap: int = DEFAULT_ORDER_CAP, coset_bound: int = DEFAULT_COSET_BOUND) -> FiniteGroup:
    """Build the multiplication table described by a spec (text or AST)."""
    if isinstance(spec, str):
        text = spec
        spec = parse_group_spec(spec)
    else:
        text = format_spec(spec)
    G = _realize(spec, cap, coset_bound)
    if G.order > cap:
        raise OrderCapExceeded(f"order {G.order} exceeds cap {cap}")
    G = FiniteGroup(G.mul, G.generators, G.gen_names, label=text)
    G.check_invariants()
    return G


def _realize(node, cap, coset_bound) -> FiniteGroup:
    if isinstance(node, Cyclic):
        if node.n > cap:
            raise OrderCapExceeded(f"order {node.n} exceeds cap {cap}")
        return cyclic(node.n)
    if isinstance(node, Dihedral):
        half = node.n // 2
        if node.n > cap:
            raise OrderCapExceeded(f"order {node.n} exceeds cap {cap}")
        r = cyclic(half, name="r")
        inv = np.array([(-i) % half for i in range(half)])
        return semidirect_product(r, cyclic(2, name="s"), [inv], label=f"D{node.n}")
    if isinstance(node, Builtin):
        from .catalog import BUILTINS

        return BUILTINS[node.name]()
    if isinstance(node, Product):
        a = _realize(node.left, cap, coset_bound)
        b = _realize(node.right, cap, coset_bound)
        return direct_product(a, b, cap=cap)[0]
    if isinstance(node, Semidirect):
        return realize_semidirect(node, cap)
    if isinstance(node, Presentation):
        idx = {g: i + 1 for i, g in enumerate(node.gens)}
        rels = []
        for r in node.relators:
            w = []
            for g, e in r:
                w.extend([idx[g] if e > 0 else -idx[g]] * abs(e))
            rels.append(w)
        return enumerate_presentation(list(node.gens), rels, coset_bound=coset_bound)
    raise TypeError(node)


# --- homomorphisms between realized groups --------------------------------------


def parse_word(text: str, names) -> tuple:
    """``"g^2*h^-1"`` -> (("g", 2), ("h", -1)); ``"1"`` or ``""`` is the identity."""
    text = text.strip()
    if text in ("", "1", "e"):
        return ()
    p = _Parser(text)
    w = p.word(list(names))
    p.ws()
    if p.pos != len(text):
        p.error("unexpected trailing input in word")
    return w


def parse_generator_map(text: str) -> dict:
    """``"g->g, h->h, c->g^2"`` -> {"g": "g", "h": "h", "c": "g^2"} (words unparsed)."""
    out = {}
    for part in filter(None, (s.strip() for s in text.split(","))):
        if "->" not in part:
            raise SpecSyntaxError("expected 'name->word'", text, text.find(part))
        src, dst = (s.strip() for s in part.split("->", 1))
        if not _IDENT.fullmatch(src):
            raise SpecSyntaxError(f"bad generator name {src!r}", text, text.find(part))
        if src in out:
            raise SpecSyntaxError(f"generator {src!r} mapped twice", text, text.find(part))
        out[src] = dst
    return out


def name_matching_hom(source: FiniteGroup, target: FiniteGroup, overrides=None):
    """Homomorphism sending each source generator to the target generator of
    the same name, unless ``overrides`` (text or dict of words) says otherwise."""
    from .core import hom

    if isinstance(overrides, str):
        overrides = parse_generator_map(overrides)
    overrides = dict(overrides or {})
    unknown = set(overrides) - set(source.gen_names)
    if unknown:
        raise GroupError(f"{source.label} has no generators {sorted(unknown)}")
    images = {}
    for name in source.gen_names:
        if name in overrides:
            images[name] = target.word(parse_word(overrides[name], target.gen_names))
        elif name in target.gen_names:
            images[name] = target.gen(name)
        else:
            raise GroupError(f"no image for generator {name!r}; give one as '{name}->word'")
    return hom(source, target, images)

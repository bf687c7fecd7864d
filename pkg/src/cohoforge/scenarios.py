"""Reproducible checks of the finite-group statements, one report each.

Every check compares an expected value with a computed one; a report
passes when all of them agree.  Reports serialize to the
``cohoforge-report/1`` JSON document.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from math import comb

import numpy as np

from .cohomology import (
    dec_ladder,
    inflation,
    is_fully_decomposable,
    named_degree_one,
    restriction,
    cup,
)
from .groups.catalog import H2_PRES, H32_PRES, Q8_PRES, Z8Z8_PRES, census_catalog
from .groups.core import GroupHom, SubgroupHandle, subgroup_group
from .groups.spec import name_matching_hom, realize
from .groups.structure import degree_one_classifier, is_p_group
from .resolution import (
    GREEDY,
    MINIMAL,
    BudgetExceeded,
    build_resolution,
    cocycle_basis,
    cohomology_dims,
)
from .rings import kunneth_dims, presented_ring_dims

SCHEMA = "cohoforge-report/1"

# Orders above this need the extended tier.
EXTENDED_ORDER = 256


class ExtendedTierRequired(BudgetExceeded):
    pass


@dataclass
class Check:
    desc: str
    expected: object
    computed: object

    @property
    def passed(self) -> bool:
        return self.expected == self.computed

    def as_dict(self) -> dict:
        return {"desc": self.desc, "expected": self.expected, "computed": self.computed, "pass": self.passed}


@dataclass
class ScenarioReport:
    scenario: str
    params: dict
    checks: list = field(default_factory=list)
    wall_ms: float = 0.0
    notes: list = field(default_factory=list)
    result: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, desc, expected, computed) -> Check:
        c = Check(desc, _plain(expected), _plain(computed))
        self.checks.append(c)
        return c

    def as_dict(self) -> dict:
        out = {
            "schema": SCHEMA,
            "scenario": self.scenario,
            "params": self.params,
            "checks": [c.as_dict() for c in self.checks],
            "wall_ms": round(self.wall_ms, 3),
        }
        if self.notes:
            out["notes"] = list(self.notes)
        if self.result:
            out["result"] = _plain(self.result)
        return out

    def summary(self) -> str:
        ok = sum(c.passed for c in self.checks)
        return f"{self.scenario}: {ok}/{len(self.checks)} checks pass"


def _plain(x):
    """JSON-friendly copy: tuples and arrays become lists, numpy scalars ints."""
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, np.ndarray)):
        return [_plain(v) for v in x]
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, np.integer):
        return int(x)
    return x


class timed:
    def __init__(self, report):
        self.report = report

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self.report

    def __exit__(self, *exc):
        self.report.wall_ms = (time.perf_counter() - self.t0) * 1000
        return False


class Workspace:
    """Groups and resolutions shared inside one scenario run."""

    def __init__(self, cache=None):
        self.cache = cache
        self._res = {}

    def resolution(self, G, p, N):
        """A resolution good for classes through degree N (built once per group)."""
        key = (G.fingerprint, p)
        res = self._res.get(key)
        if res is None or res.required_length(N) > res.length:
            strategy = MINIMAL if is_p_group(G, p) else GREEDY
            length = N if strategy == MINIMAL else N + 1
            res = build_resolution(G, p, length, strategy, cache=self.cache)
            self._res[key] = res
        return res

    def resolutions(self):
        return list(self._res.values())


def _center(G) -> SubgroupHandle:
    z = [g for g in range(G.order) if np.array_equal(G.mul[g], G.mul[:, g])]
    return SubgroupHandle(G, frozenset(z))


# --- cyclic tower --------------------------------------------------------------------


def scenario_cyclic_tower(p: int, n: int, phi: GroupHom | None = None, cache=None) -> ScenarioReport:
    """C_{p^n} -> C_{p^{n-1}}: degree one survives, the degree-two generator dies.

    ``phi`` replaces the quotient map (negative controls).
    """
    if p not in (2, 3, 5) or not 2 <= n <= 4:
        raise ValueError("need p in {2,3,5} and 2 <= n <= 4")
    rep = ScenarioReport("cyclic_tower", {"p": p, "n": n})
    with timed(rep):
        G = realize(f"C{p**n}")
        Q = realize(f"C{p ** (n - 1)}")
        if phi is None:
            phi = name_matching_hom(G, Q)
        else:
            rep.params["phi"] = f"{phi.source.label}->{phi.target.label}"
        ws = Workspace(cache)
        RQ = ws.resolution(Q, p, 4)
        RG = ws.resolution(phi.source, p, 4)
        rep.check(f"dims H^0..4(C{p ** (n - 1)})", [1] * 5, cohomology_dims(RQ, 4))
        h1 = [inflation(phi, c, RG) for c in cocycle_basis(RQ, 1)]
        rep.check("inflation is injective on H^1", [False] * len(h1), [c.is_zero() for c in h1])
        h2 = [inflation(phi, c, RG) for c in cocycle_basis(RQ, 2)]
        rep.check("the H^2 generator inflates to 0", [True] * len(h2), [c.is_zero() for c in h2])
    return rep


# --- metacyclic ----------------------------------------------------------------------


def _metacyclic_spec(p, n, d, k):
    return f"A2({n};{d})" if p == 2 else f"B({p};{n};{d};{k})"


def _metacyclic_ring(p, d):
    """Generators and relations of the cohomology ring of P(n), n >= 2."""
    if p == 2:
        gens = [(f"w{i}", 1) for i in range(1, d + 1)] + [(f"c{i}", 2) for i in range(1, d + 1)] + [("wx", 1)]
        rels = [f"w{i}^2+wx*w{i}" for i in range(1, d + 1)]
        return gens, rels
    gens = [("wx", 1)] + [(f"w{i}", 1) for i in range(1, d + 1)] + [("cx", 2)] + [(f"c{i}", 2) for i in range(1, d + 1)]
    return gens, []


def _limit_ring(p, d):
    """The ring generated in degree one that the tower stabilizes to."""
    if p == 2:
        return [(f"w{i}", 1) for i in range(1, d + 1)] + [("wx", 1)], [f"w{i}^2+wx*w{i}" for i in range(1, d + 1)]
    return [("wx", 1)] + [(f"w{i}", 1) for i in range(1, d + 1)], []


def scenario_metacyclic(p: int, n: int, d: int = 1, k: int = 1, extended: bool = False, cache=None, N: int = 4) -> ScenarioReport:
    """Split metacyclic tower: P(n) is A2(n;d) for p = 2 and B(p;n;d;k)
    otherwise.  Checks the cohomology of P(n) and that its degree-two
    classes become decomposable after inflation to P(n+1)."""
    if n < 2 or d < 1:
        raise ValueError("need n >= 2 and d >= 1")
    top = (p ** (n + 1)) ** d * (2 if p == 2 else p ** (n + 1))
    if top > EXTENDED_ORDER and not extended:
        raise ExtendedTierRequired(f"P({n + 1}) has order {top}; this needs the extended tier")
    rep = ScenarioReport("metacyclic", {"p": p, "n": n, "d": d, "k": k if p != 2 else None, "extended": extended})
    with timed(rep):
        P = realize(_metacyclic_spec(p, n, d, k))
        P1 = realize(_metacyclic_spec(p, n + 1, d, k), cap=max(4096, top))
        ws = Workspace(cache)
        R = ws.resolution(P, p, N)
        R1 = ws.resolution(P1, p, 2)
        dims = cohomology_dims(R, N)
        rep.check(f"dims H^m(P({n})) = C(m+{d},{d}) for m <= {N}", [comb(m + d, d) for m in range(N + 1)], dims)

        named = named_degree_one(R)
        wx = named["w_x"]
        ws_ = [named[f"w_{g}"] for g in P.gen_names if g != "x"]
        if p == 2:
            rep.check("w^2 = w_x w for every degree-one class w dual to a base generator", [True] * d, [cup(w, w) == cup(wx, w) for w in ws_])
        else:
            rep.check("degree-one classes square to zero", [True] * (d + 1), [cup(w, w).is_zero() for w in [wx] + ws_])

        phi = name_matching_hom(P1, P)
        ladder1 = dec_ladder(R1, 2)
        inf2 = [inflation(phi, c, R1) for c in cocycle_basis(R, 2)]
        rep.check(f"every basis class of H^2(P({n})) inflates into Dec^2(P({n + 1}))", [True] * len(inf2), [is_fully_decomposable(c, ladder1) for c in inf2])

        gens, rels = _metacyclic_ring(p, d)
        rep.check("dims match the presented cohomology ring", presented_ring_dims(gens, rels, N, p), dims)

        lg, lr = _limit_ring(p, d)
        dec = dec_ladder(R, N).dec_dims
        rep.check("decomposable part matches the ring generated in degree one", presented_ring_dims(lg, lr, N, p), dec)
        rep.result = {"dims": dims, "dec_dims": dec, "orders": [P.order, P1.order]}
    return rep


# --- quaternion ------------------------------------------------------------------------


@dataclass
class _QuaternionData:
    ws: Workspace
    Q: object
    RQ: object
    v: object


def _quaternion_setup(cache=None, N=8):
    ws = Workspace(cache)
    Q = realize(Q8_PRES)
    RQ = ws.resolution(Q, 2, N)
    (v,) = cocycle_basis(RQ, 4)
    return _QuaternionData(ws, Q, RQ, v)


def _check_kills(rep, data, cache=None):
    H = realize(H32_PRES)
    RH = data.ws.resolution(H, 2, 4)
    phi = name_matching_hom(H, data.Q)
    imgs = [inflation(phi, c, RH) for c in cocycle_basis(data.RQ, 4)]
    rep.check("inflation H(32) -> Q8 kills every H^4 basis class", [True] * len(imgs), [c.is_zero() for c in imgs])


def _check_decomposes(rep, data, phi: GroupHom | None = None):
    HC = realize(H32_PRES + "xC2")
    if phi is None:
        phi = name_matching_hom(HC, data.Q, "c->g^2")
    else:
        rep.params["phi"] = "substituted"
    RHC = data.ws.resolution(HC, 2, 4)
    img = inflation(phi, data.v, RHC)
    ladder = dec_ladder(RHC, 4)
    rep.check("inflation H x C2 -> Q8 of v is nonzero and in Dec^4", [True, True], [not img.is_zero(), is_fully_decomposable(img, ladder)])
    return HC, RHC, img


def scenario_quaternion(cache=None, phi_product: GroupHom | None = None) -> ScenarioReport:
    """H*(Q8), its decomposable part, and the fate of the degree-four
    generator v under three surjections and one restriction."""
    rep = ScenarioReport("quaternion", {})
    with timed(rep):
        data = _quaternion_setup(cache)
        RQ = data.RQ
        rep.check("dims H^0..8(Q8)", [1, 2, 2, 1, 1, 2, 2, 1, 1], cohomology_dims(RQ, 8))
        ladder = dec_ladder(RQ, 4)
        rep.check("dec dims H^0..4(Q8)", [1, 2, 2, 1, 0], ladder.dec_dims)
        _check_kills(rep, data)
        _check_decomposes(rep, data, phi_product)

        Z = realize(Z8Z8_PRES)
        RZ = data.ws.resolution(Z, 2, 4)
        img = inflation(name_matching_hom(Z, data.Q), data.v, RZ)
        rep.check("inflation Z/8 x| Z/8 -> Q8 of v is 0", True, img.is_zero())

        C, incl = subgroup_group(_center(data.Q))
        RC = data.ws.resolution(C, 2, 4)
        rep.check("restriction of v to the centre of Q8 is nonzero", True, not restriction(incl, data.v, RC).is_zero())

        H2 = realize(H2_PRES)
        d2 = cohomology_dims(data.ws.resolution(H2, 2, 6), 6)
        ring = presented_ring_dims([("z", 1), ("y", 1), ("x", 2), ("w", 2)], ["z^2", "y^2+y*z"], 6)
        rep.check("dims H^0..6(Z/4 x| Z/4) match the presented ring", ring, d2)
        rep.result = {"dec_dims": ladder.dec_dims}
    return rep


def scenario_splitting_without_vanishing(cache=None) -> ScenarioReport:
    """The quaternion core of a class that decomposes without vanishing,
    plus dimension bookkeeping for the product with C2."""
    rep = ScenarioReport("splitting_without_vanishing", {})
    rep.notes.append("the order-2048 group is not constructed; its mechanism is checked through Q8, H(32) and H(32) x C2")
    with timed(rep):
        data = _quaternion_setup(cache, N=4)
        _check_kills(rep, data)
        HC, RHC, img = _check_decomposes(rep, data)
        # the nonvanishing is seen on the central C2 factor
        c = HC.gen("c")
        C, incl = subgroup_group(SubgroupHandle(HC, HC.closure([c])))
        rep.check("restriction of inf(v) to the C2 factor is nonzero", True, not restriction(incl, img, data.ws.resolution(C, 2, 4)).is_zero())

        dq = cohomology_dims(data.RQ, 4)
        dc = cohomology_dims(data.ws.resolution(realize("C2"), 2, 4), 4)
        prod = cohomology_dims(data.ws.resolution(realize(Q8_PRES + "xC2"), 2, 4), 4)
        rep.check("dims H^0..4(Q8 x C2) equal the convolution of the factors", kunneth_dims(dq, dc), prod)
        rep.check("dims H^0..4(Q8 x C2)", [1, 3, 5, 6, 7], prod)
        triv = cohomology_dims(data.ws.resolution(realize(Q8_PRES + "xC1"), 2, 4), 4)
        rep.check("dims H^0..4(Q8 x C1) equal those of Q8", dq, triv)
    return rep


# --- census ------------------------------------------------------------------------------


def scenario_census(p: int, N: int = 5, groups=None, cache=None, threads: int = 1) -> ScenarioReport:
    """Classifier verdict against the decomposable part, group by group.

    A positive verdict must give Dec^n = H^n through N; a negative one is
    expected to show a degree n <= N with Dec^n smaller than H^n.
    """
    if p not in (2, 3) or not 1 <= N <= 5:
        raise ValueError("need p in {2,3} and 1 <= N <= 5")
    rep = ScenarioReport("census", {"p": p, "N": N})
    rows = {}
    with timed(rep):
        for G in groups if groups is not None else census_catalog():
            if G.order % p:
                continue
            verdict = degree_one_classifier(G, p)
            ws = Workspace(cache)
            ladder = dec_ladder(ws.resolution(G, p, N), N, threads=threads)
            dims, dec = ladder.dims, ladder.dec_dims
            witness = next((n for n in range(N + 1) if dec[n] < dims[n]), None)
            rows[G.label] = {"classifier": verdict.generated_in_degree_one, "dims": dims, "dec_dims": dec, "witness_degree": witness}
            if verdict.generated_in_degree_one:
                rep.check(f"{G.label}: classifier true, Dec = H through degree {N}", True, witness is None)
            else:
                rep.check(f"{G.label}: classifier false, Dec < H in some degree <= {N}", True, witness is not None)
        rep.result = {"groups": rows}
    return rep


SCENARIOS = {
    "cyclic_tower": scenario_cyclic_tower,
    "metacyclic": scenario_metacyclic,
    "quaternion": scenario_quaternion,
    "splitting_without_vanishing": scenario_splitting_without_vanishing,
    "census": scenario_census,
}

import io
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cohoforge.cache import CacheFormatError, ResolutionCache, dump, load
from cohoforge.groups.structure import is_p_group, normal_closure
from cohoforge.resolution import (
    GREEDY,
    MINIMAL,
    BudgetExceeded,
    CohClass,
    Resolution,
    build_resolution,
    character,
    cocycle_basis,
    cohomology_dims,
    h1_as_homs,
    hom_class,
    translate,
    verify_exactness,
)

from conftest import catalog, group, res

P_GROUP_SPECS = ["C2", "C4", "C8", "V4", "D8", "Q8", "C2xC2xC2", "C4xC2", "Q16", "SD16", "M16", "K16", "Pauli16"]


def _h1_oracle(G, p):
    """log_p |G / G'G^p| by closing commutators and p-th powers."""
    gens = set()
    for a in range(G.order):
        gens.add(G.power(a, p))
        for b in G.generators:
            gens.add(int(G.mul[G.mul[G.inv[a], G.inv[b]], G.mul[a, b]]))
    K = normal_closure(G, gens)
    return round(math.log(G.order // len(K), p))


@pytest.mark.parametrize("p", [2, 3])
def test_exactness_on_catalog(p):
    for G in catalog():
        if G.order > 16:
            continue
        strategy = MINIMAL if is_p_group(G, p) and G.order > 1 else GREEDY
        r = build_resolution(G, p, 5 if G.order <= 8 else 4, strategy)
        rep = verify_exactness(r)
        assert rep.passed, (G.label, p, rep.failures)


@pytest.mark.parametrize("spec", P_GROUP_SPECS)
def test_minimal_ranks_are_dimensions_and_strategy_independent(spec):
    G = group(spec)
    m = build_resolution(G, 2, 4, MINIMAL)
    g = build_resolution(G, 2, 5, GREEDY)
    assert cohomology_dims(m, 4) == m.ranks[:5]
    assert cohomology_dims(g, 4) == m.ranks[:5]
    assert all(a >= b for a, b in zip(g.ranks, m.ranks))


@pytest.mark.parametrize("p", [2, 3, 5])
def test_h1_matches_abelianization(p):
    for G in catalog():
        r = build_resolution(G, p, 2, GREEDY)
        assert cohomology_dims(r, 1)[1] == _h1_oracle(G, p), G.label
        assert len(h1_as_homs(G, p)) == _h1_oracle(G, p)


@pytest.mark.parametrize(
    "spec,p,dims",
    [
        ("C2", 2, [1] * 7),
        ("C9", 3, [1] * 7),
        ("C5", 3, [1, 0, 0, 0, 0, 0, 0]),
        ("V4", 2, [1, 2, 3, 4, 5, 6, 7]),
        ("C2xC2xC2", 2, [1, 3, 6, 10, 15, 21, 28]),
        ("D8", 2, [1, 2, 3, 4, 5, 6, 7]),
        ("Q8", 2, [1, 2, 2, 1, 1, 2, 2]),
        ("S3", 3, [1, 0, 0, 1, 1, 0, 0]),
        ("S3", 2, [1] * 7),
        ("A4", 2, [1, 0, 1, 2, 1, 2, 3]),
        ("C3xC3", 3, [1, 2, 3, 4, 5, 6, 7]),
    ],
)
def test_known_dimensions(spec, p, dims):
    G = group(spec)
    strategy = MINIMAL if is_p_group(G, p) else GREEDY
    r = build_resolution(G, p, 6 if strategy == MINIMAL else 7, strategy)
    assert cohomology_dims(r, 6) == dims


def test_differentials_are_equivariant():
    r = res("Q8", 2, 4)
    for n in range(1, 5):
        assert r.differential(n).is_equivariant()


def test_translate_is_an_action():
    G = group("S3")
    v = np.arange(2 * G.order) % 5
    for g in range(G.order):
        for h in range(G.order):
            assert np.array_equal(translate(G, g, translate(G, h, v)), translate(G, int(G.mul[g, h]), v))


def test_corrupted_differential_is_detected():
    r = build_resolution(group("D8"), 2, 4, MINIMAL)
    diffs = [d.copy() for d in r.diffs]
    diffs[2][0, 0] ^= 1
    bad = Resolution(r.group, 2, r.strategy, list(r.ranks), diffs)
    assert not verify_exactness(bad).passed
    dropped = Resolution(r.group, 2, r.strategy, list(r.ranks[:3]) + [r.ranks[3] - 1, r.ranks[4]], [diffs[0], diffs[1], r.diffs[2][1:], r.diffs[3][:, : (r.ranks[3] - 1) * 8]])
    assert not verify_exactness(dropped).passed


def test_minimal_rejects_non_p_groups_and_budget():
    with pytest.raises(ValueError):
        build_resolution(group("S3"), 2, 3, MINIMAL)
    with pytest.raises(BudgetExceeded):
        build_resolution(group("C2xC2xC2"), 2, 6, MINIMAL, budget=100)


@given(st.lists(st.integers(0, 2), min_size=3, max_size=3), st.lists(st.integers(0, 2), min_size=3, max_size=3))
def test_class_arithmetic_is_linear(xs, ys):
    r = res("C3xC3", 3, 4)
    Z = [c.cocycle.astype(int) for c in cocycle_basis(r, 2)]
    assert len(Z) >= 3
    a = CohClass(r, 2, sum(x * z for x, z in zip(xs, Z)) % 3)
    b = CohClass(r, 2, sum(y * z for y, z in zip(ys, Z)) % 3)
    assert a.is_cocycle() and b.is_cocycle()
    assert np.array_equal((a + b).coords(), (a.coords().astype(int) + b.coords()) % 3)
    assert (a - a).is_zero() and (2 * a) == a + a
    assert a.canonical() == a


def test_characters_give_degree_one_classes():
    r = res("C4xC2", 2, 3)
    chis = h1_as_homs(r.group, 2)
    coords = np.array([hom_class(r, c).coords() for c in chis])
    assert np.linalg.matrix_rank(coords) == 2
    chi = character(r.group, 2, chis[0].on_generators())
    assert np.array_equal(chi.values, chis[0].values)


def test_cache_round_trip(tmp_path):
    G = group("Q8")
    r = build_resolution(G, 2, 4, MINIMAL)
    buf = io.BytesIO()
    dump(r, buf)
    buf.seek(0)
    back = load(G, buf, 3)
    assert back.ranks == r.ranks[:4]
    assert all(np.array_equal(a, b) for a, b in zip(back.diffs, r.diffs))

    cache = ResolutionCache(tmp_path)
    built = build_resolution(G, 2, 6, MINIMAL, cache=cache)
    hit = cache.load(G, 2, 4, MINIMAL)
    assert hit is not None and hit.ranks == built.ranks[:5]
    assert cache.load(G, 2, 7, MINIMAL) is None
    assert cache.load(group("D8"), 2, 4, MINIMAL) is None


def test_cache_rejects_bad_files(tmp_path):
    G = group("Q8")
    with pytest.raises(CacheFormatError):
        load(G, io.BytesIO(b"garbage!" + b"\0" * 100))
    buf = io.BytesIO()
    dump(build_resolution(G, 2, 2, MINIMAL), buf)
    with pytest.raises(CacheFormatError):
        load(group("D8"), io.BytesIO(buf.getvalue()))
    with pytest.raises(CacheFormatError):
        load(G, io.BytesIO(buf.getvalue()[:-3]))
    cache = ResolutionCache(tmp_path)
    path = cache.store(build_resolution(G, 2, 3, MINIMAL))
    path.write_bytes(path.read_bytes()[:40])
    assert cache.load(G, 2, 3, MINIMAL) is None

from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cohoforge.rings import (
    COMMUTATIVE,
    GRADED,
    PresentedRing,
    RelationError,
    kunneth_dims,
    parse_polynomial,
    presented_ring_dec_dims,
    presented_ring_dims,
)


def _series_product(factors, N):
    """Coefficients of prod 1/(1-t^d) (polynomial) or (1+t^d) (exterior)."""
    out = [1] + [0] * N
    for d, exterior in factors:
        new = [0] * (N + 1)
        for n in range(N + 1):
            ks = (0, 1) if exterior else range(n // d + 1)
            new[n] = sum(out[n - k * d] for k in ks if n - k * d >= 0)
        out = new
    return out


@given(st.lists(st.integers(1, 4), min_size=1, max_size=4), st.integers(0, 8))
def test_free_polynomial_ring_matches_series(degrees, N):
    gens = [(f"x{i}", d) for i, d in enumerate(degrees)]
    assert presented_ring_dims(gens, [], N) == _series_product([(d, False) for d in degrees], N)


@given(st.lists(st.integers(1, 4), min_size=1, max_size=4), st.integers(0, 8))
def test_graded_free_ring_matches_series(degrees, N):
    gens = [(f"x{i}", d) for i, d in enumerate(degrees)]
    got = presented_ring_dims(gens, [], N, p=3)
    assert got == _series_product([(d, d % 2 == 1) for d in degrees], N)


@given(st.integers(1, 5), st.integers(2, 4), st.integers(0, 10))
def test_regular_element_divides_series(d, k, N):
    # F_p[x, y] / (x^k) has Hilbert series (1 - t^k) / (1 - t)^2 when deg x = deg y = 1
    got = presented_ring_dims([("x", 1), ("y", d)], [f"x^{k}"], N)
    want = _series_product([(1, False), (d, False)], N)
    want = [w - (want[n - k] if n >= k else 0) for n, w in enumerate(want)]
    assert got == want


def test_known_cohomology_rings():
    q8 = presented_ring_dims([("x", 1), ("y", 1), ("e", 4)], ["x^2+xy+y^2", "x^2y+xy^2"], 8)
    assert q8 == [1, 2, 2, 1, 1, 2, 2, 1, 1]
    assert presented_ring_dec_dims([("x", 1), ("y", 1), ("e", 4)], ["x^2+xy+y^2", "x^2y+xy^2"], 6) == [1, 2, 2, 1, 0, 0, 0]
    d8 = presented_ring_dims([("x", 1), ("y", 1), ("w", 2)], ["xy"], 6)
    assert d8 == [n + 1 for n in range(7)]
    # C3 at p = 3: exterior on a degree-1 class tensor polynomial on degree 2
    assert presented_ring_dims([("a", 1), ("b", 2)], [], 6, p=3) == [1] * 7


def test_graded_signs():
    names = ["a", "b"]
    odd = [True, True]
    assert parse_polynomial("ab", names, 3, odd) == {(1, 1): 1}
    assert parse_polynomial("ba", names, 3, odd) == {(1, 1): 2}
    assert parse_polynomial("ab+ba", names, 3, odd) == {}
    assert parse_polynomial("aa", names, 3, odd) == {}
    r = PresentedRing([("a", 1), ("b", 1)], ["ab+ba"], p=3)
    assert r.convention == GRADED and r.dims(3) == [1, 2, 1, 0]
    c = PresentedRing([("a", 1), ("b", 1)], ["ab+ba"], p=3, convention=COMMUTATIVE)
    assert c.dims(3) == [1, 2, 2, 2]  # 2ab kills ab


def test_parser_details():
    assert parse_polynomial("2x^2 - y*z", ["x", "y", "z"], 5) == {(2, 0, 0): 2, (0, 1, 1): 4}
    assert parse_polynomial("x^2 + xy + 2yy", ["x", "y"], 3) == {(2, 0): 1, (1, 1): 1, (0, 2): 2}
    assert parse_polynomial("yz", ["y", "yz"], 2) == {(0, 1): 1}
    with pytest.raises(RelationError):
        parse_polynomial("q", ["x"], 2)
    with pytest.raises(RelationError):
        PresentedRing([("x", 1), ("y", 2)], ["x+y"])
    with pytest.raises(RelationError):
        PresentedRing([("x", 0)], [])


@given(st.lists(st.integers(0, 5), min_size=1, max_size=6), st.lists(st.integers(0, 5), min_size=1, max_size=6))
def test_kunneth_is_series_multiplication(a, b):
    got = kunneth_dims(a, b)
    n = min(len(a), len(b))
    full = [0] * (len(a) + len(b))
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            full[i + j] += x * y
    assert got == full[:n]
    assert kunneth_dims(a, b) == kunneth_dims(b, a)


def test_kunneth_example():
    q8 = [1, 2, 2, 1, 1]
    c2 = [1, 1, 1, 1, 1]
    assert kunneth_dims(q8, c2) == [1, 3, 5, 6, 7]
    assert kunneth_dims([1] * 5, [1] * 5) == [comb(n + 1, 1) for n in range(5)]

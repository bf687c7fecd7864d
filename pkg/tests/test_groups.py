import math
from itertools import product

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cohoforge.groups import (
    CosetBoundExceeded,
    GroupError,
    OrderCapExceeded,
    SpecSyntaxError,
    UnknownBuiltin,
    cyclic,
    degree_one_classifier,
    direct_product,
    enumerate_presentation,
    format_spec,
    from_permutations,
    hom,
    is_isomorphic,
    normal_subgroups,
    parse_group_spec,
    quotient_group,
    realize,
    sylow,
)
from cohoforge.groups.catalog import BUILTINS, order16_groups, small_groups
from cohoforge.groups.spec import (
    Builtin,
    Cyclic,
    Dihedral,
    Product,
    name_matching_hom,
    parse_generator_map,
    parse_word,
)

from conftest import catalog, group

SMALL_BUILTINS = ["Q8", "V4", "S3", "A4", "Dic12", "Q16", "SD16", "M16", "K16", "Pauli16"]

atoms = st.one_of(
    st.integers(1, 12).map(Cyclic),
    st.integers(1, 6).map(lambda k: Dihedral(2 * k)),
    st.sampled_from(SMALL_BUILTINS).map(Builtin),
)
specs = st.recursive(atoms, lambda inner: st.tuples(inner, inner).map(lambda t: Product(*t)), max_leaves=3)


def _order(node):
    if isinstance(node, Cyclic):
        return node.n
    if isinstance(node, Dihedral):
        return node.n
    if isinstance(node, Builtin):
        return BUILTINS[node.name]().order
    return _order(node.left) * _order(node.right)


def _leaves(node):
    if isinstance(node, Product):
        return _leaves(node.left) + _leaves(node.right)
    return [node]


@given(specs)
def test_spec_round_trip(node):
    # products have no brackets, so round trip holds up to associativity
    text = format_spec(node)
    parsed = parse_group_spec(text)
    assert _leaves(parsed) == _leaves(node)
    assert format_spec(parsed) == text
    assert parse_group_spec(text.replace("x", " x ")) == parsed


@given(specs)
def test_realized_orders_and_axioms(node):
    if _order(node) > 300:
        return
    G = realize(format_spec(node))
    assert G.order == _order(node)
    G.check_invariants()


@pytest.mark.parametrize("text", ["", "C", "C0", "Cx", "D3", "A2(2)", "pres{a | a^}", "C2 x", "B(2;1;1;1", "Q8 Q8"])
def test_bad_specs(text):
    with pytest.raises(SpecSyntaxError):
        realize(text)


def test_unknown_builtin_is_reported():
    with pytest.raises(UnknownBuiltin):
        parse_group_spec("Q7")


def test_order_cap():
    with pytest.raises(OrderCapExceeded):
        realize("C64xC64", cap=1024)


def test_coset_bound():
    with pytest.raises(CosetBoundExceeded):
        realize("pres{a | a^500}", coset_bound=100)


@pytest.mark.parametrize(
    "text,order",
    [("A2(2;1)", 8), ("A2(3;1)", 16), ("A2(2;2)", 32), ("B(3;1;1;1)", 9), ("B(3;2;1;1)", 729 // 9), ("B(2;2;1;inf)", 16)],
)
def test_semidirect_families(text, order):
    G = realize(text)
    assert G.order == order
    G.check_invariants()


def test_family_isomorphisms():
    assert is_isomorphic(realize("A2(2;1)"), realize("D8"))
    assert is_isomorphic(realize("A2(3;1)"), realize("D16"))
    assert is_isomorphic(realize("B(2;2;1;inf)"), realize("C4xC4"))
    assert not is_isomorphic(realize("Q8"), realize("D8"))


@given(st.integers(2, 12), st.integers(2, 12))
def test_todd_coxeter_abelian(m, n):
    G = enumerate_presentation(["a", "b"], [[1] * m, [2] * n, [1, 2, -1, -2]])
    assert G.order == m * n
    assert is_isomorphic(G, direct_product(cyclic(m), cyclic(n))[0])


@given(st.integers(3, 20))
def test_todd_coxeter_dihedral(n):
    G = enumerate_presentation(["r", "s"], [[1] * n, [2, 2], [1, 2] * 2])
    assert G.order == 2 * n
    # independent construction from permutations of the n-gon
    rot = [(i + 1) % n for i in range(n)]
    ref = [(-i) % n for i in range(n)]
    assert is_isomorphic(G, from_permutations([rot, ref]))


def test_todd_coxeter_quaternion_and_trivial():
    Q = realize("pres{i,j | i^4, i^2*j^-2, j^-1*i*j*i}")
    assert Q.order == 8 and is_isomorphic(Q, realize("Q8"))
    assert realize("pres{a,b | a, b}").order == 1
    assert realize("pres{a,b,c | a^2, b^2, c^2, a*b*c, a*b*a^-1*b^-1}").order == 4


def test_catalog_contents():
    assert len(small_groups()) == 28
    o16 = order16_groups()
    assert len(o16) == 14 and {G.order for G in o16} == {16}
    for a, b in product(range(14), repeat=2):
        if a < b:
            assert not is_isomorphic(o16[a], o16[b]), (o16[a].label, o16[b].label)


@pytest.mark.parametrize("name", sorted(BUILTINS))
def test_builtins_are_groups(name):
    G = realize(name)
    G.check_invariants()
    assert G.label == name or G.order


def test_sylow_orders():
    for G in catalog():
        for p in (2, 3, 5):
            S = sylow(G, p)
            part = p ** next(k for k in range(20) if G.order % p ** (k + 1))
            assert S.order == part and S.is_subgroup()


def test_normal_subgroups_of_s4():
    orders = sorted(N.order for N in normal_subgroups(group("S4")))
    assert orders == [1, 4, 12, 24]


def test_quotient_and_hom():
    G = group("C4xC4")
    N = [N for N in normal_subgroups(G) if N.order == 4][0]
    Q, proj = quotient_group(G, N)
    assert Q.order == 4 and proj.is_surjective() and proj.kernel() == N
    f = hom(cyclic(6), cyclic(3), [1])
    assert f.is_surjective() and f.kernel().order == 2
    with pytest.raises(GroupError):
        hom(cyclic(3), cyclic(2), [1])


def _classifier_oracle(G, p):
    """Degree-one generation for p = 2: Sylow elementary abelian with a normal complement."""
    if p != 2 or G.order % 2:
        return False
    S = set(sylow(G, 2).elements)
    if any(G.element_orders[g] > 2 for g in S):
        return False
    m = G.order // len(S)
    odd = {g for g in range(G.order) if math.gcd(int(G.element_orders[g]), 2) == 1}
    # the normal complement, if any, must consist of all odd-order elements
    return len(odd) == m and len(G.closure(odd)) == m


def test_classifier_matches_oracle():
    for G in catalog():
        for p in (2, 3):
            v = degree_one_classifier(G, p)
            if G.order % p:
                assert v.status == "p-does-not-divide-order"
                continue
            assert v.generated_in_degree_one == _classifier_oracle(G, p), G.label
            if v.generated_in_degree_one:
                assert v.witness.is_normal()


def test_parse_word_and_maps():
    assert parse_word("g^2h^-1", ["g", "h"]) == (("g", 2), ("h", -1))
    assert parse_word("1", ["g"]) == ()
    assert parse_generator_map("g->g, c->g^2") == {"g": "g", "c": "g^2"}
    H, Q = group("H32"), group("Q8")
    f = name_matching_hom(H, Q)
    assert f.is_surjective() and f.is_homomorphism()
    with pytest.raises(GroupError, match="no image for generator"):
        name_matching_hom(group("H32xC2"), Q)

import itertools

import pytest
from hypothesis import given, strategies as st

from twotone.dihedral import (INF, DihedralElement as G, closure, elements, format_modulus, generates_full,
                              multiply, parse_modulus, subgroup_generated, under_arc_rule,
                              under_arc_rule_inverse)

moduli = st.sampled_from([2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, INF])


@st.composite
def triple(draw):
    n = draw(moduli)
    ks = st.integers(-100, 100)
    return [G(n, draw(st.integers(0, 1)), draw(ks)) for _ in range(3)]


def a(i, n):
    return G.reflection(i, n)


def b(j, n):
    return G.rotation(j, n)


@given(triple())
def test_group_axioms(gs):
    x, y, z = gs
    n = x.modulus
    e = G.identity(n)
    assert (x * y) * z == x * (y * z)
    assert e * x == x == x * e
    assert x * x.inverse() == e == x.inverse() * x


@given(triple(), st.sampled_from([1, -1]))
def test_under_arc_rule_is_conjugation_keeping_tone(gs, s):
    x, y, _ = gs
    z = under_arc_rule(x, y, s)
    assert z.epsilon == y.epsilon
    # the defining relation at the crossing
    if s == 1:
        assert x * z == y * x
    else:
        assert z * x == x * y
    assert under_arc_rule_inverse(x, z, s) == y


@given(triple())
def test_reflection_over_is_sign_independent(gs):
    x, y, _ = gs
    x = G.reflection(x.k, x.modulus)
    assert under_arc_rule(x, y, 1) == under_arc_rule(x, y, -1)


@pytest.mark.parametrize("n", [3, 4, 5, 8, INF])
def test_product_examples(n):
    for i, i2 in [(0, 1), (2, 5), (3, 3)]:
        assert a(i, n) * a(i2, n) == b(i2 - i, n)
    for i, j in [(0, 1), (2, 3)]:
        assert a(i, n).inverse() * b(j, n) * a(i, n) == b(-j, n)
    assert G.identity(n) * a(1, n) == a(1, n)


@pytest.mark.parametrize("n", [3, 5, 8, INF])
def test_local_color_rules(n):
    for i, j in [(0, 1), (2, 3), (1, 7)]:
        assert under_arc_rule(a(i, n), b(j, n), 1) == b(-j, n)
        assert under_arc_rule(a(i, n), b(j, n), -1) == b(-j, n)
        assert under_arc_rule(b(j, n), a(i, n), 1) == a(i + 2 * j, n)
        assert under_arc_rule(b(j, n), b(i, n), 1) == b(i, n)
        # reflection over reflection: 2i - i', the Fox rule
        assert under_arc_rule(a(i, n), a(j, n), 1) == a(2 * i - j, n)


def test_parse_and_format():
    assert G.parse("a3", 8) == a(3, 8)
    assert G.parse("b-2", 8) == b(6, 8)
    assert G.parse("e", 5).is_identity
    assert str(b(0, 5)) == "e" and str(a(0, 5)) == "a0" and str(b(-3, INF)) == "b-3"
    assert parse_modulus("inf") == INF and format_modulus(INF) == "inf"
    with pytest.raises(ValueError):
        G.parse("c1", 3)
    with pytest.raises(ValueError):
        parse_modulus("1")
    with pytest.raises(ValueError):
        multiply(a(0, 3), a(0, 4))


def test_subgroup_examples():
    s = subgroup_generated([a(0, 4), a(2, 4)], 4)
    assert s.kind == "dihedral" and s.d == 2 and not s.is_full() and s.order() == 4
    assert not generates_full([a(1, 4), a(3, 4)], 4)
    assert len(closure([a(1, 4), a(3, 4)], 4)) == 4
    assert generates_full([a(0, 5), b(1, 5)], 5)
    assert not generates_full([b(1, 3)], 3)
    s = subgroup_generated([b(2, 6)], 6)
    assert s.kind == "cyclic" and s.d == 2 and s.order() == 3
    assert subgroup_generated([], 6).kind == "trivial"
    assert generates_full([a(0, INF), a(1, INF)], INF)
    assert not generates_full([a(0, INF), a(2, INF)], INF)


@pytest.mark.parametrize("n", range(2, 9))
def test_subgroup_matches_closure_on_small_subsets(n):
    els = elements(n)
    for r in (1, 2):
        for gens in itertools.combinations(els, r):
            desc = subgroup_generated(gens, n)
            assert desc.order() == len(closure(gens, n)), gens
            assert desc.is_full() == (len(closure(gens, n)) == 2 * n)


@given(st.integers(2, 12), st.data())
def test_subgroup_matches_closure_random(n, data):
    gens = data.draw(st.lists(st.sampled_from(elements(n)), min_size=1, max_size=4))
    assert subgroup_generated(gens, n).order() == len(closure(gens, n))

import math

import pytest
from hypothesis import given, settings, strategies as st

from conftest import FIGURE8, HOPF, TREFOIL, WHITEHEAD
from twotone.diagram import (DiagramError, braid_closure, format_fixture, generate_pretzel,
                             generate_standard_form, generate_torus_two_strand, parse_fixture_line,
                             parse_link_text, read_fixtures, reverse_component_orientation, sublink)
from twotone.invariants import determinant, linking_matrix


def pretzel_det(ts):
    # classical formula for pretzel links
    return abs(sum(math.prod(ts[:i] + ts[i + 1:]) for i in range(len(ts))))


@pytest.mark.parametrize("text, comps, arcs, signs", [
    (HOPF, 2, 2, [-1, -1]),
    ("X[1,3,2,4] X[3,1,4,2]", 2, 2, [1, 1]),
    (TREFOIL, 1, 3, [1, 1, 1]),
    (FIGURE8, 1, 4, [1, 1, -1, -1]),
    (WHITEHEAD, 2, 5, [-1, -1, -1, 1, 1]),
    ("O[1]", 1, 1, []),
    ("O[1] O[2]", 2, 2, []),
    ("X[1,1,2,2]", 1, 1, [1]),
])
def test_parse_examples(text, comps, arcs, signs):
    d = parse_link_text(text)
    assert d.num_components == comps
    assert d.arc_count == arcs
    assert [x.sign for x in d.crossings] == signs


def test_pd_wrapper_and_separators():
    assert parse_link_text(f"PD[{HOPF.replace(' ', ', ')}]").to_text() == parse_link_text(HOPF).to_text()


@pytest.mark.parametrize("bad", [
    "X[1,2,3]",
    "X[1,2,2,1] X[3,4,4,3",
    "X[1,2,3,4] X[1,2,3,4] X[1,2,3,4]",
    "X[1,3,2,4] X[3,1,5,2]",
    "Y[1,2,3,4]",
    "X[1,a,2,3]",
    "O[1] X[1,2,2,1]",
    "X[2,3,3,2]",
])
def test_parse_errors(bad):
    with pytest.raises(DiagramError):
        parse_link_text(bad)


@pytest.mark.parametrize("text", [HOPF, TREFOIL, FIGURE8, WHITEHEAD, "O[3] X[1,1,2,2]"])
def test_round_trip_is_idempotent(text):
    once = parse_link_text(text).to_text()
    assert parse_link_text(once).to_text() == once


def test_arcs_partition_components(p666):
    d = p666
    seen = sorted(a for c in range(d.num_components) for a in d.component_arcs(c))
    assert seen == list(range(d.arc_count))
    for x in d.crossing_arcs:
        assert d.arc_component[x.under_in] == d.arc_component[x.under_out]


@pytest.mark.parametrize("q", range(1, 13))
def test_torus_two_strand(q):
    d = generate_torus_two_strand(q)
    assert d.num_components == (2 if q % 2 == 0 else 1)
    assert len(d.crossings) == q and all(x.sign == 1 for x in d.crossings)
    assert determinant(d).value == q
    if q % 2 == 0:
        assert linking_matrix(d)[0][1] == q // 2


@given(st.lists(st.integers(-4, 4).filter(bool), min_size=1, max_size=4))
@settings(max_examples=40)
def test_pretzel_determinant_formula(ts):
    d = generate_pretzel(ts)
    assert determinant(d).value == pretzel_det(ts)
    assert parse_link_text(d.to_text()).to_text() == d.to_text()


@pytest.mark.parametrize("ts, comps", [([6, 6, 6], 3), ([3, 2, 3, 2], 2), ([2, 2, 2], 3), ([1, 1, 1], 1),
                                       ([2, 1, 1], 1), ([3, 3], 2), ([1, 2, 2], 2)])
def test_pretzel_components(ts, comps):
    assert generate_pretzel(ts).num_components == comps


def test_braid_closure_borromean():
    d = braid_closure([1, -2] * 3, 3)
    assert d.num_components == 3 and determinant(d).value == 16
    assert linking_matrix(d) == [[0] * 3] * 3
    for keep in ({0, 1}, {0, 2}, {1, 2}):
        assert determinant(sublink(d, keep)).value == 0  # every pair is an unlink


def test_sublink(p666, hopf):
    for c in range(2):
        u = sublink(hopf, {c})
        assert u.num_components == 1 and not u.crossings
    pair = sublink(p666, {0, 1})
    assert abs(linking_matrix(pair)[0][1]) == 3
    assert determinant(pair).value == 6
    assert sublink(p666, {0, 1, 2}).to_text() == p666.to_text()
    with pytest.raises(ValueError):
        sublink(p666, {5})


def test_reverse_orientation(p666):
    lk = linking_matrix(p666)
    r = reverse_component_orientation(p666, 1)
    lk_r = linking_matrix(r)
    for i in range(3):
        for j in range(3):
            flip = -1 if (i == 1) != (j == 1) else 1
            assert lk_r[i][j] == flip * lk[i][j]
    assert determinant(r).value == determinant(p666).value
    back = reverse_component_orientation(r, 1)
    assert linking_matrix(back) == lk


@pytest.mark.parametrize("twists, closure", [([2], None), ([2, 2], [0, 1]), ([1, -1], None),
                                             ([1, 1, 2], [0, 0, 1])])
def test_standard_form(twists, closure):
    sf = generate_standard_form(twists, closure)
    d = sf.diagram
    assert d.num_components == 1 + len(set(closure or [0]))
    assert len(d.crossings) == 2 * sum(abs(t) for t in twists)
    base = sf.base_component
    assert d.arc_component[sf.alpha] == base
    assert sorted(d.arc_component[b] for b in sf.betas) == [c for c in range(d.num_components) if c != base]
    for i in range(len(d.crossings)):
        assert base in d.crossing_components(i) and d.crossing_components(i) != (base, base)
    lk = linking_matrix(d)
    assert all(lk[base][c] % 2 == 0 for c in range(d.num_components))


@pytest.mark.parametrize("twists, closure", [([1, 1, 1], None), ([2, 1], [0, 1]), ([0], None),
                                             ([1, 1, 1], [0, 1, 0]), ([1, 1], [1, 1])])
def test_standard_form_rejections(twists, closure):
    with pytest.raises(ValueError):
        generate_standard_form(twists, closure)


def test_fixture_lines(tmp_path):
    d = parse_link_text(HOPF)
    line = format_fixture("hopf", d, parse_link_text("X[1,3,2,4] X[3,1,4,2]"), "n=4 tones=RT exps=0,2")
    fx = parse_fixture_line(line, 7)
    assert fx.name == "hopf" and fx.alternative is not None and fx.coloring.startswith("n=4")
    assert parse_fixture_line("# comment") is None and parse_fixture_line("   ") is None
    with pytest.raises(DiagramError, match="line 3"):
        parse_fixture_line("broken\tX[1,2]", 3)
    p = tmp_path / "c.tsv"
    p.write_text("# header\n" + line + "\n\nsolo\tO[1]\n")
    assert [f.name for f in read_fixtures(p)] == ["hopf", "solo"]


def test_bundled_corpus_size(corpus):
    assert len(corpus) >= 15
    for name in ("unknot", "hopf", "trefoil", "figure-8", "T(2,4)", "T(2,6)", "T(2,8)", "whitehead",
                 "borromean", "P(6,6,6)", "P(3,2,3,2)", "P(2,2,2)", "split-pair"):
        assert name in corpus

"""Acceptance suite: one test per criterion, each printing a single PASS/FAIL line.

All comparisons are exact (integer or set equality); there are no
floating-point tolerances anywhere in these checks.
"""
import math
from pathlib import Path

import pytest

from twotone.coloring import (R, Coloring, all_colorings, brute_force_colorings, check_coloring,
                              exists_surjection, exists_two_tone, fox_colorable, surjective_colorings)
from twotone.diagram import read_fixtures, reverse_component_orientation
from twotone.dihedral import INF, DihedralElement as G, generates_full, subgroup_generated
from twotone.invariants import determinant, linking_matrix
from twotone.verify import (_signature, check_pretzel_patterns, check_standard_form_propagation, check_two_component_equivalence, classify,
                            run_corpus)

DATA = Path(__file__).with_name("data")
ORACLE_CAP = 10**9  # T(2,8) at n=5 enumerates up to 10^8 assignments before pruning


@pytest.fixture
def report(capsys):
    def emit(number, title, ok, detail=""):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {number:>2}: {title}" + (f" ({detail})" if detail else ""))
        assert ok, detail
    return emit


def _diagrams(corpus):
    for fx in corpus.values():
        yield fx.name, fx.diagram
        if fx.alternative is not None:
            yield fx.name + " (alt)", fx.alternative


def test_criterion_01_oracle_equivalence(corpus, report):
    bad, checked = [], 0
    for name, d in _diagrams(corpus):
        if d.arc_count > 8:
            continue
        for n in (2, 3, 4, 5):
            solver = {tuple(c.elements(d)) for c in all_colorings(d, n, cap=ORACLE_CAP)}
            if solver != brute_force_colorings(d, n, cap=ORACLE_CAP):
                bad.append(f"{name} n={n}")
            checked += 1
    report(1, "solver coloring sets equal the brute-force oracle", not bad and checked > 0,
           f"{checked} (diagram, n) pairs" + (f"; mismatches {bad}" if bad else ""))


def test_criterion_02_determinants(corpus, report):
    expected = {"unknot": 1, "hopf": 2, "trefoil": 3, "T(2,4)": 4, "figure-8": 5}
    bad = []
    for name, det in expected.items():
        d = corpus[name].diagram
        res = determinant(d)
        if res.value != det:
            bad.append(f"{name}: det {res.value}")
        for n in range(3, 13):
            # Fox colorings are the all-reflection oracle colorings
            fox = sum(1 for c in brute_force_colorings(d, n) if all(g.is_reflection for g in c))
            if fox != res.fox_count(n):
                bad.append(f"{name} n={n}: oracle {fox} vs formula {res.fox_count(n)}")
    report(2, "determinants 1,2,3,4,5 and Fox counts match the oracle for n in 3..12", not bad, "; ".join(bad))


def test_criterion_03_fox_gcd_criterion(corpus, report):
    bad = []
    for name, d in _diagrams(corpus):
        det = determinant(d).value
        for n in range(3, 13):
            if bool(fox_colorable(d, n)) != (det == 0 or math.gcd(n, det) != 1):
                bad.append(f"{name} n={n}")
    report(3, "Fox n-colorable iff det = 0 or gcd(n, det) != 1", not bad, "; ".join(bad))


def test_criterion_04_torus_facts(torus, report):
    bad = [f"q={q} Fox-3" for q in range(2, 13) if bool(fox_colorable(torus[q], 3)) != (q % 3 == 0)]
    for q in (4, 8, 12):
        w = exists_surjection(torus[q], 3)
        if w is None or not (check_coloring(torus[q], w) and w.is_surjective(torus[q])):
            bad.append(f"q={q} surjection onto D_3")
    report(4, "T(2,q): Fox 3-colorable iff 3 | q; onto D_3 for q = 4, 8, 12", not bad, "; ".join(bad))


def test_criterion_05_two_component_equivalence(corpus, report):
    bad = []
    for name in ("hopf", "T(2,4)", "T(2,6)", "T(2,8)", "whitehead", "split-pair"):
        chk = check_two_component_equivalence(corpus[name].diagram, range(3, 11), name)
        c = chk.clauses
        if not (c["i"] == c["iii"] == c["v"] and c["iv"] == c["i"]):
            bad.append(f"{name}: {c}")
    report(5, "2-component links: (i), (iii), (v) agree and (iv) on 3..10 iff (i)", not bad, "; ".join(bad))


def test_criterion_06_odd_linking(corpus, report):
    bad, surjections = [], 0
    for name in ("hopf", "T(2,6)"):
        d = corpus[name].diagram
        for n in (3, 5, 7, 9):
            if exists_two_tone(d, n).colorable:
                bad.append(f"{name}: two-tone at n={n}")
        for n in range(3, 11):
            for c in surjective_colorings(d, n):
                surjections += 1
                if not c.is_fox_type(d):
                    bad.append(f"{name}: non-Fox surjection {c.to_compact()}")
    report(6, "odd lk: no two-tone at odd n, every surjection is Fox-type", not bad,
           f"{surjections} surjective colorings inspected" + ("; " + "; ".join(bad) if bad else ""))


def test_criterion_07_many_components(corpus, report):
    bad = []
    for name in ("borromean", "P(2,2,2)", "P(6,6,6)"):
        d = corpus[name].diagram
        for n in range(3, 11):
            w = exists_surjection(d, n)
            if w is None or not (check_coloring(d, w) and w.is_surjective(d)):
                bad.append(f"{name} n={n}")
    report(7, "3+ components: validated surjection witness for every n in 3..10", not bad, "; ".join(bad))


def test_criterion_08_pretzel_patterns(corpus, report):
    p3232 = corpus["P(3,2,3,2)"].diagram
    p666 = corpus["P(6,6,6)"].diagram
    bad = []
    inf = exists_two_tone(p3232, INF)
    if not (inf.colorable and check_coloring(p3232, inf.witness) and inf.witness.is_two_tone(p3232)):
        bad.append("P(3,2,3,2) two-tone D_inf missing")
    if exists_two_tone(p3232, 3).colorable:
        bad.append("P(3,2,3,2) two-tone D_3 found")
    for m in range(4, 11):
        v = exists_two_tone(p666, m)
        if not (v.colorable and check_coloring(p666, v.witness) and v.witness.is_two_tone(p666)):
            bad.append(f"P(6,6,6) two-tone D_{m} missing")
    if exists_two_tone(p666, 3).colorable:
        bad.append("P(6,6,6) two-tone D_3 found")
    chk = check_pretzel_patterns([3], range(3, 9))
    if not chk.consistent:
        bad.extend(chk.failures)
    report(8, "P(3,2,3,2) and P(6,6,6) two-tone pattern", not bad, "; ".join(bad))


def test_criterion_09_standard_form_propagation(report):
    bad = []
    for twists, closure in (([2], None), ([2, 2], [0, 1])):
        chk = check_standard_form_propagation(twists, closure, [3, 5, 7])
        if not chk.consistent:
            bad.extend(chk.failures)
    report(9, "seeded propagation on standard forms yields two-tone colorings", not bad, "; ".join(bad))


def test_criterion_10_mod4_law(corpus, report):
    bad, seen = [], 0
    for name, d in _diagrams(corpus):
        if d.num_components != 2:
            continue
        seen += 1
        lk = linking_matrix(d)[0][1]
        det = determinant(d).value
        if (lk % 2 == 0) != (det % 4 == 0):
            bad.append(f"{name}: lk {lk}, det {det}")
    report(10, "2-component links: lk even iff det = 0 mod 4", not bad and seen > 0,
           f"{seen} diagrams" + ("; " + "; ".join(bad) if bad else ""))


def test_criterion_11_invariance(corpus, report):
    bad = []
    ns = range(3, 9)
    for name, fx in corpus.items():
        d = fx.diagram
        if fx.alternative is not None:
            a, b = classify(d, ns), classify(fx.alternative, ns)
            if a.determinant != b.determinant or _signature(a.linking) != _signature(b.linking):
                bad.append(f"{name}: invariants differ")
            va = [(c.fox, c.two_tone, c.surjective) for c in a.cells + [a.infinite]]
            vb = [(c.fox, c.two_tone, c.surjective) for c in b.cells + [b.infinite]]
            if va != vb:
                bad.append(f"{name}: verdicts differ")
        for comp in range(d.num_components):
            r = reverse_component_orientation(d, comp)
            for n in (3, 4, 5, 6, INF):
                if exists_two_tone(d, n).colorable != exists_two_tone(r, n).colorable:
                    bad.append(f"{name}: reversing component {comp} changes two-tone at n={n}")
    report(11, "alternative diagrams and orientation reversal preserve verdicts", not bad, "; ".join(bad))


def test_criterion_12_negative_controls(report):
    bad = []
    fixtures = read_fixtures(DATA / "corrupted.tsv")
    for fx in fixtures:
        if check_coloring(fx.diagram, Coloring.parse_compact(fx.coloring)):
            bad.append(f"{fx.name} accepted by check_coloring")
    result = run_corpus(DATA / "corrupted.tsv")
    if result.failing() != [fx.name for fx in fixtures]:
        bad.append("corpus run did not flag the corrupted fixture")
    pair = [G.reflection(0, 4), G.reflection(2, 4)]
    desc = subgroup_generated(pair, 4)
    if generates_full(pair, 4) or desc.d != 2 or desc.order() != 4:
        bad.append(f"{{a0, a2}} in D_4 reported as {desc}")
    report(12, "corrupted coloring rejected; {a0, a2} does not generate D_4", not bad and bool(fixtures),
           "; ".join(bad))

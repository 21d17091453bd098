"""Per-link classification and implication checks.

Every positive verdict carries a witness coloring that is re-validated
with ``check_coloring`` before it is trusted.  A check is *consistent*
when the implications it encodes hold on the instance; anything else
(including a capacity error) is reported as a failure, never skipped.
"""
from __future__ import annotations

import csv
import io
import itertools
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from .coloring import (R, T, Coloring, PropagationConflict, Underdetermined,
                       check_coloring, exists_surjection, exists_two_tone, fox_colorable,
                       propagate, surjective_colorings)
from .diagram import Diagram, Fixture, generate_pretzel, generate_standard_form, read_fixtures, sublink
from .dihedral import INF, DihedralElement, format_modulus
from .invariants import component_determinants, determinant, linking_matrix
from .zlinalg import DEFAULT_CAP, CapacityError


# reports ---------------------------------------------------------------------

@dataclass
class Cell:
    """Verdicts for one modulus; witnesses are compact coloring strings."""

    modulus: int
    fox: bool | None = None
    fox_count: int | None = None
    two_tone: bool | None = None
    two_tone_witness: str | None = None
    surjective: bool | None = None
    surjection_witness: str | None = None
    error: str | None = None

    def to_record(self) -> dict:
        rec = asdict(self)
        rec["modulus"] = format_modulus(self.modulus)
        return rec


@dataclass
class ImplicationCheck:
    kind: str
    link: str
    clauses: dict[str, bool]
    consistent: bool
    failures: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def to_record(self) -> dict:
        return asdict(self)


@dataclass
class ClassificationReport:
    name: str
    components: int
    linking: list[list[int]]
    determinant: int
    component_determinants: list[int]
    cells: list[Cell]
    infinite: Cell
    flags: list[str] = field(default_factory=list)
    checks: list[ImplicationCheck] = field(default_factory=list)

    @property
    def consistent(self) -> bool:
        return not self.flags and all(c.consistent for c in self.checks)

    def cell(self, n: int) -> Cell:
        if n == INF:
            return self.infinite
        for c in self.cells:
            if c.modulus == n:
                return c
        raise KeyError(n)

    def to_record(self) -> dict:
        return {
            "name": self.name,
            "components": self.components,
            "linking": self.linking,
            "determinant": self.determinant,
            "component_determinants": self.component_determinants,
            "cells": [c.to_record() for c in self.cells],
            "infinite": self.infinite.to_record(),
            "flags": list(self.flags),
            "checks": [c.to_record() for c in self.checks],
            "consistent": self.consistent,
        }


def parse_n_range(text: str) -> list[int]:
    """``"3..8"`` -> [3, ..., 8]; also accepts ``"3,5,7"`` and a single integer."""
    text = text.strip()
    if ".." in text:
        lo, hi = text.split("..", 1)
        values = list(range(int(lo), int(hi) + 1))
    else:
        values = [int(v) for v in text.split(",") if v.strip()]
    if not values:
        raise ValueError(f"empty n range {text!r}")
    return values


def _require_range(n_range: Iterable[int]) -> list[int]:
    ns = sorted(set(int(n) for n in n_range))
    if not ns or ns[0] < 3:
        raise ValueError("n range must be non-empty with every n >= 3")
    return ns


def _validated(d: Diagram, c: Coloring | None, what: str, flags: list[str]) -> str | None:
    if c is None:
        return None
    if not check_coloring(d, c):
        flags.append(f"{what}: witness {c.to_compact()} fails a crossing relation")
    return c.to_compact()


def _fill_cell(d: Diagram, cell: Cell, cap: int, flags: list[str]):
    n = cell.modulus
    tag = f"n={format_modulus(n)}"
    try:
        if n != INF:
            fox = fox_colorable(d, n)
            cell.fox, cell.fox_count = fox.colorable, fox.count
        verdict = exists_two_tone(d, n, cap)
        cell.two_tone = verdict.colorable
        cell.two_tone_witness = _validated(d, verdict.witness, f"{tag} two-tone", flags)
        if verdict.witness is not None and not verdict.witness.is_two_tone(d):
            flags.append(f"{tag} two-tone: witness is not two-tone")
        surj = exists_surjection(d, n, cap)
        cell.surjective = surj is not None
        cell.surjection_witness = _validated(d, surj, f"{tag} surjection", flags)
        if surj is not None and not surj.is_surjective(d):
            flags.append(f"{tag} surjection: witness does not generate the group")
    except CapacityError as exc:
        cell.error = str(exc)
        flags.append(f"{tag}: capacity exceeded ({exc})")


def classify(d: Diagram, n_range: Iterable[int], name: str = "", cap: int = DEFAULT_CAP) -> ClassificationReport:
    """Fox, two-tone and surjection verdicts for each n and for D_infinity."""
    ns = _require_range(n_range)
    flags: list[str] = []
    det = determinant(d)
    comp_dets = component_determinants(d) if d.num_components > 1 else [det.value]
    report = ClassificationReport(
        name=name, components=d.num_components, linking=linking_matrix(d),
        determinant=det.value, component_determinants=comp_dets,
        cells=[Cell(n) for n in ns], infinite=Cell(INF), flags=flags)
    for cell in report.cells + [report.infinite]:
        _fill_cell(d, cell, cap, flags)
    for cell in report.cells:
        if cell.fox is None:
            continue
        expected = det.value == 0 or math.gcd(cell.modulus, det.value) != 1
        if cell.fox != expected:
            flags.append(f"n={cell.modulus}: Fox verdict {cell.fox} disagrees with gcd(n, det) criterion")
        if det.fox_count(cell.modulus) != cell.fox_count:
            flags.append(f"n={cell.modulus}: Fox count {cell.fox_count} disagrees with the Smith form")
    _check_even_linking_of_rotations(d, report, flags)
    if d.num_components == 2:
        lk_even = report.linking[0][1] % 2 == 0
        if lk_even != (det.value % 4 == 0):
            flags.append(f"lk={report.linking[0][1]} but det={det.value}: parity and det mod 4 disagree")
    return report


def _check_even_linking_of_rotations(d: Diagram, report: ClassificationReport, flags: list[str]):
    """At odd n, each rotation-toned component links the reflection part evenly."""
    for cell in report.cells:
        if cell.modulus % 2 == 0 or not cell.two_tone_witness:
            continue
        c = Coloring.parse_compact(cell.two_tone_witness)
        rot = [i for i, t in enumerate(c.tones) if t == T]
        refl = [i for i, t in enumerate(c.tones) if t == R]
        for i in rot:
            lk = sum(report.linking[i][j] for j in refl)
            if lk % 2:
                flags.append(f"n={cell.modulus}: rotation-toned component {i} has odd lk {lk} with the rest")


# implication checks -----------------------------------------------------------

def _linking_pair(d: Diagram) -> int:
    if d.num_components != 2:
        raise ValueError(f"expected a 2-component link, got {d.num_components} components")
    return linking_matrix(d)[0][1]


def check_two_component_equivalence(d: Diagram, n_range: Iterable[int], name: str = "", cap: int = DEFAULT_CAP) -> ImplicationCheck:
    """lk parity vs two-tone colorability vs surjections, for 2-component links."""
    lk = _linking_pair(d)
    ns = _require_range(n_range)
    failures: list[str] = []
    notes: list[str] = []
    odd = [n for n in ns if n % 2]
    witnesses = {}
    for n in odd:
        v = exists_two_tone(d, n, cap)
        if v.colorable:
            witnesses[n] = v.witness
            break
    ii = bool(witnesses)
    inf2 = exists_two_tone(d, INF, cap)
    iii = inf2.colorable
    missing = [n for n in ns if exists_surjection(d, n, cap) is None]
    iv = not missing
    v = exists_surjection(d, INF, cap) is not None
    i = lk % 2 == 0
    clauses = {"i": i, "ii": ii, "iii": iii, "iv": iv, "v": v}
    for w in list(witnesses.values()) + [inf2.witness]:
        if w is not None and not (check_coloring(d, w) and w.is_two_tone(d)):
            failures.append(f"invalid two-tone witness {w.to_compact()}")
    if i != iii:
        failures.append(f"(i) {i} but (iii) {iii}")
    if i != v:
        failures.append(f"(i) {i} but (v) {v}")
    if i != iv:
        failures.append(f"(i) {i} but (iv) {iv}" + (f"; no surjection for n in {missing}" if missing else ""))
    if ii and not i:
        failures.append(f"(ii) holds at n={next(iter(witnesses))} but lk={lk} is odd")
    if i and not ii:
        notes.append(f"range-limited: no two-tone coloring for odd n in {odd}")
    return ImplicationCheck("two_component", name, clauses, not failures, failures, notes)


def check_odd_linking(d: Diagram, n_range: Iterable[int], name: str = "", cap: int = DEFAULT_CAP) -> ImplicationCheck:
    """Odd lk: no two-tone coloring at odd n; every surjection is Fox-type."""
    lk = _linking_pair(d)
    if lk % 2 == 0:
        raise ValueError(f"linking number {lk} is even")
    ns = _require_range(n_range)
    failures = []
    for n in ns:
        if n % 2:
            v = exists_two_tone(d, n, cap)
            if v.colorable:
                failures.append(f"n={n}: two-tone coloring {v.witness.to_compact()}")
        for c in surjective_colorings(d, n, cap):
            if not c.is_fox_type(d):
                failures.append(f"n={n}: surjection {c.to_compact()} is not Fox-type")
                break
    clauses = {
        "no_two_tone_odd_n": not any("two-tone" in f for f in failures),
        "surjections_fox_type": not any("Fox-type" in f for f in failures),
    }
    return ImplicationCheck("odd_linking", name, clauses, not failures, failures)


def check_many_components(d: Diagram, n_range: Iterable[int], name: str = "", cap: int = DEFAULT_CAP) -> ImplicationCheck:
    """At least 3 components: a surjection onto D_n for every n in range."""
    if d.num_components < 3:
        raise ValueError(f"expected at least 3 components, got {d.num_components}")
    ns = _require_range(n_range)
    failures = []
    for n in ns:
        w = exists_surjection(d, n, cap)
        if w is None:
            failures.append(f"n={n}: no surjection (counterexample or bug)")
        elif not (check_coloring(d, w) and w.is_surjective(d)):
            failures.append(f"n={n}: invalid surjection witness {w.to_compact()}")
    return ImplicationCheck("many_components", name, {"surjective_all_n": not failures}, not failures, failures)


def check_sublink_alternative(d: Diagram, n_range: Iterable[int], name: str = "",
                              cap: int = DEFAULT_CAP) -> ImplicationCheck:
    """A surjection onto D_n forces a two-tone or Fox n-colorable sublink."""
    ns = _require_range(n_range)
    comps = range(d.num_components)
    subs = [sublink(d, keep) for r in range(1, d.num_components + 1)
            for keep in itertools.combinations(comps, r)]
    failures = []
    for n in ns:
        if exists_surjection(d, n, cap) is None:
            continue
        if not any(fox_colorable(s, n) or (s.num_components > 1 and exists_two_tone(s, n, cap).colorable)
                   for s in subs):
            failures.append(f"n={n}: surjection exists but no sublink is two-tone or Fox colorable")
    return ImplicationCheck("sublink_alternative", name, {"holds": not failures}, not failures, failures)


def check_pretzel_patterns(m_list: Sequence[int], sample_n: Iterable[int] = range(3, 9),
                          cap: int = DEFAULT_CAP) -> ImplicationCheck:
    """Odd m: P(m,2,m,2) two-tone over D_inf but not D_m; P(2m,2m,2m) not two-tone D_m yet surjective."""
    ns = _require_range(sample_n)
    clauses: dict[str, bool] = {}
    failures = []
    for m in m_list:
        if m < 3 or m % 2 == 0:
            raise ValueError(f"m must be odd and >= 3, got {m}")
        p = generate_pretzel([m, 2, m, 2])
        inf = exists_two_tone(p, INF, cap)
        clauses[f"P({m},2,{m},2) two-tone D_inf"] = inf.colorable and check_coloring(p, inf.witness)
        clauses[f"P({m},2,{m},2) no two-tone D_{m}"] = not exists_two_tone(p, m, cap).colorable
        q = generate_pretzel([2 * m] * 3)
        clauses[f"P({2 * m},{2 * m},{2 * m}) no two-tone D_{m}"] = not exists_two_tone(q, m, cap).colorable
        missing = [n for n in ns if exists_surjection(q, n, cap) is None]
        clauses[f"P({2 * m},{2 * m},{2 * m}) surjective"] = not missing
    failures = [k for k, ok in clauses.items() if not ok]
    return ImplicationCheck("pretzel_patterns", ",".join(map(str, m_list)), clauses, not failures, failures)


def check_standard_form_propagation(twist_counts: Sequence[int], closure: Sequence[int] | None, n_list: Iterable[int]) -> ImplicationCheck:
    """Seeded propagation on a standard form yields a two-tone coloring for each odd n."""
    sf = generate_standard_form(twist_counts, closure)
    d = sf.diagram
    name = f"standard{list(twist_counts)}" + (f"/{list(closure)}" if closure else "")
    lk = linking_matrix(d)
    clauses: dict[str, bool] = {}
    failures = []
    for c in range(d.num_components):
        if c != sf.base_component and lk[sf.base_component][c] % 2:
            failures.append(f"lk with component {c} is odd")
    for n in n_list:
        if n < 3 or n % 2 == 0:
            raise ValueError(f"n must be odd and >= 3, got {n}")
        seeds = {sf.alpha: DihedralElement.reflection(0, n)}
        seeds.update({b: DihedralElement.rotation(1, n) for b in sf.betas})
        try:
            col = propagate(d, seeds)
        except (PropagationConflict, Underdetermined) as exc:
            clauses[f"n={n}"] = False
            failures.append(f"n={n}: {exc}")
            continue
        ok = (check_coloring(d, col) and col.is_two_tone(d) and col.tones[sf.base_component] == R
              and all(t == T for i, t in enumerate(col.tones) if i != sf.base_component))
        clauses[f"n={n}"] = ok
        if not ok:
            failures.append(f"n={n}: propagated coloring {col.to_compact()} is not the expected two-tone")
    return ImplicationCheck("standard_form", name, clauses, not failures, failures)


# corpus ------------------------------------------------------------------------

@dataclass
class CorpusConfig:
    n_range: tuple[int, ...] = tuple(range(3, 9))
    cap: int = DEFAULT_CAP
    jobs: int = 1

    @classmethod
    def from_mapping(cls, m: dict) -> "CorpusConfig":
        known = {"n_range", "cap", "jobs", "corpus"}
        extra = set(m) - known
        if extra:
            raise ValueError(f"unknown config keys: {sorted(extra)}")
        n_range = m.get("n_range", "3..8")
        if isinstance(n_range, str):
            n_range = parse_n_range(n_range)
        return cls(tuple(_require_range(n_range)), int(m.get("cap", DEFAULT_CAP)), int(m.get("jobs", 1)))

    @classmethod
    def load(cls, path: str | Path) -> "CorpusConfig":
        with open(path, encoding="utf-8") as fh:
            return cls.from_mapping(json.load(fh))


def _signature(lk: list[list[int]]) -> tuple:
    """Linking matrix up to reordering and reorienting components."""
    c = len(lk)
    best = None
    for perm in itertools.permutations(range(c)):
        for signs in itertools.product((1, -1), repeat=c):
            key = tuple(signs[i] * signs[j] * lk[perm[i]][perm[j]] for i in range(c) for j in range(c))
            if best is None or key < best:
                best = key
    return best or ()


def _verdicts(report: ClassificationReport) -> list:
    return [(c.modulus, c.fox, c.two_tone, c.surjective) for c in report.cells + [report.infinite]]


def _component_determinant_multiset(report: ClassificationReport) -> list[int]:
    return sorted(report.component_determinants)


def analyse_fixture(fx: Fixture, config: CorpusConfig) -> ClassificationReport:
    d = fx.diagram
    ns = config.n_range
    report = classify(d, ns, fx.name, config.cap)
    flags = report.flags
    try:
        if d.num_components == 2:
            report.checks.append(check_two_component_equivalence(d, ns, fx.name, config.cap))
            if report.linking[0][1] % 2:
                report.checks.append(check_odd_linking(d, ns, fx.name, config.cap))
        if d.num_components >= 3:
            report.checks.append(check_many_components(d, ns, fx.name, config.cap))
        if d.num_components >= 2:
            report.checks.append(check_sublink_alternative(d, ns, fx.name, config.cap))
        if fx.alternative is not None:
            alt = classify(fx.alternative, ns, fx.name + " (alt)", config.cap)
            flags.extend(f"alt: {f}" for f in alt.flags)
            if alt.determinant != report.determinant:
                flags.append(f"alt diagram determinant {alt.determinant} != {report.determinant}")
            if _signature(alt.linking) != _signature(report.linking):
                flags.append("alt diagram linking matrix differs")
            if _component_determinant_multiset(alt) != _component_determinant_multiset(report):
                flags.append("alt diagram component determinants differ")
            if _verdicts(alt) != _verdicts(report):
                flags.append("alt diagram verdicts differ")
    except CapacityError as exc:
        flags.append(f"capacity exceeded during implication checks ({exc})")
    if fx.coloring is not None:
        try:
            c = Coloring.parse_compact(fx.coloring)
            if not check_coloring(d, c):
                flags.append(f"fixture coloring {fx.coloring} fails a crossing relation")
        except ValueError as exc:
            flags.append(f"fixture coloring unusable: {exc}")
    return report


CSV_FIELDS = ["name", "components", "linking", "determinant", "component_determinants",
              "fox", "two_tone", "surjective", "two_tone_inf", "surjective_inf", "checks", "consistent", "flags"]


def _ns_where(report: ClassificationReport, attr: str) -> str:
    return " ".join(str(c.modulus) for c in report.cells if getattr(c, attr)) or "-"


def table_row(report: ClassificationReport) -> dict:
    return {
        "name": report.name,
        "components": report.components,
        "linking": " ".join(str(report.linking[i][j]) for i in range(report.components)
                            for j in range(i + 1, report.components)) or "-",
        "determinant": report.determinant,
        "component_determinants": " ".join(map(str, report.component_determinants)),
        "fox": _ns_where(report, "fox"),
        "two_tone": _ns_where(report, "two_tone"),
        "surjective": _ns_where(report, "surjective"),
        "two_tone_inf": report.infinite.two_tone,
        "surjective_inf": report.infinite.surjective,
        "checks": " ".join(f"{c.kind}:{'ok' if c.consistent else 'FAIL'}" for c in report.checks) or "-",
        "consistent": report.consistent,
        "flags": "; ".join(report.flags + [f"{c.kind}: {f}" for c in report.checks for f in c.failures]),
    }


@dataclass
class CorpusResult:
    reports: list[ClassificationReport]

    @property
    def consistent(self) -> bool:
        return all(r.consistent for r in self.reports)

    def failing(self) -> list[str]:
        return [r.name for r in self.reports if not r.consistent]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.DictWriter(buf, CSV_FIELDS, lineterminator="\n")
        w.writeheader()
        for r in self.reports:
            w.writerow(table_row(r))
        return buf.getvalue()

    def to_jsonl(self) -> str:
        return "".join(json.dumps(r.to_record(), sort_keys=True) + "\n" for r in self.reports)


def _analyse_star(args):
    return analyse_fixture(*args)


def run_fixtures(fixtures: Sequence[Fixture], config: CorpusConfig) -> CorpusResult:
    work = [(fx, config) for fx in fixtures]
    if config.jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(config.jobs) as pool:
            reports = list(pool.map(_analyse_star, work))
    else:
        reports = [_analyse_star(w) for w in work]
    return CorpusResult(reports)


def run_corpus(path: str | Path, config: CorpusConfig | None = None,
               csv_out: str | Path | None = None, records_out: str | Path | None = None) -> CorpusResult:
    """Classify and check every fixture; optionally write the CSV table and JSONL records."""
    config = config or CorpusConfig()
    fixtures = read_fixtures(path)
    result = run_fixtures(fixtures, config)
    if csv_out is not None:
        Path(csv_out).write_text(result.to_csv(), encoding="utf-8")
    if records_out is not None:
        Path(records_out).write_text(result.to_jsonl(), encoding="utf-8")
    return result


def bundled_corpus() -> Path:
    return Path(__file__).with_name("data") / "corpus.tsv"

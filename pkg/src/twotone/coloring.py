"""Dihedral colorings of diagrams.

A coloring is a tone per component plus an exponent per arc: arc ``r``
gets ``a_{k_r}`` on a reflection-toned (``"R"``) component and ``b_{k_r}``
on a rotation-toned (``"T"``) one.  For a fixed tone every crossing
relation is a homogeneous linear equation in the exponents, so the
colorings of that tone are the kernel of an integer matrix.
"""
from __future__ import annotations

import itertools
import math
import re
from collections import deque
from dataclasses import dataclass
from typing import Iterator, Mapping, Sequence

import numpy as np

from . import _kernels
from .diagram import Diagram
from .dihedral import (INF, DihedralElement, format_modulus, generates_full, parse_modulus,
                       reduce_exponent, under_arc_rule, under_arc_rule_inverse)
from .zlinalg import (DEFAULT_CAP, CapacityError, IntMatrix, SolutionModule, kernel_integer,
                      kernel_mod_n, smith_normal_form)

R, T = "R", "T"
ToneAssignment = tuple[str, ...]

ORACLE_CAP = 10**7


@dataclass(frozen=True)
class Coloring:
    modulus: int
    tones: ToneAssignment
    exponents: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "exponents",
                           tuple(reduce_exponent(int(k), self.modulus) for k in self.exponents))

    def element(self, d: Diagram, arc: int) -> DihedralElement:
        eps = 1 if self.tones[d.arc_component[arc]] == R else 0
        return DihedralElement(self.modulus, eps, self.exponents[arc])

    def elements(self, d: Diagram) -> tuple[DihedralElement, ...]:
        return tuple(self.element(d, a) for a in range(d.arc_count))

    def image(self, d: Diagram) -> frozenset[DihedralElement]:
        return frozenset(self.elements(d))

    def is_two_tone(self, d: Diagram) -> bool:
        img = self.image(d)
        return (not any(g.is_identity for g in img)
                and any(g.is_reflection for g in img)
                and any(not g.is_reflection for g in img))

    def is_surjective(self, d: Diagram) -> bool:
        return generates_full(self.image(d), self.modulus)

    def is_fox_type(self, d: Diagram) -> bool:
        """Every arc goes to e or to a reflection."""
        return all(g.is_reflection or g.is_identity for g in self.elements(d))

    def to_record(self) -> dict:
        return {"modulus": format_modulus(self.modulus), "tones": "".join(self.tones),
                "exponents": list(self.exponents)}

    def to_compact(self) -> str:
        return "n={} tones={} exps={}".format(format_modulus(self.modulus), "".join(self.tones),
                                             ",".join(map(str, self.exponents)))

    def to_lines(self, d: Diagram) -> list[str]:
        lines = [f"modulus: {format_modulus(self.modulus)}", "tones: " + " ".join(self.tones)]
        lines += [f"arc {a}: {g}" for a, g in enumerate(self.elements(d))]
        return lines

    @classmethod
    def from_record(cls, rec: Mapping) -> "Coloring":
        modulus = rec["modulus"]
        modulus = parse_modulus(modulus) if isinstance(modulus, str) else int(modulus)
        return cls(modulus, tuple(rec["tones"]), tuple(int(k) for k in rec["exponents"]))

    @classmethod
    def parse_compact(cls, text: str) -> "Coloring":
        fields = dict(re.findall(r"(\w+)=(\S*)", text))
        try:
            exps = tuple(int(v) for v in fields["exps"].split(",") if v)
            return cls(parse_modulus(fields["n"]), tuple(fields["tones"]), exps)
        except (KeyError, ValueError) as exc:
            raise ValueError(f"bad coloring text {text!r}: {exc}") from None


def decode(d: Diagram, tones: ToneAssignment, exponents: Sequence[int], modulus: int) -> Coloring:
    return Coloring(modulus, tuple(tones), tuple(int(v) for v in exponents))


def tone_assignments(num_components: int, *, two_tone: bool = False) -> list[ToneAssignment]:
    """All tone assignments, fewest rotation-toned components first."""
    out = [t for t in itertools.product((R, T), repeat=num_components)
           if not two_tone or (R in t and T in t)]
    out.sort(key=lambda t: (t.count(T), t))
    return out


def _check_tones(d: Diagram, tones: Sequence[str]) -> ToneAssignment:
    tones = tuple(tones)
    if len(tones) != d.num_components or any(t not in (R, T) for t in tones):
        raise ValueError(f"need one tone in 'RT' per component, got {tones!r}")
    return tones


def index_system(d: Diagram, tones: Sequence[str]) -> IntMatrix:
    """Homogeneous exponent equations, one row per crossing."""
    tones = _check_tones(d, tones)
    rows = []
    for x in d.crossing_arcs:
        over_tone = tones[d.arc_component[x.over]]
        under_tone = tones[d.arc_component[x.under_in]]
        row = [0] * d.arc_count
        row[x.under_out] += 1
        if over_tone == R and under_tone == R:
            row[x.over] -= 2
            row[x.under_in] += 1
        elif over_tone == R:
            row[x.under_in] += 1
        elif under_tone == R:
            row[x.under_in] -= 1
            row[x.over] -= 2 * x.sign
        else:
            row[x.under_in] -= 1
        rows.append(row)
    return rows


@dataclass(frozen=True)
class ColoringSpace:
    modulus: int
    tones: ToneAssignment
    module: SolutionModule | None = None
    basis: tuple[tuple[int, ...], ...] = ()

    @property
    def count(self) -> float | int:
        return self.module.count if self.module is not None else math.inf

    def colorings(self, cap: int = DEFAULT_CAP) -> Iterator[Coloring]:
        if self.module is None:
            raise CapacityError("D_infinity coloring spaces are infinite")
        for row in self.module.enumerate(cap):
            yield Coloring(self.modulus, self.tones, tuple(int(v) for v in row))

    def contains(self, exponents: Sequence[int], d: Diagram) -> bool:
        c = Coloring(self.modulus, self.tones, tuple(exponents))
        return check_coloring(d, c)


def coloring_space(d: Diagram, tones: Sequence[str], modulus: int) -> ColoringSpace:
    tones = _check_tones(d, tones)
    m = index_system(d, tones)
    if modulus == INF:
        return ColoringSpace(INF, tones, None, tuple(kernel_integer(m, d.arc_count)))
    return ColoringSpace(modulus, tones, kernel_mod_n(m, modulus, d.arc_count))


def all_colorings(d: Diagram, n: int, cap: int = DEFAULT_CAP) -> list[Coloring]:
    out = []
    for tones in tone_assignments(d.num_components):
        out.extend(coloring_space(d, tones, n).colorings(cap))
    return out


def _masks(d: Diagram, tones: ToneAssignment):
    comp = np.array(d.arc_component, dtype=np.int64)
    tone_arr = np.array([tones[c] == T for c in range(d.num_components)], dtype=bool)
    tmask = tone_arr[comp] if len(comp) else np.zeros(0, dtype=bool)
    return tmask, ~tmask


def _require_dihedral_modulus(modulus: int):
    if modulus != INF and modulus < 3:
        raise ValueError(f"modulus must be >= 3 or inf, got {modulus}")


@dataclass(frozen=True)
class TwoToneVerdict:
    colorable: bool
    witness: Coloring | None = None
    obstruction: str | None = None


def exists_two_tone(d: Diagram, modulus: int, cap: int = DEFAULT_CAP) -> TwoToneVerdict:
    """Search tones with both kinds present for a coloring that never hits e."""
    _require_dihedral_modulus(modulus)
    tried = []
    for tones in tone_assignments(d.num_components, two_tone=True):
        space = coloring_space(d, tones, modulus)
        tmask, _ = _masks(d, tones)
        if modulus == INF:
            exps = _nonzero_lattice_vector(space.basis, tmask)
        else:
            mod = space.module
            if mod.count > cap:
                raise CapacityError(f"tone {''.join(tones)}: {mod.count} colorings exceed the cap of {cap}")
            idx = _kernels.first_all_nonzero(mod.generator_array(), mod.order_array(), modulus, tmask)
            exps = mod.solution(idx) if idx >= 0 else None
        if exps is not None:
            return TwoToneVerdict(True, Coloring(modulus, tones, tuple(exps)))
        tried.append("".join(tones))
    if not tried:
        reason = "fewer than two components: no tone assignment mixes reflections and rotations"
    else:
        reason = ("no mixed tone admits rotation exponents that are all nonzero "
                  f"(tried {', '.join(tried)})")
    return TwoToneVerdict(False, None, reason)


def _nonzero_lattice_vector(basis, mask) -> tuple[int, ...] | None:
    """Lattice vector nonzero on every masked coordinate, or None."""
    cols = np.flatnonzero(mask)
    if any(all(v[c] == 0 for v in basis) for c in cols):
        return None
    if not basis:
        return () if not len(mask) else None
    scale = 2 * max(abs(x) for v in basis for x in v) + 1
    # balanced base-`scale` digits: a coordinate vanishes only if all digits do
    x = [sum(scale ** i * v[j] for i, v in enumerate(basis)) for j in range(len(basis[0]))]
    g = math.gcd(*x)
    return tuple(v // g for v in x) if g else tuple(x)


def exists_surjection(d: Diagram, modulus: int, cap: int = DEFAULT_CAP) -> Coloring | None:
    """A coloring whose colors generate all of D_n (or D_infinity), or None."""
    _require_dihedral_modulus(modulus)
    for tones in tone_assignments(d.num_components):
        if R not in tones:
            continue
        space = coloring_space(d, tones, modulus)
        tmask, rmask = _masks(d, tones)
        if modulus == INF:
            exps = _generating_lattice_vector(space.basis, tmask, rmask)
        else:
            mod = space.module
            if mod.count > cap:
                raise CapacityError(f"tone {''.join(tones)}: {mod.count} colorings exceed the cap of {cap}")
            idx = _kernels.first_generating(mod.generator_array(), mod.order_array(), modulus, tmask, rmask)
            exps = mod.solution(idx) if idx >= 0 else None
        if exps is not None:
            return Coloring(modulus, tones, tuple(exps))
    return None


def _generating_lattice_vector(basis, tmask, rmask) -> tuple[int, ...] | None:
    """Integer solution whose rotation exponents and reflection differences have gcd 1.

    The forms evaluated on the basis span a lattice S; some element of S has
    content 1 exactly when the first Smith divisor of S is 1, and the first
    row of the left transform picks it out.
    """
    if not basis:
        return None
    rcols = np.flatnonzero(rmask)
    tcols = np.flatnonzero(tmask)
    r0 = rcols[0]
    forms = [[v[t] for t in tcols] + [v[r] - v[r0] for r in rcols[1:]] for v in basis]
    if not forms[0]:
        return None
    snf = smith_normal_form(forms)
    if not snf.divisors or snf.divisors[0] != 1:
        return None
    coeffs = snf.U[0]
    return tuple(sum(c * v[j] for c, v in zip(coeffs, basis)) for j in range(len(basis[0])))


def surjective_colorings(d: Diagram, n: int, cap: int = DEFAULT_CAP) -> list[Coloring]:
    """Every coloring whose image generates D_n."""
    _require_dihedral_modulus(n)
    if n == INF:
        raise ValueError("cannot list D_infinity colorings")
    out = []
    for tones in tone_assignments(d.num_components):
        mod = coloring_space(d, tones, n).module
        sols = mod.enumerate(cap)
        tmask, rmask = _masks(d, tones)
        for row in sols[_kernels.generating_rows(sols, n, tmask, rmask)]:
            out.append(Coloring(n, tones, tuple(int(v) for v in row)))
    return out


@dataclass(frozen=True)
class FoxResult:
    colorable: bool
    count: int

    def __bool__(self) -> bool:
        return self.colorable


def fox_colorable(d: Diagram, n: int) -> FoxResult:
    """Non-trivial Fox n-colorability (some coloring uses two colors)."""
    if n < 2:
        raise ValueError("n must be >= 2")
    count = coloring_space(d, (R,) * d.num_components, n).module.count
    return FoxResult(count > n, count)


def first_violation(d: Diagram, c: Coloring) -> int | None:
    if len(c.exponents) != d.arc_count or len(c.tones) != d.num_components:
        raise ValueError("coloring does not match the diagram")
    els = c.elements(d)
    for i, x in enumerate(d.crossing_arcs):
        if under_arc_rule(els[x.over], els[x.under_in], x.sign) != els[x.under_out]:
            return i
    return None


def check_coloring(d: Diagram, c: Coloring) -> bool:
    return first_violation(d, c) is None


# propagation ---------------------------------------------------------------

class PropagationConflict(ValueError):
    def __init__(self, crossing: int | None, message: str):
        super().__init__(message if crossing is None else f"crossing {crossing}: {message}")
        self.crossing = crossing


class Underdetermined(ValueError):
    def __init__(self, arcs: Sequence[int]):
        super().__init__(f"unconstrained arcs: {list(arcs)}")
        self.arcs = list(arcs)


def _halve(v: int, n: int) -> int | None:
    """Unique u with 2u = v (mod n); None when not unique or impossible."""
    if n == INF:
        return v // 2 if v % 2 == 0 else None
    if n % 2:
        return (v * (n + 1) // 2) % n
    return None


def propagate(d: Diagram, seeds: Mapping[int, DihedralElement]) -> Coloring:
    """Extend seed colors across crossings until every arc is forced.

    Raises ``PropagationConflict`` at the first crossing whose relation
    fails and ``Underdetermined`` when arcs stay free.
    """
    if not seeds:
        raise Underdetermined(range(d.arc_count))
    moduli = {g.modulus for g in seeds.values()}
    if len(moduli) != 1:
        raise ValueError("seeds mix moduli")
    n = moduli.pop()
    known: dict[int, DihedralElement] = {}
    tone: dict[int, str] = {}

    def assign(arc: int, g: DihedralElement, crossing: int | None):
        comp = d.arc_component[arc]
        t = R if g.is_reflection else T
        if tone.setdefault(comp, t) != t:
            raise PropagationConflict(crossing, f"arc {arc} would mix tones on component {comp}")
        old = known.get(arc)
        if old is None:
            known[arc] = g
            queue.append(arc)
        elif old != g:
            raise PropagationConflict(crossing, f"arc {arc} forced to both {old} and {g}")

    touching: dict[int, list[int]] = {}
    for i, x in enumerate(d.crossing_arcs):
        for a in {x.over, x.under_in, x.under_out}:
            touching.setdefault(a, []).append(i)

    queue: deque[int] = deque()
    for arc, g in sorted(seeds.items()):
        assign(arc, g, None)
    while True:
        while queue:
            arc = queue.popleft()
            for i in touching.get(arc, ()):
                _propagate_crossing(d, i, n, known, tone, assign)
        # a component tone learnt elsewhere can unlock crossings with no new color nearby
        for i in range(len(d.crossings)):
            _propagate_crossing(d, i, n, known, tone, assign)
        if not queue:
            break
    missing = [a for a in range(d.arc_count) if a not in known]
    if missing:
        raise Underdetermined(missing)
    tones = tuple(tone[c] for c in range(d.num_components))
    coloring = Coloring(n, tones, tuple(known[a].k for a in range(d.arc_count)))
    bad = first_violation(d, coloring)
    if bad is not None:
        raise PropagationConflict(bad, "relation fails on the completed coloring")
    return coloring


def _propagate_crossing(d, i, n, known, tone, assign):
    x = d.crossing_arcs[i]
    X, Y, Z = known.get(x.over), known.get(x.under_in), known.get(x.under_out)
    s = x.sign
    over_tone = tone.get(d.arc_component[x.over])
    if X is not None and Y is not None:
        assign(x.under_out, under_arc_rule(X, Y, s), i)
        return
    if X is not None and Z is not None:
        assign(x.under_in, under_arc_rule_inverse(X, Z, s), i)
        return
    if X is None and over_tone is not None:
        # the tone of the over arc alone fixes what happens to a rotation
        if Y is not None and not Y.is_reflection:
            assign(x.under_out, Y.inverse() if over_tone == R else Y, i)
            return
        if Z is not None and not Z.is_reflection:
            assign(x.under_in, Z.inverse() if over_tone == R else Z, i)
            return
        if Y is not None and Z is not None and Y.is_reflection and Z.is_reflection:
            if over_tone == R:
                k = _halve(Y.k + Z.k, n)
                if k is not None:
                    assign(x.over, DihedralElement(n, 1, k), i)
            else:
                k = _halve(s * (Z.k - Y.k), n)
                if k is not None:
                    assign(x.over, DihedralElement(n, 0, k), i)


# brute-force oracle ----------------------------------------------------------

def _affine_table(n: int) -> np.ndarray:
    """Multiplication table of D_n realised as affine maps v -> s v + t of Z/n.

    Code ``eps * n + k`` is the element ``a^eps b^k``: ``b`` is v -> v + 1,
    ``a`` is v -> -v and products compose right to left.  This route never
    touches ``dihedral.multiply``.
    """
    def to_affine(code):
        eps, k = divmod(code, n)
        return (-1, (-k) % n) if eps else (1, k % n)

    def to_code(s, t):
        return n + ((-t) % n) if s == -1 else t % n

    size = 2 * n
    table = np.zeros((size, size), dtype=np.int64)
    for g in range(size):
        s1, t1 = to_affine(g)
        for h in range(size):
            s2, t2 = to_affine(h)
            table[g, h] = to_code(s1 * s2, s1 * t2 + t1)
    return table


def brute_force_codes(d: Diagram, n: int, cap: int = ORACLE_CAP) -> np.ndarray:
    if n < 2:
        raise ValueError("n must be >= 2")
    space = (2 * n) ** d.arc_count
    if space > cap:
        raise CapacityError(f"(2n)^arcs = {space} exceeds the oracle cap of {cap}")
    xs = d.crossing_arcs
    return _kernels.brute_force(_affine_table(n),
                                [x.over for x in xs], [x.under_in for x in xs],
                                [x.under_out for x in xs], [x.sign for x in xs], d.arc_count)


def brute_force_colorings(d: Diagram, n: int, cap: int = ORACLE_CAP) -> set[tuple[DihedralElement, ...]]:
    """Every map arcs -> D_n satisfying all crossing relations (test oracle)."""
    codes = brute_force_codes(d, n, cap)
    return {tuple(DihedralElement(n, int(c) // n, int(c) % n) for c in row) for row in codes}


def coloring_codes(d: Diagram, colorings: Sequence[Coloring]) -> set[tuple[int, ...]]:
    out = set()
    for c in colorings:
        n = c.modulus
        eps = [1 if c.tones[comp] == R else 0 for comp in d.arc_component]
        out.add(tuple(e * n + k for e, k in zip(eps, c.exponents)))
    return out

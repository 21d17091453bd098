"""Oriented link diagrams in planar-diagram (PD) notation.

A token ``X[a,b,c,d]`` is a crossing whose slots are listed counterclockwise
starting from the incoming under-edge ``a``; ``c`` is the outgoing under-edge
and ``b``, ``d`` carry the over-strand.  The crossing is positive when the
over-strand leaves through ``b``.  ``O[i]`` is a crossing-free circle.

PD labels name *edges* (segments between consecutive crossings).  Coloring
works on *arcs*: maximal runs of edges joined by passing over crossings.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence

ComponentId = int

_TOKEN_RE = re.compile(r"([XO])\[([^\]]*)\]")
_SEPARATORS = re.compile(r"^[\s,;]*$")


class DiagramError(ValueError):
    """Malformed or inconsistent diagram input."""


@dataclass(frozen=True)
class Crossing:
    slots: tuple[int, int, int, int]
    sign: int

    @property
    def under_in(self) -> int:
        return self.slots[0]

    @property
    def under_out(self) -> int:
        return self.slots[2]

    @property
    def over_out(self) -> int:
        return self.slots[1] if self.sign > 0 else self.slots[3]

    @property
    def over_in(self) -> int:
        return self.slots[3] if self.sign > 0 else self.slots[1]

    def __str__(self) -> str:
        return "X[{},{},{},{}]".format(*self.slots)


@dataclass(frozen=True)
class CrossingArcs:
    over: int
    under_in: int
    under_out: int
    sign: int


@dataclass(frozen=True)
class Diagram:
    """Immutable oriented diagram.

    ``components`` lists each component's edge labels in orientation order;
    components are sorted by smallest label and start at it.
    """

    crossings: tuple[Crossing, ...]
    num_edges: int
    components: tuple[tuple[int, ...], ...]
    circles: tuple[int, ...] = ()

    @property
    def num_components(self) -> int:
        return len(self.components)

    @property
    def unknot_components(self) -> int:
        return len(self.circles)

    @cached_property
    def edge_component(self) -> dict[int, int]:
        return {e: i for i, comp in enumerate(self.components) for e in comp}

    @cached_property
    def _arc_data(self):
        parent = {e: e for e in range(1, self.num_edges + 1)}

        def find(e):
            while parent[e] != e:
                parent[e] = parent[parent[e]]
                e = parent[e]
            return e

        for x in self.crossings:
            ra, rb = find(x.slots[1]), find(x.slots[3])
            if ra != rb:
                parent[rb] = ra
        index: dict[int, int] = {}
        groups: list[list[int]] = []
        for comp in self.components:
            for e in comp:
                r = find(e)
                if r not in index:
                    index[r] = len(groups)
                    groups.append([])
                groups[index[r]].append(e)
        arc_of = {e: index[find(e)] for e in parent}
        return tuple(tuple(g) for g in groups), arc_of

    @property
    def arcs(self) -> tuple[tuple[int, ...], ...]:
        """Arcs as edge tuples, numbered by first appearance along the components."""
        return self._arc_data[0]

    @property
    def arc_of_edge(self) -> dict[int, int]:
        return self._arc_data[1]

    @property
    def arc_count(self) -> int:
        return len(self.arcs)

    @cached_property
    def arc_component(self) -> tuple[int, ...]:
        return tuple(self.edge_component[arc[0]] for arc in self.arcs)

    @cached_property
    def crossing_arcs(self) -> tuple[CrossingArcs, ...]:
        a = self.arc_of_edge
        return tuple(CrossingArcs(a[x.slots[1]], a[x.under_in], a[x.under_out], x.sign)
                     for x in self.crossings)

    def component_arcs(self, c: ComponentId) -> list[int]:
        return [i for i, comp in enumerate(self.arc_component) if comp == c]

    def crossing_components(self, i: int) -> tuple[int, int]:
        """(over component, under component) at crossing ``i``."""
        x = self.crossings[i]
        return self.edge_component[x.slots[1]], self.edge_component[x.under_in]

    def to_text(self) -> str:
        tokens = [str(x) for x in self.crossings] + [f"O[{c}]" for c in self.circles]
        return " ".join(tokens)

    def __str__(self) -> str:
        return self.to_text()


# parsing -------------------------------------------------------------------

def parse_link_text(text: str) -> Diagram:
    """Parse PD text with optional ``O[i]`` circle tokens."""
    crossings: list[tuple[int, int, int, int]] = []
    circles: list[int] = []
    pos = 0
    body = text.strip()
    if body.startswith("PD[") and body.endswith("]"):
        body = body[3:-1]
    for m in _TOKEN_RE.finditer(body):
        gap = body[pos:m.start()]
        if not _SEPARATORS.match(gap):
            raise DiagramError(f"malformed input near {gap.strip()!r}")
        pos = m.end()
        try:
            labels = [int(v) for v in m.group(2).split(",")]
        except ValueError:
            raise DiagramError(f"malformed token {m.group(0)!r}") from None
        if m.group(1) == "X":
            if len(labels) != 4:
                raise DiagramError(f"crossing token {m.group(0)!r} needs 4 labels")
            crossings.append(tuple(labels))
        else:
            if len(labels) != 1:
                raise DiagramError(f"circle token {m.group(0)!r} needs 1 label")
            circles.append(labels[0])
    if not _SEPARATORS.match(body[pos:]):
        raise DiagramError(f"malformed input near {body[pos:].strip()!r}")
    return _build(crossings, circles)


def _build(slots_list: Sequence[tuple[int, int, int, int]], circles: Sequence[int]) -> Diagram:
    occurrences: dict[int, list[tuple[int, int]]] = {}
    for ci, slots in enumerate(slots_list):
        for s, e in enumerate(slots):
            occurrences.setdefault(e, []).append((ci, s))
    for e in circles:
        if e in occurrences:
            raise DiagramError(f"circle label {e} also used by a crossing")
    if len(set(circles)) != len(circles):
        raise DiagramError("repeated circle label")
    for e, occ in occurrences.items():
        if len(occ) != 2:
            raise DiagramError(f"edge {e} appears {len(occ)} times (expected 2)")
    labels = set(occurrences) | set(circles)
    n = len(labels)
    if labels != set(range(1, n + 1)):
        missing = sorted(set(range(1, max(labels, default=0) + 1)) - labels)
        bad = sorted(v for v in labels if v < 1)
        raise DiagramError(f"labels must be 1..N; missing {missing}" + (f", invalid {bad}" if bad else ""))

    def walk(start: int, from_occ: tuple[int, int]):
        seq = []
        e, frm = start, from_occ
        while True:
            occ = occurrences[e]
            to = occ[1] if occ[0] == frm else occ[0]
            seq.append((e, frm, to))
            ci, s = to
            s2 = (s + 2) % 4
            e = slots_list[ci][s2]
            frm = (ci, s2)
            if e == start and frm == from_occ:
                return seq
            if len(seq) > 2 * len(occurrences):
                raise DiagramError(f"strand through edge {start} does not close up")

    seen: set[int] = set()
    comps = []
    departures: set[tuple[int, int]] = set()
    for e0 in sorted(occurrences):
        if e0 in seen:
            continue
        seq = walk(e0, occurrences[e0][0])
        forward = any(to[1] == 0 for _, _, to in seq)
        backward = any(to[1] == 2 for _, _, to in seq)
        if forward and backward:
            bad = next(e for e, _, to in seq if to[1] == 2)
            raise DiagramError(f"inconsistent strand orientation through edge {bad}")
        if not forward and not backward:
            backward = _over_only_reversed(seq)
        if backward:
            seq = walk(e0, occurrences[e0][1])
        seen.update(e for e, _, _ in seq)
        departures.update(frm for _, frm, _ in seq)
        comps.append(tuple(e for e, _, _ in seq))
    for c in circles:
        comps.append((c,))
    comps.sort(key=min)
    crossings = tuple(Crossing(tuple(s), 1 if (ci, 1) in departures else -1)
                      for ci, s in enumerate(slots_list))
    return Diagram(crossings, n, tuple(comps), tuple(sorted(circles)))


def _over_only_reversed(seq) -> bool:
    """Orientation rule for a component that never passes under.

    Labels increase along the strand: the lowest edge is followed by its
    smaller neighbour; with only two edges the lowest one ends at the
    earlier-listed crossing.
    """
    if len(seq) >= 3:
        return seq[1][0] > seq[-1][0]
    e, frm, to = seq[0]
    return to[0] > frm[0]


def _assemble(slots_list: Sequence[tuple], successor: dict, circles: Sequence = ()) -> Diagram:
    """Relabel edges canonically and build through the parser.

    ``slots_list`` uses arbitrary sortable edge ids with the PD slot layout;
    ``successor`` maps each edge to the next one along its component.
    Components are ordered by smallest id and relabelled consecutively.
    """
    comps = []
    seen = set()
    for e0 in sorted(successor):
        if e0 in seen:
            continue
        cyc = [e0]
        while successor[cyc[-1]] != e0:
            cyc.append(successor[cyc[-1]])
        seen.update(cyc)
        comps.append(cyc)
    under_edges = {slots[0] for slots in slots_list} | {slots[2] for slots in slots_list}
    for cyc in comps:
        if len(cyc) == 2 and not under_edges.intersection(cyc):
            # start so the first edge ends at the earlier-listed crossing
            if _edge_end(slots_list, cyc[1], cyc[0]) < _edge_end(slots_list, cyc[0], cyc[1]):
                cyc.reverse()
    mapping = {}
    items = [(min(c), "c", c) for c in comps] + [(c, "o", [c]) for c in circles]
    items.sort(key=lambda t: t[0])
    for _, _, cyc in items:
        for e in cyc:
            mapping[e] = len(mapping) + 1
    new_slots = [tuple(mapping[e] for e in slots) for slots in slots_list]
    return _build(new_slots, [mapping[c] for c in circles])


def _edge_end(slots_list, e, nxt) -> int:
    """Index of the crossing where edge ``e`` hands over to ``nxt``."""
    for ci, slots in enumerate(slots_list):
        for s in range(4):
            if slots[s] == e and slots[(s + 2) % 4] == nxt:
                return ci
    raise DiagramError(f"edges {e} and {nxt} are not consecutive")


def _successor_map(d: Diagram) -> dict[int, int]:
    succ = {}
    for comp in d.components:
        if len(comp) == 1 and comp[0] in d.circles:
            continue
        for i, e in enumerate(comp):
            succ[e] = comp[(i + 1) % len(comp)]
    return succ


# transforms ----------------------------------------------------------------

def sublink(d: Diagram, keep: Iterable[ComponentId]) -> Diagram:
    keep = set(keep)
    if not keep:
        raise ValueError("keep must be nonempty")
    if not keep <= set(range(d.num_components)):
        raise ValueError(f"unknown components {sorted(keep - set(range(d.num_components)))}")
    comp_of = d.edge_component
    kept = [x for x in d.crossings
            if comp_of[x.slots[0]] in keep and comp_of[x.slots[1]] in keep]
    # merge edges across deleted crossings: group id = first edge after a kept crossing
    starts = {x.under_out for x in kept} | {x.over_out for x in kept}
    group: dict[int, int] = {}
    circles = []
    succ = {}
    for ci, comp in enumerate(d.components):
        if ci not in keep:
            continue
        if comp[0] in d.circles:
            circles.append(comp[0])
            continue
        first = next((i for i, e in enumerate(comp) if e in starts), None)
        if first is None:
            circles.append(min(comp))
            continue
        order = comp[first:] + comp[:first]
        gid = None
        gids = []
        for e in order:
            if e in starts:
                gid = e
                gids.append(gid)
            group[e] = gid
        for i, g in enumerate(gids):
            succ[g] = gids[(i + 1) % len(gids)]
    # group ids: use smallest original edge in the group so ordering follows the original labels
    canon: dict[int, int] = {}
    for e, g in group.items():
        canon[g] = min(canon.get(g, e), e)
    slots_list = [tuple(canon[group[e]] for e in x.slots) for x in kept]
    succ = {canon[g]: canon[h] for g, h in succ.items()}
    return _assemble(slots_list, succ, circles)


def reverse_component_orientation(d: Diagram, c: ComponentId) -> Diagram:
    if not 0 <= c < d.num_components:
        raise ValueError(f"no component {c}")
    comp_of = d.edge_component
    slots_list = []
    for x in d.crossings:
        s = x.slots
        slots_list.append((s[2], s[3], s[0], s[1]) if comp_of[s[0]] == c else s)
    succ = _successor_map(d)
    target = set(d.components[c])
    succ = {(b if a in target else a): (a if a in target else b) for a, b in succ.items()}
    return _assemble(slots_list, succ, d.circles)


# generators ----------------------------------------------------------------

class _Builder:
    """Crossings with ports 0..3 counterclockwise (SW, SE, NE, NW).

    The strand through a crossing joins port p to p+2; ``over_axis`` 0 puts
    the SW-NE strand on top, 1 the SE-NW strand.
    """

    def __init__(self):
        self.axes: list[int] = []
        self.adj: dict[tuple[int, int], tuple[int, int]] = {}
        self.circles = 0

    def crossing(self, over_axis: int) -> int:
        self.axes.append(over_axis)
        return len(self.axes) - 1

    def column(self, count: int, over_axis: int) -> list[int]:
        ids = [self.crossing(over_axis) for _ in range(count)]
        for lo, hi in zip(ids, ids[1:]):
            self.connect((lo, 3), (hi, 0))
            self.connect((lo, 2), (hi, 1))
        return ids

    def connect(self, p, q):
        if p in self.adj or q in self.adj:
            raise ValueError(f"port already connected: {p if p in self.adj else q}")
        self.adj[p] = q
        self.adj[q] = p

    def build(self) -> Diagram:
        ports = [(c, p) for c in range(len(self.axes)) for p in range(4)]
        missing = [p for p in ports if p not in self.adj]
        if missing:
            raise ValueError(f"unconnected ports {missing}")
        visited: set = set()
        arrivals_of: dict = {}
        comps = []
        for start in ports:
            if start in visited:
                continue
            seq = []
            cur = start
            while True:
                seq.append(cur)
                visited.add(cur)
                c, p = cur
                exit_port = (c, (p + 2) % 4)
                visited.add(exit_port)
                cur = self.adj[exit_port]
                if cur == start:
                    break
            comps.append(seq)
        label = {}
        next_id = 1
        for seq in comps:
            for arr in seq:
                label[arr] = next_id
                next_id += 1
        for seq in comps:
            for i, arr in enumerate(seq):
                nxt = seq[(i + 1) % len(seq)]
                c, p = arr
                label[(c, (p + 2) % 4)] = label[nxt]
                arrivals_of[arr] = True
        slots_list = []
        for c, axis in enumerate(self.axes):
            under = (1, 3) if axis == 0 else (0, 2)
            u = under[0] if (c, under[0]) in arrivals_of else under[1]
            slots_list.append(tuple(label[(c, (u + k) % 4)] for k in range(4)))
        succ = {}
        for seq in comps:
            for i, arr in enumerate(seq):
                succ[label[arr]] = label[seq[(i + 1) % len(seq)]]
        circles = list(range(next_id, next_id + self.circles))
        return _assemble(slots_list, succ, circles)


def _column_ends(ids: list[int]):
    """(bottom-left, bottom-right, top-left, top-right) ports of a twist column."""
    return (ids[0], 0), (ids[0], 1), (ids[-1], 3), (ids[-1], 2)


def generate_torus_two_strand(q: int) -> Diagram:
    """Closed 2-braid ``sigma_1^q``; all crossings share one sign."""
    if q < 1:
        raise ValueError("q must be >= 1")
    b = _Builder()
    ids = b.column(q, 0)
    bl, br, tl, tr = _column_ends(ids)
    b.connect(tl, bl)
    b.connect(tr, br)
    return b.build()


def generate_pretzel(twists: Sequence[int]) -> Diagram:
    """Pretzel diagram with one vertical twist column per entry."""
    twists = [int(t) for t in twists]
    if not twists:
        raise ValueError("pretzel needs at least one twist column")
    if any(t == 0 for t in twists):
        raise ValueError("twist counts must be nonzero")
    b = _Builder()
    cols = [_column_ends(b.column(abs(t), 0 if t > 0 else 1)) for t in twists]
    k = len(cols)
    if k == 1:
        bl, br, tl, tr = cols[0]
        b.connect(tl, tr)
        b.connect(bl, br)
        return b.build()
    for i in range(k - 1):
        b.connect(cols[i][3], cols[i + 1][2])
        b.connect(cols[i][1], cols[i + 1][0])
    b.connect(cols[0][2], cols[-1][3])
    b.connect(cols[0][0], cols[-1][1])
    return b.build()


def braid_closure(word: Sequence[int], strands: int) -> Diagram:
    """Closure of a braid word (``i`` for sigma_i, ``-i`` for its inverse)."""
    if strands < 1 or any(not 1 <= abs(g) < strands for g in word):
        raise ValueError("braid generators must lie in 1..strands-1")
    b = _Builder()
    # open ends of each strand position: port where the strand leaves upward
    bottoms: list = [None] * strands
    tops: list = [None] * strands
    for g in word:
        i = abs(g) - 1
        c = b.crossing(0 if g > 0 else 1)
        for pos, port_in in ((i, 0), (i + 1, 1)):
            if tops[pos] is None:
                bottoms[pos] = (c, port_in)
            else:
                b.connect(tops[pos], (c, port_in))
        tops[i], tops[i + 1] = (c, 3), (c, 2)
    for pos in range(strands):
        if tops[pos] is None:
            b.circles += 1
        else:
            b.connect(tops[pos], bottoms[pos])
    return b.build()


@dataclass(frozen=True)
class StandardForm:
    """Diagram with a round component meeting the rest only in full twists.

    ``alpha`` is an arc of the round component and ``betas`` holds one arc
    per other component; arcs are indices into ``diagram.arcs``.
    """

    diagram: Diagram
    base_component: int
    alpha: int
    betas: tuple[int, ...]


def generate_standard_form(twist_counts: Sequence[int], closure: Sequence[int] | None = None) -> StandardForm:
    """Round unknot whose right side runs through a vertical stack of boxes.

    Box ``j`` holds ``twist_counts[j]`` signed full twists with a strand of
    closure component ``closure[j]`` (default: all boxes on component 0).
    Each closure component is a loop through a contiguous block of boxes,
    so its linking number with the round component has the parity of its
    total twist count, which must be even.
    """
    twist_counts = [int(t) for t in twist_counts]
    if closure is None:
        closure = [0] * len(twist_counts)
    closure = [int(c) for c in closure]
    if len(closure) != len(twist_counts):
        raise ValueError("closure needs one component index per box")
    if any(t == 0 for t in twist_counts):
        raise ValueError("each box needs a nonzero number of full twists")
    blocks: list[tuple[int, int, int]] = []  # (component, first box, last box)
    for j, c in enumerate(closure):
        if blocks and blocks[-1][0] == c:
            blocks[-1] = (c, blocks[-1][1], j)
        else:
            if any(b[0] == c for b in blocks):
                raise ValueError(f"boxes of closure component {c} must be contiguous")
            blocks.append((c, j, j))
    if [b[0] for b in blocks] != list(range(len(blocks))):
        raise ValueError("closure components must be numbered 0, 1, ... in box order")
    for c, first, last in blocks:
        passes = sum(abs(t) for t in twist_counts[first:last + 1])
        if passes % 2:
            raise ValueError(
                f"closure component {c} passes {passes} full twists; the linking number must be even")
    b = _Builder()
    if not twist_counts:
        b.circles = 1
        d = b.build()
        return StandardForm(d, 0, 0, ())
    box_ids = [b.column(2 * abs(t), 0 if t > 0 else 1) for t in twist_counts]
    for lower, upper in zip(box_ids, box_ids[1:]):
        b.connect((lower[-1], 3), (upper[0], 0))  # round component continues
    for c, first, last in blocks:
        for j in range(first, last):
            b.connect((box_ids[j][-1], 2), (box_ids[j + 1][0], 1))
        b.connect((box_ids[last][-1], 2), (box_ids[first][0], 1))  # loop closes round the right
    b.connect((box_ids[-1][-1], 3), (box_ids[0][0], 0))  # round component closes round the left
    d = b.build()
    # the builder labels the round component first: it starts at the bottom-left port
    base = d.edge_component[1]
    alpha = d.arc_of_edge[1]
    betas = tuple(d.component_arcs(ci)[0] for ci in range(d.num_components) if ci != base)
    return StandardForm(d, base, alpha, betas)


# fixtures ------------------------------------------------------------------

@dataclass(frozen=True)
class Fixture:
    name: str
    diagram: Diagram
    alternative: Diagram | None = None
    coloring: str | None = None
    line: int = 0


def parse_fixture_line(line: str, lineno: int = 0) -> Fixture | None:
    """``name<TAB>pd<TAB>pd_alt?<TAB>coloring?``; blank and ``#`` lines give None."""
    stripped = line.rstrip("\n")
    if not stripped.strip() or stripped.lstrip().startswith("#"):
        return None
    fields = stripped.split("\t")
    if len(fields) < 2 or len(fields) > 4:
        raise DiagramError(f"line {lineno}: expected 2-4 tab-separated fields, got {len(fields)}")
    name = fields[0].strip()
    try:
        d = parse_link_text(fields[1])
        alt = parse_link_text(fields[2]) if len(fields) > 2 and fields[2].strip() not in ("", "-") else None
    except DiagramError as exc:
        raise DiagramError(f"line {lineno} ({name}): {exc}") from None
    coloring = fields[3].strip() if len(fields) > 3 and fields[3].strip() else None
    return Fixture(name, d, alt, coloring, lineno)


def read_fixtures(path: str | Path) -> list[Fixture]:
    out = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            fx = parse_fixture_line(line, lineno)
            if fx is not None:
                out.append(fx)
    return out


def format_fixture(name: str, d: Diagram, alt: Diagram | None = None, coloring: str | None = None) -> str:
    fields = [name, d.to_text()]
    if alt is not None or coloring is not None:
        fields.append(alt.to_text() if alt is not None else "-")
    if coloring is not None:
        fields.append(coloring)
    return "\t".join(fields)

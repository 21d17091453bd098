"""Arithmetic in the dihedral groups D_n and D_infinity.

Elements are written ``a^eps b^k``.  ``eps = 1`` gives the reflection
``a_k = a b^k``; ``eps = 0`` gives the rotation ``b_k`` (``b_0`` is the
identity).  The modulus ``0`` stands for D_infinity, because Z/0Z = Z and
``gcd(0, x) = x`` makes every formula below uniform.
"""
from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from typing import Iterable

INF = 0

_ELEMENT_RE = re.compile(r"^\s*(?:(e)|([ab])\s*(-?\d+))\s*$")


def reduce_exponent(k: int, modulus: int) -> int:
    return k % modulus if modulus else k


def format_modulus(modulus: int) -> str:
    return "inf" if modulus == INF else str(modulus)


def parse_modulus(text: str) -> int:
    text = text.strip().lower()
    if text in ("inf", "infinity", "oo", "∞"):
        return INF
    n = int(text)
    if n < 2:
        raise ValueError(f"modulus must be >= 2 or 'inf', got {text!r}")
    return n


@dataclass(frozen=True, order=True)
class DihedralElement:
    modulus: int
    epsilon: int
    k: int

    def __post_init__(self):
        if self.modulus < 0 or self.modulus == 1:
            raise ValueError(f"bad modulus {self.modulus}")
        if self.epsilon not in (0, 1):
            raise ValueError(f"epsilon must be 0 or 1, got {self.epsilon}")
        object.__setattr__(self, "k", reduce_exponent(self.k, self.modulus))

    @classmethod
    def reflection(cls, k: int, modulus: int) -> "DihedralElement":
        return cls(modulus, 1, k)

    @classmethod
    def rotation(cls, k: int, modulus: int) -> "DihedralElement":
        return cls(modulus, 0, k)

    @classmethod
    def identity(cls, modulus: int) -> "DihedralElement":
        return cls(modulus, 0, 0)

    @classmethod
    def parse(cls, text: str, modulus: int) -> "DihedralElement":
        """Parse ``"e"``, ``"a3"`` or ``"b5"`` (negative exponents allowed)."""
        m = _ELEMENT_RE.match(text)
        if not m:
            raise ValueError(f"cannot parse dihedral element {text!r}")
        if m.group(1):
            return cls.identity(modulus)
        return cls(modulus, 1 if m.group(2) == "a" else 0, int(m.group(3)))

    @property
    def is_reflection(self) -> bool:
        return self.epsilon == 1

    @property
    def is_identity(self) -> bool:
        return self.epsilon == 0 and self.k == 0

    def inverse(self) -> "DihedralElement":
        if self.epsilon:
            return self
        return DihedralElement(self.modulus, 0, -self.k)

    def __mul__(self, other: "DihedralElement") -> "DihedralElement":
        return multiply(self, other)

    def __pow__(self, power: int) -> "DihedralElement":
        if self.epsilon:
            return self if power % 2 else DihedralElement.identity(self.modulus)
        return DihedralElement(self.modulus, 0, self.k * power)

    def __str__(self) -> str:
        if self.is_identity:
            return "e"
        return f"{'a' if self.epsilon else 'b'}{self.k}"

    def __repr__(self) -> str:
        return f"<{self} in D_{format_modulus(self.modulus)}>"


def _same_modulus(*elements: DihedralElement) -> int:
    moduli = {g.modulus for g in elements}
    if len(moduli) != 1:
        raise ValueError(f"modulus mismatch: {sorted(moduli)}")
    return moduli.pop()


def multiply(g: DihedralElement, h: DihedralElement) -> DihedralElement:
    """Product ``g h`` using ``b a = a b^-1``."""
    n = _same_modulus(g, h)
    sign = -1 if h.epsilon else 1
    return DihedralElement(n, (g.epsilon + h.epsilon) % 2, h.k + sign * g.k)


def under_arc_rule(over: DihedralElement, under_in: DihedralElement, sign: int) -> DihedralElement:
    """Color of the outgoing under arc.

    A positive crossing imposes ``x z = y x`` and a negative one ``z x = x y``;
    both are ``z = x^-s y x^s``.
    """
    _same_modulus(over, under_in)
    if sign not in (1, -1):
        raise ValueError(f"crossing sign must be +1 or -1, got {sign}")
    return (over ** -sign) * under_in * (over ** sign)


def under_arc_rule_inverse(over: DihedralElement, under_out: DihedralElement, sign: int) -> DihedralElement:
    """Recover the incoming under color from the outgoing one."""
    return under_arc_rule(over, under_out, -sign)


@dataclass(frozen=True)
class SubgroupDescriptor:
    """``<b^d>`` (cyclic) or ``<b^d, a b^t>`` (dihedral)."""

    kind: str
    d: int
    t: int | None = None
    modulus: int = INF

    def is_full(self) -> bool:
        return self.kind == "dihedral" and self.d == 1

    def order(self) -> int | None:
        if self.modulus == INF:
            return 1 if self.kind == "trivial" else None
        if self.kind == "trivial":
            return 1
        rotations = self.modulus // self.d
        return rotations if self.kind == "cyclic" else 2 * rotations


def subgroup_generated(gens: Iterable[DihedralElement], modulus: int) -> SubgroupDescriptor:
    gens = list(gens)
    if any(g.modulus != modulus for g in gens):
        raise ValueError("all generators must share the modulus")
    d = modulus
    reflections = [g.k for g in gens if g.epsilon]
    for g in gens:
        if not g.epsilon:
            d = math.gcd(d, g.k)
    for k in reflections[1:]:
        d = math.gcd(d, k - reflections[0])
    if reflections:
        t = reflections[0] % d if d else reflections[0]
        return SubgroupDescriptor("dihedral", d, t, modulus)
    if d == modulus:
        return SubgroupDescriptor("trivial", modulus, None, modulus)
    return SubgroupDescriptor("cyclic", d, None, modulus)


def generates_full(gens: Iterable[DihedralElement], modulus: int) -> bool:
    return subgroup_generated(gens, modulus).is_full()


def elements(modulus: int) -> list[DihedralElement]:
    if modulus == INF:
        raise ValueError("D_infinity cannot be listed")
    return [DihedralElement(modulus, eps, k) for eps, k in itertools.product((0, 1), range(modulus))]


def closure(gens: Iterable[DihedralElement], modulus: int) -> frozenset[DihedralElement]:
    """Subgroup generated by ``gens``, by saturation (finite modulus only)."""
    if modulus == INF:
        raise ValueError("closure needs a finite modulus")
    found = {DihedralElement.identity(modulus)}
    frontier = list(found)
    gens = list(gens)
    while frontier:
        nxt = []
        for g in frontier:
            for h in gens:
                p = g * h
                if p not in found:
                    found.add(p)
                    nxt.append(p)
        frontier = nxt
    return frozenset(found)

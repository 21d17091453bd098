"""Linking numbers and the link determinant."""
from __future__ import annotations

import math
from dataclasses import dataclass

from .diagram import Diagram, sublink
from .zlinalg import IntMatrix, smith_normal_form


def linking_matrix(d: Diagram) -> list[list[int]]:
    """Symmetric matrix of pairwise linking numbers (zero diagonal)."""
    c = d.num_components
    twice = [[0] * c for _ in range(c)]
    for i, x in enumerate(d.crossings):
        over, under = d.crossing_components(i)
        if over != under:
            twice[over][under] += x.sign
            twice[under][over] += x.sign
    for i in range(c):
        for j in range(c):
            if twice[i][j] % 2:
                raise ValueError(f"odd crossing count between components {i} and {j}")
    return [[v // 2 for v in row] for row in twice]


def linking_number(d: Diagram, i: int = 0, j: int = 1) -> int:
    return linking_matrix(d)[i][j]


def total_linking(d: Diagram, component: int, others) -> int:
    """lk(component, union of others)."""
    m = linking_matrix(d)
    return sum(m[component][j] for j in others if j != component)


def coloring_matrix(d: Diagram) -> IntMatrix:
    """Fox relation rows ``2 x - y - z`` (crossings x arcs)."""
    rows = []
    for x in d.crossing_arcs:
        row = [0] * d.arc_count
        row[x.over] += 2
        row[x.under_in] -= 1
        row[x.under_out] -= 1
        rows.append(row)
    return rows


@dataclass(frozen=True)
class DeterminantResult:
    value: int
    free_rank: int
    divisors: tuple[int, ...]

    def fox_count(self, n: int) -> int:
        """Number of Fox n-colorings implied by the Smith form."""
        return n ** self.free_rank * math.prod(math.gcd(dv, n) for dv in self.divisors)


def determinant(d: Diagram) -> DeterminantResult:
    snf = smith_normal_form(coloring_matrix(d), d.arc_count)
    free_rank = d.arc_count - snf.rank
    value = 0 if free_rank >= 2 else math.prod(snf.divisors)
    return DeterminantResult(value, free_rank, snf.divisors)


def component_determinants(d: Diagram) -> list[int]:
    return [determinant(sublink(d, {i})).value for i in range(d.num_components)]

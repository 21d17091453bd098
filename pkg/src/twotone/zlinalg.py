"""Exact linear algebra over Z and Z/n.

Matrices are lists of rows of Python ints, so nothing overflows.  The Smith
form carries unimodular transforms ``U`` and ``V`` with ``U @ M @ V = D``;
solutions of ``M x = 0`` (mod n, or over Z) are read off from the columns
of ``V``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import _kernels

IntMatrix = list[list[int]]

DEFAULT_CAP = 10**6


class CapacityError(RuntimeError):
    """An enumeration would exceed the configured cap."""


def as_matrix(rows: Sequence[Sequence[int]], cols: int | None = None) -> IntMatrix:
    m = [[int(v) for v in row] for row in rows]
    if cols is None:
        cols = len(m[0]) if m else 0
    if any(len(row) != cols for row in m):
        raise ValueError("ragged matrix")
    return m


def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: IntMatrix, b: IntMatrix, inner: int | None = None) -> IntMatrix:
    if inner is None:
        inner = len(b)
    cols = len(b[0]) if b else 0
    return [[sum(row[t] * b[t][j] for t in range(inner)) for j in range(cols)] for row in a]


def matvec(a: IntMatrix, x: Sequence[int]) -> list[int]:
    return [sum(c * v for c, v in zip(row, x)) for row in a]


@dataclass(frozen=True)
class SmithForm:
    divisors: tuple[int, ...]
    rank: int
    rows: int
    cols: int
    U: IntMatrix = field(repr=False)
    V: IntMatrix = field(repr=False)

    def diagonal(self) -> IntMatrix:
        d = [[0] * self.cols for _ in range(self.rows)]
        for i, v in enumerate(self.divisors):
            d[i][i] = v
        return d


def smith_normal_form(m: Sequence[Sequence[int]], cols: int | None = None) -> SmithForm:
    """Smith normal form with transforms; pivots on the smallest |entry|."""
    a = as_matrix(m, cols)
    rows = len(a)
    ncols = cols if cols is not None else (len(a[0]) if a else 0)
    U = identity(rows)
    V = identity(ncols)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, q):  # row dst -= q * row src
        if q:
            a[dst] = [x - q * y for x, y in zip(a[dst], a[src])]
            U[dst] = [x - q * y for x, y in zip(U[dst], U[src])]

    def add_col(src, dst, q):  # col dst -= q * col src
        if q:
            for row in a:
                row[dst] -= q * row[src]
            for row in V:
                row[dst] -= q * row[src]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        U[i] = [-x for x in U[i]]

    divisors: list[int] = []
    t = 0
    while t < min(rows, ncols):
        best = None
        for i in range(t, rows):
            for j in range(t, ncols):
                v = a[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, rows):
                q = a[i][t] // p
                add_row(t, i, q)
                if a[i][t]:
                    dirty = True
            for j in range(t + 1, ncols):
                q = a[t][j] // p
                add_col(t, j, q)
                if a[t][j]:
                    dirty = True
            if not dirty:
                # pivot must divide the rest of the block
                bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, ncols)
                            if a[i][j] % p), None)
                if bad is None:
                    break
                add_row(bad[0], t, -1)
                continue
            # move the smallest remaining entry of row/col t to the pivot
            cands = [(abs(a[i][t]), i, t) for i in range(t, rows) if a[i][t]]
            cands += [(abs(a[t][j]), t, j) for j in range(t, ncols) if a[t][j]]
            _, i, j = min(cands)
            swap_rows(t, i)
            swap_cols(t, j)
        if a[t][t] < 0:
            negate_row(t)
        divisors.append(a[t][t])
        t += 1
    return SmithForm(tuple(divisors), len(divisors), rows, ncols, U, V)


@dataclass(frozen=True)
class SolutionModule:
    """Solutions of ``M x = 0 (mod n)`` as an internal direct sum.

    Every solution is ``sum c_i g_i`` with ``0 <= c_i < orders[i]``, each
    solution appearing exactly once.
    """

    modulus: int
    cols: int
    generators: tuple[tuple[int, ...], ...]
    orders: tuple[int, ...]

    @property
    def count(self) -> int:
        return math.prod(self.orders)

    def generator_array(self) -> np.ndarray:
        if not self.generators:
            return np.zeros((0, self.cols), dtype=np.int64)
        return np.array(self.generators, dtype=np.int64).reshape(len(self.generators), self.cols)

    def order_array(self) -> np.ndarray:
        return np.array(self.orders, dtype=np.int64)

    def combine(self, coefficients: Sequence[int]) -> tuple[int, ...]:
        x = [0] * self.cols
        for c, g in zip(coefficients, self.generators):
            for j, v in enumerate(g):
                x[j] += c * v
        return tuple(v % self.modulus for v in x)

    def coefficients(self, index: int) -> list[int]:
        """Odometer coefficients for the ``index``-th solution (last generator fastest)."""
        coeffs = [0] * len(self.orders)
        for i in range(len(self.orders) - 1, -1, -1):
            index, coeffs[i] = divmod(index, self.orders[i])
        return coeffs

    def solution(self, index: int) -> tuple[int, ...]:
        return self.combine(self.coefficients(index))

    def enumerate(self, cap: int = DEFAULT_CAP) -> np.ndarray:
        if self.count > cap:
            raise CapacityError(f"{self.count} solutions exceed the cap of {cap}")
        return _kernels.span_mod_n(self.generator_array(), self.order_array(), self.modulus)


def kernel_mod_n(m: Sequence[Sequence[int]], n: int, cols: int | None = None) -> SolutionModule:
    if n < 2:
        raise ValueError(f"modulus must be >= 2, got {n}")
    snf = smith_normal_form(m, cols)
    gens, orders = [], []
    for i in range(snf.cols):
        column = [snf.V[r][i] for r in range(snf.cols)]
        if i < snf.rank:
            g = math.gcd(snf.divisors[i], n)
            scale = n // g
        else:
            g, scale = n, 1
        if g == 1:
            continue
        gens.append(tuple((scale * v) % n for v in column))
        orders.append(g)
    return SolutionModule(n, snf.cols, tuple(gens), tuple(orders))


def count_mod_n(m: Sequence[Sequence[int]], n: int, cols: int | None = None) -> int:
    snf = smith_normal_form(m, cols)
    return n ** (snf.cols - snf.rank) * math.prod(math.gcd(d, n) for d in snf.divisors)


def kernel_integer(m: Sequence[Sequence[int]], cols: int | None = None) -> list[tuple[int, ...]]:
    """Basis of ``{x in Z^cols : M x = 0}`` in Hermite form; empty iff the kernel is trivial."""
    snf = smith_normal_form(m, cols)
    basis = []
    for i in range(snf.rank, snf.cols):
        v = [snf.V[r][i] for r in range(snf.cols)]
        basis.append(tuple(v))
    return hermite_reduce(basis)


def hermite_reduce(vectors: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    """Echelon (Hermite) basis of the lattice spanned by ``vectors``; canonical and small."""
    rows = [list(v) for v in vectors]
    if not rows:
        return []
    r = 0
    for c in range(len(rows[0])):
        if r == len(rows):
            break
        if not any(rows[i][c] for i in range(r, len(rows))):
            continue
        while True:
            i = min((i for i in range(r, len(rows)) if rows[i][c]), key=lambda i: abs(rows[i][c]))
            rows[r], rows[i] = rows[i], rows[r]
            done = True
            for i in range(r + 1, len(rows)):
                q = rows[i][c] // rows[r][c]
                if q:
                    rows[i] = [x - q * y for x, y in zip(rows[i], rows[r])]
                done = done and not rows[i][c]
            if done:
                break
        if rows[r][c] < 0:
            rows[r] = [-x for x in rows[r]]
        for i in range(r):
            q = rows[i][c] // rows[r][c]
            if q:
                rows[i] = [x - q * y for x, y in zip(rows[i], rows[r])]
        r += 1
    return [tuple(v) for v in rows[:r]]


def rank_over_q(m: Sequence[Sequence[int]], cols: int | None = None) -> int:
    return smith_normal_form(m, cols).rank

"""Hot enumeration loops, compiled with numba when available.

Each kernel has an ``_nb`` (numba ``@njit``) and a ``_np`` (vectorised numpy)
implementation with identical results, including ordering.  Setting
``TWOTONE_DISABLE_NUMBA=1`` in the environment selects the numpy path; so
does a missing numba install.

Solution enumeration uses odometer order: the last generator moves fastest.
Dihedral elements in the oracle are coded as ``eps * n + k``.
"""
from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit
except ImportError:  # pragma: no cover - numba is a declared dependency
    njit = None

USE_NUMBA = njit is not None and os.environ.get("TWOTONE_DISABLE_NUMBA", "") not in ("1", "true", "yes")
BACKEND = "numba" if USE_NUMBA else "numpy"


def _identity_decorator(*args, **kwargs):
    if args and callable(args[0]):
        return args[0]
    return lambda f: f


_jit = njit(cache=True) if njit is not None else _identity_decorator


# span of a solution module -------------------------------------------------

def span_mod_n_np(gens, orders, n):
    cols = gens.shape[1]
    out = np.zeros((1, cols), dtype=np.int64)
    for g, order in zip(gens, orders):
        steps = (np.arange(order, dtype=np.int64)[:, None] * g[None, :]) % n
        out = (out[:, None, :] + steps[None, :, :]) % n
        out = out.reshape(-1, cols)
    return out


@_jit
def _span_mod_n_nb(gens, orders, n):
    ngen, cols = gens.shape
    total = 1
    for i in range(ngen):
        total *= orders[i]
    out = np.zeros((total, cols), dtype=np.int64)
    coeff = np.zeros(ngen, dtype=np.int64)
    x = np.zeros(cols, dtype=np.int64)
    for row in range(total):
        for j in range(cols):
            out[row, j] = x[j]
        # odometer increment, last generator fastest
        i = ngen - 1
        while i >= 0:
            coeff[i] += 1
            for j in range(cols):
                x[j] = (x[j] + gens[i, j]) % n
            if coeff[i] < orders[i]:
                break
            coeff[i] = 0  # x already wrapped: order * g == 0 mod n
            i -= 1
    return out


def span_mod_n(gens, orders, n):
    gens = np.ascontiguousarray(gens, dtype=np.int64)
    orders = np.ascontiguousarray(orders, dtype=np.int64)
    if USE_NUMBA:
        return _span_mod_n_nb(gens, orders, n)
    return span_mod_n_np(gens, orders, n)


# searches over a solution module -------------------------------------------

def generating_rows(solutions, n, tmask, rmask):
    """Rows whose decoded colors generate all of D_n (needs a reflection-toned arc)."""
    if not rmask.any():
        return np.zeros(len(solutions), dtype=bool)
    r0 = int(np.flatnonzero(rmask)[0])
    forms = np.concatenate(
        [solutions[:, tmask], solutions[:, rmask] - solutions[:, [r0]]], axis=1)
    g = np.gcd.reduce(np.concatenate([np.full((len(solutions), 1), n, dtype=np.int64), forms], axis=1),
                      axis=1)
    return g == 1


def first_all_nonzero_np(gens, orders, n, mask):
    sols = span_mod_n_np(gens, orders, n)
    hits = np.flatnonzero(np.all(sols[:, mask] % n != 0, axis=1))
    return int(hits[0]) if len(hits) else -1


def first_generating_np(gens, orders, n, tmask, rmask):
    sols = span_mod_n_np(gens, orders, n)
    hits = np.flatnonzero(generating_rows(sols, n, tmask, rmask))
    return int(hits[0]) if len(hits) else -1


@_jit
def _gcd(a, b):
    a = abs(a)
    b = abs(b)
    while b:
        a, b = b, a % b
    return a


@_jit
def _odometer_search_nb(gens, orders, n, tmask, rmask, mode):
    # mode 0: all tmask coords nonzero; mode 1: colors generate D_n
    ngen, cols = gens.shape
    total = 1
    for i in range(ngen):
        total *= orders[i]
    coeff = np.zeros(ngen, dtype=np.int64)
    x = np.zeros(cols, dtype=np.int64)
    r0 = -1
    for j in range(cols):
        if rmask[j]:
            r0 = j
            break
    if mode == 1 and r0 < 0:
        return -1
    for row in range(total):
        if mode == 0:
            ok = True
            for j in range(cols):
                if tmask[j] and x[j] == 0:
                    ok = False
                    break
            if ok:
                return row
        else:
            g = n
            for j in range(cols):
                if tmask[j]:
                    g = _gcd(g, x[j])
                elif rmask[j]:
                    g = _gcd(g, x[j] - x[r0])
                if g == 1:
                    break
            if g == 1:
                return row
        i = ngen - 1
        while i >= 0:
            coeff[i] += 1
            for j in range(cols):
                x[j] = (x[j] + gens[i, j]) % n
            if coeff[i] < orders[i]:
                break
            coeff[i] = 0
            i -= 1
    return -1


def _prep(gens, orders, *masks):
    return (np.ascontiguousarray(gens, dtype=np.int64), np.ascontiguousarray(orders, dtype=np.int64),
            *(np.ascontiguousarray(m, dtype=np.bool_) for m in masks))


def first_all_nonzero(gens, orders, n, mask):
    gens, orders, mask = _prep(gens, orders, mask)
    if USE_NUMBA:
        return int(_odometer_search_nb(gens, orders, n, mask, np.zeros_like(mask), 0))
    return first_all_nonzero_np(gens, orders, n, mask)


def first_generating(gens, orders, n, tmask, rmask):
    gens, orders, tmask, rmask = _prep(gens, orders, tmask, rmask)
    if USE_NUMBA:
        return int(_odometer_search_nb(gens, orders, n, tmask, rmask, 1))
    return first_generating_np(gens, orders, n, tmask, rmask)


# brute-force oracle ----------------------------------------------------------

def _relation_holds(table, x, y, z, sign):
    lhs = np.where(sign > 0, table[x, z], table[z, x])
    rhs = np.where(sign > 0, table[y, x], table[x, y])
    return lhs == rhs


def brute_force_np(table, over, under_in, under_out, sign, arcs):
    """All arc colorings satisfying every crossing relation, in lexicographic order."""
    size = table.shape[0]
    last = np.maximum(np.maximum(over, under_in), under_out)
    rows = np.zeros((1, 0), dtype=np.int64)
    values = np.arange(size, dtype=np.int64)
    for a in range(arcs):
        k = len(rows)
        rows = np.concatenate([np.repeat(rows, size, axis=0), np.tile(values, k)[:, None]], axis=1)
        for c in np.flatnonzero(last == a):
            keep = _relation_holds(table, rows[:, over[c]], rows[:, under_in[c]], rows[:, under_out[c]],
                                   sign[c])
            rows = rows[keep]
    return rows


@_jit
def _brute_force_pass_nb(table, over, under_in, under_out, sign, arcs, ptr, idx, out, fill):
    size = table.shape[0]
    assign = np.zeros(arcs, dtype=np.int64)
    count = 0
    if arcs == 0:
        return 1
    a = 0
    assign[0] = -1
    while a >= 0:
        assign[a] += 1
        if assign[a] >= size:
            a -= 1
            continue
        ok = True
        for t in range(ptr[a], ptr[a + 1]):
            c = idx[t]
            x = assign[over[c]]
            y = assign[under_in[c]]
            z = assign[under_out[c]]
            if sign[c] > 0:
                ok = table[x, z] == table[y, x]
            else:
                ok = table[z, x] == table[x, y]
            if not ok:
                break
        if not ok:
            continue
        if a == arcs - 1:
            if fill:
                for j in range(arcs):
                    out[count, j] = assign[j]
            count += 1
        else:
            a += 1
            assign[a] = -1
    return count


def brute_force_nb(table, over, under_in, under_out, sign, arcs):
    last = np.maximum(np.maximum(over, under_in), under_out) if len(over) else np.zeros(0, np.int64)
    order = np.argsort(last, kind="stable")
    ptr = np.searchsorted(last[order], np.arange(arcs + 1)).astype(np.int64)
    idx = order.astype(np.int64)
    args = (table, over, under_in, under_out, sign, arcs, ptr, idx)
    count = _brute_force_pass_nb(*args, np.zeros((0, max(arcs, 1)), np.int64), False)
    out = np.zeros((count, arcs), dtype=np.int64)
    _brute_force_pass_nb(*args, out if arcs else np.zeros((1, 1), np.int64), True)
    return out


def brute_force(table, over, under_in, under_out, sign, arcs):
    table = np.ascontiguousarray(table, dtype=np.int64)
    over, under_in, under_out, sign = (np.ascontiguousarray(v, dtype=np.int64)
                                       for v in (over, under_in, under_out, sign))
    if USE_NUMBA:
        return brute_force_nb(table, over, under_in, under_out, sign, arcs)
    return brute_force_np(table, over, under_in, under_out, sign, arcs)

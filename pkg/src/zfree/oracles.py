"""Exhaustive reference oracles.

Everything here is deliberately brute force: these functions define correct
answers on small inputs and exist to cross-check the polynomial algorithms.
Each enumeration refuses inputs whose estimated cost exceeds max_evals
(default one million elementary steps) by raising BudgetExceededError.

Value tables represent a function f on {0,1}^n as a list of 2^n ExtValues
indexed by bitmask.  Tables may contain negative values; the solver never
produces them, but the characterizations being tested are sign-sensitive.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product

from .errors import BudgetExceededError
from .instance import Instance
from .values import ExtValue

__all__ = [
    "DEFAULT_BUDGET",
    "ExchangeViolation",
    "LocalViolation",
    "brute_force_min",
    "check_exchange_axiom",
    "check_mnatural_local",
    "table_from_quadratic",
]

DEFAULT_BUDGET = 10**6

_INF = math.inf


@dataclass(frozen=True)
class ExchangeViolation:
    """Witness that the exchange axiom fails: for this x, y, and index i in
    supp+(x-y), no j in supp+(y-x) or the drop move satisfies the inequality."""

    x_mask: int
    y_mask: int
    i: int


@dataclass(frozen=True)
class LocalViolation:
    """Witness against one of the two local conditions.

    condition 1: f(z+e_i+e_j) + f(z+e_k) > both mixed alternatives.
    condition 2: f(z+e_i+e_j) + f(z) < f(z+e_i) + f(z+e_j).
    k is None for condition 2.
    """

    condition: int
    i: int
    j: int
    k: int | None
    z_mask: int


def brute_force_min(inst: Instance, *, max_evals: int = DEFAULT_BUDGET):
    """Exact minimum of an instance by full enumeration.

    Returns (assignment, value) where assignment is the lexicographically
    first argmin.  The value is infinite when every assignment is.
    """
    total = 1
    for d in inst.domains:
        total *= d
    if total > max_evals:
        raise BudgetExceededError(f"{total} assignments exceed budget {max_evals}")

    unary = [[v.raw for v in row] for row in inst.unary]
    pairs = [(i, j, [[v.raw for v in row] for row in t]) for (i, j), t in inst.binary_pairs()]

    best_x = None
    best = _INF
    for x in product(*(range(d) for d in inst.domains)):
        val = 0
        for i, a in enumerate(x):
            val += unary[i][a]
        for i, j, t in pairs:
            val += t[x[i]][x[j]]
            if val == _INF:
                break
        if best_x is None or val < best:
            best_x, best = x, val
    return best_x, ExtValue.of(best)


def _check_table(table, n: int):
    if len(table) != 1 << n:
        raise ValueError(f"table has {len(table)} entries, expected {1 << n}")
    return [v.raw for v in table]


def check_exchange_axiom(table, n: int, *, max_evals: int = DEFAULT_BUDGET):
    """Test the exchange axiom on a full value table.

    For every x, y and every i with x_i > y_i there must be a move,
    either dropping i or swapping i for some j with y_j > x_j, such that
    f(x) + f(y) >= f(x') + f(y') for the exchanged pair.  Returns None
    when the axiom holds, otherwise the first ExchangeViolation in
    (x, y, i) scan order.
    """
    if (1 << (2 * n)) > max_evals:
        raise BudgetExceededError(f"4^{n} point pairs exceed budget {max_evals}")
    f = _check_table(table, n)

    size = 1 << n
    for x in range(size):
        fx = f[x]
        if fx == _INF:
            continue
        for y in range(size):
            fy = f[y]
            if fy == _INF:
                continue
            lhs = fx + fy
            over = x & ~y
            while over:
                bi = over & -over
                over ^= bi
                # Drop move (j absent): x loses i, y gains i.
                if f[x ^ bi] + f[y | bi] <= lhs:
                    continue
                swaps = y & ~x
                ok = False
                while swaps:
                    bj = swaps & -swaps
                    swaps ^= bj
                    if f[(x ^ bi) | bj] + f[(y | bi) ^ bj] <= lhs:
                        ok = True
                        break
                if not ok:
                    return ExchangeViolation(x, y, bi.bit_length() - 1)
    return None


def check_mnatural_local(table, n: int, *, max_evals: int = DEFAULT_BUDGET):
    """Test the two local conditions equivalent to the exchange axiom when
    the all-zero point is in the domain.

    Condition 1 (triples): for distinct i, j, k and z supported away from
    them, f(z+e_i+e_j) + f(z+e_k) >= min over the two ways of splitting the
    pair across the points.  Condition 2 (pairs): adding e_i and e_j
    together never beats adding them separately.

    Raises ValueError when f(0) is infinite (the characterization needs the
    zero point in the domain).  Returns None or the first LocalViolation.
    """
    est = (1 << n) * max(1, n) ** 3
    if est > max_evals:
        raise BudgetExceededError(f"estimated {est} steps exceed budget {max_evals}")
    f = _check_table(table, n)
    if f[0] == _INF:
        raise ValueError("zero vector must be in the domain")

    full = (1 << n) - 1
    # Condition 2 first on equal (i, j): cheaper and its witnesses are the
    # ones the pair tests expect.
    for i in range(n):
        bi = 1 << i
        for j in range(i + 1, n):
            bj = 1 << j
            comp = full & ~(bi | bj)
            z = comp
            while True:
                if f[z | bi | bj] + f[z] < f[z | bi] + f[z | bj]:
                    return LocalViolation(2, i, j, None, z)
                if z == 0:
                    break
                z = (z - 1) & comp
    for i in range(n):
        bi = 1 << i
        for j in range(i + 1, n):
            bj = 1 << j
            for k in range(n):
                if k == i or k == j:
                    continue
                bk = 1 << k
                comp = full & ~(bi | bj | bk)
                z = comp
                while True:
                    lhs = f[z | bi | bj] + f[z | bk]
                    if lhs < _INF:
                        alt1 = f[z | bj | bk] + f[z | bi]
                        alt2 = f[z | bi | bk] + f[z | bj]
                        if lhs < alt1 and lhs < alt2:
                            return LocalViolation(1, i, j, k, z)
                    if z == 0:
                        break
                    z = (z - 1) & comp
    return None


def table_from_quadratic(f, *, max_evals: int = DEFAULT_BUDGET):
    """Materialize a quadratic function as a full 2^n value table.

    f needs attributes n and linear plus a pair(u, w) method; see
    quadratic.QuadFn.  Entries are filled incrementally, one bit at a time.
    """
    n = f.n
    if (1 << n) > max_evals:
        raise BudgetExceededError(f"2^{n} table entries exceed budget {max_evals}")
    linear = [v.raw for v in f.linear]
    out = [0] * (1 << n)
    for mask in range(1, 1 << n):
        bu = mask & -mask
        u = bu.bit_length() - 1
        val = out[mask ^ bu] + linear[u]
        if val < _INF:
            rest = mask ^ bu
            while rest:
                bw = rest & -rest
                rest ^= bw
                val += f.pair(u, bw.bit_length() - 1).raw
                if val == _INF:
                    break
        out[mask] = val
    return [ExtValue.of(v) for v in out]

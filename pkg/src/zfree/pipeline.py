"""End-to-end minimization of valid instances.

The solve path is: optional input checks, completion of the within-variable
coefficient blocks, greedy layer minimization of the relaxation, then the
shortest-path loop that lands the minimizer on a one-hot point.

Completion here does not materialize a full n x n matrix.  Cross-variable
coefficients stay in the instance tables; only the within-variable blocks
are computed, via a rank-compressed maximum spanning tree and batched
minimum-edge path queries.  The result agrees entry for entry with
completion.complete on the induced partial matrix (the tests pin that), it
just gets there without touching all pairs.

All solver arithmetic stays exact; floats appear only inside the spanning
tree call, on small integer ranks that float64 represents exactly.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from enum import Enum

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import minimum_spanning_tree

from .errors import InvariantError
from .completion import completable_oracle
from .instance import Instance, one_hot_decode, evaluate_instance
from .intersection import IterationStats, ssp_intersect
from .properties import Violation, check_jwp, check_mnatural_quadratic, check_zfree
from .quadratic import QuadFn, eval_quad, greedy_min_layer, induced_partial_matrix
from .values import INF, ZERO, ExtValue, format_value

__all__ = [
    "SolveStatus",
    "SolveReport",
    "build_relaxation",
    "minimize_zfree",
    "CertifyResult",
    "certify",
]

_VERIFY_LIMIT = 120  # auto-verify the relaxation up to this flat size


class SolveStatus(Enum):
    OPTIMAL = "optimal"
    INFINITE_MINIMUM = "infinite-minimum"
    REJECTED = "rejected"


@dataclass
class SolveReport:
    status: SolveStatus
    assignment: tuple | None = None       # value index per variable, 0-based
    value: ExtValue | None = None
    violation: Violation | None = None
    iterations: list[IterationStats] = field(default_factory=list)
    timings: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        """JSON-ready summary; 1-based assignment, no timings."""
        out: dict = {"status": self.status.value}
        if self.status is SolveStatus.REJECTED:
            out["check"] = self.violation.kind.value
            out["reason"] = self.violation.message
            return out
        out["assignment"] = (None if self.assignment is None
                             else [a + 1 for a in self.assignment])
        out["value"] = None if self.value is None else format_value(self.value)
        out["iterations"] = len(self.iterations)
        return out


class _BlockPairs:
    """Pair coefficients: instance tables across variables, completed ranks
    within them."""

    __slots__ = ("n", "_inst", "_var", "_local", "_blocks", "_pool")

    def __init__(self, inst: Instance, blocks, pool):
        self.n = inst.layout.n
        self._inst = inst
        var = []
        local = []
        for i, d in enumerate(inst.domains):
            var.extend([i] * d)
            local.extend(range(d))
        self._var = var
        self._local = local
        self._blocks = blocks    # per variable: row-major list of lists of ranks
        self._pool = pool        # rank - 1 -> ExtValue

    def value(self, u: int, w: int) -> ExtValue:
        i, j = self._var[u], self._var[w]
        a, b = self._local[u], self._local[w]
        if i == j:
            return self._pool[self._blocks[i][a][b] - 1]
        if i < j:
            return self._inst.binary_value(i, a, j, b)
        return self._inst.binary_value(j, b, i, a)


def _min_edge_on_paths(n, parent, pedge, depth, queries_a, queries_b, big):
    """Minimum edge rank on the tree path between each a[k], b[k] pair.

    parent/pedge/depth describe a rooted forest (roots are their own parent
    with edge rank `big`).  All queried pairs must share a tree.
    """
    maxd = int(depth.max()) if n else 0
    levels = max(1, maxd.bit_length())
    up = np.empty((levels, n), dtype=np.int32)
    mn = np.empty((levels, n), dtype=np.int32)
    up[0] = parent
    mn[0] = pedge
    for k in range(1, levels):
        up[k] = up[k - 1][up[k - 1]]
        mn[k] = np.minimum(mn[k - 1], mn[k - 1][up[k - 1]])

    a = queries_a.astype(np.int32).copy()
    b = queries_b.astype(np.int32).copy()
    res = np.full(a.shape, big, dtype=np.int32)
    swap = depth[b] > depth[a]
    a2 = np.where(swap, b, a)
    b2 = np.where(swap, a, b)
    diff = depth[a2] - depth[b2]
    for k in range(levels):
        m = ((diff >> k) & 1).astype(bool)
        if m.any():
            res[m] = np.minimum(res[m], mn[k][a2[m]])
            a2[m] = up[k][a2[m]]
    for k in range(levels - 1, -1, -1):
        m = up[k][a2] != up[k][b2]
        if m.any():
            res[m] = np.minimum(res[m], np.minimum(mn[k][a2[m]], mn[k][b2[m]]))
            a2[m] = up[k][a2[m]]
            b2[m] = up[k][b2[m]]
    m = a2 != b2
    if m.any():
        res[m] = np.minimum(res[m], np.minimum(mn[0][a2[m]], mn[0][b2[m]]))
    return res


def build_relaxation(inst: Instance) -> QuadFn:
    """The quadratic relaxation with completed within-variable blocks.

    Requires a valid instance (join condition plus the subtable condition);
    on anything else the output is meaningless and may trip downstream
    invariant checks.
    """
    lay = inst.layout
    n = lay.n
    r = inst.r
    linear = [inst.unary[i][a] for i, a in lay.pairs()]

    if r == 1:
        blocks = [[[1] * n for _ in range(n)]]
        return QuadFn(linear, _BlockPairs(inst, blocks, [ZERO]))

    raws = {0} if any(not inst.has_table(i, j)
                      for i in range(r) for j in range(i + 1, r)) else set()
    for _, t in inst.binary_pairs():
        for row in t:
            for v in row:
                raws.add(v.raw)
    pool_raws = sorted(raws)
    pool = [ExtValue.of(v) for v in pool_raws]
    rank_of = {v: k + 1 for k, v in enumerate(pool_raws)}
    levels = len(pool_raws)

    ranks = np.zeros((n, n), dtype=np.int32)
    for i in range(r):
        oi, di = lay.offsets[i], inst.domains[i]
        for j in range(i + 1, r):
            oj, dj = lay.offsets[j], inst.domains[j]
            t = inst.table(i, j)
            if t is None:
                blk = np.full((di, dj), rank_of[0], dtype=np.int32)
            else:
                blk = np.array([[rank_of[v.raw] for v in row] for row in t],
                               dtype=np.int32)
            ranks[oi:oi + di, oj:oj + dj] = blk
            ranks[oj:oj + dj, oi:oi + di] = blk.T

    # Maximum spanning tree on ranks == minimum spanning tree on the costs
    # levels + 1 - rank, which are positive exactly on the defined pairs.
    costs = np.where(ranks > 0, levels + 1 - ranks, 0)
    tree = minimum_spanning_tree(csr_matrix(costs)).tocoo()

    big = levels + 2
    adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for u, w, c in zip(tree.row, tree.col, tree.data):
        rk = levels + 1 - int(c)
        adj[int(u)].append((int(w), rk))
        adj[int(w)].append((int(u), rk))

    parent = np.arange(n, dtype=np.int32)
    pedge = np.full(n, big, dtype=np.int32)
    depth = np.zeros(n, dtype=np.int32)
    seen = [False] * n
    for root in range(n):
        if seen[root]:
            continue
        if root > 0:
            raise InvariantError("cross pairs left the position graph disconnected")
        seen[root] = True
        stack = [root]
        while stack:
            v = stack.pop()
            for w, rk in adj[v]:
                if not seen[w]:
                    seen[w] = True
                    parent[w] = v
                    pedge[w] = rk
                    depth[w] = depth[v] + 1
                    stack.append(w)

    blocks = []
    for i in range(r):
        d = inst.domains[i]
        grid = np.zeros((d, d), dtype=np.int32)
        if d > 1:
            ai, bi = np.triu_indices(d, 1)
            res = _min_edge_on_paths(n, parent, pedge, depth,
                                     ai + lay.offsets[i], bi + lay.offsets[i], big)
            if int(res.max()) >= big:
                raise InvariantError("path query escaped the spanning tree")
            grid[ai, bi] = res
            grid[bi, ai] = res
        blocks.append(grid.tolist())
    return QuadFn(linear, _BlockPairs(inst, blocks, pool))


def _warm_start(inst: Instance) -> int:
    """One-hot mask picking each variable's cheapest value, ties low."""
    lay = inst.layout
    mask = 0
    for i in range(inst.r):
        row = inst.unary[i]
        best = 0
        for a in range(1, inst.domains[i]):
            if row[a] < row[best]:
                best = a
        mask |= 1 << lay.flat(i, best)
    return mask


def minimize_zfree(inst: Instance, *, check_properties: bool = True,
                   verify_completion: bool | None = None,
                   dump_hook=None) -> SolveReport:
    """Minimize a valid instance exactly.

    check_properties runs both input checks first and reports a rejection
    with the first violation found.  Turning it off skips straight to the
    solve and is only sound for instances known valid.

    verify_completion rescans the completed relaxation for the coefficient
    conditions the solve relies on; None means auto (on for small inputs).
    dump_hook is passed through to the shortest-path loop.
    """
    timings: dict = {}
    t0 = time.perf_counter()
    if check_properties:
        bad = check_jwp(inst) or check_zfree(inst)
        if bad is not None:
            timings["check"] = time.perf_counter() - t0
            return SolveReport(SolveStatus.REJECTED, violation=bad, timings=timings)
    timings["check"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    f = build_relaxation(inst)
    if verify_completion is None:
        verify_completion = inst.layout.n <= _VERIFY_LIMIT
    if verify_completion:
        bad = check_mnatural_quadratic(f)
        if bad is not None:
            raise InvariantError(f"completion produced a bad relaxation: {bad}")
    timings["complete"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    x0 = greedy_min_layer(f, inst.r)
    timings["greedy"] = time.perf_counter() - t0
    if x0 is None:
        return SolveReport(SolveStatus.INFINITE_MINIMUM, value=INF, timings=timings)

    t0 = time.perf_counter()
    result = ssp_intersect(f, inst.layout, x0, _warm_start(inst), dump_hook)
    timings["ssp"] = time.perf_counter() - t0
    if result.mask is None:
        return SolveReport(SolveStatus.INFINITE_MINIMUM, value=INF,
                           iterations=result.iterations, timings=timings)

    assignment = one_hot_decode(inst, result.mask)
    value = evaluate_instance(inst, assignment)
    relaxed = eval_quad(f, result.mask)
    if relaxed != value:
        raise InvariantError(
            f"relaxation value {relaxed} disagrees with the instance value {value}")
    return SolveReport(SolveStatus.OPTIMAL, assignment=assignment, value=value,
                       iterations=result.iterations, timings=timings)


@dataclass
class CertifyResult:
    jwp_ok: bool
    zfree_ok: bool
    completable: bool
    jwp_violation: Violation | None = None
    zfree_violation: Violation | None = None
    bad_cycle: list | None = None

    @property
    def agreement(self) -> bool:
        """Both input checks pass exactly when the induced matrix completes."""
        return (self.jwp_ok and self.zfree_ok) == self.completable

    def to_dict(self) -> dict:
        out = {
            "jwp": self.jwp_ok,
            "zfree": self.zfree_ok,
            "completable": self.completable,
            "agreement": self.agreement,
        }
        if self.jwp_violation is not None:
            out["jwp_reason"] = self.jwp_violation.message
        if self.zfree_violation is not None:
            out["zfree_reason"] = self.zfree_violation.message
        if self.bad_cycle is not None:
            out["bad_cycle"] = [u + 1 for u in self.bad_cycle]
        return out


def certify(inst: Instance, max_n: int = 30) -> CertifyResult:
    """Run both input checks and the exhaustive completability test side by
    side.  The cycle search is exponential, so it is budgeted by max_n flat
    positions; past that BudgetExceededError propagates."""
    jwp = check_jwp(inst)
    zfree = check_zfree(inst)
    cycle = completable_oracle(induced_partial_matrix(inst), max_n=max_n)
    return CertifyResult(
        jwp_ok=jwp is None,
        zfree_ok=zfree is None,
        completable=cycle is None,
        jwp_violation=jwp,
        zfree_violation=zfree,
        bad_cycle=cycle,
    )

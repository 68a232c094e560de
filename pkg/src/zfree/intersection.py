"""Successive shortest paths between a quadratic function and the one-hot
partition constraint.

Given a layer minimizer x of the relaxation and any one-hot point y of the
same size, the loop repeatedly builds an exchange graph, finds a shortest
s-t path with the fewest arcs, and flips x and y along it.  Each round moves
x and y two positions closer; when they meet, the common point minimizes the
relaxation over one-hot points, hence the instance.

Arc lengths can be negative, so Dijkstra runs on reduced lengths under a
vertex potential that starts at zero and absorbs the distances found in each
round, capped at the sink's distance.  Nonnegativity of every reduced length
is asserted, not assumed.

All arithmetic is on raw values (int, Fraction, math.inf); arc lengths are
always finite by construction.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from enum import Enum

from .errors import InvariantError, NotOneHotError
from .instance import OneHotLayout
from .quadratic import QuadFn

__all__ = [
    "ArcKind",
    "Arc",
    "ExchangeGraph",
    "build_exchange_graph",
    "PathSearch",
    "shortest_path_min_hops",
    "IterationStats",
    "SspResult",
    "ssp_intersect",
]


class ArcKind(Enum):
    EXCHANGE = "exchange"   # u in supp(x) -> w outside, swap feasible for f
    REASSIGN = "reassign"   # w -> u within one variable block, u in supp(y)
    SOURCE = "source"       # s -> u, u in supp(x) \ supp(y)
    SINK = "sink"           # w -> t, w in supp(y) \ supp(x)


@dataclass(frozen=True)
class Arc:
    tail: int
    head: int
    length: object  # raw int | Fraction; finite
    kind: ArcKind


class ExchangeGraph:
    """Directed multigraph on flat positions plus source s and sink t."""

    __slots__ = ("n", "s", "t", "arcs", "adj")

    def __init__(self, n: int, arcs: list[Arc]):
        self.n = n
        self.s = n
        self.t = n + 1
        self.arcs = arcs
        adj: list[list[int]] = [[] for _ in range(n + 2)]
        for idx, arc in enumerate(arcs):
            adj[arc.tail].append(idx)
        self.adj = adj

    def count(self, kind: ArcKind) -> int:
        return sum(1 for a in self.arcs if a.kind is kind)


def _support(mask: int) -> list[int]:
    out = []
    while mask:
        b = mask & -mask
        mask ^= b
        out.append(b.bit_length() - 1)
    return out


def _check_one_hot(layout: OneHotLayout, mask: int) -> None:
    for i in range(len(layout.domains)):
        blk = layout.block(i)
        picked = (mask >> blk.start) & ((1 << len(blk)) - 1)
        if picked == 0 or picked & (picked - 1):
            raise NotOneHotError(f"variable {i + 1} does not pick exactly one value")


def build_exchange_graph(f: QuadFn, x_mask: int, y_mask: int,
                         layout: OneHotLayout) -> ExchangeGraph:
    """Exchange graph for the current pair (x, y).

    x must be a point of finite f value, y a one-hot point of the same size.
    Exchange arcs u -> w exist for u in supp(x), w outside supp(x), whenever
    x - u + w stays finite; their length is the change of f along the swap.
    Reassign arcs point from every unpicked position of a block to the one y
    picks there; they and the source/sink arcs have length zero.

    Arcs are emitted in a fixed order (exchange, reassign, source, sink; each
    class in ascending position order) so downstream tie-breaking is stable.
    """
    n = f.n
    if layout.n != n:
        raise ValueError("layout does not match the function")
    supp_x = _support(x_mask)
    _check_one_hot(layout, y_mask)

    linear = [v.raw for v in f.linear]
    pairs = f.pairs

    # Cost of x with and without each of its own positions, all finite.
    x_val = 0
    for u in supp_x:
        x_val += linear[u]
    for ai, u in enumerate(supp_x):
        for w in supp_x[ai + 1:]:
            x_val += pairs.value(u, w).raw
    if x_val == math.inf:
        raise ValueError("x lies outside the finite domain of f")

    in_x = [False] * n
    for u in supp_x:
        in_x[u] = True

    # out_cost[u] for u in supp(x): linear[u] plus its pair terms inside x;
    # f(x - u) = x_val - out_cost[u].
    out_cost = {}
    for u in supp_x:
        s = linear[u]
        for w in supp_x:
            if w != u:
                s += pairs.value(u, w).raw
        out_cost[u] = s

    # For w outside x: linear[w] plus pair terms to all of x, split into the
    # finite part and the number of infinite terms, so removing one u needs
    # no infinity subtraction.
    row = {}       # w -> list of raw pair values aligned with supp_x
    in_fin = {}
    in_infs = {}
    for w in range(n):
        if in_x[w]:
            continue
        vals = [pairs.value(w, u).raw for u in supp_x]
        fin = linear[w]
        infs = 0
        for v in vals:
            if v == math.inf:
                infs += 1
            else:
                fin += v
        row[w] = vals
        in_fin[w] = fin
        in_infs[w] = infs

    arcs: list[Arc] = []
    for ai, u in enumerate(supp_x):
        for w in range(n):
            if in_x[w]:
                continue
            huw = row[w][ai]
            infs = in_infs[w] - (1 if huw == math.inf else 0)
            if infs:
                continue  # the swap leaves the finite domain
            fin = in_fin[w] - (huw if huw != math.inf else 0)
            # f(x - u + w) - f(x) = fin - out_cost[u]
            arcs.append(Arc(u, w, fin - out_cost[u], ArcKind.EXCHANGE))

    for i in range(len(layout.domains)):
        blk = layout.block(i)
        picked = [u for u in blk if (y_mask >> u) & 1]
        target = picked[0]
        for w in blk:
            if w != target:
                arcs.append(Arc(w, target, 0, ArcKind.REASSIGN))

    s, t = n, n + 1
    for u in supp_x:
        if not (y_mask >> u) & 1:
            arcs.append(Arc(s, u, 0, ArcKind.SOURCE))
    for w in _support(y_mask):
        if not in_x[w]:
            arcs.append(Arc(w, t, 0, ArcKind.SINK))

    return ExchangeGraph(n, arcs)


@dataclass
class PathSearch:
    """Dijkstra output: reduced distances, hop counts, and parent arcs.

    dist entries are None for unreachable vertices.
    """

    dist: list
    hops: list
    parent: list      # arc index into graph.arcs, or None
    arc_tails: list   # tail vertex per arc, for path reconstruction

    def reached(self, v: int) -> bool:
        return self.dist[v] is not None

    def path_to(self, v: int) -> list[int]:
        """Arc indices from s to v, in path order."""
        out = []
        while self.parent[v] is not None:
            idx = self.parent[v]
            out.append(idx)
            v = self.arc_tails[idx]
        out.reverse()
        return out


def shortest_path_min_hops(graph: ExchangeGraph, potential: list) -> PathSearch:
    """Shortest s-to-everywhere distances under reduced lengths, breaking
    distance ties by fewest arcs, then by smallest head, then by arc order.

    potential holds a raw value per vertex (n positions, then s, then t).
    Every reduced length must come out nonnegative; a negative one means the
    potentials are stale and raises InvariantError.
    """
    m = graph.n + 2
    if len(potential) != m:
        raise ValueError("potential length does not match the graph")
    reduced = []
    for arc in graph.arcs:
        lp = arc.length + potential[arc.tail] - potential[arc.head]
        if lp < 0:
            raise InvariantError(
                f"negative reduced length {lp} on arc {arc.tail}->{arc.head}")
        reduced.append(lp)

    dist = [None] * m
    hops = [0] * m
    parent = [None] * m
    done = [False] * m
    s = graph.s
    dist[s] = 0
    heap = [(0, 0, s)]
    while heap:
        d, h, v = heapq.heappop(heap)
        if done[v]:
            continue
        done[v] = True
        for idx in graph.adj[v]:
            arc = graph.arcs[idx]
            w = arc.head
            if done[w]:
                continue
            nd = d + reduced[idx]
            nh = h + 1
            if dist[w] is None or nd < dist[w] or (nd == dist[w] and nh < hops[w]):
                dist[w], hops[w], parent[w] = nd, nh, idx
                heapq.heappush(heap, (nd, nh, w))

    return PathSearch(dist, hops, parent, [a.tail for a in graph.arcs])


@dataclass
class IterationStats:
    """What one round of the loop did, for reporting and invariant tests."""

    index: int
    gap_before: int          # |x diff y| in positions
    gap_after: int
    path_hops: int
    arcs_exchange: int
    arcs_reassign: int
    arcs_source: int
    arcs_sink: int
    min_reduced: object      # smallest reduced length seen, raw


@dataclass
class SspResult:
    mask: int | None                      # common point, or None if infeasible
    iterations: list[IterationStats] = field(default_factory=list)


def ssp_intersect(f: QuadFn, layout: OneHotLayout, x0_mask: int, y0_mask: int,
                  dump_hook=None) -> SspResult:
    """Drive x (a layer minimizer of f) and y (a one-hot point) together.

    Both start points must have the same number of ones.  Returns the common
    mask, or mask None when some round finds no s-t path, which certifies
    that no one-hot point has finite value.

    dump_hook, when given, is called once per round with
    (index, graph, potential, search) before x and y change.
    """
    n = f.n
    if x0_mask.bit_count() != y0_mask.bit_count():
        raise ValueError("x and y must have the same number of ones")
    r = x0_mask.bit_count()
    x, y = x0_mask, y0_mask
    potential = [0] * (n + 2)
    stats: list[IterationStats] = []
    index = 0
    while x != y:
        index += 1
        if index > r:
            raise InvariantError("round limit exceeded; gap is not shrinking")
        graph = build_exchange_graph(f, x, y, layout)
        search = shortest_path_min_hops(graph, potential)
        if dump_hook is not None:
            dump_hook(index, graph, potential, search)
        gap_before = (x ^ y).bit_count()
        if not search.reached(graph.t):
            return SspResult(None, stats)

        path = search.path_to(graph.t)
        min_reduced = None
        for idx in path:
            arc = graph.arcs[idx]
            lp = arc.length + potential[arc.tail] - potential[arc.head]
            if min_reduced is None or lp < min_reduced:
                min_reduced = lp
            if arc.kind is ArcKind.EXCHANGE:
                x = (x ^ (1 << arc.tail)) | (1 << arc.head)
            elif arc.kind is ArcKind.REASSIGN:
                y = (y ^ (1 << arc.head)) | (1 << arc.tail)
            # source and sink arcs are connectors; they change nothing

        gap_after = (x ^ y).bit_count()
        if gap_after != gap_before - 2:
            raise InvariantError(
                f"gap went {gap_before} -> {gap_after}, expected a drop of 2")
        if x.bit_count() != r:
            raise InvariantError("x left its layer")
        _check_one_hot(layout, y)

        # Distances are capped at t's: vertices past the sink (or unreached)
        # would otherwise outgrow it and send later arcs into them negative.
        d_t = search.dist[graph.t]
        for v in range(n + 2):
            d_v = search.dist[v]
            if d_v is None or d_v > d_t:
                d_v = d_t
            potential[v] = potential[v] + d_v

        stats.append(IterationStats(
            index=index,
            gap_before=gap_before,
            gap_after=gap_after,
            path_hops=len(path),
            arcs_exchange=graph.count(ArcKind.EXCHANGE),
            arcs_reassign=graph.count(ArcKind.REASSIGN),
            arcs_source=graph.count(ArcKind.SOURCE),
            arcs_sink=graph.count(ArcKind.SINK),
            min_reduced=min_reduced,
        ))
    return SspResult(x, stats)

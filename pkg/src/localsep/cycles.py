"""Bounded cycle enumeration, GF(2) cycle-space ranks, and the triplex.

All cycle lengths are total edge lengths; on the unit graphs used throughout
this equals the edge count.  Enumeration is exhaustive up to the bound and
guarded by a node-expansion budget; running out of budget is a hard error.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import total_ordering

from . import kernels
from .errors import BudgetExceededError, InputError, UnitLengthError
from .graph import INF, Ball, MultiGraph

DEFAULT_BUDGET = 10_000_000


def expansion_budget(budget: int | None = None) -> int:
    if budget is not None:
        return budget
    env = os.environ.get("LOCALSEP_BUDGET")
    if env:
        try:
            return int(env)
        except ValueError:
            raise InputError(f"bad LOCALSEP_BUDGET value {env!r}") from None
    return DEFAULT_BUDGET


@dataclass(frozen=True)
class Cycle:
    """A simple cycle: cyclic vertex sequence plus its edge set.

    `vertices` is canonically rotated/reflected (smallest vertex first,
    lexicographically smaller direction).  Loops have one vertex, digons two.
    `edges` follows the vertex order; `edge_ids` is the underlying set.
    """

    vertices: tuple[str, ...]
    edges: tuple[str, ...]
    length: int

    @property
    def edge_ids(self) -> frozenset[str]:
        return frozenset(self.edges)

    def __contains__(self, v: str) -> bool:
        return v in self.vertices


@dataclass(frozen=True)
class CycleSet:
    cycles: tuple[Cycle, ...]
    bound: int | float

    def __len__(self) -> int:
        return len(self.cycles)

    def __iter__(self):
        return iter(self.cycles)


def _cycle_sort_key(c: Cycle):
    return (c.length, c.vertices, c.edges)


def enumerate_short_cycles(
    g: MultiGraph,
    bound: int | float,
    budget: int | None = None,
    anchor: str | None = None,
) -> CycleSet:
    """All simple cycles of total length <= bound, each reported once.

    Loops count as cycles of length 1, a pair of parallel edges as a cycle
    of length 2.  With `anchor` only cycles through that vertex are listed.
    bound = INF enumerates every simple cycle (still finite).
    """
    if not g.is_unit:
        raise UnitLengthError("cycle enumeration needs unit edge lengths")
    if bound != INF and bound < 1:
        return CycleSet((), bound)
    budget = expansion_budget(budget)

    out: list[Cycle] = []
    for e in g.edges:
        if e.is_loop() and bound >= 1 and (anchor is None or e.u == anchor):
            out.append(Cycle((e.u,), (e.eid,), 1))
    if bound == INF or bound >= 2:
        seen_pairs: set[tuple[str, str]] = set()
        for e in g.edges:
            if e.is_loop():
                continue
            key = (min(e.u, e.v), max(e.u, e.v))
            if key in seen_pairs:
                continue
            seen_pairs.add(key)
            par = g.edges_between(e.u, e.v)
            if anchor is not None and anchor not in key:
                continue
            for i in range(len(par)):
                for j in range(i + 1, len(par)):
                    out.append(Cycle(key, (par[i], par[j]), 2))

    vmap = {v: i for i, v in enumerate(g.vertices)}
    vlist = g.vertices
    eids = [e.eid for e in g.edges if not e.is_loop()]
    edge_u = [vmap[g.edge(eid).u] for eid in eids]
    edge_v = [vmap[g.edge(eid).v] for eid in eids]
    eff_bound = g.n if bound == INF else min(int(bound), g.n)
    if eff_bound >= 3 and eids:
        anchor_idx = -1 if anchor is None else vmap[anchor]
        raw, _used, truncated = kernels.enumerate_cycles(
            g.n, edge_u, edge_v, eff_bound, budget, anchor_idx
        )
        if truncated:
            raise BudgetExceededError(
                f"cycle enumeration exceeded the expansion budget ({budget})"
            )
        for vs, es in raw:
            names = tuple(vlist[i] for i in vs)
            # canonical rotation: the kernel already starts at the smallest
            # index except in anchored mode, where we re-canonicalize.
            cyc = _canonical(names, tuple(eids[i] for i in es))
            out.append(cyc)
    out.sort(key=_cycle_sort_key)
    return CycleSet(tuple(out), bound)


def _canonical(names: tuple[str, ...], edges: tuple[str, ...]) -> Cycle:
    k = len(names)
    if k <= 2:
        return Cycle(names, edges, k)
    i = min(range(k), key=lambda j: names[j])
    fwd_v = tuple(names[(i + j) % k] for j in range(k))
    fwd_e = tuple(edges[(i + j) % k] for j in range(k))
    bwd_v = (names[i],) + tuple(names[(i - j) % k] for j in range(1, k))
    bwd_e = tuple(edges[(i - 1 - j) % k] for j in range(k))
    if (fwd_v, fwd_e) <= (bwd_v, bwd_e):
        return Cycle(fwd_v, fwd_e, k)
    return Cycle(bwd_v, bwd_e, k)


def cycles_through(
    g: MultiGraph,
    anchor: str,
    bound: int | float,
    budget: int | None = None,
) -> CycleSet:
    """Simple cycles of length <= bound containing `anchor`."""
    return enumerate_short_cycles(g, bound, budget=budget, anchor=anchor)


def find_cycle_through_pair(
    g: MultiGraph,
    x: str,
    y: str,
    bound: int | float,
    budget: int | None = None,
) -> Cycle | None:
    """Some simple cycle of length <= bound through both x and y, or None.

    Deterministic: the canonically smallest qualifying cycle is returned.
    """
    best: Cycle | None = None
    for c in cycles_through(g, x, bound, budget=budget):
        if y in c and (best is None or _cycle_sort_key(c) < _cycle_sort_key(best)):
            best = c
    return best


# -- GF(2) machinery ----------------------------------------------------------


def cycle_space_dim(g: MultiGraph) -> int:
    """|E| - |V| + number of components."""
    return g.m - g.n + len(g.components())


def _rank_of(cycles: CycleSet, g: MultiGraph) -> int:
    index = {e.eid: i for i, e in enumerate(g.edges)}
    rows = []
    for c in cycles:
        vec = 0
        for eid in c.edge_ids:
            vec |= 1 << index[eid]
        rows.append(vec)
    return kernels.gf2_rank(rows)


def short_cycle_rank(g: MultiGraph, bound: int | float, budget: int | None = None) -> int:
    """Dimension of the span of the cycles of total length <= bound."""
    return _rank_of(enumerate_short_cycles(g, bound, budget=budget), g)


@total_ordering
@dataclass(frozen=True)
class Triplex:
    """(cycle-space dimension, short-cycle span dimension, vertex count),
    compared lexicographically on (gamma, -gammabar, v)."""

    gamma: int
    gammabar: int
    v: int

    def __post_init__(self) -> None:
        if not (0 <= self.gammabar <= self.gamma):
            raise InputError(f"triplex out of range: {self}")

    @property
    def key(self) -> tuple[int, int, int]:
        return (self.gamma, -self.gammabar, self.v)

    def __lt__(self, other: "Triplex") -> bool:
        return self.key < other.key


def triplex(g: MultiGraph, r: int | float, budget: int | None = None) -> Triplex:
    return Triplex(cycle_space_dim(g), short_cycle_rank(g, r, budget=budget), g.n)


def check_generation(b: Ball, r: int | float, budget: int | None = None) -> bool:
    """Whether the cycles of length <= r span the whole cycle space of the
    ball; the generation lemma asserts this always holds for balls of
    radius r/2."""
    graph = b.graph
    return short_cycle_rank(graph, r, budget=budget) == cycle_space_dim(graph)


# -- girth without enumeration ------------------------------------------------


def girth_at_most(g: MultiGraph, bound: int | float) -> bool:
    """True iff g has a cycle of total length <= bound (unit graphs)."""
    if not g.is_unit:
        raise UnitLengthError("girth check needs unit edge lengths")
    if bound != INF and bound < 1:
        return False
    for e in g.edges:
        if e.is_loop():
            return True
    seen: set[tuple[str, str]] = set()
    for e in g.edges:
        if e.is_loop():
            continue
        key = (min(e.u, e.v), max(e.u, e.v))
        if key in seen:
            if bound == INF or bound >= 2:
                return True
        seen.add(key)
    best = INF
    for root in g.vertices:
        dist = {root: 0}
        parent_edge: dict[str, str] = {root: ""}
        queue = [root]
        head = 0
        while head < len(queue):
            x = queue[head]
            head += 1
            for y, eid in g.adjacency(x):
                if y == x:
                    continue
                if y not in dist:
                    dist[y] = dist[x] + 1
                    parent_edge[y] = eid
                    queue.append(y)
                elif eid != parent_edge.get(x) and eid != parent_edge.get(y):
                    best = min(best, dist[x] + dist[y] + 1)
        if best <= 3:
            break
    return best <= bound

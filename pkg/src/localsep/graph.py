"""Finite multigraphs with positive integer edge lengths.

Vertex ids are opaque strings.  Loops and parallel edges are allowed.  All
graph objects are immutable after construction and safe to share; every
operation returns fresh objects.  Radii are stored as doubled integers
(`Radius2`) so half-integer radii stay exact.
"""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping

from .errors import InputError, UnitLengthError

INF = float("inf")

ORIGINAL = "original"
TORSO = "torso"
SUBDIVISION = "subdivision"
_TAGS = (ORIGINAL, TORSO, SUBDIVISION)


@dataclass(frozen=True)
class Edge:
    """One edge record: unordered endpoints, positive integer length, tag."""

    eid: str
    u: str
    v: str
    length: int = 1
    tag: str = ORIGINAL

    def __post_init__(self) -> None:
        if not isinstance(self.length, int) or self.length < 1:
            raise InputError(f"edge {self.eid}: length must be an integer >= 1")
        if self.tag not in _TAGS:
            raise InputError(f"edge {self.eid}: unknown tag {self.tag!r}")

    @property
    def ends(self) -> frozenset[str]:
        return frozenset((self.u, self.v))

    def is_loop(self) -> bool:
        return self.u == self.v

    def other(self, x: str) -> str:
        if x == self.u:
            return self.v
        if x == self.v:
            return self.u
        raise KeyError(f"{x} is not an endpoint of {self.eid}")


@dataclass(frozen=True)
class Radius2:
    """A radius counted in half-steps: radius s is stored as 2s, s+1/2 as 2s+1.

    `value` is a non-negative integer or INF.  Even values are integer radii,
    for which the ball drops edges between two vertices at maximal distance.
    """

    value: int | float

    def __post_init__(self) -> None:
        if self.value == INF:
            return
        if not isinstance(self.value, int) or self.value < 0:
            raise InputError(f"radius2 must be a non-negative integer or INF, got {self.value!r}")

    @property
    def is_infinite(self) -> bool:
        return self.value == INF

    @property
    def is_half_integer(self) -> bool:
        return not self.is_infinite and self.value % 2 == 1

    @property
    def hops(self) -> int | float:
        """Largest integer distance a member vertex may have."""
        return INF if self.is_infinite else self.value // 2

    @classmethod
    def half_of(cls, r: int | float) -> "Radius2":
        """The radius r/2 used by all r-local notions."""
        if r == INF:
            return cls(INF)
        return cls(int(r))


class MultiGraph:
    """Immutable multigraph; vertex set plus a collection of Edge records."""

    __slots__ = ("_vertices", "_edges", "_adj", "_unit")

    def __init__(self, vertices: Iterable[str], edges: Iterable[Edge]):
        vs = tuple(sorted(set(vertices)))
        for v in vs:
            if not isinstance(v, str) or not v:
                raise InputError(f"bad vertex id {v!r}")
        vset = set(vs)
        emap: dict[str, Edge] = {}
        for e in edges:
            if e.eid in emap:
                raise InputError(f"duplicate edge id {e.eid}")
            if e.u not in vset or e.v not in vset:
                raise InputError(f"edge {e.eid} has an undeclared endpoint")
            emap[e.eid] = e
        self._vertices = vs
        self._edges = {k: emap[k] for k in sorted(emap)}
        adj: dict[str, list[tuple[str, str]]] = {v: [] for v in vs}
        for e in self._edges.values():
            adj[e.u].append((e.v, e.eid))
            if not e.is_loop():
                adj[e.v].append((e.u, e.eid))
        self._adj = {v: tuple(sorted(nbrs)) for v, nbrs in adj.items()}
        self._unit = all(e.length == 1 for e in self._edges.values())

    # -- basic accessors ---------------------------------------------------

    @property
    def vertices(self) -> tuple[str, ...]:
        return self._vertices

    @property
    def edges(self) -> tuple[Edge, ...]:
        return tuple(self._edges.values())

    def edge(self, eid: str) -> Edge:
        return self._edges[eid]

    def has_edge(self, eid: str) -> bool:
        return eid in self._edges

    def __contains__(self, v: str) -> bool:
        return v in self._adj

    @property
    def n(self) -> int:
        return len(self._vertices)

    @property
    def m(self) -> int:
        return len(self._edges)

    @property
    def is_unit(self) -> bool:
        return self._unit

    def total_length(self) -> int:
        return sum(e.length for e in self._edges.values())

    def adjacency(self, v: str) -> tuple[tuple[str, str], ...]:
        """Sorted (neighbour, edge id) pairs; loops contribute one entry."""
        return self._adj[v]

    def incident(self, v: str) -> tuple[str, ...]:
        return tuple(sorted({eid for _, eid in self._adj[v]}))

    def degree(self, v: str) -> int:
        """Loops count twice, as usual."""
        d = 0
        for _, eid in self._adj[v]:
            d += 2 if self._edges[eid].is_loop() else 1
        return d

    def loops_at(self, v: str) -> tuple[str, ...]:
        return tuple(eid for eid in self.incident(v) if self._edges[eid].is_loop())

    def edges_between(self, u: str, v: str) -> tuple[str, ...]:
        return tuple(eid for w, eid in self._adj[u] if w == v and (u != v or self._edges[eid].is_loop()))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MultiGraph):
            return NotImplemented
        if self._vertices != other._vertices:
            return False
        if self._edges.keys() != other._edges.keys():
            return False
        for eid, e in self._edges.items():
            f = other._edges[eid]
            if e.ends != f.ends or e.length != f.length:
                return False
        return True

    def __hash__(self) -> int:
        return hash((self._vertices, tuple(sorted((e.eid, tuple(sorted(e.ends)), e.length) for e in self._edges.values()))))

    def __repr__(self) -> str:
        return f"MultiGraph(n={self.n}, m={self.m})"

    # -- derived graphs ----------------------------------------------------

    def subgraph(self, vertices: Iterable[str], edge_ids: Iterable[str]) -> "MultiGraph":
        vs = set(vertices)
        es = [self._edges[eid] for eid in edge_ids]
        for e in es:
            if e.u not in vs or e.v not in vs:
                raise InputError(f"subgraph edge {e.eid} leaves the vertex set")
        return MultiGraph(vs, es)

    def induced(self, vertices: Iterable[str]) -> "MultiGraph":
        vs = set(vertices)
        es = [e for e in self._edges.values() if e.u in vs and e.v in vs]
        return MultiGraph(vs, es)

    def without_vertices(self, drop: Iterable[str]) -> "MultiGraph":
        gone = set(drop)
        return self.induced(v for v in self._vertices if v not in gone)

    # -- connectivity ------------------------------------------------------

    def components(self) -> tuple[frozenset[str], ...]:
        """Connected components, sorted by smallest contained vertex id."""
        seen: set[str] = set()
        comps: list[frozenset[str]] = []
        for v in self._vertices:
            if v in seen:
                continue
            comp = {v}
            queue = deque([v])
            while queue:
                x = queue.popleft()
                for y, _ in self._adj[x]:
                    if y not in comp:
                        comp.add(y)
                        queue.append(y)
            seen |= comp
            comps.append(frozenset(comp))
        return tuple(sorted(comps, key=min))

    def component_of(self, v: str) -> frozenset[str]:
        if v not in self._adj:
            raise InputError(f"unknown vertex {v!r}")
        comp = {v}
        queue = deque([v])
        while queue:
            x = queue.popleft()
            for y, _ in self._adj[x]:
                if y not in comp:
                    comp.add(y)
                    queue.append(y)
        return frozenset(comp)

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.component_of(self._vertices[0])) == self.n

    # -- distances ---------------------------------------------------------

    def distances_from(self, v: str) -> dict[str, int]:
        """Shortest weighted distances to every reachable vertex."""
        if v not in self._adj:
            raise InputError(f"unknown vertex {v!r}")
        if self._unit:
            dist = {v: 0}
            queue = deque([v])
            while queue:
                x = queue.popleft()
                dx = dist[x]
                for y, _ in self._adj[x]:
                    if y not in dist:
                        dist[y] = dx + 1
                        queue.append(y)
            return dist
        dist = {}
        heap: list[tuple[int, str]] = [(0, v)]
        while heap:
            dx, x = heapq.heappop(heap)
            if x in dist:
                continue
            dist[x] = dx
            for y, eid in self._adj[x]:
                if y not in dist:
                    heapq.heappush(heap, (dx + self._edges[eid].length, y))
        return dist


def distance(g: MultiGraph, u: str, v: str) -> int | float:
    """Shortest weighted path length between u and v; INF when unreachable."""
    if u not in g or v not in g:
        raise InputError(f"unknown vertex in distance({u!r}, {v!r})")
    if u == v:
        return 0
    return g.distances_from(u).get(v, INF)


# -- balls ------------------------------------------------------------------


@dataclass(frozen=True)
class Ball:
    """The ball around `center`: member vertices with their distances plus
    the kept edges.  For an even radius2, edges joining two vertices both at
    maximal distance are dropped; for an odd radius2 all induced edges stay.
    """

    center: str
    radius2: Radius2
    members: Mapping[str, int]
    kept_edges: frozenset[str]
    _graph: MultiGraph = field(repr=False, compare=False)

    @property
    def graph(self) -> MultiGraph:
        return self._graph

    def __contains__(self, v: str) -> bool:
        return v in self.members


def ball(g: MultiGraph, v: str, radius2: Radius2 | int | float) -> Ball:
    """The ball of radius radius2/2 around v.

    Requires unit edge lengths; weighted graphs must be subdivided first.
    radius2 = INF returns the whole component of v with all its edges.
    """
    if not isinstance(radius2, Radius2):
        radius2 = Radius2(radius2)
    if v not in g:
        raise InputError(f"unknown vertex {v!r}")
    if not g.is_unit:
        raise UnitLengthError("ball() needs unit edge lengths; call subdivide() first")
    dist = g.distances_from(v)
    hops = radius2.hops
    members = {x: d for x, d in dist.items() if d <= hops}
    drop_exact = not radius2.is_infinite and not radius2.is_half_integer
    kept = []
    for e in g.edges:
        if e.u in members and e.v in members:
            if drop_exact and members[e.u] == hops and members[e.v] == hops:
                continue
            kept.append(e.eid)
    graph = g.subgraph(members, kept)
    return Ball(center=v, radius2=radius2, members=members, kept_edges=frozenset(kept), _graph=graph)


def punctured_ball(g: MultiGraph, v: str, radius2: Radius2 | int | float) -> MultiGraph:
    """ball(g, v, radius2) with v and its incident kept edges removed."""
    b = ball(g, v, radius2)
    return b.graph.without_vertices([v])


# -- provenance and subdivision ----------------------------------------------

# Origin records are plain tuples so they serialize directly:
#   ("vertex", name)            an original vertex
#   ("slice", base, comp)       a slice of `base` for local component `comp`
#   ("interior", eid, offset)   interior point of a weighted edge, offset in [1, len-1]
Origin = tuple


@dataclass(frozen=True)
class Provenance:
    """Maps every vertex of a derived graph to exactly one origin."""

    origins: Mapping[str, Origin]

    def origin(self, v: str) -> Origin:
        return self.origins[v]

    def root(self, v: str) -> str:
        """Stable token naming where a vertex ultimately came from."""
        kind, *rest = self.origins[v]
        if kind == "vertex" or kind == "slice":
            return rest[0]
        eid, off = rest
        return f"{eid}:{off}"

    def compose(self, inner: "Provenance") -> "Provenance":
        """self maps K -> H, inner maps H -> G; the result maps K -> G."""
        out: dict[str, Origin] = {}
        for v, org in self.origins.items():
            kind = org[0]
            if kind == "vertex":
                out[v] = inner.origins[org[1]]
            elif kind == "slice":
                base_org = inner.origins[org[1]]
                if base_org[0] == "vertex":
                    out[v] = ("slice", base_org[1], org[2])
                elif base_org[0] == "slice":
                    out[v] = ("slice", base_org[1], f"{base_org[2]}/{org[2]}")
                else:
                    out[v] = ("slice", inner.root(org[1]), org[2])
            else:
                out[v] = org
        return Provenance(out)

    @classmethod
    def identity(cls, g: MultiGraph) -> "Provenance":
        return cls({v: ("vertex", v) for v in g.vertices})


def _fresh(name: str, used: set[str]) -> str:
    while name in used:
        name = "~" + name
    used.add(name)
    return name


def subdivide(g: MultiGraph) -> tuple[MultiGraph, Provenance]:
    """Replace each length-L edge by a path of L unit edges.

    Interior points are recorded in the provenance; unit edges map to
    themselves, so subdividing a unit graph returns an equal graph.
    """
    used_v = set(g.vertices)
    used_e = {e.eid for e in g.edges}
    vertices = list(g.vertices)
    edges: list[Edge] = []
    origins: dict[str, Origin] = {v: ("vertex", v) for v in g.vertices}
    for e in g.edges:
        if e.length == 1:
            edges.append(e)
            continue
        chain = [e.u]
        for off in range(1, e.length):
            p = _fresh(f"{e.eid}.{off}", used_v)
            vertices.append(p)
            origins[p] = ("interior", e.eid, off)
            chain.append(p)
        chain.append(e.v)
        for k in range(e.length):
            seid = _fresh(f"{e.eid}.s{k + 1}", used_e)
            edges.append(Edge(seid, chain[k], chain[k + 1], 1, SUBDIVISION))
    return MultiGraph(vertices, edges), Provenance(origins)

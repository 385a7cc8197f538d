"""Explorer neighbourhoods.

Expl(v, w) is the union of labelled copies of the two balls of radius r/2
around v and w.  A vertex u is labelled by the set of shortest paths from
the core (the vertices on shortest v-w paths) to u inside the respective
ball; two per-side copies are merged iff they carry equal labels.  Labels
are encoded canonically as (in-ball core distance, edge set of the
shortest-path sub-DAG from the core to u): two path sets are equal iff
these encodings are, and the encoding stays polynomial.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Mapping

from .errors import InputError, VerificationError
from .graph import INF, Ball, Edge, MultiGraph, Radius2, ball, distance

Label = tuple[int, frozenset[str]]


@dataclass(frozen=True)
class Core:
    """All vertices on shortest paths between the base pair."""

    pair: tuple[str, str]
    members: frozenset[str]
    pair_distance: int


def core_vertices(g: MultiGraph, v: str, w: str) -> Core:
    if v not in g or w not in g:
        raise InputError(f"unknown vertex in core_vertices({v!r}, {w!r})")
    dv = g.distances_from(v)
    if w not in dv:
        raise InputError(f"{v!r} and {w!r} lie in different components")
    dw = g.distances_from(w)
    d = dv[w]
    members = frozenset(x for x in dv if x in dw and dv[x] + dw[x] == d)
    return Core(pair=(v, w), members=members, pair_distance=d)


def _in_ball_labels(b: Ball, core: frozenset[str]) -> dict[str, Label]:
    """Core distance and shortest-path sub-DAG edge set, per ball member.

    Multi-source BFS from the core over the kept edges; the sub-DAG of u is
    the union of the sub-DAGs of its BFS predecessors plus the edges from
    them to u, i.e. exactly the edges on shortest in-ball core-to-u paths.
    """
    g = b.graph
    sources = sorted(core & set(b.members))
    cd: dict[str, int] = {s: 0 for s in sources}
    order: list[str] = list(sources)
    queue = deque(sources)
    while queue:
        x = queue.popleft()
        for y, _ in g.adjacency(x):
            if y not in cd:
                cd[y] = cd[x] + 1
                order.append(y)
                queue.append(y)
    missing = set(b.members) - set(cd)
    if missing:
        raise VerificationError(f"ball members unreachable from the core: {sorted(missing)}")
    dag: dict[str, frozenset[str]] = {}
    for u in order:
        if cd[u] == 0:
            dag[u] = frozenset()
            continue
        acc: set[str] = set()
        for x, eid in g.adjacency(u):
            if cd.get(x, -2) == cd[u] - 1:
                acc.add(eid)
                acc |= dag[x]
        dag[u] = frozenset(acc)
    return {u: (cd[u], dag[u]) for u in cd}


@dataclass(frozen=True)
class ExplCopy:
    cid: str
    underlying: str
    label: Label
    sides: frozenset[str]  # subset of {"v", "w"}


@dataclass(frozen=True)
class ExplorerNeighbourhood:
    pair: tuple[str, str]
    r: int | float
    copies: Mapping[str, ExplCopy]
    edges: tuple[tuple[str, str, str, str], ...]  # (expl edge id, underlying eid, cid1, cid2)
    edge_underlying: Mapping[str, str]
    ball_v_copies: frozenset[str]
    ball_w_copies: frozenset[str]
    core: Core
    base_copies: tuple[str, str]
    _graph: MultiGraph = field(repr=False, compare=False)

    @property
    def graph(self) -> MultiGraph:
        """The explorer neighbourhood as a multigraph over copy ids."""
        return self._graph

    def underlying_edge(self, expl_eid: str) -> str:
        return self.edge_underlying[expl_eid]

    def copies_of(self, underlying: str) -> tuple[str, ...]:
        return tuple(sorted(c.cid for c in self.copies.values() if c.underlying == underlying))

    def punctured(self) -> tuple[MultiGraph, tuple[frozenset[str], ...]]:
        """The neighbourhood minus the base pair, with its deterministic
        component partition (sorted by smallest contained underlying id)."""
        pg = self._graph.without_vertices(self.base_copies)
        comps = pg.components()

        def key(comp: frozenset[str]):
            unders = sorted(self.copies[c].underlying for c in comp)
            labels = sorted((self.copies[c].label[0], sorted(self.copies[c].label[1])) for c in comp)
            return (unders[0], unders, labels)

        return pg, tuple(sorted(comps, key=key))


def explorer_neighbourhood(g: MultiGraph, v: str, w: str, r: int | float) -> ExplorerNeighbourhood:
    """Construct Expl(v, w) for parameter r.

    Requires unit lengths, v != w, the pair connected and 2*distance <= r.
    """
    if v == w:
        raise InputError("explorer_neighbourhood needs two distinct base vertices")
    d = distance(g, v, w)
    if d == INF:
        raise InputError(f"{v!r} and {w!r} lie in different components")
    if 2 * d > r:
        raise InputError(f"pair too far apart: 2*d({v},{w}) = {2 * d} > r = {r}")
    core = core_vertices(g, v, w)
    radius2 = Radius2.half_of(r)
    bv = ball(g, v, radius2)
    bw = ball(g, w, radius2)
    lab_v = _in_ball_labels(bv, core.members)
    lab_w = _in_ball_labels(bw, core.members)

    sides: dict[tuple[str, Label], set[str]] = {}
    for u, lab in lab_v.items():
        sides.setdefault((u, lab), set()).add("v")
    for u, lab in lab_w.items():
        sides.setdefault((u, lab), set()).add("w")

    by_under: dict[str, list[tuple[str, Label]]] = {}
    for key in sides:
        by_under.setdefault(key[0], []).append(key)
    cid_of: dict[tuple[str, Label], str] = {}
    copies: dict[str, ExplCopy] = {}
    for u in sorted(by_under):
        variants = sorted(by_under[u], key=lambda k: (k[1][0], sorted(k[1][1])))
        for i, key in enumerate(variants):
            cid = u if len(variants) == 1 else f"{u}#{i}"
            cid_of[key] = cid
            copies[cid] = ExplCopy(cid=cid, underlying=u, label=key[1], sides=frozenset(sides[key]))

    for base in (v, w):
        if len(by_under.get(base, ())) != 1:
            raise VerificationError(f"base vertex {base!r} does not have a unique copy")
    base_copies = (cid_of[(v, lab_v[v])], cid_of[(w, lab_w[w])])

    raw: set[tuple[str, tuple[str, ...]]] = set()
    for labs, b in ((lab_v, bv), (lab_w, bw)):
        for eid in b.kept_edges:
            e = b.graph.edge(eid)
            ends = tuple(sorted({cid_of[(e.u, labs[e.u])], cid_of[(e.v, labs[e.v])]}))
            raw.add((eid, ends))
    raw_list = sorted(raw)
    counts: dict[str, int] = {}
    for eid, _ in raw_list:
        counts[eid] = counts.get(eid, 0) + 1
    expl_edges: list[tuple[str, str, str, str]] = []
    graph_edges: list[Edge] = []
    seen: dict[str, int] = {}
    for eid, ends in raw_list:
        j = seen.get(eid, 0)
        seen[eid] = j + 1
        expl_eid = eid if counts[eid] == 1 else f"{eid}#{j}"
        c1, c2 = ends[0], ends[-1]
        expl_edges.append((expl_eid, eid, c1, c2))
        graph_edges.append(Edge(expl_eid, c1, c2, 1, g.edge(eid).tag))

    graph = MultiGraph(copies.keys(), graph_edges)
    return ExplorerNeighbourhood(
        pair=(v, w),
        r=r,
        copies=copies,
        edges=tuple(expl_edges),
        edge_underlying={x[0]: x[1] for x in expl_edges},
        ball_v_copies=frozenset(cid_of[(u, lab)] for u, lab in lab_v.items()),
        ball_w_copies=frozenset(cid_of[(u, lab)] for u, lab in lab_w.items()),
        core=core,
        base_copies=base_copies,
        _graph=graph,
    )


def punctured_expl(e: ExplorerNeighbourhood) -> tuple[MultiGraph, tuple[frozenset[str], ...]]:
    """Expl(v, w) - v - w together with its component partition."""
    return e.punctured()

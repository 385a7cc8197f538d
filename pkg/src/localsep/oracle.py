"""Independent brute-force checkers.

Nothing here shares logic with the main engine beyond the MultiGraph type:
balls are recomputed from the distance predicate, explorer neighbourhoods
use the literal set-of-shortest-paths labels, cycle enumeration goes
through networkx, and classical connectivity is decided by deleting
vertices.  Any disagreement with the main implementation is a bug.
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field
from typing import Any, Iterable

from .errors import InputError, SurgeryError
from .graph import INF, Edge, MultiGraph, Radius2

SIZE_CAP = 16  # vertices post-subdivision for exhaustive oracle checks
REGRESSION_SIZE_CAP = 24  # the double-ball regression fixture needs ~15-21
R_CAP = 8


@dataclass(frozen=True)
class OracleReport:
    check: str
    instance: str
    verdict: bool
    counterexample: Any = None

    def __post_init__(self) -> None:
        if not self.verdict and self.counterexample is None:
            raise InputError("a failing oracle report needs a counterexample")

    def to_json(self) -> str:
        return json.dumps(
            {
                "check": self.check,
                "instance": self.instance,
                "verdict": "pass" if self.verdict else "fail",
                "counterexample": self.counterexample,
            },
            sort_keys=True,
        )


def _cap(g: MultiGraph, cap: int = SIZE_CAP) -> None:
    if g.n > cap:
        raise InputError(f"oracle size cap exceeded: {g.n} > {cap} vertices")


# -- naive balls ---------------------------------------------------------------


def naive_ball_members(g: MultiGraph, v: str, radius2: Radius2) -> dict[str, int]:
    dist = g.distances_from(v)
    return {x: d for x, d in dist.items() if d <= radius2.hops}


def naive_ball_edges(g: MultiGraph, v: str, radius2: Radius2) -> set[str]:
    members = naive_ball_members(g, v, radius2)
    drop_exact = not radius2.is_infinite and radius2.value % 2 == 0
    out = set()
    for e in g.edges:
        if e.u in members and e.v in members:
            if drop_exact and members[e.u] == radius2.hops and members[e.v] == radius2.hops:
                continue
            out.add(e.eid)
    return out


def naive_punctured_components(g: MultiGraph, v: str, radius2: Radius2) -> list[frozenset[str]]:
    members = set(naive_ball_members(g, v, radius2)) - {v}
    kept = {
        eid
        for eid in naive_ball_edges(g, v, radius2)
        if v not in g.edge(eid).ends
    }
    return _components(members, [(g.edge(e).u, g.edge(e).v) for e in kept])


def _components(vertices: Iterable[str], edges: list[tuple[str, str]]) -> list[frozenset[str]]:
    vs = set(vertices)
    adj: dict[str, set[str]] = {v: set() for v in vs}
    for u, w in edges:
        if u in vs and w in vs:
            adj[u].add(w)
            adj[w].add(u)
    seen: set[str] = set()
    comps = []
    for v in sorted(vs):
        if v in seen:
            continue
        comp = {v}
        stack = [v]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in comp:
                    comp.add(y)
                    stack.append(y)
        seen |= comp
        comps.append(frozenset(comp))
    return sorted(comps, key=min)


# -- naive explorer neighbourhood (literal path-set labels) ---------------------


def _shortest_path_sets(g: MultiGraph, ball_edges: set[str], members: dict[str, int], core: set[str]):
    """For every ball member: the set of all shortest paths from the core,
    each path recorded as (start vertex, tuple of edge ids)."""
    adj: dict[str, list[tuple[str, str]]] = {v: [] for v in members}
    for eid in ball_edges:
        e = g.edge(eid)
        adj[e.u].append((e.v, eid))
        if not e.is_loop():
            adj[e.v].append((e.u, eid))
    sources = sorted(core & set(members))
    cd = {s: 0 for s in sources}
    frontier = list(sources)
    while frontier:
        nxt = []
        for x in frontier:
            for y, _ in adj[x]:
                if y not in cd:
                    cd[y] = cd[x] + 1
                    nxt.append(y)
        frontier = nxt
    paths: dict[str, frozenset] = {}

    def build(u: str) -> frozenset:
        if u in paths:
            return paths[u]
        if cd[u] == 0:
            out = frozenset({(u, ())})
        else:
            acc = set()
            for x, eid in adj[u]:
                if cd.get(x, -2) == cd[u] - 1:
                    for start, es in build(x):
                        acc.add((start, es + (eid,)))
            out = frozenset(acc)
        paths[u] = out
        return out

    for u in sorted(cd, key=lambda t: cd[t]):
        build(u)
    return cd, paths


def naive_expl(g: MultiGraph, v: str, w: str, r: int | float):
    """Explorer neighbourhood with vertices labelled by their literal sets
    of shortest in-ball paths from the core; returns (copies, edges) where
    copies maps (underlying, label) -> sides."""
    dv = g.distances_from(v)
    dw = g.distances_from(w)
    d = dv.get(w, INF)
    if v == w or d == INF or 2 * d > r:
        raise InputError("invalid explorer pair")
    core = {x for x in dv if x in dw and dv[x] + dw[x] == d}
    radius2 = Radius2.half_of(r)
    out_copies: dict[tuple[str, frozenset], set[str]] = {}
    ball_data = {}
    for side, base in (("v", v), ("w", w)):
        members = naive_ball_members(g, base, radius2)
        edges = naive_ball_edges(g, base, radius2)
        _, paths = _shortest_path_sets(g, edges, members, core)
        ball_data[side] = (members, edges, paths)
        for u in members:
            out_copies.setdefault((u, paths[u]), set()).add(side)
    copy_edges = set()
    for side, (members, edges, paths) in ball_data.items():
        for eid in edges:
            e = g.edge(eid)
            copy_edges.add((eid, frozenset({(e.u, paths[e.u]), (e.v, paths[e.v])})))
    return out_copies, copy_edges, core


def oracle_separator(g: MultiGraph, v: str, w: str, r: int | float) -> bool:
    """Independent verdict: is {v, w} an r-local 2-separator?"""
    _cap(g)
    dv = g.distances_from(v)
    if w not in dv or 2 * dv[w] > r or v == w:
        return False
    copies, copy_edges, _core = naive_expl(g, v, w, r)
    keys = [k for k in copies if k[0] not in (v, w)]
    edges = []
    for _eid, ends in copy_edges:
        pair = sorted(ends, key=lambda k: (k[0], sorted(map(repr, k[1]))))
        a, b = pair[0], pair[-1]
        if a[0] in (v, w) or b[0] in (v, w):
            continue
        edges.append((a, b))
    idx = {k: f"c{i}" for i, k in enumerate(sorted(keys, key=lambda k: (k[0], sorted(map(repr, k[1])))))}
    comps = _components(idx.values(), [(idx[a], idx[b]) for a, b in edges])
    return len(comps) >= 2


def oracle_cutvertex(g: MultiGraph, v: str, r: int | float) -> bool:
    _cap(g)
    return len(naive_punctured_components(g, v, Radius2.half_of(r))) >= 2


# -- classical consistency -------------------------------------------------------


def classical_cutvertices(g: MultiGraph) -> list[str]:
    out = []
    base = len(g.components())
    for v in g.vertices:
        h = g.without_vertices([v])
        if len(h.components()) > base - (1 if len(g.component_of(v)) == 1 else 0):
            out.append(v)
    return out


def classical_2_separators(g: MultiGraph) -> list[tuple[str, str]]:
    out = []
    base = len(g.components())
    for v, w in itertools.combinations(g.vertices, 2):
        h = g.without_vertices([v, w])
        if h.n and len(h.components()) > base:
            out.append((v, w))
    return out


def oracle_classical(g: MultiGraph, budget: int | None = None) -> list[OracleReport]:
    """r = infinity consistency: infinity-local notions against classical
    ones, plus the classical 2-separator theorem on the canonical torsos."""
    from .decomposition import canonical_decomposition, is_cycle_graph, torso
    from .graph import subdivide
    from .separators import enumerate_local_2_separators, enumerate_local_cutvertices

    _cap(g)
    reports = []
    inf_cut = sorted(s.vertices[0] for s in enumerate_local_cutvertices(g, INF))
    cls_cut = sorted(classical_cutvertices(g))
    reports.append(
        OracleReport(
            "classical_cutvertices",
            f"n={g.n},m={g.m}",
            inf_cut == cls_cut,
            None if inf_cut == cls_cut else {"local": inf_cut, "classical": cls_cut},
        )
    )
    if not classical_cutvertices(g) and g.is_connected() and g.n >= 3:
        inf_sep = sorted(s.pair for s in enumerate_local_2_separators(g, INF, budget=budget))
        cls_sep = sorted(classical_2_separators(g))
        reports.append(
            OracleReport(
                "classical_2_separators",
                f"n={g.n},m={g.m}",
                inf_sep == cls_sep,
                None if inf_sep == cls_sep else {"local": inf_sep, "classical": cls_sep},
            )
        )
        d, _cert = canonical_decomposition(g, INF, budget=budget)
        ok = True
        bad = None
        for bid in d.bag_ids():
            t = torso(d, bid)
            tsub, _ = subdivide(t)
            if is_cycle_graph(t):
                continue
            if classical_2_separators(tsub):
                ok = False
                bad = bid
                break
        reports.append(
            OracleReport("classical_torsos", f"n={g.n},m={g.m}", ok, bad)
        )
    return reports


# -- commutation ------------------------------------------------------------------


def to_networkx(g: MultiGraph):
    import networkx as nx

    ng = nx.MultiGraph()
    for v in g.vertices:
        ng.add_node(v)
    for e in g.edges:
        ng.add_edge(e.u, e.v, key=e.eid, length=e.length)
    return ng


def provenance_isomorphic(g1: MultiGraph, root1, g2: MultiGraph, root2) -> bool:
    """Isomorphism respecting root labels and edge lengths."""
    import networkx as nx
    from networkx.algorithms import isomorphism as iso

    n1, n2 = to_networkx(g1), to_networkx(g2)
    for v in g1.vertices:
        n1.nodes[v]["root"] = root1(v)
    for v in g2.vertices:
        n2.nodes[v]["root"] = root2(v)
    gm = iso.MultiGraphMatcher(
        n1,
        n2,
        node_match=lambda a, b: a["root"] == b["root"],
        edge_match=lambda a, b: sorted(x["length"] for x in a.values())
        == sorted(x["length"] for x in b.values()),
    )
    return gm.is_isomorphic()


def oracle_commute(
    g: MultiGraph,
    seps: list[tuple[str, str]],
    r: int | float,
    trials: int = 10,
    seed: int = 0,
    budget: int | None = None,
) -> OracleReport:
    """Cut along random permutations of a non-crossing family; all results
    must be provenance-isomorphic (and normally identical)."""
    from .separators import crosses
    from .surgery import cut_all

    for i in range(len(seps)):
        for j in range(i + 1, len(seps)):
            if crosses(g, seps[i], seps[j], r, budget=budget).crossing:
                raise SurgeryError(f"separators {seps[i]} and {seps[j]} cross")
    rng = random.Random(seed)
    ref, _ = cut_all(g, seps, r, verify=False, budget=budget)
    instance = f"n={g.n},m={g.m},k={len(seps)}"
    for t in range(trials):
        order = list(seps)
        rng.shuffle(order)
        alt, _ = cut_all(g, order, r, verify=False, budget=budget, keep_order=True)
        if alt.graph == ref.graph:
            continue
        if not provenance_isomorphic(
            alt.graph, alt.provenance.root, ref.graph, ref.provenance.root
        ):
            return OracleReport(
                "cuttings_commute", instance, False, {"order": order, "trial": t}
            )
    return OracleReport("cuttings_commute", instance, True)


# -- double-ball regression --------------------------------------------------------


def double_ball_punctured_components(
    g: MultiGraph, v: str, w: str, r: int | float
) -> list[frozenset[str]]:
    """Components of (B_{r/2}(v) u B_{r/2}(w)) - v - w."""
    radius2 = Radius2.half_of(r)
    members = set(naive_ball_members(g, v, radius2)) | set(naive_ball_members(g, w, radius2))
    edges = naive_ball_edges(g, v, radius2) | naive_ball_edges(g, w, radius2)
    members -= {v, w}
    pairs = []
    for eid in edges:
        e = g.edge(eid)
        if v in e.ends or w in e.ends:
            continue
        pairs.append((e.u, e.v))
    return _components(members, pairs)


def is_double_ball_separator(g: MultiGraph, v: str, w: str, r: int | float) -> bool:
    dv = g.distances_from(v)
    if v == w or w not in dv or 2 * dv[w] > r:
        return False
    return len(double_ball_punctured_components(g, v, w, r)) >= 2


def fig6_fixture(r: int = 6) -> tuple[MultiGraph, tuple[str, str], tuple[str, str], int]:
    """Two crossing local separators on a cycle of length r, with a strip
    joining a neighbour of a1 to a neighbour of b1.

    The strip length is searched until the punctured double-balls of the
    two separators are disconnected while the punctured double-ball of the
    corner {a1, b1} is connected; raises when no length works.
    """
    from .separators import crosses, is_local_2_separator

    if r < 6 or r % 2 != 0:
        raise InputError("the regression fixture needs an even r >= 6")
    arc = (r - 2) // 2  # length of each of the two long arcs a1..b1 and b1..a2
    base_cycle = ["a1"]
    base_cycle += [f"q{i}" for i in range(1, arc)]
    base_cycle += ["b1"]
    base_cycle += [f"p{i}" for i in range(1, arc)]
    base_cycle += ["a2", "b2"]
    x_a, x_b = "q1", "p1"  # strip endpoints: neighbours of a1 and b1
    for L in range(2, 3 * r):
        vertices = list(base_cycle)
        pairs = [(base_cycle[i], base_cycle[(i + 1) % len(base_cycle)]) for i in range(len(base_cycle))]
        prev = x_a
        for i in range(1, L):
            u = f"u{i}"
            vertices.append(u)
            pairs.append((prev, u))
            prev = u
        pairs.append((prev, x_b))
        g = MultiGraph(vertices, [Edge(f"e{i}", a, b) for i, (a, b) in enumerate(pairs)])
        a_pair, b_pair = ("a1", "a2"), ("b1", "b2")
        if not (
            is_local_2_separator(g, *a_pair, r)[0]
            and is_local_2_separator(g, *b_pair, r)[0]
        ):
            continue
        if not crosses(g, a_pair, b_pair, r).crossing:
            continue
        if not is_double_ball_separator(g, *a_pair, r):
            continue
        if not is_double_ball_separator(g, *b_pair, r):
            continue
        if is_double_ball_separator(g, "a1", "b1", r):
            continue
        return g, a_pair, b_pair, L
    raise SurgeryError(f"no strip length realizes the regression conditions for r={r}")


def _real_pairs(sub: MultiGraph, cut_prov) -> list[tuple[str, str]]:
    real = [v for v in sub.vertices if cut_prov(v)]
    return list(itertools.combinations(sorted(real), 2))


@dataclass(frozen=True)
class RegressionResult:
    """Projection behaviour of the cut graph's separators under both
    separator notions: pairs whose double-ball (resp. explorer) separator
    status fails to project back to the input graph."""

    cut_pair: tuple[str, str]
    double_ball_failures: tuple
    expl_failures: tuple

    def reports(self, expect_regression: bool) -> list[OracleReport]:
        instance = f"cut={self.cut_pair}"
        out = [
            OracleReport(
                "expl_projection_holds",
                instance,
                not self.expl_failures,
                list(self.expl_failures) or None,
            )
        ]
        if expect_regression:
            out.append(
                OracleReport(
                    "double_ball_projection_fails",
                    instance,
                    bool(self.double_ball_failures),
                    None if self.double_ball_failures else "no failing pair found",
                )
            )
        else:
            out.append(
                OracleReport(
                    "double_ball_projection_agrees",
                    instance,
                    not self.double_ball_failures,
                    list(self.double_ball_failures) or None,
                )
            )
        return out


def oracle_double_ball_regression(
    g: MultiGraph,
    pairs: list[tuple[str, str]],
    r: int | float,
    budget: int | None = None,
) -> RegressionResult:
    """Cut at the last given separator; then check whether double-ball
    separators of the cut graph project to double-ball separators of g
    (they need not), while explorer-based separators always project."""
    from .graph import subdivide
    from .separators import is_local_2_separator
    from .surgery import cut_2separator

    _cap(g, REGRESSION_SIZE_CAP)
    cut_pair = tuple(sorted(pairs[-1]))
    cut = cut_2separator(g, cut_pair, r, budget=budget)
    sub, sprov = subdivide(cut.graph)
    _cap(sub, REGRESSION_SIZE_CAP)

    def real(v: str) -> bool:
        return sprov.origin(v)[0] == "vertex"

    def project(v: str) -> str:
        return cut.provenance.root(v)

    db_failures = []
    expl_failures = []
    for x, y in _real_pairs(sub, real):
        px, py = project(x), project(y)
        if px == py:
            continue
        if is_double_ball_separator(sub, x, y, r) and not is_double_ball_separator(g, px, py, r):
            db_failures.append(((x, y), (px, py)))
        ok_cut, _ = is_local_2_separator(sub, x, y, r, budget=budget)
        if ok_cut:
            ok_orig, _ = is_local_2_separator(g, px, py, r, budget=budget)
            if not ok_orig:
                expl_failures.append(((x, y), (px, py)))
    return RegressionResult(cut_pair, tuple(db_failures), tuple(expl_failures))

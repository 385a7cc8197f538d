"""Graph rewriting: local cutting at vertices and 2-separators, lifts,
iterated cutting along a non-crossing family, local 2-sums, identification.

Slice ids are deterministic: slice(v, x) is named `v@<fp>` where <fp>
fingerprints the local component x by the root tokens of its underlying
vertices.  Root tokens survive iterated cutting, so commuting cut orders
produce identically labelled graphs whenever the fingerprints agree.
"""

from __future__ import annotations

import hashlib
import warnings
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .cycles import Cycle, find_cycle_through_pair
from .errors import (
    InputError,
    NotASeparatorError,
    SumError,
    SurgeryError,
    UnitLengthError,
    VerificationError,
)
from .explorer import ExplorerNeighbourhood, explorer_neighbourhood
from .graph import (
    INF,
    TORSO,
    Edge,
    MultiGraph,
    Provenance,
    Radius2,
    distance,
    punctured_ball,
    subdivide,
)


def _fp(material: Iterable[str]) -> str:
    return hashlib.sha1("|".join(material).encode()).hexdigest()[:8]


def _fresh(name: str, used: set[str]) -> str:
    while name in used:
        name = "~" + name
    used.add(name)
    return name


@dataclass(frozen=True)
class TorsoRecord:
    """One torso edge: its id, the separator it belongs to (as a pair of
    vertices of the graph the pipeline started from), the local-component
    index it closes ("d<k>" for artificial digon components), its weight."""

    eid: str
    separator: tuple[str, str]
    component: int | str
    weight: int


@dataclass(frozen=True)
class CutResult:
    graph: MultiGraph
    provenance: Provenance
    torso_edges: tuple[TorsoRecord, ...]
    artificial_components: tuple[str, ...]  # ids of the edges moved into digons

    def slices_of(self, base: str) -> tuple[str, ...]:
        out = [
            v
            for v in self.graph.vertices
            if self.provenance.origin(v)[0] == "slice" and self.provenance.origin(v)[1] == base
        ]
        return tuple(sorted(out))


def _identity_cut(g: MultiGraph) -> CutResult:
    return CutResult(g, Provenance.identity(g), (), ())


# -- vertex cutting -----------------------------------------------------------


def cut_vertex(
    g: MultiGraph,
    v: str,
    r: int | float,
    roots: Mapping[str, str] | None = None,
) -> CutResult:
    """Replace v by one slice per component of the punctured ball B_{r/2}(v)-v.

    Each slice inherits the edges whose other endvertex lies in its
    component.  Loops at v are rejected; for a non-cutvertex the input graph
    is returned unchanged.
    """
    if v not in g:
        raise InputError(f"unknown vertex {v!r}")
    if r != INF and r < 2:
        raise InputError("cut_vertex needs r >= 2 so neighbours stay inside the ball")
    if g.loops_at(v):
        raise SurgeryError(f"cut_vertex: loop at {v!r}; slice inheritance is undefined")
    if not g.is_unit:
        raise UnitLengthError("cut_vertex needs unit edge lengths")
    pb = punctured_ball(g, v, Radius2.half_of(r))
    comps = pb.components()
    if len(comps) <= 1:
        return _identity_cut(g)
    rootmap = roots or {}
    comp_of: dict[str, int] = {}
    for i, comp in enumerate(comps):
        for x in comp:
            comp_of[x] = i

    used = set(g.vertices)
    slice_ids: list[str] = []
    for i, comp in enumerate(comps):
        fp = _fp(sorted(rootmap.get(x, x) for x in comp))
        slice_ids.append(_fresh(f"{v}@{fp}", used))

    vertices = [x for x in g.vertices if x != v] + slice_ids
    edges: list[Edge] = []
    for e in g.edges:
        if v not in e.ends:
            edges.append(e)
            continue
        other = e.other(v)
        s = slice_ids[comp_of[other]]
        edges.append(Edge(e.eid, s, other, e.length, e.tag))
    origins = {x: ("vertex", x) for x in g.vertices if x != v}
    for i, s in enumerate(slice_ids):
        origins[s] = ("slice", v, i)
    return CutResult(MultiGraph(vertices, edges), Provenance(origins), (), ())


# -- 2-separator cutting ------------------------------------------------------


def _min_detour(
    expl: ExplorerNeighbourhood,
    avoid_copies: frozenset[str] = frozenset(),
    avoid_edges: frozenset[str] = frozenset(),
) -> int | float:
    """Shortest path length between the two base copies in the explorer
    neighbourhood, avoiding the given copies and explorer edges."""
    s, t = expl.base_copies
    graph = expl.graph
    if s in avoid_copies or t in avoid_copies:
        return INF
    dist = {s: 0}
    queue = deque([s])
    while queue:
        x = queue.popleft()
        if x == t:
            return dist[x]
        for y, eid in graph.adjacency(x):
            if y in avoid_copies or eid in avoid_edges or y in dist:
                continue
            dist[y] = dist[x] + 1
            queue.append(y)
    return dist.get(t, INF)


def _check_torso_weights(weights: Sequence[int]) -> None:
    # all but at most one of the weights must coincide
    if len(weights) <= 2:
        return
    from collections import Counter

    counts = Counter(weights)
    most = counts.most_common(1)[0][1]
    if len(weights) - most > 1:
        raise VerificationError(f"torso weights {sorted(weights)} differ in more than one place")


def _assert_cut_far(result: MultiGraph, slice_groups: Mapping[str, Sequence[str]], r: int | float) -> None:
    sub, _ = subdivide(result)
    for base, slices in slice_groups.items():
        for i in range(len(slices)):
            di = sub.distances_from(slices[i])
            for j in range(i + 1, len(slices)):
                d = di.get(slices[j], INF)
                if d == INF:
                    continue
                if r == INF or d < r + 1:
                    raise VerificationError(
                        f"slices of {base!r} at distance {d} < r+1 after cutting"
                    )


def cut_2separator(
    g: MultiGraph,
    pair: tuple[str, str],
    r: int | float,
    roots: Mapping[str, str] | None = None,
    budget: int | None = None,
) -> CutResult:
    """r-locally cut the 2-separator {v0, v1}.

    Each of v0, v1 becomes one slice per local component; a weighted torso
    edge closes every slice pair, its weight the shortest detour between the
    base copies in the explorer neighbourhood avoiding that component.  An
    edge v0v1 moves into a fresh digon component together with a parallel
    torso edge weighted by the shortest detour avoiding the edge itself.
    """
    v0, v1 = sorted(pair)
    if v0 == v1:
        raise InputError("cut_2separator needs two distinct vertices")
    if g.loops_at(v0) or g.loops_at(v1):
        raise SurgeryError("cut_2separator: loop at a separator vertex is undefined")
    if not g.is_unit:
        raise UnitLengthError("cut_2separator needs unit edge lengths")
    expl = explorer_neighbourhood(g, v0, v1, r)
    _, comps = expl.punctured()
    if len(comps) < 2:
        raise NotASeparatorError(f"{{{v0}, {v1}}} is not an r-local 2-separator for r={r}")
    rootmap = roots or {}

    # neighbours of the separator have unique copies, so membership of a
    # neighbour in a local component is well defined at the underlying level
    comp_of_copy: dict[str, int] = {}
    for i, comp in enumerate(comps):
        for cid in comp:
            comp_of_copy[cid] = i

    def comp_of_neighbour(x: str) -> int:
        cids = expl.copies_of(x)
        hits = {comp_of_copy[c] for c in cids if c in comp_of_copy}
        if len(hits) != 1:
            raise VerificationError(f"neighbour {x!r} lacks a unique local component")
        return hits.pop()

    used_v = set(g.vertices)
    slices: dict[tuple[str, int], str] = {}
    comp_fps: list[str] = []
    for i, comp in enumerate(comps):
        fp = _fp(sorted(rootmap.get(expl.copies[c].underlying, expl.copies[c].underlying) for c in comp))
        comp_fps.append(fp)
        for base in (v0, v1):
            slices[(base, i)] = _fresh(f"{base}@{fp}", used_v)

    digon_edges = sorted(g.edges_between(v0, v1))
    digon_pairs: list[tuple[str, str, str]] = []
    for k, eid in enumerate(digon_edges):
        fp = _fp(("digon", rootmap.get(v0, v0), rootmap.get(v1, v1), eid))
        d0 = _fresh(f"{v0}@{fp}", used_v)
        d1 = _fresh(f"{v1}@{fp}", used_v)
        digon_pairs.append((eid, d0, d1))

    vertices = [x for x in g.vertices if x not in (v0, v1)]
    vertices += sorted(slices.values())
    for _, d0, d1 in digon_pairs:
        vertices += [d0, d1]

    digon_of = {eid: (d0, d1) for eid, d0, d1 in digon_pairs}
    edges: list[Edge] = []
    for e in g.edges:
        if v0 not in e.ends and v1 not in e.ends:
            edges.append(e)
        elif e.ends == frozenset((v0, v1)):
            d0, d1 = digon_of[e.eid]
            edges.append(Edge(e.eid, d0, d1, e.length, e.tag))
        else:
            base = v0 if v0 in e.ends else v1
            other = e.other(base)
            s = slices[(base, comp_of_neighbour(other))]
            edges.append(Edge(e.eid, s, other, e.length, e.tag))

    rv0, rv1 = rootmap.get(v0, v0), rootmap.get(v1, v1)
    used_e = {e.eid for e in g.edges}
    records: list[TorsoRecord] = []
    weights: list[int] = []
    for i, comp in enumerate(comps):
        w = _min_detour(expl, avoid_copies=comp)
        if w == INF:
            raise SurgeryError(
                f"no detour between {v0!r} and {v1!r} around local component {i}; "
                "the torso weight is undefined"
            )
        teid = _fresh(f"t:{rv0}~{rv1}@{comp_fps[i]}", used_e)
        edges.append(Edge(teid, slices[(v0, i)], slices[(v1, i)], int(w), TORSO))
        records.append(TorsoRecord(teid, (v0, v1), i, int(w)))
        weights.append(int(w))
    for k, (eid, d0, d1) in enumerate(digon_pairs):
        expl_eids = frozenset(x[0] for x in expl.edges if x[1] == eid)
        w = _min_detour(expl, avoid_edges=expl_eids)
        if w == INF:
            # degenerate: no detour exists at all; fall back to the edge length
            w = g.edge(eid).length
        teid = _fresh(f"t:{rv0}~{rv1}@dg{k}", used_e)
        edges.append(Edge(teid, d0, d1, int(w), TORSO))
        records.append(TorsoRecord(teid, (v0, v1), f"d{k}", int(w)))
        weights.append(int(w))
    _check_torso_weights(weights)

    origins: dict[str, tuple] = {x: ("vertex", x) for x in g.vertices if x not in (v0, v1)}
    for (base, i), s in slices.items():
        origins[s] = ("slice", base, i)
    for k, (eid, d0, d1) in enumerate(digon_pairs):
        origins[d0] = ("slice", v0, f"d{k}")
        origins[d1] = ("slice", v1, f"d{k}")

    result = MultiGraph(vertices, edges)
    groups = {
        v0: sorted([slices[(v0, i)] for i in range(len(comps))] + [d0 for _, d0, _ in digon_pairs]),
        v1: sorted([slices[(v1, i)] for i in range(len(comps))] + [d1 for _, _, d1 in digon_pairs]),
    }
    _assert_cut_far(result, groups, r)
    return CutResult(result, Provenance(origins), tuple(records), tuple(e for e, _, _ in digon_pairs))


# -- lifts --------------------------------------------------------------------


@dataclass(frozen=True)
class Lift:
    pair: tuple[str, str]
    witness: Cycle  # cycle of length <= r in the subdivided cut graph


def _lift_candidates(cut: CutResult, base: str) -> tuple[str, ...]:
    if base in cut.graph:
        return (base,)
    return cut.slices_of(base)


def lift(
    g: MultiGraph,
    cut: CutResult,
    sep: tuple[str, str],
    r: int | float,
    verify: bool = True,
    budget: int | None = None,
) -> Lift:
    """The unique pair of cut-graph vertices that are the separator's
    vertices or slices thereof and lie on a common cycle of length <= r."""
    b1, b2 = sorted(sep)
    if not cut.torso_edges:
        raise InputError("lift needs the result of a 2-separator cut")
    cut_sep = cut.torso_edges[0].separator
    for t in cut.torso_edges:
        if frozenset(t.separator) == frozenset((b1, b2)):
            raise InputError("lift of a separator that was already cut is undefined")
    if verify:
        from .separators import crosses, is_local_2_separator

        ok, _ = is_local_2_separator(g, b1, b2, r, budget=budget)
        if not ok:
            raise NotASeparatorError(f"{{{b1}, {b2}}} is not an r-local 2-separator")
        rep = crosses(g, cut_sep, (b1, b2), r, budget=budget)
        if rep.crossing:
            raise SurgeryError(f"{{{b1}, {b2}}} is crossed by the cut separator {cut_sep}")
    sub, _ = subdivide(cut.graph)
    found: list[Lift] = []
    for x in _lift_candidates(cut, b1):
        for y in _lift_candidates(cut, b2):
            witness = find_cycle_through_pair(sub, x, y, r, budget=budget)
            if witness is not None:
                found.append(Lift((x, y), witness))
    if not found:
        raise SurgeryError(f"no lift witness cycle of length <= {r} for {{{b1}, {b2}}}")
    if len(found) > 1:
        raise VerificationError(f"lift of {{{b1}, {b2}}} is not unique: {[f.pair for f in found]}")
    return found[0]


# -- cutting along a set ------------------------------------------------------


@dataclass(frozen=True)
class CutStep:
    separator: tuple[str, str]  # pair of the original graph
    cut_pair: tuple[str, str]  # pair actually cut, in the graph of that round
    torso: tuple[TorsoRecord, ...]
    digons: tuple[str, ...]


def _recontract(
    cur: MultiGraph,
    prov_to_g: Provenance,
    torso_weight_tags: set[str],
) -> tuple[MultiGraph, Provenance]:
    """Collapse maximal chains of interior points back into weighted edges."""
    interior = {v for v in cur.vertices if prov_to_g.origin(v)[0] == "interior"}
    if not interior:
        return cur, prov_to_g
    vertices = [v for v in cur.vertices if v not in interior]
    edges: list[Edge] = [e for e in cur.edges if e.u not in interior and e.v not in interior]
    done: set[str] = set()
    for p in sorted(interior):
        if p in done:
            continue
        if cur.degree(p) != 2:
            raise VerificationError(f"interior point {p!r} has degree {cur.degree(p)}")
        # walk to both real endpoints
        done.add(p)
        ends: list[str] = []
        length = 0
        for x, _eid in cur.adjacency(p):
            prev = p
            nxt = x
            length += 1
            while nxt in interior:
                done.add(nxt)
                nbrs = [y for y, _ in cur.adjacency(nxt) if y != prev]
                step = nbrs[0] if nbrs else prev
                prev, nxt = nxt, step
                length += 1
            ends.append(nxt)
        eid = prov_to_g.origin(p)[1]
        a, b = sorted(ends)
        if a == b:
            raise VerificationError(f"interior chain of {eid!r} closed into a loop")
        if eid not in torso_weight_tags:
            raise VerificationError(f"interior chain of unexpected edge {eid!r}")
        edges.append(Edge(eid, a, b, length, TORSO))
    g2 = MultiGraph(vertices, edges)
    origins = {v: prov_to_g.origin(v) for v in vertices}
    return g2, Provenance(origins)


def cut_all(
    g: MultiGraph,
    seps: Sequence[tuple[str, str]],
    r: int | float,
    verify: bool = True,
    budget: int | None = None,
    keep_order: bool = False,
) -> tuple[CutResult, tuple[CutStep, ...]]:
    """Iterated 2-separator cutting along a pairwise non-crossing family.

    Separators are processed in sorted order (or as given, with
    `keep_order`); each later separator is located in the current graph
    through its unique lift.  Weighted torso edges are subdivided between
    rounds so every cut sees a unit graph; the final result is reported
    with those chains contracted back into weighted torso edges.
    """
    if not g.is_unit:
        raise UnitLengthError("cut_all needs a unit input graph")
    ordered = [tuple(sorted(s)) for s in seps]
    seps = ordered if keep_order else sorted(ordered)
    if len(set(map(frozenset, seps))) != len(seps):
        raise InputError("duplicate separator in cut_all")
    if verify:
        from .separators import crosses, is_local_2_separator, is_locally_2_connected

        for s in seps:
            ok, _ = is_local_2_separator(g, s[0], s[1], r, budget=budget)
            if not ok:
                raise NotASeparatorError(f"{set(s)} is not an r-local 2-separator of the input")
        for i in range(len(seps)):
            for j in range(i + 1, len(seps)):
                if crosses(g, seps[i], seps[j], r, budget=budget).crossing:
                    raise SurgeryError(f"separators {set(seps[i])} and {set(seps[j])} cross")
        if not is_locally_2_connected(g, r, budget=budget):
            warnings.warn("cut_all input is not r-locally 2-connected; theorem-level "
                          "guarantees do not apply", stacklevel=2)

    cur = g
    prov_acc = Provenance.identity(g)
    rootmap = {v: v for v in g.vertices}
    steps: list[CutStep] = []
    all_records: list[TorsoRecord] = []
    artificial: list[str] = []
    torso_eids: set[str] = set()
    for sep in seps:
        if not steps:
            pair = sep
            witness = None
        else:
            partial = CutResult(cur, prov_acc, tuple(all_records), tuple(artificial))
            lifted = lift(g, partial, sep, r, verify=False, budget=budget)
            pair = lifted.pair
        res = cut_2separator(cur, pair, r, roots=rootmap, budget=budget)
        # re-root the records at the original separator pair
        records = tuple(
            TorsoRecord(t.eid, sep, t.component, t.weight) for t in res.torso_edges
        )
        all_records.extend(records)
        artificial.extend(res.artificial_components)
        torso_eids.update(t.eid for t in records)
        steps.append(CutStep(sep, tuple(sorted(pair)), records, res.artificial_components))

        prov_acc = res.provenance.compose(prov_acc)
        sub, sprov = subdivide(res.graph)
        prov_acc = sprov.compose(prov_acc)
        cur = sub
        rootmap = {}
        for v in cur.vertices:
            org = prov_acc.origin(v)
            rootmap[v] = org[1] if org[0] in ("vertex", "slice") else f"{org[1]}:{org[2]}"

    final, prov_final = _recontract(cur, prov_acc, torso_eids)
    result = CutResult(final, prov_final, tuple(all_records), tuple(artificial))
    return result, tuple(steps)


# -- local 2-sums -------------------------------------------------------------


@dataclass(frozen=True)
class SumEntry:
    host: MultiGraph
    eid: str
    start: str  # the start endpoint of the directed gluing edge


@dataclass(frozen=True)
class SumSpec:
    entries: tuple[SumEntry, ...]
    r: int | float


def local_2_sum(spec: SumSpec) -> MultiGraph:
    """Glue a family of graphs along directed edges: identify all start
    vertices, identify all terminal vertices, delete the gluing edges.

    Validity: each gluing edge's length must equal the minimum over the
    other entries of the shortest path between that entry's endpoints in
    its host minus the edge.  r-locality: same-host start (and terminal)
    vertices must be at distance >= r+1.
    """
    entries = spec.entries
    if len(entries) < 2:
        raise SumError("a local 2-sum needs at least two gluing edges (delta is undefined otherwise)")

    hosts: list[MultiGraph] = []
    host_idx: list[int] = []
    for ent in entries:
        for i, h in enumerate(hosts):
            if h == ent.host:
                host_idx.append(i)
                break
        else:
            hosts.append(ent.host)
            host_idx.append(len(hosts) - 1)

    seen: set[tuple[int, str]] = set()
    gammas: list[int | float] = []
    starts: list[tuple[int, str]] = []
    terminals: list[tuple[int, str]] = []
    for ent, hi in zip(entries, host_idx):
        h = hosts[hi]
        if not h.has_edge(ent.eid):
            raise SumError(f"gluing edge {ent.eid!r} is not in its host")
        if (hi, ent.eid) in seen:
            raise SumError(f"duplicate gluing edge {ent.eid!r}")
        seen.add((hi, ent.eid))
        e = h.edge(ent.eid)
        if e.is_loop():
            raise SumError(f"gluing edge {ent.eid!r} is a loop")
        if ent.start not in e.ends:
            raise SumError(f"{ent.start!r} is not an endpoint of {ent.eid!r}")
        rest = h.subgraph(h.vertices, [f.eid for f in h.edges if f.eid != ent.eid])
        gammas.append(distance(rest, e.u, e.v))
        starts.append((hi, ent.start))
        terminals.append((hi, e.other(ent.start)))

    for i, (ent, hi) in enumerate(zip(entries, host_idx)):
        delta = min(gammas[j] for j in range(len(entries)) if j != i)
        length = hosts[hi].edge(ent.eid).length
        if length != delta:
            raise SumError(
                f"gluing edge {ent.eid!r} has length {length}, but delta = {delta}"
            )

    for group in (starts, terminals):
        for i in range(len(group)):
            for j in range(i + 1, len(group)):
                hi, x = group[i]
                hj, y = group[j]
                if hi != hj or x == y:
                    continue
                d = distance(hosts[hi], x, y)
                if spec.r == INF or d < spec.r + 1:
                    raise SumError(
                        f"r-locality violated: {x!r} and {y!r} are at distance {d} < r+1"
                    )

    # disjoint union of the distinct hosts, renaming only on collision
    rename: list[dict[str, str]] = []
    used_v: set[str] = set()
    used_e: set[str] = set()
    need_prefix = False
    if len(hosts) > 1:
        all_v: list[str] = []
        all_e: list[str] = []
        for h in hosts:
            all_v.extend(h.vertices)
            all_e.extend(e.eid for e in h.edges)
        need_prefix = len(set(all_v)) != len(all_v) or len(set(all_e)) != len(all_e)
    vertices: list[str] = []
    edges: list[Edge] = []
    emap: list[dict[str, str]] = []
    for k, h in enumerate(hosts):
        vmap = {}
        for v in h.vertices:
            nv = f"g{k}.{v}" if need_prefix else v
            vmap[v] = nv
            vertices.append(nv)
        rename.append(vmap)
        em = {}
        for e in h.edges:
            ne = f"g{k}.{e.eid}" if need_prefix else e.eid
            em[e.eid] = ne
            edges.append(Edge(ne, vmap[e.u], vmap[e.v], e.length, e.tag))
        emap.append(em)

    parent: dict[str, str] = {v: v for v in vertices}

    def find(x: str) -> str:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x: str, y: str) -> None:
        rx, ry = find(x), find(y)
        if rx != ry:
            if ry < rx:
                rx, ry = ry, rx
            parent[ry] = rx

    for group in (starts, terminals):
        first = rename[group[0][0]][group[0][1]]
        for hi, x in group[1:]:
            union(first, rename[hi][x])

    glue_ids = {emap[hi][ent.eid] for ent, hi in zip(entries, host_idx)}
    out_vertices = sorted({find(v) for v in vertices})
    out_edges = [
        Edge(e.eid, find(e.u), find(e.v), e.length, e.tag)
        for e in edges
        if e.eid not in glue_ids
    ]
    return MultiGraph(out_vertices, out_edges)


# -- identification / gluing --------------------------------------------------


def identify_along(
    g: MultiGraph,
    pattern: MultiGraph,
    embeddings: Sequence[Mapping[str, str]],
) -> MultiGraph:
    """Quotient g by identifying the images of the pattern embeddings.

    For pattern-adjacent vertex pairs only one copy of the parallel clone
    edges is kept, matching the gluing convention for underlying graphs.
    """
    for f in embeddings:
        if set(f.keys()) != set(pattern.vertices):
            raise InputError("embedding does not cover the pattern vertex set")
        if len(set(f.values())) != len(f):
            raise InputError("embedding is not injective")
        for v in f.values():
            if v not in g:
                raise InputError(f"embedding image {v!r} is not a vertex")
        for p in pattern.vertices:
            for q in pattern.vertices:
                if q < p:
                    continue
                need = len(pattern.edges_between(p, q))
                if need and len(g.edges_between(f[p], f[q])) < need:
                    raise InputError(
                        f"embedding is not an isomorphism onto a subgraph: missing "
                        f"edge between {f[p]!r} and {f[q]!r}"
                    )
    if not embeddings:
        return g

    parent: dict[str, str] = {v: v for v in g.vertices}

    def find(x: str) -> str:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x: str, y: str) -> None:
        rx, ry = find(x), find(y)
        if rx != ry:
            if ry < rx:
                rx, ry = ry, rx
            parent[ry] = rx

    for p in pattern.vertices:
        first = embeddings[0][p]
        for f in embeddings[1:]:
            union(first, f[p])

    drop: set[str] = set()
    for p in pattern.vertices:
        for q in pattern.vertices:
            if q < p:
                continue
            if not pattern.edges_between(p, q):
                continue
            clones_p = {f[p] for f in embeddings}
            clones_q = {f[q] for f in embeddings}
            between = sorted(
                e.eid
                for e in g.edges
                if (e.u in clones_p and e.v in clones_q) or (e.u in clones_q and e.v in clones_p)
            )
            drop.update(between[1:])

    vertices = sorted({find(v) for v in g.vertices})
    edges = [
        Edge(e.eid, find(e.u), find(e.v), e.length, e.tag)
        for e in g.edges
        if e.eid not in drop
    ]
    return MultiGraph(vertices, edges)

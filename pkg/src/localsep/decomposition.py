"""Graph-decompositions and the three pipelines.

A graph-decomposition is a bipartite decomposition graph on bags and
separators: every decomposition edge carries an embedding of the separator
graph into its bag.  Bags never contain torso edges; torso weights live on
the (separator, bag) incidences and are injected only by `torso`.  Under
this convention `underlying_graph` reproduces the decomposed graph exactly
while the torsos of the canonical pipeline are the components of the cut
graph.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Mapping, Sequence

from .cycles import (
    Cycle,
    Triplex,
    cycle_space_dim,
    enumerate_short_cycles,
    short_cycle_rank,
)
from .errors import InputError, PipelineError, UnitLengthError, VerificationError
from .graph import INF, TORSO, Edge, MultiGraph, Provenance, subdivide
from .separators import (
    LocalSeparator,
    enumerate_local_2_separators,
    enumerate_local_cutvertices,
    is_locally_2_connected,
    is_locally_3_connected,
    noncrossed_set,
)
from .surgery import CutResult, TorsoRecord, cut_2separator, cut_all, cut_vertex


@dataclass(frozen=True)
class DecEdge:
    """One decomposition edge: separator node, bag node, embedding map of
    the separator's vertices into the bag, and the torso weight of this
    incidence (None for adhesion-1 decompositions)."""

    sep_id: str
    bag_id: str
    iota: Mapping[str, str]
    torso_weight: int | None = None
    torso_eid: str | None = None


@dataclass(frozen=True)
class GraphDecomposition:
    bags: Mapping[str, MultiGraph]
    separators: Mapping[str, MultiGraph]
    edges: tuple[DecEdge, ...]
    r: int | float

    def __post_init__(self) -> None:
        for de in self.edges:
            if de.sep_id not in self.separators or de.bag_id not in self.bags:
                raise InputError(f"dangling decomposition edge {de}")
            bag = self.bags[de.bag_id]
            sep = self.separators[de.sep_id]
            if set(de.iota.keys()) != set(sep.vertices):
                raise InputError(f"iota of {de.sep_id}->{de.bag_id} does not cover the separator")
            imgs = list(de.iota.values())
            if len(set(imgs)) != len(imgs):
                raise InputError("iota is not injective")
            for x in imgs:
                if x not in bag:
                    raise InputError(f"iota image {x!r} missing from bag {de.bag_id}")
        # images of one separator must be pairwise disjoint within each bag
        per: dict[tuple[str, str], list[set[str]]] = {}
        for de in self.edges:
            per.setdefault((de.sep_id, de.bag_id), []).append(set(de.iota.values()))
        for (sid, bid), images in per.items():
            for i in range(len(images)):
                for j in range(i + 1, len(images)):
                    if images[i] & images[j]:
                        raise InputError(
                            f"images of {sid} overlap inside bag {bid}: determinacy of "
                            "edge labels would fail"
                        )

    def bag_ids(self) -> tuple[str, ...]:
        return tuple(sorted(self.bags))

    def sep_ids(self) -> tuple[str, ...]:
        return tuple(sorted(self.separators))

    def sep_pair(self, sid: str) -> tuple[str, ...]:
        return self.separators[sid].vertices


@dataclass(frozen=True)
class Metrics:
    """width = largest bag size minus one; adhesion = largest separator
    size (0 without separators); locality is exact, infinite, or known only
    as a lower bound (`locality_at_least`)."""

    width: int
    adhesion: int
    locality: int | float | None
    locality_at_least: int | None = None

    def locality_json(self):
        if self.locality == INF:
            return "inf"
        if self.locality is None:
            return f">={self.locality_at_least}"
        return self.locality


def torso(d: GraphDecomposition, bag_id: str) -> MultiGraph:
    """The bag with every incident separator image completed by a weighted
    edge; for the canonical pipeline this is exactly the corresponding
    component of the cut graph."""
    bag = d.bags[bag_id]
    vertices = list(bag.vertices)
    edges = list(bag.edges)
    used = {e.eid for e in edges}
    for k, de in enumerate(de for de in d.edges if de.bag_id == bag_id):
        imgs = sorted(de.iota.values())
        for i in range(len(imgs)):
            for j in range(i + 1, len(imgs)):
                eid = de.torso_eid or f"torso.{de.sep_id}.{bag_id}.{k}"
                while eid in used:
                    eid = "~" + eid
                used.add(eid)
                edges.append(Edge(eid, imgs[i], imgs[j], de.torso_weight or 1, TORSO))
    return MultiGraph(vertices, edges)


def underlying_graph(d: GraphDecomposition) -> MultiGraph:
    """Disjoint union of the bags identified along every separator's copy
    family; identified classes take the separator's own vertex names.

    The gluing exception applies: when a separator graph contains an edge,
    only one copy of the clone edges between the identified endpoints is
    kept.
    """
    all_vertices: set[str] = set()
    for bid in d.bag_ids():
        bag = d.bags[bid]
        overlap = all_vertices & set(bag.vertices)
        if overlap:
            raise InputError(f"bags are not disjoint: {sorted(overlap)[:3]}")
        all_vertices |= set(bag.vertices)

    parent: dict[str, str] = {v: v for v in all_vertices}

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

    names: dict[str, str] = {}
    for sid in d.sep_ids():
        incident = [de for de in d.edges if de.sep_id == sid]
        for v in d.separators[sid].vertices:
            imgs = [de.iota[v] for de in incident]
            for img in imgs[1:]:
                union(imgs[0], img)
            if imgs:
                names[find(imgs[0])] = v
    # re-anchor names after all unions
    final_names: dict[str, str] = {}
    for cls_member, name in names.items():
        root = find(cls_member)
        if root in final_names and final_names[root] != name:
            raise VerificationError(
                f"identification merges separator vertices {final_names[root]!r} and {name!r}"
            )
        final_names[root] = name
    if len(set(final_names.values())) != len(final_names):
        raise VerificationError("two disjoint identification classes received the same name")

    def rep(x: str) -> str:
        return final_names.get(find(x), find(x))

    drop: set[str] = set()
    for sid in d.sep_ids():
        sep = d.separators[sid]
        incident = [de for de in d.edges if de.sep_id == sid]
        for e in sep.edges:
            clones_u = {de.iota[e.u] for de in incident}
            clones_v = {de.iota[e.v] for de in incident}
            between: list[str] = []
            for bid in d.bag_ids():
                for be in d.bags[bid].edges:
                    if (be.u in clones_u and be.v in clones_v) or (
                        be.u in clones_v and be.v in clones_u
                    ):
                        between.append(be.eid)
            between.sort()
            drop.update(between[1:])

    vertices = sorted({rep(v) for v in all_vertices})
    edges: list[Edge] = []
    for bid in d.bag_ids():
        for e in d.bags[bid].edges:
            if e.eid in drop:
                continue
            edges.append(Edge(e.eid, rep(e.u), rep(e.v), e.length, e.tag))
    return MultiGraph(vertices, edges)


# -- locality ----------------------------------------------------------------


def _edge_labels(d: GraphDecomposition, g: MultiGraph) -> dict[tuple[str, str], int]:
    """Label each edge of g between a separator vertex and an outside
    vertex with its unique decomposition-edge index."""
    labels: dict[tuple[str, str], int] = {}
    for idx, de in enumerate(d.edges):
        sep_set = set(d.separators[de.sep_id].vertices)
        bag = d.bags[de.bag_id]
        for v, img in de.iota.items():
            for eid in bag.incident(img):
                ge = g.edge(eid)
                other = ge.other(v)
                if other in sep_set:
                    continue
                key = (de.sep_id, eid)
                if key in labels and labels[key] != idx:
                    raise VerificationError(f"edge {eid} has two labels for {de.sep_id}")
                labels[key] = idx
    return labels


def _traversal_parity(
    cyc: Cycle,
    sep_id: str,
    sep_set: frozenset[str],
    labels: Mapping[tuple[str, str], int],
) -> int:
    """A traversal is a maximal subpath of the cycle inside the separator
    whose entering and leaving edges carry different decomposition-edge
    labels; returns the parity of the traversal count."""
    k = len(cyc.vertices)
    inside = [v in sep_set for v in cyc.vertices]
    if all(inside) or not any(inside):
        return 0
    # rotate so position 0 is outside the separator; runs never wrap then
    start = next(j for j in range(k) if not inside[j])
    order = [(start + j) % k for j in range(k)]
    traversals = 0
    j = 0
    while j < k:
        p = order[j]
        if not inside[p]:
            j += 1
            continue
        run = [p]
        while j + 1 < k and inside[order[j + 1]]:
            j += 1
            run.append(order[j])
        entering = cyc.edges[(run[0] - 1) % k]
        leaving = cyc.edges[run[-1]]
        lab_in = labels.get((sep_id, entering))
        lab_out = labels.get((sep_id, leaving))
        if lab_in is None or lab_out is None:
            raise VerificationError(
                f"cycle edge at separator {sep_id} is unlabelled ({entering}, {leaving})"
            )
        if lab_in != lab_out:
            traversals += 1
        j += 1
    return traversals % 2


def metrics(
    d: GraphDecomposition,
    cycle_bound: int | None = None,
    budget: int | None = None,
) -> Metrics:
    """Width, adhesion, and locality of a graph-decomposition.

    Locality is certified by enumerating cycles of the underlying graph up
    to (cycle_bound + 1); the default bound is r + 2.  Without separators
    the adhesion is 0 and the locality infinite by convention.
    """
    width = max((b.n for b in d.bags.values()), default=1) - 1
    adhesion = max((s.n for s in d.separators.values()), default=0)
    if not d.edges or not d.separators:
        return Metrics(width, adhesion, INF)
    g = underlying_graph(d)
    if not g.is_unit:
        raise UnitLengthError("locality certification needs a unit underlying graph")
    labels = _edge_labels(d, g)
    total = g.total_length()
    if cycle_bound is None:
        cycle_bound = total if d.r == INF else int(d.r) + 2
    search = min(cycle_bound + 1, total)
    sep_sets = {sid: frozenset(d.separators[sid].vertices) for sid in d.sep_ids()}
    best: int | None = None
    for cyc in enumerate_short_cycles(g, search, budget=budget):
        if best is not None and cyc.length >= best:
            break
        for sid, sep_set in sep_sets.items():
            if _traversal_parity(cyc, sid, sep_set, labels) == 1:
                best = cyc.length
                break
    if best is not None:
        return Metrics(width, adhesion, best - 1)
    if search >= total:
        return Metrics(width, adhesion, INF)
    return Metrics(width, adhesion, None, locality_at_least=search)


# -- certificates --------------------------------------------------------------


@dataclass(frozen=True)
class LedgerEntry:
    """Cycle-space bookkeeping of one greedy cut, at the weighted level."""

    gamma_parent: int
    gammabar_parent: int
    v_parent: int
    e_parent: int
    ell: int
    k_after: int
    gamma_after: int
    child_triplexes: tuple[tuple[int, int, int], ...]


@dataclass(frozen=True)
class CertStep:
    separator: tuple[str, str]
    cut_pair: tuple[str, str]
    torso: tuple[TorsoRecord, ...]
    digons: tuple[str, ...]
    component: str | None = None
    ledger: LedgerEntry | None = None


@dataclass(frozen=True)
class CutCertificate:
    """Replayable record of a cutting pipeline."""

    kind: str  # "canonical" | "greedy" | "blockcut"
    r: int | float
    steps: tuple[CertStep, ...]

    def separator_root_pairs(self) -> tuple[frozenset[str], ...]:
        return tuple(frozenset(s.separator) for s in self.steps)


# -- building decompositions ---------------------------------------------------


def build_decomposition(
    g: MultiGraph,
    cut: CutResult,
    seps: Sequence[LocalSeparator | tuple[str, str]],
    r: int | float,
) -> GraphDecomposition:
    """Assemble the graph-decomposition of g displayed by a cut along a
    non-crossing family: bags are the components of the cut graph (their
    graphs keep only non-torso edges), separators the cut pairs, and each
    torso edge contributes one decomposition edge."""
    pairs = sorted(s.pair if isinstance(s, LocalSeparator) else tuple(sorted(s)) for s in seps)
    comps = cut.graph.components()
    bag_of_vertex: dict[str, str] = {}
    bags: dict[str, MultiGraph] = {}
    for i, comp in enumerate(comps):
        bid = f"B{i}"
        sub = cut.graph.induced(comp)
        bags[bid] = sub.subgraph(sub.vertices, [e.eid for e in sub.edges if e.tag != TORSO])
        for v in comp:
            bag_of_vertex[v] = bid
    separators: dict[str, MultiGraph] = {}
    sep_id_of: dict[tuple[str, str], str] = {}
    for i, pair in enumerate(pairs):
        sid = f"S{i}"
        separators[sid] = g.induced(pair)
        sep_id_of[pair] = sid
    recs_by_sep: dict[tuple[str, str], list[TorsoRecord]] = {p: [] for p in pairs}
    for rec in cut.torso_edges:
        key = tuple(sorted(rec.separator))
        if key not in recs_by_sep:
            raise InputError(f"cut contains a separator not in the family: {key}")
        recs_by_sep[key].append(rec)
    dec_edges: list[DecEdge] = []
    for pair in pairs:
        v0, v1 = pair
        for rec in sorted(recs_by_sep[pair], key=lambda t: str(t.component)):
            e = cut.graph.edge(rec.eid)
            r0 = cut.provenance.root(e.u)
            if r0 == v0:
                iota = {v0: e.u, v1: e.v}
            elif r0 == v1:
                iota = {v0: e.v, v1: e.u}
            else:
                raise VerificationError(f"torso edge {rec.eid} endpoints do not match {pair}")
            dec_edges.append(
                DecEdge(sep_id_of[pair], bag_of_vertex[e.u], iota, rec.weight, rec.eid)
            )
    return GraphDecomposition(bags, separators, tuple(dec_edges), r)


def is_cycle_graph(g: MultiGraph, max_total: int | float = INF) -> bool:
    """Is g a single cycle (of total length <= max_total)?"""
    if g.n == 0 or not g.is_connected():
        return False
    if g.total_length() > max_total:
        return False
    return all(g.degree(v) == 2 for v in g.vertices)


def _assert_torso_structure(d: GraphDecomposition, r: int | float, budget: int | None) -> None:
    for bid in d.bag_ids():
        t = torso(d, bid)
        tu, _ = subdivide(t)
        if is_cycle_graph(t, r):
            continue
        if is_locally_3_connected(tu, r, budget=budget):
            continue
        raise VerificationError(
            f"torso of bag {bid} is neither r-locally 3-connected nor a cycle of length <= {r}"
        )


def canonical_decomposition(
    g: MultiGraph,
    r: int | float,
    budget: int | None = None,
    check_torsos: bool = True,
) -> tuple[GraphDecomposition, CutCertificate]:
    """Cut along the non-crossed separators and assemble the decomposition.

    Requires a connected, r-locally 2-connected input.  Asserts that every
    torso is r-locally 3-connected or a cycle of total length <= r.
    """
    if not g.is_unit:
        raise PipelineError("canonical decomposition needs a unit graph; subdivide first")
    if not g.is_connected():
        raise PipelineError("canonical decomposition needs a connected graph")
    if r != INF and r < 3:
        raise PipelineError("no graph is r-locally 2-connected for r < 3")
    if not is_locally_2_connected(g, r, budget=budget):
        raise PipelineError("input graph is not r-locally 2-connected")
    ncs = noncrossed_set(g, r, budget=budget)
    cut, steps = cut_all(g, [s.pair for s in ncs], r, verify=False, budget=budget)
    d = build_decomposition(g, cut, ncs, r)
    under = underlying_graph(d)
    if under != g:
        raise VerificationError("underlying graph of the canonical decomposition differs from the input")
    if check_torsos:
        _assert_torso_structure(d, r, budget)
    cert = CutCertificate(
        "canonical",
        r,
        tuple(CertStep(s.separator, s.cut_pair, s.torso, s.digons) for s in steps),
    )
    return d, cert


# -- greedy pipeline -----------------------------------------------------------


@dataclass(frozen=True)
class GreedyPolicy:
    """Separator choice: 'lex' picks the smallest pair, 'random' draws
    uniformly with the given seed."""

    name: str = "lex"
    seed: int = 0

    def make_rng(self) -> random.Random:
        return random.Random(self.seed)


def _component_triplex(g: MultiGraph, prov: Provenance, r: int | float, budget: int | None) -> Triplex:
    interior = sum(1 for v in g.vertices if prov.origin(v)[0] == "interior")
    return Triplex(
        cycle_space_dim(g),
        short_cycle_rank(g, r, budget=budget),
        g.n - interior,
    )


@dataclass(frozen=True)
class GreedyResult:
    pieces: tuple[MultiGraph, ...]
    certificate: CutCertificate


def greedy_decomposition(
    g: MultiGraph,
    r: int | float,
    policy: GreedyPolicy | None = None,
    budget: int | None = None,
) -> GreedyResult:
    """Repeatedly cut an arbitrary (policy-chosen) local 2-separator of any
    component that is neither r-locally 3-connected nor a cycle of length
    <= r; the triplex of every produced component must strictly decrease,
    which proves termination."""
    from .surgery import _recontract  # shared chain contraction

    if not g.is_unit:
        raise PipelineError("greedy decomposition needs a unit graph; subdivide first")
    if not is_locally_2_connected(g, r, budget=budget):
        raise PipelineError("input graph is not r-locally 2-connected")
    policy = policy or GreedyPolicy()
    rng = policy.make_rng()

    queue: list[tuple[str, MultiGraph, Provenance]] = []
    for i, comp in enumerate(g.components()):
        sub = g.induced(comp)
        queue.append((f"g{i}", sub, Provenance.identity(sub)))
    next_id = len(queue)
    done: list[tuple[str, MultiGraph, Provenance]] = []
    steps: list[CertStep] = []

    while queue:
        cid, comp, prov = queue.pop(0)
        interior = {v for v in comp.vertices if prov.origin(v)[0] == "interior"}
        weighted_ok = is_cycle_graph(comp, r) or is_locally_3_connected(comp, r, budget=budget)
        if weighted_ok:
            done.append((cid, comp, prov))
            continue
        cands = enumerate_local_2_separators(comp, r, budget=budget)
        if not cands:
            raise PipelineError(
                f"component {cid} is neither r-locally 3-connected nor a short cycle "
                "but has no r-local 2-separator (degenerate multigraph)"
            )
        if policy.name == "lex":
            sep = cands[0].pair
        elif policy.name == "random":
            sep = cands[rng.randrange(len(cands))].pair
        else:
            raise InputError(f"unknown greedy policy {policy.name!r}")

        parent_t = _component_triplex(comp, prov, r, budget)
        e_parent = comp.m - len(interior)
        rootmap = {v: prov.root(v) for v in comp.vertices}
        res = cut_2separator(comp, sep, r, roots=rootmap, budget=budget)
        ell = len(res.torso_edges)
        prov_res = res.provenance.compose(prov)
        sub, sprov = subdivide(res.graph)
        prov_sub = sprov.compose(prov_res)
        children = sub.components()
        k_after = len(children)
        gamma_after = cycle_space_dim(res.graph)
        if gamma_after != parent_t.gamma - (ell - 2) + (k_after - 1):
            raise VerificationError("cycle-space ledger does not balance after a greedy cut")
        child_ts: list[Triplex] = []
        child_items: list[tuple[str, MultiGraph, Provenance]] = []
        for comp_set in children:
            child = sub.induced(comp_set)
            child_prov = Provenance({v: prov_sub.origin(v) for v in child.vertices})
            t = _component_triplex(child, child_prov, r, budget)
            if not (t < parent_t):
                raise VerificationError(
                    f"triplex did not decrease: parent {parent_t.key}, child {t.key}"
                )
            child_ts.append(t)
            child_items.append((f"g{next_id}", child, child_prov))
            next_id += 1
        root_pair = tuple(sorted((rootmap[sep[0]], rootmap[sep[1]])))
        steps.append(
            CertStep(
                separator=root_pair,
                cut_pair=tuple(sorted(sep)),
                torso=res.torso_edges,
                digons=res.artificial_components,
                component=cid,
                ledger=LedgerEntry(
                    gamma_parent=parent_t.gamma,
                    gammabar_parent=parent_t.gammabar,
                    v_parent=parent_t.v,
                    e_parent=e_parent,
                    ell=ell,
                    k_after=k_after,
                    gamma_after=gamma_after,
                    child_triplexes=tuple(t.key for t in child_ts),
                ),
            )
        )
        queue.extend(child_items)

    pieces = []
    for cid, comp, prov in done:
        chain_eids = {prov.origin(v)[1] for v in comp.vertices if prov.origin(v)[0] == "interior"}
        piece, _ = _recontract(comp, prov, chain_eids)
        pieces.append(piece)
    cert = CutCertificate("greedy", r, tuple(steps))
    return GreedyResult(tuple(pieces), cert)


# -- block-cut pipeline ---------------------------------------------------------


def blockcut_decomposition(g: MultiGraph, r: int | float, budget: int | None = None) -> GraphDecomposition:
    """Cut every r-local cutvertex; bags are the components of the result,
    separators the cutvertices, one decomposition edge per slice."""
    if not g.is_unit:
        raise PipelineError("blockcut needs a unit graph; subdivide first")
    if not g.is_connected():
        raise PipelineError("blockcut needs a connected graph")
    if r != INF and r < 2:
        raise PipelineError("blockcut needs r >= 2")
    cutverts = [s.vertices[0] for s in enumerate_local_cutvertices(g, r)]
    h = g
    prov = Provenance.identity(g)
    for v in cutverts:
        res = cut_vertex(h, v, r)
        prov = res.provenance.compose(prov)
        h = res.graph
    comps = h.components()
    bags: dict[str, MultiGraph] = {}
    bag_of: dict[str, str] = {}
    for i, comp in enumerate(comps):
        bid = f"B{i}"
        bags[bid] = h.induced(comp)
        for v in comp:
            bag_of[v] = bid
    separators = {f"S{i}": g.induced([v]) for i, v in enumerate(cutverts)}
    sep_id_of = {v: f"S{i}" for i, v in enumerate(cutverts)}
    dec_edges: list[DecEdge] = []
    for v in cutverts:
        slices = sorted(x for x in h.vertices if prov.origin(x)[0] == "slice" and prov.origin(x)[1] == v)
        for s in slices:
            dec_edges.append(DecEdge(sep_id_of[v], bag_of[s], {v: s}, None, None))
    d = GraphDecomposition(bags, separators, tuple(dec_edges), r)
    under = underlying_graph(d)
    if under != g:
        raise VerificationError("underlying graph of the block-cut decomposition differs from the input")
    for bid, bag in bags.items():
        if bag.n == 1 or (bag.n == 2 and bag.m == 1):
            continue
        if not is_locally_2_connected(bag, r, budget=budget):
            raise VerificationError(f"block-cut bag {bid} is not r-locally 2-connected")
    return d

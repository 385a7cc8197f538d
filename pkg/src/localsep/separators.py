"""Detection of r-local cutvertices and r-local 2-separators, local 2- and
3-connectivity, crossing tests, and the non-crossed set.

A vertex v is an r-local cutvertex when the punctured ball of radius r/2 is
disconnected; a pair {v, w} at distance <= r/2 is an r-local 2-separator
when the punctured explorer neighbourhood is disconnected.  Crossing is
decided in the explorer neighbourhood of the crossed separator, witnessed
by a short cycle which by the alternating-cycle lemma must alternate
between the two separators.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .cycles import Cycle, cycles_through, girth_at_most
from .errors import InputError, VerificationError
from .explorer import ExplorerNeighbourhood, explorer_neighbourhood
from .graph import INF, MultiGraph, Radius2, distance, punctured_ball


@dataclass(frozen=True)
class LocalSeparator:
    """An r-local cutvertex or pair separator with its local components.

    `components` lists the component partition of the punctured ball
    (cutvertex kind) or of the punctured explorer neighbourhood projected
    to underlying vertex ids (pair kind), in deterministic order.
    """

    kind: str  # "cutvertex" | "pair"
    vertices: tuple[str, ...]
    r: int | float
    components: tuple[tuple[str, ...], ...]

    def __post_init__(self) -> None:
        if self.kind not in ("cutvertex", "pair"):
            raise InputError(f"bad separator kind {self.kind!r}")
        if len(self.components) < 2:
            raise InputError("a local separator needs at least two local components")

    @property
    def pair(self) -> tuple[str, str]:
        if self.kind != "pair":
            raise InputError("not a pair separator")
        return (self.vertices[0], self.vertices[1])


def is_local_cutvertex(
    g: MultiGraph, v: str, r: int | float
) -> tuple[bool, tuple[tuple[str, ...], ...]]:
    """Whether B_{r/2}(v) - v is disconnected, with the component partition."""
    pb = punctured_ball(g, v, Radius2.half_of(r))
    comps = tuple(tuple(sorted(c)) for c in pb.components())
    return len(comps) >= 2, comps


def is_local_2_separator(
    g: MultiGraph,
    v: str,
    w: str,
    r: int | float,
    budget: int | None = None,
) -> tuple[bool, tuple[tuple[str, ...], ...]]:
    """Whether {v, w} is an r-local 2-separator, with the punctured
    explorer-neighbourhood components as underlying vertex id tuples.

    False (with no components) when the pair is too far apart or lies in
    different components of g.
    """
    if v == w:
        raise InputError("a 2-separator consists of two distinct vertices")
    d = distance(g, v, w)
    if d == INF or 2 * d > r:
        return False, ()
    expl = explorer_neighbourhood(g, v, w, r)
    _, comps = expl.punctured()
    parts = tuple(
        tuple(sorted(expl.copies[c].underlying for c in comp)) for comp in comps
    )
    return len(comps) >= 2, parts


def enumerate_local_cutvertices(g: MultiGraph, r: int | float) -> tuple[LocalSeparator, ...]:
    out = []
    for v in g.vertices:
        ok, comps = is_local_cutvertex(g, v, r)
        if ok:
            out.append(LocalSeparator("cutvertex", (v,), r, comps))
    return tuple(out)


def enumerate_local_2_separators(
    g: MultiGraph, r: int | float, budget: int | None = None
) -> tuple[LocalSeparator, ...]:
    """All pairs {v, w} with 2 d(v, w) <= r whose punctured explorer
    neighbourhood is disconnected, in sorted order."""
    out = []
    for v, w in itertools.combinations(g.vertices, 2):
        ok, comps = is_local_2_separator(g, v, w, r, budget=budget)
        if ok:
            out.append(LocalSeparator("pair", (v, w), r, comps))
    return tuple(out)


def is_locally_2_connected(g: MultiGraph, r: int | float, budget: int | None = None) -> bool:
    """No r-local cutvertex and a cycle of length <= r, component-wise."""
    if g.n == 0:
        return True
    if r != INF and r < 3:
        return False
    for v in g.vertices:
        ok, _ = is_local_cutvertex(g, v, r)
        if ok:
            return False
    for comp in g.components():
        if not girth_at_most(g.induced(comp), r):
            return False
    return True


def is_locally_3_connected(g: MultiGraph, r: int | float, budget: int | None = None) -> bool:
    """Locally 2-connected, no r-local 2-separator, and every component has
    at least four vertices."""
    if not is_locally_2_connected(g, r, budget=budget):
        return False
    for comp in g.components():
        if len(comp) < 4:
            return False
    return not enumerate_local_2_separators(g, r, budget=budget)


# -- crossing ----------------------------------------------------------------


@dataclass(frozen=True)
class CrossingReport:
    """Outcome of testing whether separator A crosses separator B.

    The test runs in Expl(B): A pre-crosses B when copies of A's vertices
    lie in different components of the punctured explorer neighbourhood;
    it crosses when some short cycle through those copies meets B.
    """

    a: tuple[str, str]
    b: tuple[str, str]
    pre_crosses: bool
    witness_vertices: tuple[str, ...] | None = None
    witness_edges: tuple[str, ...] | None = None

    @property
    def crossing(self) -> bool:
        return self.pre_crosses and self.witness_edges is not None


def _cyclic_pattern(seq: tuple[str, ...], a: tuple[str, str], b: tuple[str, str]) -> str:
    marks = []
    for x in seq:
        if x in a:
            marks.append("A")
        elif x in b:
            marks.append("B")
    return "".join(marks)


def _alternates(seq: tuple[str, ...], a: tuple[str, str], b: tuple[str, str]) -> bool:
    for x in a + b:
        if seq.count(x) != 1:
            return False
    pat = _cyclic_pattern(seq, a, b)
    if len(pat) != 4:
        return False
    return pat in ("ABAB", "BABA")


def crosses(
    g: MultiGraph,
    a: tuple[str, str] | LocalSeparator,
    b: tuple[str, str] | LocalSeparator,
    r: int | float,
    budget: int | None = None,
) -> CrossingReport:
    """Does the pair separator A cross the pair separator B?

    The witness search enumerates short cycles of Expl(B) through copies of
    A's vertices that contain b1 or b2; a found witness is asserted to
    alternate between the two separators.
    """
    pa = a.pair if isinstance(a, LocalSeparator) else tuple(sorted(a))
    pb = b.pair if isinstance(b, LocalSeparator) else tuple(sorted(b))
    if frozenset(pa) == frozenset(pb):
        raise InputError("crossing is only defined between distinct separators")
    d = distance(g, pb[0], pb[1])
    if d == INF or 2 * d > r:
        raise InputError(f"{set(pb)} is not a candidate separator (too far or disconnected)")
    expl = explorer_neighbourhood(g, pb[0], pb[1], r)
    _, comps = expl.punctured()
    comp_of: dict[str, int] = {}
    for i, comp in enumerate(comps):
        for cid in comp:
            comp_of[cid] = i
    ca1 = [c for c in expl.copies_of(pa[0]) if c in comp_of]
    ca2 = [c for c in expl.copies_of(pa[1]) if c in comp_of]
    split_pairs = [
        (x, y) for x in ca1 for y in ca2 if comp_of[x] != comp_of[y]
    ]
    if not split_pairs or len(comps) < 2:
        return CrossingReport(pa, pb, pre_crosses=False)

    bases = set(expl.base_copies)
    witness: Cycle | None = None
    for x, y in sorted(split_pairs):
        for cyc in cycles_through(expl.graph, x, r, budget=budget):
            if y in cyc and bases & set(cyc.vertices):
                witness = cyc
                break
        if witness is not None:
            break
    if witness is None:
        return CrossingReport(pa, pb, pre_crosses=True)
    under_v = tuple(expl.copies[c].underlying for c in witness.vertices)
    under_e = tuple(expl.underlying_edge(e) for e in witness.edges)
    if not _alternates(under_v, pa, pb):
        raise VerificationError(
            f"crossing witness for {set(pa)} x {set(pb)} does not alternate: {under_v}"
        )
    return CrossingReport(pa, pb, pre_crosses=True, witness_vertices=under_v, witness_edges=under_e)


def crossing_matrix(
    g: MultiGraph,
    seps: tuple[LocalSeparator, ...],
    r: int | float,
    budget: int | None = None,
    check_symmetry: bool = False,
) -> dict[frozenset[tuple[str, str]], bool]:
    """Unordered crossing relation over the given pair separators.

    Computed one direction per pair (crossing is symmetric on locally
    2-connected graphs); `check_symmetry` verifies the other direction.
    """
    out: dict[frozenset[tuple[str, str]], bool] = {}
    for i in range(len(seps)):
        for j in range(i + 1, len(seps)):
            rep = crosses(g, seps[i], seps[j], r, budget=budget)
            if check_symmetry:
                rev = crosses(g, seps[j], seps[i], r, budget=budget)
                if rev.crossing != rep.crossing:
                    raise VerificationError(
                        f"crossing is asymmetric between {seps[i].pair} and {seps[j].pair}"
                    )
            out[frozenset((seps[i].pair, seps[j].pair))] = rep.crossing
    return out


def noncrossed_set(
    g: MultiGraph,
    r: int | float,
    budget: int | None = None,
) -> tuple[LocalSeparator, ...]:
    """The r-local 2-separators crossed by no r-local 2-separator."""
    import warnings

    if not is_locally_2_connected(g, r, budget=budget):
        warnings.warn(
            "noncrossed_set on a graph that is not r-locally 2-connected; "
            "the decomposition theorems assume local 2-connectivity",
            stacklevel=2,
        )
    seps = enumerate_local_2_separators(g, r, budget=budget)
    matrix = crossing_matrix(g, seps, r, budget=budget)
    crossed: set[tuple[str, str]] = set()
    for key, val in matrix.items():
        if val:
            crossed.update(key)
    return tuple(s for s in seps if s.pair not in crossed)

"""Named example graphs and seeded random corpora used by tests and the
oracle suite."""

from __future__ import annotations

import random

from .graph import Edge, MultiGraph


def _mk(vertices, pairs, lengths=None) -> MultiGraph:
    lengths = lengths or {}
    edges = [
        Edge(f"e{i}", u, v, lengths.get((u, v), lengths.get((v, u), 1)))
        for i, (u, v) in enumerate(pairs)
    ]
    return MultiGraph(vertices, edges)


def path_graph(n: int) -> MultiGraph:
    vs = [f"v{i}" for i in range(n)]
    return _mk(vs, [(f"v{i}", f"v{i + 1}") for i in range(n - 1)])


def cycle_graph(n: int) -> MultiGraph:
    vs = [f"v{i}" for i in range(n)]
    return _mk(vs, [(f"v{i}", f"v{(i + 1) % n}") for i in range(n)])


def complete_graph(n: int) -> MultiGraph:
    names = "abcdefghijklmnopqrstuvwxyz"
    vs = [names[i] for i in range(n)]
    return _mk(vs, [(vs[i], vs[j]) for i in range(n) for j in range(i + 1, n)])


def bowtie() -> MultiGraph:
    """Two triangles sharing the vertex c."""
    return _mk(
        ["a1", "a2", "b1", "b2", "c"],
        [("a1", "a2"), ("a1", "c"), ("a2", "c"), ("b1", "b2"), ("b1", "c"), ("b2", "c")],
    )


def prism6() -> MultiGraph:
    """C6 x K2 with both diagonals per face: vertices a0..a5, b0..b5; edges
    are the rungs ai-bi, the two 6-cycles, and the diagonals ai-b(i+1) and
    bi-a(i+1).  30 edges in total."""
    pairs = []
    for i in range(6):
        j = (i + 1) % 6
        pairs.append((f"a{i}", f"b{i}"))
        pairs.append((f"a{i}", f"a{j}"))
        pairs.append((f"b{i}", f"b{j}"))
        pairs.append((f"a{i}", f"b{j}"))
        pairs.append((f"b{i}", f"a{j}"))
    vs = [f"a{i}" for i in range(6)] + [f"b{i}" for i in range(6)]
    return _mk(vs, pairs)


def theta_graph(l1: int = 2, l2: int = 2, l3: int = 2) -> MultiGraph:
    """Two poles joined by three internally disjoint paths of the given
    lengths (unit edges)."""
    vertices = ["p", "q"]
    pairs = []
    for k, ln in enumerate((l1, l2, l3)):
        prev = "p"
        for i in range(1, ln):
            mid = f"m{k}{i}"
            vertices.append(mid)
            pairs.append((prev, mid))
            prev = mid
        pairs.append((prev, "q"))
    return _mk(vertices, pairs)


def two_triangles_weighted() -> MultiGraph:
    """A triangle with one edge of length 2; the 2-sum building block."""
    return _mk(["u", "v", "w"], [("u", "v"), ("v", "w"), ("w", "u")], {("u", "v"): 2})


def digon() -> MultiGraph:
    return MultiGraph(["u", "v"], [Edge("e0", "u", "v"), Edge("e1", "u", "v")])


def loop_triangle() -> MultiGraph:
    """Triangle with a loop at one vertex and a doubled edge."""
    return MultiGraph(
        ["a", "b", "c"],
        [
            Edge("e0", "a", "b"),
            Edge("e1", "b", "c"),
            Edge("e2", "c", "a"),
            Edge("e3", "a", "a"),
            Edge("e4", "b", "c"),
        ],
    )


FIXTURES = {
    "p5": lambda: path_graph(5),
    "c4": lambda: cycle_graph(4),
    "c6": lambda: cycle_graph(6),
    "c8": lambda: cycle_graph(8),
    "k4": lambda: complete_graph(4),
    "bowtie": bowtie,
    "prism6": prism6,
    "theta": theta_graph,
    "digon": digon,
    "loop_triangle": loop_triangle,
}


# -- random corpora -----------------------------------------------------------


def random_multigraph(
    rng: random.Random,
    n_max: int = 12,
    extra_edges: int = 6,
    loops: bool = True,
    parallels: bool = True,
) -> MultiGraph:
    """A small random connected multigraph with bounded cycle rank."""
    n = rng.randint(2, n_max)
    vs = [f"v{i}" for i in range(n)]
    pairs: list[tuple[str, str]] = []
    order = vs[:]
    rng.shuffle(order)
    for i in range(1, n):
        pairs.append((order[i], order[rng.randrange(i)]))
    for _ in range(rng.randint(0, extra_edges)):
        u, v = rng.choice(vs), rng.choice(vs)
        if u == v and (not loops):
            continue
        if u != v and not parallels and any({u, v} == set(p) for p in pairs):
            continue
        pairs.append((u, v))
    return _mk(vs, pairs)


def random_connected_simple(rng: random.Random, n_max: int = 12, extra_edges: int = 6) -> MultiGraph:
    return random_multigraph(rng, n_max=n_max, extra_edges=extra_edges, loops=False, parallels=False)


def random_2_connected(rng: random.Random, n_max: int = 12) -> MultiGraph:
    """Random simple 2-connected graph with bounded cycle rank: a cycle
    plus a few ears."""
    n = rng.randint(3, n_max)
    g = cycle_graph(n)
    vs = list(g.vertices)
    pairs = [(e.u, e.v) for e in g.edges]
    for _ in range(rng.randint(0, 4)):
        u, v = rng.sample(vs, 2)
        ear_len = rng.randint(1, 3)
        prev = u
        for i in range(1, ear_len):
            mid = f"w{len(vs)}"
            vs.append(mid)
            pairs.append((prev, mid))
            prev = mid
        if not any({prev, v} == set(p) for p in pairs) or prev != u:
            pairs.append((prev, v))
    return _mk(vs, [p for p in pairs if p[0] != p[1]])


def prism_ring(k: int) -> MultiGraph:
    """C_k x K2 with both diagonals; generalizes prism6."""
    pairs = []
    for i in range(k):
        j = (i + 1) % k
        pairs.append((f"a{i}", f"b{i}"))
        pairs.append((f"a{i}", f"a{j}"))
        pairs.append((f"b{i}", f"b{j}"))
        pairs.append((f"a{i}", f"b{j}"))
        pairs.append((f"b{i}", f"a{j}"))
    vs = [f"a{i}" for i in range(k)] + [f"b{i}" for i in range(k)]
    return _mk(vs, pairs)


def cycle_power2(n: int) -> MultiGraph:
    """C_n with chords to distance-2 neighbours; triangle-rich and free of
    local cutvertices for r >= 3."""
    vs = [f"v{i}" for i in range(n)]
    pairs = [(f"v{i}", f"v{(i + 1) % n}") for i in range(n)]
    pairs += [(f"v{i}", f"v{(i + 2) % n}") for i in range(n)]
    seen = set()
    dedup = []
    for u, v in pairs:
        key = frozenset((u, v))
        if key not in seen and u != v:
            seen.add(key)
            dedup.append((u, v))
    return _mk(vs, dedup)


def random_locally_2_connected(
    rng: random.Random,
    r: int,
    n_max: int = 14,
    attempts: int = 60,
):
    """Rejection-sample a connected, r-locally 2-connected simple graph.

    Draws from structured families (prism rings, squared cycles, complete
    graphs) perturbed by extra chords, then filters; returns None when no
    attempt passes, so callers can re-draw."""
    from .separators import is_locally_2_connected

    for _ in range(attempts):
        kind = rng.randrange(4)
        if kind == 0:
            k = rng.randint(3, min(6, n_max // 2))
            g = prism_ring(k)
        elif kind == 1:
            n = rng.randint(4, min(n_max, 10))
            g = cycle_power2(n)
        elif kind == 2:
            n = rng.randint(4, 6)
            g = complete_graph(n)
        else:
            n = rng.randint(4, min(n_max, 9))
            g = cycle_graph(n) if n <= r else cycle_power2(n)
        # sprinkle extra chords while keeping the graph small
        vs = list(g.vertices)
        pairs = [(e.u, e.v) for e in g.edges]
        for _ in range(rng.randint(0, 3)):
            u, v = rng.sample(vs, 2)
            if not any({u, v} == set(p) for p in pairs):
                pairs.append((u, v))
        cand = _mk(vs, pairs)
        if cand.n <= n_max and cand.is_connected() and is_locally_2_connected(cand, r):
            return cand
    return None

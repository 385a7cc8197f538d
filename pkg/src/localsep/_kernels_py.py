"""Pure-Python kernels: bounded simple-cycle search and GF(2) rank.

This module is the reference implementation; localsep._kernels is the
compiled twin with identical semantics.  Both operate on integer-indexed
graphs prepared by localsep.cycles.

Cycle model: vertex-simple cycles with >= 3 vertices.  Loops and digons are
handled by the caller.  Each cycle is reported exactly once, as
(vertex index tuple, edge index tuple), canonically oriented: the start is
the smallest vertex index on the cycle and the second vertex index is
smaller than the last.  With `anchor >= 0` only cycles through the anchor
are produced (started at the anchor instead of the minimum).
"""

from __future__ import annotations

BACKEND = "python"


def _bfs_dist(adj_heads: list[list[int]], source: int, allowed_from: int, anchored: bool) -> list[int]:
    # Distances used only for pruning: any valid lower bound is sound.
    n = len(adj_heads)
    big = n + 1
    dist = [big] * n
    dist[source] = 0
    queue = [source]
    head = 0
    while head < len(queue):
        x = queue[head]
        head += 1
        for y in adj_heads[x]:
            if not anchored and y < allowed_from:
                continue
            if dist[y] > dist[x] + 1:
                dist[y] = dist[x] + 1
                queue.append(y)
    return dist


def enumerate_cycles(
    n: int,
    edge_u: list[int],
    edge_v: list[int],
    bound: int,
    budget: int,
    anchor: int = -1,
) -> tuple[list[tuple[tuple[int, ...], tuple[int, ...]]], int, bool]:
    """Returns (cycles, expansions_used, truncated).

    truncated=True means the budget ran out and the result is incomplete.
    """
    m = len(edge_u)
    adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for i in range(m):
        a, b = edge_u[i], edge_v[i]
        adj[a].append((b, i))
        adj[b].append((a, i))
    for lst in adj:
        lst.sort()
    adj_heads = [[w for w, _ in lst] for lst in adj]

    cycles: list[tuple[tuple[int, ...], tuple[int, ...]]] = []
    expansions = 0
    starts = range(n) if anchor < 0 else (anchor,)
    for s in starts:
        anchored = anchor >= 0
        dist = _bfs_dist(adj_heads, s, s, anchored)
        path = [s]
        epath: list[int] = []
        onpath = [False] * n
        onpath[s] = True
        # iterator stack: position into adj[current]
        pos = [0]
        while pos:
            u = path[-1]
            i = pos[-1]
            if i >= len(adj[u]):
                pos.pop()
                onpath[u] = False
                path.pop()
                if epath:
                    epath.pop()
                continue
            pos[-1] += 1
            w, eidx = adj[u][i]
            expansions += 1
            if expansions > budget:
                return cycles, expansions, True
            if w == s:
                if len(path) >= 3 and path[1] < path[-1]:
                    cycles.append((tuple(path), tuple(epath + [eidx])))
                continue
            if not anchored and w < s:
                continue
            if onpath[w]:
                continue
            if len(epath) + 1 + dist[w] > bound:
                continue
            path.append(w)
            epath.append(eidx)
            onpath[w] = True
            pos.append(0)
    return cycles, expansions, False


def gf2_rank(rows: list[int]) -> int:
    """Rank over GF(2) of bit-packed rows, by online elimination."""
    basis: dict[int, int] = {}
    rank = 0
    for vec in rows:
        cur = vec
        while cur:
            top = cur.bit_length()
            piv = basis.get(top)
            if piv is None:
                basis[top] = cur
                rank += 1
                break
            cur ^= piv
    return rank

# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernels: bounded simple-cycle search and GF(2) rank.

Semantics mirror localsep._kernels_py exactly; see there for the cycle
model and canonical orientation rules.
"""

from libc.stdlib cimport free, malloc

BACKEND = "compiled"


def enumerate_cycles(int n, edge_u, edge_v, long bound, long budget, int anchor=-1):
    cdef int m = len(edge_u)
    cdef int i, a, b, u, w, eidx, s, depth
    cdef long expansions = 0
    cdef bint truncated = False
    cdef bint anchored = anchor >= 0

    if n == 0 or m == 0:
        return [], 0, False

    # CSR adjacency over (neighbour, edge index) pairs, sorted per vertex.
    pairs = [[] for _ in range(n)]
    for i in range(m):
        a = edge_u[i]
        b = edge_v[i]
        pairs[a].append((b, i))
        pairs[b].append((a, i))
    for lst in pairs:
        lst.sort()

    cdef int* off = <int*> malloc((n + 1) * sizeof(int))
    cdef int* adj_w = <int*> malloc(2 * m * sizeof(int))
    cdef int* adj_e = <int*> malloc(2 * m * sizeof(int))
    cdef int* dist = <int*> malloc(n * sizeof(int))
    cdef int* queue = <int*> malloc(n * sizeof(int))
    cdef int* path = <int*> malloc((n + 1) * sizeof(int))
    cdef int* epath = <int*> malloc((n + 1) * sizeof(int))
    cdef int* pos = <int*> malloc((n + 1) * sizeof(int))
    cdef char* onpath = <char*> malloc(n * sizeof(char))
    if off == NULL or adj_w == NULL or adj_e == NULL or dist == NULL \
            or queue == NULL or path == NULL or epath == NULL or pos == NULL \
            or onpath == NULL:
        free(off); free(adj_w); free(adj_e); free(dist); free(queue)
        free(path); free(epath); free(pos); free(onpath)
        raise MemoryError()

    cdef int k = 0
    for i in range(n):
        off[i] = k
        for item in pairs[i]:
            adj_w[k] = item[0]
            adj_e[k] = item[1]
            k += 1
    off[n] = k

    cycles = []
    cdef int head, tail, big, top, start, stop
    cdef int s_first, s_last
    try:
        for s in (range(n) if anchor < 0 else (anchor,)):
            # BFS lower bounds for pruning (restricted to >= s unless anchored)
            big = n + 1
            for i in range(n):
                dist[i] = big
                onpath[i] = 0
            dist[s] = 0
            queue[0] = s
            head = 0
            tail = 1
            while head < tail:
                u = queue[head]
                head += 1
                for i in range(off[u], off[u + 1]):
                    w = adj_w[i]
                    if (not anchored) and w < s:
                        continue
                    if dist[w] > dist[u] + 1:
                        dist[w] = dist[u] + 1
                        queue[tail] = w
                        tail += 1
            path[0] = s
            onpath[s] = 1
            pos[0] = off[s]
            depth = 0
            while depth >= 0:
                u = path[depth]
                i = pos[depth]
                if i >= off[u + 1]:
                    onpath[u] = 0
                    depth -= 1
                    continue
                pos[depth] += 1
                w = adj_w[i]
                eidx = adj_e[i]
                expansions += 1
                if expansions > budget:
                    truncated = True
                    raise StopIteration()
                if w == s:
                    if depth >= 2 and path[1] < path[depth]:
                        vs = tuple(path[j] for j in range(depth + 1))
                        epath[depth] = eidx
                        es = tuple(epath[j] for j in range(depth + 1))
                        cycles.append((vs, es))
                    continue
                if (not anchored) and w < s:
                    continue
                if onpath[w]:
                    continue
                if depth + 1 + dist[w] > bound:
                    continue
                epath[depth] = eidx
                depth += 1
                path[depth] = w
                onpath[w] = 1
                pos[depth] = off[w]
    except StopIteration:
        pass
    finally:
        free(off)
        free(adj_w)
        free(adj_e)
        free(dist)
        free(queue)
        free(path)
        free(epath)
        free(pos)
        free(onpath)
    return cycles, expansions, truncated


def gf2_rank(rows):
    basis = {}
    cdef int rank = 0
    cdef long top
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

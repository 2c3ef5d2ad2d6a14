# cython: boundscheck=False, wraparound=False
"""Compiled bitset kernels (64-bit masks, so n <= 63).

Same contracts as the pure module; the dispatching wrappers in
``__init__`` fall back per call when a graph is too large.
"""

from libc.string cimport memset

cdef extern from *:
    int __builtin_ctzll(unsigned long long)

BACKEND = "compiled"

DEF MAXN = 63
DEF MAXNODES = 2 * MAXN + 2


cdef unsigned long long _reach(unsigned long long *adj, int n,
                               unsigned long long start,
                               unsigned long long allowed):
    cdef unsigned long long seen = start & allowed
    cdef unsigned long long frontier = seen
    cdef unsigned long long nxt, m
    cdef int v
    while frontier:
        nxt = 0
        m = frontier
        while m:
            v = __builtin_ctzll(m)
            nxt |= adj[v]
            m &= m - 1
        frontier = nxt & allowed & ~seen
        seen |= frontier
    return seen


cdef int _load_adj(object adj, unsigned long long *c_adj) except -1:
    cdef int n = len(adj) - 1
    cdef int v
    if n > MAXN:
        raise ValueError("compiled kernel limited to %d vertices" % MAXN)
    for v in range(n + 1):
        c_adj[v] = adj[v]
    return n


def reachable(adj, start, allowed):
    cdef unsigned long long c_adj[MAXN + 1]
    cdef int n = _load_adj(adj, c_adj)
    return _reach(c_adj, n, start, allowed)


def components(adj, mask):
    cdef unsigned long long c_adj[MAXN + 1]
    cdef int n = _load_adj(adj, c_adj)
    cdef unsigned long long rest = mask
    cdef unsigned long long seed, comp
    out = []
    while rest:
        seed = rest & (~rest + 1)
        comp = _reach(c_adj, n, seed, rest)
        out.append(comp)
        rest &= ~comp
    return out


def is_connected(adj, mask):
    cdef unsigned long long c_adj[MAXN + 1]
    cdef int n = _load_adj(adj, c_adj)
    cdef unsigned long long m = mask
    if m == 0:
        return True
    cdef unsigned long long seed = m & (~m + 1)
    return _reach(c_adj, n, seed, m) == m


def max_disjoint_paths(adj, n, src, dst, allowed):
    """Menger number between vertex sets via unit-capacity split flow."""
    cdef unsigned long long c_adj[MAXN + 1]
    _load_adj(adj, c_adj)
    cdef int nn = n
    cdef unsigned long long allowed_m = allowed
    cdef unsigned long long src_m = src & allowed_m
    cdef unsigned long long dst_m = dst & allowed_m
    cdef int size = 2 * nn + 2
    cdef int inf = nn + 1
    cdef int flow = 0
    cdef int v, w, x, y, qi, qlen
    cdef unsigned long long m, m2
    cdef short cap[MAXNODES][MAXNODES]
    cdef int prev[MAXNODES]
    cdef int queue[MAXNODES]

    memset(cap, 0, sizeof(cap))
    m = allowed_m
    while m:
        v = __builtin_ctzll(m)
        cap[2 * v][2 * v + 1] = 1
        m2 = c_adj[v] & allowed_m
        while m2:
            w = __builtin_ctzll(m2)
            cap[2 * v + 1][2 * w] = inf
            m2 &= m2 - 1
        m &= m - 1
    m = src_m
    while m:
        v = __builtin_ctzll(m)
        cap[0][2 * v] = 1
        m &= m - 1
    m = dst_m
    while m:
        v = __builtin_ctzll(m)
        cap[2 * v + 1][1] = 1
        m &= m - 1

    while True:
        for x in range(size):
            prev[x] = -1
        prev[0] = 0
        queue[0] = 0
        qlen = 1
        qi = 0
        while qi < qlen and prev[1] == -1:
            x = queue[qi]
            qi += 1
            for y in range(size):
                if cap[x][y] > 0 and prev[y] == -1:
                    prev[y] = x
                    queue[qlen] = y
                    qlen += 1
        if prev[1] == -1:
            return flow
        y = 1
        while y != 0:
            x = prev[y]
            cap[x][y] -= 1
            cap[y][x] += 1
            y = x
        flow += 1

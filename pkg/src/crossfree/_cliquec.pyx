# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled clique search kernel over uint64-word bitmask adjacency.

Same contract as the pure-Python kernel: vertices explored in ascending
index order, so the first k-clique found is the lexicographically least,
and the greedy-coloring bound only prunes branches without a k-clique.
Adjacency rows arrive as Python ints and are unpacked into word arrays
once per call.
"""

from libc.stdlib cimport free, malloc

IMPLEMENTATION = "c"

ctypedef unsigned long long u64

cdef extern from *:
    """
    static int cf_popcount64(unsigned long long x) { return __builtin_popcountll(x); }
    static int cf_ctz64(unsigned long long x) { return __builtin_ctzll(x); }
    """
    int cf_popcount64(u64 x) nogil
    int cf_ctz64(u64 x) nogil


cdef int _popcnt(u64 *a, int nw) noexcept nogil:
    cdef int j, total = 0
    for j in range(nw):
        total += cf_popcount64(a[j])
    return total


cdef int _color_bound(u64 *adj, int nw, u64 *cand, int need, u64 *tmp) noexcept nogil:
    """Greedy color-class count over cand, capped at need."""
    cdef u64 *m = tmp
    cdef u64 *avail = tmp + nw
    cdef int classes = 0
    cdef int j, w, v
    cdef u64 word
    cdef bint nonzero
    for j in range(nw):
        m[j] = cand[j]
    while True:
        nonzero = False
        for j in range(nw):
            if m[j]:
                nonzero = True
                break
        if not nonzero:
            return classes
        classes += 1
        if classes >= need:
            return classes
        for j in range(nw):
            avail[j] = m[j]
        w = 0
        while w < nw:
            word = avail[w]
            if word == 0:
                w += 1
                continue
            v = (w << 6) + cf_ctz64(word)
            m[w] &= ~((<u64>1) << (v & 63))
            avail[w] &= ~((<u64>1) << (v & 63))
            # avail has no bits below v, so earlier words need no clearing.
            for j in range(w, nw):
                avail[j] &= ~adj[v * nw + j]


cdef bint _dfs(u64 *adj, int nw, u64 *levels, int depth, int need,
               int *picks, int npicked, u64 *tmp) noexcept nogil:
    cdef u64 *cand = levels + depth * nw
    cdef u64 *nxt = levels + (depth + 1) * nw
    if need == 0:
        return True
    cdef int remaining = _popcnt(cand, nw)
    if remaining < need:
        return False
    if need > 2 and _color_bound(adj, nw, cand, need, tmp) < need:
        return False
    cdef int w, v, j
    cdef u64 word
    for w in range(nw):
        word = cand[w]
        while word:
            v = (w << 6) + cf_ctz64(word)
            word &= word - 1
            remaining -= 1
            if remaining + 1 < need:
                return False
            for j in range(w):
                nxt[j] = 0
            nxt[w] = adj[v * nw + w] & word
            for j in range(w + 1, nw):
                nxt[j] = adj[v * nw + j] & cand[j]
            picks[npicked] = v
            if _dfs(adj, nw, levels, depth + 1, need - 1, picks, npicked + 1, tmp):
                return True
    return False


def find_k_clique_in(adj, cand, int k):
    """Lexicographically least k-clique with all vertices inside cand, or None."""
    if k <= 0:
        return ()
    cdef int nv = len(adj)
    cdef int nw = (nv + 63) >> 6
    if nw == 0:
        nw = 1
    cdef u64 *a = <u64 *> malloc(<size_t>nv * nw * sizeof(u64) + sizeof(u64))
    cdef u64 *levels = <u64 *> malloc(<size_t>(k + 1) * nw * sizeof(u64))
    cdef u64 *tmp = <u64 *> malloc(<size_t>2 * nw * sizeof(u64))
    cdef int *picks = <int *> malloc(<size_t>k * sizeof(int))
    if a == NULL or levels == NULL or tmp == NULL or picks == NULL:
        free(a); free(levels); free(tmp); free(picks)
        raise MemoryError()
    cdef int v, w
    cdef object mask
    cdef bint found
    try:
        for v in range(nv):
            mask = adj[v]
            for w in range(nw):
                a[v * nw + w] = <u64>((mask >> (64 * w)) & 0xFFFFFFFFFFFFFFFF)
        mask = cand
        for w in range(nw):
            levels[w] = <u64>((mask >> (64 * w)) & 0xFFFFFFFFFFFFFFFF)
        found = _dfs(a, nw, levels, 0, k, picks, 0, tmp)
        if not found:
            return None
        return tuple(picks[w] for w in range(k))
    finally:
        free(a)
        free(levels)
        free(tmp)
        free(picks)


def find_k_clique(adj, int k):
    """Lexicographically least k-clique of the whole graph, or None."""
    cdef object full = 1  # Python int: the mask may exceed 64 bits
    full = (full << len(adj)) - 1
    return find_k_clique_in(adj, full, k)


def has_k_clique_in(adj, cand, int k):
    return find_k_clique_in(adj, cand, k) is not None

# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled GF(2) kernels. Mirrors ``_purepy`` call for call."""

from libc.stdlib cimport malloc, free
from libc.string cimport memset

ctypedef unsigned long long u64

cdef extern from *:
    """
    static inline int bg_popcount(unsigned long long x) { return __builtin_popcountll(x); }
    static inline int bg_ctz(unsigned long long x) { return __builtin_ctzll(x); }
    """
    int bg_popcount(u64 x) nogil
    int bg_ctz(u64 x) nogil

cdef enum:
    MAXV = 63
    MAXN = 6

cdef u64 HEARTBEAT_MASK = (1 << 22) - 1
cdef u64 WORD_MASK = 0xFFFFFFFFFFFFFFFF


cdef int _lowbit(u64* row, int nwords) noexcept nogil:
    cdef int w
    for w in range(nwords):
        if row[w]:
            return w * 64 + bg_ctz(row[w])
    return -1


cdef int _eliminate(list rows, int ncols, u64* basis, int* piv_of, int* pivots) except -1:
    """Insert rows into a pivot table; returns the rank."""
    cdef int nwords = (ncols + 63) // 64
    cdef int rank = 0, w, low, src
    cdef u64* cur
    cdef object x
    for i in range(ncols):
        piv_of[i] = -1
    for x in rows:
        cur = basis + rank * nwords
        for w in range(nwords):
            cur[w] = <u64>((x >> (64 * w)) & WORD_MASK)
        while True:
            low = _lowbit(cur, nwords)
            if low < 0:
                break
            src = piv_of[low]
            if src < 0:
                piv_of[low] = rank
                pivots[rank] = low
                rank += 1
                break
            for w in range(nwords):
                cur[w] ^= basis[src * nwords + w]
    return rank


def rank(rows, int ncols):
    rows = list(rows)
    if not rows or ncols == 0:
        return 0
    cdef int nwords = (ncols + 63) // 64
    cdef u64* basis = <u64*>malloc(len(rows) * nwords * sizeof(u64))
    cdef int* piv_of = <int*>malloc(ncols * sizeof(int))
    cdef int* pivots = <int*>malloc(len(rows) * sizeof(int))
    try:
        return _eliminate(rows, ncols, basis, piv_of, pivots)
    finally:
        free(basis)
        free(piv_of)
        free(pivots)


def rref(rows, int ncols):
    rows = list(rows)
    if not rows or ncols == 0:
        return []
    cdef int nwords = (ncols + 63) // 64
    cdef u64* basis = <u64*>malloc(len(rows) * nwords * sizeof(u64))
    cdef int* piv_of = <int*>malloc(ncols * sizeof(int))
    cdef int* pivots = <int*>malloc(len(rows) * sizeof(int))
    cdef int r, i, j, w, col, src, dst
    cdef list out = []
    cdef object x
    try:
        r = _eliminate(rows, ncols, basis, piv_of, pivots)
        # back-substitute from the highest pivot column down
        for col in range(ncols - 1, -1, -1):
            src = piv_of[col]
            if src < 0:
                continue
            for dst in range(r):
                if dst != src and pivots[dst] < col and (basis[dst * nwords + col // 64] >> (col % 64)) & 1:
                    for w in range(nwords):
                        basis[dst * nwords + w] ^= basis[src * nwords + w]
        for col in range(ncols):
            src = piv_of[col]
            if src < 0:
                continue
            x = 0
            for w in range(nwords - 1, -1, -1):
                x = (x << 64) | basis[src * nwords + w]
            out.append(x)
        return out
    finally:
        free(basis)
        free(piv_of)
        free(pivots)


cdef class _Search:
    cdef int v, n
    cdef u64 rows[MAXN]
    cdef unsigned char cls[MAXN + 1][MAXV]
    cdef int need[MAXN][64]
    cdef int avail[MAXN][MAXV]
    cdef int pivot[MAXN + 1]
    cdef public unsigned long long nodes, leaves, simplex, bibd_fail
    cdef public object first_simplex, others, allowed, heartbeat, sink

    cdef int level(self, int d) except -1:
        cdef int k = 1 << (self.n - 1 - d)
        cdef int nclass = 1 << d
        cdef int seen[64]
        cdef int p, c
        memset(seen, 0, sizeof(seen))
        for p in range(self.pivot[d] + 1, self.v):
            c = self.cls[d][p]
            self.avail[d][p] = seen[c]
            seen[c] += 1
        for c in range(nclass):
            if seen[c] < k:
                return 0
            self.need[d][c] = k
        return self.gen(d, self.v - 1, 0)

    cdef int gen(self, int d, int pos, u64 r) except -1:
        cdef int c
        if pos == self.pivot[d]:
            return self.take(d, r)
        c = self.cls[d][pos]
        if self.need[d][c] <= self.avail[d][pos]:
            self.gen(d, pos - 1, r)
        if self.need[d][c] > 0 and (c == 0 or self.need[d][0] > 0):
            self.need[d][c] -= 1
            self.gen(d, pos - 1, r | ((<u64>1) << pos))
            self.need[d][c] += 1
        return 0

    cdef int take(self, int d, u64 r) except -1:
        cdef int p
        if d == 0 and self.allowed is not None and r not in self.allowed:
            return 0
        self.nodes += 1
        if self.heartbeat is not None and not (self.nodes & HEARTBEAT_MASK):
            self.heartbeat(self.nodes, self.leaves)
        self.rows[d] = r
        if d + 1 == self.n:
            self.leaf()
            return 0
        for p in range(self.v):
            self.cls[d + 1][p] = self.cls[d][p] | (((r >> p) & 1) << d)
        self.pivot[d + 1] = bg_ctz(r)
        return self.level(d + 1)

    cdef int leaf(self) except -1:
        cdef u64 blocks[64]
        cdef u64 prow[MAXV]
        cdef u64 seen = 0, b
        cdef int nb = 1 << self.n
        cdef int j, p, q, lam
        cdef bint ok = True, simp = True
        cdef unsigned char col
        self.leaves += 1
        blocks[0] = 0
        for j in range(1, nb):
            blocks[j] = blocks[j & (j - 1)] ^ self.rows[bg_ctz(<u64>j)]
        for p in range(self.v):
            prow[p] = 0
        for j in range(1, nb):
            b = blocks[j]
            while b:
                p = bg_ctz(b)
                prow[p] |= (<u64>1) << j
                b &= b - 1
        lam = bg_popcount(prow[0] & prow[1])
        for p in range(self.v):
            for q in range(p + 1, self.v):
                if bg_popcount(prow[p] & prow[q]) != lam:
                    ok = False
                    break
            if not ok:
                break
        if not ok:
            self.bibd_fail += 1
        # each point should get its own nonzero column
        for p in range(self.v):
            col = 0
            for j in range(self.n):
                col |= ((self.rows[j] >> p) & 1) << j
            if col == 0 or (seen >> col) & 1:
                simp = False
                break
            seen |= (<u64>1) << col
        if simp:
            self.simplex += 1
            if self.first_simplex is None:
                self.first_simplex = tuple(self.rows[j] for j in range(self.n))
        else:
            self.others.append(tuple(self.rows[j] for j in range(self.n)))
        return 0


def search(int v, int n, first_rows=None, heartbeat=None):
    if not (1 <= n <= MAXN) or not (1 <= v <= MAXV):
        raise ValueError(f"compiled search supports v <= {MAXV}, n <= {MAXN}")
    cdef _Search s = _Search()
    s.v = v
    s.n = n
    s.nodes = s.leaves = s.simplex = s.bibd_fail = 0
    s.first_simplex = None
    s.others = []
    s.allowed = None if first_rows is None else set(first_rows)
    s.heartbeat = heartbeat
    memset(s.cls[0], 0, sizeof(s.cls[0]))
    s.pivot[0] = -1
    s.level(0)
    return {
        "nodes": s.nodes,
        "leaves": s.leaves,
        "simplex": s.simplex,
        "bibd_fail": s.bibd_fail,
        "first_simplex": s.first_simplex,
        "others": s.others,
    }


def iter_bases(int v, int n, first_rows=None):
    """Streaming search lives in the Python backend; same order either way."""
    from ._purepy import iter_bases as _iter
    return _iter(v, n, first_rows)

"""Integer brute-force kernels behind the oracles.

All arithmetic is exact int64 on small 0/+-1 data (fraction-free
elimination keeps every intermediate a minor of the input, bounded by
Hadamard's inequality, far below 2**63 at the supported sizes).  Each
kernel writes one result slot per instance; reductions (max, argmax,
counts) happen in numpy afterwards so output does not depend on thread
scheduling.
"""
import numpy as np

from ._backend import njit, prange

__all__ = [
    "cube_points", "slice_points", "int_rank", "affine_dim_rows",
    "completion_count", "extremal_scan", "slice_scan", "clique_stable_counts",
    "graph_census",
]


def cube_points(d):
    """Rows are {0,1}^d in binary-counting order (bit i of k is coordinate i)."""
    k = np.arange(2 ** d, dtype=np.int64)
    return ((k[:, None] >> np.arange(d, dtype=np.int64)) & 1).astype(np.int64)


def slice_points(d):
    """0, then the nonzero 0/1 vectors, then their negatives; plus opposite index."""
    cube = cube_points(d)[1:]
    pts = np.vstack([np.zeros((1, d), dtype=np.int64), cube, -cube])
    m = len(cube)
    opp = np.empty(len(pts), dtype=np.int64)
    opp[0] = -1
    opp[1:m + 1] = np.arange(m + 1, 2 * m + 1)
    opp[m + 1:] = np.arange(1, m + 1)
    return pts, opp


@njit(cache=True)
def int_rank(M):
    """Rank of an int64 matrix by Bareiss elimination on a copy."""
    m = M.copy()
    nrows, ncols = m.shape
    r = 0
    prev = 1
    for c in range(ncols):
        if r == nrows:
            break
        p = r
        while p < nrows and m[p, c] == 0:
            p += 1
        if p == nrows:
            continue
        if p != r:
            for j in range(ncols):
                t = m[p, j]
                m[p, j] = m[r, j]
                m[r, j] = t
        piv = m[r, c]
        for i in range(r + 1, nrows):
            f = m[i, c]
            for j in range(c + 1, ncols):
                m[i, j] = (piv * m[i, j] - f * m[r, j]) // prev
            m[i, c] = 0
        prev = piv
        r += 1
    return r


@njit(cache=True)
def _det(M):
    n = M.shape[0]
    if n == 0:
        return 1
    m = M.copy()
    sign = 1
    prev = 1
    for c in range(n):
        p = c
        while p < n and m[p, c] == 0:
            p += 1
        if p == n:
            return 0
        if p != c:
            sign = -sign
            for j in range(n):
                t = m[p, j]
                m[p, j] = m[c, j]
                m[c, j] = t
        piv = m[c, c]
        for i in range(c + 1, n):
            f = m[i, c]
            for j in range(c + 1, n):
                m[i, j] = (piv * m[i, j] - f * m[c, j]) // prev
            m[i, c] = 0
        prev = piv
    return sign * m[n - 1, n - 1]


@njit(cache=True)
def _adjugate(M):
    n = M.shape[0]
    adj = np.zeros((n, n), dtype=np.int64)
    if n == 1:
        adj[0, 0] = 1
        return adj
    minor = np.empty((n - 1, n - 1), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            # cofactor of entry (j, i)
            rr = 0
            for r in range(n):
                if r == j:
                    continue
                cc = 0
                for c in range(n):
                    if c == i:
                        continue
                    minor[rr, cc] = M[r, c]
                    cc += 1
                rr += 1
            s = 1 if (i + j) % 2 == 0 else -1
            adj[i, j] = s * _det(minor)
    return adj


@njit(cache=True)
def affine_dim_rows(P, n):
    """Affine dimension of the first ``n`` rows of ``P`` (n >= 1)."""
    if n <= 1:
        return 0
    d = P.shape[1]
    D = np.empty((n - 1, d), dtype=np.int64)
    for i in range(1, n):
        for j in range(d):
            D[i - 1, j] = P[i, j] - P[0, j]
    return int_rank(D)


@njit(cache=True)
def completion_count(A):
    """|complete_B(A)| including 0, or -1 when the rows of A do not span.

    Basis: first independent rows in order.  Candidate for pattern t is
    adj(basis) t / det; it is kept when every product lands in {0, det}.
    """
    n, d = A.shape
    basis = np.empty((d, d), dtype=np.int64)
    k = 0
    for i in range(n):
        if k == d:
            break
        for j in range(d):
            basis[k, j] = A[i, j]
        if int_rank(basis[:k + 1]) == k + 1:
            k += 1
    if k < d:
        return -1
    det = _det(basis)
    adj = _adjugate(basis)
    y = np.empty(d, dtype=np.int64)
    count = 0
    for t in range(2 ** d):
        for r in range(d):
            s = 0
            for c in range(d):
                if (t >> c) & 1:
                    s += adj[r, c]
            y[r] = s
        ok = True
        for i in range(n):
            s = 0
            for j in range(d):
                s += A[i, j] * y[j]
            if s != 0 and s != det:
                ok = False
                break
        if ok:
            count += 1
    return count


@njit(cache=True, parallel=True)
def extremal_scan(cube, masks):
    """|A| * |complete_B(A)| for each subset mask of the cube rows (0 if A does not span)."""
    npts, d = cube.shape
    out = np.zeros(masks.shape[0], dtype=np.int64)
    for q in prange(masks.shape[0]):
        m = masks[q]
        size = 0
        for i in range(npts):
            if (m >> i) & 1:
                size += 1
        if size < d:
            continue
        A = np.empty((size, d), dtype=np.int64)
        r = 0
        for i in range(npts):
            if (m >> i) & 1:
                for j in range(d):
                    A[r, j] = cube[i, j]
                r += 1
        c = completion_count(A)
        if c > 0:
            out[q] = size * c
    return out


@njit(cache=True, parallel=True)
def slice_scan(pts, opp, members):
    """For each row of the boolean ``members`` matrix: (|X|, dim X).

    Rows that contain an opposite pair or are empty get size -1.
    """
    N, npts = members.shape
    d = pts.shape[1]
    sizes = np.zeros(N, dtype=np.int64)
    dims = np.zeros(N, dtype=np.int64)
    for q in prange(N):
        size = 0
        bad = False
        for i in range(npts):
            if members[q, i]:
                size += 1
                o = opp[i]
                if o >= 0 and members[q, o]:
                    bad = True
        if bad or size == 0:
            sizes[q] = -1
            continue
        X = np.empty((size, d), dtype=np.int64)
        r = 0
        for i in range(npts):
            if members[q, i]:
                for j in range(d):
                    X[r, j] = pts[i, j]
                r += 1
        sizes[q] = size
        dims[q] = affine_dim_rows(X, size)
    return sizes, dims


@njit(cache=True)
def clique_stable_counts(n, adj):
    """(#stable sets, #cliques) of a graph with neighbour bitmasks ``adj``; both count the empty set."""
    stable = 0
    cliques = 0
    for S in range(1 << n):
        is_stable = True
        is_clique = True
        for v in range(n):
            if (S >> v) & 1:
                rest = S & ~(1 << v)
                if adj[v] & S:
                    is_stable = False
                if (adj[v] & rest) != rest:
                    is_clique = False
        if is_stable:
            stable += 1
        if is_clique:
            cliques += 1
    return stable, cliques


@njit(cache=True, parallel=True)
def graph_census(n, pairs_u, pairs_v):
    """Stable and clique counts for every labeled graph on n nodes (edge-mask order)."""
    m = pairs_u.shape[0]
    total = 1 << m
    stable = np.zeros(total, dtype=np.int64)
    cliques = np.zeros(total, dtype=np.int64)
    for g in prange(total):
        adj = np.zeros(n, dtype=np.int64)
        for e in range(m):
            if (g >> e) & 1:
                adj[pairs_u[e]] |= 1 << pairs_v[e]
                adj[pairs_v[e]] |= 1 << pairs_u[e]
        s, c = clique_stable_counts(n, adj)
        stable[g] = s
        cliques[g] = c
    return stable, cliques

"""Pure-Python integer kernels: normal forms, kernels, determinants and the
double description inner loop.

These are the hot paths of the whole library.  tropkern._speedups contains
the same functions compiled with Cython; tropkern.kernel picks one at import
time.  All arithmetic is on Python ints, so values never overflow.

Conventions: matrices are lists of row lists; vectors inside cone_rays are
tuples so they can be hashed.
"""

from math import gcd

BACKEND = "pure"


def mat_copy(m):
    return [list(row) for row in m]


def _swap_rows(m, i, j):
    m[i], m[j] = m[j], m[i]


def mat_hnf(m):
    """Row-style Hermite normal form, canonical: pivots positive, entries
    above a pivot reduced into [0, pivot).  Zero rows are dropped, so the
    result is a canonical basis of the row space lattice."""
    a = mat_copy(m)
    if not a:
        return []
    rows, cols = len(a), len(a[0])
    r = 0
    for j in range(cols):
        # gcd elimination below row r in column j
        while True:
            piv, best = -1, 0
            for i in range(r, rows):
                v = a[i][j]
                if v != 0 and (piv < 0 or abs(v) < best):
                    piv, best = i, abs(v)
            if piv < 0:
                break
            _swap_rows(a, r, piv)
            done = True
            for i in range(r + 1, rows):
                if a[i][j] != 0:
                    q = a[i][j] // a[r][j]
                    if q != 0:
                        ari, ar = a[i], a[r]
                        for k in range(cols):
                            ari[k] -= q * ar[k]
                    if a[i][j] != 0:
                        done = False
            if done:
                break
        if piv < 0:
            continue
        if a[r][j] < 0:
            a[r] = [-v for v in a[r]]
        p = a[r][j]
        for i in range(r):
            q = a[i][j] // p
            if q != 0:
                ari, ar = a[i], a[r]
                for k in range(cols):
                    ari[k] -= q * ar[k]
        r += 1
        if r == rows:
            break
    return [row for row in a[:r]]


def mat_rank(m):
    return len(mat_hnf(m))


def mat_snf(m):
    """Smith normal form with transforms: returns (left, diag, right) with
    left*m*right = diag, both transforms unimodular, d1 | d2 | ...  The
    pivot at each step is the smallest nonzero entry by absolute value,
    which keeps coefficient growth tame at this scale."""
    a = mat_copy(m)
    rows = len(a)
    cols = len(a[0]) if rows else 0
    left = [[1 if i == j else 0 for j in range(rows)] for i in range(rows)]
    right = [[1 if i == j else 0 for j in range(cols)] for i in range(cols)]
    t = 0
    while t < rows and t < cols:
        # locate smallest nonzero entry in the trailing submatrix
        pi = pj = -1
        best = 0
        for i in range(t, rows):
            ai = a[i]
            for j in range(t, cols):
                v = ai[j]
                if v != 0 and (pi < 0 or abs(v) < best):
                    pi, pj, best = i, j, abs(v)
        if pi < 0:
            break
        _swap_rows(a, t, pi)
        _swap_rows(left, t, pi)
        for row in a:
            row[t], row[pj] = row[pj], row[t]
        for row in right:
            row[t], row[pj] = row[pj], row[t]
        # clear row and column t
        dirty = False
        for i in range(t + 1, rows):
            if a[i][t] != 0:
                q = a[i][t] // a[t][t]
                if q != 0:
                    for k in range(cols):
                        a[i][k] -= q * a[t][k]
                    for k in range(rows):
                        left[i][k] -= q * left[t][k]
                if a[i][t] != 0:
                    dirty = True
        for j in range(t + 1, cols):
            if a[t][j] != 0:
                q = a[t][j] // a[t][t]
                if q != 0:
                    for row in a:
                        row[j] -= q * row[t]
                    for row in right:
                        row[j] -= q * row[t]
                if a[t][j] != 0:
                    dirty = True
        if dirty:
            continue
        # enforce divisibility of the remaining block by the pivot
        stained = False
        for i in range(t + 1, rows):
            for j in range(t + 1, cols):
                if a[i][j] % a[t][t] != 0:
                    for k in range(cols):
                        a[t][k] += a[i][k]
                    for k in range(rows):
                        left[t][k] += left[i][k]
                    stained = True
                    break
            if stained:
                break
        if stained:
            continue
        if a[t][t] < 0:
            for k in range(cols):
                a[t][k] = -a[t][k]
            for k in range(rows):
                left[t][k] = -left[t][k]
        t += 1
    return left, a, right


def det_bareiss(m):
    """Exact determinant of a square integer matrix, fraction-free."""
    a = mat_copy(m)
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            piv = -1
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    piv = i
                    break
            if piv < 0:
                return 0
            _swap_rows(a, k, piv)
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            ai, ak = a[i], a[k]
            for j in range(k + 1, n):
                ai[j] = (akk * ai[j] - aik * ak[j]) // prev
            ai[k] = 0
        prev = akk
    return sign * a[n - 1][n - 1]


def mat_kernel(m):
    """Basis of the integer kernel {x : m x = 0} (x a column vector),
    returned as canonical HNF rows.  The kernel of an integer matrix map
    is automatically saturated."""
    rows = len(m)
    cols = len(m[0]) if rows else 0
    # row-reduce [m^T | I]; rows with zero head give kernel vectors
    aug = [[m[i][j] for i in range(rows)] + [1 if k == j else 0 for k in range(cols)]
           for j in range(cols)]
    red = _hnf_raw(aug)
    out = []
    for row in red:
        if any(v != 0 for v in row[:rows]):
            continue
        out.append(row[rows:])
    return mat_hnf(out) if out else []


def _hnf_raw(a):
    """HNF of the given (mutated) matrix keeping zero rows at the bottom."""
    if not a:
        return a
    rows, cols = len(a), len(a[0])
    r = 0
    for j in range(cols):
        while True:
            piv, best = -1, 0
            for i in range(r, rows):
                v = a[i][j]
                if v != 0 and (piv < 0 or abs(v) < best):
                    piv, best = i, abs(v)
            if piv < 0:
                break
            _swap_rows(a, r, piv)
            done = True
            for i in range(r + 1, rows):
                if a[i][j] != 0:
                    q = a[i][j] // a[r][j]
                    if q != 0:
                        ari, ar = a[i], a[r]
                        for k in range(cols):
                            ari[k] -= q * ar[k]
                    if a[i][j] != 0:
                        done = False
            if done:
                break
        if piv < 0:
            continue
        if a[r][j] < 0:
            a[r] = [-v for v in a[r]]
        r += 1
        if r == rows:
            break
    return a


def vec_gcd_reduce(v):
    g = 0
    for x in v:
        g = gcd(g, abs(x))
    if g <= 1:
        return tuple(v)
    return tuple(x // g for x in v)


def _dot(a, b):
    s = 0
    for i in range(len(a)):
        s += a[i] * b[i]
    return s


def cone_rays(ineqs, dim):
    """Extreme rays of the pointed cone {x in R^dim : a.x >= 0 for a in
    ineqs} by the incremental double description method.

    The caller guarantees pointedness (lineality already quotiented out),
    which the combinatorial adjacency test relies on.  Returns gcd-reduced
    integer ray tuples; [] for the zero cone.
    """
    if dim == 0:
        return []
    ineqs = [tuple(a) for a in ineqs]
    # initial simplicial basis: a rank-dim subset of the inequalities
    basis_idx = []
    probe = []
    for idx, a in enumerate(ineqs):
        if len(basis_idx) == dim:
            break
        probe.append(list(a))
        if mat_rank(probe) > len(basis_idx):
            basis_idx.append(idx)
        else:
            probe.pop()
    if len(basis_idx) < dim:
        raise ValueError("cone is not pointed")
    bmat = [list(ineqs[i]) for i in basis_idx]
    det = det_bareiss(bmat)
    rays = []
    zsets = []
    for j in range(dim):
        # column j of the adjugate: B * c_j = det * e_j
        col = []
        for i in range(dim):
            minor = [[bmat[r][c] for c in range(dim) if c != i]
                     for r in range(dim) if r != j]
            v = det_bareiss(minor)
            if (i + j) % 2 == 1:
                v = -v
            col.append(v)
        if det < 0:
            col = [-v for v in col]
        ray = vec_gcd_reduce(col)
        mask = 0
        for t, bi in enumerate(basis_idx):
            if t != j:
                mask |= (1 << bi)
        rays.append(ray)
        zsets.append(mask)
    processed = list(basis_idx)
    basis_set = set(basis_idx)
    for t, a in enumerate(ineqs):
        if t in basis_set:
            continue
        vals = [_dot(a, r) for r in rays]
        if all(v >= 0 for v in vals):
            for i, v in enumerate(vals):
                if v == 0:
                    zsets[i] |= (1 << t)
            processed.append(t)
            continue
        pos = [i for i, v in enumerate(vals) if v > 0]
        zer = [i for i, v in enumerate(vals) if v == 0]
        neg = [i for i, v in enumerate(vals) if v < 0]
        new_rays = []
        new_zsets = []
        for i in pos:
            new_rays.append(rays[i])
            new_zsets.append(zsets[i])
        for i in zer:
            new_rays.append(rays[i])
            new_zsets.append(zsets[i] | (1 << t))
        for i in pos:
            zi = zsets[i]
            for j in neg:
                common = zi & zsets[j]
                adjacent = True
                for k in range(len(rays)):
                    if k != i and k != j and (common & ~zsets[k]) == 0:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                vi, vj = vals[i], vals[j]
                ri, rj = rays[i], rays[j]
                w = vec_gcd_reduce([vi * rj[k] - vj * ri[k] for k in range(dim)])
                mask = 1 << t
                for p in processed:
                    if _dot(ineqs[p], w) == 0:
                        mask |= (1 << p)
                new_rays.append(w)
                new_zsets.append(mask)
        rays, zsets = new_rays, new_zsets
        processed.append(t)
    return rays

"""Exact rational linear programming (two-phase simplex, Bland's rule).

Used for decidable relative-interior queries: whether a system of strict
and weak affine inequalities has a solution.  Everything is Fraction
arithmetic; Bland's pivoting rule guarantees termination.
"""

from fractions import Fraction


def _pivot(rows, obj, basis, r, c):
    piv = rows[r][c]
    rows[r] = [x / piv for x in rows[r]]
    for i in range(len(rows)):
        if i != r and rows[i][c] != 0:
            f = rows[i][c]
            rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
    if obj[c] != 0:
        f = obj[c]
        obj[:] = [x - f * y for x, y in zip(obj, rows[r])]
    basis[r] = c


def _run_simplex(rows, obj, basis):
    """Maximize until no positive reduced cost remains.  Returns "optimal"
    or "unbounded"."""
    while True:
        col = next((j for j in range(len(obj) - 1) if obj[j] > 0), None)
        if col is None:
            return "optimal"
        pivot_row = None
        for i, row in enumerate(rows):
            if row[col] > 0:
                ratio = row[-1] / row[col]
                if pivot_row is None or ratio < best_ratio or \
                        (ratio == best_ratio and basis[i] < basis[pivot_row]):
                    pivot_row, best_ratio = i, ratio
        if pivot_row is None:
            return "unbounded"
        _pivot(rows, obj, basis, pivot_row, col)


def lp_max(c, a_rows, b):
    """Maximize c . y subject to a_rows . y = b, y >= 0.

    Returns (status, value, y) with status in "optimal" / "unbounded" /
    "infeasible"; value and y are None unless optimal.
    """
    m = len(a_rows)
    n = len(c)
    rows = []
    for i in range(m):
        row = [Fraction(x) for x in a_rows[i]] + [Fraction(b[i])]
        if row[-1] < 0:
            row = [-x for x in row]
        rows.append(row)
    # phase 1: artificial basis, maximize -(sum of artificials)
    for i in range(m):
        art = [Fraction(0)] * m
        art[i] = Fraction(1)
        rows[i] = rows[i][:-1] + art + [rows[i][-1]]
    basis = [n + i for i in range(m)]
    obj = [Fraction(0)] * (n + m + 1)
    for j in range(n):
        obj[j] = sum(rows[i][j] for i in range(m))
    obj[-1] = sum(rows[i][-1] for i in range(m))
    _run_simplex(rows, obj, basis)
    if any(rows[i][-1] != 0 for i in range(m) if basis[i] >= n):
        return "infeasible", None, None
    # drive leftover artificials out of the basis
    drop = []
    for i in range(m):
        if basis[i] >= n:
            col = next((j for j in range(n) if rows[i][j] != 0), None)
            if col is None:
                drop.append(i)
            else:
                _pivot(rows, obj, basis, i, col)
    for i in reversed(drop):
        del rows[i]
        del basis[i]
    # phase 2 on the original columns
    rows = [row[:n] + [row[-1]] for row in rows]
    obj = [Fraction(x) for x in c] + [Fraction(0)]
    for i, bi in enumerate(basis):
        if obj[bi] != 0:
            f = obj[bi]
            obj = [x - f * y for x, y in zip(obj, rows[i])]
    status = _run_simplex(rows, obj, basis)
    if status == "unbounded":
        return "unbounded", None, None
    y = [Fraction(0)] * n
    for i, bi in enumerate(basis):
        y[bi] = rows[i][-1]
    return "optimal", -obj[-1], y


def relint_feasible(strict, weak, eqs, n):
    """Is there x in Q^n with a.x > b on strict, a.x >= b on weak and
    a.x = b on eqs?  Rows are (a, b).

    Decided by maximizing a slack eps in [0, 1] required on every strict
    row; the system has a solution iff the optimum is positive.
    """
    strict = list(strict)
    weak = list(weak)
    eqs = list(eqs)
    s, w = len(strict), len(weak)
    # columns: x+ (n), x- (n), eps, surplus per strict, surplus per weak,
    # slack for eps <= 1
    cols = 2 * n + 1 + s + w + 1
    a_rows, b_vec = [], []

    def base_row(a):
        row = [Fraction(0)] * cols
        for k in range(n):
            row[k] = Fraction(a[k])
            row[n + k] = -Fraction(a[k])
        return row

    for i, (a, b) in enumerate(strict):
        row = base_row(a)
        row[2 * n] = Fraction(-1)
        row[2 * n + 1 + i] = Fraction(-1)
        a_rows.append(row)
        b_vec.append(Fraction(b))
    for j, (a, b) in enumerate(weak):
        row = base_row(a)
        row[2 * n + 1 + s + j] = Fraction(-1)
        a_rows.append(row)
        b_vec.append(Fraction(b))
    for a, b in eqs:
        a_rows.append(base_row(a))
        b_vec.append(Fraction(b))
    cap = [Fraction(0)] * cols
    cap[2 * n] = Fraction(1)
    cap[cols - 1] = Fraction(1)
    a_rows.append(cap)
    b_vec.append(Fraction(1))
    c = [Fraction(0)] * cols
    c[2 * n] = Fraction(1)
    status, value, _ = lp_max(c, a_rows, b_vec)
    return status == "optimal" and value > 0


def system_feasible(weak, eqs, n):
    """Is {x : a.x >= b on weak, a.x = b on eqs} nonempty?"""
    return relint_feasible([], weak, eqs, n)

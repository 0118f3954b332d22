"""Integer-matrix kernel primitives, checked against brute-force oracles."""

import itertools
import os
import random
from fractions import Fraction

import pytest

from tropkern import kernel
from tropkern._kernel_py import (cone_rays, det_bareiss, mat_hnf, mat_kernel,
                                 mat_rank, mat_snf, vec_gcd_reduce)

SEED = int(os.environ.get("TROPKERN_SEED", "0"))


def mat_mul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b)))
             for j in range(len(b[0]))] for i in range(len(a))]


def det_permanent_oracle(m):
    n = len(m)
    total = 0
    for perm in itertools.permutations(range(n)):
        sign = 1
        seen = [False] * n
        # parity by cycle counting
        p = list(perm)
        for i in range(n):
            if not seen[i]:
                j, ln = i, 0
                while not seen[j]:
                    seen[j] = True
                    j = p[j]
                    ln += 1
                if ln % 2 == 0:
                    sign = -sign
        term = sign
        for i in range(n):
            term *= m[i][perm[i]]
        total += term
    return total


def rand_mat(rng, rows, cols, lo=-6, hi=6):
    return [[rng.randint(lo, hi) for _ in range(cols)] for _ in range(rows)]


def test_det_matches_permutation_expansion():
    rng = random.Random(SEED + 1)
    for _ in range(60):
        n = rng.randint(1, 4)
        m = rand_mat(rng, n, n)
        assert det_bareiss([r[:] for r in m]) == det_permanent_oracle(m)


def test_hnf_canonical_form():
    rng = random.Random(SEED + 2)
    for _ in range(60):
        rows, cols = rng.randint(1, 4), rng.randint(1, 4)
        m = rand_mat(rng, rows, cols)
        h = mat_hnf([r[:] for r in m])
        # row-style HNF: positive pivots, echelon, reduced above
        pivots = []
        for r in h:
            j = next(k for k, x in enumerate(r) if x != 0)
            assert r[j] > 0
            pivots.append(j)
        assert pivots == sorted(pivots) and len(set(pivots)) == len(pivots)
        for i, j in enumerate(pivots):
            for above in range(i):
                assert 0 <= h[above][j] < h[i][j]
        # shuffling generators leaves the canonical form unchanged
        perm = m[:]
        rng.shuffle(perm)
        sign = rng.choice([-1, 1])
        scaled = perm + [[sign * x for x in rng.choice(m)]]
        assert mat_hnf(scaled + perm) == mat_hnf(m + m)


def test_snf_transform_identities():
    rng = random.Random(SEED + 3)
    for _ in range(60):
        rows, cols = rng.randint(1, 4), rng.randint(1, 4)
        m = rand_mat(rng, rows, cols)
        left, diag, right = mat_snf([r[:] for r in m])
        assert abs(det_bareiss([r[:] for r in left])) == 1
        assert abs(det_bareiss([r[:] for r in right])) == 1
        assert mat_mul(mat_mul(left, m), right) == diag
        for i in range(rows):
            for j in range(cols):
                if i != j:
                    assert diag[i][j] == 0
        divisors = [diag[i][i] for i in range(min(rows, cols))]
        for a, b in zip(divisors, divisors[1:]):
            assert a >= 0 and b >= 0
            if a == 0:
                assert b == 0
            else:
                assert b % a == 0
        # cross-check the invariant factors with an independent implementation
        from sympy import Matrix
        from sympy.matrices.normalforms import invariant_factors
        expected = [int(d) for d in invariant_factors(Matrix(m))]
        expected += [0] * (min(rows, cols) - len(expected))
        assert divisors == expected


def test_kernel_is_saturated_orthogonal():
    rng = random.Random(SEED + 4)
    for _ in range(60):
        rows, cols = rng.randint(1, 3), rng.randint(1, 4)
        m = rand_mat(rng, rows, cols)
        ker = mat_kernel([r[:] for r in m])
        for v in ker:
            assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in m)
        assert len(ker) == cols - mat_rank([r[:] for r in m])
        if ker:
            # saturation: content of each HNF pivot divides any lattice point
            assert mat_hnf([r[:] for r in ker]) == ker
            double = mat_kernel(mat_kernel([r[:] for r in ker])) if len(ker) < cols else ker
            assert double == ker


def test_vec_gcd_reduce():
    assert vec_gcd_reduce([4, -6, 8]) == (2, -3, 4)
    assert vec_gcd_reduce([0, 0, -5]) == (0, 0, -1)
    assert vec_gcd_reduce([7]) == (1,)


def brute_force_rays(ineqs, dim):
    """All extreme rays of a pointed cone {x : A x >= 0}, by testing every
    (dim-1)-subset of tight constraints."""
    rays = set()
    for subset in itertools.combinations(range(len(ineqs)), dim - 1) if dim > 1 else [()]:
        sub = [list(ineqs[i]) for i in subset]
        ker = mat_kernel([r[:] for r in sub]) if sub else \
            [[1 if i == j else 0 for j in range(dim)] for i in range(dim)]
        if len(ker) != 1:
            continue
        for sign in (1, -1):
            v = tuple(sign * x for x in ker[0])
            vals = [sum(a * b for a, b in zip(row, v)) for row in ineqs]
            if all(x >= 0 for x in vals):
                tight = [list(ineqs[i]) for i, x in enumerate(vals) if x == 0]
                # extreme iff the tight constraints cut out exactly a line
                corank = dim - (mat_rank(tight) if tight else 0)
                if corank == 1:
                    rays.add(vec_gcd_reduce(list(v)))
    return rays


def test_cone_rays_against_brute_force():
    rng = random.Random(SEED + 5)
    tried = 0
    while tried < 80:
        dim = rng.randint(1, 3)
        m = rng.randint(dim, dim + 3)
        ineqs = rand_mat(rng, m, dim, -3, 3)
        ineqs = [r for r in ineqs if any(r)]
        if not ineqs or mat_rank([r[:] for r in ineqs]) < dim:
            continue  # not pointed
        # pointedness also requires no nonzero x with A x >= 0 and A x <= 0
        try:
            got = cone_rays([tuple(r) for r in ineqs], dim)
        except ValueError:
            continue
        tried += 1
        assert set(got) == brute_force_rays(ineqs, dim)


def test_cone_rays_simplicial_orthant():
    ineqs = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    assert sorted(cone_rays(ineqs, 3)) == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]


def test_backend_agreement():
    rng = random.Random(SEED + 6)
    for _ in range(20):
        n = rng.randint(1, 4)
        m = rand_mat(rng, n, n)
        assert kernel.mat_hnf([r[:] for r in m]) == mat_hnf([r[:] for r in m])
        assert kernel.det_bareiss([r[:] for r in m]) == det_bareiss([r[:] for r in m])

import random
from itertools import product

import pytest

from monoidpcsp.errors import DimensionMismatch
from monoidpcsp.zlinalg import (
    Lattice,
    LatticeCoset,
    coset_member,
    hermite_normal_form,
    lattice_contains,
    lattice_from_generators,
    lattice_member,
    lattice_sum,
    reduce_mod_lattice,
    smith_normal_form,
    solve_integer,
)


def mat_mul(A, B):
    return [[sum(A[i][k] * B[k][j] for k in range(len(B)))
             for j in range(len(B[0]))] for i in range(len(A))]


def det(A):
    n = len(A)
    if n == 0:
        return 1
    if n == 1:
        return A[0][0]
    return sum((-1) ** j * A[0][j] *
               det([row[:j] + row[j + 1:] for row in A[1:]])
               for j in range(n))


def random_matrix(rng, rows, cols, lo=-9, hi=9):
    return [[rng.randint(lo, hi) for _ in range(cols)] for _ in range(rows)]


def test_hnf_reconstruction_and_shape():
    rng = random.Random(7)
    for _ in range(100):
        rows, cols = rng.randint(1, 6), rng.randint(1, 6)
        A = random_matrix(rng, rows, cols)
        H, U = hermite_normal_form(A)
        assert mat_mul(U, A) == [list(r) for r in H]
        assert abs(det(U)) == 1
        # echelon with positive pivots
        last = -1
        for row in H:
            nz = [j for j, v in enumerate(row) if v]
            if nz:
                assert nz[0] > last
                assert row[nz[0]] > 0
                last = nz[0]


def test_snf_reconstruction_and_divisibility():
    rng = random.Random(11)
    for _ in range(100):
        rows, cols = rng.randint(1, 6), rng.randint(1, 6)
        A = random_matrix(rng, rows, cols)
        U, S, V = smith_normal_form(A)
        assert mat_mul(mat_mul(U, [list(r) for r in S]), V) == A
        assert abs(det(U)) == 1 and abs(det(V)) == 1
        diag = [S[i][i] for i in range(min(rows, cols))]
        for i in range(len(diag)):
            assert diag[i] >= 0
            for j in range(i, len(diag)):
                assert S[i][j] == 0 or i == j
        for a, b in zip(diag, diag[1:]):
            if a:
                assert b % a == 0
            else:
                assert b == 0


def test_snf_known_values():
    _, S, _ = smith_normal_form([[1, 0], [0, 1]])
    assert [S[0][0], S[1][1]] == [1, 1]
    _, S, _ = smith_normal_form([[2, 4], [6, 8]])
    assert [S[0][0], S[1][1]] == [2, 4]
    _, S, _ = smith_normal_form([[2, 0], [0, 3]])
    assert [S[0][0], S[1][1]] == [1, 6]


def test_snf_invariant_under_unimodular_factors():
    rng = random.Random(13)
    A = [[2, 4, 0], [0, 6, 2], [2, 2, 2]]
    _, S0, _ = smith_normal_form(A)
    for _ in range(20):
        B = random_matrix(rng, 3, 3, -2, 2)
        _, P, _ = smith_normal_form(B)  # not used, just exercise
        E = [[1 if i == j else rng.randint(-1, 1) * (i < j)
              for j in range(3)] for i in range(3)]
        _, S1, _ = smith_normal_form(mat_mul(E, A))
        assert [r[:] for r in S1] == [r[:] for r in S0]


def test_solve_integer_examples():
    x0, K = solve_integer([[2]], [4])
    assert x0 == [2] and K == []
    assert solve_integer([[2]], [3]) is None
    x0, K = solve_integer([[1, 1]], [5])
    assert sum(x0) == 5
    assert len(K) == 1 and sum(K[0]) == 0 and K[0] != [0, 0]


def test_solve_integer_against_boxed_brute_force():
    rng = random.Random(23)
    for _ in range(120):
        rows, cols = rng.randint(1, 3), rng.randint(1, 3)
        A = random_matrix(rng, rows, cols, -5, 5)
        b = [rng.randint(-5, 5) for _ in range(rows)]
        brute = None
        for x in product(range(-6, 7), repeat=cols):
            if all(sum(A[i][j] * x[j] for j in range(cols)) == b[i]
                   for i in range(rows)):
                brute = list(x)
                break
        got = solve_integer(A, b)
        if brute is not None:
            assert got is not None
            x0, K = got
            assert all(sum(A[i][j] * x0[j] for j in range(cols)) == b[i]
                       for i in range(rows))
            for k in K:
                assert all(sum(A[i][j] * k[j] for j in range(cols)) == 0
                           for i in range(rows))
        elif got is not None:
            # a solution may exist outside the box; verify it is genuine
            x0, _ = got
            assert all(sum(A[i][j] * x0[j] for j in range(cols)) == b[i]
                       for i in range(rows))
            assert any(abs(v) > 6 for v in x0)


def test_solve_integer_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        solve_integer([[1, 2]], [1, 2])


def test_lattice_membership():
    # sublattice of Z^3 with coordinate sum divisible by 3
    L = lattice_from_generators(3, [[1, -1, 0], [0, 1, -1], [3, 0, 0]])
    assert lattice_member([1, 1, 1], L)
    assert not lattice_member([1, 0, 0], L)
    assert lattice_member([0, 0, 0], L)


def test_reduce_mod_lattice_is_canonical():
    L = lattice_from_generators(2, [[2, 0], [0, 3]])
    r1 = reduce_mod_lattice([5, 7], L)
    r2 = reduce_mod_lattice([1, 1], L)
    assert r1 == r2
    assert lattice_member([5 - r1[0], 7 - r1[1]], L)


def test_zero_lattice_membership_is_equality():
    Z = lattice_from_generators(2, [])
    assert lattice_member([0, 0], Z)
    assert not lattice_member([1, 0], Z)
    C = LatticeCoset((3, 4), Z)
    assert coset_member([3, 4], C)
    assert not coset_member([3, 5], C)


def test_coset_member():
    L = lattice_from_generators(2, [[2, 2]])
    C = LatticeCoset((1, 0), L)
    assert coset_member([3, 2], C)
    assert not coset_member([2, 2], C)


def test_lattice_sum_and_contains():
    A = lattice_from_generators(2, [[2, 0]])
    B = lattice_from_generators(2, [[0, 2]])
    S = lattice_sum(A, B)
    assert lattice_member([2, 2], S)
    assert lattice_contains(S, A) and lattice_contains(S, B)
    assert not lattice_contains(A, S)
    assert isinstance(S, Lattice)

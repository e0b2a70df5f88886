import itertools
import math

import pytest
from hypothesis import given, strategies as st

from bigrade import snf


def det(M):
    if not M:
        return 1
    return sum((-1) ** j * M[0][j] * det([row[:j] + row[j + 1:] for row in M[1:]])
               for j in range(len(M)) if M[0][j])


def divisors_from_minors(A):
    """Elementary divisors as ratios of gcds of k x k minors."""
    m, n = len(A), len(A[0])
    gcds = [1]
    for k in range(1, min(m, n) + 1):
        g = 0
        for rows in itertools.combinations(range(m), k):
            for cols in itertools.combinations(range(n), k):
                g = math.gcd(g, det([[A[r][c] for c in cols] for r in rows]))
        if g == 0:
            break
        gcds.append(g)
    return [gcds[i] // gcds[i - 1] for i in range(1, len(gcds))]


matrices = st.integers(1, 4).flatmap(
    lambda m: st.integers(1, 4).flatmap(
        lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n), min_size=m, max_size=m)))


@given(matrices)
def test_divisors_match_minor_gcds(A):
    assert snf.elementary_divisors(A) == divisors_from_minors(A)


@given(matrices)
def test_transforms(A):
    U, D, V = snf.smith_normal_form(A)
    assert snf.matmul(snf.matmul(U, A), V) == D
    assert abs(det(U)) == 1 and abs(det(V)) == 1
    diag = [D[i][i] for i in range(min(len(D), len(D[0])))]
    assert all(D[i][j] == 0 for i in range(len(D)) for j in range(len(D[0])) if i != j)
    nz = [d for d in diag if d]
    assert all(d > 0 for d in nz)
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))


@given(matrices)
def test_kernel_is_saturated_basis(A):
    K = snf.integer_kernel(A)
    n = len(A[0])
    assert len(K) == n - snf.rank(A)
    for v in K:
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in A)
    if K:
        # saturated: the basis matrix has unit divisors
        assert all(d == 1 for d in snf.elementary_divisors(K))


@given(matrices, st.lists(st.integers(-3, 3), min_size=4, max_size=4))
def test_solve_integer(A, x):
    n = len(A[0])
    b = [sum(a * c for a, c in zip(row, x[:n])) for row in A]
    y = snf.solve_integer(A, b)
    assert y is not None
    assert [sum(a * c for a, c in zip(row, y)) for row in A] == b


def test_solve_reports_no_integral_solution():
    assert snf.solve_integer([[2, 0], [0, 3]], [1, 0]) is None
    assert snf.solve_integer([[1, 1], [1, 1]], [1, 2]) is None
    assert snf.solve_integer([], [0]) == []


def test_kernel_without_rows():
    assert snf.integer_kernel([], ncols=2) == [[1, 0], [0, 1]]


def test_against_sympy():
    sympy = pytest.importorskip("sympy")
    from sympy.matrices.normalforms import smith_normal_form
    from sympy.polys.domains import ZZ
    A = [[2, 4, 4], [-6, 6, 12], [10, -4, -16]]
    S = smith_normal_form(sympy.Matrix(A), domain=ZZ)
    want = [abs(int(S[i, i])) for i in range(3) if S[i, i] != 0]
    assert snf.elementary_divisors(A) == want == [2, 6, 12]

import random

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.matrices.normalforms import invariant_factors

from contactinv import linalg

from oracles import rank_mod2, rank_q

small_matrices = st.integers(1, 7).flatmap(
    lambda m: st.integers(1, 7).flatmap(
        lambda n: st.lists(st.lists(st.integers(-30, 30), min_size=n, max_size=n), min_size=m, max_size=m)
    )
)


@settings(max_examples=150, deadline=None)
@given(small_matrices)
def test_smith_form_matches_sympy(A):
    s = linalg.smith_normal_form(A)
    m, n = len(A), len(A[0])
    assert linalg.matmul(linalg.matmul(s.U, A), s.V) == s.S
    assert linalg.matmul(s.U, s.U_inv) == linalg.identity(m)
    assert linalg.matmul(s.V_inv, s.V) == linalg.identity(n)
    expected = [abs(int(x)) for x in invariant_factors(sympy.Matrix(A), domain=sympy.ZZ) if x]
    assert s.diagonal == expected
    assert all(s.S[i][j] == 0 for i in range(m) for j in range(n) if i != j or i >= s.rank)


def test_smith_form_on_dense_conjugate_does_not_blow_up():
    # this input made the textbook pivoting algorithm produce 4000-digit entries
    rng = random.Random(33)
    A = [[rng.randint(-2000, 2000) for _ in range(10)] for _ in range(10)]
    s = linalg.smith_normal_form(A)
    assert linalg.matmul(linalg.matmul(s.U, A), s.V) == s.S


def test_smith_form_of_empty_shapes():
    s = linalg.smith_normal_form([], 3)
    assert s.rank == 0 and s.V == linalg.identity(3)


@settings(max_examples=100, deadline=None)
@given(small_matrices)
def test_integer_kernel_is_saturated_basis(A):
    n = len(A[0])
    K = linalg.integer_kernel(A, n)
    assert len(K) == n - rank_q(A)
    for row in K:
        assert not any(linalg.matvec(A, row))
    if K:
        # saturated: the gcd of maximal minors is 1
        assert [abs(int(x)) for x in invariant_factors(sympy.Matrix(K), domain=sympy.ZZ)] == [1] * len(K)
    assert linalg.hermite_rows(K, n) == K


def test_hermite_is_canonical():
    rows = [[2, 4, 6], [1, 1, 1]]
    mixed = [[3, 5, 7], [-1, -1, -1]]
    assert linalg.hermite_rows(rows, 3) == linalg.hermite_rows(mixed, 3)


def test_reduce_and_coordinates():
    H = linalg.hermite_rows([[2, 0, 1], [0, 3, 1]], 3)
    v = [4, 9, 5]
    coords = linalg.echelon_coordinates(v, H)
    back = [sum(c * row[j] for c, row in zip(coords, H)) for j in range(3)]
    assert back == v
    with pytest.raises(ValueError):
        linalg.echelon_coordinates([1, 0, 0], H)
    assert linalg.reduce_by_hermite(v, H) == [0, 0, 0]


def test_solve_integer():
    A = [[2, 0], [0, 3]]
    assert linalg.solve_integer(A, [4, 9], 2) == [2, 3]
    assert linalg.solve_integer(A, [1, 0], 2) is None


@settings(max_examples=100, deadline=None)
@given(small_matrices)
def test_mod2_rank(A):
    n = len(A[0])
    assert linalg.rank_mod2(A, n) == rank_mod2(A)
    for v in linalg.kernel_mod2(A, n):
        assert all(x % 2 == 0 for x in linalg.matvec(A, v))
    assert len(linalg.kernel_mod2(A, n)) == n - rank_mod2(A)

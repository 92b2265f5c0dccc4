import numpy as np

from src.linalg import (
    Lattice,
    diagonalize,
    in_span,
    integer_kernel,
    is_prime,
    nullspace_mod,
    quotient_by_columns,
    rank_mod,
    row_basis,
    solve_mod,
    spans_equal,
    xgcd,
)


def test_is_prime():
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]


def test_rank_and_span_mod_p():
    A = np.array([[1, 2, 0], [2, 4, 0], [0, 0, 1]])
    assert rank_mod(A, 5) == 2
    assert rank_mod(A, 2) == 2
    assert in_span(row_basis(A, 5), [3, 6, 2], 5)
    assert not in_span(row_basis(A, 5), [0, 1, 0], 5)
    assert spans_equal(A, np.array([[1, 2, 1], [0, 0, 1]]), 5)


def test_row_basis_of_empty_set_has_requested_width():
    assert row_basis(np.zeros((0, 4), dtype=np.int64), 3, 4).shape == (0, 4)


def test_solve_and_nullspace():
    A = np.array([[1, 1, 0], [0, 1, 1]])
    x = solve_mod(A, [1, 2], 3)
    assert np.array_equal(A @ x % 3, [1, 2])
    N = nullspace_mod(A, 3)
    assert N.shape == (1, 3)
    assert not (A @ N.T % 3).any()
    assert solve_mod(np.array([[1, 1], [1, 1]]), [0, 1], 2) is None


def test_xgcd():
    x, y, g = xgcd(12, 42)
    assert g == 6 and 12 * x + 42 * y == 6


def test_diagonalize_is_a_unimodular_factorisation():
    A = [[2, 4, 4], [-6, 6, 12], [10, -4, -16]]
    D, S, S_inv, T = diagonalize(A, 3)
    SA = np.array(S) @ np.array(A) @ np.array(T)
    assert np.array_equal(SA, np.array(D))
    assert np.array_equal(np.array(S) @ np.array(S_inv), np.eye(3, dtype=int))
    assert all(D[i][j] == 0 for i in range(3) for j in range(3) if i != j)
    assert abs(np.prod([D[i][i] for i in range(3)])) == 144


def test_integer_kernel():
    A = [[1, 2, 3]]
    K = integer_kernel(A, 3)
    assert len(K) == 2
    for v in K:
        assert sum(a * b for a, b in zip(A[0], v)) == 0


def test_lattice_coordinates():
    L = Lattice([[2, 0], [1, 3]], 2)
    assert L.index() == 6
    v = [3, 3]
    assert L.from_coords(L.coords(v)) == v


def test_quotient_by_columns():
    # Z^2 / <(2, 0), (0, 3)> = Z2 x Z3
    orders, gens, S = quotient_by_columns([[2, 0], [0, 3]], 2, 2)
    assert sorted(orders) == [1, 6] or sorted(orders) == [2, 3]
    assert np.prod(orders) == 6

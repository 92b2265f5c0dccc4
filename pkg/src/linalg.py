"""
Exact linear algebra.

Two toolkits live here:

* row reduction over the prime field Z/p on numpy int64 arrays (rank, spans,
  solving, null spaces), used by the algebra layer;
* diagonalisation of integer matrices by unimodular row and column operations
  on Python ints, used to compute kernels, images and quotients of finite
  abelian groups given in cyclic coordinates.
"""
from __future__ import annotations

from typing import List, Optional, Sequence, Tuple

import numpy as np
from sympy import isprime


# ---------------------------------------------------------------------------
# Z/p
# ---------------------------------------------------------------------------

def is_prime(p: int) -> bool:
    return bool(isprime(int(p)))


def mod_p(A, p: int) -> np.ndarray:
    return np.asarray(A, dtype=np.int64) % p


def inv_mod_scalar(a: int, p: int) -> int:
    a = int(a) % p
    if a == 0:
        raise ZeroDivisionError("no inverse of 0 mod p")
    return pow(a, p - 2, p)


def rref_mod(A, p: int) -> Tuple[np.ndarray, List[int]]:
    """RREF over GF(p). Returns (reduced matrix, pivot columns)."""
    A = mod_p(A, p).copy()
    if A.ndim != 2:
        raise ValueError("rref_mod expects a 2-d array")
    m, n = A.shape
    r = 0
    piv_cols: List[int] = []
    for c in range(n):
        if r == m:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        A[r] = (A[r] * inv_mod_scalar(A[r, c], p)) % p
        factors = A[:, c].copy()
        factors[r] = 0
        if factors.any():
            A = (A - np.outer(factors, A[r])) % p
        piv_cols.append(c)
        r += 1
    return A, piv_cols


def rank_mod(A, p: int) -> int:
    A = np.asarray(A)
    if A.size == 0:
        return 0
    _, piv = rref_mod(A, p)
    return len(piv)


def row_basis(vectors, p: int, n: Optional[int] = None) -> np.ndarray:
    """Canonical basis (nonzero RREF rows) of the span of the given row vectors."""
    V = np.asarray(vectors, dtype=np.int64)
    if V.size == 0:
        width = n if n is not None else (V.shape[1] if V.ndim == 2 else 0)
        return np.zeros((0, width), dtype=np.int64)
    R, piv = rref_mod(V, p)
    return R[:len(piv)]


def in_span(basis: np.ndarray, v, p: int) -> bool:
    v = mod_p(v, p)
    if basis.shape[0] == 0:
        return not v.any()
    return rank_mod(np.vstack([basis, v]), p) == rank_mod(basis, p)


def spans_equal(U: np.ndarray, V: np.ndarray, p: int) -> bool:
    """Compare spans through their canonical RREF bases."""
    bu, bv = row_basis(U, p), row_basis(V, p)
    if bu.shape[0] != bv.shape[0]:
        return False
    if bu.shape[0] == 0:
        return True
    return np.array_equal(bu, bv)


def solve_mod(A, b, p: int) -> Optional[np.ndarray]:
    """One solution x of A x = b over GF(p) (free variables 0), or None."""
    A = mod_p(A, p)
    b = mod_p(b, p).reshape(-1, 1)
    m, n = A.shape
    if m == 0:
        return np.zeros(n, dtype=np.int64)
    R, piv = rref_mod(np.concatenate([A, b], axis=1), p)
    if n in piv:
        return None
    x = np.zeros(n, dtype=np.int64)
    for row, c in enumerate(piv):
        x[c] = R[row, n]
    return x


def nullspace_mod(A, p: int) -> np.ndarray:
    """Right null space of A over GF(p); rows of the result form a basis."""
    A = mod_p(A, p)
    m, n = A.shape
    if m == 0:
        return np.eye(n, dtype=np.int64)
    R, piv = rref_mod(A, p)
    free = [j for j in range(n) if j not in set(piv)]
    basis = []
    for f in free:
        x = np.zeros(n, dtype=np.int64)
        x[f] = 1
        for row, c in enumerate(piv):
            x[c] = (-R[row, f]) % p
        basis.append(x)
    if not basis:
        return np.zeros((0, n), dtype=np.int64)
    return np.stack(basis)


def coordinates(basis: np.ndarray, v, p: int) -> Optional[np.ndarray]:
    """Coefficients c with c @ basis = v, or None if v is outside the span."""
    if basis.shape[0] == 0:
        return np.zeros(0, dtype=np.int64) if not mod_p(v, p).any() else None
    return solve_mod(basis.T, v, p)


# ---------------------------------------------------------------------------
# Z: diagonalisation by unimodular operations
# ---------------------------------------------------------------------------

def xgcd(a: int, b: int) -> Tuple[int, int, int]:
    """(x, y, g) with x*a + y*b == g == gcd(a, b) >= 0."""
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    if g < 0:
        x, y, g = -x, -y, -g
    return x, y, g


def _identity(n: int) -> List[List[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def diagonalize(A: Sequence[Sequence[int]], num_cols: int):
    """
    Find D = S A T with D diagonal (no divisibility normalisation) and S, T
    unimodular. Also returns S^-1.

    Returns:
        (D, S, S_inv, T) as lists of lists of Python ints.
    """
    D = [[int(x) for x in row] for row in A]
    for row in D:
        if len(row) != num_cols:
            raise ValueError("ragged integer matrix")
    m, n = len(D), num_cols
    S = _identity(m)
    S_inv = _identity(m)
    T = _identity(n)

    def row_op(i1, i2, j):
        # 2x2 unimodular move putting gcd(D[i1][j], D[i2][j]) at row i1
        a, b = D[i1][j], D[i2][j]
        if b == 0:
            return
        x, y, g = xgcd(a, b)
        mbg, ag, bg = -b // g, a // g, b // g
        for M in (D, S):
            r1, r2 = M[i1], M[i2]
            for jj in range(len(r1)):
                aa, bb = r1[jj], r2[jj]
                r1[jj] = x * aa + y * bb
                r2[jj] = mbg * aa + ag * bb
        for row in S_inv:
            c1, c2 = row[i1], row[i2]
            row[i1] = ag * c1 + bg * c2
            row[i2] = -y * c1 + x * c2

    def col_op(j1, j2, i):
        a, b = D[i][j1], D[i][j2]
        if b == 0:
            return
        x, y, g = xgcd(a, b)
        mbg, ag = -b // g, a // g
        for M in (D, T):
            for row in M:
                aa, bb = row[j1], row[j2]
                row[j1] = x * aa + y * bb
                row[j2] = mbg * aa + ag * bb

    for k in range(min(m, n)):
        while True:
            for i in range(k + 1, m):
                row_op(k, i, k)
            if all(D[k][j] == 0 for j in range(k + 1, n)):
                break
            for j in range(k + 1, n):
                col_op(k, j, k)
            if all(D[i][k] == 0 for i in range(k + 1, m)):
                break
    return D, S, S_inv, T


def integer_kernel(A: Sequence[Sequence[int]], num_cols: int) -> List[List[int]]:
    """Basis of {x in Z^n : A x = 0}, as a list of vectors."""
    m = len(A)
    if m == 0:
        return [list(col) for col in _identity(num_cols)]
    D, _, _, T = diagonalize(A, num_cols)
    return [
        [T[i][j] for i in range(num_cols)]
        for j in range(num_cols)
        if j >= m or D[j][j] == 0
    ]


class Lattice:
    """
    Full-rank sublattice of Z^k given by generators.

    The basis is B = S^-1 diag(d), so coordinates in that basis are
    diag(1/d) S v.
    """

    def __init__(self, generators: Sequence[Sequence[int]], dim: int):
        self.dim = dim
        cols = [list(g) for g in generators]
        G = [[cols[j][i] for j in range(len(cols))] for i in range(dim)]
        if not cols:
            raise ValueError("a full-rank lattice needs generators")
        D, S, S_inv, _ = diagonalize(G, len(cols))
        self.diag = [D[i][i] if i < len(cols) else 0 for i in range(dim)]
        if any(d == 0 for d in self.diag):
            raise ValueError("generators do not span a full-rank lattice")
        self._S = S
        self.basis = [[S_inv[i][j] * self.diag[j] for i in range(dim)] for j in range(dim)]

    def index(self) -> int:
        """[Z^k : L]"""
        out = 1
        for d in self.diag:
            out *= abs(d)
        return out

    def coords(self, v: Sequence[int]) -> List[int]:
        out = []
        for j in range(self.dim):
            s = sum(self._S[j][i] * int(v[i]) for i in range(self.dim))
            if s % self.diag[j] != 0:
                raise ValueError("vector is not in the lattice")
            out.append(s // self.diag[j])
        return out

    def from_coords(self, c: Sequence[int]) -> List[int]:
        return [sum(self.basis[j][i] * c[j] for j in range(self.dim)) for i in range(self.dim)]


def quotient_by_columns(Y: Sequence[Sequence[int]], rows: int, cols: int):
    """
    Structure of Z^rows / Y Z^cols.

    Returns:
        (orders, generators, S): orders[i] is the order of the i-th cyclic
        summand (0 means infinite, 1 means trivial), generators[i] is a
        preimage in Z^rows of its generator, and x maps to coordinates
        (S x)_i mod orders[i].
    """
    if cols == 0:
        I = _identity(rows)
        return [0] * rows, [list(r) for r in I], I
    D, S, S_inv, _ = diagonalize(Y, cols)
    orders = [abs(D[i][i]) if i < cols else 0 for i in range(rows)]
    generators = [[S_inv[r][i] for r in range(rows)] for i in range(rows)]
    return orders, generators, S

"""
Exact integer and mod-2 linear algebra on small dense matrices.

Matrices are lists of rows of Python ints. Everything here is deterministic:
pivot choices depend only on the input, so results are reproducible
byte-for-byte.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Sequence

Matrix = list[list[int]]


def zeros(m: int, n: int) -> Matrix:
    return [[0] * n for _ in range(m)]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def copy(A: Sequence[Sequence[int]]) -> Matrix:
    return [list(row) for row in A]


def transpose(A: Sequence[Sequence[int]], ncols: int | None = None) -> Matrix:
    if not A:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*A)]


def matmul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> Matrix:
    if not A:
        return []
    inner = len(B)
    ncols = len(B[0]) if B else 0
    out = zeros(len(A), ncols)
    for i, row in enumerate(A):
        acc = out[i]
        for k in range(inner):
            a = row[k]
            if a:
                bk = B[k]
                for j in range(ncols):
                    if bk[j]:
                        acc[j] += a * bk[j]
    return out


def matvec(A: Sequence[Sequence[int]], v: Sequence[int]) -> list[int]:
    return [sum(a * x for a, x in zip(row, v) if a) for row in A]


def is_zero(A: Sequence[Sequence[int]]) -> bool:
    return all(x == 0 for row in A for x in row)


def column(A: Sequence[Sequence[int]], j: int) -> list[int]:
    return [row[j] for row in A]


@dataclass
class SmithForm:
    """``U @ A @ V == S`` with ``U``, ``V`` unimodular and ``S`` diagonal.

    The diagonal entries ``S[i][i]`` for ``i < rank`` are positive and each
    divides the next.
    """

    S: Matrix
    U: Matrix
    U_inv: Matrix
    V: Matrix
    V_inv: Matrix
    rank: int

    @property
    def diagonal(self) -> list[int]:
        return [self.S[i][i] for i in range(self.rank)]


def hermite_transform(A: Sequence[Sequence[int]], ncols: int | None = None) -> tuple[Matrix, Matrix, int]:
    """Row Hermite form ``H = U A`` with ``U`` unimodular.

    Returns ``(H, U, rank)``; the first ``rank`` rows of ``H`` are the
    pivot rows and the remaining rows are zero.
    """
    m = len(A)
    n = len(A[0]) if m else (ncols or 0)
    rows = [list(A[i]) + [int(i == k) for k in range(m)] for i in range(m)]
    r = 0
    for c in range(n):
        while True:
            nz = [i for i in range(r, m) if rows[i][c]]
            if not nz:
                break
            piv = min(nz, key=lambda i: (abs(rows[i][c]), i))
            rows[r], rows[piv] = rows[piv], rows[r]
            others = [i for i in range(r + 1, m) if rows[i][c]]
            if not others:
                break
            p = rows[r]
            for i in others:
                q = _nearest(rows[i][c], p[c])
                rows[i] = [x - q * y for x, y in zip(rows[i], p)]
        if r < m and rows[r][c]:
            if rows[r][c] < 0:
                rows[r] = [-x for x in rows[r]]
            p = rows[r]
            for i in range(r):
                q = rows[i][c] // p[c]
                if q:
                    rows[i] = [x - q * y for x, y in zip(rows[i], p)]
            r += 1
    return [row[:n] for row in rows], [row[n:] for row in rows], r


def _is_diagonal(S: Matrix) -> bool:
    return all(not x or i == j for i, row in enumerate(S) for j, x in enumerate(row))


def _inverse_unimodular(U: Matrix) -> Matrix:
    _, inv, _ = hermite_transform(U)
    return inv


def _nearest(a: int, p: int) -> int:
    """Quotient leaving the remainder of least absolute value."""
    q, r = divmod(a, p)
    if 2 * abs(r) > abs(p):
        q += 1
    return q


def smith_normal_form(A: Sequence[Sequence[int]], ncols: int | None = None) -> SmithForm:
    """Smith normal form with both transforms and their inverses.

    Alternates row and column Hermite reductions until the matrix is
    diagonal, which keeps intermediate entries small, then repairs
    divisibility with 2x2 gcd steps.  ``ncols`` is needed only when ``A``
    has no rows.
    """
    m = len(A)
    n = len(A[0]) if m else (ncols or 0)
    S = copy(A)
    U, V = identity(m), identity(n)
    if m and n:
        while True:
            S, U1, _ = hermite_transform(S, n)
            U = matmul(U1, U)
            if _is_diagonal(S):
                break
            St, V1, _ = hermite_transform(transpose(S, n), m)
            S = transpose(St, m)
            V = matmul(V, transpose(V1, n))
            if _is_diagonal(S):
                break
    # Hermite forms leave the pivots on the leading diagonal, positive
    rank = 0
    while rank < min(m, n) and S[rank][rank]:
        rank += 1
    changed = True
    while changed:
        changed = False
        for i in range(rank):
            for j in range(i + 1, rank):
                a, b = S[i][i], S[j][j]
                if b % a == 0:
                    continue
                g, x, y = _ext_gcd(a, b)
                # [[x, y], [-b/g, a/g]] diag(a, b) [[1, -y b/g], [1, x a/g]] = diag(g, ab/g)
                R = [[x, y], [-b // g, a // g]]
                C = [[1, -y * b // g], [1, x * a // g]]
                U = _apply_rows(U, i, j, R)
                V = _apply_cols(V, i, j, C)
                S[i][i], S[j][j] = g, a * b // g
                changed = True
    return SmithForm(S, U, _inverse_unimodular(U), V, _inverse_unimodular(V), rank)


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def _apply_rows(M: Matrix, i: int, j: int, R: list[list[int]]) -> Matrix:
    M = copy(M)
    ri, rj = M[i], M[j]
    M[i] = [R[0][0] * a + R[0][1] * b for a, b in zip(ri, rj)]
    M[j] = [R[1][0] * a + R[1][1] * b for a, b in zip(ri, rj)]
    return M


def _apply_cols(M: Matrix, i: int, j: int, C: list[list[int]]) -> Matrix:
    M = copy(M)
    for row in M:
        a, b = row[i], row[j]
        row[i], row[j] = a * C[0][0] + b * C[1][0], a * C[0][1] + b * C[1][1]
    return M


def hermite_rows(rows: Sequence[Sequence[int]], ncols: int) -> Matrix:
    """Row-style Hermite normal form of the lattice spanned by ``rows``.

    Pivots are positive; entries above each pivot are reduced into
    ``[0, pivot)``. Zero rows are dropped.
    """
    H = [list(r) for r in rows if any(r)]
    r = 0
    for c in range(ncols):
        # gcd-combine column c among rows r..
        while True:
            nz = [i for i in range(r, len(H)) if H[i][c]]
            if not nz:
                break
            piv = min(nz, key=lambda i: (abs(H[i][c]), i))
            H[r], H[piv] = H[piv], H[r]
            others = [i for i in range(r + 1, len(H)) if H[i][c]]
            if not others:
                break
            for i in others:
                q = H[i][c] // H[r][c]
                H[i] = [a - q * b for a, b in zip(H[i], H[r])]
        if r < len(H) and H[r][c]:
            if H[r][c] < 0:
                H[r] = [-a for a in H[r]]
            for i in range(r):
                q = H[i][c] // H[r][c]
                if q:
                    H[i] = [a - q * b for a, b in zip(H[i], H[r])]
            r += 1
        H = H[:r] + [row for row in H[r:] if any(row)]
    return H[:r]


def reduce_by_hermite(v: Sequence[int], H: Sequence[Sequence[int]]) -> list[int]:
    """Reduce ``v`` modulo the row lattice of the Hermite form ``H``.

    Entries at pivot columns end up in ``(-p/2, p/2]``, which keeps
    representatives short.
    """
    v = list(v)
    for row in H:
        c = next(j for j, x in enumerate(row) if x)
        p = row[c]
        q = v[c] // p
        if v[c] - q * p > p // 2:
            q += 1
        if q:
            v = [a - q * b for a, b in zip(v, row)]
    return v


def echelon_coordinates(v: Sequence[int], H: Sequence[Sequence[int]]) -> list[int]:
    """Coordinates of ``v`` in the row basis of the echelon matrix ``H``.

    Raises ValueError when ``v`` is not in the row lattice.
    """
    v = list(v)
    coords = []
    for row in H:
        c = next(j for j, x in enumerate(row) if x)
        q, rem = divmod(v[c], row[c])
        if rem:
            raise ValueError("vector is not in the lattice")
        coords.append(q)
        if q:
            v = [a - q * b for a, b in zip(v, row)]
    if any(v):
        raise ValueError("vector is not in the lattice")
    return coords


def integer_kernel(A: Sequence[Sequence[int]], ncols: int) -> Matrix:
    """Basis (as rows) of the saturated lattice ``{x in Z^n : A x = 0}``.

    The basis is returned in Hermite normal form, so it is canonical.
    """
    if not A or is_zero(A):
        return hermite_rows(identity(ncols), ncols)
    _, U, r = hermite_transform(transpose(A, ncols), len(A))
    return hermite_rows(U[r:], ncols)


def solve_integer(A: Sequence[Sequence[int]], b: Sequence[int], ncols: int) -> list[int] | None:
    """One integer solution of ``A x = b`` or ``None``."""
    snf = smith_normal_form(A, ncols)
    c = matvec(snf.U, b)
    y = [0] * ncols
    for i, ci in enumerate(c):
        if i < snf.rank:
            d = snf.S[i][i]
            if ci % d:
                return None
            y[i] = ci // d
        elif ci:
            return None
    return matvec(snf.V, y)


def content(v: Sequence[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g


# --- mod 2 ---------------------------------------------------------------


def rref_mod2(A: Sequence[Sequence[int]], ncols: int) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form over GF(2) and the pivot columns."""
    R = [[x & 1 for x in row] for row in A]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(R)) if R[i][c]), None)
        if p is None:
            continue
        R[r], R[p] = R[p], R[r]
        for i in range(len(R)):
            if i != r and R[i][c]:
                R[i] = [a ^ b for a, b in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
    return R[:r], pivots


def rank_mod2(A: Sequence[Sequence[int]], ncols: int) -> int:
    return len(rref_mod2(A, ncols)[1])


def kernel_mod2(A: Sequence[Sequence[int]], ncols: int) -> Matrix:
    """Basis (rows) of the right kernel of ``A`` over GF(2)."""
    R, pivots = rref_mod2(A, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for row, p in zip(R, pivots):
            if row[f]:
                v[p] = 1
        basis.append(v)
    return basis

"""Exact dense linear algebra over an ambient field (lists of integer codes)."""

from __future__ import annotations

from typing import Sequence

from .gf import Field

Matrix = list[list[int]]


def copy(A: Sequence[Sequence[int]]) -> Matrix:
    return [list(r) for r in A]


def zeros(r: int, c: int) -> Matrix:
    return [[0] * c for _ in range(r)]


def identity(F: Field, n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def rref(F: Field, A: Sequence[Sequence[int]], ncols: int | None = None) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form with zero rows dropped, and the pivot columns."""
    R = copy(A)
    if ncols is None:
        ncols = len(R[0]) if R else 0
    pivots: list[int] = []
    row = 0
    nrows = len(R)
    add, mul, neg = F.add, F.mul, F.neg
    for col in range(ncols):
        if row == nrows:
            break
        piv = None
        for r in range(row, nrows):
            if R[r][col]:
                piv = r
                break
        if piv is None:
            continue
        R[row], R[piv] = R[piv], R[row]
        inv = F.inv(R[row][col])
        if inv != 1:
            R[row] = [mul(inv, x) for x in R[row]]
        prow = R[row]
        for r in range(nrows):
            if r != row and R[r][col]:
                c = neg(R[r][col])
                R[r] = [add(x, mul(c, y)) if y else x for x, y in zip(R[r], prow)]
        pivots.append(col)
        row += 1
    return R[:row], pivots


def rank(F: Field, A: Sequence[Sequence[int]]) -> int:
    if not A:
        return 0
    return len(rref(F, A)[1])


def nullspace(F: Field, A: Sequence[Sequence[int]], ncols: int) -> Matrix:
    """Basis (as rows) of {x : A x^t = 0}, in the standard RREF-derived form."""
    R, piv = rref(F, A, ncols) if A else ([], [])
    free = [c for c in range(ncols) if c not in set(piv)]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for i, pc in enumerate(piv):
            v[pc] = F.neg(R[i][f])
        basis.append(v)
    return basis


def matvec(F: Field, A: Sequence[Sequence[int]], v: Sequence[int]) -> list[int]:
    add, mul = F.add, F.mul
    out = []
    for row in A:
        s = 0
        for x, y in zip(row, v):
            if x and y:
                s = add(s, mul(x, y))
        out.append(s)
    return out


def matmul(F: Field, A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> Matrix:
    if not A:
        return []
    cols = list(zip(*B)) if B else []
    return [matvec(F, cols, row) for row in A] if cols else [[] for _ in A]


def transpose(A: Sequence[Sequence[int]]) -> Matrix:
    return [list(c) for c in zip(*A)]


def det(F: Field, A: Sequence[Sequence[int]]) -> int:
    n = len(A)
    R = copy(A)
    d = 1
    for col in range(n):
        piv = next((r for r in range(col, n) if R[r][col]), None)
        if piv is None:
            return 0
        if piv != col:
            R[col], R[piv] = R[piv], R[col]
            d = F.neg(d)
        d = F.mul(d, R[col][col])
        inv = F.inv(R[col][col])
        for r in range(col + 1, n):
            if R[r][col]:
                c = F.neg(F.mul(R[r][col], inv))
                R[r] = [F.add(x, F.mul(c, y)) for x, y in zip(R[r], R[col])]
    return d


def inverse(F: Field, A: Sequence[Sequence[int]]) -> Matrix:
    n = len(A)
    aug = [list(r) + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(A)]
    R, piv = rref(F, aug, n)
    if piv != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in R]


def solve(F: Field, A: Sequence[Sequence[int]], b: Sequence[int]) -> list[int] | None:
    """One solution x of A x = b, or None when inconsistent."""
    ncols = len(A[0]) if A else 0
    aug = [list(r) + [bi] for r, bi in zip(A, b)]
    R, piv = rref(F, aug, ncols + 1)
    if piv and piv[-1] == ncols:
        return None
    x = [0] * ncols
    for i, pc in enumerate(piv):
        x[pc] = R[i][ncols]
    return x


def in_row_space(F: Field, A: Sequence[Sequence[int]], v: Sequence[int]) -> bool:
    return rank(F, list(A) + [list(v)]) == rank(F, A)


def same_row_space(F: Field, A: Sequence[Sequence[int]], B: Sequence[Sequence[int]], ncols: int) -> bool:
    RA = rref(F, A, ncols)[0] if A else []
    RB = rref(F, B, ncols)[0] if B else []
    return RA == RB


def submatrix_columns(A: Sequence[Sequence[int]], cols: Sequence[int]) -> Matrix:
    return [[row[c] for c in cols] for row in A]


def adjugate(F: Field, A: Sequence[Sequence[int]]) -> Matrix:
    n = len(A)
    if n == 1:
        return [[1]]
    adj = zeros(n, n)
    for i in range(n):
        for j in range(n):
            minor = [row[:j] + row[j + 1:] for k, row in enumerate(A) if k != i]
            c = det(F, minor)
            adj[j][i] = c if (i + j) % 2 == 0 else F.neg(c)
    return adj

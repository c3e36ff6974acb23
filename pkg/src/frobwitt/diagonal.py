"""Diagonal (Smith-like) form over a Galois ring W_n(F_q).

W_n(F_q) is a chain ring: every ideal is p^e W_n.  Pivoting on an entry
of minimal p-valuation (ties broken in row-major order) clears its row
and column with exact divisions, so any matrix A can be brought to
U A V = diag(p^e_1, p^e_2, ...) with U, V invertible and e_1 <= e_2 <= ....
Matrices are lists of rows of ring elements (coefficient tuples).
"""

from __future__ import annotations

from dataclasses import dataclass

from .galois import GaloisRing


def identity(R: GaloisRing, k: int):
    return [[R.one if i == j else R.zero for j in range(k)] for i in range(k)]


def zeros(R: GaloisRing, r: int, c: int):
    return [[R.zero] * c for _ in range(r)]


def matmul(R: GaloisRing, A, B):
    if not A:
        return []
    inner = len(B)
    cols = len(B[0]) if B else 0
    out = []
    for row in A:
        new = []
        for j in range(cols):
            acc = R.zero
            for k in range(inner):
                a = row[k]
                if any(a):
                    b = B[k][j]
                    if any(b):
                        acc = R.add(acc, R.mul(a, b))
            new.append(acc)
        out.append(new)
    return out


def matvec(R: GaloisRing, A, v):
    out = []
    for row in A:
        acc = R.zero
        for a, x in zip(row, v):
            if any(a) and any(x):
                acc = R.add(acc, R.mul(a, x))
        out.append(acc)
    return out


def transpose(A, ncols=None):
    if not A:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*A)]


def mat_sigma(R: GaloisRing, A, k: int):
    return [[R.sigma(a, k) for a in row] for row in A]


@dataclass
class DiagonalForm:
    """U * A * V == D with D = diag(p^exps[k]); exps[k] == n marks a zero pivot."""

    U: list
    V: list
    exps: list
    rows: int
    cols: int

    def diagonal(self, R: GaloisRing):
        D = zeros(R, self.rows, self.cols)
        for k, e in enumerate(self.exps):
            if e < R.n:
                D[k][k] = R.from_int(R.p ** e)
        return D


def diagonal_form(R: GaloisRing, A, rows: int | None = None, cols: int | None = None) -> DiagonalForm:
    rows = len(A) if rows is None else rows
    cols = (len(A[0]) if A else 0) if cols is None else cols
    M = [list(r) for r in A]
    U = identity(R, rows)
    V = identity(R, cols)
    exps = []
    n = R.n
    for k in range(min(rows, cols)):
        best = None
        for i in range(k, rows):
            row = M[i]
            for j in range(k, cols):
                v = R.valuation(row[j])
                if v < n and (best is None or v < best[0]):
                    best = (v, i, j)
                    if v == 0:
                        break
            if best is not None and best[0] == 0:
                break
        if best is None:
            exps.extend([n] * (min(rows, cols) - k))
            break
        v, i, j = best
        if i != k:
            M[k], M[i] = M[i], M[k]
            U[k], U[i] = U[i], U[k]
        if j != k:
            for row in M:
                row[k], row[j] = row[j], row[k]
            for row in V:
                row[k], row[j] = row[j], row[k]
        pivot = M[k][k]
        unit_inv = R.inv(R.divp(pivot, v))
        # normalise pivot row to p^v
        M[k] = [R.mul(x, unit_inv) for x in M[k]]
        U[k] = [R.mul(x, unit_inv) for x in U[k]]
        pv = R.from_int(R.p ** v)
        for i2 in range(k + 1, rows):
            a = M[i2][k]
            if any(a):
                c = R.divp(a, v)
                M[i2] = [R.sub(x, R.mul(c, y)) for x, y in zip(M[i2], M[k])]
                U[i2] = [R.sub(x, R.mul(c, y)) for x, y in zip(U[i2], U[k])]
        for j2 in range(k + 1, cols):
            a = M[k][j2]
            if any(a):
                c = R.divp(a, v)
                for row in M:
                    row[j2] = R.sub(row[j2], R.mul(c, row[k]))
                for row in V:
                    row[j2] = R.sub(row[j2], R.mul(c, row[k]))
        M[k][k] = pv
        exps.append(v)
    return DiagonalForm(U, V, exps, rows, cols)


def inverse(R: GaloisRing, A):
    """Inverse of a square matrix invertible over R."""
    k = len(A)
    M = [list(row) + [R.one if i == j else R.zero for j in range(k)] for i, row in enumerate(A)]
    for c in range(k):
        piv = None
        for r in range(c, k):
            if R.is_unit(M[r][c]):
                piv = r
                break
        if piv is None:
            raise ArithmeticError("matrix is not invertible over the ring")
        M[c], M[piv] = M[piv], M[c]
        inv = R.inv(M[c][c])
        M[c] = [R.mul(x, inv) for x in M[c]]
        for r in range(k):
            if r != c and any(M[r][c]):
                f = M[r][c]
                M[r] = [R.sub(x, R.mul(f, y)) for x, y in zip(M[r], M[c])]
    return [row[k:] for row in M]

"""Dense linear algebra over F_q (elements are encoded ints)."""

from __future__ import annotations

from .fields import FiniteField


def rref(F: FiniteField, rows):
    """Reduced row echelon form; returns (rows, pivot columns)."""
    M = [list(r) for r in rows]
    if not M:
        return [], []
    ncols = len(M[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = F.inv(M[r][c])
        M[r] = [F.mul(inv, x) for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def rank(F: FiniteField, rows) -> int:
    return len(rref(F, rows)[1])


def row_space_basis(F: FiniteField, vectors):
    """Canonical (RREF) basis of the span of the given vectors."""
    basis, _ = rref(F, vectors)
    return basis


def nullspace(F: FiniteField, rows, ncols: int):
    """Basis of {x : rows * x = 0}."""
    R, pivots = rref(F, rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    out = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for r, pc in zip(R, pivots):
            v[pc] = F.neg(r[f])
        out.append(v)
    return out


def matvec(F: FiniteField, A, v):
    out = []
    for row in A:
        acc = 0
        for a, x in zip(row, v):
            if a and x:
                acc = F.add(acc, F.mul(a, x))
        out.append(acc)
    return out


def transpose(A):
    return [list(c) for c in zip(*A)] if A else []


def solve(F: FiniteField, A, b):
    """Some x with A x = b, or None."""
    ncols = len(A[0]) if A else 0
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    R, pivots = rref(F, aug)
    if ncols in pivots:
        return None
    x = [0] * ncols
    for r, pc in zip(R, pivots):
        x[pc] = r[-1]
    return x

"""Exact matrix algebra over the supported rings.

Matrices are lists of rows of ring payloads; the ring is passed explicitly.
Over fields everything is Gaussian elimination.  Over semilocal rings a
problem is solved in every residue field, the solutions are glued with the
CRT section of the ring, and the result is corrected by Newton iteration
``X <- X (2I - A X)``, which converges because the radical is nilpotent.
"""

from __future__ import annotations

from typing import Sequence

from .errors import DimensionMismatch, NotInvertible
from .rings.core import Ring, RingElement

Matrix = list


def _payloads(M, R: Ring) -> Matrix:
    return [[x.value if isinstance(x, RingElement) else x for x in row] for row in M]


def identity(R: Ring, n: int) -> Matrix:
    return [[R.one if i == j else R.zero for j in range(n)] for i in range(n)]


def zeros(R: Ring, rows: int, cols: int) -> Matrix:
    return [[R.zero] * cols for _ in range(rows)]


def transpose(M: Matrix) -> Matrix:
    return [list(col) for col in zip(*M)] if M else []


def matmul(R: Ring, A: Matrix, B: Matrix) -> Matrix:
    if A and len(A[0]) != len(B):
        raise DimensionMismatch(f"{len(A)}x{len(A[0])} times {len(B)}x?")
    cols = len(B[0]) if B else 0
    out = []
    for row in A:
        new = []
        for j in range(cols):
            acc = R.zero
            for a, brow in zip(row, B):
                b = brow[j]
                if a != R.zero and b != R.zero:
                    acc = R.add(acc, R.mul(a, b))
            new.append(acc)
        out.append(new)
    return out


def matvec(R: Ring, A: Matrix, v: Sequence) -> list:
    out = []
    for row in A:
        acc = R.zero
        for a, x in zip(row, v):
            if a != R.zero and x != R.zero:
                acc = R.add(acc, R.mul(a, x))
        out.append(acc)
    return out


def matsub(R: Ring, A: Matrix, B: Matrix) -> Matrix:
    return [[R.sub(a, b) for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def map_matrix(fn, M: Matrix) -> Matrix:
    return [[fn(x) for x in row] for row in M]


def columns(M: Matrix) -> list:
    return transpose(M)


def from_columns(cols: Sequence[Sequence], rows: int | None = None) -> Matrix:
    if not cols:
        return [[] for _ in range(rows or 0)]
    return [list(r) for r in zip(*cols)]


# -- fields ------------------------------------------------------------------------


def row_reduce(F: Ring, M: Matrix):
    """Reduced row echelon form over a field; returns (rref, pivot columns)."""
    A = [list(r) for r in M]
    rows = len(A)
    cols = len(A[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if A[i][c] != F.zero), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = F.inv(A[r][c])
        A[r] = [F.mul(inv, x) for x in A[r]]
        for i in range(rows):
            if i != r and A[i][c] != F.zero:
                f = A[i][c]
                A[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return A, pivots


def rank(F: Ring, M: Matrix) -> int:
    if not M or not M[0]:
        return 0
    return len(row_reduce(F, M)[1])


def kernel(F: Ring, M: Matrix, ncols: int | None = None) -> list:
    """Basis of {x : M x = 0} over a field, one free variable per vector."""
    n = ncols if ncols is not None else (len(M[0]) if M else 0)
    if not M:
        return [[F.one if i == j else F.zero for i in range(n)] for j in range(n)]
    A, pivots = row_reduce(F, M)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        x = [F.zero] * n
        x[f] = F.one
        for i, c in enumerate(pivots):
            x[c] = F.neg(A[i][f])
        basis.append(x)
    return basis


def solve(F: Ring, M: Matrix, b: Sequence):
    """One solution of M x = b over a field, or None."""
    n = len(M[0]) if M else 0
    aug = [list(r) + [y] for r, y in zip(M, b)]
    A, pivots = row_reduce(F, aug)
    if n in pivots:
        return None
    x = [F.zero] * n
    for i, c in enumerate(pivots):
        x[c] = A[i][n]
    return x


def _field_inverse(F: Ring, M: Matrix) -> Matrix:
    n = len(M)
    aug = [list(r) + [F.one if i == j else F.zero for j in range(n)] for i, r in enumerate(M)]
    A, pivots = row_reduce(F, aug)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise NotInvertible("singular matrix")
    return [row[n:] for row in A]


def _field_right_inverse(F: Ring, M: Matrix) -> Matrix:
    """X with M X = I for a k x n matrix of rank k."""
    k = len(M)
    n = len(M[0]) if k else 0
    cols = []
    for t in range(k):
        e = [F.one if i == t else F.zero for i in range(k)]
        x = solve(F, M, e)
        if x is None:
            raise NotInvertible("matrix is not surjective")
        cols.append(x)
    return from_columns(cols, n)


def _field_det(F: Ring, M: Matrix):
    A = [list(r) for r in M]
    n = len(A)
    det = F.one
    for c in range(n):
        piv = next((i for i in range(c, n) if A[i][c] != F.zero), None)
        if piv is None:
            return F.zero
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            det = F.neg(det)
        det = F.mul(det, A[c][c])
        inv = F.inv(A[c][c])
        for i in range(c + 1, n):
            if A[i][c] != F.zero:
                f = F.mul(A[i][c], inv)
                A[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(A[i], A[c])]
    return det


# -- general commutative rings ------------------------------------------------------


def _subset_det(R: Ring, M: Matrix):
    """Division-free determinant by dynamic programming over column subsets."""
    n = len(M)
    dp = {0: R.one}
    for i in range(n):
        new = {}
        for mask, val in dp.items():
            # sign of inserting column j after the already used columns
            above = 0
            for j in range(n - 1, -1, -1):
                bit = 1 << j
                if mask & bit:
                    above += 1
                    continue
                a = M[i][j]
                if a == R.zero:
                    continue
                term = R.mul(val, a)
                if above % 2:
                    term = R.neg(term)
                key = mask | bit
                new[key] = R.add(new[key], term) if key in new else term
        dp = new
    return dp.get((1 << n) - 1, R.zero)


def det_payload(R: Ring, M: Matrix):
    if not M:
        return R.one
    if len(M) != len(M[0]):
        raise DimensionMismatch("determinant of a non-square matrix")
    if R.is_field:
        return _field_det(R, M)
    return _subset_det(R, M)


def det(M, R: Ring) -> RingElement:
    return RingElement(R, det_payload(R, _payloads(M, R)))


def reduce_matrix(fn, M: Matrix) -> Matrix:
    return map_matrix(fn, M)


def residue_ranks(R: Ring, M: Matrix) -> list:
    """Rank of M in every residue field of R."""
    return [rank(r.field, map_matrix(r.reduce, M)) for r in R.residues()]


def is_invertible(R: Ring, M: Matrix) -> bool:
    """Square M is invertible iff it is invertible in every residue field."""
    n = len(M)
    if n == 0:
        return True
    if R.is_field:
        return rank(R, M) == n
    return all(k == n for k in residue_ranks(R, M))


def lift_matrix(R: Ring, per_residue: Sequence[Matrix]) -> Matrix:
    """Entrywise CRT: a matrix over R reducing to the given residue matrices."""
    rows = len(per_residue[0])
    cols = len(per_residue[0][0]) if rows else 0
    return [[R.lift_residues([m[i][j] for m in per_residue]) for j in range(cols)] for i in range(rows)]


def _newton_right(R: Ring, A: Matrix, X: Matrix, steps: int) -> Matrix:
    k = len(A)
    I = identity(R, k)
    two = R.from_int(2)
    for _ in range(steps + 1):
        AX = matmul(R, A, X)
        if AX == I:
            return X
        X = matmul(R, X, [[R.sub(two if i == j else R.zero, AX[i][j]) for j in range(k)] for i in range(k)])
    if matmul(R, A, X) != I:
        raise NotInvertible("Newton correction did not converge")
    return X


def right_inverse(R: Ring, A: Matrix) -> Matrix:
    """X (n x k) with A X = I for a k x n matrix A, surjective modulo every maximal ideal."""
    k = len(A)
    n = len(A[0]) if k else 0
    if k == 0:
        return [[] for _ in range(n)]
    if R.is_field:
        return _field_right_inverse(R, A)
    data = R.residues()
    parts = [_field_right_inverse(r.field, map_matrix(r.reduce, A)) for r in data]
    X = lift_matrix(R, parts)
    return _newton_right(R, A, X, max(1, data.nilpotency).bit_length())


def inverse(R: Ring, A: Matrix) -> Matrix:
    n = len(A)
    if n == 0:
        return []
    if R.is_field:
        return _field_inverse(R, A)
    X = right_inverse(R, A)
    if matmul(R, X, A) != identity(R, n):
        raise NotInvertible("matrix has a right inverse but no two-sided inverse")
    return X


def extend_to_basis(R: Ring, vectors: Sequence[Sequence], n: int) -> list:
    """Vectors W such that ``vectors + W`` is a basis of R^n.

    In every residue field the missing standard basis vectors are chosen
    greedily; the choices are glued by CRT and the result is checked to have
    unit determinant.
    """
    k = len(vectors)
    if k == 0:
        return [[R.one if i == j else R.zero for i in range(n)] for j in range(n)]
    fields = [(R, lambda a: a)] if R.is_field else [(r.field, r.reduce) for r in R.residues()]
    per = []
    for F, red in fields:
        cur = [[red(x) for x in v] for v in vectors]
        if rank(F, cur) != k:
            raise NotInvertible("vectors are not part of a basis")
        chosen = []
        for j in range(n):
            if len(chosen) == n - k:
                break
            e = [F.one if i == j else F.zero for i in range(n)]
            if rank(F, cur + [e]) == len(cur) + 1:
                cur.append(e)
                chosen.append(e)
        per.append(chosen)
    if R.is_field:
        W = per[0]
    else:
        W = [[R.lift_residues([p[t][i] for p in per]) for i in range(n)] for t in range(n - k)]
    full = from_columns(list(vectors) + W, n)
    if not is_invertible(R, full):
        raise NotInvertible("completion is not a basis")
    return W

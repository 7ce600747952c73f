"""Exact Gauss-Jordan elimination over the rationals.

The systems here are sparse with a few hundred unknowns, so rows are
stored as ``{column: Fraction}`` dicts.
"""

from fractions import Fraction

from precy.errors import InputShapeError


def rref_sparse(rows, ncols):
    """Reduced row echelon form of sparse rows; returns ``(rows, pivots)``."""
    work = [{c: Fraction(v) for c, v in r.items() if v} for r in rows]
    work = [r for r in work if r]
    pivots = []
    reduced = []
    for col in range(ncols):
        pick = None
        for idx, r in enumerate(work):
            if col in r:
                pick = idx
                break
        if pick is None:
            continue
        row = work.pop(pick)
        inv = 1 / row[col]
        row = {c: v * inv for c, v in row.items()}
        for other in (work, reduced):
            for idx, r in enumerate(other):
                f = r.get(col)
                if f:
                    new = dict(r)
                    for c, v in row.items():
                        w = new.get(c, 0) - f * v
                        if w:
                            new[c] = w
                        else:
                            new.pop(c, None)
                    other[idx] = new
        work = [r for r in work if r]
        reduced.append(row)
        pivots.append(col)
    return reduced, pivots


def nullspace_sparse(rows, ncols):
    """Basis of ``{x : r . x = 0 for every row}`` as sparse dicts."""
    reduced, pivots = rref_sparse(rows, ncols)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vec = {free: Fraction(1)}
        for row, p in zip(reduced, pivots):
            v = row.get(free)
            if v:
                vec[p] = -v
        basis.append(vec)
    return basis


def _dense_rows(matrix):
    return [{c: Fraction(v) for c, v in enumerate(row) if v} for row in matrix]


def rank(matrix):
    if not matrix:
        return 0
    reduced, _ = rref_sparse(_dense_rows(matrix), len(matrix[0]))
    return len(reduced)


def identity(n):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def matmul(a, b):
    n, m, p = len(a), len(b), len(b[0]) if b else 0
    out = [[Fraction(0)] * p for _ in range(n)]
    for i in range(n):
        ai = a[i]
        oi = out[i]
        for k in range(m):
            aik = ai[k]
            if aik:
                bk = b[k]
                for j in range(p):
                    if bk[j]:
                        oi[j] += aik * bk[j]
    return out


def inverse(matrix):
    n = len(matrix)
    if any(len(r) != n for r in matrix):
        raise InputShapeError("inverse needs a square matrix")
    rows = [{**{c: Fraction(v) for c, v in enumerate(r) if v}, n + i: Fraction(1)}
            for i, r in enumerate(matrix)]
    reduced, pivots = rref_sparse(rows, 2 * n)
    if pivots[:n] != list(range(n)) or len(reduced) < n:
        raise ZeroDivisionError("matrix is singular")
    return [[reduced[i].get(n + j, Fraction(0)) for j in range(n)] for i in range(n)]


def det(matrix):
    n = len(matrix)
    a = [[Fraction(v) for v in r] for r in matrix]
    result = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            result = -result
        result *= a[col][col]
        for r in range(col + 1, n):
            f = a[r][col] / a[col][col]
            if f:
                for c in range(col, n):
                    a[r][c] -= f * a[col][c]
    return result

"""Dense exact linear algebra over the rationals.

Matrices are lists of rows of ``Fraction``.  Everything here is plain
Gaussian elimination; sizes in this package stay in the low hundreds.
"""

from fractions import Fraction

__all__ = ["to_fractions", "rref", "rank", "solve", "nullspace", "matmul_vec"]


def to_fractions(rows):
    return [[Fraction(x) for x in row] for row in rows]


def rref(rows, ncols=None):
    """Reduced row echelon form.

    Returns ``(R, pivots)`` where ``R`` is a new matrix and ``pivots`` the
    list of pivot column indices.
    """
    R = [list(map(Fraction, row)) for row in rows]
    if not R:
        return R, []
    ncols = len(R[0]) if ncols is None else ncols
    pivots = []
    r = 0
    for col in range(ncols):
        pivot_row = None
        for i in range(r, len(R)):
            if R[i][col] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        R[r], R[pivot_row] = R[pivot_row], R[r]
        p = R[r][col]
        if p != 1:
            R[r] = [x / p for x in R[r]]
        for i in range(len(R)):
            if i != r and R[i][col] != 0:
                f = R[i][col]
                Ri, Rr = R[i], R[r]
                R[i] = [a - f * b for a, b in zip(Ri, Rr)]
        pivots.append(col)
        r += 1
        if r == len(R):
            break
    return R, pivots


def rank(rows):
    if not rows or not rows[0]:
        return 0
    return len(rref(rows)[1])


def solve(A, b):
    """One solution ``x`` of ``A x = b`` (free variables set to 0), or None."""
    m = len(A)
    n = len(A[0]) if m else 0
    if m == 0:
        return [Fraction(0)] * n
    aug = [list(A[i]) + [b[i]] for i in range(m)]
    R, pivots = rref(aug, ncols=n + 1)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for i, col in enumerate(pivots):
        x[col] = R[i][n]
    return x


def nullspace(A, n=None):
    """Basis of ``{x : A x = 0}`` as a list of vectors."""
    if n is None:
        n = len(A[0]) if A else 0
    if not A:
        return [[Fraction(int(i == j)) for i in range(n)] for j in range(n)]
    R, pivots = rref(A, ncols=n)
    free = [j for j in range(n) if j not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for i, col in enumerate(pivots):
            v[col] = -R[i][f]
        basis.append(v)
    return basis


def matmul_vec(A, x):
    return [sum((a * b for a, b in zip(row, x)), Fraction(0)) for row in A]

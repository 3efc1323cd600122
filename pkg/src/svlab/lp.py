"""Exact rational simplex method.

Solves ``min c.x  s.t.  A x = b, x >= 0`` over ``Fraction`` with a dense
tableau, two phases and Bland's rule.  The returned dual vector ``y``
satisfies ``A^T y <= c`` and ``b.y`` equals the optimum.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from svlab import linalg

__all__ = ["LpResult", "solve_lp", "OPTIMAL", "INFEASIBLE", "UNBOUNDED"]

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

ZERO = Fraction(0)


@dataclass(frozen=True)
class LpResult:
    status: str
    value: Optional[Fraction] = None
    x: Optional[tuple] = None
    y: Optional[tuple] = None
    basis: Optional[tuple] = None
    pivots: int = 0


class _Tableau:
    def __init__(self, rows, rhs, basis):
        self.rows = rows  # list of lists, constraint coefficients
        self.rhs = rhs
        self.basis = basis
        self.pivots = 0

    def pivot(self, r, j):
        row = self.rows[r]
        p = row[j]
        if p != 1:
            row = [v / p for v in row]
            self.rows[r] = row
            self.rhs[r] /= p
        for i, other in enumerate(self.rows):
            if i != r and other[j]:
                f = other[j]
                self.rows[i] = [a - f * b if b else a for a, b in zip(other, row)]
                self.rhs[i] -= f * self.rhs[r]
        self.basis[r] = j
        self.pivots += 1

    def reduced_costs(self, cost):
        red = list(cost)
        for i, bj in enumerate(self.basis):
            cb = cost[bj]
            if cb:
                row = self.rows[i]
                red = [rc - cb * a if a else rc for rc, a in zip(red, row)]
        return red

    def run(self, cost, allowed):
        """Bland's rule on the columns in ``allowed``; returns False if unbounded."""
        while True:
            red = self.reduced_costs(cost)
            entering = next((j for j in allowed if red[j] < 0), None)
            if entering is None:
                return True
            best = None
            for i, row in enumerate(self.rows):
                a = row[entering]
                if a > 0:
                    ratio = self.rhs[i] / a
                    key = (ratio, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return False
            self.pivot(best[1], entering)


def _unit_column(A, j, i):
    return A[i][j] == 1 and all(A[r][j] == 0 for r in range(len(A)) if r != i)


def solve_lp(c, A, b) -> LpResult:
    """Minimise ``c.x`` subject to ``A x = b`` and ``x >= 0``, exactly."""
    c = [Fraction(v) for v in c]
    A = [[Fraction(v) for v in row] for row in A]
    b = [Fraction(v) for v in b]
    m, n = len(A), len(c)
    if m == 0:
        if any(v < 0 for v in c):
            return LpResult(UNBOUNDED)
        return LpResult(OPTIMAL, ZERO, tuple([ZERO] * n), (), (), 0)

    rows, rhs = [], []
    for i in range(m):
        if b[i] < 0:
            rows.append([-v for v in A[i]])
            rhs.append(-b[i])
        else:
            rows.append(list(A[i]))
            rhs.append(b[i])

    basis = [None] * m
    used = set()
    for i in range(m):
        for j in range(n):
            if j not in used and _unit_column(rows, j, i):
                basis[i] = j
                used.add(j)
                break
    artificials = []
    for i in range(m):
        if basis[i] is None:
            j = n + len(artificials)
            artificials.append(j)
            basis[i] = j
    total = n + len(artificials)
    for i, row in enumerate(rows):
        row.extend(Fraction(int(basis[i] == j)) for j in range(n, total))

    tab = _Tableau(rows, rhs, basis)
    if artificials:
        phase1 = [ZERO] * n + [Fraction(1)] * len(artificials)
        tab.run(phase1, range(total))
        if sum(tab.rhs[i] for i, bj in enumerate(tab.basis) if bj >= n) > 0:
            return LpResult(INFEASIBLE, pivots=tab.pivots)
        # drive zero-level artificials out of the basis, dropping redundant rows
        i = 0
        while i < len(tab.rows):
            if tab.basis[i] >= n:
                j = next((j for j in range(n) if tab.rows[i][j] != 0), None)
                if j is None:
                    del tab.rows[i], tab.rhs[i], tab.basis[i]
                    continue
                tab.pivot(i, j)
            i += 1
        tab.rows = [row[:n] for row in tab.rows]

    if not tab.run(c, range(n)):
        return LpResult(UNBOUNDED, pivots=tab.pivots)

    x = [ZERO] * n
    for i, bj in enumerate(tab.basis):
        x[bj] = tab.rhs[i]
    value = sum((cj * xj for cj, xj in zip(c, x)), ZERO)
    y = _dual(A, c, tab.basis, m)
    return LpResult(OPTIMAL, value, tuple(x), tuple(y), tuple(tab.basis), tab.pivots)


def _dual(A, c, basis, m):
    """Solve ``B^T y = c_B`` on a row subset of full rank; other rows get 0."""
    cols = list(basis)
    # rows kept by phase 1 are not tracked by index, so pick an independent set
    B = [[A[i][j] for j in cols] for i in range(m)]
    _, piv_rows = linalg.rref([list(col) for col in zip(*B)])
    BT = [[B[i][k] for i in piv_rows] for k in range(len(cols))]
    sol = linalg.solve(BT, [c[j] for j in cols])
    y = [ZERO] * m
    for i, v in zip(piv_rows, sol):
        y[i] = v
    return y

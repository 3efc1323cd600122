import random
from fractions import Fraction

import numpy as np
import pytest
from scipy.optimize import linprog

from svlab.lp import INFEASIBLE, OPTIMAL, UNBOUNDED, solve_lp


def test_textbook_lp():
    # min -x - y  s.t. x + 2y + s1 = 4, 3x + y + s2 = 6
    res = solve_lp([-1, -1, 0, 0], [[1, 2, 1, 0], [3, 1, 0, 1]], [4, 6])
    assert res.status == OPTIMAL
    assert res.value == Fraction(-14, 5)
    assert res.x[:2] == (Fraction(8, 5), Fraction(6, 5))


def test_infeasible():
    res = solve_lp([1, 1], [[1, 1], [1, 1]], [1, 2])
    assert res.status == INFEASIBLE


def test_unbounded():
    res = solve_lp([-1, 0], [[1, -1]], [1])
    assert res.status == UNBOUNDED


def test_redundant_rows_and_degeneracy():
    A = [[1, 1, 0], [1, 1, 0], [0, 1, 1]]
    res = solve_lp([1, 2, 3], A, [1, 1, 1])
    assert res.status == OPTIMAL
    assert res.value == 2  # x = (0, 1, 0)
    # dual feasibility and strong duality
    for j in range(3):
        assert sum(A[i][j] * res.y[i] for i in range(3)) <= [1, 2, 3][j]
    assert sum(res.y[i] * b for i, b in enumerate([1, 1, 1])) == res.value


def test_random_lps_against_scipy():
    rng = random.Random(2)
    checked = 0
    for _ in range(60):
        m, n = rng.randint(1, 5), rng.randint(2, 8)
        A = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(m)]
        x0 = [rng.randint(0, 2) for _ in range(n)]
        b = [sum(a * x for a, x in zip(row, x0)) for row in A]
        c = [rng.randint(0, 5) for _ in range(n)]
        res = solve_lp(c, A, b)
        ref = linprog(c, A_eq=np.array(A, float), b_eq=np.array(b, float), bounds=[(0, None)] * n, method="highs")
        assert res.status == OPTIMAL and ref.status == 0
        assert abs(float(res.value) - ref.fun) < 1e-7
        for i, row in enumerate(A):
            assert sum(a * x for a, x in zip(row, res.x)) == b[i]
        assert all(x >= 0 for x in res.x)
        assert sum(yi * bi for yi, bi in zip(res.y, b)) == res.value
        for j in range(n):
            assert sum(A[i][j] * res.y[i] for i in range(m)) <= c[j]
        checked += 1
    assert checked == 60


def test_no_constraints():
    assert solve_lp([1, 2], [], []).value == 0
    assert solve_lp([-1], [], []).status == UNBOUNDED


@pytest.mark.parametrize("scale", [1, 3, Fraction(1, 7)])
def test_exact_fractions(scale):
    res = solve_lp([1, 1], [[3, 7]], [scale])
    assert res.value == Fraction(scale) / 7

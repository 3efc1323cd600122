"""Brute-force reference computations.

These deliberately avoid the simplex code so they can cross-check it.
"""

from fractions import Fraction
from itertools import combinations

from svlab import linalg
from svlab.chains import boundary
from svlab.delta_complex import boundary_matrix
from svlab.errors import NotACycle

__all__ = ["class_norm_by_vertices", "all_subsets"]


def class_norm_by_vertices(z0) -> Fraction:
    """ℓ¹ class norm by enumerating vertices of the representative polyhedron.

    Representatives form the affine space ``z0 + B β`` with ``B`` a column
    basis of the boundary image (rank r).  The ℓ¹ norm is convex and
    piecewise linear on it, so its minimum sits where r independent
    coordinates vanish; every such r-subset is tried.
    """
    if z0.k > 0 and boundary(z0):
        raise NotACycle("not a cycle")
    X, k = z0.complex, z0.k
    z = z0.to_vector()
    if k + 1 > X.dim or X.counts[k + 1] == 0:
        return sum((abs(v) for v in z), Fraction(0))
    D = linalg.to_fractions(boundary_matrix(X, k + 1))
    _, pivots = linalg.rref(D)
    B = [[row[j] for j in pivots] for row in D]
    r = len(pivots)
    if r == 0:
        return sum((abs(v) for v in z), Fraction(0))
    best = None
    for S in combinations(range(len(z)), r):
        sub = [B[i] for i in S]
        if linalg.rank(sub) < r:
            continue
        beta = linalg.solve(sub, [-z[i] for i in S])
        w = [zi + sum((a * bj for a, bj in zip(B[i], beta)), Fraction(0)) for i, zi in enumerate(z)]
        val = sum((abs(v) for v in w), Fraction(0))
        if best is None or val < best:
            best = val
    return best


def all_subsets(atoms):
    atoms = list(atoms)
    for size in range(len(atoms) + 1):
        yield from combinations(atoms, size)

"""Barycentric subdivision of Δ-complexes as a chain map.

A k-cell of the subdivision lives inside a unique cell ``τ`` of the source
(dimension p >= k) and is given by a flag ``S_0 ⊊ S_1 ⊊ ... ⊊ S_{k-1}`` of
proper nonempty vertex subsets of ``τ``.  Its vertices, in order, are the
barycenters of ``S_0, ..., S_{k-1}`` and of ``τ`` itself.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations

from svlab.chains import RationalChain
from svlab.delta_complex import DeltaComplex
from svlab.errors import UnsupportedDimension, WrongComplex

__all__ = ["Subdivision", "barycentric_subdivide", "subdivide_times", "is_simplicial"]

MAX_DIM = 2


def _flags(p, k):
    """Strictly nested chains of k proper nonempty subsets of range(p + 1)."""
    subsets = [s for size in range(1, p + 1) for s in combinations(range(p + 1), size)]

    def extend(prefix):
        if len(prefix) == k:
            yield tuple(prefix)
            return
        last = set(prefix[-1]) if prefix else set()
        for s in subsets:
            if len(s) > len(last) and last < set(s):
                yield from extend(prefix + [s])

    return sorted(extend([]))


def _perm_sign(perm):
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


@dataclass(frozen=True, eq=False)
class Subdivision:
    source: DeltaComplex
    target: DeltaComplex
    keys: tuple  # keys[k][i] = (p, tau, flag) of target k-cell i
    index: tuple  # inverse of keys, per dimension

    def vertex_map(self, v: int) -> tuple:
        """Source cell ``(dim, index)`` whose barycenter is target vertex ``v``."""
        p, tau, _ = self.keys[0][v]
        return p, tau

    def cell_image(self, k: int, sigma: int) -> RationalChain:
        """Signed sum of the (k+1)! pieces of source k-cell ``sigma``."""
        out = {}
        for perm in permutations(range(k + 1)):
            flag = tuple(tuple(sorted(perm[: i + 1])) for i in range(k))
            out[self.index[k][(k, sigma, flag)]] = _perm_sign(perm)
        return RationalChain(self.target, k, out)

    def apply(self, c: RationalChain) -> RationalChain:
        if c.complex != self.source:
            raise WrongComplex("chain does not live on the subdivided complex")
        total = RationalChain.zero(self.target, c.k)
        for sigma, a in c.items():
            total = total + a * self.cell_image(c.k, sigma)
        return total


def barycentric_subdivide(complex: DeltaComplex) -> Subdivision:
    if complex.dim > MAX_DIM:
        raise UnsupportedDimension(f"subdivision supports dimension <= {MAX_DIM}, got {complex.dim}")
    n = complex.dim
    keys = []
    for k in range(n + 1):
        level = []
        for p in range(k, n + 1):
            flags = _flags(p, k)
            for tau in range(complex.counts[p]):
                level.extend((p, tau, flag) for flag in flags)
        keys.append(tuple(level))
    index = tuple({key: i for i, key in enumerate(level)} for level in keys)

    faces = []
    for k in range(1, n + 1):
        table = []
        for p, tau, flag in keys[k]:
            row = [index[k - 1][(p, tau, flag[:j] + flag[j + 1:])] for j in range(k)]
            top = flag[-1]
            rho = complex.sub_face(p, tau, top)
            rank = {v: i for i, v in enumerate(top)}
            rel = tuple(tuple(rank[v] for v in s) for s in flag[:-1])
            row.append(index[k - 1][(len(top) - 1, rho, rel)])
            table.append(tuple(row))
        faces.append(tuple(table))
    target = DeltaComplex(tuple(len(level) for level in keys), tuple(faces), name=f"sd({complex.name})")
    return Subdivision(complex, target, tuple(keys), index)


def subdivide_times(complex: DeltaComplex, times: int) -> list:
    """Iterated subdivisions; returns the list of :class:`Subdivision` steps."""
    steps = []
    current = complex
    for _ in range(times):
        step = barycentric_subdivide(current)
        steps.append(step)
        current = step.target
    return steps


def is_simplicial(complex: DeltaComplex) -> bool:
    """True iff cells have distinct vertices and are determined by their vertex sets."""
    for k in range(1, complex.dim + 1):
        seen = set()
        for t in range(complex.counts[k]):
            vs = complex.vertices(k, t)
            if len(set(vs)) != len(vs):
                return False
            key = frozenset(vs)
            if key in seen:
                return False
            seen.add(key)
    return True

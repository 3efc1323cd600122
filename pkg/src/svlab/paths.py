"""Closed edge-paths on graphs as stand-ins for long singular 1-simplices.

A step is ``(edge, +1)`` (tail to head) or ``(edge, -1)``.  An edge ``e``
with faces ``(v1, v0)`` runs from ``v0`` to ``v1``.  Wrapping the n-cycle d
times gives one path of winding d, so a winding-1 class is represented by
that path with coefficient 1/d; the norm of the class decays like 1/d.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from svlab.chains import RationalChain, homology_class_decompose
from svlab.delta_complex import DeltaComplex, fundamental_cycle
from svlab.errors import GraphTooLarge, LengthTooShort, NotACircle, NotInSpan, SvlabError
from svlab.lp import INFEASIBLE, OPTIMAL, solve_lp

__all__ = [
    "PathChain",
    "wrap_path",
    "path_class",
    "winding",
    "path_norm_bound",
    "path_norm_search",
    "closed_walk_classes",
    "circle_size",
    "MAX_SEARCH_EDGES",
]

MAX_SEARCH_EDGES = 8


def _ends(X, step):
    e, s = step
    head, tail = X.faces[0][e]
    return (tail, head) if s > 0 else (head, tail)


def _canonical_rotation(path):
    if not path:
        return path
    return min(path[i:] + path[:i] for i in range(len(path)))


@dataclass(frozen=True)
class PathChain:
    complex: DeltaComplex
    terms: tuple  # ((path, coefficient), ...) with canonical paths, sorted

    def __init__(self, complex: DeltaComplex, terms):
        if complex.dim != 1:
            raise SvlabError("path chains live on 1-dimensional complexes")
        merged = {}
        for path, coeff in terms:
            path = tuple((int(e), 1 if s > 0 else -1) for e, s in path)
            _check_closed(complex, path)
            key = _canonical_rotation(path)
            merged[key] = merged.get(key, Fraction(0)) + Fraction(coeff)
        object.__setattr__(self, "complex", complex)
        object.__setattr__(self, "terms", tuple(sorted((p, c) for p, c in merged.items() if c)))

    def __mul__(self, q):
        return PathChain(self.complex, [(p, Fraction(q) * c) for p, c in self.terms])

    __rmul__ = __mul__

    def __add__(self, other):
        return PathChain(self.complex, self.terms + other.terms)

    def l1(self) -> Fraction:
        return sum((abs(c) for _, c in self.terms), Fraction(0))

    def edge_sequences(self):
        return [([e if s > 0 else -(e + 1) for e, s in p], c) for p, c in self.terms]


def _check_closed(X, path):
    if not path:
        raise SvlabError("empty path")
    for step in path:
        if not 0 <= step[0] < X.counts[1]:
            raise SvlabError(f"edge {step[0]} out of range")
    for a, b in zip(path, path[1:] + path[:1]):
        if _ends(X, a)[1] != _ends(X, b)[0]:
            raise SvlabError("path is not closed")


def circle_size(X: DeltaComplex) -> int:
    """n if ``X`` has the shape produced by ``build_circle(n)``, else NotACircle."""
    if X.dim != 1 or X.counts[0] != X.counts[1]:
        raise NotACircle("not an oriented n-cycle")
    n = X.counts[0]
    if any(tuple(X.faces[0][i]) != ((i + 1) % n, i) for i in range(n)):
        raise NotACircle("edges do not form the standard oriented cycle")
    return n


def wrap_path(circle: DeltaComplex, d: int) -> PathChain:
    n = circle_size(circle)
    if d < 1:
        raise SvlabError("wrap count must be >= 1")
    return PathChain(circle, [(tuple((i, 1) for i in range(n)) * d, 1)])


def path_class(p: PathChain) -> tuple:
    """Net signed traversal count of every edge, as a 1-cycle's coefficients."""
    vec = [Fraction(0)] * p.complex.counts[1]
    for path, coeff in p.terms:
        for e, s in path:
            vec[e] += s * coeff
    return tuple(vec)


def winding(p: PathChain) -> Fraction:
    """H₁ coordinate of a path chain on a circle (multiple of the fundamental cycle)."""
    circle_size(p.complex)
    z = RationalChain.from_vector(p.complex, 1, path_class(p))
    return homology_class_decompose(z, [fundamental_cycle(p.complex)]).coefficients[0]


def path_norm_bound(target_winding, circle: DeltaComplex, max_len: int) -> Fraction:
    """Least ℓ¹ norm of a path chain of the given winding using paths of length <= L.

    A closed walk of length <= L on the n-cycle winds at most ⌊L/n⌋ times,
    so one maximal wrap with coefficient ``w/⌊L/n⌋`` is optimal.
    """
    n = circle_size(circle)
    if max_len < n:
        raise LengthTooShort(f"max length {max_len} < circle length {n}")
    return abs(Fraction(target_winding)) / (max_len // n)


def closed_walk_classes(X: DeltaComplex, max_len: int) -> list:
    """Distinct nonzero edge-count vectors of closed walks of length <= L."""
    if X.dim != 1:
        raise SvlabError("closed walks need a graph")
    if X.counts[1] > MAX_SEARCH_EDGES:
        raise GraphTooLarge(f"exhaustive search is limited to {MAX_SEARCH_EDGES} edges")
    steps_from = [[] for _ in range(X.counts[0])]
    for e in range(X.counts[1]):
        for s in (1, -1):
            tail, head = _ends(X, (e, s))
            steps_from[tail].append((e, s, head))
    m = X.counts[1]
    found = set()
    for start in range(X.counts[0]):
        frontier = {(start, (0,) * m)}
        seen = set(frontier)
        for _ in range(max_len):
            nxt = set()
            for v, vec in frontier:
                for e, s, head in steps_from[v]:
                    w = list(vec)
                    w[e] += s
                    state = (head, tuple(w))
                    if state not in seen:
                        seen.add(state)
                        nxt.add(state)
                    if head == start and any(w):
                        found.add(tuple(w))
            frontier = nxt
    return sorted(found)


def path_norm_search(target: RationalChain, graph: DeltaComplex, max_len: int) -> Fraction:
    """Exhaustive counterpart of :func:`path_norm_bound` for small graphs.

    Enumerates every closed-walk class of length <= L, then minimises the
    ℓ¹ norm of the coefficients reproducing ``target`` (an exact LP).
    """
    classes = closed_walk_classes(graph, max_len)
    t = target.to_vector()
    if not any(t):
        return Fraction(0)
    m, q = graph.counts[1], len(classes)
    A = [[Fraction(0)] * (2 * q) for _ in range(m)]
    for j, vec in enumerate(classes):
        for e in range(m):
            A[e][j] = Fraction(vec[e])
            A[e][q + j] = Fraction(-vec[e])
    res = solve_lp([1] * (2 * q), A, t)
    if res.status == INFEASIBLE:
        raise NotInSpan("target is not a combination of closed walks of this length")
    assert res.status == OPTIMAL
    return res.value

"""Cyclic covers of Δ-complexes built from ℤ/d edge labelings.

A labeling of the edges that satisfies the cocycle condition on every
triangle defines a d-sheeted cover.  Its cells are pairs ``(σ, m)`` with
``m`` in ℤ/d, meaning "σ with vertex 0 lifted to sheet m", stored at index
``σ·d + m``.  Face 0 is anchored at vertex 1 and so moves to sheet
``m + label(edge 0→1 of σ)``; every other face keeps vertex 0 and stays on
sheet ``m``.  The deck generator shifts every sheet by one.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import gcd

from svlab.chains import RationalChain, SimplicialMap, homology_class_decompose, push_chain
from svlab.delta_complex import DeltaComplex, connected_components, fundamental_cycle
from svlab.errors import Inconsistent, NotACocycle, NotInSpan, SvlabError, WrongComplex
from svlab.seminorm import class_norm

__all__ = [
    "EdgeCocycle",
    "CoveringMap",
    "build_cyclic_cover",
    "auto_cocycle",
    "transfer",
    "degree",
    "covering_multiplicativity_check",
    "MultiplicativityReport",
    "surface_genus",
]

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class EdgeCocycle:
    complex: DeltaComplex
    d: int
    labels: tuple

    def __post_init__(self):
        if self.d < 1:
            raise SvlabError("sheet count must be >= 1")
        labels = tuple(int(v) % self.d for v in self.labels)
        object.__setattr__(self, "labels", labels)
        if self.complex.dim < 1:
            if labels:
                raise SvlabError("a 0-dimensional complex has no edges to label")
        elif len(labels) != self.complex.counts[1]:
            raise SvlabError(f"need {self.complex.counts[1]} edge labels, got {len(labels)}")

    def violations(self):
        """2-cells where ``l(f0) - l(f1) + l(f2) != 0 (mod d)``."""
        X = self.complex
        if X.dim < 2:
            return []
        L = self.labels
        return [t for t, (a, b, c) in enumerate(X.faces[1]) if (L[a] - L[b] + L[c]) % self.d]

    def check(self):
        bad = self.violations()
        if bad:
            raise NotACocycle(f"cocycle condition fails on 2-cell {bad[0]}", cell=bad[0])
        return self

    def reduce(self, e: int) -> "EdgeCocycle":
        """The same labeling read modulo a divisor ``e`` of ``d``."""
        if self.d % e:
            raise SvlabError(f"{e} does not divide {self.d}")
        return EdgeCocycle(self.complex, e, tuple(v % e for v in self.labels))


@dataclass(frozen=True, eq=False)
class CoveringMap:
    base: DeltaComplex
    total: DeltaComplex
    d: int
    cocycle: EdgeCocycle
    projection: SimplicialMap
    deck: SimplicialMap

    def cell(self, sigma: int, sheet: int) -> int:
        return sigma * self.d + sheet % self.d

    def sheet(self, cell: int) -> int:
        return cell % self.d

    def lifts(self, k: int, sigma: int) -> list:
        return [sigma * self.d + m for m in range(self.d)]

    def deck_power(self, k: int, cell: int, g: int) -> int:
        sigma, m = divmod(cell, self.d)
        return sigma * self.d + (m + g) % self.d

    @cached_property
    def components(self) -> int:
        return len(connected_components(self.total))

    @property
    def connected(self) -> bool:
        return self.components == 1


def _face_shift(X: DeltaComplex, labels, k: int, sigma: int, j: int) -> int:
    if j != 0:
        return 0
    return labels[X.edge01(k, sigma)]


def build_cyclic_cover(c: EdgeCocycle) -> CoveringMap:
    c.check()
    X, d, L = c.complex, c.d, c.labels
    counts = tuple(n * d for n in X.counts)
    faces = []
    for k in range(1, X.dim + 1):
        table = []
        for sigma, row in enumerate(X.faces[k - 1]):
            shifts = [_face_shift(X, L, k, sigma, j) for j in range(k + 1)]
            for m in range(d):
                table.append(tuple(f * d + (m + w) % d for f, w in zip(row, shifts)))
        faces.append(tuple(table))
    total = DeltaComplex(counts, tuple(faces), name=f"{X.name}~{d}")
    proj = SimplicialMap(total, X, tuple(tuple(i // d for i in range(n)) for n in counts))
    deck = SimplicialMap(
        total, total, tuple(tuple((i // d) * d + (i % d + 1) % d for i in range(n)) for n in counts)
    )
    cover = CoveringMap(X, total, d, c, proj, deck)
    if len(connected_components(X)) == 1 and not cover.connected:
        log.warning("labeling is not surjective onto Z/%d: cover has %d components", d, cover.components)
    return cover


def auto_cocycle(X: DeltaComplex, d: int) -> EdgeCocycle:
    """Lexicographically first labeling that satisfies the cocycle condition
    and gives a connected cover."""
    if X.dim < 1:
        raise SvlabError("no edges to label")
    n_edges = X.counts[1]
    # 2-cells become checkable once their largest edge is labeled
    closing = [[] for _ in range(n_edges)]
    if X.dim >= 2:
        for t, row in enumerate(X.faces[1]):
            closing[max(row)].append(row)
    labels = [0] * n_edges
    n_vertices = X.counts[0]

    def connected():
        if d == 1:
            return len(connected_components(X)) == 1
        parent = list(range(n_vertices * d))

        def find(v):
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        for e, (v1, v0) in enumerate(X.faces[0]):
            for m in range(d):
                a, b = find(v0 * d + m), find(v1 * d + (m + labels[e]) % d)
                if a != b:
                    parent[a] = b
        return len({find(v) for v in range(n_vertices * d)}) == 1

    def search(e):
        if e == n_edges:
            return connected()
        for value in range(d):
            labels[e] = value
            if all((labels[a] - labels[b] + labels[c]) % d == 0 for a, b, c in closing[e]):
                if search(e + 1):
                    return True
        labels[e] = 0
        return False

    if not search(0):
        raise SvlabError(f"no labeling gives a connected {d}-sheeted cover")
    return EdgeCocycle(X, d, tuple(labels))


def transfer(cm: CoveringMap, a: RationalChain) -> RationalChain:
    """Sum of all d lifts of each simplex."""
    if a.complex != cm.base:
        raise WrongComplex("chain does not live on the cover's base")
    out = {}
    for sigma, v in a.items():
        for lift in cm.lifts(a.k, sigma):
            out[lift] = v
    return RationalChain(cm.total, a.k, out)


def degree(m: SimplicialMap, source_fund=None, target_fund=None) -> Fraction:
    """λ with ``m_*[source] = λ [target]`` on top homology."""
    if source_fund is None:
        source_fund = fundamental_cycle(m.source)
    if target_fund is None:
        target_fund = fundamental_cycle(m.target)
    pushed = push_chain(m, source_fund)
    if pushed.k != target_fund.k:
        raise NotInSpan("source and target differ in dimension")
    return homology_class_decompose(pushed, [target_fund]).coefficients[0]


def surface_genus(X: DeltaComplex) -> Fraction:
    """Genus of a connected closed orientable surface from χ = 2 - 2g."""
    return Fraction(2 - X.euler_char, 2)


@dataclass(frozen=True)
class MultiplicativityReport:
    d: int
    base_norm: Fraction
    total_norm: Fraction
    base_chi: int
    total_chi: int


def covering_multiplicativity_check(cm: CoveringMap) -> MultiplicativityReport:
    z_base = fundamental_cycle(cm.base)
    z_total = fundamental_cycle(cm.total)
    r_base = class_norm(z_base).class_norm
    r_total = class_norm(z_total).class_norm
    if r_total != cm.d * r_base:
        raise Inconsistent(f"class norm of cover {r_total} != {cm.d} x {r_base}")
    if cm.total.euler_char != cm.d * cm.base.euler_char:
        raise Inconsistent("Euler characteristic is not multiplicative")
    return MultiplicativityReport(cm.d, r_base, r_total, cm.base.euler_char, cm.total.euler_char)


def gcd_of_labels(c: EdgeCocycle) -> int:
    g = c.d
    for v in c.labels:
        g = gcd(g, v)
    return g

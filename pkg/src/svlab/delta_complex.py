"""Finite Δ-complexes (semi-simplicial complexes).

A ``DeltaComplex`` is given by cell counts per dimension and, for every
k-cell with k >= 1, the ordered tuple of its k+1 faces.  Face ``j`` is the
face opposite vertex ``j``, so the boundary of a k-cell is the alternating
sum ``sum_j (-1)**j faces[j]`` and an edge with faces ``(v1, v0)`` has
boundary ``v1 - v0``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Optional

from svlab import linalg
from svlab.errors import (
    DimensionOutOfRange,
    IndexOutOfRange,
    NotAChainComplex,
    NotClosed,
    NotOrientable,
    SvlabError,
)

__all__ = [
    "DeltaComplex",
    "ComplexReport",
    "validate",
    "boundary_matrix",
    "fundamental_cycle",
    "build_polygon_surface",
    "build_torus",
    "build_circle",
    "build_simplex",
    "build_simplex_boundary",
    "connected_components",
]


@dataclass(frozen=True, eq=False)
class DeltaComplex:
    """Immutable Δ-complex.

    ``counts[k]`` is the number of k-cells; ``faces[k - 1][t]`` is the face
    tuple of k-cell ``t``.  Construction only checks shapes; use
    :func:`validate` for index ranges and ``∂∂ = 0``.
    """

    counts: tuple
    faces: tuple
    name: str = "X"
    _key: tuple = field(init=False, repr=False)

    def __post_init__(self):
        counts = tuple(int(c) for c in self.counts)
        faces = tuple(tuple(tuple(int(f) for f in t) for t in table) for table in self.faces)
        if not counts:
            raise SvlabError("a Δ-complex needs at least one dimension")
        if len(faces) != len(counts) - 1:
            raise SvlabError("need one face table per dimension >= 1")
        for k, table in enumerate(faces, start=1):
            if len(table) != counts[k]:
                raise SvlabError(f"dimension {k}: {counts[k]} cells but {len(table)} face rows")
            for t, row in enumerate(table):
                if len(row) != k + 1:
                    raise SvlabError(f"cell {k}:{t} needs {k + 1} faces, got {len(row)}")
        object.__setattr__(self, "counts", counts)
        object.__setattr__(self, "faces", faces)
        object.__setattr__(self, "_key", (counts, faces))

    @property
    def dim(self) -> int:
        return len(self.counts) - 1

    def face(self, k: int, t: int, j: int) -> int:
        return self.faces[k - 1][t][j]

    def cell_faces(self, k: int, t: int) -> tuple:
        return self.faces[k - 1][t]

    def sub_face(self, k: int, t: int, vertices) -> int:
        """Index of the face of k-cell ``t`` spanned by the sorted vertex subset."""
        keep = set(vertices)
        cell, dim = t, k
        for v in range(k, -1, -1):
            if v not in keep:
                cell = self.face(dim, cell, v)
                dim -= 1
        return cell

    def vertices(self, k: int, t: int) -> tuple:
        """The k+1 vertices of cell ``t`` in order."""
        return tuple(self.sub_face(k, t, (i,)) for i in range(k + 1))

    def edge01(self, k: int, t: int) -> int:
        """The edge from vertex 0 to vertex 1 of a cell of dimension >= 1."""
        return self.sub_face(k, t, (0, 1))

    @property
    def euler_char(self) -> int:
        return sum((-1) ** k * c for k, c in enumerate(self.counts))

    def __eq__(self, other):
        if not isinstance(other, DeltaComplex):
            return NotImplemented
        return self is other or self._key == other._key

    def __hash__(self):
        return hash(self._key)

    @cached_property
    def _boundary_columns(self):
        cols = {}
        for k in range(1, self.dim + 1):
            per_cell = []
            for row in self.faces[k - 1]:
                col = {}
                for j, f in enumerate(row):
                    col[f] = col.get(f, 0) + (-1) ** j
                per_cell.append({f: v for f, v in col.items() if v})
            cols[k] = per_cell
        return cols

    def boundary_column(self, k: int, t: int) -> dict:
        """Sparse integer boundary of k-cell ``t``."""
        return self._boundary_columns[k][t]


@dataclass(frozen=True)
class ComplexReport:
    euler_char: int
    betti: tuple
    orientable_top: bool
    fundamental_cycle: Optional[object] = None

    def summary(self) -> str:
        return f"chi={self.euler_char} betti={','.join(str(b) for b in self.betti)}"


def boundary_matrix(complex: DeltaComplex, k: int):
    """Dense ``c_{k-1} x c_k`` integer matrix of ``∂_k``; column t is ∂t."""
    if not 1 <= k <= complex.dim:
        raise DimensionOutOfRange(f"boundary_matrix needs 1 <= k <= {complex.dim}, got {k}", k=k)
    M = [[0] * complex.counts[k] for _ in range(complex.counts[k - 1])]
    for t, row in enumerate(complex.faces[k - 1]):
        for j, f in enumerate(row):
            M[f][t] += (-1) ** j
    return M


def _check_indices(complex: DeltaComplex):
    for k in range(1, complex.dim + 1):
        lower = complex.counts[k - 1]
        for t, row in enumerate(complex.faces[k - 1]):
            for j, f in enumerate(row):
                if not 0 <= f < lower:
                    raise IndexOutOfRange(
                        f"cell {k}:{t} face {j} = {f} not in 0..{lower - 1}", dim=k, cell=t
                    )


def _check_dd(complex: DeltaComplex):
    for k in range(2, complex.dim + 1):
        for t in range(complex.counts[k]):
            acc = {}
            for f, a in complex.boundary_column(k, t).items():
                for g, b in complex.boundary_column(k - 1, f).items():
                    acc[g] = acc.get(g, 0) + a * b
            if any(acc.values()):
                raise NotAChainComplex(f"∂∂ != 0 on cell {k}:{t}", dim=k, cell=t)


def betti_numbers(complex: DeltaComplex) -> tuple:
    ranks = [0] * (complex.dim + 2)
    for k in range(1, complex.dim + 1):
        ranks[k] = linalg.rank(boundary_matrix(complex, k))
    return tuple(complex.counts[k] - ranks[k] - ranks[k + 1] for k in range(complex.dim + 1))


def validate(complex: DeltaComplex) -> ComplexReport:
    """Check the face tables and compute χ, Betti numbers, fundamental cycle."""
    if complex.counts[0] < 1:
        raise IndexOutOfRange("complex has no vertices", dim=0, cell=None)
    if any(c < 0 for c in complex.counts):
        raise IndexOutOfRange("negative cell count")
    _check_indices(complex)
    _check_dd(complex)
    try:
        z = fundamental_cycle(complex)
    except (NotClosed, NotOrientable):
        z = None
    return ComplexReport(
        euler_char=complex.euler_char,
        betti=betti_numbers(complex),
        orientable_top=z is not None,
        fundamental_cycle=z,
    )


def fundamental_cycle(complex: DeltaComplex):
    """The ±1 top cycle covering every top cell.

    Signs are propagated across shared codimension-1 faces; the lowest
    indexed top cell of every connected piece gets +1.
    """
    from svlab.chains import RationalChain

    n = complex.dim
    if n == 0:
        return RationalChain(complex, 0, {t: 1 for t in range(complex.counts[0])})
    slots = [[] for _ in range(complex.counts[n - 1])]
    for t, row in enumerate(complex.faces[n - 1]):
        for j, f in enumerate(row):
            slots[f].append((t, j))
    for f, s in enumerate(slots):
        if len(s) != 2:
            raise NotClosed(f"cell {n - 1}:{f} is a face {len(s)} times, expected 2", cell=f)
    if complex.counts[n] == 0:
        raise NotClosed("no top cells")
    sign = [0] * complex.counts[n]
    for start in range(complex.counts[n]):
        if sign[start]:
            continue
        sign[start] = 1
        queue = deque([start])
        while queue:
            t = queue.popleft()
            for j, f in enumerate(complex.faces[n - 1][t]):
                (t1, j1), (t2, j2) = slots[f]
                other, oj = (t2, j2) if (t1, j1) == (t, j) else (t1, j1)
                # the two incidences of f must cancel in ∂z
                want = -sign[t] * (-1) ** j * (-1) ** oj
                if sign[other] == 0:
                    sign[other] = want
                    queue.append(other)
                elif sign[other] != want:
                    raise NotOrientable(f"orientation clash at cell {n - 1}:{f}", cell=f)
    return RationalChain(complex, n, {t: Fraction(s) for t, s in enumerate(sign)})


def connected_components(complex: DeltaComplex) -> list:
    """Vertex sets of the connected components, ordered by smallest vertex."""
    parent = list(range(complex.counts[0]))

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    if complex.dim >= 1:
        for a, b in complex.faces[0]:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    groups = {}
    for v in range(complex.counts[0]):
        groups.setdefault(find(v), []).append(v)
    return sorted(groups.values())


def build_polygon_surface(genus: int) -> DeltaComplex:
    """Closed orientable genus-g surface from a fanned 4g-gon.

    Sides read a1 b1 a1^-1 b1^-1 ... ; the polygon is fanned from its
    corner 0, giving 4g-2 triangles, 6g-3 edges and a single vertex.
    """
    if genus < 1:
        raise ValueError("genus must be >= 1")
    g = int(genus)
    n_sides = 4 * g
    # side s runs from corner s to corner s+1; record generator and direction
    side_edge, side_forward = [], []
    for i in range(g):
        side_edge += [2 * i, 2 * i + 1, 2 * i, 2 * i + 1]
        side_forward += [True, True, False, False]

    def diagonal(k):  # corner 0 -> corner k, 2 <= k <= 4g-2
        return 2 * g + (k - 2)

    def joins(a, b):
        """Edge index and whether it points a -> b, for adjacent or fanned corners."""
        if a == 0 and 2 <= b <= n_sides - 2:
            return diagonal(b), True
        if b == 0 and 2 <= a <= n_sides - 2:
            return diagonal(a), False
        if (a + 1) % n_sides == b:
            return side_edge[a], side_forward[a]
        if (b + 1) % n_sides == a:
            return side_edge[b], not side_forward[b]
        raise AssertionError((a, b))

    triangles = []
    for j in range(n_sides - 2):
        p, q = j + 1, j + 2
        _, fwd = joins(p, q)
        v0, v1, v2 = (0, p, q) if fwd else (0, q, p)
        e12, _ = joins(v1, v2)
        e02, _ = joins(v0, v2)
        e01, _ = joins(v0, v1)
        triangles.append((e12, e02, e01))
    n_edges = 2 * g + (n_sides - 3)
    edges = tuple((0, 0) for _ in range(n_edges))
    name = "torus" if g == 1 else f"surface{g}"
    return DeltaComplex((1, n_edges, len(triangles)), (edges, tuple(triangles)), name=name)


def build_torus() -> DeltaComplex:
    """The standard one-vertex, three-edge, two-triangle torus."""
    return build_polygon_surface(1)


def build_circle(n: int) -> DeltaComplex:
    """Oriented n-gon: edge i runs from vertex i to vertex i+1 (mod n)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    edges = tuple(((i + 1) % n, i) for i in range(n))
    return DeltaComplex((n, n), (edges,), name=f"circle{n}")


def build_simplex(n: int) -> DeltaComplex:
    """The standard n-simplex with all of its faces."""
    from itertools import combinations

    cells = [list(combinations(range(n + 1), k + 1)) for k in range(n + 1)]
    index = [{s: i for i, s in enumerate(level)} for level in cells]
    faces = []
    for k in range(1, n + 1):
        faces.append(tuple(tuple(index[k - 1][s[:j] + s[j + 1:]] for j in range(k + 1)) for s in cells[k]))
    return DeltaComplex(tuple(len(level) for level in cells), tuple(faces), name=f"simplex{n}")


def build_simplex_boundary(n: int) -> DeltaComplex:
    """Boundary of the (n+1)-simplex, a simplicial n-sphere."""
    full = build_simplex(n + 1)
    return DeltaComplex(full.counts[:-1], full.faces[:-1], name=f"sphere{n}")

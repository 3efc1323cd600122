"""Exact rational chains and cochains on a Δ-complex.

Chains are sparse ``{cell: Fraction}`` maps with zeros pruned, so two
chains are equal exactly when their dicts are.  The coboundary follows
the sign convention ``(δf)(t) = (-1)**(k+1) * f(∂t)`` for a k-cochain f.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from svlab import linalg
from svlab.delta_complex import DeltaComplex
from svlab.errors import (
    DimensionTop,
    DimensionZero,
    IndexOutOfRange,
    MismatchedComplexOrDimension,
    NotACycle,
    NotInSpan,
    NotSimplicialMap,
    WrongComplex,
)

__all__ = [
    "RationalChain",
    "RationalCochain",
    "SimplicialMap",
    "boundary",
    "coboundary",
    "l1_norm",
    "sup_norm",
    "kronecker",
    "push_chain",
    "homology_class_decompose",
    "Decomposition",
]


def _canonical(values: Mapping, count: int) -> dict:
    out = {}
    for cell, v in values.items():
        cell = int(cell)
        if not 0 <= cell < count:
            raise IndexOutOfRange(f"cell {cell} not in 0..{count - 1}", cell=cell)
        q = Fraction(v)
        if q:
            out[cell] = q
    return dict(sorted(out.items()))


class _Sparse:
    __slots__ = ("complex", "k", "_data")

    def __init__(self, complex: DeltaComplex, k: int, data: Mapping | None = None):
        if not 0 <= k <= complex.dim:
            raise IndexOutOfRange(f"dimension {k} not in 0..{complex.dim}")
        self.complex = complex
        self.k = k
        self._data = _canonical(data or {}, complex.counts[k])

    def _same_space(self, other):
        if type(other) is not type(self):
            return False
        return self.k == other.k and self.complex == other.complex

    def _check(self, other):
        if not self._same_space(other):
            raise MismatchedComplexOrDimension("operands live in different spaces")

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self._same_space(other) and self._data == other._data

    def __hash__(self):
        return hash((self.k, tuple(self._data.items())))

    def __getitem__(self, cell):
        return self._data.get(cell, Fraction(0))

    def items(self):
        return self._data.items()

    def support(self):
        return list(self._data)

    def __len__(self):
        return len(self._data)

    def __bool__(self):
        return bool(self._data)

    def _combine(self, other, sign):
        self._check(other)
        out = dict(self._data)
        for c, v in other._data.items():
            out[c] = out.get(c, Fraction(0)) + sign * v
        return type(self)(self.complex, self.k, out)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return type(self)(self.complex, self.k, {c: -v for c, v in self._data.items()})

    def __mul__(self, q):
        q = Fraction(q)
        return type(self)(self.complex, self.k, {c: q * v for c, v in self._data.items()})

    __rmul__ = __mul__

    def to_vector(self):
        vec = [Fraction(0)] * self.complex.counts[self.k]
        for c, v in self._data.items():
            vec[c] = v
        return vec

    @classmethod
    def from_vector(cls, complex, k, vec):
        return cls(complex, k, {i: v for i, v in enumerate(vec) if v})

    @classmethod
    def zero(cls, complex, k):
        return cls(complex, k, {})

    @classmethod
    def basis(cls, complex, k, cell):
        return cls(complex, k, {cell: 1})

    def __repr__(self):
        terms = " ".join(f"{c}:{v}" for c, v in self._data.items()) or "0"
        return f"{type(self).__name__}({self.complex.name}, k={self.k}, {terms})"


class RationalChain(_Sparse):
    """Sparse exact k-chain."""

    __slots__ = ()


class RationalCochain(_Sparse):
    """Sparse exact k-cochain; absent cells evaluate to zero."""

    __slots__ = ()

    @property
    def values(self):
        return self._data


def boundary(c: RationalChain) -> RationalChain:
    if c.k == 0:
        raise DimensionZero("boundary of a 0-chain")
    out = {}
    for t, a in c.items():
        for f, s in c.complex.boundary_column(c.k, t).items():
            out[f] = out.get(f, 0) + s * a
    return RationalChain(c.complex, c.k - 1, out)


def coboundary(f: RationalCochain) -> RationalCochain:
    X, k = f.complex, f.k
    if k >= X.dim:
        raise DimensionTop(f"coboundary of a top-dimensional {k}-cochain")
    sign = (-1) ** (k + 1)
    out = {}
    for t in range(X.counts[k + 1]):
        v = sum((s * f[g] for g, s in X.boundary_column(k + 1, t).items()), Fraction(0))
        if v:
            out[t] = sign * v
    return RationalCochain(X, k + 1, out)


def l1_norm(c) -> Fraction:
    return sum((abs(v) for _, v in c.items()), Fraction(0))


def sup_norm(f) -> Fraction:
    return max((abs(v) for _, v in f.items()), default=Fraction(0))


def kronecker(f: RationalCochain, c: RationalChain) -> Fraction:
    """Evaluation pairing ``<f, c> = sum_t f(t) c(t)``."""
    if f.k != c.k or f.complex != c.complex:
        raise MismatchedComplexOrDimension("cochain and chain do not match")
    return sum((f[t] * a for t, a in c.items()), Fraction(0))


@dataclass(frozen=True, eq=False)
class SimplicialMap:
    """Dimension-wise cell map commuting with the face tables."""

    source: DeltaComplex
    target: DeltaComplex
    cell_map: tuple
    check: bool = field(default=True, repr=False)

    def __post_init__(self):
        cm = tuple(tuple(int(x) for x in level) for level in self.cell_map)
        object.__setattr__(self, "cell_map", cm)
        if self.check:
            self.verify()

    def verify(self):
        S, T = self.source, self.target
        if len(self.cell_map) != S.dim + 1 or T.dim < S.dim:
            raise NotSimplicialMap("cell map does not cover every source dimension")
        for k, level in enumerate(self.cell_map):
            if len(level) != S.counts[k]:
                raise NotSimplicialMap(f"dimension {k}: map is not total")
            if any(not 0 <= x < T.counts[k] for x in level):
                raise NotSimplicialMap(f"dimension {k}: image index out of range")
        for k in range(1, S.dim + 1):
            below = self.cell_map[k - 1]
            for t, row in enumerate(S.faces[k - 1]):
                image = T.cell_faces(k, self.cell_map[k][t])
                if tuple(below[f] for f in row) != image:
                    raise NotSimplicialMap(f"map does not commute with faces of cell {k}:{t}")

    def __call__(self, k: int, cell: int) -> int:
        return self.cell_map[k][cell]

    def compose(self, other: "SimplicialMap") -> "SimplicialMap":
        """``other ∘ self``."""
        levels = tuple(
            tuple(other.cell_map[k][x] for x in self.cell_map[k]) for k in range(self.source.dim + 1)
        )
        return SimplicialMap(self.source, other.target, levels, check=False)

    @classmethod
    def identity(cls, complex: DeltaComplex) -> "SimplicialMap":
        return cls(complex, complex, tuple(tuple(range(c)) for c in complex.counts), check=False)


def push_chain(m: SimplicialMap, c: RationalChain) -> RationalChain:
    if c.complex != m.source:
        raise WrongComplex("chain does not live on the map's source")
    out = {}
    level = m.cell_map[c.k]
    for t, a in c.items():
        out[level[t]] = out.get(level[t], 0) + a
    return RationalChain(m.target, c.k, out)


@dataclass(frozen=True)
class Decomposition:
    coefficients: tuple
    witness: RationalChain | None


def homology_class_decompose(z: RationalChain, basis) -> Decomposition:
    """Solve ``z = sum_i λ_i basis_i + ∂b`` exactly.

    ``witness`` is the (k+1)-chain ``b`` (None when k is the top dimension,
    where only ``b = 0`` exists).
    """
    X, k = z.complex, z.k
    if k > 0 and boundary(z):
        raise NotACycle("chain is not a cycle")
    for b in basis:
        if b.complex != X or b.k != k:
            raise WrongComplex("basis element lives elsewhere")
    n_basis = len(basis)
    columns = [b.to_vector() for b in basis]
    top = k + 1 <= X.dim
    if top:
        for t in range(X.counts[k + 1]):
            col = [Fraction(0)] * X.counts[k]
            for f, s in X.boundary_column(k + 1, t).items():
                col[f] = Fraction(s)
            columns.append(col)
    rows = [[col[i] for col in columns] for i in range(X.counts[k])]
    if not columns:
        if z:
            raise NotInSpan("class is not in the span of the basis")
        return Decomposition((), RationalChain.zero(X, k + 1) if top else None)
    x = linalg.solve(rows, z.to_vector())
    if x is None:
        raise NotInSpan("class is not in the span of the basis")
    lam = tuple(x[:n_basis])
    witness = RationalChain.from_vector(X, k + 1, x[n_basis:]) if top else None
    return Decomposition(lam, witness)

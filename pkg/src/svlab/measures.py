"""Finitely supported signed measures and measure chains.

On a finite carrier every subset is measurable, so a signed measure is
just a sparse map ``atom -> Fraction``.  Atoms may be any hashable value;
measure chains use the k-cells of a Δ-complex as atoms.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Hashable, Mapping, Union

from svlab.chains import RationalChain, RationalCochain
from svlab.delta_complex import DeltaComplex
from svlab.errors import DimensionZero, IndexOutOfRange, MismatchedComplexOrDimension, PartialFunction, PartialMap

__all__ = [
    "SignedMeasure",
    "HahnJordan",
    "MeasureChain",
    "hahn_decompose",
    "total_variation",
    "pushforward",
    "integrate",
    "measure_boundary",
    "include_chain",
    "chain_of",
    "measure_kronecker",
]


def _sort_key(atom):
    return (type(atom).__name__, atom)


class SignedMeasure:
    """Exact finitely supported signed measure; zero weights are dropped."""

    __slots__ = ("carrier", "_w")

    def __init__(self, weights: Mapping[Hashable, object] | None = None, carrier: Hashable = None):
        self.carrier = carrier
        w = {}
        for a, v in (weights or {}).items():
            q = Fraction(v)
            if q:
                w[a] = q
        self._w = dict(sorted(w.items(), key=lambda kv: _sort_key(kv[0])))

    @property
    def weights(self):
        return dict(self._w)

    def __call__(self, subset) -> Fraction:
        """Mass of a subset of the carrier."""
        return sum((self._w.get(a, Fraction(0)) for a in set(subset)), Fraction(0))

    def __getitem__(self, atom):
        return self._w.get(atom, Fraction(0))

    def support(self):
        return list(self._w)

    def items(self):
        return self._w.items()

    def __eq__(self, other):
        if not isinstance(other, SignedMeasure):
            return NotImplemented
        return self.carrier == other.carrier and self._w == other._w

    def __hash__(self):
        return hash((self.carrier, tuple(self._w.items())))

    def __bool__(self):
        return bool(self._w)

    def __add__(self, other):
        w = dict(self._w)
        for a, v in other._w.items():
            w[a] = w.get(a, 0) + v
        return SignedMeasure(w, self.carrier)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return SignedMeasure({a: -v for a, v in self._w.items()}, self.carrier)

    def __mul__(self, q):
        q = Fraction(q)
        return SignedMeasure({a: q * v for a, v in self._w.items()}, self.carrier)

    __rmul__ = __mul__

    def is_nonnegative(self):
        return all(v > 0 for v in self._w.values())

    def __repr__(self):
        body = " + ".join(f"{v}·δ[{a}]" for a, v in self._w.items()) or "0"
        return f"SignedMeasure({body})"


@dataclass(frozen=True)
class HahnJordan:
    positive_part: SignedMeasure
    negative_part: SignedMeasure
    P: frozenset
    N: frozenset


def hahn_decompose(mu: SignedMeasure, carrier_atoms=None) -> HahnJordan:
    """Split the carrier into P (positive weight) and N (everything else).

    ``carrier_atoms`` lists the whole carrier when it is larger than the
    support; weight-zero atoms land in N.
    """
    atoms = set(carrier_atoms) if carrier_atoms is not None else set(mu.support())
    atoms |= set(mu.support())
    P = frozenset(a for a in atoms if mu[a] > 0)
    N = frozenset(atoms - P)
    plus = SignedMeasure({a: mu[a] for a in P}, mu.carrier)
    minus = SignedMeasure({a: -mu[a] for a in N}, mu.carrier)
    return HahnJordan(plus, minus, P, N)


def total_variation(mu) -> Fraction:
    return sum((abs(v) for _, v in mu.items()), Fraction(0))


def pushforward(mu: SignedMeasure, f: Union[Mapping, Callable], carrier: Hashable = None) -> SignedMeasure:
    """Image measure ``A -> mu(f^-1(A))``."""
    lookup = f if callable(f) else f.__getitem__
    w = {}
    for a, v in mu.items():
        try:
            b = lookup(a)
        except (KeyError, IndexError) as exc:
            raise PartialMap(f"atom {a!r} has no image", atom=a) from exc
        w[b] = w.get(b, 0) + v
    return SignedMeasure(w, carrier)


def integrate(f: Union[Mapping, Callable], mu: SignedMeasure) -> Fraction:
    """``∫ f dμ = ∫ f dμ⁺ - ∫ f dμ⁻``, a finite weighted sum here."""
    lookup = f if callable(f) else f.__getitem__
    jordan = hahn_decompose(mu)
    total = Fraction(0)
    for part, sign in ((jordan.positive_part, 1), (jordan.negative_part, -1)):
        for a, v in part.items():
            try:
                total += sign * Fraction(lookup(a)) * v
            except (KeyError, IndexError) as exc:
                raise PartialFunction(f"function undefined at {a!r}", atom=a) from exc
    return total


class MeasureChain:
    """A signed measure on the k-cells of a Δ-complex."""

    __slots__ = ("complex", "k", "measure")

    def __init__(self, complex: DeltaComplex, k: int, measure: SignedMeasure | Mapping | None = None):
        if not 0 <= k <= complex.dim:
            raise IndexOutOfRange(f"dimension {k} not in 0..{complex.dim}")
        if not isinstance(measure, SignedMeasure):
            measure = SignedMeasure(measure or {})
        for a in measure.support():
            if not (isinstance(a, int) and 0 <= a < complex.counts[k]):
                raise IndexOutOfRange(f"atom {a!r} is not a {k}-cell", cell=a)
        self.complex = complex
        self.k = k
        self.measure = SignedMeasure(measure.weights, (complex.name, k))

    def items(self):
        return self.measure.items()

    def __getitem__(self, cell):
        return self.measure[cell]

    def __bool__(self):
        return bool(self.measure)

    def __eq__(self, other):
        if not isinstance(other, MeasureChain):
            return NotImplemented
        # the carrier label carries the complex name, which equality ignores
        return self.k == other.k and self.complex == other.complex and self.measure.weights == other.measure.weights

    def __hash__(self):
        return hash((self.k, tuple(self.measure.items())))

    def _check(self, other):
        if self.k != other.k or self.complex != other.complex:
            raise MismatchedComplexOrDimension("measure chains live in different spaces")

    def __add__(self, other):
        self._check(other)
        return MeasureChain(self.complex, self.k, self.measure + other.measure)

    def __sub__(self, other):
        self._check(other)
        return MeasureChain(self.complex, self.k, self.measure - other.measure)

    def __mul__(self, q):
        return MeasureChain(self.complex, self.k, self.measure * q)

    __rmul__ = __mul__

    def __repr__(self):
        return f"MeasureChain({self.complex.name}, k={self.k}, {self.measure!r})"


def measure_boundary(mu: MeasureChain) -> MeasureChain:
    """Alternating sum of the pushforwards along the face maps σ -> ∂_j σ."""
    X, k = mu.complex, mu.k
    if k == 0:
        raise DimensionZero("boundary of a 0-dimensional measure chain")
    table = X.faces[k - 1]
    total = SignedMeasure()
    for j in range(k + 1):
        face_j = pushforward(mu.measure, lambda t, j=j: table[t][j])
        total = total + face_j * ((-1) ** j)
    return MeasureChain(X, k - 1, total)


def include_chain(c: RationalChain) -> MeasureChain:
    """``Σ a_σ σ  ->  Σ a_σ δ_σ``."""
    return MeasureChain(c.complex, c.k, dict(c.items()))


def chain_of(mu: MeasureChain) -> RationalChain:
    """Inverse of :func:`include_chain` (every finite measure chain is in its image)."""
    return RationalChain(mu.complex, mu.k, dict(mu.items()))


def measure_kronecker(f: RationalCochain, mu: MeasureChain) -> Fraction:
    """``<f, μ> = ∫ f dμ``."""
    if f.k != mu.k or f.complex != mu.complex:
        raise MismatchedComplexOrDimension("cochain and measure chain do not match")
    return integrate(lambda t: f[t], mu.measure)

"""Smearing over the finite deck group of a tower of cyclic covers.

A tower fixes a base complex, a ℤ/d labeling and its d-sheeted cover U.
For every divisor e of d the labeling read mod e gives an intermediate
cover Q_e, and U -> Q_e is the (d/e)-sheeted quotient by the subgroup eℤ/d.

Smearing a simplex σ of Q_e onto Q_m lifts σ to U, translates the lift by
every element of ℤ/d modulo the deck group of U -> Q_m, projects to Q_m and
gives each translate weight 1/m (the uniform probability measure on the
m cosets).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from svlab.chains import RationalChain, RationalCochain, SimplicialMap, boundary, homology_class_decompose
from svlab.covering import CoveringMap, EdgeCocycle, build_cyclic_cover
from svlab.delta_complex import DeltaComplex, fundamental_cycle
from svlab.errors import Inconsistent, MismatchedComplexOrDimension, NotACycle, NotDivisors, WrongComplex
from svlab.measures import MeasureChain, SignedMeasure, chain_of, integrate
from svlab.parallel import ordered_map
from svlab.seminorm import class_norm

__all__ = [
    "CoverTower",
    "VolumeCochain",
    "build_tower",
    "smear",
    "smear_simplex",
    "volume_cochain",
    "integrate_volume",
    "class_from_integration",
    "proportionality_check",
    "ProportionalityReport",
]


@dataclass(frozen=True, eq=False)
class CoverTower:
    base: DeltaComplex
    d: int
    top: CoveringMap  # U -> base
    quotients: dict  # e -> CoveringMap Q_e -> base
    to_quotient: dict  # e -> SimplicialMap U -> Q_e

    @property
    def U(self) -> DeltaComplex:
        return self.top.total

    @property
    def divisors(self) -> list:
        return sorted(self.quotients)

    def Q(self, e: int) -> DeltaComplex:
        return self.quotient(e).total

    def quotient(self, e: int) -> CoveringMap:
        if e not in self.quotients:
            raise NotDivisors(f"{e} does not divide {self.d}")
        return self.quotients[e]

    def lifts(self, e: int, k: int, sigma: int) -> list:
        """All cells of U over the k-cell ``sigma`` of Q_e."""
        tau, j = divmod(sigma, e)
        return [tau * self.d + j + e * s for s in range(self.d // e)]


def build_tower(cocycle: EdgeCocycle) -> CoverTower:
    d = cocycle.d
    top = build_cyclic_cover(cocycle)
    quotients, maps = {}, {}
    for e in range(1, d + 1):
        if d % e:
            continue
        q = top if e == d else build_cyclic_cover(cocycle.reduce(e))
        quotients[e] = q
        levels = tuple(
            tuple((i // d) * e + (i % d) % e for i in range(n)) for n in top.total.counts
        )
        maps[e] = SimplicialMap(top.total, q.total, levels)
    return CoverTower(cocycle.complex, d, top, quotients, maps)


def smear_simplex(tower: CoverTower, m: int, k: int, lift: int) -> SignedMeasure:
    """Uniform average over ℤ/d mod mℤ/d of the translates of a U-cell, seen in Q_m."""
    proj = tower.to_quotient[m] if m in tower.to_quotient else None
    if proj is None:
        raise NotDivisors(f"{m} does not divide {tower.d}")
    weight = Fraction(1, m)
    w = {}
    for g in range(m):  # coset representatives of mℤ/d in ℤ/d, ascending
        cell = proj(k, tower.top.deck_power(k, lift, g))
        w[cell] = w.get(cell, 0) + weight
    return SignedMeasure(w)


def smear(tower: CoverTower, e: int, m: int, c: RationalChain, lift_choice=None) -> MeasureChain:
    """Smear a chain on Q_e to a measure chain on Q_m.

    ``lift_choice(sigma)`` may pick which U-lift of each simplex to use; the
    result does not depend on it.
    """
    Qe, Qm = tower.Q(e), tower.Q(m)
    if c.complex != Qe:
        raise WrongComplex(f"chain does not live on Q_{e}")
    k = c.k

    def one(item):
        sigma, a = item
        lift = lift_choice(sigma) if lift_choice else tower.lifts(e, k, sigma)[0]
        if tower.to_quotient[e](k, lift) != sigma:
            raise WrongComplex(f"cell {lift} of U is not a lift of {sigma}")
        return smear_simplex(tower, m, k, lift) * a

    total = SignedMeasure()
    for part in ordered_map(one, list(c.items())):
        total = total + part
    return MeasureChain(Qm, k, total)


@dataclass(frozen=True)
class VolumeCochain:
    """Top cochain giving each top cell its orientation sign (volume 1 each)."""

    complex: DeltaComplex
    cochain: RationalCochain

    @property
    def total(self) -> Fraction:
        return Fraction(self.complex.counts[self.complex.dim])


def volume_cochain(X: DeltaComplex) -> VolumeCochain:
    z = fundamental_cycle(X)
    return VolumeCochain(X, RationalCochain(X, X.dim, dict(z.items())))


def integrate_volume(mu: MeasureChain, vol: VolumeCochain) -> Fraction:
    if mu.complex != vol.complex or mu.k != vol.complex.dim:
        raise MismatchedComplexOrDimension("measure chain is not top-dimensional on this complex")
    f = vol.cochain
    return integrate(lambda t: f[t], mu.measure)


def class_from_integration(mu: MeasureChain, Q: DeltaComplex, vol: VolumeCochain | None = None) -> Fraction:
    """The ratio λ with ``[μ] = λ [Q]``, computed by integrating the volume.

    The ratio is cross-checked against an exact homology decomposition of
    μ's underlying chain.
    """
    if mu.complex != Q:
        raise WrongComplex("measure chain does not live on Q")
    c = chain_of(mu)
    if c.k > 0 and boundary(c):
        raise NotACycle("measure chain is not a cycle")
    vol = vol or volume_cochain(Q)
    ratio = integrate_volume(mu, vol) / vol.total
    z = fundamental_cycle(Q)
    lam = homology_class_decompose(c, [z]).coefficients[0]
    if lam != ratio:
        raise Inconsistent(f"integration gives {ratio} but the class is {lam} times [Q]")
    return ratio


@dataclass(frozen=True)
class ProportionalityReport:
    e: int
    m: int
    norm_e: Fraction
    norm_m: Fraction
    vol_e: Fraction
    vol_m: Fraction


def proportionality_check(tower: CoverTower, e: int, m: int) -> ProportionalityReport:
    Qe, Qm = tower.Q(e), tower.Q(m)
    norms = ordered_map(lambda X: class_norm(fundamental_cycle(X)).class_norm, [Qe, Qm])
    vol_e, vol_m = volume_cochain(Qe).total, volume_cochain(Qm).total
    if norms[0] / vol_e != norms[1] / vol_m:
        raise Inconsistent(f"norm/volume differs: {norms[0]}/{vol_e} vs {norms[1]}/{vol_m}")
    return ProportionalityReport(e, m, norms[0], norms[1], vol_e, vol_m)

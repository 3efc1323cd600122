"""ℓ¹ class norms by exact linear programming, with dual certificates.

The class norm of a cycle ``z0`` is ``min ||z0 + ∂b||_1`` over rational
(k+1)-chains ``b``.  It is solved as

    min  sum(p) + sum(n)
    s.t. p - n - ∂b⁺ + ∂b⁻ = z0,   p, n, b⁺, b⁻ >= 0

whose dual is ``max <φ, z0>`` over cochains with ``|φ| <= 1`` that vanish
on every boundary.  Dividing an optimal ``φ`` by the optimum gives a
cochain pairing to 1 with ``z0`` whose sup norm is the reciprocal of the
class norm.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional

from svlab.chains import RationalChain, RationalCochain, boundary, kronecker, l1_norm, sup_norm
from svlab.errors import Inconsistent, NotACycle
from svlab.lp import INFEASIBLE, OPTIMAL, solve_lp

__all__ = [
    "LpCertificate",
    "Verdict",
    "class_norm",
    "dual_norm",
    "dual_solution",
    "verify_certificate",
    "is_boundary",
]


@dataclass(frozen=True)
class LpCertificate:
    cycle: RationalChain
    class_norm: Fraction
    optimal_cycle: RationalChain
    witness: Optional[RationalChain]
    dual_cochain: Optional[RationalCochain]


class Verdict(NamedTuple):
    ok: bool
    reason: str = "OK"

    def __bool__(self):
        return self.ok


def _require_cycle(z0: RationalChain):
    if z0.k > 0 and boundary(z0):
        raise NotACycle("class_norm needs a cycle")


def _boundary_columns(X, k):
    """Sparse columns of ∂_{k+1}, or [] when k is the top dimension."""
    if k + 1 > X.dim:
        return []
    return [X.boundary_column(k + 1, t) for t in range(X.counts[k + 1])]


def class_norm(z0: RationalChain) -> LpCertificate:
    _require_cycle(z0)
    X, k = z0.complex, z0.k
    m = X.counts[k]
    cols = _boundary_columns(X, k)
    q = len(cols)
    A = [[Fraction(0)] * (2 * m + 2 * q) for _ in range(m)]
    for i in range(m):
        A[i][i] = Fraction(1)
        A[i][m + i] = Fraction(-1)
    for t, col in enumerate(cols):
        for f, s in col.items():
            A[f][2 * m + t] = Fraction(-s)
            A[f][2 * m + q + t] = Fraction(s)
    cost = [1] * (2 * m) + [0] * (2 * q)
    res = solve_lp(cost, A, z0.to_vector())
    if res.status != OPTIMAL:
        raise Inconsistent(f"class norm LP reported {res.status}")
    x = res.x
    z_star = RationalChain.from_vector(X, k, [x[i] - x[m + i] for i in range(m)])
    witness = None
    if q:
        witness = RationalChain.from_vector(X, k + 1, [x[2 * m + t] - x[2 * m + q + t] for t in range(q)])
    r = res.value
    phi = None
    if r > 0:
        phi = RationalCochain.from_vector(X, k, [v / r for v in res.y])
    return LpCertificate(z0, r, z_star, witness, phi)


def dual_solution(z0: RationalChain):
    """``(value, φ)`` minimising ``sup|φ|`` with ``<φ, z0> = 1`` and φ ⊥ boundaries.

    Returns ``(None, None)`` when no such φ exists, i.e. ``z0`` is a boundary.
    """
    _require_cycle(z0)
    X, k = z0.complex, z0.k
    m = X.counts[k]
    cols = _boundary_columns(X, k)
    # columns: φ⁺ (m), φ⁻ (m), t (1), s⁺ (m), s⁻ (m)
    n = 4 * m + 1
    T = 2 * m
    rows, rhs = [], []
    row = [Fraction(0)] * n
    for i, v in z0.items():
        row[i], row[m + i] = v, -v
    rows.append(row)
    rhs.append(Fraction(1))
    for col in cols:
        row = [Fraction(0)] * n
        for f, s in col.items():
            row[f], row[m + f] = Fraction(s), Fraction(-s)
        rows.append(row)
        rhs.append(Fraction(0))
    for i in range(m):
        for sign, slack in ((1, T + 1 + i), (-1, T + 1 + m + i)):
            row = [Fraction(0)] * n
            row[i], row[m + i] = Fraction(sign), Fraction(-sign)
            row[T] = Fraction(-1)
            row[slack] = Fraction(1)
            rows.append(row)
            rhs.append(Fraction(0))
    cost = [0] * n
    cost[T] = 1
    res = solve_lp(cost, rows, rhs)
    if res.status == INFEASIBLE:
        return None, None
    if res.status != OPTIMAL:
        raise Inconsistent(f"dual LP reported {res.status}")
    phi = RationalCochain.from_vector(X, k, [res.x[i] - res.x[m + i] for i in range(m)])
    return res.value, phi


def dual_norm(z0: RationalChain) -> Optional[Fraction]:
    """Least sup norm of a boundary-annihilating φ with ``<φ, z0> = 1``; None if infeasible."""
    return dual_solution(z0)[0]


def is_boundary(z: RationalChain) -> bool:
    from svlab.chains import homology_class_decompose
    from svlab.errors import NotInSpan

    try:
        homology_class_decompose(z, [])
    except NotInSpan:
        return False
    return True


def verify_certificate(cert: LpCertificate) -> Verdict:
    """Re-check a certificate by direct evaluation, without solving anything."""
    z0, z, r, b, phi = cert.cycle, cert.optimal_cycle, cert.class_norm, cert.witness, cert.dual_cochain
    X, k = z0.complex, z0.k
    if z.complex != X or z.k != k:
        return Verdict(False, "WrongComplex")
    if k > 0 and (boundary(z0) or boundary(z)):
        return Verdict(False, "NotACycle")
    if r < 0 or l1_norm(z) != r:
        return Verdict(False, "NormMismatch")
    diff = z - z0
    if b is None:
        if diff:
            return Verdict(False, "WitnessMismatch")
    elif boundary(b) != diff:
        return Verdict(False, "WitnessMismatch")
    if r == 0:
        return Verdict(phi is None, "OK" if phi is None else "UnexpectedDual")
    if phi is None:
        return Verdict(False, "MissingDual")
    if phi.complex != X or phi.k != k:
        return Verdict(False, "WrongComplex")
    if k + 1 <= X.dim:
        for t in range(X.counts[k + 1]):
            if sum((s * phi[f] for f, s in X.boundary_column(k + 1, t).items()), Fraction(0)):
                return Verdict(False, "NotOnAnnihilator")
    if kronecker(phi, z0) != 1:
        return Verdict(False, "NotNormalized")
    if r * sup_norm(phi) != 1:
        return Verdict(False, "DualityGap")
    return Verdict(True)

import random
from fractions import Fraction

import pytest

from svlab.chains import RationalChain, SimplicialMap, boundary, homology_class_decompose, l1_norm, push_chain
from svlab.covering import (
    EdgeCocycle,
    auto_cocycle,
    build_cyclic_cover,
    covering_multiplicativity_check,
    degree,
    gcd_of_labels,
    surface_genus,
    transfer,
)
from svlab.delta_complex import build_circle, build_polygon_surface, fundamental_cycle, validate
from svlab.errors import NotACocycle, WrongComplex

from conftest import random_chain


def random_cocycle(rng, X, d):
    """Random cocycle: a random cohomology-style labeling plus a coboundary."""
    # start from the automatic connected one, scale it and add a vertex coboundary
    base = auto_cocycle(X, d) if d > 1 else EdgeCocycle(X, 1, (0,) * X.counts[1])
    s = rng.randrange(1, d + 1)
    pot = [rng.randrange(d) for _ in range(X.counts[0])]
    labels = []
    for e, (v1, v0) in enumerate(X.faces[0]):
        labels.append(s * base.labels[e] + pot[v1] - pot[v0])
    return EdgeCocycle(X, d, tuple(labels))


def test_circle_double_cover():
    C = build_circle(3)
    cm = build_cyclic_cover(EdgeCocycle(C, 2, (1, 0, 0)))
    assert cm.total.counts == (6, 6)
    assert cm.connected
    assert validate(cm.total).euler_char == 0


def test_trivial_cover_is_disjoint(torus):
    cm = build_cyclic_cover(EdgeCocycle(torus, 3, (0, 0, 0)))
    assert cm.components == 3
    assert not cm.connected
    rep = covering_multiplicativity_check(cm)
    assert (rep.base_norm, rep.total_norm) == (2, 6)


def test_not_a_cocycle(torus):
    with pytest.raises(NotACocycle) as info:
        build_cyclic_cover(EdgeCocycle(torus, 2, (1, 0, 0)))
    assert "cell" in info.value.context


@pytest.mark.parametrize("g", range(1, 5))
@pytest.mark.parametrize("d", range(1, 7))
def test_euler_multiplicativity(g, d):
    rng = random.Random(100 * g + d)
    X = build_polygon_surface(g)
    for _ in range(2):
        c = random_cocycle(rng, X, d)
        cm = build_cyclic_cover(c)
        r = validate(cm.total)
        assert r.euler_char == d * X.euler_char
        assert r.orientable_top
        for k in range(X.dim + 1):
            for sigma in range(X.counts[k]):
                lifts = cm.lifts(k, sigma)
                assert len(lifts) == d
                assert sorted(cm.projection(k, t) for t in lifts) == [sigma] * d
                # deck acts freely and transitively on the fiber
                assert sorted(cm.deck_power(k, lifts[0], i) for i in range(d)) == sorted(lifts)
                assert all(cm.projection(k, cm.deck(k, t)) == sigma for t in lifts)


@pytest.mark.parametrize("g", [2, 3, 4])
@pytest.mark.parametrize("d", [2, 3, 5])
def test_genus_formula(g, d):
    cm = build_cyclic_cover(auto_cocycle(build_polygon_surface(g), d))
    assert cm.connected
    assert gcd_of_labels(cm.cocycle) == 1
    h = surface_genus(cm.total)
    assert h == d * g - d + 1
    assert (4 * h - 2) / d == 4 * g - 4 + Fraction(2, d)


def test_transfer_single_simplex(torus):
    cm = build_cyclic_cover(auto_cocycle(torus, 2))
    t = transfer(cm, RationalChain(torus, 2, {0: 1}))
    assert dict(t.items()) == {cm.cell(0, 0): 1, cm.cell(0, 1): 1}
    assert l1_norm(t) == 2


def test_transfer_chain_map_and_push():
    rng = random.Random(31)
    for g in (1, 2):
        X = build_polygon_surface(g)
        for d in (2, 3):
            cm = build_cyclic_cover(random_cocycle(rng, X, d))
            for k in range(3):
                for _ in range(5):
                    a = random_chain(rng, X, k)
                    t = transfer(cm, a)
                    assert l1_norm(t) == d * l1_norm(a)
                    assert push_chain(cm.projection, t) == d * a
                    if k:
                        assert boundary(t) == transfer(cm, boundary(a))


def test_transfer_of_fundamental_class(genus2):
    cm = build_cyclic_cover(auto_cocycle(genus2, 3))
    t = transfer(cm, fundamental_cycle(genus2))
    assert l1_norm(t) == 18
    assert t == fundamental_cycle(cm.total)
    assert homology_class_decompose(t, [fundamental_cycle(cm.total)]).coefficients == (1,)


def test_transfer_wrong_complex(torus, genus2):
    cm = build_cyclic_cover(auto_cocycle(torus, 2))
    with pytest.raises(WrongComplex):
        transfer(cm, RationalChain(genus2, 1, {0: 1}))


def test_degrees(torus, genus2):
    for X in (torus, genus2):
        assert degree(SimplicialMap.identity(X)) == 1
        for d in (2, 3):
            cm = build_cyclic_cover(auto_cocycle(X, d))
            assert degree(cm.projection) == d
            assert degree(cm.deck) == 1


@pytest.mark.parametrize("d", [2, 3])
def test_multiplicativity_genus2(genus2, d):
    rep = covering_multiplicativity_check(build_cyclic_cover(auto_cocycle(genus2, d)))
    assert rep.total_norm == d * rep.base_norm
    assert rep.total_chi == -2 * d


def test_multiplicativity_torus_double(torus):
    rep = covering_multiplicativity_check(build_cyclic_cover(auto_cocycle(torus, 2)))
    assert (rep.base_norm, rep.total_norm) == (2, 4)


def test_auto_cocycle_is_deterministic_and_surjective(genus2):
    a, b = auto_cocycle(genus2, 4), auto_cocycle(genus2, 4)
    assert a == b
    assert not a.violations()
    assert build_cyclic_cover(a).connected


def test_reduce(genus2):
    c = auto_cocycle(genus2, 6)
    r = c.reduce(3)
    assert r.d == 3 and r.labels == tuple(v % 3 for v in c.labels)
    assert not r.violations()

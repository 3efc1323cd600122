import random
from fractions import Fraction
from itertools import product

import pytest

from svlab.chains import RationalChain, boundary, kronecker, l1_norm
from svlab.covering import auto_cocycle
from svlab.delta_complex import build_polygon_surface, fundamental_cycle, validate
from svlab.errors import NotDivisors, WrongComplex
from svlab.measures import MeasureChain, include_chain, measure_boundary, total_variation
from svlab.smearing import (
    build_tower,
    class_from_integration,
    integrate_volume,
    proportionality_check,
    smear,
    volume_cochain,
)

from conftest import random_chain

TOWERS = {g: build_tower(auto_cocycle(build_polygon_surface(g), 6)) for g in (1, 2)}
PAIRS = [(e, m) for e, m in product((1, 2, 3, 6), repeat=2)]


@pytest.fixture(params=[1, 2], ids=["torus", "genus2"])
def tower(request):
    return TOWERS[request.param]


def test_tower_structure(tower):
    assert tower.divisors == [1, 2, 3, 6]
    base = tower.base
    for e in tower.divisors:
        Q = tower.Q(e)
        assert validate(Q).euler_char == e * base.euler_char
        down = tower.quotient(e).projection
        up = tower.to_quotient[e]
        for k in range(base.dim + 1):
            for cell in range(tower.U.counts[k]):
                assert down(k, up(k, cell)) == tower.top.projection(k, cell)
            for sigma in range(Q.counts[k]):
                lifts = tower.lifts(e, k, sigma)
                assert len(lifts) == 6 // e
                assert all(up(k, t) == sigma for t in lifts)


def test_not_divisors(tower):
    z = fundamental_cycle(tower.Q(2))
    with pytest.raises(NotDivisors):
        smear(tower, 2, 4, z)
    with pytest.raises(NotDivisors):
        tower.Q(5)


def test_wrong_complex(tower):
    with pytest.raises(WrongComplex):
        smear(tower, 2, 3, fundamental_cycle(tower.Q(3)))


@pytest.mark.parametrize("e,m", PAIRS)
def test_chain_map(tower, e, m):
    rng = random.Random(e * 10 + m)
    Q = tower.Q(e)
    for k in (1, 2):
        for _ in range(3):
            c = random_chain(rng, Q, k)
            assert measure_boundary(smear(tower, e, m, c)) == smear(tower, e, m, boundary(c))


@pytest.mark.parametrize("e,m", PAIRS)
def test_lift_independence(tower, e, m):
    Q = tower.Q(e)
    for k in range(3):
        for sigma in range(Q.counts[k]):
            c = RationalChain.basis(Q, k, sigma)
            outs = {smear(tower, e, m, c, lift_choice=lambda s, t=t: t) for t in tower.lifts(e, k, sigma)}
            assert len(outs) == 1


@pytest.mark.parametrize("e,m", PAIRS)
def test_norm_and_integration(tower, e, m):
    Q, vol_e, vol_m = tower.Q(e), volume_cochain(tower.Q(e)), volume_cochain(tower.Q(m))
    for sigma in range(Q.counts[2]):
        mu = smear(tower, e, m, RationalChain.basis(Q, 2, sigma))
        assert total_variation(mu.measure) == 1
        assert integrate_volume(mu, vol_m) == vol_e.cochain[sigma]
    rng = random.Random(e + 7 * m)
    for k in range(3):
        c = random_chain(rng, Q, k)
        assert total_variation(smear(tower, e, m, c).measure) <= l1_norm(c)


@pytest.mark.parametrize("e,m", PAIRS)
def test_smear_ratio(tower, e, m):
    z = fundamental_cycle(tower.Q(e))
    mu = smear(tower, e, m, z)
    assert total_variation(mu.measure) <= l1_norm(z)
    assert class_from_integration(mu, tower.Q(m)) == Fraction(e, m)


def test_genus2_two_to_three():
    tower = TOWERS[2]
    z = fundamental_cycle(tower.Q(2))
    mu = smear(tower, 2, 3, z)
    assert total_variation(mu.measure) == l1_norm(z) == 12
    assert class_from_integration(mu, tower.Q(3)) == Fraction(2, 3)


def test_class_from_integration_examples(tower):
    Q = tower.Q(3)
    z = fundamental_cycle(Q)
    assert class_from_integration(include_chain(z), Q) == 1
    assert class_from_integration(include_chain(Fraction(-5, 2) * z), Q) == Fraction(-5, 2)
    assert class_from_integration(MeasureChain(Q, 2, {}), Q) == 0


def test_volume(tower):
    for e in tower.divisors:
        Q = tower.Q(e)
        vol = volume_cochain(Q)
        assert vol.total == e * tower.base.counts[2]
        assert integrate_volume(include_chain(fundamental_cycle(Q)), vol) == vol.total
        assert kronecker(vol.cochain, fundamental_cycle(Q)) == vol.total


def test_volume_pulls_back(tower):
    vol_base = volume_cochain(tower.base).cochain
    for e in tower.divisors:
        cm = tower.quotient(e)
        vol = volume_cochain(cm.total).cochain
        for t in range(cm.total.counts[2]):
            assert vol[t] == vol_base[cm.projection(2, t)]


@pytest.mark.parametrize("e,m", PAIRS)
def test_proportionality(tower, e, m):
    rep = proportionality_check(tower, e, m)
    assert rep.norm_e / rep.vol_e == rep.norm_m / rep.vol_m


def test_torus_proportionality_values():
    rep = proportionality_check(TOWERS[1], 2, 3)
    assert (rep.norm_e, rep.norm_m, rep.vol_e, rep.vol_m) == (4, 6, 4, 6)


def test_smear_determinism_under_threads(monkeypatch):
    tower = TOWERS[2]
    z = fundamental_cycle(tower.Q(2))
    monkeypatch.setenv("SVLAB_THREADS", "1")
    a = smear(tower, 2, 3, z)
    monkeypatch.setenv("SVLAB_THREADS", "4")
    b = smear(tower, 2, 3, z)
    assert a == b and list(a.items()) == list(b.items())

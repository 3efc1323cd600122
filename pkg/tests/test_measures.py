import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from svlab.chains import RationalChain, RationalCochain, boundary, coboundary, l1_norm
from svlab.delta_complex import build_simplex, fundamental_cycle
from svlab.errors import DimensionZero, PartialFunction, PartialMap
from svlab.measures import (
    MeasureChain,
    SignedMeasure,
    chain_of,
    hahn_decompose,
    include_chain,
    integrate,
    measure_boundary,
    measure_kronecker,
    pushforward,
    total_variation,
)
from svlab.oracles import all_subsets

from conftest import corpus, random_chain, random_cochain

CORPUS = corpus()
weights = st.fractions(min_value=-10, max_value=10, max_denominator=5)
measures = st.dictionaries(st.integers(0, 11), weights, max_size=12).map(SignedMeasure)


def test_hahn_example():
    mu = SignedMeasure({"a": 3, "b": -2})
    hj = hahn_decompose(mu)
    assert hj.P == {"a"} and hj.N == {"b"}
    assert hj.positive_part == SignedMeasure({"a": 3})
    assert hj.negative_part == SignedMeasure({"b": 2})


def test_hahn_zero_measure():
    hj = hahn_decompose(SignedMeasure(), carrier_atoms=["x", "y"])
    assert hj.P == frozenset()
    assert hj.N == {"x", "y"}
    assert not hj.positive_part and not hj.negative_part


def test_hahn_positivity_on_sampled_subsets():
    rng = random.Random(20)
    atoms = list(range(20))
    mu = SignedMeasure({a: Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for a in atoms})
    hj = hahn_decompose(mu, atoms)
    for _ in range(1000):
        A = [a for a in atoms if rng.random() < 0.5]
        assert hj.positive_part(A) >= 0
        assert hj.negative_part(A) >= 0
        assert mu(set(A) & hj.P) >= 0
        assert mu(set(A) & hj.N) <= 0


@settings(max_examples=300, deadline=None)
@given(measures)
def test_jordan_invariants(mu):
    hj = hahn_decompose(mu)
    assert hj.positive_part - hj.negative_part == mu
    assert not (set(hj.positive_part.support()) & set(hj.negative_part.support()))
    assert hj.P.isdisjoint(hj.N)
    assert set(hj.positive_part.support()) <= hj.P
    assert set(hj.negative_part.support()) <= hj.N
    assert total_variation(mu) == hj.positive_part(hj.P) + hj.negative_part(hj.N)


def test_total_variation_example():
    assert total_variation(SignedMeasure({"a": 3, "b": -2})) == 5


@settings(max_examples=100, deadline=None)
@given(measures)
def test_tov_equals_sup_minus_inf(mu):
    atoms = list(range(12))
    values = [mu(A) for A in all_subsets(atoms)]
    assert total_variation(mu) == max(values) - min(values)


@settings(max_examples=300, deadline=None)
@given(measures, measures, weights)
def test_tov_is_a_norm(mu, nu, q):
    assert total_variation(mu + nu) <= total_variation(mu) + total_variation(nu)
    assert total_variation(q * mu) == abs(q) * total_variation(mu)
    assert (total_variation(mu) == 0) == (not mu)


@settings(max_examples=200, deadline=None)
@given(measures, measures)
def test_jordan_minimality(mu, alpha_extra):
    # any split mu = alpha - beta with alpha, beta >= 0 costs at least tov(mu)
    extra = SignedMeasure({a: abs(v) for a, v in alpha_extra.items()})
    hj = hahn_decompose(mu)
    alpha = hj.positive_part + extra
    beta = hj.negative_part + extra
    assert alpha - beta == mu
    assert total_variation(mu) <= total_variation(alpha) + total_variation(beta)
    if extra:
        assert total_variation(mu) < total_variation(alpha) + total_variation(beta)


def test_pushforward_examples():
    mu = SignedMeasure({"a": 3, "b": -2})
    assert total_variation(pushforward(mu, {"a": 1, "b": 2})) == 5
    const = pushforward(mu, lambda x: "pt")
    assert const == SignedMeasure({"pt": 1})
    assert total_variation(const) == 1
    assert not pushforward(SignedMeasure({"a": 1, "b": -1}), {"a": 0, "b": 0})


def test_pushforward_partial_map():
    with pytest.raises(PartialMap):
        pushforward(SignedMeasure({"a": 1, "z": 2}), {"a": 0})


maps = st.lists(st.integers(0, 5), min_size=12, max_size=12)


@settings(max_examples=300, deadline=None)
@given(measures, maps, maps)
def test_pushforward_functorial_and_contracting(mu, f, g):
    once = pushforward(mu, f)
    twice = pushforward(once, g)
    assert twice == pushforward(mu, lambda x: g[f[x]])
    assert total_variation(twice) <= total_variation(once) <= total_variation(mu)


@settings(max_examples=300, deadline=None)
@given(measures, maps, st.lists(weights, min_size=6, max_size=6))
def test_transformation_formula(mu, g, f):
    assert integrate(f, pushforward(mu, g)) == integrate(lambda x: f[g[x]], mu)


@settings(max_examples=200, deadline=None)
@given(measures, st.lists(weights, min_size=12, max_size=12))
def test_integration_bound_and_constants(mu, f):
    assert abs(integrate(f, mu)) <= max(abs(v) for v in f) * total_variation(mu)
    assert integrate(lambda x: 1, mu) == mu(range(12))


def test_integrate_dirac():
    assert integrate({"s": Fraction(7, 3)}, SignedMeasure({"s": 1})) == Fraction(7, 3)


def test_integrate_partial_function():
    with pytest.raises(PartialFunction):
        integrate({"a": 1}, SignedMeasure({"a": 1, "b": 1}))


def test_measure_boundary_of_triangle(triangle):
    mu = MeasureChain(triangle, 2, {0: 1})
    f0, f1, f2 = triangle.faces[1][0]
    assert measure_boundary(mu) == MeasureChain(triangle, 1, {f0: 1, f1: -1, f2: 1})


def test_measure_boundary_dimension_zero(triangle):
    with pytest.raises(DimensionZero):
        measure_boundary(MeasureChain(triangle, 0, {0: 1}))


def test_measure_chain_axioms_random():
    rng = random.Random(21)
    for X in CORPUS:
        for k in range(1, X.dim + 1):
            for _ in range(10):
                c = random_chain(rng, X, k)
                mu = include_chain(c)
                assert measure_boundary(mu) == include_chain(boundary(c))
                if k >= 2:
                    assert not measure_boundary(measure_boundary(mu))
                f = random_cochain(rng, X, k - 1)
                assert measure_kronecker(coboundary(f), mu) == (-1) ** k * measure_kronecker(f, measure_boundary(mu))


def test_include_chain(genus2):
    X = build_simplex(2)
    c = RationalChain(X, 1, {0: 3, 1: -2})
    mu = include_chain(c)
    assert dict(mu.items()) == {0: 3, 1: -2}
    assert total_variation(mu.measure) == 5
    assert not include_chain(RationalChain.zero(X, 1))
    z = fundamental_cycle(genus2)
    mz = include_chain(z)
    assert total_variation(mz.measure) == 6
    assert not measure_boundary(mz)
    assert chain_of(mz) == z


def test_include_chain_isometric_and_injective():
    rng = random.Random(22)
    X = CORPUS[1]
    seen = {}
    for _ in range(50):
        c = random_chain(rng, X, 1)
        mu = include_chain(c)
        assert total_variation(mu.measure) == l1_norm(c)
        assert chain_of(mu) == c
        if mu in seen:
            assert seen[mu] == c
        seen[mu] = c


def test_measure_kronecker_dirac(torus):
    f = RationalCochain(torus, 2, {1: 5})
    assert measure_kronecker(f, MeasureChain(torus, 2, {1: 1})) == 5

import random
from math import factorial

import pytest

from svlab.chains import RationalChain, boundary, homology_class_decompose
from svlab.delta_complex import build_circle, build_polygon_surface, build_simplex, build_simplex_boundary, fundamental_cycle, validate
from svlab.errors import UnsupportedDimension, WrongComplex
from svlab.subdivision import barycentric_subdivide, is_simplicial, subdivide_times

from conftest import corpus, random_chain

SMALL = [X for X in corpus() if X.dim <= 2]


def test_triangle():
    sd = barycentric_subdivide(build_simplex(2))
    assert sd.target.counts == (7, 12, 6)
    assert validate(sd.target).euler_char == 1
    assert is_simplicial(sd.target)


def test_torus_once(torus):
    sd = barycentric_subdivide(torus)
    assert sd.target.counts[2] == 12
    r = validate(sd.target)
    assert r.euler_char == 0
    image = sd.apply(fundamental_cycle(torus))
    assert homology_class_decompose(image, [fundamental_cycle(sd.target)]).coefficients == (1,)
    assert image == fundamental_cycle(sd.target)


def test_genus2_twice(genus2):
    steps = subdivide_times(genus2, 2)
    Y = steps[-1].target
    assert Y.counts[2] == 216
    assert not is_simplicial(genus2)
    assert is_simplicial(Y)
    assert validate(Y).betti == (1, 4, 1)


def test_is_simplicial_examples():
    assert is_simplicial(build_simplex_boundary(3))
    assert is_simplicial(build_simplex(3))
    assert not is_simplicial(build_circle(1))
    assert not is_simplicial(build_circle(2))  # two edges share a vertex set
    assert is_simplicial(build_circle(3))


def test_dimension_three_rejected():
    with pytest.raises(UnsupportedDimension):
        barycentric_subdivide(build_simplex(3))


def test_invariants_on_corpus():
    rng = random.Random(41)
    for X in SMALL:
        sd = barycentric_subdivide(X)
        before, after = validate(X), validate(sd.target)
        assert before.euler_char == after.euler_char
        assert before.betti == after.betti
        for k in range(X.dim + 1):
            for sigma in range(X.counts[k]):
                img = sd.cell_image(k, sigma)
                assert len(img) == factorial(k + 1)
                assert all(abs(v) == 1 for _, v in img.items())
                if k:
                    assert boundary(img) == sd.apply(boundary(RationalChain.basis(X, k, sigma)))
            if k:
                c = random_chain(rng, X, k)
                assert boundary(sd.apply(c)) == sd.apply(boundary(c))
        if before.fundamental_cycle is not None:
            z = sd.apply(before.fundamental_cycle)
            assert not boundary(z)
            dec = homology_class_decompose(z, [after.fundamental_cycle])
            assert abs(dec.coefficients[0]) == 1


def test_vertex_map(genus2):
    sd = barycentric_subdivide(genus2)
    dims = [sd.vertex_map(v)[0] for v in range(sd.target.counts[0])]
    assert dims.count(0) == 1 and dims.count(1) == 9 and dims.count(2) == 6


def test_apply_wrong_complex(torus, genus2):
    with pytest.raises(WrongComplex):
        barycentric_subdivide(torus).apply(RationalChain(genus2, 1, {0: 1}))


@pytest.mark.parametrize("g", [1, 2, 3])
def test_fundamental_class_preserved_exactly(g):
    X = build_polygon_surface(g)
    sd = barycentric_subdivide(X)
    image = sd.apply(fundamental_cycle(X))
    assert homology_class_decompose(image, [fundamental_cycle(sd.target)]).coefficients == (1,)

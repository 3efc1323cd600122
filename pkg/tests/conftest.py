import random
from fractions import Fraction
from itertools import combinations

import pytest

from svlab.chains import RationalChain, RationalCochain
from svlab.covering import auto_cocycle, build_cyclic_cover
from svlab.delta_complex import (
    DeltaComplex,
    build_circle,
    build_polygon_surface,
    build_simplex,
    build_simplex_boundary,
    build_torus,
)


@pytest.fixture
def torus():
    return build_torus()


@pytest.fixture
def genus2():
    return build_polygon_surface(2)


@pytest.fixture
def triangle():
    return build_simplex(2)


def random_simplicial_complex(rng, n_vertices=5, n_top=4, dim=2):
    """Closure of random top simplices on ``n_vertices`` labelled vertices."""
    tops = rng.sample(list(combinations(range(n_vertices), dim + 1)), n_top)
    levels = [set() for _ in range(dim + 1)]
    for s in tops:
        for k in range(dim + 1):
            levels[k].update(combinations(s, k + 1))
    cells = [sorted(level) for level in levels]
    index = [{s: i for i, s in enumerate(level)} for level in cells]
    faces = []
    for k in range(1, dim + 1):
        faces.append(tuple(tuple(index[k - 1][s[:j] + s[j + 1:]] for j in range(k + 1)) for s in cells[k]))
    return DeltaComplex(tuple(len(c) for c in cells), tuple(faces), name="rand")


def corpus():
    """Small valid complexes of every flavour used by property tests."""
    rng = random.Random(7)
    out = [
        build_torus(),
        build_polygon_surface(2),
        build_circle(1),
        build_circle(4),
        build_simplex(2),
        build_simplex(3),
        build_simplex_boundary(2),
        build_simplex_boundary(3),
    ]
    out.append(build_cyclic_cover(auto_cocycle(build_torus(), 3)).total)
    out.append(build_cyclic_cover(auto_cocycle(build_circle(3), 2)).total)
    for _ in range(4):
        out.append(random_simplicial_complex(rng, n_vertices=6, n_top=rng.randint(2, 6), dim=2))
    out.append(random_simplicial_complex(rng, n_vertices=6, n_top=3, dim=3))
    return out


def random_chain(rng, X, k, density=0.6, span=5):
    data = {}
    for t in range(X.counts[k]):
        if rng.random() < density:
            data[t] = Fraction(rng.randint(-span, span), rng.randint(1, 3))
    return RationalChain(X, k, data)


def random_cochain(rng, X, k, density=0.6, span=5):
    return RationalCochain(X, k, dict(random_chain(rng, X, k, density, span).items()))

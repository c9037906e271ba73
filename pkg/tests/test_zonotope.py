import itertools
import random
from fractions import Fraction as F

import pytest

from blackwell import reference
from blackwell.channel import (
    channel_from_columns,
    compose,
    constant_channel,
    identity_channel,
    make_channel,
)
from blackwell.exact_linear import extreme_points
from blackwell.orders import garbling_order
from blackwell.zonotope import (
    MissingCorner,
    NotConvex,
    NotSymmetric,
    TooManyGenerators,
    Zonotope,
    contains_point,
    corner_images,
    includes,
    inclusion_report,
    minimal_generators,
    polygon_to_channel,
    vertices,
    zonotope_of,
)
from gen import random_channel

H = F(1, 2)
CUBE = sorted(itertools.product((F(0), F(1)), repeat=3))


def brute_force_vertices(kappa):
    """Extreme points among all 2^m corner images, with no generator merging."""
    return extreme_points(sorted(corner_images(kappa.n_inputs, kappa.columns)))


def test_generators():
    assert zonotope_of(identity_channel(3)).generators == ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    assert zonotope_of(constant_channel(3)).generators == ((1, 1, 1),)
    mu = make_channel(reference.nested_mu())
    assert zonotope_of(mu).generators == ((H, H, 0), (H, 0, H), (0, H, H))


def test_vertex_examples():
    assert vertices(zonotope_of(identity_channel(3))) == CUBE
    mu = make_channel(reference.nested_mu())
    cols = mu.columns
    want = {(0, 0, 0), (1, 1, 1)} | set(cols) | {tuple(1 - v for v in c) for c in cols}
    assert vertices(zonotope_of(mu)) == sorted(want)
    k1 = make_channel(reference.cross_kappa1())
    assert vertices(zonotope_of(k1)) == brute_force_vertices(k1)


def test_segment_and_point():
    assert vertices(zonotope_of(constant_channel(2))) == [(0, 0), (1, 1)]
    assert vertices(Zonotope(2, ((F(0), F(0)),))) == [(0, 0)]
    assert vertices(zonotope_of(constant_channel(1))) == [(0,), (1,)]


def test_coplanar_generators_in_three_states():
    # all columns lie in the plane x0 = x1
    k = make_channel([[H, F(1, 4), F(1, 4)], [H, F(1, 4), F(1, 4)], [0, H, H]])
    assert vertices(zonotope_of(k)) == brute_force_vertices(k)


def test_generator_cap():
    wide = make_channel([[F(1, 21)] * 21, [F(1, 21)] * 21])
    with pytest.raises(TooManyGenerators):
        vertices(zonotope_of(wide))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_vertices_match_brute_force_oracle(n):
    rng = random.Random(10 + n)
    for _ in range(40):
        k = random_channel(rng, n, rng.randint(1, 6))
        assert vertices(zonotope_of(k)) == brute_force_vertices(k)


def test_membership_examples():
    kappa = make_channel(reference.nested_kappa())
    mu = make_channel(reference.nested_mu())
    zk, zm = zonotope_of(kappa), zonotope_of(mu)
    assert contains_point(zk, (0, 0, 0)).x == (0, 0, 0, 0)
    assert contains_point(zk, (H, H, 0)).x == (1, 1, 0, 0)
    out = contains_point(zm, (1, 1, 0))
    assert not out and out.certificate


def test_inclusion_examples():
    kappa = make_channel(reference.nested_kappa())
    mu = make_channel(reference.nested_mu())
    zk, zm = zonotope_of(kappa), zonotope_of(mu)
    assert includes(zk, zk)
    assert includes(zk, zm)
    assert not includes(zm, zk)
    outside = dict(inclusion_report(zm, zk))
    assert not outside[(H, 0, 0)]


def test_bounds_corners_and_symmetry():
    rng = random.Random(20)
    diag = [F(r, 4) for r in range(5)]
    for _ in range(100):
        n = rng.choice([2, 3])
        z = zonotope_of(random_channel(rng, n, rng.randint(1, 5)))
        assert all(0 <= c <= 1 for v in vertices(z) for c in v)
        for r in diag:
            assert contains_point(z, (r,) * n)
        v = tuple(F(rng.randint(0, 8), 8) for _ in range(n))
        a = contains_point(z, v)
        if a:
            mirrored = contains_point(z, tuple(1 - c for c in v))
            assert mirrored
            # the mirrored coefficients 1 - a also work
            back = tuple(sum((1 - ay) * g[i] for ay, g in zip(a.x, z.generators)) for i in range(n))
            assert back == tuple(1 - c for c in v)


def test_garbling_shrinks_zonotope():
    rng = random.Random(21)
    for _ in range(100):
        n = rng.choice([2, 3])
        k = random_channel(rng, n, rng.randint(1, 5))
        lam = random_channel(rng, k.n_outputs, rng.randint(1, 5))
        assert includes(zonotope_of(k), zonotope_of(compose(k, lam)))


def test_minimal_generator_examples():
    q = F(1, 4)
    k = channel_from_columns([(q, 0), (q, 0), (H, 1)])
    nu, lam1, lam2 = minimal_generators(k)
    assert nu.columns == ((H, 0), (H, 1))
    assert compose(k, lam1) == nu and compose(nu, lam2) == k

    ident = identity_channel(3)
    nu, lam1, lam2 = minimal_generators(ident)
    assert nu == ident and lam1 == ident and lam2 == ident

    with_zero = channel_from_columns([(H, 0), (0, 0), (H, 1)])
    nu, _, _ = minimal_generators(with_zero)
    assert (0, 0) not in nu.columns and nu.n_outputs == 2


def test_minimal_generators_random():
    rng = random.Random(22)
    for _ in range(100):
        n = rng.choice([2, 3])
        base = random_channel(rng, n, rng.randint(1, 4))
        # split a random column to force proportional pairs
        cols = list(base.columns)
        y = rng.randrange(len(cols))
        t = F(rng.randint(1, 3), 4)
        cols[y:y + 1] = [tuple(t * v for v in cols[y]), tuple((1 - t) * v for v in cols[y])]
        k = channel_from_columns(cols)
        nu, lam1, lam2 = minimal_generators(k)
        assert vertices(zonotope_of(nu)) == vertices(zonotope_of(k))
        assert compose(k, lam1) == nu and compose(nu, lam2) == k
        assert garbling_order(k, nu) and garbling_order(nu, k)


def test_polygon_examples():
    square = [(0, 0), (1, 0), (0, 1), (1, 1)]
    assert polygon_to_channel(square) == identity_channel(2)
    hexagon = [(0, 0), (H, 0), (1, H), (1, 1), (H, 1), (0, H)]
    ch = polygon_to_channel(hexagon)
    assert ch.columns == ((H, 0), (H, H), (0, H))
    assert vertices(zonotope_of(ch)) == sorted(tuple(map(F, p)) for p in hexagon)
    assert polygon_to_channel([(0, 0), (1, 1)]) == constant_channel(2)


def test_polygon_errors():
    with pytest.raises(MissingCorner):
        polygon_to_channel([(1, 0), (0, 1), (1, 1)])
    with pytest.raises(NotSymmetric):
        polygon_to_channel([(0, 0), (1, 0), (1, 1)])
    with pytest.raises(NotConvex):
        # (1/4, 0) and (3/4, 1) sit on the square's edges, not at corners
        polygon_to_channel([(0, 0), (F(1, 4), 0), (1, 0), (1, 1), (F(3, 4), 1), (0, 1)])


def test_binary_round_trip():
    rng = random.Random(23)
    for _ in range(150):
        k = random_channel(rng, 2, rng.randint(1, 6))
        back = polygon_to_channel(vertices(zonotope_of(k)))
        assert vertices(zonotope_of(back)) == vertices(zonotope_of(k))

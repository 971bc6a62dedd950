import pytest
from hypothesis import given, strategies as st

from dpx.errors import DimensionError
from dpx.lattice import (
    DivisorClass,
    Surface,
    anticanonical_class,
    canonical_class,
    degree,
    intersect,
    orbit_size,
    parse_class,
    perm_canonical,
)


def classes(r):
    return st.builds(lambda a, b: DivisorClass(a, tuple(b)),
                     st.integers(-20, 20), st.lists(st.integers(-20, 20), min_size=r, max_size=r))


rs = st.integers(1, 8)


def test_surface_range():
    assert Surface(8).degree == 1
    with pytest.raises(ValueError):
        Surface(9)
    with pytest.raises(ValueError):
        Surface(0)


def test_basic_numbers():
    s = Surface(5)
    k = canonical_class(s)
    assert k.square == 4
    assert anticanonical_class(s) == -k
    assert degree(s.line()) == 3
    assert degree(s.exceptional(2)) == 1
    assert intersect(s.exceptional(1), s.exceptional(1)) == -1


def test_parse_and_json():
    d = parse_class("2;-1,-1,-2,0,0")
    assert d == DivisorClass(2, (-1, -1, -2, 0, 0))
    assert str(d) == "(2; -1, -1, -2, 0, 0)"
    assert parse_class(str(d)) == d
    assert DivisorClass.from_json(d.to_json()) == d
    assert d.to_json() == {"r": 5, "a": 2, "b": [-1, -1, -2, 0, 0]}


def test_dimension_mismatch():
    with pytest.raises(DimensionError):
        parse_class("1;0,0", r=5)
    with pytest.raises(DimensionError):
        DivisorClass(1, (0, 0)).dot(DivisorClass(1, (0, 0, 0)))


@given(st.data(), rs)
def test_symmetric_bilinear(data, r):
    x, y, z = (data.draw(classes(r)) for _ in range(3))
    m = data.draw(st.integers(-5, 5))
    assert x.dot(y) == y.dot(x)
    assert (x + y).dot(z) == x.dot(z) + y.dot(z)
    assert (m * x).dot(y) == m * x.dot(y)


@given(st.data(), rs)
def test_degree_is_anticanonical_pairing(data, r):
    d = data.draw(classes(r))
    assert degree(d) == intersect(anticanonical_class(Surface(r)), d)


@given(st.data(), rs)
def test_perm_canonical_idempotent(data, r):
    d = data.draw(classes(r))
    rep, size = perm_canonical(d)
    assert perm_canonical(rep) == (rep, size)
    assert list(rep.b) == sorted(d.b, reverse=True)
    assert size == orbit_size(d.b)


@given(st.lists(st.lists(st.integers(-2, 2), min_size=4, max_size=4), min_size=1, max_size=30))
def test_orbit_sizes_sum_to_set_size(rows):
    from itertools import permutations

    raw = {DivisorClass(1, tuple(p)) for b in rows for p in permutations(b)}
    reps = {}
    for d in raw:
        rep, size = perm_canonical(d)
        reps[rep] = size
    assert sum(reps.values()) == len(raw)

import random

import pytest
from hypothesis import given, strategies as st

from dpx.cohomology import h0
from dpx.curves import conics, minus_one_curves, roots
from dpx.errors import CapacityError
from dpx.lattice import DivisorClass, Surface, anticanonical_class, perm_canonical
from dpx.weyl import describe, gram_matrix, nef_orbit_types, orbit, reflect, simple_roots

CARTAN_DET = {4: 5, 5: 4, 6: 3, 7: 2, 8: 1}


@pytest.mark.parametrize("r", [4, 5, 6, 7, 8])
def test_simple_roots(r):
    import numpy as np

    s = Surface(r)
    alphas = simple_roots(s)
    assert len(alphas) == r
    assert all(a.square == -2 and a.degree == 0 for a in alphas)
    assert round(np.linalg.det(np.array(gram_matrix(s)))) == CARTAN_DET[r]


@given(st.integers(4, 8), st.integers(0, 10**6))
def test_reflection_is_isometry(r, seed):
    rng = random.Random(seed)
    s = Surface(r)
    a = rng.choice(roots(s))
    x = s.cls(rng.randint(-6, 6), *[rng.randint(-6, 6) for _ in range(r)])
    y = s.cls(rng.randint(-6, 6), *[rng.randint(-6, 6) for _ in range(r)])
    assert reflect(x, a).dot(reflect(y, a)) == x.dot(y)
    assert reflect(x, a).degree == x.degree
    assert reflect(anticanonical_class(s), a) == anticanonical_class(s)
    assert reflect(reflect(x, a), a) == x


def test_reflect_rejects_non_root():
    s = Surface(5)
    with pytest.raises(ValueError):
        reflect(s.line(), s.exceptional(1))


@pytest.mark.parametrize("r", [4, 5, 6, 7, 8])
def test_orbit_of_exceptional_curve(r):
    s = Surface(r)
    assert orbit(s.exceptional(1)) == frozenset(minus_one_curves(s))


@pytest.mark.parametrize("r", [4, 5, 6])
def test_orbit_refines_permutations(r):
    s = Surface(r)
    for d in conics(s)[:5]:
        orb = orbit(d)
        assert all(DivisorClass(d.a, p) in orb for p in {tuple(sorted(d.b))})
        assert {perm_canonical(e)[0] for e in orb} <= {perm_canonical(e)[0] for e in orb}
        assert len({h0(e) for e in orb}) == 1


def test_capacity():
    with pytest.raises(CapacityError):
        orbit(Surface(8).line(), cap=100)


def test_s5_orbit_types():
    s = Surface(5)
    t4 = {o.name: o.size for o in nef_orbit_types(s, 4)}
    assert t4 == {"-K": 1, "2Q": 10, "C+E (C.E=1)": 40}
    t5 = sorted(o.size for o in nef_orbit_types(s, 5))
    assert t5 == [16, 80]
    assert describe(anticanonical_class(s)) == "-K"

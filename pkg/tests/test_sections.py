import json
import random

import pytest

from dpx.cohomology import h0
from dpx.curves import cox_generators, minus_one_curves
from dpx.enumeration import effective_slice
from dpx.errors import GenericityError
from dpx.lattice import DivisorClass, Surface, parse_class
from dpx.sections import (
    PointConfig,
    certify,
    coordinates,
    generator_sections,
    model_dimension,
    monomials,
    multiply,
    random_general_points,
    section_space,
)
from dpx.sections import _multiply_forms


def test_monomials():
    assert len(monomials(3)) == 10
    assert monomials(1) == ((1, 0, 0), (0, 1, 0), (0, 0, 1))


def test_collinear_points_fail_certificate():
    pts = [(1, 0, 1), (2, 0, 1), (3, 0, 1), (0, 1, 1)]
    with pytest.raises(GenericityError):
        certify(pts)


def test_reproducible_and_roundtrip():
    s = Surface(5)
    a = random_general_points(s, seed=42)
    b = random_general_points(s, seed=42)
    assert a.points == b.points
    text = json.dumps(a.to_json())
    assert PointConfig.from_json(text) == a


@pytest.mark.parametrize("r", [4, 5, 6, 7, 8])
def test_minus_one_dimension_one(r):
    pc = random_general_points(Surface(r))
    for e in minus_one_curves(Surface(r))[:60]:
        assert section_space(e, pc).dim == 1


@pytest.mark.parametrize("r", [4, 5])
def test_oracle_small_degrees(r):
    pc = random_general_points(Surface(r))
    for t in range(5):
        for d in effective_slice(Surface(r), t).classes():
            assert model_dimension(d, pc.points, exact=False) == h0(d)


def test_stripping():
    pc = random_general_points(Surface(5))
    d = parse_class("2;-1,1,-1,0,2")
    stripped = parse_class("2;-1,0,-1,0,0")
    sa, sb = section_space(d, pc), section_space(stripped, pc)
    assert sa.dim == sb.dim
    assert sa.basis == sb.basis


def test_multiplication_commutes_and_associates():
    s = Surface(5)
    pc = random_general_points(s)
    rng = random.Random(1)
    gens = generator_sections(pc)
    classes = [c for c, _ in cox_generators(s)]
    for _ in range(20):
        i, j, k = (rng.randrange(len(gens)) for _ in range(3))
        x, y, z = gens[i], gens[j], gens[k]
        assert multiply(x, y, pc) == multiply(y, x, pc)
        xy = _multiply_forms(x.form, classes[i].a, y.form, classes[j].a)
        left = _multiply_forms(xy, classes[i].a + classes[j].a, z.form, classes[k].a)
        yz = _multiply_forms(y.form, classes[j].a, z.form, classes[k].a)
        right = _multiply_forms(x.form, classes[i].a, yz, classes[j].a + classes[k].a)
        target = section_space(classes[i] + classes[j] + classes[k], pc)
        assert coordinates(left, target) == coordinates(right, target)


def test_generator_sections_count():
    pc = random_general_points(Surface(5))
    assert len(generator_sections(pc)) == 16


@pytest.mark.parametrize("r", [6, 7, 8])
def test_oracle_random_classes(r):
    from dpx.verify import oracle_mismatches

    assert oracle_mismatches(r, n=100, seed=r) == []

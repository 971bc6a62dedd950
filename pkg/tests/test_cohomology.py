import pytest
from hypothesis import given, strategies as st

from dpx.cohomology import h0, h0_with_trace, is_effective, is_nef, nef_h0
from dpx.lattice import DivisorClass, Surface, anticanonical_class, parse_class


@pytest.mark.parametrize("text,value", [
    ("2;-1,-1,-2,0,0", 1),
    ("3;-2,-2,-1,-1,-1", 1),
    ("3;-1,-1,-1,-1,-1", 5),
    ("0;0,0,0,0,0", 1),
    ("0;1,0,0,0,0", 1),
    ("-1;0,0,0,0,0", 0),
    ("1;-1,-1,-1,0,0", 0),
    ("2;-2,0,0,0,0", 3),
])
def test_examples(text, value):
    assert h0(parse_class(text)) == value


def test_three_points_on_a_line():
    assert not is_effective(parse_class("1;-1,-1,-1,0"))


def test_trace():
    value, trace = h0_with_trace(parse_class("2;-1,-1,-2,0,0"))
    assert value == 1
    assert trace.terminal.is_zero()
    assert all(d.dot(e) < 0 for d, e in trace.steps)


def test_nef_formula():
    k = anticanonical_class(Surface(5))
    assert is_nef(k)
    assert nef_h0(k) == 5
    assert h0(2 * k) == 13


def gen_class(r):
    return st.builds(lambda a, b: DivisorClass(a, tuple(b)),
                     st.integers(0, 8), st.lists(st.integers(-4, 2), min_size=r, max_size=r))


@given(st.data(), st.integers(4, 8))
def test_permutation_invariance(data, r):
    d = data.draw(gen_class(r))
    perm = data.draw(st.permutations(range(r)))
    assert h0(d) == h0(DivisorClass(d.a, tuple(d.b[i] for i in perm)))


@given(st.data(), st.integers(4, 8))
def test_reduction_properties(data, r):
    d = data.draw(gen_class(r))
    value, trace = h0_with_trace(d)
    if d.degree >= 0:
        assert len(trace.steps) <= d.degree + 1
    if trace.terminal_kind == "nef" and not trace.terminal.is_zero():
        assert trace.terminal.square >= 0
        assert nef_h0(trace.terminal) >= 1
    assert value >= 0

from fractions import Fraction
from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hyperdyn.errors import EmptySetError, MalformedTableError
from hyperdyn.metric import (
    FiniteMetricSpace,
    as_mask,
    hausdorff_distance,
    hausdorff_table,
    members,
    point_set_distance,
    point_set_table,
    to_fraction,
    validate_metric,
)

LINE3 = FiniteMetricSpace.line(3)


def naive_hausdorff(space, a, b):
    """The max-of-two-sups formula evaluated on Python sets."""
    d = space.dist
    ab = max(min(d(x, y) for y in b) for x in a)
    ba = max(min(d(y, x) for x in a) for y in b)
    return max(ab, ba)


@st.composite
def metric_spaces(draw, max_points=6):
    """Shortest-path metrics of random positive weighted complete graphs."""
    n = draw(st.integers(1, max_points))
    w = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            num = draw(st.integers(1, 20))
            den = draw(st.integers(1, 4))
            w[i][j] = w[j][i] = Fraction(num, den)
    for k in range(n):
        for i in range(n):
            for j in range(n):
                if w[i][k] + w[k][j] < w[i][j]:
                    w[i][j] = w[i][k] + w[k][j]
    return FiniteMetricSpace.from_rows(w)


def test_masks_roundtrip():
    assert as_mask([0, 2]) == 0b101
    assert members(0b101) == (0, 2)
    assert as_mask(5) == 5
    assert members(0) == ()


def test_to_fraction_accepts_strings_and_floats():
    assert to_fraction("3/4") == Fraction(3, 4)
    assert to_fraction(0.5) == Fraction(1, 2)
    assert to_fraction(0.1) == Fraction(1, 10)
    assert to_fraction(7) == 7


def test_from_rows_uses_common_scale():
    space = FiniteMetricSpace.from_rows([[0, "1/2"], ["1/2", 0]])
    assert space.scale == 2
    assert space.table.tolist() == [[0, 1], [1, 0]]
    assert space.dist(0, 1) == Fraction(1, 2)


def test_malformed_table_is_not_a_violation():
    with pytest.raises(MalformedTableError):
        FiniteMetricSpace.from_rows([[0, 1], [1]])
    with pytest.raises(MalformedTableError):
        validate_metric([[0, 1, 2], [1, 0, 1]])


def test_validate_discrete_ok():
    assert validate_metric([[0, 1], [1, 0]]) == []


def test_validate_symmetry_violation():
    v = validate_metric([[0, 1], [2, 0]])
    assert [(x.axiom, x.indices) for x in v] == [("symmetry", (0, 1))]


def test_validate_triangle_violation():
    v = validate_metric([[0, 1, 5], [1, 0, 1], [5, 1, 0]])
    assert ("triangle", (0, 1, 2)) in [(x.axiom, x.indices) for x in v]
    assert {x.axiom for x in v} == {"triangle"}


def test_validate_identity_and_positivity():
    v = validate_metric([[1, 0], [0, 0]])
    kinds = {(x.axiom, x.indices) for x in v}
    assert ("identity", (0,)) in kinds
    assert ("positivity", (0, 1)) in kinds


def test_point_set_distance_examples():
    assert point_set_distance(LINE3, 1, [1, 2]) == 0
    assert point_set_distance(LINE3, 0, [1, 2]) == 1
    assert point_set_distance(LINE3, 2, [0]) == 2
    with pytest.raises(EmptySetError):
        point_set_distance(LINE3, 0, [])


def test_hausdorff_examples():
    assert hausdorff_distance(LINE3, [0], [2]) == 2
    assert hausdorff_distance(LINE3, [0, 2], [1]) == 1
    assert hausdorff_distance(LINE3, [0], [0, 2]) == 2
    for a in range(1, 8):
        assert hausdorff_distance(LINE3, a, a) == 0
    with pytest.raises(EmptySetError):
        hausdorff_distance(LINE3, [], [1])


def test_tables_match_naive_formula():
    space = FiniteMetricSpace.from_rows([[0, 2, 3, "7/2"], [2, 0, 1, 2], [3, 1, 0, 1], ["7/2", 2, 1, 0]])
    assert validate_metric(space) == []
    n = space.point_count
    table = hausdorff_table(space)
    pst = point_set_table(space)
    for a in range(1, 1 << n):
        for x in range(n):
            assert Fraction(int(pst[x, a]), space.scale) == min(space.dist(x, y) for y in members(a))
        for b in range(1, 1 << n):
            expected = naive_hausdorff(space, members(a), members(b))
            assert Fraction(int(table[a - 1, b - 1]), space.scale) == expected
            assert hausdorff_distance(space, a, b) == expected


def test_discrete_hausdorff_is_one_off_diagonal():
    table = hausdorff_table(FiniteMetricSpace.discrete(4))
    off = ~np.eye(15, dtype=bool)
    assert (table[off] == 1).all()


def test_big_numerators_fall_back_to_object_dtype():
    big = 2**62
    space = FiniteMetricSpace.from_rows([[0, big], [big, 0]])
    assert space.table.dtype == object
    assert hausdorff_distance(space, [0], [0, 1]) == big


def test_equality_across_scales():
    a = FiniteMetricSpace.from_rows([[0, 1], [1, 0]])
    b = FiniteMetricSpace.from_rows([[0, "2/2"], ["2/2", 0]])
    assert a == b
    assert a != FiniteMetricSpace.line(3)


@settings(max_examples=25, deadline=None)
@given(metric_spaces(max_points=5))
def test_hausdorff_is_a_metric(space):
    n = space.point_count
    t = hausdorff_table(space)
    size = (1 << n) - 1
    assert (np.diag(t) == 0).all()
    off = ~np.eye(size, dtype=bool)
    assert (t[off] > 0).all()
    assert (t == t.T).all()
    assert not (t[:, None, :] > t[:, :, None] + t[None, :, :]).any()


@settings(max_examples=25, deadline=None)
@given(metric_spaces(max_points=5), st.data())
def test_containment_formula(space, data):
    n = space.point_count
    b = data.draw(st.integers(1, (1 << n) - 1))
    a = data.draw(st.sampled_from([s for s in range(1, b + 1) if s & ~b == 0]))
    expected = max(point_set_distance(space, y, a) for y in members(b))
    assert hausdorff_distance(space, a, b) == expected


@settings(max_examples=25, deadline=None)
@given(metric_spaces(max_points=6))
def test_generated_spaces_are_valid(space):
    assert validate_metric(space) == []

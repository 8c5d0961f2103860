import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hyperdyn.errors import EmptyShiftError, NoPeriodicPointsError
from hyperdyn.shifts import (
    Cylinder,
    Pattern,
    PeriodicPoint,
    cylinders_up_to,
    full_shift,
    golden_mean,
    graph_period,
    is_irreducible,
    is_primitive,
    path_between,
    pattern_nonempty,
    periodic_point_in,
    periodic_subsystem,
    periodic_words,
    sft_from_forbidden_words,
    sft_from_matrix,
    shift_distance,
    swap_shift,
    trace_power,
    two_fixed_points,
)

BUILTIN_SFTS = [full_shift(2), full_shift(3), golden_mean(), swap_shift(), two_fixed_points(),
                sft_from_forbidden_words(2, ["111"], "no-111")]


def naive_primitive(m):
    """Powers up to k^2 with plain Python integers."""
    k = len(m)
    power = [row[:] for row in m]
    for e in range(1, k * k + 1):
        if all(v > 0 for row in power for v in row):
            return e
        power = [[sum(power[i][t] * m[t][j] for t in range(k)) for j in range(k)] for i in range(k)]
    return None


def test_forbidden_word_examples():
    assert full_shift(2).matrix == ((1, 1), (1, 1))
    assert golden_mean().matrix == ((1, 1), (1, 0))
    with pytest.raises(EmptyShiftError):
        sft_from_forbidden_words(2, ["00", "01", "10", "11"])


def test_forbidden_word_validation():
    with pytest.raises(ValueError):
        sft_from_forbidden_words(2, ["02"])


def test_longer_words_use_higher_blocks():
    s = sft_from_forbidden_words(2, ["111"])
    assert s.alphabet_size == 4
    # words of length 3 over {0,1} avoiding 111: 7 of them
    assert int(s.array.sum()) == 7


def test_pruning_removes_dead_symbols():
    s = sft_from_matrix([[1, 1, 0], [1, 1, 0], [1, 0, 0]])
    assert s.alphabet_size == 2
    with pytest.raises(EmptyShiftError):
        sft_from_matrix([[0, 1], [0, 0]])


def test_irreducibility_examples():
    assert is_irreducible([[1, 1], [1, 1]])
    assert is_irreducible(golden_mean())
    assert not is_irreducible([[1, 0], [0, 1]])


def test_primitivity_examples():
    assert is_primitive(full_shift(2)) == (True, 1)
    assert is_primitive(swap_shift()) == (False, 2)
    assert is_primitive(golden_mean()) == (True, 2)
    assert graph_period(swap_shift()) == 2


@pytest.mark.parametrize("sft", BUILTIN_SFTS, ids=lambda s: s.label)
def test_primitivity_against_naive_powers(sft):
    ok, value = is_primitive(sft)
    expected = naive_primitive([list(r) for r in sft.matrix])
    assert ok == (expected is not None)
    if ok:
        assert value == expected


def test_cylinder_counts():
    assert len(cylinders_up_to(full_shift(2), 1)) == 2
    assert len(cylinders_up_to(full_shift(2), 2)) == 6
    assert len(cylinders_up_to(golden_mean(), 2)) == 5


@pytest.mark.parametrize("sft", BUILTIN_SFTS, ids=lambda s: s.label)
def test_cylinder_counts_match_matrix_powers(sft):
    m = sft.array
    cyl = cylinders_up_to(sft, 4)
    for length in range(1, 5):
        expected = int(np.linalg.matrix_power(m, length - 1).sum())
        assert sum(1 for c in cyl if len(c.word) == length) == expected
    assert all(sft.word_allowed(c.word) for c in cyl)


def test_periodic_subsystem_examples():
    assert periodic_subsystem(full_shift(2), 1).point_count == 2
    s = periodic_subsystem(full_shift(2), 2)
    assert s.point_count == 4
    assert periodic_subsystem(golden_mean(), 2).point_count == 3
    with pytest.raises(NoPeriodicPointsError) as err:
        periodic_subsystem(swap_shift(), 1)
    assert err.value.trace == 0


@pytest.mark.parametrize("sft", BUILTIN_SFTS, ids=lambda s: s.label)
@pytest.mark.parametrize("p", range(1, 7))
def test_trace_identity(sft, p):
    assert len(periodic_words(sft, p)) == trace_power(sft, p)
    if trace_power(sft, p):
        assert periodic_subsystem(sft, p).point_count == trace_power(sft, p)


@pytest.mark.parametrize("p", range(2, 5))
def test_full_shift_periodic_subsystem_is_not_transitive(p):
    from hyperdyn.checkers import is_transitive

    assert not is_transitive(periodic_subsystem(full_shift(2), p)).holds


def test_shift_distance():
    assert shift_distance((0, 1), (0, 1)) == 0
    assert shift_distance((0, 1), (1, 0)) == 1
    assert shift_distance((0, 0, 1), (0, 0, 0)) == pytest.approx(0.5)


def test_pattern_algebra():
    p = Pattern.of((0, 1), anchor=2)
    assert p.constraints == ((2, 0), (3, 1))
    assert p.translate(-2) == Pattern.of((0, 1))
    assert p.merge(Pattern.of((1,), 2)) is None
    assert p.merge(Pattern.of((1,), 5)).constraints == ((2, 0), (3, 1), (5, 1))
    assert Pattern(()).describe() == "X"
    assert Pattern(((0, 1), (2, 0))).describe() == "1*0@0"


def test_pattern_nonempty_uses_gaps():
    g = golden_mean()
    assert not pattern_nonempty(g, Pattern(((0, 1), (1, 1))))
    assert pattern_nonempty(g, Pattern(((0, 1), (2, 1))))
    assert not pattern_nonempty(swap_shift(), Pattern(((0, 0), (2, 1))))


def test_periodic_point_examples():
    assert periodic_point_in(full_shift(2), Cylinder((0, 1, 1)).pattern).block in {(0, 1, 1), (1, 1, 0), (1, 0, 1)}
    x = periodic_point_in(golden_mean(), Cylinder((1, 0)).pattern)
    assert x == PeriodicPoint((1, 0))
    assert x.at(0) == 1 and x.at(1) == 0


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(BUILTIN_SFTS[:5]), st.data())
def test_periodic_points_lie_in_their_patterns(sft, data):
    k = sft.alphabet_size
    n = data.draw(st.integers(1, 3))
    positions = sorted(data.draw(st.sets(st.integers(-4, 4), min_size=n, max_size=n)))
    pattern = Pattern(tuple((p, data.draw(st.integers(0, k - 1))) for p in positions))
    x = periodic_point_in(sft, pattern)
    if pattern_nonempty(sft, pattern):
        assert x is not None and pattern.contains(x)
        assert all(sft.matrix[x.at(i)][x.at(i + 1)] for i in range(x.period))
    else:
        assert x is None


def test_periodic_point_shift_convention():
    x = PeriodicPoint((0, 0, 1))
    # (shift x)_i = x_{i+1}
    assert all(x.shift(1).at(i) == x.at(i + 1) for i in range(6))
    assert x.shift(3) == x


def test_path_between_is_lexicographically_least():
    assert path_between(full_shift(2), 1, 1, 3) == [1, 0, 0, 1]
    assert path_between(golden_mean(), 1, 1, 1) is None

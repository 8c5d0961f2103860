from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from hyperdyn.errors import GeneratorIndexError, NonCommutingError, NotBijectionError
from hyperdyn.groups import (
    ActionSystem,
    GroupKind,
    GroupSpec,
    act_on_set,
    compose,
    evaluate,
    image_closure,
    invert,
    is_periodic_point,
    iter_orbits,
    orbit,
    perm_order,
    perm_power,
    reduce_word,
    word_ball,
)
from hyperdyn.library import cyclic_rotation, identity, klein_on_4, symmetric_3
from hyperdyn.metric import FiniteMetricSpace, members


def system(n, gens, kind=GroupKind.FREE_ABELIAN, abelian=True):
    return ActionSystem(FiniteMetricSpace.discrete(n), GroupSpec(kind, tuple(gens), abelian))


ROT3 = cyclic_rotation(3)
SWAPS = system(4, [(1, 0, 2, 3), (0, 1, 3, 2)])


def words(group, radius):
    """Every word of length at most ``radius`` over generators and inverses."""
    letters = [(i, s) for i in range(group.rank) for s in (1, -1)]
    out = [()]
    for length in range(1, radius + 1):
        out += [tuple(w) for w in product(letters, repeat=length)]
    return out


def test_perm_helpers():
    p = (1, 2, 0)
    assert compose(p, p) == (2, 0, 1)
    assert compose(p, invert(p)) == (0, 1, 2)
    assert perm_order(p) == 3
    assert perm_order((1, 0, 3, 4, 2)) == 6
    assert perm_power(p, -1) == invert(p)
    assert perm_power(p, 3) == (0, 1, 2)


def test_reduce_word():
    assert reduce_word([(0, 1), (0, -1)]) == ()
    assert reduce_word([(0, 2), (1, 1), (1, 2), (0, 0)]) == ((0, 2), (1, 3))


def test_evaluate_examples():
    assert evaluate(ROT3, (0,), 1) == 1
    assert evaluate(ROT3, (2,), 0) == 2
    for x in range(3):
        assert evaluate(ROT3, (-1,), evaluate(ROT3, (1,), x)) == x


def test_evaluate_rejects_bad_generator():
    with pytest.raises(GeneratorIndexError):
        evaluate(ROT3, (1, 0), 0)
    with pytest.raises(GeneratorIndexError):
        evaluate(klein_on_4(), ((5, 1),), 0)


def test_act_on_set_examples():
    assert members(act_on_set(ROT3, (1,), [0, 1])) == (1, 2)
    assert act_on_set(ROT3, (0,), 0b101) == 0b101


def test_image_closure_examples():
    assert image_closure(ROT3).order == 3
    assert image_closure(identity(3)).order == 1
    klein_like = system(4, [(1, 0, 2, 3), (0, 1, 3, 2)])
    img = image_closure(klein_like)
    assert img.order == 4
    assert img.infinite_fibers
    assert not image_closure(klein_on_4()).infinite_fibers
    assert image_closure(symmetric_3()).order == 6


def test_image_representatives_evaluate_to_their_elements():
    for s in (ROT3, SWAPS, klein_on_4(), symmetric_3()):
        img = s.image
        for p, rep in zip(img.elements, img.representatives):
            assert img.element_image(rep) == p


def test_orbit_examples():
    assert orbit(identity(3), 1) == {1}
    assert orbit(ROT3, 0) == {0, 1, 2}
    s = system(4, [(1, 0, 3, 2)])
    assert orbit(s, 2) == {2, 3}
    assert list(iter_orbits(s)) == [{0, 1}, {2, 3}]


def test_periodic_point_examples():
    r = is_periodic_point(ROT3, 0)
    assert r.periodic and r.orbit_size == 3 and r.stabilizer_index == 3
    r = is_periodic_point(identity(2), 1)
    assert r.orbit_size == 1 and r.stabilizer_index == 1


def test_validation():
    with pytest.raises(NotBijectionError):
        system(2, [(0, 0)])
    with pytest.raises(NonCommutingError):
        system(3, [(1, 2, 0), (1, 0, 2)])
    # the same generators are fine when the group is declared non-abelian
    system(3, [(1, 2, 0), (1, 0, 2)], GroupKind.FINITE, abelian=False)


def test_word_ball_order_and_size():
    g = GroupSpec(GroupKind.FREE_ABELIAN, ((1, 0), (0, 1)))
    ball = word_ball(g, 2)
    assert ball[0] == (0, 0)
    assert ball[1:5] == [(1, 0), (-1, 0), (0, 1), (0, -1)]
    assert len(ball) == 13  # 1 + 4 + 8
    assert len(word_ball(GroupSpec(GroupKind.FREE_ABELIAN, ((0,),)), 3)) == 7


def test_word_ball_refuses_finite_groups():
    with pytest.raises(ValueError):
        word_ball(klein_on_4().group, 2)


def _systems_up_to_8():
    from hyperdyn.library import finite_extended

    return finite_extended()


@pytest.mark.parametrize("s", _systems_up_to_8(), ids=lambda s: s.label)
def test_action_axiom_on_word_ball(s):
    group = s.group
    if group.kind is GroupKind.FREE_ABELIAN:
        elements = word_ball(group, 3 if group.rank <= 2 else 2)
    else:
        elements = [reduce_word(w) for w in words(group, 3)]
    elements = elements[:60]
    for g in elements:
        for h in elements:
            gh = group.multiply(g, h)
            for x in range(s.point_count):
                assert evaluate(s, gh, x) == evaluate(s, g, evaluate(s, h, x))
                if group.abelian:
                    assert evaluate(s, gh, x) == evaluate(s, group.multiply(h, g), x)


@pytest.mark.parametrize("s", _systems_up_to_8(), ids=lambda s: s.label)
def test_orbit_equals_image_orbit_and_orbit_stabilizer(s):
    img = s.image
    for x in range(s.point_count):
        assert orbit(s, x) == {p[x] for p in img.elements}
        r = is_periodic_point(s, x)
        assert r.stabilizer_index == r.orbit_size
        assert r.stabilizer_index * r.stabilizer_order == img.order


@settings(max_examples=40, deadline=None)
@given(st.permutations(range(5)), st.integers(-20, 20), st.integers(-20, 20))
def test_cyclic_action_is_a_homomorphism(perm, a, b):
    s = system(5, [tuple(perm)])
    for x in range(5):
        assert evaluate(s, (a + b,), x) == evaluate(s, (a,), evaluate(s, (b,), x))
    assert bin(act_on_set(s, (a,), 0b10110)).count("1") == 3

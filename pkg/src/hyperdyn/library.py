"""Builtin test systems and the ``builtin:name(args)`` resolver."""

from __future__ import annotations

import ast
from typing import Union

from .errors import UnknownSystemError
from .groups import ActionSystem, GroupKind, GroupSpec
from .metric import FiniteMetricSpace
from .shifts import (
    Sft,
    full_shift,
    golden_mean,
    periodic_subsystem,
    swap_shift,
    two_fixed_points,
)

System = Union[ActionSystem, Sft]


def _cycle(n: int, points: list[int]) -> tuple[int, ...]:
    perm = list(range(n))
    for a, b in zip(points, points[1:] + points[:1]):
        perm[a] = b
    return tuple(perm)


def cyclic_rotation(n: int) -> ActionSystem:
    gen = tuple((i + 1) % n for i in range(n))
    group = GroupSpec(GroupKind.FREE_ABELIAN, (gen,), True)
    return ActionSystem(FiniteMetricSpace.cyclic(n), group, f"cyclic_rotation({n})")


def identity(n: int) -> ActionSystem:
    group = GroupSpec(GroupKind.FREE_ABELIAN, (tuple(range(n)),), True)
    return ActionSystem(FiniteMetricSpace.line(n), group, f"identity({n})")


def commuting_pair(n: int) -> ActionSystem:
    """Z^2 rotating the first ceil(n/2) points and, separately, the rest."""
    h = (n + 1) // 2
    a = _cycle(n, list(range(h)))
    b = _cycle(n, list(range(h, n))) if n - h else tuple(range(n))
    group = GroupSpec(GroupKind.FREE_ABELIAN, (a, b), True)
    return ActionSystem(FiniteMetricSpace.line(n), group, f"commuting_pair({n})")


def klein_on_4() -> ActionSystem:
    group = GroupSpec(GroupKind.FINITE, ((1, 0, 3, 2), (2, 3, 0, 1)), True)
    return ActionSystem(FiniteMetricSpace.discrete(4), group, "klein_on_4")


def symmetric_3() -> ActionSystem:
    group = GroupSpec(GroupKind.FINITE, ((1, 2, 0), (1, 0, 2)), False)
    return ActionSystem(FiniteMetricSpace.discrete(3), group, "symmetric_3")


def product(a: ActionSystem, b: ActionSystem) -> ActionSystem:
    """Coordinatewise product; point ``(i, j)`` is index ``i * |B| + j``, max metric."""
    na, nb = a.point_count, b.point_count
    rows = [
        [max(a.space.dist(i // nb, j // nb), b.space.dist(i % nb, j % nb)) for j in range(na * nb)]
        for i in range(na * nb)
    ]
    gens = [tuple(g[i // nb] * nb + i % nb for i in range(na * nb)) for g in a.group.generators]
    gens += [tuple((i // nb) * nb + g[i % nb] for i in range(na * nb)) for g in b.group.generators]
    if a.group.kind is not b.group.kind:
        raise ValueError("product needs two free abelian or two finite groups")
    group = GroupSpec(a.group.kind, tuple(gens), a.group.abelian and b.group.abelian)
    return ActionSystem(
        FiniteMetricSpace.from_rows(rows), group, f"product({a.label},{b.label})"
    )


_FINITE = {
    "cyclic_rotation": cyclic_rotation,
    "identity": identity,
    "commuting_pair": commuting_pair,
    "klein_on_4": klein_on_4,
    "symmetric_3": symmetric_3,
    "product": product,
    "periodic_subsystem": periodic_subsystem,
}

_SHIFTS = {
    "full_shift": full_shift,
    "golden_mean": golden_mean,
    "swap": swap_shift,
    "two_fixed": two_fixed_points,
}


def finite_default() -> list[ActionSystem]:
    """Every builtin finite system with at most 6 points."""
    return [
        identity(1),
        identity(2),
        cyclic_rotation(2),
        cyclic_rotation(3),
        cyclic_rotation(4),
        cyclic_rotation(5),
        cyclic_rotation(6),
        commuting_pair(4),
        commuting_pair(5),
        klein_on_4(),
        symmetric_3(),
        product(cyclic_rotation(2), cyclic_rotation(3)),
        periodic_subsystem(full_shift(2), 1),
        periodic_subsystem(full_shift(2), 2),
        periodic_subsystem(golden_mean(), 3),
    ]


def finite_extended() -> list[ActionSystem]:
    """The default family plus systems with 7 and 8 points."""
    return finite_default() + [
        cyclic_rotation(7),
        commuting_pair(8),
        product(cyclic_rotation(2), cyclic_rotation(4)),
        periodic_subsystem(full_shift(2), 3),
    ]


def subshift_default() -> list[Sft]:
    return [full_shift(2), golden_mean()]


def subshift_oracle_family() -> list[Sft]:
    return [full_shift(2), golden_mean(), swap_shift(), two_fixed_points()]


_FAMILIES = {
    "finite_default": finite_default,
    "finite_extended": finite_extended,
    "subshift_default": subshift_default,
    "subshift_oracle": subshift_oracle_family,
}


def _eval(node):
    if isinstance(node, ast.Constant) and isinstance(node.value, int):
        return node.value
    if isinstance(node, ast.Name):
        return _build(node.id, [])
    if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and not node.keywords:
        return _build(node.func.id, [_eval(a) for a in node.args])
    raise UnknownSystemError(f"cannot interpret {ast.dump(node)}")


def _build(name: str, args: list):
    table = {**_FINITE, **_SHIFTS}
    if name not in table:
        raise UnknownSystemError(f"unknown builtin system {name!r}")
    try:
        return table[name](*args)
    except TypeError as exc:
        raise UnknownSystemError(f"bad arguments for {name}: {exc}") from None


def builtin(expr: str) -> System:
    """Evaluate an expression such as ``product(cyclic_rotation(2),cyclic_rotation(3))``."""
    expr = expr.strip()
    if expr.startswith("builtin:"):
        expr = expr[len("builtin:") :]
    try:
        tree = ast.parse(expr, mode="eval")
    except SyntaxError:
        raise UnknownSystemError(f"malformed builtin expression {expr!r}") from None
    return _eval(tree.body)


def builtin_family(name: str, params=()) -> list:
    """A named family, or a single named system wrapped in a list."""
    if name in _FAMILIES:
        return _FAMILIES[name]()
    return [_build(name, list(params))]

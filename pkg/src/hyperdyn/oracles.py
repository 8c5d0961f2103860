"""Brute-force evaluation of the defining quantifiers on small finite systems.

Nothing here reuses the optimized checkers: the acting group is closed by a
naive fixed point, open sets are ``frozenset`` objects from
``itertools.combinations``, and each definition is evaluated literally.
Meant for spaces with at most about 6 points.
"""

from __future__ import annotations

from itertools import chain, combinations

from .checkers import Verdict
from .groups import ActionSystem, GroupKind


def nonempty_subsets(n: int) -> list[frozenset[int]]:
    pts = range(n)
    return [frozenset(c) for c in chain.from_iterable(combinations(pts, r) for r in range(1, n + 1))]


def naive_image_group(system: ActionSystem) -> set[tuple[int, ...]]:
    n = system.point_count
    gens = [tuple(g) for g in system.group.generators]
    gens += [tuple(sorted(range(n), key=lambda x: g[x])) for g in gens]
    group = {tuple(range(n))}
    while True:
        bigger = group | {tuple(g[p[x]] for x in range(n)) for g in gens for p in group}
        if bigger == group:
            return group
        group = bigger


def _image(p, s: frozenset) -> frozenset:
    return frozenset(p[x] for x in s)


def _group_is_infinite(system: ActionSystem) -> bool:
    return system.group.kind is GroupKind.FREE_ABELIAN and len(system.group.generators) > 0


def transitive(system: ActionSystem) -> Verdict:
    group = naive_image_group(system)
    opens = nonempty_subsets(system.point_count)
    ok = all(any(_image(g, u) & v for g in group) for u in opens for v in opens)
    return Verdict.HOLDS if ok else Verdict.FAILS


def weakly_mixing(system: ActionSystem) -> Verdict:
    group = naive_image_group(system)
    opens = nonempty_subsets(system.point_count)
    for u1 in opens:
        for u2 in opens:
            for v1 in opens:
                for v2 in opens:
                    if not any(_image(g, u1) & v1 and _image(g, u2) & v2 for g in group):
                        return Verdict.FAILS
    return Verdict.HOLDS


def mixing(system: ActionSystem) -> Verdict:
    # a finite group can itself be the excluded finite set
    if not _group_is_infinite(system):
        return Verdict.VACUOUSLY_HOLDS
    # in an infinite group every fiber over an image element is infinite, so
    # a single failing image element can never be excluded by a finite set
    group = naive_image_group(system)
    opens = nonempty_subsets(system.point_count)
    ok = all(_image(g, u) & v for g in group for u in opens for v in opens)
    return Verdict.HOLDS if ok else Verdict.FAILS


def dense_periodic(system: ActionSystem) -> Verdict:
    group = naive_image_group(system)
    # orbit-stabilizer: a point is periodic when its stabilizer has finite index
    periodic = {
        x for x in range(system.point_count)
        if len(group) % sum(1 for g in group if g[x] == x) == 0
    }
    ok = all(u & periodic for u in nonempty_subsets(system.point_count))
    return Verdict.HOLDS if ok else Verdict.FAILS


def sdic(system: ActionSystem) -> Verdict:
    n = system.point_count
    group = naive_image_group(system)
    opens = nonempty_subsets(n)
    d = system.space.dist
    # if some delta works, so does every smaller one: test the least positive distance
    positive = sorted({d(i, j) for i in range(n) for j in range(n) if i != j})
    if not positive:
        return Verdict.FAILS
    delta = positive[0]
    for x in range(n):
        for u in opens:
            if x not in u:
                continue
            if not any(d(g[x], g[y]) >= delta for y in u for g in group):
                return Verdict.FAILS
    return Verdict.HOLDS


def devaney(system: ActionSystem) -> Verdict:
    ok = transitive(system).positive and dense_periodic(system).positive
    return Verdict.HOLDS if ok else Verdict.FAILS


ORACLES = {
    "transitive": transitive,
    "weakly-mixing": weakly_mixing,
    "mixing": mixing,
    "dense-periodic": dense_periodic,
    "sdic": sdic,
    "devaney": devaney,
}

"""Finitely generated groups acting on finite spaces by bijections.

A group is either free abelian of rank ``d`` (elements are exponent vectors)
or a finite group identified with its image in the symmetric group of the
space (elements are reduced words of ``(generator, exponent)`` pairs).  Every
decision that quantifies over the whole group goes through the finite image
computed by :func:`image_closure`.

Permutations are tuples ``p`` with ``p[x]`` the image of ``x``.  Products
act right to left: ``evaluate(g*h, x) == evaluate(g, evaluate(h, x))``.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from math import gcd
from typing import Iterator, Sequence, Union

from .errors import GeneratorIndexError, NonCommutingError, NotBijectionError
from .metric import FiniteMetricSpace, as_mask, members

Perm = tuple[int, ...]
Word = tuple[tuple[int, int], ...]
GroupElement = Union[tuple[int, ...], Word]


def compose(p: Perm, q: Perm) -> Perm:
    """``p`` after ``q``."""
    return tuple(p[x] for x in q)


def invert(p: Perm) -> Perm:
    out = [0] * len(p)
    for x, y in enumerate(p):
        out[y] = x
    return tuple(out)


def identity_perm(n: int) -> Perm:
    return tuple(range(n))


def perm_order(p: Perm) -> int:
    order = 1
    seen = [False] * len(p)
    for start in range(len(p)):
        if seen[start]:
            continue
        length = 0
        x = start
        while not seen[x]:
            seen[x] = True
            x = p[x]
            length += 1
        order = order * length // gcd(order, length)
    return order


def perm_power(p: Perm, e: int) -> Perm:
    if e < 0:
        p, e = invert(p), -e
    e %= perm_order(p)
    out = identity_perm(len(p))
    for _ in range(e):
        out = compose(p, out)
    return out


class GroupKind(str, enum.Enum):
    FREE_ABELIAN = "free_abelian"
    FINITE = "finite"


def reduce_word(word) -> Word:
    out: list[list[int]] = []
    for gen, exp in word:
        gen, exp = int(gen), int(exp)
        if exp == 0:
            continue
        if out and out[-1][0] == gen:
            out[-1][1] += exp
            if out[-1][1] == 0:
                out.pop()
        else:
            out.append([gen, exp])
    return tuple((g, e) for g, e in out)


@dataclass(frozen=True)
class GroupSpec:
    kind: GroupKind
    generators: tuple[Perm, ...]
    abelian: bool = True

    def __post_init__(self):
        object.__setattr__(self, "kind", GroupKind(self.kind))
        object.__setattr__(
            self, "generators", tuple(tuple(int(v) for v in g) for g in self.generators)
        )
        if self.kind is GroupKind.FREE_ABELIAN and not self.abelian:
            object.__setattr__(self, "abelian", True)

    @property
    def rank(self) -> int:
        return len(self.generators)

    @property
    def is_infinite(self) -> bool:
        return self.kind is GroupKind.FREE_ABELIAN and self.rank > 0

    @cached_property
    def inverses(self) -> tuple[Perm, ...]:
        return tuple(invert(g) for g in self.generators)

    def identity(self) -> GroupElement:
        if self.kind is GroupKind.FREE_ABELIAN:
            return (0,) * self.rank
        return ()

    def generator(self, i: int, sign: int = 1) -> GroupElement:
        if self.kind is GroupKind.FREE_ABELIAN:
            v = [0] * self.rank
            v[i] = sign
            return tuple(v)
        return ((i, sign),)

    def multiply(self, g: GroupElement, h: GroupElement) -> GroupElement:
        if self.kind is GroupKind.FREE_ABELIAN:
            return tuple(a + b for a, b in zip(g, h))
        return reduce_word(tuple(g) + tuple(h))

    def inverse(self, g: GroupElement) -> GroupElement:
        if self.kind is GroupKind.FREE_ABELIAN:
            return tuple(-a for a in g)
        return tuple((gen, -exp) for gen, exp in reversed(g))

    def word_length(self, g: GroupElement) -> int:
        if self.kind is GroupKind.FREE_ABELIAN:
            return sum(abs(a) for a in g)
        return sum(abs(e) for _, e in g)

    def as_word(self, g: GroupElement) -> Word:
        if self.kind is GroupKind.FREE_ABELIAN:
            return tuple((i, e) for i, e in enumerate(g) if e)
        return tuple(g)

    def check_element(self, g: GroupElement) -> None:
        if self.kind is GroupKind.FREE_ABELIAN:
            if len(g) != self.rank:
                raise GeneratorIndexError(
                    f"exponent vector {list(g)} has length {len(g)}, rank is {self.rank}"
                )
            return
        for gen, _ in g:
            if not 0 <= gen < self.rank:
                raise GeneratorIndexError(
                    f"generator index {gen} out of range (have {self.rank})"
                )


def element_sort_key(group: GroupSpec, g: GroupElement):
    """Word length first, then lexicographic in (generator, sign, |exponent|)."""
    letters = tuple((i, 0 if e > 0 else 1, abs(e)) for i, e in group.as_word(g))
    return (group.word_length(g), letters)


def word_ball(group: GroupSpec, radius: int) -> list[GroupElement]:
    """All group elements of word length at most ``radius``, in canonical order.

    Only free abelian groups are enumerated this way; finite groups are
    handled through their image and its representative words.
    """
    if group.kind is not GroupKind.FREE_ABELIAN:
        raise ValueError("word balls are only enumerated for free abelian groups")
    d = group.rank
    out: list[tuple[int, ...]] = []

    def rec(prefix: list[int], budget: int):
        if len(prefix) == d:
            out.append(tuple(prefix))
            return
        for e in range(-budget, budget + 1):
            prefix.append(e)
            rec(prefix, budget - abs(e))
            prefix.pop()

    rec([], radius)
    out.sort(key=lambda v: element_sort_key(group, v))
    return out


@dataclass(frozen=True)
class ImageGroup:
    """The finite image of the acting group in the symmetric group of the space."""

    elements: tuple[Perm, ...]
    representatives: tuple[GroupElement, ...]
    infinite_fibers: bool
    group: GroupSpec

    @cached_property
    def index(self) -> dict[Perm, int]:
        return {p: i for i, p in enumerate(self.elements)}

    @property
    def order(self) -> int:
        return len(self.elements)

    @cached_property
    def inverse_index(self) -> tuple[int, ...]:
        return tuple(self.index[invert(p)] for p in self.elements)

    def element_image(self, g: GroupElement) -> Perm:
        self.group.check_element(g)
        n = len(self.elements[0])
        p = identity_perm(n)
        for gen, exp in reversed(self.group.as_word(g)):
            p = compose(perm_power(self.group.generators[gen], exp), p)
        return p

    def image_index(self, g: GroupElement) -> int:
        return self.index[self.element_image(g)]


def _closure(group: GroupSpec, n: int) -> ImageGroup:
    start = identity_perm(n)
    steps = []
    for i, (g, ginv) in enumerate(zip(group.generators, group.inverses)):
        steps.append((g, group.generator(i, 1)))
        steps.append((ginv, group.generator(i, -1)))
    elements = [start]
    reps = [group.identity()]
    seen = {start: 0}
    queue = deque([0])
    while queue:
        k = queue.popleft()
        p, rep = elements[k], reps[k]
        for perm, letter in steps:
            q = compose(perm, p)
            if q not in seen:
                seen[q] = len(elements)
                elements.append(q)
                reps.append(group.multiply(letter, rep))
                queue.append(len(elements) - 1)
    return ImageGroup(tuple(elements), tuple(reps), group.is_infinite, group)


@dataclass(frozen=True)
class ActionSystem:
    """A finite metric space with a group acting by bijections."""

    space: FiniteMetricSpace
    group: GroupSpec
    name: str = field(default="", compare=False)

    def __post_init__(self):
        n = self.space.point_count
        for i, g in enumerate(self.group.generators):
            if len(g) != n or sorted(g) != list(range(n)):
                raise NotBijectionError(i, g)
        if self.group.abelian:
            gens = self.group.generators
            for a in range(len(gens)):
                for b in range(a + 1, len(gens)):
                    for x in range(n):
                        if gens[a][gens[b][x]] != gens[b][gens[a][x]]:
                            raise NonCommutingError((a, b), x)

    @property
    def point_count(self) -> int:
        return self.space.point_count

    @cached_property
    def image(self) -> ImageGroup:
        # concurrent first access may compute twice; the value is identical
        return _closure(self.group, self.point_count)

    @property
    def label(self) -> str:
        return self.name or f"system({self.point_count} points)"


def image_closure(system: ActionSystem) -> ImageGroup:
    return system.image


def evaluate(system: ActionSystem, g: GroupElement, x: int) -> int:
    group = system.group
    group.check_element(g)
    if not 0 <= x < system.point_count:
        raise IndexError(f"point {x} out of range")
    for gen, exp in reversed(group.as_word(g)):
        perm = group.generators[gen] if exp > 0 else group.inverses[gen]
        for _ in range(abs(exp) % perm_order(perm)):
            x = perm[x]
    return x


def act_mask(perm: Perm, mask: int) -> int:
    out = 0
    for x in members(mask):
        out |= 1 << perm[x]
    return out


def act_on_set(system: ActionSystem, g: GroupElement, a) -> int:
    """Image of the set ``a`` (mask or iterable) under ``g``, as a mask."""
    mask = as_mask(a)
    out = 0
    for x in members(mask):
        out |= 1 << evaluate(system, g, x)
    return out


def orbit(system: ActionSystem, x: int) -> frozenset[int]:
    group = system.group
    seen = {x}
    queue = deque([x])
    while queue:
        y = queue.popleft()
        for perm in group.generators + group.inverses:
            z = perm[y]
            if z not in seen:
                seen.add(z)
                queue.append(z)
    return frozenset(seen)


@dataclass(frozen=True)
class PeriodicPointReport:
    point: int
    periodic: bool
    orbit_size: int
    stabilizer_index: int
    image_order: int
    stabilizer_order: int


def is_periodic_point(system: ActionSystem, x: int) -> PeriodicPointReport:
    image = system.image
    stab = sum(1 for p in image.elements if p[x] == x)
    return PeriodicPointReport(
        point=x,
        periodic=True,
        orbit_size=len(orbit(system, x)),
        stabilizer_index=image.order // stab,
        image_order=image.order,
        stabilizer_order=stab,
    )


def iter_orbits(system: ActionSystem) -> Iterator[frozenset[int]]:
    seen: set[int] = set()
    for x in range(system.point_count):
        if x not in seen:
            orb = orbit(system, x)
            seen |= orb
            yield orb


def permutations_commute(perms: Sequence[Perm]) -> bool:
    return all(
        compose(p, q) == compose(q, p)
        for i, p in enumerate(perms)
        for q in perms[i + 1 :]
    )

"""The hyperspace of a finite action system and the induced action on it.

Elements of the hyperspace are the non-empty subsets of the base space in bit
order: element ``j`` is the mask ``j + 1``.  The hyperspace is returned as an
ordinary :class:`~hyperdyn.groups.ActionSystem`, so every checker runs on it
unchanged.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from .errors import EmptySetError, HyperspaceSizeError
from .groups import ActionSystem, GroupSpec
from .metric import FiniteMetricSpace, as_mask, hausdorff_table

DEFAULT_CAP = 12


@dataclass(frozen=True)
class VietorisBasic:
    """The basic open set of compacta inside the union of ``opens`` meeting each one.

    ``opens`` are bitmasks on finite spaces, or cylinder patterns on shifts.
    """

    opens: tuple

    def __post_init__(self):
        opens = tuple(as_mask(u) if not hasattr(u, "translate") else u for u in self.opens)
        if not opens:
            raise EmptySetError("a Vietoris basic open needs at least one open set")
        for i, u in enumerate(opens):
            if isinstance(u, int) and u == 0:
                raise EmptySetError(f"open set {i} of a Vietoris basic is empty")
        object.__setattr__(self, "opens", opens)

    def __len__(self):
        return len(self.opens)


def vietoris_contains(
    basic: VietorisBasic,
    a,
    member: Optional[Callable[[object, object], bool]] = None,
) -> bool:
    """Whether ``a`` lies in ``basic``.

    On finite spaces ``a`` is a mask.  Otherwise ``a`` is a finite collection
    of points and ``member(open, point)`` decides point membership.
    """
    if member is None:
        mask = as_mask(a)
        if mask == 0:
            return False
        union = 0
        for u in basic.opens:
            union |= u
        return mask & ~union == 0 and all(mask & u for u in basic.opens)
    points = list(a)
    if not points:
        return False
    inside = all(any(member(u, x) for u in basic.opens) for x in points)
    return inside and all(any(member(u, x) for x in points) for u in basic.opens)


def pad_to_common_length(v1: VietorisBasic, v2: VietorisBasic, full) -> tuple[VietorisBasic, VietorisBasic]:
    """Extend the shorter family with copies of the whole space ``full``.

    This enlarges the shorter basic: ``<U, X>`` also contains sets that
    leave ``U``.  Use :func:`pad_by_repetition` when the padded basic must
    have exactly the same members.
    """
    k = max(len(v1), len(v2))
    return (
        VietorisBasic(tuple(v1.opens) + (full,) * (k - len(v1))),
        VietorisBasic(tuple(v2.opens) + (full,) * (k - len(v2))),
    )


def pad_by_repetition(v1: VietorisBasic, v2: VietorisBasic) -> tuple[VietorisBasic, VietorisBasic]:
    """Extend the shorter family by repeating its last open; members are unchanged."""
    k = max(len(v1), len(v2))
    return (
        VietorisBasic(tuple(v1.opens) + (v1.opens[-1],) * (k - len(v1))),
        VietorisBasic(tuple(v2.opens) + (v2.opens[-1],) * (k - len(v2))),
    )


def submasks(u: int) -> list[int]:
    """Non-empty submasks of ``u`` in increasing order."""
    out = []
    s = u
    while s:
        out.append(s)
        s = (s - 1) & u
    out.reverse()
    return out


def extension_members(u, space=None) -> list[int]:
    """All non-empty subsets of ``u`` (as masks, bit order)."""
    return submasks(as_mask(u))


def in_extension(k, u) -> bool:
    k, u = as_mask(k), as_mask(u)
    return k != 0 and k & ~u == 0


def induced_permutation(perm: Sequence[int], n: int) -> tuple[int, ...]:
    """The bijection of hyperspace element indices induced by a point bijection."""
    masks = np.arange(1, 1 << n, dtype=np.int64)
    image = np.zeros_like(masks)
    for x in range(n):
        image |= ((masks >> x) & 1) << perm[x]
    return tuple(int(v) for v in image - 1)


@dataclass(frozen=True, eq=False)
class HyperspaceSystem:
    base: ActionSystem
    system: ActionSystem

    @property
    def elements(self) -> range:
        """Masks of the hyperspace elements, in element-index order."""
        return range(1, 1 << self.base.point_count)

    @property
    def metric(self) -> FiniteMetricSpace:
        return self.system.space

    @property
    def induced_generators(self):
        return self.system.group.generators

    @staticmethod
    def element_index(mask: int) -> int:
        return mask - 1

    @staticmethod
    def element_mask(index: int) -> int:
        return index + 1


def build_hyperspace_system(base: ActionSystem, cap: int = DEFAULT_CAP) -> HyperspaceSystem:
    n = base.point_count
    if n > cap:
        raise HyperspaceSizeError(n, cap)
    table = hausdorff_table(base.space)
    table.setflags(write=False)
    metric = FiniteMetricSpace(table, base.space.scale)
    gens = tuple(induced_permutation(g, n) for g in base.group.generators)
    group = GroupSpec(base.group.kind, gens, base.group.abelian)
    name = f"hyperspace({base.label})"
    return HyperspaceSystem(base, ActionSystem(metric, group, name))


def iter_nonempty_masks(n: int) -> Iterable[int]:
    return range(1, 1 << n)

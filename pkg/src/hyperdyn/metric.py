"""Exact finite metric spaces and the Hausdorff metric on their subsets.

Subsets of an ``n``-point space are bitmasks: bit ``i`` set means point ``i``
belongs to the set.  Distances are rationals stored as integer numerators
over one common denominator (``scale``), so every comparison is exact and the
Hausdorff table of a whole hyperspace can be filled with integer numpy ops.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import EmptySetError, MalformedTableError

SetLike = Union[int, Iterable[int]]

_INT64_SAFE = 2**61


def as_mask(s: SetLike) -> int:
    if isinstance(s, (int, np.integer)):
        return int(s)
    mask = 0
    for i in s:
        mask |= 1 << int(i)
    return mask


def members(mask: int) -> tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def to_fraction(value) -> Fraction:
    """Convert ints, Fractions, ``"p/q"`` strings and floats (once, exactly)."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, np.integer)):
        return Fraction(int(value))
    if isinstance(value, float):
        return Fraction(value).limit_denominator(10**9)
    return Fraction(str(value))


def _pick_dtype(max_value: int):
    return np.int64 if 2 * max_value < _INT64_SAFE else object


@dataclass(frozen=True, eq=False)
class FiniteMetricSpace:
    """A finite space ``{0, ..., n-1}`` with distances ``table[i, j] / scale``."""

    table: np.ndarray
    scale: int = 1

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "FiniteMetricSpace":
        rows = [list(r) for r in rows]
        n = len(rows)
        if n == 0:
            raise MalformedTableError("distance table has no rows")
        for i, row in enumerate(rows):
            if len(row) != n:
                raise MalformedTableError(
                    f"row {i} has {len(row)} entries, expected {n}"
                )
        fracs = [[to_fraction(v) for v in row] for row in rows]
        scale = lcm(*(f.denominator for row in fracs for f in row))
        nums = [[f.numerator * (scale // f.denominator) for f in row] for row in fracs]
        biggest = max(abs(v) for row in nums for v in row)
        table = np.array(nums, dtype=_pick_dtype(biggest))
        table.setflags(write=False)
        return cls(table, scale)

    @classmethod
    def discrete(cls, n: int) -> "FiniteMetricSpace":
        return cls.from_rows([[0 if i == j else 1 for j in range(n)] for i in range(n)])

    @classmethod
    def line(cls, n: int) -> "FiniteMetricSpace":
        return cls.from_rows([[abs(i - j) for j in range(n)] for i in range(n)])

    @classmethod
    def cyclic(cls, n: int) -> "FiniteMetricSpace":
        return cls.from_rows(
            [[min(abs(i - j), n - abs(i - j)) for j in range(n)] for i in range(n)]
        )

    @property
    def point_count(self) -> int:
        return self.table.shape[0]

    @property
    def full_mask(self) -> int:
        return (1 << self.point_count) - 1

    def dist(self, i: int, j: int) -> Fraction:
        return Fraction(int(self.table[i, j]), self.scale)

    def rows(self) -> list[list[Fraction]]:
        n = self.point_count
        return [[self.dist(i, j) for j in range(n)] for i in range(n)]

    def __eq__(self, other):
        if not isinstance(other, FiniteMetricSpace):
            return NotImplemented
        if self.table.shape != other.table.shape:
            return False
        if self.scale == other.scale:
            return bool(np.array_equal(self.table, other.table))
        return self.rows() == other.rows()

    __hash__ = None


@dataclass(frozen=True)
class Violation:
    axiom: str
    indices: tuple[int, ...]

    def __str__(self):
        return f"{self.axiom} at {self.indices}"


def validate_metric(space) -> list[Violation]:
    """Return every metric-axiom violation; an empty list means the table is a metric.

    ``space`` may be a :class:`FiniteMetricSpace` or raw rows.  A non-square
    table raises :class:`MalformedTableError` instead of being reported.
    """
    if not isinstance(space, FiniteMetricSpace):
        space = FiniteMetricSpace.from_rows(space)
    t = space.table
    n = space.point_count
    out: list[Violation] = []
    for i in range(n):
        if t[i, i] != 0:
            out.append(Violation("identity", (i,)))
    for i in range(n):
        for j in range(n):
            if i != j and t[i, j] <= 0:
                out.append(Violation("positivity", (i, j)))
    for i in range(n):
        for j in range(i + 1, n):
            if t[i, j] != t[j, i]:
                out.append(Violation("symmetry", (i, j)))
    # t[i,k] <= t[i,j] + t[j,k], checked over the whole cube at once
    bad = t[:, None, :] > (t[:, :, None] + t[None, :, :])
    for i, j, k in np.argwhere(bad):
        out.append(Violation("triangle", (int(i), int(j), int(k))))
    return out


def _require(mask: int, what: str) -> None:
    if mask == 0:
        raise EmptySetError(f"{what} must be non-empty")


def _point_set_scaled(space: FiniteMetricSpace, x: int, mask: int) -> int:
    row = space.table[x]
    return min(int(row[i]) for i in members(mask))


def point_set_distance(space: FiniteMetricSpace, x: int, s: SetLike) -> Fraction:
    """Distance from point ``x`` to the non-empty set ``s``."""
    mask = as_mask(s)
    _require(mask, "S")
    return Fraction(_point_set_scaled(space, x, mask), space.scale)


def hausdorff_distance(space: FiniteMetricSpace, a: SetLike, b: SetLike) -> Fraction:
    ma, mb = as_mask(a), as_mask(b)
    _require(ma, "A")
    _require(mb, "B")
    forward = max(_point_set_scaled(space, x, mb) for x in members(ma))
    backward = max(_point_set_scaled(space, y, ma) for y in members(mb))
    return Fraction(max(forward, backward), space.scale)


def point_set_table(space: FiniteMetricSpace) -> np.ndarray:
    """``D[x, S] = d(x, S)`` (scaled) for every point ``x`` and mask ``S``.

    Column 0 (the empty set) holds a sentinel larger than every distance.
    """
    n = space.point_count
    t = space.table
    sentinel = int(t.max()) + 1
    d = np.empty((n, 1 << n), dtype=t.dtype)
    d[:, 0] = sentinel
    for b in range(n):
        lo, hi = 1 << b, 1 << (b + 1)
        np.minimum(d[:, 0:lo], t[:, b : b + 1], out=d[:, lo:hi])
    return d


def hausdorff_table(space: FiniteMetricSpace) -> np.ndarray:
    """Scaled Hausdorff distances between all non-empty subsets, in bit order.

    Entry ``[j, k]`` is ``H(mask j+1, mask k+1) * scale``.
    """
    n = space.point_count
    d = point_set_table(space)
    size = 1 << n
    directed = np.empty((size, size), dtype=d.dtype)
    directed[0, :] = 0
    # directed[A, B] = max over a in A of d(a, B)
    for b in range(n):
        lo, hi = 1 << b, 1 << (b + 1)
        np.maximum(directed[0:lo, :], d[b : b + 1, :], out=directed[lo:hi, :])
    inner = directed[1:, 1:]
    return np.maximum(inner, inner.T)

"""Two-sided subshifts of finite type, cylinder patterns and periodic points.

The integers act by the left shift, ``(shift x)_i = x_{i+1}``, so the shift
by ``m`` moves a constraint at coordinate ``p`` to coordinate ``p - m``.
Open sets used by the bounded checkers are *patterns*: finitely many
coordinate constraints.  A cylinder is a pattern on consecutive coordinates.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import product
from math import gcd, lcm
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import EmptyShiftError, NoPeriodicPointsError
from .groups import ActionSystem, GroupKind, GroupSpec
from .metric import FiniteMetricSpace


def _as_word(w, labels=None) -> tuple:
    if isinstance(w, str):
        if labels is not None and all(isinstance(s, str) for s in labels):
            return tuple(w)
        return tuple(int(c) for c in w)
    return tuple(w)


@dataclass(frozen=True)
class Sft:
    """Transition matrix over symbols ``0..k-1``; ``labels`` name the symbols."""

    matrix: tuple[tuple[int, ...], ...]
    labels: tuple = ()
    forbidden: tuple = field(default=(), compare=False)
    name: str = field(default="", compare=False)

    def __hash__(self) -> int:
        try:
            return self.__dict__["_hash"]
        except KeyError:
            h = hash((self.matrix, self.labels))
            object.__setattr__(self, "_hash", h)
            return h

    def __post_init__(self):
        m = tuple(tuple(int(v) for v in row) for row in self.matrix)
        k = len(m)
        if k == 0:
            raise EmptyShiftError("transition matrix is empty")
        for row in m:
            if len(row) != k or any(v not in (0, 1) for v in row):
                raise ValueError("transition matrix must be a square 0/1 table")
        object.__setattr__(self, "matrix", m)
        if not self.labels:
            object.__setattr__(self, "labels", tuple(range(k)))

    @property
    def alphabet_size(self) -> int:
        return len(self.matrix)

    @property
    def label(self) -> str:
        return self.name or f"sft({self.alphabet_size} symbols)"

    @cached_property
    def array(self) -> np.ndarray:
        return np.array(self.matrix, dtype=np.int64)

    def reach(self, steps: int) -> np.ndarray:
        """Boolean ``M^steps``: entry ``[a, b]`` iff a path of that length exists."""
        return _reach(self.matrix, steps)

    def successors(self, a: int) -> list[int]:
        return [b for b, v in enumerate(self.matrix[a]) if v]

    def word_allowed(self, word: Sequence[int]) -> bool:
        return all(self.matrix[a][b] for a, b in zip(word, word[1:]))

    def format_word(self, word: Sequence[int]) -> str:
        parts = [str(self.labels[s]) for s in word]
        if all(len(p) == 1 for p in parts):
            return "".join(parts)
        return "[" + ",".join(parts) + "]"


@lru_cache(maxsize=None)
def _reach(matrix: tuple, steps: int) -> np.ndarray:
    k = len(matrix)
    step = np.array(matrix, dtype=np.int64)
    acc = np.eye(k, dtype=np.int64)
    for _ in range(steps):
        acc = np.minimum(acc @ step, 1)
    out = acc > 0
    out.setflags(write=False)
    return out


def prune(matrix: Sequence[Sequence[int]], labels: Sequence) -> tuple[tuple, tuple]:
    """Drop symbols that cannot be extended both ways, repeatedly."""
    keep = list(range(len(matrix)))
    changed = True
    while changed:
        changed = False
        for s in list(keep):
            has_out = any(matrix[s][t] for t in keep)
            has_in = any(matrix[t][s] for t in keep)
            if not (has_out and has_in):
                keep.remove(s)
                changed = True
    if not keep:
        raise EmptyShiftError("the shift space is empty (every symbol is pruned)")
    m = tuple(tuple(int(matrix[a][b]) for b in keep) for a in keep)
    return m, tuple(labels[s] for s in keep)


def sft_from_matrix(rows: Sequence[Sequence[int]], labels: Sequence = (), name: str = "") -> Sft:
    rows = [list(r) for r in rows]
    labels = tuple(labels) or tuple(range(len(rows)))
    k = len(rows)
    if k == 0 or any(len(r) != k for r in rows):
        raise ValueError("transition matrix must be square")
    m, kept = prune(rows, labels)
    return Sft(m, kept, name=name)


def _contains_forbidden(word: tuple, forbidden: Iterable[tuple]) -> bool:
    for f in forbidden:
        n = len(f)
        for i in range(len(word) - n + 1):
            if word[i : i + n] == f:
                return True
    return False


def sft_from_forbidden_words(k: int, words: Iterable, name: str = "") -> Sft:
    """Shift over ``k`` symbols avoiding ``words``.

    Words of length 2 become zeros of the transition matrix; longer words are
    handled by recoding to the higher block shift whose symbols are the
    allowed blocks of length ``max_len - 1``.
    """
    forbidden = tuple(sorted({_as_word(w) for w in words}, key=lambda w: (len(w), w)))
    for w in forbidden:
        if not w or any(not 0 <= s < k for s in w):
            raise ValueError(f"forbidden word {w} is not over the alphabet 0..{k - 1}")
    longest = max((len(w) for w in forbidden), default=2)
    block = max(longest - 1, 1)
    symbols = [
        b for b in product(range(k), repeat=block) if not _contains_forbidden(b, forbidden)
    ]
    if not symbols:
        raise EmptyShiftError("the shift space is empty (every block is forbidden)")
    rows = []
    for a in symbols:
        row = []
        for b in symbols:
            ok = a[1:] == b[:-1] and not _contains_forbidden(a + b[-1:], forbidden)
            row.append(1 if ok else 0)
        rows.append(row)
    labels = tuple(s[0] for s in symbols) if block == 1 else tuple(symbols)
    m, kept = prune(rows, labels)
    return Sft(m, kept, forbidden, name)


def full_shift(k: int = 2) -> Sft:
    return sft_from_forbidden_words(k, [], name=f"full_shift({k})")


def golden_mean() -> Sft:
    return sft_from_forbidden_words(2, ["11"], name="golden_mean")


def swap_shift() -> Sft:
    return sft_from_matrix([[0, 1], [1, 0]], name="swap")


def two_fixed_points() -> Sft:
    return sft_from_matrix([[1, 0], [0, 1]], name="two_fixed")


# --- oracles --------------------------------------------------------------


def _graph(m) -> list[list[int]]:
    return [[b for b, v in enumerate(row) if v] for row in m]


def _reachable(adj, start) -> set[int]:
    seen = {start}
    queue = deque([start])
    while queue:
        a = queue.popleft()
        for b in adj[a]:
            if b not in seen:
                seen.add(b)
                queue.append(b)
    return seen


def is_irreducible(m) -> bool:
    """Strong connectivity of the transition graph."""
    m = m.matrix if isinstance(m, Sft) else m
    k = len(m)
    fwd = _graph(m)
    back = _graph([[m[b][a] for b in range(k)] for a in range(k)])
    return len(_reachable(fwd, 0)) == k and len(_reachable(back, 0)) == k


def _component_period(adj, comp: set[int]) -> int:
    root = min(comp)
    level = {root: 0}
    queue = deque([root])
    period = 0
    while queue:
        a = queue.popleft()
        for b in adj[a]:
            if b not in comp:
                continue
            if b not in level:
                level[b] = level[a] + 1
                queue.append(b)
            else:
                period = gcd(period, level[a] + 1 - level[b])
    return abs(period)


def graph_period(m) -> int:
    """gcd of cycle lengths (over all strongly connected components)."""
    m = m.matrix if isinstance(m, Sft) else m
    k = len(m)
    adj = _graph(m)
    reach = [_reachable(adj, a) for a in range(k)]
    done: set[int] = set()
    period = 0
    for a in range(k):
        if a in done:
            continue
        comp = {b for b in reach[a] if a in reach[b]}
        done |= comp
        p = _component_period(adj, comp)
        if p:
            period = gcd(period, p)
    return period


def is_primitive(m) -> tuple[bool, int]:
    """``(True, least positive power)`` or ``(False, graph period)``.

    Powers are tried up to the Wielandt bound ``(k-1)^2 + 1``.
    """
    m = m.matrix if isinstance(m, Sft) else m
    k = len(m)
    a = np.array(m, dtype=np.int64)
    acc = np.eye(k, dtype=np.int64)
    for e in range(1, (k - 1) ** 2 + 2):
        acc = np.minimum(acc @ a, 1)
        if acc.all():
            return True, e
    return False, graph_period(m)


# --- patterns, cylinders, periodic points -----------------------------------


@dataclass(frozen=True, order=True)
class Pattern:
    """Coordinate constraints ``((position, symbol), ...)`` sorted by position."""

    constraints: tuple[tuple[int, int], ...] = ()

    def __hash__(self) -> int:
        # patterns are hashed heavily by the certificate caches
        try:
            return self.__dict__["_hash"]
        except KeyError:
            h = hash(self.constraints)
            object.__setattr__(self, "_hash", h)
            return h

    @classmethod
    def of(cls, word: Sequence[int], anchor: int = 0) -> "Pattern":
        return cls(tuple((anchor + i, int(s)) for i, s in enumerate(word)))

    def translate(self, offset: int) -> "Pattern":
        return Pattern(tuple((p + offset, s) for p, s in self.constraints))

    def merge(self, other: "Pattern") -> Optional["Pattern"]:
        """Intersection of the two constraint sets, or ``None`` on a clash."""
        out = dict(self.constraints)
        for p, s in other.constraints:
            if out.setdefault(p, s) != s:
                return None
        return Pattern(tuple(sorted(out.items())))

    def contains(self, point: "PeriodicPoint") -> bool:
        return all(point.at(p) == s for p, s in self.constraints)

    @property
    def span(self) -> tuple[int, int]:
        if not self.constraints:
            return (0, -1)
        return (self.constraints[0][0], self.constraints[-1][0])

    def describe(self, sft: Optional[Sft] = None) -> str:
        if not self.constraints:
            return "X"
        lo, hi = self.span
        d = dict(self.constraints)
        label = (lambda s: str(sft.labels[s])) if sft else str
        body = "".join(label(d[p]) if p in d else "*" for p in range(lo, hi + 1))
        return f"{body}@{lo}"


WHOLE_SPACE = Pattern(())


@dataclass(frozen=True)
class Cylinder:
    word: tuple[int, ...]
    anchor: int = 0

    @property
    def pattern(self) -> Pattern:
        return Pattern.of(self.word, self.anchor)


def pattern_nonempty(sft: Sft, pattern: Optional[Pattern]) -> bool:
    if pattern is None:
        return False
    cs = pattern.constraints
    for (p, a), (q, b) in zip(cs, cs[1:]):
        if not sft.reach(q - p)[a, b]:
            return False
    return True


def cylinders_up_to(sft: Sft, length: int) -> list[Cylinder]:
    """Allowed words of length 1..``length`` anchored at 0 (by length, then lexicographic)."""
    if length < 1:
        raise ValueError("cylinder length must be at least 1")
    out: list[Cylinder] = []
    layer = [(s,) for s in range(sft.alphabet_size)]
    for ell in range(1, length + 1):
        if ell > 1:
            layer = [w + (b,) for w in layer for b in sft.successors(w[-1])]
        out.extend(Cylinder(w) for w in layer)
    return out


def path_between(sft: Sft, a: int, b: int, steps: int) -> Optional[list[int]]:
    """Lexicographically least path ``a -> ... -> b`` with exactly ``steps`` edges."""
    if not sft.reach(steps)[a, b]:
        return None
    path = [a]
    cur = a
    for left in range(steps, 0, -1):
        for t in sft.successors(cur):
            if sft.reach(left - 1)[t, b]:
                path.append(t)
                cur = t
                break
    return path


def shortest_cycle_path(sft: Sft, a: int, b: int) -> Optional[list[int]]:
    """Shortest path from ``a`` to ``b`` with at least one edge."""
    start = object()
    parent: dict = {}
    queue = deque()
    for t in sft.successors(a):
        parent[t] = start
        queue.append(t)
    while queue:
        c = queue.popleft()
        if c == b:
            path = [c]
            while parent[path[-1]] is not start:
                path.append(parent[path[-1]])
            path.append(a)
            return path[::-1]
        for t in sft.successors(c):
            if t not in parent:
                parent[t] = c
                queue.append(t)
    return None


@dataclass(frozen=True, order=True)
class PeriodicPoint:
    """The sequence ``x_i = block[i mod len(block)]``; ``block`` has minimal period."""

    block: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "block", _minimal_block(tuple(self.block)))

    def at(self, i: int) -> int:
        return self.block[i % len(self.block)]

    @property
    def period(self) -> int:
        return len(self.block)

    def shift(self, m: int) -> "PeriodicPoint":
        p = len(self.block)
        r = m % p
        return PeriodicPoint(self.block[r:] + self.block[:r])


def _minimal_block(block: tuple) -> tuple:
    p = len(block)
    for d in range(1, p + 1):
        if p % d == 0 and block == block[:d] * (p // d):
            return block[:d]
    return block


def fill_pattern(sft: Sft, pattern: Pattern) -> Optional[tuple[int, list[int]]]:
    """An allowed word on the pattern's span that meets every constraint."""
    cs = pattern.constraints
    if not cs:
        return None
    word = [cs[0][1]]
    for (p, a), (q, b) in zip(cs, cs[1:]):
        seg = path_between(sft, a, b, q - p)
        if seg is None:
            return None
        word.extend(seg[1:])
    return cs[0][0], word


def periodic_point_in(sft: Sft, pattern: Pattern) -> Optional[PeriodicPoint]:
    """A periodic point of the shift lying in ``pattern``, or ``None``."""
    if not pattern.constraints:
        for s in range(sft.alphabet_size):
            cyc = shortest_cycle_path(sft, s, s)
            if cyc is not None:
                return PeriodicPoint(tuple(cyc[:-1]))
        return None
    filled = fill_pattern(sft, pattern)
    if filled is None:
        return None
    lo, word = filled
    closing = shortest_cycle_path(sft, word[-1], word[0])
    if closing is None:
        return None
    block = tuple(word) + tuple(closing[1:-1])
    # block starts at coordinate lo; rotate so it starts at coordinate 0
    return PeriodicPoint(block).shift(-lo) if lo else PeriodicPoint(block)


def periodic_words(sft: Sft, p: int) -> list[tuple[int, ...]]:
    """Length-``p`` cyclic words respecting transitions (including the wrap)."""
    out = []
    m = sft.matrix

    def rec(word):
        if len(word) == p:
            if m[word[-1]][word[0]]:
                out.append(tuple(word))
            return
        for b in sft.successors(word[-1]):
            word.append(b)
            rec(word)
            word.pop()

    for s in range(sft.alphabet_size):
        rec([s])
    return sorted(out)


def trace_power(sft: Sft, p: int) -> int:
    return int(np.trace(np.linalg.matrix_power(sft.array, p)))


def shift_distance(x: Sequence[int], y: Sequence[int]) -> Fraction:
    """``2^-min{|i| : x_i != y_i}`` for two sequences of the same period ``p``."""
    p = len(x)
    best = None
    for i in range(-(p - 1), p):
        if x[i % p] != y[i % p]:
            if best is None or abs(i) < best:
                best = abs(i)
    return Fraction(0) if best is None else Fraction(1, 2**best)


def periodic_subsystem(sft: Sft, p: int) -> ActionSystem:
    """Points of period dividing ``p`` with the shift acting as a permutation."""
    if p < 1:
        raise ValueError("period must be at least 1")
    words = periodic_words(sft, p)
    if not words:
        raise NoPeriodicPointsError(p, trace_power(sft, p))
    index = {w: i for i, w in enumerate(words)}
    rows = [[shift_distance(a, b) for b in words] for a in words]
    shift = tuple(index[w[1:] + w[:1]] for w in words)
    space = FiniteMetricSpace.from_rows(rows)
    group = GroupSpec(GroupKind.FREE_ABELIAN, (shift,), True)
    return ActionSystem(space, group, f"periodic_subsystem({sft.label},{p})")


def periodic_subsystem_points(sft: Sft, p: int) -> list[tuple[int, ...]]:
    return periodic_words(sft, p)


def orbit_of_points(points: frozenset, limit: int) -> int:
    """Size of the shift orbit of a finite set of periodic points."""
    for m in range(1, limit + 1):
        if frozenset(x.shift(m) for x in points) == points:
            return m
    raise AssertionError("orbit exceeded the lcm of the periods")


def lcm_of_periods(points: Iterable[PeriodicPoint]) -> int:
    return lcm(*(x.period for x in points))

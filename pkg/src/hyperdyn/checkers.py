"""Decision procedures for transitivity, mixing, periodicity, SDIC and Devaney chaos.

Finite action systems are decided exactly.  Subshifts of finite type are
checked over cylinders of bounded length and shift exponents of bounded size;
those verdicts carry the bounds they were certified under.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence, Union

from .errors import EmptySetError, NonAbelianError
from .groups import (
    ActionSystem,
    GroupKind,
    GroupSpec,
    act_mask,
    orbit,
    word_ball,
)
from .metric import FiniteMetricSpace, as_mask, members
from .shifts import (
    Cylinder,
    Pattern,
    Sft,
    cylinders_up_to,
    is_irreducible,
    is_primitive,
    path_between,
    pattern_nonempty,
    periodic_point_in,
)

WITNESS_LIMIT = 64


class Verdict(str, enum.Enum):
    HOLDS = "holds"
    FAILS = "fails"
    HOLDS_UP_TO_BOUNDS = "holds-up-to-bounds"
    VACUOUSLY_HOLDS = "vacuously-holds"
    BOUNDED_FAILURE = "bounded-failure"

    @property
    def positive(self) -> bool:
        return self in (Verdict.HOLDS, Verdict.HOLDS_UP_TO_BOUNDS, Verdict.VACUOUSLY_HOLDS)

    @property
    def bounded(self) -> bool:
        return self in (Verdict.HOLDS_UP_TO_BOUNDS, Verdict.BOUNDED_FAILURE)


@dataclass(frozen=True)
class Bounds:
    radius: int = 12
    cyl_len: int = 3
    cap: int = 12

    def __post_init__(self):
        if min(self.radius, self.cyl_len, self.cap) < 1:
            raise ValueError("bounds must be positive")

    def as_dict(self) -> dict:
        return {"radius": self.radius, "cyl_len": self.cyl_len, "cap": self.cap}


@dataclass
class PropertyReport:
    property: str
    verdict: Verdict
    witnesses: list = field(default_factory=list)
    counterexample: Optional[dict] = None
    bounds: Optional[dict] = None
    delta: Optional[Fraction] = None
    excluded: Optional[list] = None
    notes: str = ""
    details: dict = field(default_factory=dict)
    attached: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.verdict.positive and self.counterexample is None:
            raise ValueError(f"{self.property}: a failing verdict needs a counterexample")

    @property
    def holds(self) -> bool:
        return self.verdict.positive


def format_element(group: GroupSpec, g) -> list:
    if group.kind is GroupKind.FREE_ABELIAN:
        return list(g)
    return [[gen, exp] for gen, exp in g]


def exponent_ball(radius: int) -> list[int]:
    """``0, 1, -1, 2, -2, ...`` up to ``radius``."""
    out = [0]
    for k in range(1, radius + 1):
        out += [k, -k]
    return out


def _require(mask: int, name: str) -> None:
    if mask == 0:
        raise EmptySetError(f"{name} must be non-empty")


# --- return sets ---------------------------------------------------------------


@dataclass(frozen=True)
class NSet:
    """Group elements sending ``U`` to meet ``V``.

    ``image_elements`` (finite systems) is exact: the set is the union of the
    fibers over these image elements.  ``elements`` lists members of word
    length at most ``radius`` in canonical order.
    """

    image_elements: tuple[int, ...]
    elements: tuple
    exact: bool
    radius: int


def _as_pattern(u) -> Pattern:
    if isinstance(u, Cylinder):
        return u.pattern
    if isinstance(u, Pattern):
        return u
    return Pattern.of(tuple(u))


def n_set(system, u, v, radius: int = 12) -> NSet:
    if isinstance(system, Sft):
        pu, pv = _as_pattern(u), _as_pattern(v)
        for name, p in (("U", pu), ("V", pv)):
            if not pattern_nonempty(system, p):
                raise EmptySetError(f"{name} must be non-empty")
        hits = tuple(
            m for m in exponent_ball(radius)
            if pattern_nonempty(system, pu.translate(-m).merge(pv))
        )
        return NSet((), hits, False, radius)
    mu, mv = as_mask(u), as_mask(v)
    _require(mu, "U")
    _require(mv, "V")
    image = system.image
    idx = tuple(i for i, p in enumerate(image.elements) if act_mask(p, mu) & mv)
    group = system.group
    if group.kind is GroupKind.FREE_ABELIAN:
        wanted = set(idx)
        elements = tuple(g for g in word_ball(group, radius) if image.image_index(g) in wanted)
    else:
        elements = tuple(
            image.representatives[i] for i in idx
            if group.word_length(image.representatives[i]) <= radius
        )
    return NSet(idx, elements, True, radius)


# --- exact checkers for finite systems --------------------------------------------


def _transitive_exact(system: ActionSystem) -> PropertyReport:
    n = system.point_count
    image = system.image
    orb = orbit(system, 0)
    if len(orb) < n:
        y = min(set(range(n)) - orb)
        return PropertyReport(
            "transitive",
            Verdict.FAILS,
            counterexample={"U": [0], "V": [y], "reason": "points in different orbits"},
            notes="single-orbit criterion",
        )
    witnesses = []
    if n <= WITNESS_LIMIT:
        for x in range(n):
            first: dict[int, int] = {}
            for i, p in enumerate(image.elements):
                first.setdefault(p[x], i)
            for y in range(n):
                g = image.representatives[first[y]]
                witnesses.append({"U": [x], "V": [y], "element": format_element(system.group, g)})
    return PropertyReport(
        "transitive",
        Verdict.HOLDS,
        witnesses=witnesses,
        notes="single-orbit criterion" + ("" if n <= WITNESS_LIMIT else "; witnesses omitted"),
    )


def _weakly_mixing_exact(system: ActionSystem) -> PropertyReport:
    if system.point_count == 1:
        ident = format_element(system.group, system.group.identity())
        return PropertyReport(
            "weakly-mixing",
            Verdict.HOLDS,
            witnesses=[{"U1": [0], "U2": [0], "V1": [0], "V2": [0], "element": ident}],
            notes="one-point space",
        )
    return PropertyReport(
        "weakly-mixing",
        Verdict.FAILS,
        counterexample={
            "U1": [0], "U2": [0], "V1": [0], "V2": [1],
            "reason": "singleton obstruction: g(0) = 0 and g(0) = 1 cannot both hold",
        },
    )


def _mixing_exact(system: ActionSystem) -> PropertyReport:
    group = system.group
    image = system.image
    if not group.is_infinite:
        return PropertyReport(
            "mixing",
            Verdict.VACUOUSLY_HOLDS,
            excluded=[format_element(group, g) for g in image.representatives],
            notes="finite group: the excluded set may be the whole group",
        )
    n = system.point_count
    for i, p in enumerate(image.elements):
        for x in range(n):
            for y in range(n):
                if p[x] != y:
                    return PropertyReport(
                        "mixing",
                        Verdict.FAILS,
                        counterexample={
                            "element": format_element(group, image.representatives[i]),
                            "U": [x],
                            "V": [y],
                            "reason": "every fiber over this image element is infinite",
                        },
                    )
    return PropertyReport("mixing", Verdict.HOLDS, excluded=[], notes="one-point space")


def _dense_periodic_exact(system: ActionSystem) -> PropertyReport:
    image = system.image
    n = system.point_count
    sizes = [len({p[x] for p in image.elements}) for x in range(n)]
    return PropertyReport(
        "dense-periodic",
        Verdict.HOLDS,
        witnesses=[{"point": x, "orbit_size": s} for x, s in enumerate(sizes)],
        notes="every orbit of a finite space is finite",
    )


def _sdic_exact(system: ActionSystem, delta_grid) -> PropertyReport:
    return PropertyReport(
        "sdic",
        Verdict.FAILS,
        counterexample={
            "x": 0,
            "U": [0],
            "reason": "isolated point: U = {x} forces y = x, so d(gx, gy) = 0 for every g",
        },
        details={"delta_grid": [str(d) for d in delta_grid or ()]},
    )


# --- bounded checkers for subshifts ---------------------------------------------


class _ShiftSearch:
    def __init__(self, sft: Sft, bounds: Bounds):
        self.sft = sft
        self.bounds = bounds
        self.cylinders = cylinders_up_to(sft, bounds.cyl_len)
        self.patterns = [c.pattern for c in self.cylinders]
        self.words = [sft.format_word(c.word) for c in self.cylinders]
        self.ball = exponent_ball(bounds.radius)
        self._bits: dict = {}

    def bits(self, i: int, j: int) -> int:
        """Bit ``t`` set iff the shift by ``ball[t]`` sends cylinder i to meet cylinder j."""
        key = (i, j)
        if key not in self._bits:
            u, v = self.patterns[i], self.patterns[j]
            out = 0
            for t, m in enumerate(self.ball):
                if pattern_nonempty(self.sft, u.translate(-m).merge(v)):
                    out |= 1 << t
            self._bits[key] = out
        return self._bits[key]

    def first(self, bits: int) -> int:
        return self.ball[(bits & -bits).bit_length() - 1]

    def oracle(self) -> dict:
        prim, val = is_primitive(self.sft)
        return {
            "irreducible": is_irreducible(self.sft),
            "primitive": prim,
            "exponent" if prim else "period": val,
        }


def mixing_tail_start(sft: Sft, bounds: Bounds) -> int:
    """Exponents beyond this must all connect for a bounded mixing certificate.

    For a primitive matrix every pair of anchored cylinders of length at most
    ``L`` connects once ``|m| > L + (k-1)^2`` (Wielandt bound).
    """
    return bounds.cyl_len + (sft.alphabet_size - 1) ** 2


def _bounded_transitive(sft: Sft, bounds: Bounds) -> PropertyReport:
    s = _ShiftSearch(sft, bounds)
    witnesses = []
    for i in range(len(s.patterns)):
        for j in range(len(s.patterns)):
            b = s.bits(i, j)
            if not b:
                return PropertyReport(
                    "transitive",
                    Verdict.BOUNDED_FAILURE,
                    counterexample={"U": s.words[i], "V": s.words[j], "reason": "no exponent within radius"},
                    bounds=bounds.as_dict(),
                    details={"oracle": s.oracle()},
                )
            witnesses.append([s.words[i], s.words[j], s.first(b)])
    return PropertyReport(
        "transitive", Verdict.HOLDS_UP_TO_BOUNDS, witnesses=witnesses,
        bounds=bounds.as_dict(), details={"oracle": s.oracle()},
    )


def _bounded_weakly_mixing(sft: Sft, bounds: Bounds) -> PropertyReport:
    s = _ShiftSearch(sft, bounds)
    c = len(s.patterns)
    witnesses = []
    for u1 in range(c):
        for u2 in range(c):
            for v1 in range(c):
                b1 = s.bits(u1, v1)
                for v2 in range(c):
                    b = b1 & s.bits(u2, v2)
                    names = [s.words[u1], s.words[u2], s.words[v1], s.words[v2]]
                    if not b:
                        return PropertyReport(
                            "weakly-mixing",
                            Verdict.BOUNDED_FAILURE,
                            counterexample={
                                "U1": names[0], "U2": names[1], "V1": names[2], "V2": names[3],
                                "reason": "no common exponent within radius",
                            },
                            bounds=bounds.as_dict(),
                            details={"oracle": s.oracle()},
                        )
                    witnesses.append(names + [s.first(b)])
    return PropertyReport(
        "weakly-mixing", Verdict.HOLDS_UP_TO_BOUNDS, witnesses=witnesses,
        bounds=bounds.as_dict(), details={"oracle": s.oracle()},
    )


def _bounded_mixing(sft: Sft, bounds: Bounds) -> PropertyReport:
    tail = mixing_tail_start(sft, bounds)
    if bounds.radius <= tail:
        raise ValueError(f"radius must exceed {tail} for a bounded mixing certificate")
    s = _ShiftSearch(sft, bounds)
    witnesses = []
    excluded: set[int] = set()
    for i in range(len(s.patterns)):
        for j in range(len(s.patterns)):
            b = s.bits(i, j)
            fails = [m for t, m in enumerate(s.ball) if not b >> t & 1]
            late = [m for m in fails if abs(m) > tail]
            if late:
                return PropertyReport(
                    "mixing",
                    Verdict.BOUNDED_FAILURE,
                    counterexample={
                        "U": s.words[i], "V": s.words[j], "exponent": late[0],
                        "reason": f"exponent beyond {tail} fails to connect",
                    },
                    bounds=bounds.as_dict(),
                    details={"oracle": s.oracle(), "tail_start": tail},
                )
            excluded.update(fails)
            witnesses.append({"U": s.words[i], "V": s.words[j], "excluded": fails})
    return PropertyReport(
        "mixing", Verdict.HOLDS_UP_TO_BOUNDS, witnesses=witnesses,
        bounds=bounds.as_dict(), excluded=sorted(excluded, key=lambda m: (abs(m), m < 0)),
        details={"oracle": s.oracle(), "tail_start": tail},
    )


def _bounded_dense_periodic(sft: Sft, bounds: Bounds) -> PropertyReport:
    witnesses = []
    for cyl in cylinders_up_to(sft, bounds.cyl_len):
        x = periodic_point_in(sft, cyl.pattern)
        word = sft.format_word(cyl.word)
        if x is None:
            return PropertyReport(
                "dense-periodic",
                Verdict.BOUNDED_FAILURE,
                counterexample={"U": word, "reason": "no cycle closes through this word"},
                bounds=bounds.as_dict(),
            )
        witnesses.append({"U": word, "periodic_point": sft.format_word(x.block), "period": x.period})
    return PropertyReport(
        "dense-periodic", Verdict.HOLDS_UP_TO_BOUNDS, witnesses=witnesses, bounds=bounds.as_dict()
    )


def _branch(sft: Sft, start: int, budget: int, backwards: bool):
    """First place a path from ``start`` can split into two, within ``budget`` steps."""
    m = sft.matrix
    k = sft.alphabet_size
    if backwards:
        m = tuple(tuple(m[b][a] for b in range(k)) for a in range(k))
        sft = Sft(m, sft.labels)
    for j in range(budget):
        for node in range(k):
            if not sft.reach(j)[start, node]:
                continue
            nxt = sft.successors(node)
            if len(nxt) >= 2:
                prefix = path_between(sft, start, node, j)
                return j, prefix + [nxt[0]], prefix + [nxt[1]]
    return None


def _bounded_sdic(sft: Sft, bounds: Bounds, delta_grid) -> PropertyReport:
    if not delta_grid:
        raise ValueError("delta grid must not be empty in subshift mode")
    grid = [Fraction(d) for d in delta_grid]
    usable = [d for d in grid if 0 < d <= 1]
    witnesses = []
    for cyl in cylinders_up_to(sft, bounds.cyl_len):
        w = cyl.word
        word = sft.format_word(w)
        right = _branch(sft, w[-1], bounds.radius - len(w) + 1, backwards=False)
        if right is not None:
            j, e1, e2 = right
            witnesses.append({
                "U": word, "side": "right", "coordinate": len(w) + j,
                "tails": [sft.format_word(e1[1:]), sft.format_word(e2[1:])],
            })
            continue
        left = _branch(sft, w[0], bounds.radius, backwards=True)
        if left is not None:
            j, e1, e2 = left
            witnesses.append({
                "U": word, "side": "left", "coordinate": -(j + 1),
                "tails": [sft.format_word(e1[:0:-1]), sft.format_word(e2[:0:-1])],
            })
            continue
        return PropertyReport(
            "sdic",
            Verdict.BOUNDED_FAILURE,
            counterexample={"U": word, "reason": "the cylinder admits a single sequence within radius"},
            bounds=bounds.as_dict(),
            details={"delta_grid": [str(d) for d in grid]},
        )
    if not usable:
        return PropertyReport(
            "sdic",
            Verdict.BOUNDED_FAILURE,
            counterexample={"delta_grid": [str(d) for d in grid], "reason": "shift distances never exceed 1"},
            bounds=bounds.as_dict(),
        )
    return PropertyReport(
        "sdic", Verdict.HOLDS_UP_TO_BOUNDS, witnesses=witnesses, bounds=bounds.as_dict(),
        delta=max(usable), details={"delta_grid": [str(d) for d in grid]},
    )


# --- public checkers -----------------------------------------------------------------


def is_transitive(system, bounds: Optional[Bounds] = None) -> PropertyReport:
    if isinstance(system, Sft):
        return _bounded_transitive(system, bounds or Bounds())
    return _transitive_exact(system)


def is_weakly_mixing(system, bounds: Optional[Bounds] = None) -> PropertyReport:
    if isinstance(system, Sft):
        return _bounded_weakly_mixing(system, bounds or Bounds())
    return _weakly_mixing_exact(system)


def is_mixing(system, bounds: Optional[Bounds] = None) -> PropertyReport:
    if isinstance(system, Sft):
        return _bounded_mixing(system, bounds or Bounds())
    return _mixing_exact(system)


def has_dense_periodic_points(system, bounds: Optional[Bounds] = None) -> PropertyReport:
    if isinstance(system, Sft):
        return _bounded_dense_periodic(system, bounds or Bounds())
    return _dense_periodic_exact(system)


def is_sdic(system, delta_grid: Sequence = (1,), bounds: Optional[Bounds] = None) -> PropertyReport:
    if isinstance(system, Sft):
        return _bounded_sdic(system, bounds or Bounds(), delta_grid)
    return _sdic_exact(system, delta_grid)


def is_devaney_chaotic(system, bounds: Optional[Bounds] = None) -> PropertyReport:
    """Transitivity plus dense periodic points; the SDIC report rides along unused."""
    trans = is_transitive(system, bounds)
    dense = has_dense_periodic_points(system, bounds)
    sdic = is_sdic(system, bounds=bounds)
    attached = {"transitive": trans, "dense-periodic": dense, "sdic": sdic}
    bounded = isinstance(system, Sft)
    if trans.holds and dense.holds:
        verdict = Verdict.HOLDS_UP_TO_BOUNDS if bounded else Verdict.HOLDS
        return PropertyReport(
            "devaney", verdict, bounds=trans.bounds, attached=attached,
        )
    failing = trans if not trans.holds else dense
    return PropertyReport(
        "devaney",
        Verdict.BOUNDED_FAILURE if bounded else Verdict.FAILS,
        counterexample={"component": failing.property, **failing.counterexample},
        bounds=trans.bounds,
        attached=attached,
    )


PROPERTIES = {
    "transitive": is_transitive,
    "weakly-mixing": is_weakly_mixing,
    "mixing": is_mixing,
    "dense-periodic": has_dense_periodic_points,
    "sdic": lambda system, bounds=None: is_sdic(system, bounds=bounds),
    "devaney": is_devaney_chaotic,
}


def check(system, prop: str, bounds: Optional[Bounds] = None) -> PropertyReport:
    if prop not in PROPERTIES:
        raise KeyError(f"unknown property {prop!r}; choose from {sorted(PROPERTIES)}")
    return PROPERTIES[prop](system, bounds=bounds)


# --- the simultaneous witness construction ------------------------------------------


class _FiniteOps:
    bounded = False

    def __init__(self, system: ActionSystem):
        self.system = system
        self.image = system.image

    def candidates(self):
        return range(self.image.order)

    def apply(self, g, u):
        return act_mask(self.image.elements[g], u)

    def preimage(self, g, u):
        return act_mask(self.image.elements[self.image.inverse_index[g]], u)

    def meet(self, u, v):
        return u & v

    def nonempty(self, u) -> bool:
        return u != 0

    def label(self, g):
        return format_element(self.system.group, self.image.representatives[g])

    def describe(self, u):
        return list(members(u))

    def coerce(self, u):
        return as_mask(u)


class _ShiftOps:
    bounded = True

    def __init__(self, sft: Sft, radius: int):
        self.sft = sft
        self.ball = exponent_ball(radius)

    def candidates(self):
        return self.ball

    def apply(self, m, p):
        return p.translate(-m)

    def preimage(self, m, p):
        return p.translate(m)

    def meet(self, p, q):
        if p is None or q is None:
            return None
        return p.merge(q)

    def nonempty(self, p) -> bool:
        return pattern_nonempty(self.sft, p)

    def connects(self, m, u, v) -> bool:
        return _pattern_connects(self.sft, m, u, v)

    def label(self, m):
        return m

    def describe(self, p):
        return p.describe(self.sft) if p is not None else None

    def coerce(self, u):
        return _as_pattern(u)


def _ops(system, radius):
    return _ShiftOps(system, radius) if isinstance(system, Sft) else _FiniteOps(system)


@lru_cache(maxsize=1 << 18)
def _pattern_connects(sft: Sft, m: int, u: Pattern, v: Pattern) -> bool:
    return pattern_nonempty(sft, u.translate(-m).merge(v))


def connects(ops, g, u, v) -> bool:
    if isinstance(ops, _ShiftOps):
        return ops.connects(g, u, v)
    return ops.nonempty(ops.meet(ops.apply(g, u), v))


@dataclass
class ChainStep:
    index: int
    pivot: object
    e: object
    f: object


@dataclass
class WitnessChain:
    """Intermediate open pairs and pivots built while merging return sets."""

    us: list
    vs: list
    steps: list[ChainStep]
    found: bool
    final: object = None
    final_label: object = None
    blocking: Optional[dict] = None
    containment_checks: int = 0
    containment_ok: bool = True
    bounded: bool = False
    informational: bool = False

    def to_dict(self) -> dict:
        return {
            "found": self.found,
            "final": self.final_label,
            "steps": [
                {"index": s.index, "pivot": s.pivot, "E": s.e, "F": s.f} for s in self.steps
            ],
            "blocking": self.blocking,
            "containment_checks": self.containment_checks,
            "containment_ok": self.containment_ok,
            "bounded": self.bounded,
            "informational": self.informational,
        }


def simultaneous_weak_mixing_witness(
    system, us: Sequence, vs: Sequence, radius: int = 12, allow_nonabelian: bool = False
) -> WitnessChain:
    """One group element sending every ``us[i]`` to meet ``vs[i]``.

    The pairs are merged one at a time: with ``E, F`` the current pair and a
    pivot ``g`` sending ``E`` to meet the next ``U`` and ``F`` to meet the next
    ``V``, the new pair is ``E & g^-1 U``, ``F & g^-1 V``.  Any element of the
    final pair's return set works for all pairs (this uses commutativity).
    """
    if len(us) != len(vs) or not us:
        raise ValueError("need equally many U and V sets, at least one")
    informational = False
    if not isinstance(system, Sft) and not system.group.abelian:
        if not allow_nonabelian:
            raise NonAbelianError("the construction assumes an abelian group")
        informational = True
    ops = _ops(system, radius)
    us = [ops.coerce(u) for u in us]
    vs = [ops.coerce(v) for v in vs]
    for i, (u, v) in enumerate(zip(us, vs)):
        if not ops.nonempty(u) or not ops.nonempty(v):
            raise EmptySetError(f"open pair {i} has an empty member")
    chain = WitnessChain(
        [ops.describe(u) for u in us], [ops.describe(v) for v in vs], [], False,
        bounded=ops.bounded, informational=informational,
    )
    e, f = us[0], vs[0]
    for k in range(1, len(us)):
        pivot = next(
            (g for g in ops.candidates() if connects(ops, g, e, us[k]) and connects(ops, g, f, vs[k])),
            None,
        )
        if pivot is None:
            chain.blocking = {
                "step": k,
                "pairs": [[ops.describe(e), ops.describe(us[k])], [ops.describe(f), ops.describe(vs[k])]],
                "reason": "no element connects both pairs" + (" within radius" if ops.bounded else ""),
            }
            return chain
        e = ops.meet(e, ops.preimage(pivot, us[k]))
        f = ops.meet(f, ops.preimage(pivot, vs[k]))
        assert ops.nonempty(e) and ops.nonempty(f), "intermediate pair must be non-empty"
        chain.steps.append(ChainStep(k, ops.label(pivot), ops.describe(e), ops.describe(f)))
        _check_containment(ops, chain, e, f, us[: k + 1], vs[: k + 1])
    final = next((g for g in ops.candidates() if connects(ops, g, e, f)), None)
    if final is None:
        chain.blocking = {
            "step": len(us),
            "pairs": [[ops.describe(e), ops.describe(f)]],
            "reason": "final return set is empty" + (" within radius" if ops.bounded else ""),
        }
        return chain
    if all(connects(ops, final, u, v) for u, v in zip(us, vs)):
        chain.found = True
    else:
        chain.containment_ok = False
        chain.blocking = {"step": len(us), "reason": "final element misses a pair"}
    chain.final = final
    chain.final_label = ops.label(final)
    return chain


def _check_containment(ops, chain: WitnessChain, e, f, us, vs) -> None:
    for g in ops.candidates():
        if connects(ops, g, e, f):
            chain.containment_checks += 1
            if not all(connects(ops, g, u, v) for u, v in zip(us, vs)):
                chain.containment_ok = False


# --- product constructions and the product-group diagnostic -----------------------------


def _square_space(space: FiniteMetricSpace) -> FiniteMetricSpace:
    n = space.point_count
    return FiniteMetricSpace.from_rows(
        [
            [max(space.dist(i // n, j // n), space.dist(i % n, j % n)) for j in range(n * n)]
            for i in range(n * n)
        ]
    )


def diagonal_system(system: ActionSystem) -> ActionSystem:
    """X x X with each generator acting on both coordinates at once."""
    n = system.point_count
    gens = tuple(tuple(g[i // n] * n + g[i % n] for i in range(n * n)) for g in system.group.generators)
    group = GroupSpec(system.group.kind, gens, system.group.abelian)
    return ActionSystem(_square_space(system.space), group, f"diagonal({system.label})")


def product_group_system(system: ActionSystem) -> ActionSystem:
    """X x X with the product group acting coordinatewise and independently."""
    n = system.point_count
    first = [tuple(g[i // n] * n + i % n for i in range(n * n)) for g in system.group.generators]
    second = [tuple((i // n) * n + g[i % n] for i in range(n * n)) for g in system.group.generators]
    group = GroupSpec(system.group.kind, tuple(first + second), system.group.abelian)
    return ActionSystem(_square_space(system.space), group, f"product_group({system.label})")


def product_group_diagnostic(system: ActionSystem) -> PropertyReport:
    """Compare weak mixing with transitivity of the independent product action.

    Informational only; weak mixing itself is always decided by the
    single-element definition.
    """
    wm = is_weakly_mixing(system)
    prod = is_transitive(product_group_system(system))
    agree = wm.holds == prod.holds
    return PropertyReport(
        "product-group-diagnostic",
        Verdict.HOLDS if agree else Verdict.FAILS,
        counterexample=None if agree else {
            "weakly-mixing": wm.verdict.value,
            "product-group-transitive": prod.verdict.value,
            "reason": "independent coordinates connect pairs that no single element does",
        },
        details={"weakly-mixing": wm.verdict.value, "product-group-transitive": prod.verdict.value},
    )

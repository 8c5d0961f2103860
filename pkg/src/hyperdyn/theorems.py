"""Replaying the base-versus-hyperspace results on concrete systems.

Each result is checked two ways: as an implication or equivalence between
verdicts computed on the base system and on its hyperspace, and, where the
argument is constructive, by building the witnesses the argument produces
(simultaneous return elements, Vietoris opens ``<U_i & g^-1 V_i>``, finite
sets of periodic points) and rechecking them independently.

Finite systems use the materialized hyperspace.  For subshifts the
hyperspace is uncountable; induced-level verdicts there are certificates
built only from those explicit witnesses over a fixed family of Vietoris
basics made of cylinders.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from itertools import combinations, combinations_with_replacement, product
from math import lcm, prod
from typing import Optional, Sequence

from .checkers import (
    Bounds,
    PropertyReport,
    Verdict,
    _ops,
    check,
    connects,
    exponent_ball,
    format_element,
    mixing_tail_start,
    simultaneous_weak_mixing_witness,
)
from .errors import HyperspaceSizeError, NonAbelianError, WitnessError
from .groups import ActionSystem, act_mask
from .hyperspace import (
    HyperspaceSystem,
    VietorisBasic,
    build_hyperspace_system,
    in_extension,
    pad_by_repetition,
    submasks,
    vietoris_contains,
)
from .metric import members
from .shifts import (
    WHOLE_SPACE,
    Pattern,
    PeriodicPoint,
    Sft,
    cylinders_up_to,
    orbit_of_points,
    pattern_nonempty,
    periodic_point_in,
)

THEOREMS = ("P32", "P33", "T34", "P35", "T36", "C37a", "C37b", "T38", "T39", "T310")
ABELIAN_ONLY = frozenset({"P35", "T36", "T38", "T310"})
EXHAUSTIVE_CAP = 10


class CaseVerdict(str, enum.Enum):
    CONFIRMED = "confirmed"
    VACUOUS = "confirmed-vacuously"
    REFUTED = "refuted"


@dataclass
class TheoremCase:
    theorem: str
    system: str
    bounds: Optional[dict]
    verdict: CaseVerdict
    sides: dict = field(default_factory=dict)
    directions: dict = field(default_factory=dict)
    witnesses: dict = field(default_factory=dict)
    notes: str = ""

    @property
    def substantive(self) -> bool:
        return self.verdict is CaseVerdict.CONFIRMED


def implication(antecedent: Verdict, consequent: Verdict) -> CaseVerdict:
    if antecedent is Verdict.VACUOUSLY_HOLDS or not antecedent.positive:
        return CaseVerdict.REFUTED if antecedent.positive and not consequent.positive else CaseVerdict.VACUOUS
    return CaseVerdict.CONFIRMED if consequent.positive else CaseVerdict.REFUTED


def equivalence(a: Verdict, b: Verdict) -> tuple[CaseVerdict, dict]:
    forward, backward = implication(a, b), implication(b, a)
    directions = {"forward": forward.value, "backward": backward.value}
    if CaseVerdict.REFUTED in (forward, backward):
        return CaseVerdict.REFUTED, directions
    if CaseVerdict.CONFIRMED in (forward, backward):
        return CaseVerdict.CONFIRMED, directions
    return CaseVerdict.VACUOUS, directions


def _all_of(verdicts: Sequence[Verdict]) -> Verdict:
    if all(v.positive for v in verdicts):
        if any(v.bounded for v in verdicts):
            return Verdict.HOLDS_UP_TO_BOUNDS
        return Verdict.HOLDS
    bounded = any(v.bounded for v in verdicts)
    return Verdict.BOUNDED_FAILURE if bounded else Verdict.FAILS


# --- proof witnesses --------------------------------------------------------------


@dataclass
class VietorisWitness:
    """``G = <U_i & g^-1 V_i>`` with a member ``A`` and the two membership claims."""

    g: VietorisBasic
    a: object
    image_of_a: object
    claims: dict

    @property
    def ok(self) -> bool:
        return all(self.claims.values())

    def to_dict(self, describe) -> dict:
        return {
            "G": [describe(u) for u in self.g.opens],
            "A": self.a,
            "gamma_A": self.image_of_a,
            "claims": self.claims,
        }


def _pattern_member(p: Pattern, x: PeriodicPoint) -> bool:
    return p.contains(x)


def _fmt_points(sft: Sft, points) -> list[str]:
    return sorted(sft.format_word(x.block) for x in points)


def construct_vietoris_proof_witness(system, gamma, us: Sequence, vs: Sequence) -> VietorisWitness:
    """Build ``G`` from ``gamma`` and certify ``A in <us>`` and ``gamma(A) in <vs>``.

    ``gamma`` is a shift exponent on subshifts; on finite systems either a
    group element (exponent vector or word) or an index into the image group.
    """
    if len(us) != len(vs) or not us:
        raise ValueError("need equally many U and V sets, at least one")
    if isinstance(system, Sft):
        return _vietoris_witness_shift(system, int(gamma), us, vs)
    image = system.image
    g = gamma if isinstance(gamma, int) else image.image_index(tuple(gamma))
    perm = image.elements[g]
    inverse = image.elements[image.inverse_index[g]]
    opens = []
    for i, (u, v) in enumerate(zip(us, vs)):
        gi = int(u) & act_mask(inverse, int(v))
        if not gi:
            raise WitnessError(i, "gamma(U_i) does not meet V_i")
        opens.append(gi)
    a = 0
    for gi in opens:
        a |= gi & -gi
    ga = act_mask(perm, a)
    claims = {
        "A_in_G": vietoris_contains(VietorisBasic(tuple(opens)), a),
        "A_in_U": vietoris_contains(VietorisBasic(tuple(us)), a),
        "gamma_A_in_V": vietoris_contains(VietorisBasic(tuple(vs)), ga),
    }
    return VietorisWitness(VietorisBasic(tuple(opens)), list(members(a)), list(members(ga)), claims)


def _vietoris_witness_shift(sft: Sft, m: int, us, vs) -> VietorisWitness:
    opens = []
    points = []
    for i, (u, v) in enumerate(zip(us, vs)):
        gi = u.merge(v.translate(m))
        if not pattern_nonempty(sft, gi):
            raise WitnessError(i, "the shifted U_i does not meet V_i")
        x = periodic_point_in(sft, gi)
        if x is None:
            raise WitnessError(i, "no periodic point in U_i & shift^-m V_i")
        opens.append(gi)
        points.append(x)
    a = frozenset(points)
    ga = frozenset(x.shift(m) for x in a)
    claims = {
        "A_in_G": vietoris_contains(VietorisBasic(tuple(opens)), a, _pattern_member),
        "A_in_U": vietoris_contains(VietorisBasic(tuple(us)), a, _pattern_member),
        "gamma_A_in_V": vietoris_contains(VietorisBasic(tuple(vs)), ga, _pattern_member),
    }
    return VietorisWitness(VietorisBasic(tuple(opens)), _fmt_points(sft, a), _fmt_points(sft, ga), claims)


@dataclass
class PeriodicWitness:
    """A finite set meeting every open of a basic, with its orbit bounds."""

    a: object
    orbit_size: int
    stabilizer_index: int
    index_product: int
    group_order: Optional[int]
    claims: dict

    @property
    def ok(self) -> bool:
        return all(self.claims.values())

    def to_dict(self) -> dict:
        return {
            "A": self.a,
            "orbit_size": self.orbit_size,
            "stabilizer_index": self.stabilizer_index,
            "index_product": self.index_product,
            "group_order": self.group_order,
            "claims": self.claims,
        }


def construct_periodic_witness(system, basic: VietorisBasic) -> PeriodicWitness:
    """Pick a periodic point in each open and bound the orbit of their set.

    Reports the orbit size of ``A`` under the induced action, the index of
    the common stabilizer ``H`` of the chosen points, and the product of the
    individual stabilizer indices.
    """
    if isinstance(system, Sft):
        return _periodic_witness_shift(system, basic)
    image = system.image
    picks = []
    for i, u in enumerate(basic.opens):
        if not u:
            raise WitnessError(i, "open set is empty")
        picks.append(min(members(u)))
    a = 0
    for x in picks:
        a |= 1 << x
    orbit_size = len({act_mask(p, a) for p in image.elements})
    common = sum(1 for p in image.elements if all(p[x] == x for x in picks))
    index = image.order // common
    index_product = prod(image.order // sum(1 for p in image.elements if p[x] == x) for x in picks)
    claims = {
        "A_in_basic": vietoris_contains(basic, a),
        "orbit_le_index": orbit_size <= index,
        "index_le_product": index <= index_product,
        "orbit_divides_order": image.order % orbit_size == 0,
    }
    return PeriodicWitness(list(members(a)), orbit_size, index, index_product, image.order, claims)


def _periodic_witness_shift(sft: Sft, basic: VietorisBasic) -> PeriodicWitness:
    points = []
    for i, u in enumerate(basic.opens):
        x = periodic_point_in(sft, u)
        if x is None:
            raise WitnessError(i, "no periodic point in this open set")
        points.append(x)
    a = frozenset(points)
    index = lcm(*(x.period for x in points))
    orbit_size = orbit_of_points(a, index)
    claims = {
        "A_in_basic": vietoris_contains(basic, a, _pattern_member),
        "orbit_le_index": orbit_size <= index,
        "index_le_product": index <= prod(x.period for x in points),
        "orbit_divides_index": index % orbit_size == 0,
    }
    return PeriodicWitness(
        _fmt_points(sft, a), orbit_size, index, prod(x.period for x in points), None, claims
    )


def _repeat_last(basic: VietorisBasic, k: int) -> tuple:
    """The opens of ``basic`` padded to length ``k`` without changing its members."""
    return tuple(basic.opens) + (basic.opens[-1],) * (k - len(basic))


# --- contexts: where base and induced verdicts come from ------------------------------


class _FiniteContext:
    bounded = False

    def __init__(self, system: ActionSystem, bounds: Bounds, hyper: Optional[HyperspaceSystem] = None):
        self.system = system
        self.bounds = bounds
        self._hyper = hyper
        self._base: dict[str, PropertyReport] = {}
        self._induced: dict[str, PropertyReport] = {}

    @property
    def hyper(self) -> HyperspaceSystem:
        if self._hyper is None:
            self._hyper = build_hyperspace_system(self.system, self.bounds.cap)
        return self._hyper

    def base(self, prop: str) -> PropertyReport:
        if prop not in self._base:
            self._base[prop] = check(self.system, prop)
        return self._base[prop]

    def induced(self, prop: str) -> PropertyReport:
        if prop not in self._induced:
            self._induced[prop] = check(self.hyper.system, prop)
        return self._induced[prop]

    def basics(self) -> list[VietorisBasic]:
        n = self.system.point_count
        singles = [1 << x for x in range(n)]
        out = [VietorisBasic((s,)) for s in singles]
        out.append(VietorisBasic(((1 << n) - 1,)))
        out.append(VietorisBasic(tuple(singles)))
        out += [VietorisBasic((a, b)) for a, b in combinations(singles, 2)]
        return out

    def describe(self, u) -> list[int]:
        return list(members(u))

    @property
    def full(self) -> int:
        return (1 << self.system.point_count) - 1


class _ShiftContext:
    """Bounded verdicts for a subshift and certificate-based hyperspace verdicts."""

    bounded = True

    def __init__(self, sft: Sft, bounds: Bounds, max_opens: int = 2, multi_len: int = 1):
        self.system = sft
        self.bounds = bounds
        self.max_opens = max_opens
        self.multi_len = multi_len
        self._base: dict[str, PropertyReport] = {}
        self._induced: dict[str, PropertyReport] = {}
        self._chains: dict = {}
        self.full = WHOLE_SPACE

    def base(self, prop: str) -> PropertyReport:
        if prop not in self._base:
            self._base[prop] = check(self.system, prop, self.bounds)
        return self._base[prop]

    def basics(self) -> list[VietorisBasic]:
        """Single-cylinder basics up to the cylinder length, then multi-open ones.

        Multi-open basics use distinct cylinders of length at most
        ``multi_len`` and at most ``max_opens`` opens.
        """
        sft = self.system
        out = [VietorisBasic((c.pattern,)) for c in cylinders_up_to(sft, self.bounds.cyl_len)]
        short = [c.pattern for c in cylinders_up_to(sft, self.multi_len)]
        for r in range(2, self.max_opens + 1):
            out += [VietorisBasic(tuple(combo)) for combo in combinations(short, r)]
        return out

    def describe(self, p) -> str:
        return p.describe(self.system)

    def family_bounds(self) -> dict:
        return {
            **self.bounds.as_dict(),
            "basics": len(self.basics()),
            "max_opens": self.max_opens,
            "multi_len": self.multi_len,
        }

    def induced(self, prop: str) -> PropertyReport:
        if prop not in self._induced:
            self._induced[prop] = getattr(self, "_induced_" + prop.replace("-", "_"))()
        return self._induced[prop]

    def _fail(self, prop, counterexample) -> PropertyReport:
        return PropertyReport(prop, Verdict.BOUNDED_FAILURE, counterexample=counterexample,
                              bounds=self.family_bounds())

    def _common_element(self, us, vs):
        key = (tuple(us), tuple(vs))
        if key not in self._chains:
            self._chains[key] = simultaneous_weak_mixing_witness(
                self.system, us, vs, self.bounds.radius
            )
        return self._chains[key]

    def _induced_transitive(self) -> PropertyReport:
        witnesses = []
        for bu, bv in product(self.basics(), repeat=2):
            pu, pv = pad_by_repetition(bu, bv)
            chain = self._common_element(pu.opens, pv.opens)
            label = [[self.describe(u) for u in bu.opens], [self.describe(v) for v in bv.opens]]
            if not chain.found:
                return self._fail("transitive", {"U": label[0], "V": label[1], "blocking": chain.blocking})
            w = construct_vietoris_proof_witness(self.system, chain.final, pu.opens, pv.opens)
            if not w.ok:
                return self._fail("transitive", {"U": label[0], "V": label[1], "claims": w.claims})
            witnesses.append({"U": label[0], "V": label[1], "element": chain.final, "A": w.a})
        return PropertyReport("transitive", Verdict.HOLDS_UP_TO_BOUNDS, witnesses=witnesses,
                              bounds=self.family_bounds(), notes="Vietoris witnesses over cylinder basics")

    def _induced_weakly_mixing(self) -> PropertyReport:
        basics = self.basics()
        witnesses = []
        # swapping the two pairs gives the same condition, so each unordered
        # pair of (U, V) pairs is certified once
        pairs = list(product(range(len(basics)), repeat=2))
        for (i1, j1), (i2, j2) in combinations_with_replacement(pairs, 2):
            b1, b2, c1, c2 = basics[i1], basics[i2], basics[j1], basics[j2]
            k = max(len(b1), len(b2), len(c1), len(c2))
            u1, u2, v1, v2 = (_repeat_last(b, k) for b in (b1, b2, c1, c2))
            chain = self._common_element(u1 + u2, v1 + v2)
            label = [[self.describe(u) for u in b.opens] for b in (b1, b2, c1, c2)]
            if not chain.found:
                return self._fail("weakly-mixing", {"U1": label[0], "U2": label[1], "V1": label[2],
                                                     "V2": label[3], "blocking": chain.blocking})
            wg = construct_vietoris_proof_witness(self.system, chain.final, u1, v1)
            wh = construct_vietoris_proof_witness(self.system, chain.final, u2, v2)
            if not (wg.ok and wh.ok):
                return self._fail("weakly-mixing", {"U1": label[0], "V1": label[2],
                                                     "claims": [wg.claims, wh.claims]})
            witnesses.append(label + [chain.final])
        return PropertyReport("weakly-mixing", Verdict.HOLDS_UP_TO_BOUNDS, witnesses=witnesses,
                              bounds=self.family_bounds(), notes="Vietoris witnesses over cylinder basics")

    def _induced_mixing(self) -> PropertyReport:
        sft = self.system
        tail = mixing_tail_start(sft, self.bounds)
        ops = _ops(sft, self.bounds.radius)
        ball = exponent_ball(self.bounds.radius)
        witnesses = []
        for bu, bv in product(self.basics(), repeat=2):
            pu, pv = pad_by_repetition(bu, bv)
            label = [[self.describe(u) for u in bu.opens], [self.describe(v) for v in bv.opens]]
            excluded = sorted(
                {m for m in ball for u, v in zip(pu.opens, pv.opens) if not connects(ops, m, u, v)},
                key=lambda m: (abs(m), m < 0),
            )
            late = [m for m in excluded if abs(m) > tail]
            if late:
                return self._fail("mixing", {"U": label[0], "V": label[1], "exponent": late[0]})
            for m in ball:
                if m in excluded:
                    continue
                w = construct_vietoris_proof_witness(sft, m, pu.opens, pv.opens)
                if not w.ok:
                    return self._fail("mixing", {"U": label[0], "V": label[1], "exponent": m,
                                                 "claims": w.claims})
            witnesses.append({"U": label[0], "V": label[1], "excluded": excluded})
        return PropertyReport("mixing", Verdict.HOLDS_UP_TO_BOUNDS, witnesses=witnesses,
                              bounds=self.family_bounds(), details={"tail_start": tail},
                              notes="excluded set is the union of the per-pair base exclusions")

    def _induced_dense_periodic(self) -> PropertyReport:
        witnesses = []
        for basic in self.basics():
            label = [self.describe(u) for u in basic.opens]
            try:
                w = construct_periodic_witness(self.system, basic)
            except WitnessError as exc:
                return self._fail("dense-periodic", {"U": label, "reason": str(exc)})
            if not w.ok:
                return self._fail("dense-periodic", {"U": label, "claims": w.claims})
            witnesses.append({"U": label, **w.to_dict()})
        return PropertyReport("dense-periodic", Verdict.HOLDS_UP_TO_BOUNDS, witnesses=witnesses,
                              bounds=self.family_bounds())

    def _induced_devaney(self) -> PropertyReport:
        t, d = self.induced("transitive"), self.induced("dense-periodic")
        if t.holds and d.holds:
            return PropertyReport("devaney", Verdict.HOLDS_UP_TO_BOUNDS, bounds=self.family_bounds())
        bad = t if not t.holds else d
        return self._fail("devaney", {"component": bad.property, **bad.counterexample})


def make_context(system, bounds: Bounds = Bounds(), hyper=None):
    if isinstance(system, Sft):
        return _ShiftContext(system, bounds)
    return _FiniteContext(system, bounds, hyper)


# --- individual results -------------------------------------------------------------


def _sides(**reports: PropertyReport) -> dict:
    return {name.replace("_", ".", 1).replace("_", "-"): r.verdict.value for name, r in reports.items()}


def _extension_laws(ctx, case: TheoremCase, which: str) -> None:
    system = ctx.system
    n = system.point_count
    if n > EXHAUSTIVE_CAP:
        raise HyperspaceSizeError(n, EXHAUSTIVE_CAP)
    size = 1 << n
    ext = [frozenset(submasks(u)) for u in range(size)]
    failures = []
    checks = 0
    if which == "P32":
        for u in range(size):
            if u and not ext[u]:
                failures.append({"U": list(members(u)), "law": "non-empty"})
            for k in range(1, size):
                if in_extension(k, u) != (k in ext[u]):
                    failures.append({"U": list(members(u)), "K": list(members(k)), "law": "predicate"})
            for v in range(size):
                checks += 1
                if ext[u] & ext[v] != ext[u & v]:
                    failures.append({"U": list(members(u)), "V": list(members(v)), "law": "intersection"})
        case.sides = {"pairs_checked": checks}
    else:
        strict = 0
        for gi, perm in enumerate(system.group.generators + system.group.inverses):
            for u in range(size):
                checks += 1
                moved = {act_mask(perm, k) for k in ext[u]}
                target = ext[act_mask(perm, u)]
                if not moved <= target:
                    failures.append({"generator": gi, "U": list(members(u)), "law": "inclusion"})
                elif moved == target:
                    strict += 1
        case.sides = {"sets_checked": checks, "equalities": strict}
    case.witnesses["failures"] = failures[:10]
    case.verdict = CaseVerdict.REFUTED if failures else CaseVerdict.CONFIRMED


def _t34(ctx, case: TheoremCase) -> None:
    base, induced = ctx.base("transitive"), ctx.induced("transitive")
    case.sides = _sides(base_transitive=base, induced_transitive=induced)
    case.verdict = implication(induced.verdict, base.verdict)
    case.witnesses["converse_fails"] = base.holds and not induced.holds
    if not ctx.bounded and induced.holds:
        # replay: an element moving e(U) to meet e(V) moves U to meet V
        system, image = ctx.system, ctx.system.image
        n = system.point_count
        for u, v in product(range(1, 1 << n), repeat=2):
            hit = next((i for i, p in enumerate(image.elements)
                        if any(act_mask(p, k) & ~v == 0 for k in submasks(u))), None)
            if hit is None or not act_mask(image.elements[hit], u) & v:
                case.verdict = CaseVerdict.REFUTED
                case.witnesses["replay_failure"] = {"U": list(members(u)), "V": list(members(v))}
                return


def _p35(ctx, case: TheoremCase) -> None:
    wm = ctx.base("weakly-mixing")
    case.sides = _sides(base_weakly_mixing=wm)
    if not wm.holds:
        case.verdict = CaseVerdict.VACUOUS
        return
    opens = [b.opens[0] for b in ctx.basics() if len(b) == 1]
    chains = []
    for n_pairs in (1, 2, 3):
        for us in product(opens[:4], repeat=n_pairs):
            vs = tuple(reversed(us))
            chain = simultaneous_weak_mixing_witness(ctx.system, us, vs, ctx.bounds.radius)
            chains.append(chain)
            if not (chain.found and chain.containment_ok):
                case.verdict = CaseVerdict.REFUTED
                case.witnesses["chain"] = chain.to_dict()
                return
    case.verdict = CaseVerdict.CONFIRMED
    case.witnesses["chains_checked"] = len(chains)
    case.witnesses["example"] = chains[-1].to_dict()


def _t36(ctx, case: TheoremCase) -> None:
    base, induced = ctx.base("weakly-mixing"), ctx.induced("weakly-mixing")
    case.sides = _sides(base_weakly_mixing=base, induced_weakly_mixing=induced)
    case.verdict, case.directions = equivalence(base.verdict, induced.verdict)
    if case.verdict is CaseVerdict.CONFIRMED and not ctx.bounded:
        _replay_t36_finite(ctx, case)
    if ctx.bounded:
        case.witnesses["induced_certificates"] = len(induced.witnesses)
        if induced.witnesses:
            case.witnesses["example"] = induced.witnesses[len(induced.witnesses) // 2]


def _replay_t36_finite(ctx, case: TheoremCase) -> None:
    system = ctx.system
    for b1, b2, c1, c2 in product(ctx.basics()[:3], repeat=4):
        k = max(len(b1), len(b2), len(c1), len(c2))
        u1, u2, v1, v2 = (_repeat_last(b, k) for b in (b1, b2, c1, c2))
        chain = simultaneous_weak_mixing_witness(system, u1 + u2, v1 + v2)
        ok = chain.found
        if ok:
            wg = construct_vietoris_proof_witness(system, chain.final, u1, v1)
            wh = construct_vietoris_proof_witness(system, chain.final, u2, v2)
            ok = wg.ok and wh.ok
        if not ok:
            case.verdict = CaseVerdict.REFUTED
            case.witnesses["replay_failure"] = chain.to_dict()
            return
    case.witnesses["replayed"] = True


def _c37a(ctx, case: TheoremCase) -> None:
    base, induced = ctx.base("weakly-mixing"), ctx.induced("transitive")
    case.sides = _sides(base_weakly_mixing=base, induced_transitive=induced)
    case.verdict = implication(base.verdict, induced.verdict)


def _c37b(ctx, case: TheoremCase) -> None:
    induced, base = ctx.induced("weakly-mixing"), ctx.base("transitive")
    case.sides = _sides(induced_weakly_mixing=induced, base_transitive=base)
    case.verdict = implication(induced.verdict, base.verdict)


def _t38(ctx, case: TheoremCase) -> None:
    base, induced = ctx.base("mixing"), ctx.induced("mixing")
    case.sides = _sides(base_mixing=base, induced_mixing=induced)
    case.verdict, case.directions = equivalence(base.verdict, induced.verdict)
    if base.verdict is Verdict.VACUOUSLY_HOLDS:
        case.notes = "finite group: mixing holds vacuously on both levels"
    if ctx.bounded and induced.holds:
        case.witnesses["induced_certificates"] = len(induced.witnesses)
        case.witnesses["excluded_union"] = sorted(
            {m for w in induced.witnesses for m in w["excluded"]}, key=lambda m: (abs(m), m < 0)
        )


def _periodic_witnesses(ctx, case: TheoremCase) -> bool:
    out = []
    for basic in ctx.basics():
        w = construct_periodic_witness(ctx.system, basic)
        out.append({"U": [ctx.describe(u) for u in basic.opens], **w.to_dict()})
        if not w.ok:
            case.witnesses["periodic"] = out
            return False
    case.witnesses["periodic"] = out if not ctx.bounded else out[:8]
    case.witnesses["periodic_checked"] = len(out)
    return True


def _t39(ctx, case: TheoremCase) -> None:
    base, induced = ctx.base("dense-periodic"), ctx.induced("dense-periodic")
    case.sides = _sides(base_dense_periodic=base, induced_dense_periodic=induced)
    case.verdict = implication(base.verdict, induced.verdict)
    if base.holds and not _periodic_witnesses(ctx, case):
        case.verdict = CaseVerdict.REFUTED


def _t310(ctx, case: TheoremCase) -> None:
    wm, dense = ctx.base("weakly-mixing"), ctx.base("dense-periodic")
    antecedent = _all_of([wm.verdict, dense.verdict])
    induced_t, induced_d = ctx.induced("transitive"), ctx.induced("dense-periodic")
    direct = ctx.induced("devaney")
    case.sides = {
        **_sides(base_weakly_mixing=wm, base_dense_periodic=dense),
        "induced.devaney": direct.verdict.value,
    }
    case.verdict = implication(antecedent, direct.verdict)
    composed = _all_of([induced_t.verdict, induced_d.verdict])
    case.directions = {
        "C37a": implication(wm.verdict, induced_t.verdict).value,
        "T39": implication(dense.verdict, induced_d.verdict).value,
        "composition_matches_direct": composed.positive == direct.verdict.positive,
    }
    if antecedent.positive and not case.directions["composition_matches_direct"]:
        case.verdict = CaseVerdict.REFUTED


_HANDLERS = {
    "P32": lambda ctx, case: _extension_laws(ctx, case, "P32"),
    "P33": lambda ctx, case: _extension_laws(ctx, case, "P33"),
    "T34": _t34,
    "P35": _p35,
    "T36": _t36,
    "C37a": _c37a,
    "C37b": _c37b,
    "T38": _t38,
    "T39": _t39,
    "T310": _t310,
}


def verify_theorem(theorem: str, system, bounds: Bounds = Bounds(), context=None,
                   allow_nonabelian: bool = False) -> TheoremCase:
    if theorem not in _HANDLERS:
        raise KeyError(f"unknown theorem id {theorem!r}; choose from {list(THEOREMS)}")
    ctx = context or make_context(system, bounds)
    is_shift = isinstance(system, Sft)
    if theorem in ("P32", "P33") and is_shift:
        raise ValueError(f"{theorem} is checked on finite systems only")
    if theorem in ABELIAN_ONLY and not is_shift and not system.group.abelian and not allow_nonabelian:
        raise NonAbelianError(f"{theorem} assumes an abelian group")
    case = TheoremCase(
        theorem, system.label,
        ctx.family_bounds() if is_shift else {"cap": bounds.cap},
        CaseVerdict.VACUOUS,
    )
    _HANDLERS[theorem](ctx, case)
    return case

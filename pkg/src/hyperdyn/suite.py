"""Running theorem checks over families of systems.

A suite is a list of families and a list of theorem ids.  Every theorem is
verified on every system of every family; cases that cannot apply (a
non-abelian group for a theorem that assumes commutativity, or the
extension laws on a subshift) are listed as skipped with the reason.

Besides refutations, a suite can fail on missing coverage: each family may
demand that a theorem be confirmed substantively on at least one system, on
every system, or that it be exercised vacuously at least once.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .checkers import Bounds
from .errors import NonAbelianError
from .library import builtin_family
from .shifts import Sft
from .theorems import ABELIAN_ONLY, THEOREMS, CaseVerdict, TheoremCase, make_context, verify_theorem


@dataclass
class FamilySpec:
    name: str
    systems: list
    substantive: tuple = ()
    substantive_everywhere: tuple = ()
    require_vacuous: tuple = ()


@dataclass
class SuiteConfig:
    name: str
    families: list[FamilySpec]
    theorems: tuple = ("T34", "T36", "T38", "T39", "T310")
    bounds: Bounds = field(default_factory=Bounds)

    def __post_init__(self):
        unknown = [t for t in self.theorems if t not in THEOREMS]
        if unknown:
            raise ValueError(f"unknown theorem ids {unknown}")


@dataclass
class Skip:
    family: str
    system: str
    theorem: str
    reason: str


@dataclass
class CoverageCheck:
    family: str
    theorem: str
    requirement: str
    ok: bool
    detail: str = ""


@dataclass
class FamilyResult:
    name: str
    cases: list[TheoremCase]
    skipped: list[Skip]
    coverage: list[CoverageCheck]


@dataclass
class SuiteReport:
    name: str
    bounds: dict
    families: list[FamilyResult]
    wall_time: float = 0.0

    @property
    def cases(self) -> list[TheoremCase]:
        return [c for f in self.families for c in f.cases]

    @property
    def refuted(self) -> list[TheoremCase]:
        return [c for c in self.cases if c.verdict is CaseVerdict.REFUTED]

    @property
    def coverage_failures(self) -> list[CoverageCheck]:
        return [c for f in self.families for c in f.coverage if not c.ok]

    @property
    def passed(self) -> bool:
        return not self.refuted and not self.coverage_failures

    def counts(self) -> dict:
        """Per theorem: how many cases landed in each verdict."""
        out: dict[str, dict[str, int]] = {}
        for c in self.cases:
            row = out.setdefault(c.theorem, {v.value: 0 for v in CaseVerdict})
            row[c.verdict.value] += 1
        return out


def _skip_reason(theorem: str, system) -> str:
    if isinstance(system, Sft):
        if theorem in ("P32", "P33"):
            return "extension laws are checked on finite systems only"
        return ""
    if theorem in ABELIAN_ONLY and not system.group.abelian:
        return "theorem assumes an abelian group"
    return ""


def _corollary_consistency(cases: dict[str, TheoremCase]) -> list[str]:
    """Whenever T36 is confirmed with both sides holding, C37a and C37b must follow."""
    t36 = cases.get("T36")
    if t36 is None or t36.verdict is not CaseVerdict.CONFIRMED:
        return []
    problems = []
    for cid in ("C37a", "C37b"):
        c = cases.get(cid)
        if c is not None and c.verdict is not CaseVerdict.CONFIRMED:
            problems.append(f"{cid} is {c.verdict.value} although T36 holds on both sides")
    return problems


def _coverage(spec: FamilySpec, cases: list[TheoremCase]) -> list[CoverageCheck]:
    by_theorem: dict[str, list[TheoremCase]] = {}
    for c in cases:
        by_theorem.setdefault(c.theorem, []).append(c)
    out = []
    for t in spec.substantive:
        got = [c for c in by_theorem.get(t, []) if c.substantive]
        out.append(CoverageCheck(spec.name, t, "substantive", bool(got),
                                 f"{len(got)} substantive case(s)"))
    for t in spec.substantive_everywhere:
        mine = by_theorem.get(t, [])
        bad = [c.system for c in mine if not c.substantive]
        ok = bool(mine) and not bad
        out.append(CoverageCheck(spec.name, t, "substantive-everywhere", ok,
                                 "not substantive on " + ", ".join(bad) if bad else f"{len(mine)} case(s)"))
    for t in spec.require_vacuous:
        got = [c.system for c in by_theorem.get(t, []) if c.verdict is CaseVerdict.VACUOUS]
        out.append(CoverageCheck(spec.name, t, "vacuous", bool(got),
                                 ", ".join(got) if got else "no vacuous case"))
    return out


def run_family(spec: FamilySpec, theorems, bounds: Bounds) -> FamilyResult:
    cases: list[TheoremCase] = []
    skipped: list[Skip] = []
    extra: list[CoverageCheck] = []
    for system in spec.systems:
        ctx = make_context(system, bounds)
        mine: dict[str, TheoremCase] = {}
        for t in sorted(theorems, key=THEOREMS.index):
            reason = _skip_reason(t, system)
            if reason:
                skipped.append(Skip(spec.name, system.label, t, reason))
                continue
            try:
                case = verify_theorem(t, system, bounds, context=ctx)
            except NonAbelianError as exc:
                skipped.append(Skip(spec.name, system.label, t, str(exc)))
                continue
            mine[t] = case
            cases.append(case)
        for problem in _corollary_consistency(mine):
            extra.append(CoverageCheck(spec.name, "C37", "corollary-consistency", False,
                                       f"{system.label}: {problem}"))
    cases.sort(key=lambda c: THEOREMS.index(c.theorem))
    return FamilyResult(spec.name, cases, skipped, _coverage(spec, cases) + extra)


def run_suite(config: SuiteConfig) -> SuiteReport:
    start = time.perf_counter()
    families = [run_family(f, config.theorems, config.bounds) for f in config.families]
    return SuiteReport(config.name, config.bounds.as_dict(), families,
                       wall_time=time.perf_counter() - start)


# --- the builtin suites --------------------------------------------------------------------


def default_finite_suite(bounds: Bounds = Bounds()) -> SuiteConfig:
    family = FamilySpec(
        "finite_default",
        builtin_family("finite_default"),
        substantive_everywhere=("T39",),
        require_vacuous=("T34",),
    )
    return SuiteConfig("default-finite", [family], ("T34", "T36", "T38", "T39", "T310"), bounds)


def default_subshift_suite(bounds: Bounds = Bounds()) -> SuiteConfig:
    family = FamilySpec(
        "subshift_default",
        builtin_family("subshift_default"),
        substantive_everywhere=("T36", "T38"),
    )
    return SuiteConfig("default-subshift", [family], ("T36", "T38"), bounds)


def full_default_suite(bounds: Bounds = Bounds()) -> SuiteConfig:
    finite, shifts = default_finite_suite(bounds), default_subshift_suite(bounds)
    return SuiteConfig(
        "default-full", finite.families + shifts.families,
        ("T34", "T36", "T38", "T39", "T310"), bounds,
    )


BUILTIN_SUITES = {
    "default": default_finite_suite,
    "default-finite": default_finite_suite,
    "default-subshift": default_subshift_suite,
    "default-full": full_default_suite,
}

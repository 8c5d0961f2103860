import pytest

from hyperdyn.checkers import Bounds
from hyperdyn.library import cyclic_rotation, identity, symmetric_3
from hyperdyn.shifts import swap_shift
from hyperdyn.suite import (
    BUILTIN_SUITES,
    FamilySpec,
    SuiteConfig,
    default_finite_suite,
    run_family,
    run_suite,
)
from hyperdyn.theorems import CaseVerdict


@pytest.fixture(scope="module")
def finite_report():
    return run_suite(default_finite_suite())


def test_default_finite_suite_passes(finite_report):
    assert finite_report.passed
    assert finite_report.refuted == []
    counts = finite_report.counts()
    assert counts["T39"]["confirmed"] == 15
    assert counts["T39"]["refuted"] == 0


def test_non_abelian_cases_are_skipped(finite_report):
    (family,) = finite_report.families
    skipped = {(s.system, s.theorem) for s in family.skipped}
    assert skipped == {("symmetric_3", t) for t in ("T36", "T38", "T310")}


def test_converse_failure_is_recorded(finite_report):
    case = next(c for c in finite_report.cases if c.theorem == "T34" and c.system == "cyclic_rotation(3)")
    assert case.witnesses["converse_fails"]


def test_empty_family_passes_trivially():
    report = run_suite(SuiteConfig("empty", [FamilySpec("nothing", [])]))
    assert report.passed and report.cases == []


def test_coverage_requirements_can_fail():
    spec = FamilySpec("rotations", [cyclic_rotation(3)], substantive=("T36",), require_vacuous=("T39",))
    result = run_family(spec, ("T36", "T39"), Bounds())
    by_requirement = {c.requirement: c.ok for c in result.coverage}
    assert by_requirement == {"substantive": False, "vacuous": False}
    report = run_suite(SuiteConfig("strict", [spec], ("T36", "T39")))
    assert not report.passed and not report.refuted


def test_substantive_everywhere_names_the_offenders():
    spec = FamilySpec("mixed", [identity(1), cyclic_rotation(3)], substantive_everywhere=("T36",))
    (check,) = run_family(spec, ("T36",), Bounds()).coverage
    assert not check.ok
    assert "cyclic_rotation(3)" in check.detail


def test_shift_skips_extension_laws():
    result = run_family(FamilySpec("swap", [swap_shift()]), ("P32", "T39"), Bounds(radius=6, cyl_len=2))
    assert [s.theorem for s in result.skipped] == ["P32"]
    assert result.cases[0].verdict is CaseVerdict.CONFIRMED


def test_unknown_theorem_rejected():
    with pytest.raises(ValueError):
        SuiteConfig("bad", [], ("T99",))


def test_builtin_suite_names():
    assert set(BUILTIN_SUITES) == {"default", "default-finite", "default-subshift", "default-full"}
    assert BUILTIN_SUITES["default"]().families[0].name == "finite_default"


def test_nonabelian_only_family():
    result = run_family(FamilySpec("s3", [symmetric_3()]), ("T34", "T36"), Bounds())
    assert [c.theorem for c in result.cases] == ["T34"]
    assert result.skipped[0].reason == "theorem assumes an abelian group"

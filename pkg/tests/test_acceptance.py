"""Exit criteria of the package, one test per criterion.

Each test times itself against its budget and records the outcome in
``conftest.ACCEPTANCE_RESULTS``; the terminal summary then prints one
``criterion N: PASS`` or ``FAIL`` line per criterion.  Run only these with

    python3 -m pytest -m acceptance -v
"""

import json
import random
import time
from contextlib import contextmanager
from fractions import Fraction
from itertools import combinations, product

import numpy as np
import pytest

from conftest import ACCEPTANCE_RESULTS
from hyperdyn import oracles
from hyperdyn.checkers import (
    PROPERTIES,
    Bounds,
    Verdict,
    check,
    is_mixing,
    is_sdic,
    is_transitive,
    is_weakly_mixing,
)
from hyperdyn.cli import EXIT_ASSERT, EXIT_OK, run
from hyperdyn.errors import WitnessError
from hyperdyn.groups import GroupKind
from hyperdyn.hyperspace import VietorisBasic, induced_permutation, vietoris_contains
from hyperdyn.library import finite_default, finite_extended, subshift_default
from hyperdyn.metric import FiniteMetricSpace, hausdorff_table, members
from hyperdyn.reports import dumps, strip_timing
from hyperdyn.shifts import Cylinder, cylinders_up_to, full_shift, golden_mean, graph_period, is_irreducible
from hyperdyn.shifts import is_primitive, swap_shift
from hyperdyn.suite import default_finite_suite, default_subshift_suite, run_suite
from hyperdyn.theorems import CaseVerdict, construct_periodic_witness, construct_vietoris_proof_witness, verify_theorem

pytestmark = pytest.mark.acceptance


@contextmanager
def criterion(number, title, budget):
    start = time.perf_counter()
    ok = False
    try:
        yield
        ok = True
    finally:
        seconds = time.perf_counter() - start
        within = seconds < budget
        ACCEPTANCE_RESULTS[number] = (title, ok and within, seconds)
    assert within, f"criterion {number} took {seconds:.1f}s, budget {budget}s"


def random_metric(rng, n):
    """Shortest-path closure of a random positive weighted complete graph."""
    w = [[Fraction(0)] * n for _ in range(n)]
    for i, j in combinations(range(n), 2):
        w[i][j] = w[j][i] = Fraction(rng.randint(1, 24), rng.randint(1, 6))
    for k, i, j in product(range(n), repeat=3):
        w[i][j] = min(w[i][j], w[i][k] + w[k][j])
    return FiniteMetricSpace.from_rows(w)


def test_criterion_1_hausdorff_axioms():
    rng = random.Random(20240611)
    spaces = [random_metric(rng, rng.choice([4, 5, 6, 6, 6])) for _ in range(20)]
    spaces += [FiniteMetricSpace.discrete(6), FiniteMetricSpace.line(6)]
    with criterion(1, "Hausdorff metric axioms on all subset triples", 60):
        for space in spaces:
            h = hausdorff_table(space).astype(np.int64)
            m = h.shape[0]
            # identity: zero exactly on the diagonal
            assert np.array_equal(h == 0, np.eye(m, dtype=bool))
            assert np.array_equal(h, h.T)
            for a in range(m):
                # H(A, B) <= H(A, C) + H(C, B) for every B and C
                assert (h[a][None, :] <= h[a][:, None] + h).all()
            # the table agrees with the literal max-of-sups formula
            for a, b in rng.sample(list(product(range(1, m + 1), repeat=2)), 200):
                d = space.dist
                ab = max(min(d(x, y) for y in members(b)) for x in members(a))
                ba = max(min(d(y, x) for x in members(a)) for y in members(b))
                assert Fraction(int(h[a - 1, b - 1]), space.scale) == max(ab, ba)


def test_criterion_2_extension_laws():
    with criterion(2, "extension-operator laws, n <= 8", 30):
        for system in finite_extended():
            for theorem in ("P32", "P33"):
                case = verify_theorem(theorem, system)
                assert case.verdict is CaseVerdict.CONFIRMED, (theorem, system.label, case.witnesses)
            # an independent recheck of the image law with the induced permutation
            n = system.point_count
            ext = {u: {k for k in range(1, 1 << n) if k & ~u == 0} for u in range(1 << n)}
            for perm in system.group.generators:
                hat = induced_permutation(perm, n)
                moved = {u: sum(1 << perm[x] for x in members(u)) for u in range(1 << n)}
                for u in range(1 << n):
                    assert {hat[k - 1] + 1 for k in ext[u]} <= ext[moved[u]]
                    assert ext[u] & ext[u ^ (u & -u)] == ext[u & (u ^ (u & -u))]


def test_criterion_3_oracle_equivalence():
    with criterion(3, "checkers agree with brute-force quantifiers", 120):
        disagreements = []
        for system in finite_default():
            assert system.point_count <= 6
            for prop in PROPERTIES:
                got, want = check(system, prop).verdict, oracles.ORACLES[prop](system)
                if got is not want:
                    disagreements.append((system.label, prop, got, want))
        assert disagreements == []


def test_criterion_4_finite_theorem_suite():
    with criterion(4, "theorem suite on the finite families", 120):
        report = run_suite(default_finite_suite())
        assert report.refuted == []
        assert report.passed, report.coverage_failures
        for c in report.cases:
            assert c.verdict in (CaseVerdict.CONFIRMED, CaseVerdict.VACUOUS)
        t39 = [c for c in report.cases if c.theorem == "T39"]
        assert len(t39) == len(finite_default())
        assert all(c.substantive for c in t39)
        rot3 = next(c for c in report.cases if c.theorem == "T34" and c.system == "cyclic_rotation(3)")
        assert rot3.sides == {"base.transitive": "holds", "induced.transitive": "fails"}
        assert rot3.witnesses["converse_fails"]


def test_criterion_5_subshift_theorems():
    with criterion(5, "bounded theorem checks on subshifts", 120):
        report = run_suite(default_subshift_suite(Bounds(radius=12, cyl_len=3)))
        assert report.passed and report.refuted == []
        for c in report.cases:
            assert c.verdict is CaseVerdict.CONFIRMED, (c.theorem, c.system)
            assert c.witnesses["induced_certificates"] > 0
            assert c.bounds["cyl_len"] == 3 and c.bounds["radius"] == 12
        assert is_primitive(full_shift(2)) == (True, 1)
        assert is_primitive(golden_mean()) == (True, 2)
        assert not is_primitive(swap_shift())[0] and graph_period(swap_shift()) == 2
        for sft in subshift_default() + [swap_shift()]:
            primitive = is_primitive(sft)[0]
            assert is_transitive(sft).holds == is_irreducible(sft)
            assert is_weakly_mixing(sft).holds == primitive
            assert is_mixing(sft).holds == primitive


def _abelian_systems():
    return [s for s in finite_default() if s.group.abelian]


def _recheck_vietoris(system, gamma, us, vs, w):
    perm = system.image.elements[gamma]
    a = sum(1 << x for x in w.a)
    ga = sum(1 << perm[x] for x in w.a)
    assert sum(1 << x for x in w.image_of_a) == ga
    assert vietoris_contains(VietorisBasic(tuple(us)), a)
    assert vietoris_contains(VietorisBasic(tuple(vs)), ga)
    assert vietoris_contains(w.g, a)


def _recheck_periodic(system, basic, w):
    group = oracles.naive_image_group(system)
    a = frozenset(w.a)
    orbit = {frozenset(g[x] for x in a) for g in group}
    stabilizer_indices = [len(group) // sum(1 for g in group if g[x] == x) for x in a]
    assert vietoris_contains(basic, sum(1 << x for x in a))
    assert len(orbit) == w.orbit_size
    assert len(group) % len(orbit) == 0
    assert len(orbit) <= np.prod(stabilizer_indices)


def test_criterion_6_witness_soundness():
    rng = random.Random(7)
    checked = 0
    with criterion(6, "proof witnesses pass an independent recheck", 30):
        for system in finite_default():
            n = system.point_count
            masks = range(1, 1 << n)
            for k in (1, 2, 3):
                tuples = list(product(masks, repeat=2 * k)) if (1 << n) ** (2 * k) <= 5000 else [
                    tuple(rng.choice(masks) for _ in range(2 * k)) for _ in range(400)
                ]
                for t in tuples:
                    us, vs = t[:k], t[k:]
                    periodic = construct_periodic_witness(system, VietorisBasic(us))
                    assert periodic.ok
                    _recheck_periodic(system, VietorisBasic(us), periodic)
                    checked += 1
                    for gamma in range(system.image.order):
                        try:
                            w = construct_vietoris_proof_witness(system, gamma, us, vs)
                        except WitnessError:
                            continue
                        assert w.ok
                        _recheck_vietoris(system, gamma, us, vs, w)
                        checked += 1
        for sft in subshift_default():
            cyls = [c.pattern for c in cylinders_up_to(sft, 2)]
            for us in product(cyls, repeat=2):
                p = construct_periodic_witness(sft, VietorisBasic(us))
                assert p.ok and p.stabilizer_index % p.orbit_size == 0
                checked += 1
                for m in range(-4, 5):
                    try:
                        w = construct_vietoris_proof_witness(sft, m, us, tuple(reversed(us)))
                    except WitnessError:
                        continue
                    assert w.ok
                    checked += 1
    assert checked > 1000


def test_criterion_7_degeneracy_ledger():
    with criterion(7, "degenerate verdicts on finite systems", 10):
        for system in finite_extended():
            if system.group.kind is GroupKind.FINITE:
                assert is_mixing(system).verdict is Verdict.VACUOUSLY_HOLDS, system.label
            sdic = is_sdic(system)
            assert sdic.verdict is Verdict.FAILS
            assert sdic.counterexample["reason"].startswith("isolated point")
            if system.point_count >= 2:
                wm = is_weakly_mixing(system)
                assert wm.verdict is Verdict.FAILS, system.label
                assert wm.counterexample["reason"].startswith("singleton obstruction")


def _invoke(*argv):
    import io

    out, err = io.StringIO(), io.StringIO()
    return run(list(argv), out, err), out.getvalue()


def test_criterion_8_cli_determinism(tmp_path):
    with criterion(8, "CLI reports are reproducible and --assert matches verdicts", 60):
        texts = []
        for name in ("first.json", "second.json"):
            path = tmp_path / name
            code, _ = _invoke("--suite", "default", "--out", str(path), "--assert")
            assert code == EXIT_OK
            texts.append(dumps(strip_timing(json.loads(path.read_text()))))
        assert texts[0] == texts[1]

        scenarios = [
            (("--system", "builtin:cyclic_rotation(3)", "--check", "transitive"), EXIT_OK, "holds"),
            (("--system", "builtin:identity(2)", "--check", "weakly-mixing"), EXIT_ASSERT, "fails"),
            (("--system", "builtin:klein_on_4", "--verify", "T39"), EXIT_OK, "confirmed"),
        ]
        for argv, expected_code, expected_verdict in scenarios:
            code, out = _invoke(*argv, "--assert")
            report = json.loads(out)
            assert code == expected_code
            assert report["results"][0]["verdict"] == expected_verdict
            assert (code == EXIT_OK) == report["passed"]

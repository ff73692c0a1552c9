"""Tests for the verification engine and its aggregated suite.

Oracle notes.  The checks in this module each compare two independent
evaluation paths of one algebraic identity (commutator against residue
form, three-variable kernel identity, operator spectrum against rescaled
spectrum), so the primary oracles are: every check passes with a nonzero
comparison count on even order, the odd-order even-form check fails on a
nonzero set of coefficients while its shifted-lattice form passes, and a
window that selects no coefficients can never report a pass.  Report
mechanics (verdict logic, expected verdicts, serialization) are pinned by
hand-built reports.
"""

import json

import pytest
from hypothesis import given, settings, strategies as st

from twistfock.scalars import QQ
from twistfock.fermion import OMEGA, PSI, VACUUM, ZERO_STATE
from twistfock.formal import Window
from twistfock.verify import (
    CheckReport,
    SuiteConfig,
    check_character_correspondence,
    check_cross_slot_commutator,
    check_even_supercommutator,
    check_grading,
    check_limit_axiom,
    check_locality,
    check_odd_obstruction,
    check_recovered_commutator,
    check_t_round_trip,
    check_translation_derivative,
    check_twisted_jacobi,
    check_u_round_trip,
    check_weak_associativity,
    run_suite,
    suite_json,
    suite_passed,
    suite_table,
)

CUBE2 = Window.cube(("x1", "x2"), QQ(-3, 2), QQ(3, 2))
CUBE3 = Window.cube(("x0", "x1", "x2"), QQ(-3, 2), QQ(3, 2))
ASSOC2 = Window.cube(("x0", "x2"), QQ(-3, 2), QQ(3, 2))
LINE = Window({"x": (QQ(-5, 2), QQ(5, 2))})


def assert_clean_pass(report):
    assert report.verdict == "pass"
    assert report.expected_verdict == "pass"
    assert report.as_expected
    assert report.compared > 0
    assert report.mismatches == ()


class TestReportMechanics:
    def test_pass_needs_comparisons(self):
        vacuous = CheckReport("empty", 2, "w", 0, ())
        assert vacuous.verdict == "fail"
        assert not vacuous.as_expected

    def test_mismatch_fails(self):
        bad = CheckReport("bad", 2, "w", 3, (("spot", "1", "2"),))
        assert bad.verdict == "fail"
        assert not bad.as_expected

    def test_expected_failure_is_in_order(self):
        bad = CheckReport("bad", 3, "w", 3, (("spot", "1", "2"),), "fail")
        assert bad.verdict == "fail"
        assert bad.as_expected
        ok = CheckReport("ok", 3, "w", 3, (), "fail")
        assert ok.verdict == "pass"
        assert not ok.as_expected

    def test_to_dict_is_json_ready(self):
        report = CheckReport("name", 2, "w", 5, (("spot", "1", "2"),))
        encoded = json.dumps(report.to_dict())
        decoded = json.loads(encoded)
        assert decoded["verdict"] == "fail"
        assert decoded["mismatch_count"] == 1
        assert decoded["compared"] == 5

    def test_suite_passed_mixes_expected_verdicts(self):
        reports = [
            CheckReport("a", 2, "w", 1, ()),
            CheckReport("b", 3, "w", 1, (("s", "1", "2"),), "fail"),
        ]
        assert suite_passed(reports)
        reports.append(CheckReport("c", 3, "w", 1, (("s", "1", "2"),)))
        assert not suite_passed(reports)


class TestCommutatorChecks:
    def test_even_supercommutator_pairs(self):
        for u, v in ((PSI, PSI), (PSI, OMEGA), (OMEGA, OMEGA), (OMEGA, VACUUM)):
            assert_clean_pass(check_even_supercommutator(2, u, v, CUBE2))

    def test_even_supercommutator_rejects_odd_order(self):
        with pytest.raises(ValueError):
            check_even_supercommutator(3, PSI, PSI, CUBE2)

    def test_even_supercommutator_rejects_zero_state(self):
        with pytest.raises(ValueError):
            check_even_supercommutator(2, ZERO_STATE, PSI, CUBE2)

    def test_cross_slot_pairs(self):
        for slots in ((1, 2), (2, 2)):
            assert_clean_pass(
                check_cross_slot_commutator(2, PSI, PSI, slots[0], slots[1], CUBE2)
            )

    def test_cross_slot_rejects_bad_slot(self):
        with pytest.raises(ValueError):
            check_cross_slot_commutator(2, PSI, PSI, 0, 1, CUBE2)
        with pytest.raises(ValueError):
            check_cross_slot_commutator(2, PSI, PSI, 1, 3, CUBE2)

    def test_odd_obstruction_fails_then_passes(self):
        even_form, odd_form = check_odd_obstruction(3, PSI, PSI, CUBE2)
        assert even_form.verdict == "fail"
        assert even_form.expected_verdict == "fail"
        assert even_form.as_expected
        assert len(even_form.mismatches) > 0
        assert_clean_pass(odd_form)

    def test_odd_obstruction_even_argument_has_no_shift(self):
        even_form, odd_form = check_odd_obstruction(3, OMEGA, OMEGA, CUBE2)
        assert even_form.expected_verdict == "pass"
        assert_clean_pass(even_form)
        assert_clean_pass(odd_form)

    def test_odd_obstruction_rejects_even_order(self):
        with pytest.raises(ValueError):
            check_odd_obstruction(2, PSI, PSI, CUBE2)

    def test_recovered_commutator_both_builders(self):
        assert_clean_pass(check_recovered_commutator(2, PSI, PSI, CUBE2))
        assert_clean_pass(
            check_recovered_commutator(2, PSI, PSI, CUBE2, use_recovered=False)
        )


class TestTwistedJacobi:
    def test_fermion_pair(self):
        assert_clean_pass(check_twisted_jacobi(2, PSI, PSI, CUBE3))

    def test_conformal_pair(self):
        assert_clean_pass(check_twisted_jacobi(2, OMEGA, OMEGA, CUBE3))

    def test_mixed_pairs(self):
        assert_clean_pass(check_twisted_jacobi(2, PSI, OMEGA, CUBE3))
        assert_clean_pass(check_twisted_jacobi(2, OMEGA, PSI, CUBE3))

    def test_vacuum_collapses_to_delta_identity(self):
        # with the vacuum on the left the kernel sum telescopes to a single
        # delta-function term, so the identity must hold coefficient for
        # coefficient on the same grid as the generic case
        collapsed = check_twisted_jacobi(2, VACUUM, PSI, CUBE3)
        generic = check_twisted_jacobi(2, PSI, PSI, CUBE3)
        assert_clean_pass(collapsed)
        assert collapsed.compared == generic.compared

    def test_vacuum_on_the_right(self):
        assert_clean_pass(check_twisted_jacobi(2, PSI, VACUUM, CUBE3))

    def test_order_four(self):
        window = Window.cube(("x0", "x1", "x2"), QQ(-1), QQ(1))
        assert_clean_pass(check_twisted_jacobi(4, PSI, PSI, window))

    def test_rejects_odd_order(self):
        with pytest.raises(ValueError):
            check_twisted_jacobi(3, PSI, PSI, CUBE3)

    def test_window_without_lattice_points_cannot_pass(self):
        # a nonempty exponent window that misses every lattice point selects
        # zero coefficients, and zero comparisons is a failure, not a pass
        window = Window.cube(("x0", "x1", "x2"), QQ(1, 3), QQ(5, 12))
        report = check_twisted_jacobi(2, PSI, PSI, window)
        assert report.compared == 0
        assert report.verdict == "fail"

    def test_window_restriction_is_consistent(self):
        # shrinking the window can only remove comparison points, never
        # change a verdict on the points that remain
        small = check_twisted_jacobi(
            2, PSI, PSI, Window.cube(("x0", "x1", "x2"), QQ(-1), QQ(1))
        )
        large = check_twisted_jacobi(2, PSI, PSI, CUBE3)
        assert_clean_pass(small)
        assert_clean_pass(large)
        assert small.compared < large.compared


class TestLocality:
    def test_fermion_pair_has_small_vanishing_power(self):
        report = check_locality(2, PSI, PSI, CUBE2)
        assert_clean_pass(report)
        assert report.detail == "vanishing power N=1"

    def test_conformal_pair(self):
        report = check_locality(2, OMEGA, OMEGA, CUBE2, max_power=4)
        assert_clean_pass(report)
        assert report.detail.startswith("vanishing power N=")

    def test_cross_slot_locality(self):
        report = check_locality(2, PSI, PSI, CUBE2, slot_u=1, slot_v=2)
        assert_clean_pass(report)


class TestStructureChecks:
    def test_limit_axiom(self):
        for u in (PSI, OMEGA):
            assert_clean_pass(check_limit_axiom(2, u, LINE))

    def test_limit_axiom_order_four(self):
        assert_clean_pass(check_limit_axiom(4, PSI, LINE))

    def test_translation_derivative_any_order(self):
        for k in (1, 2, 3):
            assert_clean_pass(check_translation_derivative(k, PSI, LINE))

    def test_grading(self):
        for u in (PSI, OMEGA):
            assert_clean_pass(check_grading(2, u, LINE))

    def test_weak_associativity(self):
        report = check_weak_associativity(2, PSI, PSI, ASSOC2)
        assert_clean_pass(report)
        assert report.detail.startswith("exponent shift n=")


class TestRoundTrips:
    def test_recovery_round_trip(self):
        for u in (VACUUM, PSI, OMEGA):
            assert_clean_pass(check_u_round_trip(2, u, LINE))

    def test_rebuild_round_trip(self):
        assert_clean_pass(check_t_round_trip(2, PSI, LINE))

    def test_round_trips_order_four(self):
        assert_clean_pass(check_u_round_trip(4, PSI, LINE))
        assert_clean_pass(check_t_round_trip(4, PSI, LINE))


class TestCharacterCorrespondence:
    def test_orders_two_four_six(self):
        for k in (2, 4, 6):
            report = check_character_correspondence(k, 4)
            assert_clean_pass(report)

    def test_rejects_negative_cutoff(self):
        with pytest.raises(ValueError):
            check_character_correspondence(2, -1)

    def test_rejects_odd_order(self):
        with pytest.raises(ValueError):
            check_character_correspondence(3, 4)


class TestSuiteConfig:
    def test_defaults(self):
        cfg = SuiteConfig()
        assert cfg.k == 2
        assert cfg.radius == QQ(3, 2)
        assert cfg.jacobi is True

    def test_from_mapping(self):
        cfg = SuiteConfig.from_mapping(
            {"k": "4", "radius": "3/2", "jacobi": "off", "depth": "3"}
        )
        assert cfg.k == 4
        assert cfg.radius == QQ(3, 2)
        assert cfg.jacobi is False
        assert cfg.depth == 3

    def test_from_mapping_rejects_unknown_key(self):
        with pytest.raises(ValueError):
            SuiteConfig.from_mapping({"order": "2"})

    @given(
        k=st.integers(min_value=1, max_value=6),
        num=st.integers(min_value=0, max_value=9),
        den=st.integers(min_value=1, max_value=4),
        flag=st.booleans(),
    )
    @settings(max_examples=25, deadline=None)
    def test_from_mapping_round_trip(self, k, num, den, flag):
        cfg = SuiteConfig.from_mapping(
            {
                "k": str(k),
                "radius": f"{num}/{den}",
                "jacobi": "true" if flag else "false",
            }
        )
        assert cfg.k == k
        assert cfg.radius == QQ(num, den)
        assert cfg.jacobi is flag


class TestRunSuite:
    def test_default_suite_is_all_in_order(self):
        reports = run_suite()
        assert suite_passed(reports)
        assert all(r.compared > 0 for r in reports)
        names = [r.name for r in reports]
        assert any(n.startswith("twisted-jacobi") for n in names)
        assert any(n.startswith("character-correspondence") for n in names)

    def test_suite_is_deterministic(self):
        first = run_suite()
        second = run_suite()
        assert suite_json(first) == suite_json(second)
        assert suite_table(first) == suite_table(second)

    def test_odd_order_runs_the_obstruction_pair(self):
        reports = run_suite(SuiteConfig(k=3))
        assert suite_passed(reports)
        by_name = {r.name: r for r in reports}
        even_form = next(
            r for n, r in by_name.items() if n.startswith("obstruction-even-form")
        )
        odd_form = next(
            r for n, r in by_name.items() if n.startswith("obstruction-odd-form")
        )
        assert even_form.verdict == "fail" and even_form.as_expected
        assert len(even_form.mismatches) > 0
        assert odd_form.verdict == "pass" and odd_form.as_expected

    def test_trivial_order_suite(self):
        reports = run_suite(SuiteConfig(k=1))
        assert suite_passed(reports)

    def test_empty_window_is_an_error(self):
        with pytest.raises(ValueError, match="no coefficients compared"):
            run_suite(SuiteConfig(radius=QQ(-1)))

    def test_suite_json_shape(self):
        reports = run_suite(SuiteConfig(k=3))
        decoded = json.loads(suite_json(reports))
        assert isinstance(decoded, list) and len(decoded) == len(reports)
        for row in decoded:
            assert row["verdict"] in ("pass", "fail")
            assert row["as_expected"] is True
            vacuous = row["compared"] == 0
            clean = row["mismatch_count"] == 0
            assert (row["verdict"] == "pass") == (clean and not vacuous)

    def test_suite_table_mentions_every_check(self):
        reports = run_suite(SuiteConfig(k=3))
        table = suite_table(reports)
        for r in reports:
            assert r.name in table
        assert f"{len(reports)}/{len(reports)} checks as expected" in table

from __future__ import annotations

from aqt_groupoids.linear import ONE, scalar
from aqt_groupoids.reporting import (
    CheckSpec,
    VerificationReport,
    Witness,
    failure,
    first_mismatch,
    run_checks,
    scalar_case,
    single_check,
)


def _boom() -> Witness | None:
    raise ZeroDivisionError("division by zero")


def test_run_checks_keeps_spec_order() -> None:
    specs = [CheckSpec(f"c{i}", "anchor", lambda: None) for i in range(12)]

    report = run_checks("ordered", specs, workers=4)

    assert [check.name for check in report.checks] == [f"c{i}" for i in range(12)]
    assert report.passed


def test_raising_check_is_recorded_as_failed() -> None:
    report = run_checks(
        "raises",
        [CheckSpec("ok", "a", lambda: None), CheckSpec("boom", "b", _boom)],
        workers=1,
    )

    assert not report.passed
    assert report.failed()[0].name == "boom"
    assert "ZeroDivisionError" in report.reasons[0]


def test_first_mismatch_reports_both_sides_exactly() -> None:
    cases = [((0,), {0: ONE}, {0: ONE}), ((1, 2), {0: ONE}, {0: scalar(1, 1)})]

    witness = first_mismatch("sides differ", cases)

    assert witness is not None
    assert witness.basis == [1, 2]
    assert witness.lhs != witness.rhs
    assert first_mismatch("never", cases[:1]) is None


def test_scalar_case_treats_zero_as_empty() -> None:
    basis, lhs, rhs = scalar_case((3,), scalar(0), ONE)

    assert basis == (3,)
    assert lhs == {}
    assert rhs == {0: ONE}


def test_merge_prefixes_names() -> None:
    inner = single_check("inner", "unit", "(M1)", failure("broken", (0,)))

    merged = VerificationReport(label="outer").merge(inner, prefix="total")

    assert merged.label == "outer"
    assert merged.check("total.unit").witness == failure("broken", (0,))
    assert merged.reasons == ["total.unit: broken"]


def test_render_text_shows_witness() -> None:
    report = single_check("r", "assoc", "(A)", Witness(detail="d", basis=[1], lhs="1", rhs="2"))

    text = report.render_text()

    assert "FAIL" in text
    assert "basis=(1,)" in text
    assert "rhs=2" in text

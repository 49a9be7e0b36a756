from __future__ import annotations

from dataclasses import replace

import pytest

from aqt_groupoids.catalog import (
    FULL_PIPELINE,
    ActionData,
    PipelineRun,
    build_instance,
    list_instances,
    run_pipeline,
)
from aqt_groupoids.catalog.registry import transformation_instance
from aqt_groupoids.linear import scalar

FAST = ["z2-two-points", "trivial-z2", "canonical-z2", "heisenberg-z2", "z3-degenerate-bundle"]


def _reasons(run: PipelineRun) -> list[str]:
    return [reason for report in run.reports for reason in report.reasons]


@pytest.mark.parametrize("name", FAST)
def test_small_instances_pass_their_pipeline(name: str) -> None:
    run = run_pipeline(name)

    assert run.reports
    assert run.passed, _reasons(run)


@pytest.mark.slow
@pytest.mark.parametrize("name", [n for n in list_instances() if n not in FAST])
def test_catalog_instance_passes_full_pipeline(name: str) -> None:
    run = run_pipeline(name, exhaustive=False)

    assert run.passed, _reasons(run)


def test_pipeline_stops_after_failing_yd_stage(z2_action: ActionData) -> None:
    skewed = replace(z2_action, weights=(scalar(1), scalar(2)))
    instance = transformation_instance(skewed, check_weights=False)

    run = PipelineRun(instance).run(FULL_PIPELINE)

    assert not run.passed
    # the algebroid is a cached property, so it was never built
    assert "algebroid" not in vars(run)


def test_instances_are_rebuilt_deterministically() -> None:
    first = build_instance("s3-z3-quotient")
    second = build_instance("s3-z3-quotient")

    assert first.measured.yd.n.same_structure(second.measured.yd.n)
    assert first.report == second.report

from __future__ import annotations

import pytest

from aqt_groupoids.algebroid import MMHA, build_algebroid, left_identification, verify_mmha
from aqt_groupoids.catalog import (
    ActionData,
    CatalogInstance,
    QuotientCoideal,
    build_instance,
    dual_presentation_report,
)
from aqt_groupoids.errors import PreconditionError
from aqt_groupoids.pontrjagin import (
    DualModel,
    biduality_check,
    build_dual_algebroid,
    convolution_actions,
    dual_algebra,
    duality_pairing,
    heisenberg_identification,
)
from aqt_groupoids.yd import right_measured_to_left


def test_dual_model_passes_every_check(z2_dual_model: DualModel) -> None:
    report = z2_dual_model.report

    assert report.passed, report.reasons
    assert report.check("model.model_matches_smash").passed
    assert report.check("dual.antipode_on_bases").passed
    assert z2_dual_model.dual.dim == 4


def test_dual_algebra_and_convolution_actions(z2_algebroid: MMHA) -> None:
    dual = dual_algebra(z2_algebroid)

    assert dual.report.passed, dual.report.reasons
    assert dual.report.check("full_dimension").passed
    actions = convolution_actions(z2_algebroid, dual)
    assert actions.report.passed, actions.report.reasons


def test_duality_pairing_is_nondegenerate(z2_algebroid: MMHA, z2_dual_model: DualModel) -> None:
    pairing = duality_pairing(z2_algebroid, z2_dual_model)

    assert pairing.report.passed, pairing.report.reasons
    assert pairing.matrix.rank() == z2_algebroid.dim


def test_dual_of_transformation_groupoid_is_convolution_algebra(
    z2_action: ActionData, z2_dual_model: DualModel
) -> None:
    report = dual_presentation_report(z2_action, z2_dual_model)

    assert report.passed, report.reasons


def test_biduality(z2_algebroid: MMHA, z2_dual_model: DualModel) -> None:
    report = biduality_check(z2_algebroid, z2_dual_model)

    assert report.passed, report.reasons
    assert report.check("same_dimension").passed


def test_dual_of_noncommutative_bundle() -> None:
    algebroid = build_algebroid(build_instance("q8-bundle").measured)

    model = build_dual_algebroid(algebroid, verify_dual=True)

    assert model.report.passed, model.report.reasons
    assert verify_mmha(model.model_mmha).passed


def test_heisenberg_identification_for_canonical_coideal(canonical_z2_algebroid: MMHA) -> None:
    instance = build_instance("canonical-z2")
    assert instance.coideal is not None
    model = build_dual_algebroid(canonical_z2_algebroid)

    found = heisenberg_identification(instance.measured, instance.coideal.inclusion, model)

    assert found.report.passed, found.report.reasons
    assert found.bijective
    assert found.report.check("onto_when_full").passed


def test_heisenberg_embedding_of_proper_quotient(s3_z3_coideal: QuotientCoideal) -> None:
    found = heisenberg_identification(s3_z3_coideal.measured, s3_z3_coideal.inclusion)

    assert found.report.check("injective").passed
    assert not found.bijective
    assert found.report.passed, found.report.reasons


def test_left_presentation_needs_conversion(z2_instance: CatalogInstance) -> None:
    left = left_identification(right_measured_to_left(z2_instance.measured))

    with pytest.raises(PreconditionError):
        build_dual_algebroid(left.left)

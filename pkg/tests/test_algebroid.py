from __future__ import annotations

from dataclasses import replace

import pytest

from aqt_groupoids.algebra import AlgebraMap, center, check_algebra_map
from aqt_groupoids.algebroid import (
    MMHA,
    alpha_beta,
    build_algebroid,
    check_mmha_morphism,
    check_smash_product,
    heisenberg_algebra,
    is_kac,
    left_identification,
    mmha_modular_data,
    same_mmha,
    unimodular,
    unit_morphism,
    variants,
    verify_mmha,
)
from aqt_groupoids.catalog import (
    CatalogInstance,
    build_instance,
    closed_form_report,
    function_algebra,
    load_group,
    reference_tables,
)
from aqt_groupoids.errors import DimensionMismatchError, VerificationFailure
from aqt_groupoids.linear import ONE, ZERO, LinMap, scalar
from aqt_groupoids.yd import right_measured_to_left


def test_transformation_groupoid_algebroid_passes(z2_algebroid: MMHA) -> None:
    report = verify_mmha(z2_algebroid, exhaustive=True)

    assert report.passed, report.reasons
    assert z2_algebroid.dim == 4
    assert z2_algebroid.base_b.dim == 2
    assert report.check("antipode_on_bases").passed
    assert report.check("coassociative_bc").passed
    assert report.check("mu_b_positive_faithful").passed


def test_closed_forms_match_construction(z2_algebroid: MMHA) -> None:
    tables = reference_tables()["z2-two-points"]

    assert len(tables.composable) == 8
    report = closed_form_report(z2_algebroid, tables)
    assert report.passed, report.reasons


def test_transformation_groupoid_is_unimodular_and_kac(z2_algebroid: MMHA) -> None:
    assert unimodular(z2_algebroid)

    verdict = is_kac(z2_algebroid)

    assert verdict.kac
    assert verdict.group_kac
    assert verdict.tracial
    assert verdict.report.passed, verdict.report.reasons


def test_modular_data_is_trivial_for_tracial_weights(z2_algebroid: MMHA) -> None:
    data = mmha_modular_data(z2_algebroid)

    assert data.report.passed, data.report.reasons
    assert data.sigma_b.map.is_identity()
    assert data.report.check("sigma_b_formula").passed


def test_unit_morphism_embeds_the_quantum_group(z2_algebroid: MMHA) -> None:
    morphism = unit_morphism(z2_algebroid)

    report = check_mmha_morphism(morphism)

    assert report.passed, report.reasons
    assert morphism.map.map.rank() == function_algebra(load_group("z2")).dim


def test_variants_pass_and_coopposite_is_an_involution(z2_algebroid: MMHA) -> None:
    found = variants(z2_algebroid)

    for part in (found.co, found.op, found.opco):
        assert verify_mmha(part).passed
    assert same_mmha(variants(found.co).co, z2_algebroid)


def test_construction_pieces(z2_algebroid: MMHA, z2_instance: CatalogInstance) -> None:
    prov = z2_algebroid.provenance
    assert prov is not None

    assert check_smash_product(prov.smash).passed
    pieces = alpha_beta(prov.smash, z2_instance.measured.yd)
    assert pieces.report.passed, pieces.report.reasons
    assert pieces.report.check("spanning").passed


def test_heisenberg_algebra_is_a_full_matrix_algebra() -> None:
    sp = heisenberg_algebra(function_algebra(load_group("z3")))

    report = check_smash_product(sp)

    assert report.passed, report.reasons
    assert sp.total.dim == 9
    assert not sp.total.is_commutative


def test_heisenberg_algebra_of_z2_has_scalar_center() -> None:
    sp = heisenberg_algebra(function_algebra(load_group("z2")))

    assert sp.total.dim == 4
    assert not sp.total.is_commutative
    assert center(sp.total).dim == 1


@pytest.mark.parametrize("name", ["z2-two-points", "trivial-z3", "q8-bundle"])
def test_left_identification(name: str) -> None:
    left = right_measured_to_left(build_instance(name).measured)

    found = left_identification(left)

    assert found.report.passed, found.report.reasons
    assert found.report.check("bijective").passed
    assert verify_mmha(found.left).passed


@pytest.mark.parametrize("name", ["trivial-z3", "canonical-z2", "q8-bundle"])
def test_other_catalog_algebroids_pass(name: str) -> None:
    algebroid = build_algebroid(build_instance(name).measured)

    report = verify_mmha(algebroid)

    assert report.passed, report.reasons


def test_trivial_yd_gives_the_quantum_group_back() -> None:
    algebroid = build_algebroid(build_instance("trivial-s3").measured)

    assert algebroid.dim == 6
    assert algebroid.base_b.dim == 1
    assert verify_mmha(algebroid).passed


def test_scaled_t_c_breaks_unitality(z2_algebroid: MMHA) -> None:
    broken = replace(z2_algebroid, t_c=z2_algebroid.t_c.scale(scalar(2)))

    report = verify_mmha(broken, exhaustive=True)

    assert not report.passed
    result = report.check("t_unital")
    assert not result.passed
    assert result.witness is not None


def test_identity_antipode_is_caught(z2_algebroid: MMHA) -> None:
    broken = replace(z2_algebroid, antipode=LinMap.identity(z2_algebroid.dim))

    report = verify_mmha(broken, exhaustive=True)

    assert not report.check("antipode_on_bases").passed
    tables = reference_tables()["z2-two-points"]
    assert not closed_form_report(broken, tables).check("antipode").passed


def test_t_c_twisted_by_an_automorphism_breaks_the_antipode(z2_algebroid: MMHA) -> None:
    swap = LinMap.from_rows([[ZERO, ONE], [ONE, ZERO]])
    base_c = z2_algebroid.base_c
    assert check_algebra_map(AlgebraMap(base_c, base_c, swap)).passed
    broken = replace(z2_algebroid, t_c=z2_algebroid.t_c.compose(swap))

    report = verify_mmha(broken, exhaustive=True)

    assert not report.passed
    assert not report.check("antipode_on_bases").passed


def test_wrong_shape_is_rejected(z2_algebroid: MMHA) -> None:
    with pytest.raises(DimensionMismatchError):
        replace(z2_algebroid, antipode=LinMap.identity(3))


def test_non_invariant_integral_blocks_construction(z2_instance: CatalogInstance) -> None:
    measured = z2_instance.measured
    skewed = replace(
        measured,
        mu=replace(measured.mu, covector={0: scalar(1), 1: scalar(3)}),
    )

    with pytest.raises(VerificationFailure):
        build_algebroid(skewed)

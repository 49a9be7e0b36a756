from __future__ import annotations

from dataclasses import replace

import pytest

from aqt_groupoids.catalog import (
    CATALOG,
    ActionData,
    GradedAlgebraData,
    GroupData,
    QuotientCoideal,
    bundle_gamma_report,
    canonical_yd,
    check_graded,
    closed_form_tables,
    coset_action,
    degenerate_bundle,
    function_algebra,
    get_entry,
    graded_bundle_yd,
    instance_from_document,
    list_instances,
    quotient_coideal_yd,
    reference_tables,
    transformation_groupoid_yd,
    transformation_integral_cone,
    validate_action,
    validate_group,
)
from aqt_groupoids.errors import (
    GroupAxiomError,
    InputError,
    PreconditionError,
    VerificationFailure,
)
from aqt_groupoids.linear import ONE, LinMap, vec_equal
from aqt_groupoids.serialization import ActionSpec
from aqt_groupoids.yd import MeasuredYD, check_yd_integral


def test_bundled_groups_satisfy_the_axioms(groups: dict[str, GroupData]) -> None:
    for g in groups.values():
        assert validate_group(g) is g
    assert groups["q8"].order == 8
    assert not groups["q8"].is_abelian
    assert groups["z2xz2"].is_abelian


def test_identity_law_violation_has_a_witness() -> None:
    broken = GroupData("broken", ((1, 0), (0, 1)), 0, (0, 1))

    with pytest.raises(GroupAxiomError) as excinfo:
        validate_group(broken)

    assert excinfo.value.witness == (0, 0)


def test_inverse_law_violation(groups: dict[str, GroupData]) -> None:
    z3 = groups["z3"]
    broken = replace(z3, inverse=(0, 1, 2))

    with pytest.raises(GroupAxiomError, match="inverse"):
        validate_group(broken)


def test_action_must_fix_points_under_identity(z2_action: ActionData) -> None:
    broken = replace(z2_action, table=((1, 0), (1, 0)))

    with pytest.raises(GroupAxiomError):
        validate_action(broken)


def test_coset_action_and_subgroups(groups: dict[str, GroupData]) -> None:
    s3 = groups["s3"]

    action = coset_action(s3, (0, 1))

    assert action.set_size == 3
    assert len(action.orbits) == 1
    assert s3.is_subgroup((0, 4, 5))
    assert not s3.is_subgroup((0, 1, 2))
    assert len(s3.right_cosets((0, 4, 5))) == 2


@pytest.mark.parametrize("stem_name", ["z2-two-points", "s3-three-cosets"])
def test_integral_cone_is_spanned_by_orbits(stem_name: str) -> None:
    instance = CATALOG[stem_name].build(None)
    assert instance.action is not None

    cone = transformation_integral_cone(instance.action, instance.measured)

    assert cone.report.passed, cone.report.reasons
    assert cone.space.dim == len(instance.action.orbits)


def test_integral_cone_with_two_orbits(groups: dict[str, GroupData]) -> None:
    z2 = groups["z2"]
    action = validate_action(
        ActionData("z2-fixed-and-free", z2, ("a", "b", "c"), ((0, 1, 2), (0, 2, 1)))
    )
    measured = transformation_groupoid_yd(action)

    cone = transformation_integral_cone(action, measured)

    assert cone.space.dim == 2
    assert cone.report.passed, cone.report.reasons


def test_reference_tables() -> None:
    tables = reference_tables()

    assert set(tables) == {"z2-two-points", "s3-three-cosets"}
    z2 = tables["z2-two-points"]
    assert z2.arrows == 4
    assert len(z2.composable) == 8
    assert len(z2.delta_b) == 8
    s3 = tables["s3-three-cosets"]
    assert s3.arrows == 18
    assert len(s3.composable) == 18 * 6


def test_closed_form_tables_follow_the_weights(z2_action: ActionData) -> None:
    tables = closed_form_tables(z2_action)

    assert tables.points == 2
    assert tables.mu_b == [(0, "1"), (1, "1")]


def test_q8_bundle_is_graded(q8_bundle: GradedAlgebraData) -> None:
    report = check_graded(q8_bundle)

    assert report.passed, report.reasons
    assert len(q8_bundle.degree_part(0)) == 2


def test_q8_bundle_gamma_is_rho(q8_bundle: GradedAlgebraData) -> None:
    measured = graded_bundle_yd(q8_bundle)

    assert bundle_gamma_report(q8_bundle, measured).passed


def test_q8_bundle_dual_action_is_rho(q8_bundle: GradedAlgebraData) -> None:
    action = graded_bundle_yd(q8_bundle).yd.dual_action
    n, d = q8_bundle.base.dim, q8_bundle.group.order

    assert action.map.shape == (n, n * d)
    for i in range(n):
        for h in range(d):
            assert vec_equal(action.act({i: ONE}, {h: ONE}), q8_bundle.rho[h].columns[i])


def test_wrong_rho_breaks_exchange(q8_bundle: GradedAlgebraData) -> None:
    rho = list(q8_bundle.rho)
    rho[1] = LinMap.identity(8)
    broken = replace(q8_bundle, rho=tuple(rho))

    report = check_graded(broken)

    assert not report.check("exchange").passed
    with pytest.raises(VerificationFailure):
        graded_bundle_yd(broken)


def test_wrong_grading_is_not_multiplicative(q8_bundle: GradedAlgebraData) -> None:
    grading = list(q8_bundle.grading)
    grading[2] = 0
    broken = replace(q8_bundle, grading=tuple(grading))

    report = check_graded(broken)

    result = report.check("grading_multiplicative")
    assert not result.passed
    assert result.witness is not None


def test_state_off_degree_e_is_rejected(q8_bundle: GradedAlgebraData) -> None:
    with pytest.raises(PreconditionError):
        graded_bundle_yd(q8_bundle, {2: ONE})


def test_degenerate_bundle(groups: dict[str, GroupData]) -> None:
    data = degenerate_bundle(groups["z3"])

    assert check_graded(data).passed
    assert graded_bundle_yd(data).yd.group.dim == 1
    with pytest.raises(PreconditionError):
        degenerate_bundle(groups["s3"])


def test_quotient_coideal_is_functions_on_cosets(s3_z3_coideal: QuotientCoideal) -> None:
    assert s3_z3_coideal.report.passed, s3_z3_coideal.report.reasons
    assert s3_z3_coideal.inclusion.cols == 2
    assert s3_z3_coideal.report.check("cosets_fixed").passed
    assert s3_z3_coideal.report.check("integral.theta_invariant").passed


def test_quotient_extremes(groups: dict[str, GroupData]) -> None:
    s3 = groups["s3"]

    assert canonical_yd(s3).inclusion.cols == 6
    assert quotient_coideal_yd(s3, range(6)).inclusion.cols == 1
    with pytest.raises(InputError):
        quotient_coideal_yd(s3, (0, 1, 2))


def test_restricted_counit_is_not_invariant(
    groups: dict[str, GroupData], s3_z3_coideal: QuotientCoideal
) -> None:
    big = function_algebra(groups["s3"])
    n_alg = s3_z3_coideal.measured.yd.n
    counit = big.counit.pullback(s3_z3_coideal.inclusion, n_alg, label="ε|")

    report = check_yd_integral(MeasuredYD(s3_z3_coideal.measured.yd, counit))

    assert not report.check("theta_invariant").passed


def test_registry_lookup() -> None:
    names = list_instances()

    assert names == sorted(names)
    for name in ("z2-two-points", "s3-three-cosets", "q8-bundle", "s3-z3-quotient"):
        assert name in names
    assert get_entry("q8-bundle").description
    with pytest.raises(InputError):
        get_entry("no-such-instance")


def test_instance_from_action_document_skips_weight_checks() -> None:
    spec = ActionSpec(
        name="skewed",
        group="z2",
        points=["a", "b"],
        action_table=[[0, 1], [1, 0]],
        weights=["1", "2"],
    )

    instance = instance_from_document(spec)

    assert not check_yd_integral(instance.measured).check("theta_invariant").passed

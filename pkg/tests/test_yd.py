from __future__ import annotations

import pytest

from aqt_groupoids.algebra import AlgebraMap, check_module_algebra, trivial_action
from aqt_groupoids.catalog import (
    ActionData,
    build_instance,
    function_algebra,
    group_aqg_pair,
    load_group,
    transformation_groupoid_yd,
)
from aqt_groupoids.errors import (
    DimensionMismatchError,
    GammaIncompatibleError,
    NotYetterDrinfeldError,
    PreconditionError,
)
from aqt_groupoids.linear import ONE, ZERO, LinMap, scalar, vec_equal
from aqt_groupoids.yd import (
    Coaction,
    action_to_coaction,
    canonical_automorphisms,
    check_coaction,
    check_left_yd,
    check_left_yd_integral,
    check_right_right,
    check_yd,
    check_yd_integral,
    check_yd_morphism,
    coaction_to_action,
    dual_conjugate_involution_report,
    gamma_maps,
    is_tracial,
    left_canonical_automorphisms,
    left_measured_to_right,
    opposite_conjugate_actions,
    require_yd,
    right_measured_to_left,
    right_right_to_yd,
    trivial_coaction,
    trivial_measured_yd,
    yd_algebra,
    yd_to_right_right,
)

INSTANCES = ["z2-two-points", "trivial-s3", "canonical-s3", "q8-bundle", "s3-z3-quotient"]


@pytest.mark.parametrize("name", INSTANCES)
def test_catalog_instances_are_braided_commutative(name: str) -> None:
    measured = build_instance(name).measured

    report = check_yd(measured.yd, packed=True)

    assert report.passed, report.reasons
    assert report.check("yd_packed").passed


@pytest.mark.parametrize("name", INSTANCES)
def test_canonical_automorphism_checks(name: str) -> None:
    measured = build_instance(name).measured

    found = canonical_automorphisms(measured.yd, mu=measured.mu)

    assert found.report.passed, found.report.reasons
    for index in range(1, 10):
        assert found.report.check(f"ca{index}").passed


def test_ca9_only_with_integral(z2_action: ActionData) -> None:
    measured = transformation_groupoid_yd(z2_action)

    report = canonical_automorphisms(measured.yd).report

    with pytest.raises(KeyError):
        report.check("ca9")
    assert report.check("ca8").passed


@pytest.mark.parametrize("name", INSTANCES)
def test_integral_checks_pass_and_gamma_is_trivial(name: str) -> None:
    measured = build_instance(name).measured

    report = check_yd_integral(measured)

    assert report.passed, report.reasons
    gamma, gamma_hat = gamma_maps(measured.yd)
    assert gamma.is_identity()
    assert gamma_hat.is_identity()
    assert is_tracial(measured)


def test_trivial_yd_over_function_algebra() -> None:
    measured = trivial_measured_yd(function_algebra(load_group("q8")))

    assert measured.yd.n.dim == 1
    assert check_yd(measured.yd).passed
    assert check_yd_integral(measured).passed


@pytest.mark.parametrize("name", INSTANCES[:4])
def test_left_presentation_agrees(name: str) -> None:
    measured = build_instance(name).measured

    left = right_measured_to_left(measured)

    assert check_left_yd(left.yd).passed
    report = left_canonical_automorphisms(left.yd, mu=left.mu)
    assert report.passed, report.reasons
    assert report.check("ca9").passed
    assert check_left_yd_integral(left).passed
    back = left_measured_to_right(left)
    assert back.yd.n.same_structure(measured.yd.n)
    assert check_yd(back.yd).passed


@pytest.mark.parametrize("name", ["z2-two-points", "q8-bundle"])
def test_right_right_presentation_round_trip(name: str) -> None:
    y = build_instance(name).measured.yd

    rr = yd_to_right_right(y)

    assert check_right_right(rr).passed
    again = right_right_to_yd(rr)
    assert all(
        vec_equal(a, b)
        for a, b in zip(again.theta.map.columns, y.theta.map.columns, strict=True)
    )


@pytest.mark.parametrize("name", ["z2-two-points", "q8-bundle"])
def test_dual_conjugate_is_an_involution(name: str) -> None:
    measured = build_instance(name).measured

    report = dual_conjugate_involution_report(measured)

    assert report.passed, report.reasons


def test_identity_is_a_yd_morphism() -> None:
    y = build_instance("s3-three-cosets").measured.yd
    identity = AlgebraMap(y.n, y.n, LinMap.identity(y.n.dim), name="id")

    assert check_yd_morphism(identity, y, y).passed


def test_point_swap_is_a_yd_automorphism() -> None:
    y = build_instance("z2-two-points").measured.yd
    swap = AlgebraMap(y.n, y.n, LinMap.from_rows([[ZERO, ONE], [ONE, ZERO]]), name="swap")

    report = check_yd_morphism(swap, y, y)

    # Z/2 is abelian and acts by the swap itself
    assert report.passed, report.reasons


def test_trivial_action_on_noncommutative_bundle_is_not_braided() -> None:
    y = build_instance("q8-bundle").measured.yd
    broken = yd_algebra(y.group, y.n, y.theta.map, trivial_action(y.group, y.n).map)

    report = check_yd(broken)

    assert not report.passed
    assert not report.check("bc_left").passed
    witness = report.check("bc_left").witness
    assert witness is not None and witness.lhs != witness.rhs
    with pytest.raises(NotYetterDrinfeldError):
        require_yd(broken)
    with pytest.raises(NotYetterDrinfeldError):
        canonical_automorphisms(broken)


def test_non_invariant_weights_fail_theta_invariance(z2_action: ActionData) -> None:
    measured = transformation_groupoid_yd(
        z2_action, [scalar(1), scalar(2)], check_weights=False, verify=False
    )

    report = check_yd_integral(measured)

    assert not report.check("theta_invariant").passed
    assert report.check("mu_positive").passed


def test_non_invariant_weights_are_rejected_up_front(z2_action: ActionData) -> None:
    with pytest.raises(PreconditionError):
        transformation_groupoid_yd(z2_action, [scalar(1), scalar(2)])
    with pytest.raises(PreconditionError):
        transformation_groupoid_yd(z2_action, [scalar(0), scalar(0)])


def test_weight_count_must_match_points(z2_action: ActionData) -> None:
    with pytest.raises(DimensionMismatchError):
        transformation_groupoid_yd(z2_action, [scalar(1)])


def _same_columns(f: LinMap, g: LinMap) -> bool:
    return f.shape == g.shape and all(
        vec_equal(a, b) for a, b in zip(f.columns, g.columns, strict=True)
    )


def test_trivial_coaction_gives_trivial_action() -> None:
    pair = group_aqg_pair(load_group("s3"))
    k = pair.functions
    coaction = trivial_coaction(k, k.alg)

    action = coaction_to_action(coaction, pair.pairing)

    for m in range(k.dim):
        for w in range(pair.group_algebra.dim):
            eps_hat = pair.group_algebra.counit.on_basis(w)
            assert vec_equal(action.act({m: ONE}, {w: ONE}), {m: eps_hat})


def test_transformation_coaction_acts_by_translation(z2_action: ActionData) -> None:
    y = build_instance("z2-two-points").measured.yd
    pair = group_aqg_pair(z2_action.group)

    action = coaction_to_action(y.theta, pair.pairing)

    assert check_module_algebra(action).passed
    for point in range(z2_action.set_size):
        for g in range(z2_action.group.order):
            moved = {x: ONE for x in range(z2_action.set_size) if z2_action.act(g, x) == point}
            assert vec_equal(action.act({point: ONE}, {g: ONE}), moved)


@pytest.mark.parametrize("name", ["z2-two-points", "s3-three-cosets", "canonical-s3"])
def test_coaction_action_round_trip(name: str) -> None:
    y = build_instance(name).measured.yd
    group_name = "z2" if name.startswith("z2") else "s3"
    pairing = group_aqg_pair(load_group(group_name)).pairing

    action = coaction_to_action(y.theta, pairing)
    back = action_to_coaction(action, pairing, y.group)

    assert _same_columns(back.map, y.theta.map)
    assert check_coaction(back).passed


def test_comultiplication_as_coaction_has_opposite_comultiplication_as_conjugate() -> None:
    k = function_algebra(load_group("s3"))
    delta = Coaction(k, k.alg, k.comul, label="Δ")
    assert check_coaction(delta).passed

    found = opposite_conjugate_actions(delta, k.antipode_power(-2))

    assert found.report.passed, found.report.reasons
    conjugate_group = k.conjugate()
    assert found.opposite_algebra.same_structure(conjugate_group.alg)
    assert _same_columns(found.conjugate.map, conjugate_group.comul)
    assert found.report.check("antipode_relation").passed


@pytest.mark.parametrize("name", ["z2-two-points", "s3-three-cosets"])
def test_opposite_and_conjugate_of_catalog_coaction(name: str) -> None:
    theta = build_instance(name).measured.yd.theta

    found = opposite_conjugate_actions(theta, LinMap.identity(theta.algebra.dim))

    assert found.report.passed, found.report.reasons
    assert found.report.check("opposite.comodule").passed
    assert found.report.check("conjugate.comodule").passed


def test_trivial_coaction_variants_are_trivial() -> None:
    k = function_algebra(load_group("z3"))
    n_alg = build_instance("s3-three-cosets").measured.yd.n

    found = opposite_conjugate_actions(trivial_coaction(k, n_alg), LinMap.identity(n_alg.dim))

    assert found.report.passed, found.report.reasons
    expected = trivial_coaction(k, n_alg).map
    assert _same_columns(found.opposite.map, expected)
    assert _same_columns(found.conjugate.map, expected)


def test_incompatible_gamma_is_rejected() -> None:
    theta = build_instance("s3-three-cosets").measured.yd.theta
    swap = LinMap.from_function(3, 3, lambda x: {(1, 0, 2)[x]: ONE})

    with pytest.raises(GammaIncompatibleError):
        opposite_conjugate_actions(theta, swap)

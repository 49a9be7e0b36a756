from __future__ import annotations

import itertools
from dataclasses import replace

import pytest

from aqt_groupoids.algebra import (
    AlgebraMap,
    Functional,
    StarAlgebra,
    adjoint_left_action,
    adjoint_right_action,
    aqg_isomorphism_report,
    build_dual,
    center,
    check_algebra_axioms,
    check_algebra_map,
    check_module_algebra,
    convolution_left_action,
    convolution_right_action,
    double_dual_report,
    functional_is_faithful,
    functional_is_positive,
    functional_is_self_adjoint,
    gamma_opposite,
    modular_automorphism,
    modular_data,
    multiplicative_unitary,
    variants,
    verify_aqg,
)
from aqt_groupoids.catalog import (
    GROUP_NAMES,
    GroupData,
    function_algebra,
    group_algebra,
    group_aqg_pair,
    trivial_group,
)
from aqt_groupoids.errors import GammaIncompatibleError, NotFaithfulError
from aqt_groupoids.linear import I, ONE, ZERO, LinMap, psd_check, scalar, vec_equal
from aqt_groupoids.linear.scalars import is_nonnegative

GRID = (ZERO, ONE, scalar(-1), I)


@pytest.mark.parametrize("name", GROUP_NAMES)
def test_group_pair_passes_every_aqg_check(groups: dict[str, GroupData], name: str) -> None:
    pair = group_aqg_pair(groups[name])

    assert pair.report.passed, pair.report.reasons
    assert pair.report.check("functions.t_rho_bijective").passed
    assert pair.report.check("dual_structure_tensors").passed


@pytest.mark.parametrize("name", GROUP_NAMES)
def test_double_dual_and_multiplicative_unitary(groups: dict[str, GroupData], name: str) -> None:
    pair = group_aqg_pair(groups[name])

    assert double_dual_report(pair.functions).passed
    assert double_dual_report(pair.group_algebra).passed
    unitary = multiplicative_unitary(pair.pairing)
    assert unitary.report.passed, unitary.report.reasons
    assert unitary.report.check("adjoint_action").passed


def test_z2_counit_and_antipode(groups: dict[str, GroupData]) -> None:
    k = function_algebra(groups["z2"])

    assert k.dim == 2
    assert k.eps({0: ONE}) == ONE
    assert not k.eps({1: ONE})
    assert k.S({1: ONE}) == {1: ONE}
    assert k.is_kac


def test_group_algebra_of_s3_is_noncommutative(groups: dict[str, GroupData]) -> None:
    c = group_algebra(groups["s3"])

    assert c.dim == 6
    assert not c.alg.is_commutative
    assert center(c.alg).dim == 3


def test_trivial_group_gives_scalars() -> None:
    pair = group_aqg_pair(trivial_group())

    assert pair.functions.dim == 1
    assert pair.group_algebra.dim == 1
    assert pair.report.passed


def test_dual_of_functions_is_group_algebra(groups: dict[str, GroupData]) -> None:
    g = groups["q8"]
    dual = build_dual(function_algebra(g))

    assert dual.report.passed
    assert dual.plain.alg.same_structure(group_algebra(g).alg)


@pytest.mark.parametrize("name", ["z3", "s3"])
def test_variants_pass_and_antipode_intertwines(groups: dict[str, GroupData], name: str) -> None:
    found = variants(group_algebra(groups[name]))

    assert found.report.passed, found.report.reasons
    assert found.report.check("antipode_iso.antipode_intertwined").passed


def test_modular_data_of_kac_group(groups: dict[str, GroupData]) -> None:
    data = modular_data(function_algebra(groups["s3"]))

    assert data.report.passed, data.report.reasons
    assert data.sigma.map.is_identity()


def _corrupt_product(a: StarAlgebra, i: int, j: int, value) -> StarAlgebra:
    mult = [list(row) for row in a.mult]
    mult[i][j] = value
    return replace(a, mult=tuple(tuple(row) for row in mult))


def test_corrupted_structure_tensor_is_caught(groups: dict[str, GroupData]) -> None:
    k = function_algebra(groups["z2"])
    broken = _corrupt_product(k.alg, 0, 0, {0: scalar(2)})

    report = check_algebra_axioms(broken)

    assert not report.passed
    witness = report.check("unit_left").witness
    assert witness is not None
    assert witness.basis == [0]
    assert not verify_aqg(replace(k, alg=broken)).check("algebra.unit_left").passed


def test_corrupted_antipode_is_caught(groups: dict[str, GroupData]) -> None:
    k = function_algebra(groups["z3"])
    broken = replace(k, antipode=LinMap.identity(3))

    report = verify_aqg(broken)

    assert not report.passed
    result = report.check("antipode_left")
    assert not result.passed
    assert result.witness is not None
    assert result.witness.lhs != result.witness.rhs


def test_check_algebra_map_flags_non_multiplicative_map(groups: dict[str, GroupData]) -> None:
    k = function_algebra(groups["z2"]).alg
    doubled = AlgebraMap(k, k, LinMap.identity(2).scale(scalar(2)), name="2·id")

    report = check_algebra_map(doubled)

    assert not report.passed
    assert check_algebra_map(AlgebraMap(k, k, LinMap.identity(2), name="id")).passed


def _same_map(f: LinMap, g: LinMap) -> bool:
    return f.shape == g.shape and all(
        vec_equal(x, y) for x, y in zip(f.columns, g.columns, strict=True)
    )


def _trace(groups: dict[str, GroupData], name: str) -> Functional:
    g = groups[name]
    return Functional.from_values(group_algebra(g).alg, {g.identity: ONE}, "τ")


def test_positivity_examples(groups: dict[str, GroupData]) -> None:
    k = function_algebra(groups["z2"])

    assert functional_is_positive(k.counit)
    assert functional_is_positive(_trace(groups, "z2"))
    assert not functional_is_positive(k.haar.scaled(scalar(-1)))


@pytest.mark.parametrize("name", ["z3", "s3"])
def test_positive_functionals_are_nonnegative_on_a_grid(
    groups: dict[str, GroupData], name: str
) -> None:
    k = function_algebra(groups[name])

    for f in (k.haar, k.counit, _trace(groups, name)):
        assert functional_is_positive(f)
        assert psd_check(f.gram)
        alg = f.algebra
        for coeffs in itertools.product(GRID, repeat=3):
            a = {i: x for i, x in enumerate(coeffs) if x}
            assert is_nonnegative(f(alg.mul(a, alg.adjoint(a)))), coeffs


def test_negated_haar_is_negative_on_the_unit(groups: dict[str, GroupData]) -> None:
    k = function_algebra(groups["z2"])
    negated = k.haar.scaled(scalar(-1))

    assert not functional_is_positive(negated)
    assert not is_nonnegative(negated(k.alg.unit))


def test_faithfulness(groups: dict[str, GroupData]) -> None:
    k = function_algebra(groups["z2"])
    evaluation = Functional.from_values(k.alg, {0: ONE}, "ev_e")

    assert functional_is_faithful(k.haar)
    assert functional_is_faithful(_trace(groups, "s3"))
    assert not functional_is_faithful(evaluation)
    with pytest.raises(NotFaithfulError):
        modular_automorphism(evaluation)


def test_modular_automorphism_of_traces_is_identity(groups: dict[str, GroupData]) -> None:
    k2 = function_algebra(groups["z2"])
    weighted = Functional.from_values(k2.alg, {0: ONE, 1: scalar(2)}, "w")

    for f in (function_algebra(groups["s3"]).haar, _trace(groups, "s3"), weighted):
        sigma = modular_automorphism(f)
        assert sigma is not None
        assert sigma.map.is_identity()


def test_modular_automorphism_of_a_non_tracial_weight(groups: dict[str, GroupData]) -> None:
    # τ(· h) with h = 2 + λ_t positive, invertible and not central; σ is conjugation by h
    tau = _trace(groups, "s3")
    alg = tau.algebra
    f = tau.right_weighted({0: scalar(2), 1: ONE}, label="τ_h")

    sigma = modular_automorphism(f)

    assert sigma is not None
    assert not sigma.map.is_identity()
    for i in range(alg.dim):
        assert f(sigma.map.columns[i]) == f.on_basis(i)
        for j in range(alg.dim):
            assert f(alg.mult[i][j]) == f(alg.mul({j: ONE}, sigma.map.columns[i]))


def test_gamma_opposite_of_group_algebra(groups: dict[str, GroupData]) -> None:
    s3 = groups["s3"]
    alg = group_algebra(s3).alg

    op = gamma_opposite(alg, LinMap.identity(alg.dim))
    inverse = LinMap.from_function(alg.dim, alg.dim, lambda x: {s3.inv(x): ONE})

    assert check_algebra_axioms(op).passed
    assert not op.same_structure(alg)
    assert check_algebra_map(AlgebraMap(op, alg, inverse, name="g -> g⁻¹")).passed


def test_double_gamma_opposite_gives_the_algebra_back(groups: dict[str, GroupData]) -> None:
    s3 = groups["s3"]
    alg = group_algebra(s3).alg
    # conjugation by a transposition: an automorphism with γ∘*∘γ∘* = id
    gamma = LinMap.from_function(
        alg.dim, alg.dim, lambda x: {s3.mul(s3.mul(1, x), s3.inv(1)): ONE}
    )
    gamma_hat = gamma.inverse()
    assert gamma_hat is not None

    op = gamma_opposite(alg, gamma)
    back = gamma_opposite(op, gamma_hat)

    assert check_algebra_axioms(op).passed
    assert back.same_structure(alg)


def test_gamma_opposite_rejects_non_automorphisms(groups: dict[str, GroupData]) -> None:
    alg = function_algebra(groups["z2"]).alg

    with pytest.raises(GammaIncompatibleError):
        gamma_opposite(alg, LinMap.identity(2).scale(scalar(2)))


def test_opposite_functional_transfer(groups: dict[str, GroupData]) -> None:
    k = function_algebra(groups["z2"])
    tau = _trace(groups, "s3")
    evaluation = Functional.from_values(k.alg, {0: ONE}, "ev_e")

    for f in (tau, k.haar, evaluation):
        op = gamma_opposite(f.algebra, LinMap.identity(f.algebra.dim))
        f_op = Functional(op, dict(f.covector), f"{f.label}°")
        assert functional_is_faithful(f_op) == functional_is_faithful(f)
        assert functional_is_self_adjoint(f_op) == functional_is_self_adjoint(f)


@pytest.mark.parametrize("name", ["s3", "q8"])
def test_coopposite_and_conjugate_are_involutions(
    groups: dict[str, GroupData], name: str
) -> None:
    for g in (function_algebra(groups[name]), group_algebra(groups[name])):
        identity = LinMap.identity(g.dim)
        twice_co = g.coopposite().coopposite()
        twice_conj = g.conjugate().conjugate()

        assert _same_map(twice_co.comul, g.comul)
        assert aqg_isomorphism_report(identity, twice_co, g, label="(G°)°").passed
        assert twice_conj.alg.same_structure(g.alg)
        assert aqg_isomorphism_report(identity, twice_conj, g, label="(Gᶜ)ᶜ").passed


@pytest.mark.parametrize("name", ["z3", "s3"])
def test_adjoint_actions_are_module_algebra_actions(
    groups: dict[str, GroupData], name: str
) -> None:
    for g in (function_algebra(groups[name]), group_algebra(groups[name])):
        for action in (adjoint_right_action(g), adjoint_left_action(g)):
            report = check_module_algebra(action)
            assert report.passed, report.reasons
            assert report.check("star_law").passed


def test_adjoint_action_of_group_algebra_is_conjugation(groups: dict[str, GroupData]) -> None:
    s3 = groups["s3"]
    c = group_algebra(s3)

    right = adjoint_right_action(c)
    left = adjoint_left_action(c)

    for x in range(c.dim):
        for y in range(c.dim):
            assert vec_equal(right.act({y: ONE}, {x: ONE}), {s3.mul(s3.mul(s3.inv(x), y), x): ONE})
            assert vec_equal(left.act({y: ONE}, {x: ONE}), {s3.mul(s3.mul(x, y), s3.inv(x)): ONE})


@pytest.mark.parametrize("name", ["z2", "s3"])
def test_convolution_actions_are_module_algebra_actions(
    groups: dict[str, GroupData], name: str
) -> None:
    pair = group_aqg_pair(groups[name])

    for action in (convolution_right_action(pair.pairing), convolution_left_action(pair.pairing)):
        report = check_module_algebra(action)
        assert report.passed, report.reasons
        assert report.check("multiplicative").passed
        assert report.check("star_law").passed


def test_right_convolution_translates_functions(groups: dict[str, GroupData]) -> None:
    s3 = groups["s3"]
    action = convolution_right_action(group_aqg_pair(s3).pairing)

    # δ_x ◀ λ_g = δ_{g⁻¹x}
    for x in range(s3.order):
        for g in range(s3.order):
            assert vec_equal(action.act({x: ONE}, {g: ONE}), {s3.mul(s3.inv(g), x): ONE})

"""Braided commutative Yetter–Drinfeld *-algebras over 𝔾ᶜ and their canonical automorphisms.

Beginner terms used in this file:
- ``θ``: the action of 𝔾ᶜ, stored as ``N -> H⊗N`` with legs ``m₋₁⊗m₀``.
- ``◁`` (dual action): the right action of ``(H, Δ)`` on ``N`` induced by θ̂.
- (YD): ``θ(m ◁ h) = S⁻¹(h₃) m₋₁ h₁ ⊗ (m₀ ◁ h₂)``.
- (BC): ``mn = (n ◁ m₋₁) m₀ = n₀ (m ◁ S(n₋₁))``.
- γ, γ̂: ``γ(m) = m₀ ◁ S⁻¹(m₋₁)`` and ``γ̂(m) = m₀ ◁ S²(m₋₁)``.
- Yetter–Drinfeld integral μ: positive faithful, with ``m₋₁ μ(m₀) = μ(m)1`` and
  ``μ(m ◁ h) = ε(h)μ(m)``.
"""

from __future__ import annotations

import logging
from collections.abc import Mapping
from dataclasses import dataclass
from functools import cached_property

from ..algebra.actions import ModuleAction, check_module_algebra, trivial_action
from ..algebra.duality import DualPair, build_dual
from ..algebra.functionals import (
    Functional,
    functional_is_faithful,
    functional_is_positive,
    modular_automorphism,
)
from ..algebra.homomorphisms import AlgebraMap, check_algebra_map
from ..algebra.quantum_group import FiniteQuantumGroup
from ..algebra.star_algebra import StarAlgebra, TensorSpace, gamma_opposite, place
from ..errors import NotYetterDrinfeldError
from ..linear import LinMap, Scalar, Vec, apply_on_leg, permute_legs
from ..linear.scalars import ONE
from ..linear.vectors import accumulate, vec_equal, vec_scale
from ..reporting import (
    CheckSpec,
    VerificationReport,
    Witness,
    failure,
    first_mismatch,
    run_checks,
    scalar_case,
)
from .coactions import Coaction, check_coaction, coaction_to_action, trivial_coaction

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class YDAlgebra:
    group: FiniteQuantumGroup
    theta: Coaction
    dual_action: ModuleAction
    label: str = "N"

    @property
    def n(self) -> StarAlgebra:
        return self.theta.algebra

    def act(self, m: Mapping[int, Scalar], h: Mapping[int, Scalar]) -> Vec:
        return self.dual_action.act(m, h)

    def legs(self, m: Mapping[int, Scalar]) -> list[tuple[Scalar, int, int]]:
        return self.theta.legs(m)

    @cached_property
    def dual(self) -> DualPair:
        return build_dual(self.group)

    def dual_coaction(self, m: Mapping[int, Scalar]) -> Vec:
        """θ̂ packed into ``dual⊗N``: ``Σ_i ω_i ⊗ (m ◁ e_i)``."""
        n = self.n.dim
        out: Vec = {}
        for i in range(self.group.dim):
            for k, c in self.act(m, {i: ONE}).items():
                out[i * n + k] = c
        return out


def yd_algebra(
    group: FiniteQuantumGroup,
    algebra: StarAlgebra,
    theta: LinMap,
    dual_action: LinMap,
    *,
    label: str | None = None,
) -> YDAlgebra:
    """Assemble a YD record from the matrices of θ (``N -> H⊗N``) and ◁ (``N⊗H -> N``)."""
    coaction = Coaction(group.conjugate(), algebra, theta, "right", "θ")
    action = ModuleAction(group, algebra, dual_action, "right", "◁_θ̂")
    return YDAlgebra(group, coaction, action, label or algebra.label)


def _gamma_columns(y: YDAlgebra, power: int) -> LinMap:
    """``m -> m₀ ◁ S^power(m₋₁)``."""
    s_power = y.group.antipode_power(power)
    n = y.n.dim

    def column(m: int) -> Vec:
        out: Vec = {}
        for c, h, k in y.legs({m: ONE}):
            accumulate(out, c, y.act({k: ONE}, s_power.columns[h]))
        return out

    return LinMap.from_function(n, n, column)


def gamma_maps(y: YDAlgebra) -> tuple[LinMap, LinMap]:
    """The linear maps ``(γ, γ̂)``."""
    return _gamma_columns(y, -1), _gamma_columns(y, 2)


def check_yd(
    y: YDAlgebra, *, packed: bool = False, workers: int | None = None
) -> VerificationReport:
    g, n_alg = y.group, y.n
    n, d = n_alg.dim, g.dim
    em = [{i: ONE} for i in range(n)]
    eh = [{j: ONE} for j in range(d)]

    def yd_condition() -> Witness | None:
        cases = []
        for h in range(d):
            legs3 = g.sweedler(eh[h], 3)
            for m in range(n):
                rhs: Vec = {}
                for c1, (h1, h2, h3) in legs3:
                    for c2, a, k in y.legs(em[m]):
                        left = g.alg.mul_many(g.S_inv(eh[h3]), eh[a], eh[h1])
                        right = y.act(em[k], eh[h2])
                        accumulate(rhs, c1 * c2, y.theta.space.pure([left, right]))
                cases.append(((m, h), y.theta(y.act(em[m], eh[h])), rhs))
        return first_mismatch("θ(m ◁ h) != S⁻¹(h₃)m₋₁h₁ ⊗ (m₀ ◁ h₂)", cases)

    def bc_left() -> Witness | None:
        cases = []
        for m in range(n):
            legs = y.legs(em[m])
            for k in range(n):
                rhs: Vec = {}
                for c, a, b in legs:
                    accumulate(rhs, c, n_alg.mul(y.act(em[k], eh[a]), em[b]))
                cases.append(((m, k), n_alg.mult[m][k], rhs))
        return first_mismatch("mn != (n ◁ m₋₁)m₀", cases)

    def bc_right() -> Witness | None:
        cases = []
        for k in range(n):
            legs = y.legs(em[k])
            for m in range(n):
                rhs: Vec = {}
                for c, a, b in legs:
                    accumulate(rhs, c, n_alg.mul(em[b], y.act(em[m], g.S(eh[a]))))
                cases.append(((m, k), n_alg.mult[m][k], rhs))
        return first_mismatch("mn != n₀(m ◁ S(n₋₁))", cases)

    def packed_form() -> Witness | None:
        # (id⊗θ)∘θ̂ = (Σ⊗id)(Ad(U)⊗id)(id⊗θ̂)∘θ inside alg(𝔾ᶜ)⊗dual⊗N
        hc = y.theta.aqg.alg
        dual_alg = y.dual.plain.alg
        pair_space = TensorSpace((hc, dual_alg))
        triple = TensorSpace((hc, dual_alg, n_alg))
        unitary = {i * d + i: ONE for i in range(d)}
        inverse = apply_on_leg(unitary, (d, d), 0, g.antipode_inverse.columns.__getitem__, d)
        if not vec_equal(pair_space.mul(unitary, inverse), pair_space.unit):
            return failure("U is not invertible with inverse (S⁻¹⊗id)U in 𝔾ᶜ")
        u3 = place(triple, unitary, (0, 1))
        v3 = place(triple, inverse, (0, 1))
        dual_columns = [y.dual_coaction(em[k]) for k in range(n)]
        cases = []
        for m in range(n):
            lhs = apply_on_leg(
                y.dual_coaction(em[m]), (d, n), 1, y.theta.map.columns.__getitem__, d * n
            )
            inner = apply_on_leg(y.theta(em[m]), (d, n), 1, dual_columns.__getitem__, d * n)
            conjugated = triple.mul_many(u3, inner, v3)
            rhs = permute_legs(conjugated, (d, d, n), (1, 0, 2))
            cases.append(((m,), lhs, rhs))
        return first_mismatch("(id⊗θ)θ̂ != (Σ⊗id)(Ad(U)⊗id)(id⊗θ̂)θ", cases)

    specs = [
        CheckSpec("yd_condition", "(YD) unpacked", yd_condition),
        CheckSpec("bc_left", "(BC) unpacked", bc_left),
        CheckSpec("bc_right", "(BC) unpacked", bc_right),
    ]
    if packed:
        specs.append(CheckSpec("yd_packed", "(YD) with Ad(U)", packed_form))
    report = VerificationReport(label=f"{y.label}: Yetter–Drinfeld")
    report = report.merge(check_coaction(y.theta, workers=workers), prefix="theta")
    report = report.merge(
        check_module_algebra(y.dual_action, workers=workers), prefix="dual_action"
    )
    return report.merge(run_checks(f"{y.label}: (YD) and (BC)", specs, workers=workers))


def require_yd(y: YDAlgebra, *, workers: int | None = None) -> VerificationReport:
    report = check_yd(y, workers=workers)
    if not report.passed:
        raise NotYetterDrinfeldError(f"{y.label}: {'; '.join(report.reasons)}")
    return report


@dataclass(frozen=True)
class CanonicalAutomorphisms:
    gamma: AlgebraMap
    gamma_hat: AlgebraMap
    report: VerificationReport


def canonical_automorphisms(
    y: YDAlgebra,
    *,
    mu: Functional | None = None,
    verified: bool = False,
    workers: int | None = None,
) -> CanonicalAutomorphisms:
    """γ, γ̂ and the checks ``ca1`` … ``ca9`` (``ca9`` only with an integral attached)."""
    if not verified:
        require_yd(y, workers=workers)
    g, n_alg = y.group, y.n
    n, d = n_alg.dim, g.dim
    em = [{i: ONE} for i in range(n)]
    eh = [{j: ONE} for j in range(d)]
    gamma, gamma_hat = gamma_maps(y)
    gamma_map = AlgebraMap(
        n_alg, n_alg, gamma, "homomorphism", gamma_hat.compose(gamma_hat), f"γ[{y.label}]"
    )
    gamma_hat_map = AlgebraMap(
        n_alg, n_alg, gamma_hat, "homomorphism", gamma.compose(gamma), f"γ̂[{y.label}]"
    )
    s2, s_minus2 = g.antipode_power(2), g.antipode_power(-2)
    space = y.theta.space

    def twisted(m: int, left: LinMap, right: LinMap) -> Vec:
        out: Vec = {}
        for c, h, k in y.legs(em[m]):
            accumulate(out, c, space.pure([left.columns[h], right.columns[k]]))
        return out

    def ca1() -> Witness | None:
        cases = []
        for m in range(n):
            star_gamma = n_alg.adjoint(gamma.columns[m])
            cases.append(((0, m), star_gamma, gamma_hat.apply(n_alg.adjoint(em[m]))))
            cases.append(((1, m), y.theta(gamma.columns[m]), twisted(m, s_minus2, gamma)))
            cases.append(((2, m), y.theta(gamma_hat.columns[m]), twisted(m, s2, gamma_hat)))
        return first_mismatch("γ(m)* != γ̂(m*) or θ is not intertwined by γ, γ̂", cases)

    def ca2() -> Witness | None:
        cases = []
        for m in range(n):
            for h in range(d):
                acted = y.act(em[m], eh[h])
                cases.append(
                    ((0, m, h), gamma.apply(acted), y.act(gamma.columns[m], s_minus2.columns[h]))
                )
                cases.append(
                    ((1, m, h), gamma_hat.apply(acted), y.act(gamma_hat.columns[m], s2.columns[h]))
                )
        return first_mismatch("γ(m ◁ h) != γ(m) ◁ S⁻²h or the γ̂ twin", cases)

    def ca3() -> Witness | None:
        s_inv = g.antipode_inverse
        cases = []
        for m in range(n):
            legs = y.legs(em[m])
            for k in range(n):
                left: Vec = {}
                right: Vec = {}
                for c, h, b in legs:
                    accumulate(left, c, y.act(n_alg.mult[b][k], s_inv.columns[h]))
                    accumulate(right, c, y.act(n_alg.mult[k][b], s2.columns[h]))
                cases.append(((0, m, k), left, n_alg.mul(em[k], gamma.columns[m])))
                cases.append(((1, m, k), right, n_alg.mul(gamma_hat.columns[m], em[k])))
        return first_mismatch("(m₀n) ◁ S⁻¹(m₋₁) != nγ(m) or the γ̂ twin", cases)

    def ca4() -> Witness | None:
        cases = []
        for m in range(n):
            cases.append(((0, m), gamma.apply(gamma_hat.columns[m]), em[m]))
            cases.append(((1, m), gamma_hat.apply(gamma.columns[m]), em[m]))
        return first_mismatch("γ and γ̂ are not mutually inverse", cases)

    def ca5() -> Witness | None:
        cases = []
        for tag, auto in ((0, gamma), (1, gamma_hat)):
            cases.append(((tag,), auto.apply(n_alg.unit), n_alg.unit))
            for a in range(n):
                for b in range(n):
                    product = n_alg.mul(auto.columns[a], auto.columns[b])
                    cases.append(((tag, a, b), auto.apply(n_alg.mult[a][b]), product))
        return first_mismatch("γ or γ̂ is not a unital homomorphism", cases)

    def ca6() -> Witness | None:
        cases = []
        for m in range(n):
            star_m = n_alg.adjoint(em[m])
            cases.append(((0, m), gamma.apply(n_alg.adjoint(gamma.apply(star_m))), em[m]))
            cases.append(((1, m), gamma_hat.apply(n_alg.adjoint(gamma_hat.apply(star_m))), em[m]))
        return first_mismatch("γ(γ(m*)*) != m or the γ̂ twin", cases)

    def ca7() -> Witness | None:
        dual = y.dual.plain
        hat_s2, hat_s_minus2 = dual.antipode_power(2), dual.antipode_power(-2)
        dims = (d, n)
        cases = []
        for m in range(n):
            packed = y.dual_coaction(em[m])
            for tag, auto, twist in ((0, gamma, hat_s2), (1, gamma_hat, hat_s_minus2)):
                lhs = y.dual_coaction(auto.columns[m])
                rhs = apply_on_leg(packed, dims, 0, twist.columns.__getitem__, d)
                rhs = apply_on_leg(rhs, dims, 1, auto.columns.__getitem__, n)
                cases.append(((tag, m), lhs, rhs))
        return first_mismatch("θ̂∘γ != (Ŝ²⊗γ)∘θ̂ or the γ̂ twin", cases)

    def ca8() -> Witness | None:
        dual = y.dual
        theta_action = coaction_to_action(y.theta, dual.pairing)
        hat_s2, hat_s_minus2 = dual.plain.antipode_power(2), dual.plain.antipode_power(-2)
        cases = []
        for m in range(n):
            for w in range(d):
                acted = theta_action.act(em[m], {w: ONE})
                cases.append(
                    (
                        (0, m, w),
                        gamma.apply(acted),
                        theta_action.act(gamma.columns[m], hat_s2.columns[w]),
                    )
                )
                cases.append(
                    (
                        (1, m, w),
                        gamma_hat.apply(acted),
                        theta_action.act(gamma_hat.columns[m], hat_s_minus2.columns[w]),
                    )
                )
        return first_mismatch("γ(m ◁_θ ω) != γ(m) ◁_θ Ŝ²ω or the γ̂ twin", cases)

    specs = [
        CheckSpec("ca1", "(CA1)", ca1),
        CheckSpec("ca2", "(CA2)", ca2),
        CheckSpec("ca3", "(CA3)", ca3),
        CheckSpec("ca4", "(CA4)", ca4),
        CheckSpec("ca5", "(CA5)", ca5),
        CheckSpec("ca6", "(CA6)", ca6),
        CheckSpec("ca7", "(CA7)", ca7),
        CheckSpec("ca8", "(CA8)", ca8),
    ]
    if mu is not None:
        measure = mu
        specs.append(CheckSpec("ca9", "(CA9)", lambda: _kms_witness(measure, gamma, gamma_hat)))
    report = run_checks(f"{y.label}: canonical automorphisms", specs, workers=workers)
    logger.info(
        "canonical_automorphisms event=computed label=%s gamma_identity=%s passed=%s",
        y.label,
        gamma.is_identity(),
        report.passed,
    )
    return CanonicalAutomorphisms(gamma_map, gamma_hat_map, report)


def _kms_witness(mu: Functional, gamma: LinMap, gamma_hat: LinMap) -> Witness | None:
    """``μ∘γ = μ = μ∘γ̂`` and ``μ(mn) = μ(nγ(m)) = μ(γ̂(n)m)``, with ``σ^μ = γ``."""
    alg = mu.algebra
    n = alg.dim
    cases = [scalar_case((0, m), mu(gamma.columns[m]), mu.on_basis(m)) for m in range(n)]
    cases += [scalar_case((1, m), mu(gamma_hat.columns[m]), mu.on_basis(m)) for m in range(n)]
    for a in range(n):
        for b in range(n):
            value = mu(alg.mult[a][b])
            cases.append(scalar_case((2, a, b), value, mu(alg.mul({b: ONE}, gamma.columns[a]))))
            cases.append(scalar_case((3, a, b), value, mu(alg.mul(gamma_hat.columns[b], {a: ONE}))))
    witness = first_mismatch("μ does not satisfy weak KMS with γ", cases)
    if witness is not None:
        return witness
    sigma = modular_automorphism(mu)
    if sigma is None:
        return failure("μ admits no modular automorphism")
    return first_mismatch(
        "σ^μ differs from γ",
        (((m,), sigma.map.columns[m], gamma.columns[m]) for m in range(n)),
    )


@dataclass(frozen=True, eq=False)
class MeasuredYD:
    yd: YDAlgebra
    mu: Functional

    @property
    def label(self) -> str:
        return self.yd.label


def check_yd_integral(m: MeasuredYD, *, workers: int | None = None) -> VerificationReport:
    y, mu = m.yd, m.mu
    g, n_alg = y.group, y.n
    n, d = n_alg.dim, g.dim
    em = [{i: ONE} for i in range(n)]
    gamma, gamma_hat = gamma_maps(y)

    def nonzero() -> Witness | None:
        return None if not mu.is_zero else failure("μ is the zero functional")

    def positive() -> Witness | None:
        return None if functional_is_positive(mu) else failure("Gram matrix of μ is not PSD")

    def faithful() -> Witness | None:
        return None if functional_is_faithful(mu) else failure("μ(mn) form is degenerate")

    def theta_invariant() -> Witness | None:
        cases = []
        for a in range(n):
            lhs: Vec = {}
            for c, h, k in y.legs(em[a]):
                accumulate(lhs, c * mu.on_basis(k), {h: ONE})
            cases.append(((a,), lhs, vec_scale(mu.on_basis(a), g.alg.unit)))
        return first_mismatch("(id⊗μ)θ(m) != μ(m)1", cases)

    def dual_invariant() -> Witness | None:
        return first_mismatch(
            "μ(m ◁ h) != ε(h)μ(m)",
            (
                scalar_case(
                    (a, h), mu(y.act(em[a], {h: ONE})), g.counit.on_basis(h) * mu.on_basis(a)
                )
                for a in range(n)
                for h in range(d)
            ),
        )

    def modular() -> Witness | None:
        return _kms_witness(mu, gamma, gamma_hat)

    def tracial_iff_gamma_identity() -> Witness | None:
        sigma = modular_automorphism(mu)
        tracial = sigma is not None and sigma.map.is_identity()
        if tracial == gamma.is_identity():
            return None
        return failure(f"μ tracial is {tracial} but γ = id is {gamma.is_identity()}")

    specs = [
        CheckSpec("mu_nonzero", "YD integral", nonzero),
        CheckSpec("mu_positive", "YD integral", positive),
        CheckSpec("mu_faithful", "YD integral", faithful),
        CheckSpec("theta_invariant", "YD integral", theta_invariant),
        CheckSpec("dual_invariant", "YD integral", dual_invariant),
        CheckSpec("modular_is_gamma", "(CA9)", modular),
        CheckSpec("tracial_iff_gamma_identity", "tracial YD integral", tracial_iff_gamma_identity),
    ]
    return run_checks(f"{y.label}: YD integral", specs, workers=workers)


def is_tracial(m: MeasuredYD) -> bool:
    sigma = modular_automorphism(m.mu)
    return sigma is not None and sigma.map.is_identity()


def trivial_measured_yd(group: FiniteQuantumGroup) -> MeasuredYD:
    """``(ℂ, trv, trv, id)``, whose algebroid is the quantum group itself."""
    scalars = StarAlgebra.scalars()
    theta = trivial_coaction(group.conjugate(), scalars)
    action = trivial_action(group, scalars)
    y = YDAlgebra(group, theta, action, label="C")
    return MeasuredYD(y, Functional(scalars, {0: ONE}, "id"))


def dual_conjugate_yd(m: MeasuredYD) -> MeasuredYD:
    """``(N^op_γ̂, θ̂ᶜ, θᶜ, μ°)`` realized over the plain dual of 𝔾.

    The new θ is the packed dual coaction ``m -> Σ_i ω_i ⊗ (m ◁ e_i)``; the new dual action
    is ``m ◁_θ ω = (p(·, ω)⊗id)θ(m)``.
    """
    y = m.yd
    dual = y.dual
    plain = dual.plain
    _, gamma_hat = gamma_maps(y)
    n_op = gamma_opposite(y.n, gamma_hat, label=f"{y.n.label}^op")
    n, d = n_op.dim, plain.dim
    theta_new = LinMap.from_function(n, d * n, lambda k: y.dual_coaction({k: ONE}))
    theta_action = coaction_to_action(y.theta, dual.pairing)
    action_new = LinMap(n, n * d, theta_action.map.columns)
    result = yd_algebra(plain, n_op, theta_new, action_new, label=f"{y.label}^op")
    mu = Functional(n_op, dict(m.mu.covector), f"{m.mu.label}°")
    logger.info("dual_conjugate_yd event=built label=%s dim=%d", y.label, n)
    return MeasuredYD(result, mu)


def dual_conjugate_involution_report(
    m: MeasuredYD, *, workers: int | None = None
) -> VerificationReport:
    """Applying the dual conjugate twice gives back the instance in the same coordinates."""
    twice = dual_conjugate_yd(dual_conjugate_yd(m))
    y, z = m.yd, twice.yd

    def algebra() -> Witness | None:
        return None if y.n.same_structure(z.n) else failure("(N^op_γ̂)^op differs from N")

    def theta() -> Witness | None:
        return first_mismatch(
            "θ differs after two dual conjugates",
            (((k,), y.theta.map.columns[k], z.theta.map.columns[k]) for k in range(y.n.dim)),
        )

    def action() -> Witness | None:
        return first_mismatch(
            "◁ differs after two dual conjugates",
            (
                ((k,), y.dual_action.map.columns[k], z.dual_action.map.columns[k])
                for k in range(y.dual_action.map.cols)
            ),
        )

    def integral() -> Witness | None:
        return None if m.mu.same_values(twice.mu) else failure("μ°° differs from μ")

    specs = [
        CheckSpec("algebra", "dual conjugate involution", algebra),
        CheckSpec("theta", "dual conjugate involution", theta),
        CheckSpec("dual_action", "dual conjugate involution", action),
        CheckSpec("integral", "dual conjugate involution", integral),
    ]
    return run_checks(f"{y.label}: dual conjugate twice", specs, workers=workers)


def check_yd_morphism(
    f: AlgebraMap, source: YDAlgebra, target: YDAlgebra, *, workers: int | None = None
) -> VerificationReport:
    """``f`` is a unital *-homomorphism with ``(id⊗f)θ = θ'∘f`` and ``f(m ◁ h) = f(m) ◁' h``."""
    n, d = source.n.dim, source.group.dim
    em = [{i: ONE} for i in range(n)]

    def theta_equivariant() -> Witness | None:
        cases = []
        for a in range(n):
            lhs = apply_on_leg(
                source.theta(em[a]), (d, n), 1, f.map.columns.__getitem__, target.n.dim
            )
            cases.append(((a,), lhs, target.theta(f.map.columns[a])))
        return first_mismatch("(id⊗f)θ != θ'∘f", cases)

    def action_equivariant() -> Witness | None:
        return first_mismatch(
            "f(m ◁ h) != f(m) ◁' h",
            (
                ((a, h), f(source.act(em[a], {h: ONE})), target.act(f.map.columns[a], {h: ONE}))
                for a in range(n)
                for h in range(d)
            ),
        )

    specs = [
        CheckSpec("theta_equivariant", "YD morphism", theta_equivariant),
        CheckSpec("dual_action_equivariant", "YD morphism", action_equivariant),
    ]
    report = run_checks(f"{f.name}: YD morphism", specs, workers=workers)
    return report.merge(check_algebra_map(f, workers=workers), prefix="algebra_map")

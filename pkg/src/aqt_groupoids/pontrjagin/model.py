"""Explicit models of the Pontrjagin dual of ``𝒜(N, θ, θ̂, μ)``.

The model ``𝒜(N^op_γ̂, θ̂ᶜ, θᶜ, μ°)`` goes through the same pipeline as the primal. Its total
algebra ``𝒪̂ #_θᶜ N^op_γ̂`` shares coordinates with the target of
``Ξ((α(m)(h#1))·φ) = (h·φ_𝔾) # β(γ̂(m))``, so ``𝒯 = (id # σ_N)⁻¹∘Ξ`` has the matrix of Ξ and is
checked as a morphism of algebroids.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from ..algebra.actions import ModuleAction
from ..algebra.functionals import Functional
from ..algebra.homomorphisms import AlgebraMap, check_algebra_map
from ..algebra.quantum_group import modular_data
from ..algebra.star_algebra import StarAlgebra
from ..algebroid.checker import verify_mmha
from ..algebroid.construction import _solve_on_family, build_algebroid
from ..algebroid.mmha import MMHA, Provenance, spanning_matrix
from ..algebroid.morphisms import MMHAMorphism, check_mmha_morphism
from ..algebroid.smash import SmashProduct, smash_product
from ..errors import PreconditionError, ProvenanceMissingError, UnsolvableError
from ..linear import LinMap, Vec, span_rank, tensor_product
from ..linear.scalars import ONE, ZERO
from ..linear.vectors import accumulate, dot
from ..reporting import (
    CheckSpec,
    VerificationReport,
    Witness,
    failure,
    first_mismatch,
    run_checks,
    scalar_case,
)
from ..yd.yetter_drinfeld import (
    MeasuredYD,
    dual_conjugate_involution_report,
    dual_conjugate_yd,
    trivial_measured_yd,
)
from .dual import DualAlgebra, dual_algebra, phi_form

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class XiModel:
    """``ĵ_𝔾`` and ``Ξ: Â -> 𝒪̂ #_◁ C`` with the checks of both."""

    primal: MMHA
    dual: DualAlgebra
    measured_dual: MeasuredYD
    jhat: AlgebraMap
    xi_target: SmashProduct
    xi: AlgebraMap
    report: VerificationReport


@dataclass(frozen=True, eq=False)
class DualAlgebroid:
    primal: MMHA
    dual: MMHA
    pairing: LinMap
    dual_antipode: AlgebraMap


@dataclass(frozen=True, eq=False)
class DualModel:
    stage: XiModel
    model_mmha: MMHA
    t_map: AlgebraMap
    algebroid: DualAlgebroid
    jhat_morphism: MMHAMorphism
    report: VerificationReport

    @property
    def model_total(self) -> StarAlgebra:
        return self.model_mmha.total

    @property
    def xi(self) -> AlgebraMap:
        return self.stage.xi

    @property
    def dual(self) -> MMHA:
        return self.algebroid.dual


@dataclass(frozen=True)
class DualityPairing:
    """``𝒫(e_i, 𝒯⁻¹(x_j))`` for the basis ``e_i`` of ``A`` and ``x_j`` of the model."""

    matrix: LinMap
    report: VerificationReport


def _require_right(a: MMHA) -> Provenance:
    prov = a.provenance
    if prov is None:
        raise ProvenanceMissingError(f"{a.label}: the dual model needs the measured YD algebra")
    if prov.presentation != "right":
        raise PreconditionError(
            f"{a.label}: dual models use the right presentation; convert with left_identification"
        )
    return prov


def dual_model_xi(a: MMHA, *, workers: int | None = None) -> XiModel:
    """Stage one of the duality: ``Â``, ``ĵ_𝔾`` and the smash product model Ξ."""
    prov = _require_right(a)
    measured = prov.measured
    assert isinstance(measured, MeasuredYD)
    y, g = measured.yd, prov.group
    n, d = y.n.dim, g.dim
    em = [{i: ONE} for i in range(n)]
    eh = [{j: ONE} for j in range(d)]
    dual = dual_algebra(a, workers=workers)
    dc = dual_conjugate_yd(measured)
    plain = dc.yd.group
    form = phi_form(a)
    group_form = g.haar.bilinear_form
    group_form_inverse = group_form.inverse()
    if group_form_inverse is None:
        raise UnsolvableError(f"{g.label}: Haar integral is not faithful")

    jhat = AlgebraMap(
        plain.alg,
        dual.total,
        form.compose(prov.embed_group.map).compose(group_form_inverse),
        name="ĵ_𝔾",
    )
    action = ModuleAction(plain, a.base_c, dc.yd.dual_action.map, "right", "◁")
    xi_target = smash_product(
        plain, a.base_c, action, label=f"{plain.alg.label}#{a.base_c.label}", workers=workers
    )
    group_part = [prov.embed_group(eh[h]) for h in range(d)]
    alphas = [prov.alpha(em[m]) for m in range(n)]
    family = form.compose(spanning_matrix(a.total, alphas, group_part))
    values = [
        xi_target.element(group_form.columns[h], prov.gamma_hat.columns[m])
        for m in range(n)
        for h in range(d)
    ]
    xi = AlgebraMap(
        dual.total,
        xi_target.total,
        _solve_on_family(family, values, xi_target.total.dim, "Ξ"),
        name="Ξ",
    )
    report = _xi_report(a, dual, jhat, action, xi_target, xi, workers)
    logger.info(
        "dual_model_xi event=built label=%s dim=%d passed=%s", a.label, a.dim, report.passed
    )
    return XiModel(a, dual, dc, jhat, xi_target, xi, report)


def _xi_report(
    a: MMHA,
    dual: DualAlgebra,
    jhat: AlgebraMap,
    action: ModuleAction,
    xi_target: SmashProduct,
    xi: AlgebraMap,
    workers: int | None,
) -> VerificationReport:
    prov = a.provenance
    assert prov is not None
    y = prov.measured.yd
    plain = action.acting
    hat, dim = dual.total, dual.dim
    d, nc = plain.dim, a.base_c.dim
    e = [{i: ONE} for i in range(dim)]
    ew = [{k: ONE} for k in range(d)]
    ec = [{j: ONE} for j in range(nc)]

    def jhat_nondegenerate() -> Witness | None:
        products = [hat.mul(jhat.map.columns[k], e[i]) for k in range(d) for i in range(dim)]
        found = span_rank(dim, products)
        return None if found == dim else failure(f"ĵ_𝔾(𝒪̂)Â has dimension {found} < {dim}")

    def jhat_smash_relation() -> Witness | None:
        cases = []
        for j in range(nc):
            for k in range(d):
                rhs: Vec = {}
                for c, (w1, w2) in plain.sweedler(ew[k], 2):
                    accumulate(
                        rhs,
                        c,
                        hat.mul(jhat.map.columns[w1], dual.iota_c(action.act(ec[j], ew[w2]))),
                    )
                lhs = hat.mul(dual.iota_c.map.columns[j], jhat.map.columns[k])
                cases.append(((j, k), lhs, rhs))
        return first_mismatch("ι̂_C(c)ĵ_𝔾(ω) != ĵ_𝔾(ω₁)ι̂_C(c ◁ ω₂)", cases)

    def jhat_antipode() -> Witness | None:
        hat_s_inverse = dual.antipode.map.inverse()
        if hat_s_inverse is None:
            return failure("Ŝ is not invertible")
        return first_mismatch(
            "Ŝ⁻¹(ĵ_𝔾(ω)) != ĵ_𝔾(Ŝ_𝔾⁻¹(ω))",
            (
                ((k,), hat_s_inverse.apply(jhat.map.columns[k]), jhat(plain.S_inv(ew[k])))
                for k in range(d)
            ),
        )

    def xi_bijective() -> Witness | None:
        if xi.map.is_invertible():
            return None
        return failure(f"Ξ has rank {xi.map.rank()} < {dim}")

    def xi_iota_c() -> Witness | None:
        return first_mismatch(
            "Ξ∘ι̂_C != ι_C",
            (((j,), xi(dual.iota_c.map.columns[j]), xi_target.embed_n(ec[j])) for j in range(nc)),
        )

    def xi_iota_b() -> Witness | None:
        return first_mismatch(
            "Ξ(ι̂_B(α(m))) != Σ ω_i # β(m ◁ e_i)",
            (
                ((m,), xi(dual.iota_b.map.columns[m]), y.dual_coaction({m: ONE}))
                for m in range(a.base_b.dim)
            ),
        )

    specs = [
        CheckSpec("jhat_nondegenerate", "ĵ_𝔾 (ii)", jhat_nondegenerate),
        CheckSpec("jhat_smash_relation", "ĵ_𝔾 (iii)", jhat_smash_relation),
        CheckSpec("jhat_antipode", "ĵ_𝔾 (iv)", jhat_antipode),
        CheckSpec("xi_bijective", "Ξ", xi_bijective),
        CheckSpec("xi_iota_c", "Ξ embeddings", xi_iota_c),
        CheckSpec("xi_iota_b", "Ξ embeddings", xi_iota_b),
    ]
    report = run_checks(f"{a.label}: Ξ", specs, workers=workers)
    report = dual.report.merge(report, prefix="xi")
    report = report.merge(check_algebra_map(jhat, workers=workers), prefix="jhat")
    return report.merge(check_algebra_map(xi, workers=workers), prefix="xi_map")


def _transport(model: MMHA, dual: DualAlgebra, t: LinMap, t_inverse: LinMap) -> MMHA:
    a = dual.primal
    tt = tensor_product(t_inverse, t_inverse)
    frame = None if model.frame is None else tuple(t_inverse.apply(v) for v in model.frame)
    return MMHA(
        dual.total,
        a.base_c,
        a.base_b,
        dual.iota_c,
        dual.iota_b,
        a.t_b_inverse,
        a.t_c_inverse,
        tt.compose(model.delta_b).compose(t),
        tt.compose(model.delta_c).compose(t),
        dual.antipode.map,
        model.eps_b.compose(t),
        model.eps_c.compose(t),
        Functional(a.base_c, dict(a.mu_c.covector), "μ̂_B"),
        Functional(a.base_b, dict(a.mu_b.covector), "μ̂_C"),
        model.partial_psi.compose(t),
        model.partial_phi.compose(t),
        f"{a.label}^",
        frame,
    )


def build_dual_algebroid(
    a: MMHA, *, verify_dual: bool = False, workers: int | None = None
) -> DualModel:
    """The dual algebroid with ``𝒯: 𝒜̂ -> 𝒜(N^op_γ̂, θ̂ᶜ, θᶜ, μ°)`` and ``ĵ_𝔾`` checked."""
    stage = dual_model_xi(a, workers=workers)
    dual, prov = stage.dual, a.provenance
    assert prov is not None
    model = build_algebroid(stage.measured_dual, workers=workers)
    t_inverse = stage.xi.map.inverse()
    if t_inverse is None:
        raise UnsolvableError(f"{a.label}: Ξ is not invertible")
    t_map = AlgebraMap(dual.total, model.total, stage.xi.map, name="𝒯")
    transported = _transport(model, dual, stage.xi.map, t_inverse)
    algebroid = DualAlgebroid(a, transported, LinMap.identity(a.dim), dual.antipode)
    morphism = MMHAMorphism(transported, model, t_map)

    canonical = build_algebroid(trivial_measured_yd(stage.xi_target.h), workers=workers)
    jhat_morphism = MMHAMorphism(
        canonical, transported, AlgebraMap(canonical.total, dual.total, stage.jhat.map, name="ĵ_𝔾")
    )
    report = _model_report(a, stage, model, transported, t_map, workers)
    report = stage.report.merge(report, prefix="model")
    report = report.merge(check_mmha_morphism(morphism, workers=workers), prefix="T")
    report = report.merge(check_mmha_morphism(jhat_morphism, workers=workers), prefix="jhat")
    if verify_dual:
        report = report.merge(verify_mmha(transported, workers=workers), prefix="dual")
    logger.info(
        "build_dual_algebroid event=built label=%s dim=%d passed=%s",
        a.label,
        a.dim,
        report.passed,
    )
    return DualModel(stage, model, t_map, algebroid, jhat_morphism, report)


def _model_report(
    a: MMHA,
    stage: XiModel,
    model: MMHA,
    dual_mmha: MMHA,
    t_map: AlgebraMap,
    workers: int | None,
) -> VerificationReport:
    prov = a.provenance
    assert prov is not None
    g = prov.group
    plain = stage.xi_target.h
    dual = stage.dual
    dim, d = a.dim, g.dim
    n = a.base_b.dim
    eh = [{j: ONE} for j in range(d)]
    em = [{m: ONE} for m in range(n)]
    group_form = g.haar.bilinear_form
    form = phi_form(a)
    sigma = modular_data(g, workers=workers).sigma

    def model_matches_smash() -> Witness | None:
        if model.total.same_structure(stage.xi_target.total):
            return None
        return failure("id # σ_N is not a *-isomorphism onto the model")

    def t_iota() -> Witness | None:
        cases = [
            ((0, j), t_map(dual.iota_c.map.columns[j]), model.iota_b.map.columns[j])
            for j in range(a.base_c.dim)
        ]
        cases += [
            ((1, j), t_map(dual.iota_b.map.columns[j]), model.iota_c.map.columns[j])
            for j in range(n)
        ]
        return first_mismatch("𝒯∘ι̂_C != ι̃_C or 𝒯∘ι̂_B != ι̃_B", cases)

    def t_antipode() -> Witness | None:
        return first_mismatch(
            "𝒯∘Ŝ != S′∘𝒯",
            (
                (
                    (i,),
                    t_map(dual.antipode.map.columns[i]),
                    model.antipode.apply(t_map.map.columns[i]),
                )
                for i in range(dim)
            ),
        )

    def delta_hat_identity() -> Witness | None:
        h2 = plain.h2
        cases = []
        for h in range(d):
            lead = h2.embed(0, group_form.columns[h])
            for k in range(d):
                lhs = h2.mul(lead, plain.comul.apply(group_form.columns[k]))
                rhs: Vec = {}
                for c, (h1, h2_) in g.sweedler(eh[h], 2):
                    twisted = g.alg.mul(eh[k], sigma(g.S(eh[h2_])))
                    accumulate(
                        rhs, c, h2.pure([group_form.columns[h1], group_form.apply(twisted)])
                    )
                cases.append(((h, k), lhs, rhs))
        return first_mismatch("((h·φ)⊗1)Δ̂(g·φ) != (h₁·φ)⊗((gσ(S(h₂)))·φ)", cases)

    def delta_hat_c_identity() -> Witness | None:
        a2 = dual_mmha.a2
        jhat = stage.jhat
        cases = []
        for h in range(d):
            lead = a2.embed(0, jhat(group_form.columns[h]))
            for m in range(n):
                for k in range(d):
                    weight = a.total.mul(prov.alpha(em[m]), prov.embed_group(eh[k]))
                    lhs = a2.mul(lead, dual_mmha.delta("B", form.apply(weight)))
                    rhs: Vec = {}
                    for c, (h1, h2_) in g.sweedler(eh[h], 2):
                        twisted = g.alg.mul(eh[k], sigma(g.S(eh[h2_])))
                        right = a.total.mul(prov.alpha(em[m]), prov.embed_group(twisted))
                        accumulate(
                            rhs,
                            c,
                            a2.pure([jhat(group_form.columns[h1]), form.apply(right)]),
                        )
                    cases.append(((h, m, k), dual_mmha.nf("B", lhs), dual_mmha.nf("B", rhs)))
        return first_mismatch(
            "(ĵ(h·φ)⊗1)Δ̂_C((α(n)(g#1))·φ) != ĵ(h₁·φ)⊗(α(n)(gσ(S(h₂))#1))·φ", cases
        )

    specs = [
        CheckSpec("model_matches_smash", "id # σ_N", model_matches_smash),
        CheckSpec("t_embeddings", "𝒯 embeddings", t_iota),
        CheckSpec("t_antipode", "duality (ii)", t_antipode),
        CheckSpec("delta_hat_identity", "Δ̂ helper identity", delta_hat_identity),
        CheckSpec("delta_hat_c_identity", "Δ̂_C helper identity", delta_hat_c_identity),
    ]
    return run_checks(f"{a.label}: duality", specs, workers=workers)


def duality_pairing(
    a: MMHA, model: DualModel | None = None, *, workers: int | None = None
) -> DualityPairing:
    """``𝒫(h#m, 𝒯⁻¹(ω#n)) = p(h, ω)μ(nm)``, nondegeneracy and the adjointness of ``ĵ_𝔾``."""
    model = model or build_dual_algebroid(a, workers=workers)
    prov = a.provenance
    assert prov is not None
    t_inverse = model.t_map.map.inverse()
    if t_inverse is None:
        raise UnsolvableError(f"{a.label}: 𝒯 is not invertible")
    g, n_alg, mu = prov.group, prov.smash.n, prov.measured.mu
    d, n, dim = g.dim, n_alg.dim, a.dim
    jhat = model.stage.jhat

    def pairing_formula() -> Witness | None:
        cases = []
        for i in range(dim):
            h, m = divmod(i, n)
            for j in range(dim):
                k, nn = divmod(j, n)
                expected = mu(n_alg.mult[nn][m]) if h == k else ZERO
                cases.append(scalar_case((i, j), t_inverse.columns[j].get(i, ZERO), expected))
        return first_mismatch("𝒫(h#m, 𝒯⁻¹(ω#n)) != p(h, ω)μ(nm)", cases)

    def nondegenerate() -> Witness | None:
        found = t_inverse.rank()
        return None if found == dim else failure(f"pairing has rank {found} < {dim}")

    def group_adjoint() -> Witness | None:
        cases = []
        for h in range(d):
            for m in range(n):
                element = a.total.mul(prov.embed_group({h: ONE}), prov.beta({m: ONE}))
                for k in range(d):
                    expected = mu({m: ONE}) if h == k else ZERO
                    found = dot(jhat.map.columns[k], element)
                    cases.append(scalar_case((h, m, k), found, expected))
        return first_mismatch("𝒫(j_𝔾(h)β(m), ĵ_𝔾(ω)) != p(h, ω)μ(m)", cases)

    specs = [
        CheckSpec("pairing_formula", "duality (iii)", pairing_formula),
        CheckSpec("nondegenerate", "duality (iii)", nondegenerate),
        CheckSpec("group_adjoint", "ĵ_𝔾 and j_𝔾", group_adjoint),
    ]
    report = run_checks(f"{a.label}: duality pairing", specs, workers=workers)
    logger.info("duality_pairing event=checked label=%s passed=%s", a.label, report.passed)
    return DualityPairing(t_inverse, report)


def biduality_check(
    a: MMHA, model: DualModel | None = None, *, workers: int | None = None
) -> VerificationReport:
    """The dual model of the dual model is the primal, through the identity on coordinates.

    This is a property-level completion of the duality: it composes the involutivity of the dual
    conjugate with the duality applied twice.
    """
    model = model or build_dual_algebroid(a, workers=workers)
    first = model.model_mmha
    primal_measured = _require_right(a).measured
    measured = _require_right(first).measured
    assert isinstance(primal_measured, MeasuredYD) and isinstance(measured, MeasuredYD)
    second = build_algebroid(dual_conjugate_yd(measured), workers=workers)

    def same_dimension() -> Witness | None:
        if second.dim == a.dim:
            return None
        return failure(f"bidual has dimension {second.dim}, primal {a.dim}")

    identity = LinMap.identity(a.dim)
    forward = MMHAMorphism(a, second, AlgebraMap(a.total, second.total, identity, name="ev"))
    backward = MMHAMorphism(second, a, AlgebraMap(second.total, a.total, identity, name="ev⁻¹"))
    report = run_checks(
        f"{a.label}: biduality (property-level completion)",
        [CheckSpec("same_dimension", "biduality", same_dimension)],
        workers=workers,
    )
    report = report.merge(
        dual_conjugate_involution_report(primal_measured, workers=workers),
        prefix="involution",
    )
    report = report.merge(check_mmha_morphism(forward, workers=workers), prefix="forward")
    report = report.merge(check_mmha_morphism(backward, workers=workers), prefix="backward")
    logger.info("biduality_check event=checked label=%s passed=%s", a.label, report.passed)
    return report

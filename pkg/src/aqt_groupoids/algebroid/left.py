"""The algebroid of a left Yetter–Drinfeld presentation and its match with the right one."""

from __future__ import annotations

import logging
from dataclasses import dataclass

from ..algebra.functionals import Functional
from ..algebra.homomorphisms import AlgebraMap, check_algebra_map
from ..algebra.star_algebra import gamma_opposite
from ..errors import VerificationFailure
from ..linear import LinMap, Vec
from ..linear.scalars import ONE
from ..linear.vectors import accumulate, vec_scale
from ..reporting import (
    CheckSpec,
    VerificationReport,
    Witness,
    failure,
    first_mismatch,
    run_checks,
)
from ..yd.left import (
    LeftMeasuredYD,
    LeftYD,
    check_left_yd,
    check_left_yd_integral,
    left_gamma_maps,
    left_measured_to_right,
)
from .construction import _solve_on_family, build_algebroid
from .mmha import MMHA, Provenance, spanning_matrix
from .morphisms import MMHAMorphism, check_mmha_morphism
from .smash import SmashProduct, smash_product
from .variants import biopposite

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LeftIdentification:
    """``ℒ`` with the right-presentation algebroid, the bi-opposite target and its report."""

    right: MMHA
    left: MMHA
    target: MMHA
    morphism: MMHAMorphism
    report: VerificationReport


def _left_beta(sp: SmashProduct, y: LeftYD) -> LinMap:
    def column(m: int) -> Vec:
        out: Vec = {}
        for c, h, k in y.legs({m: ONE}):
            accumulate(out, c, sp.element({h: ONE}, {k: ONE}))
        return out

    return LinMap.from_function(y.n.dim, sp.total.dim, column)


def left_alpha_beta_report(
    sp: SmashProduct, y: LeftYD, *, workers: int | None = None
) -> VerificationReport:
    """α is a *-homomorphism, β anti-multiplicative with ``β(m)* = β(γ̂(m*))``; they commute."""
    n_alg, total = y.n, sp.total
    n = n_alg.dim
    _, gamma_hat = left_gamma_maps(y)
    beta = _left_beta(sp, y)
    alpha = sp.embed_n
    em = [{i: ONE} for i in range(n)]

    def beta_anti() -> Witness | None:
        return first_mismatch(
            "β(m)β(n) != β(nm)",
            (
                ((a, b), total.mul(beta.columns[a], beta.columns[b]), beta.apply(n_alg.mult[b][a]))
                for a in range(n)
                for b in range(n)
            ),
        )

    def beta_star() -> Witness | None:
        return first_mismatch(
            "β(m)* != β(γ̂(m*))",
            (
                (
                    (a,),
                    total.adjoint(beta.columns[a]),
                    beta.apply(gamma_hat.apply(n_alg.adjoint(em[a]))),
                )
                for a in range(n)
            ),
        )

    def commute() -> Witness | None:
        return first_mismatch(
            "α(m)β(n) != β(n)α(m)",
            (
                (
                    (a, b),
                    total.mul(alpha(em[a]), beta.columns[b]),
                    total.mul(beta.columns[b], alpha(em[a])),
                )
                for a in range(n)
                for b in range(n)
            ),
        )

    specs = [
        CheckSpec("beta_anti_multiplicative", "left α, β (2)", beta_anti),
        CheckSpec("beta_star", "left α, β (2)", beta_star),
        CheckSpec("alpha_beta_commute", "left α, β (3)", commute),
    ]
    report = run_checks(f"{total.label}: left α and β", specs, workers=workers)
    return report.merge(check_algebra_map(alpha, workers=workers), prefix="alpha")


def build_left_algebroid(
    measured: LeftMeasuredYD, *, verified: bool = False, workers: int | None = None
) -> MMHA:
    """``𝒜_λ(N, θ, θ̂, μ)`` over ``A_λ = N # 𝒪(𝔾)``."""
    y, mu = measured.yd, measured.mu
    if not verified:
        for report in (
            check_left_yd(y, workers=workers),
            check_left_yd_integral(measured, workers=workers),
        ):
            if not report.passed:
                raise VerificationFailure(report)
    g, n_alg = y.group, y.n
    n, d = n_alg.dim, g.dim
    em = [{i: ONE} for i in range(n)]
    eh = [{j: ONE} for j in range(d)]
    gamma, gamma_hat = left_gamma_maps(y)
    sp = smash_product(
        g, n_alg, y.dual_action, label=f"{y.label}#{g.alg.label}", verify_action=False
    )
    total = sp.total
    if not verified:
        relations = left_alpha_beta_report(sp, y, workers=workers)
        if not relations.passed:
            raise VerificationFailure(relations)
    beta_map = _left_beta(sp, y)
    alpha = AlgebraMap(n_alg, total, sp.embed_n.map, name="α")
    beta = AlgebraMap(
        gamma_opposite(n_alg, gamma_hat, label=f"{n_alg.label}^op"), total, beta_map, name="β"
    )
    base_b = gamma_opposite(n_alg, gamma_hat, label=f"B_λ[{y.label}]")
    base_c = n_alg.relabel(f"C_λ[{y.label}]")
    iota_b = AlgebraMap(base_b, total, beta_map, name="ι_B")
    iota_c = AlgebraMap(base_c, total, alpha.map, name="ι_C")
    group_part = [sp.embed_h(eh[h]) for h in range(d)]

    def comul(j: int) -> Vec:
        m, h = divmod(j, d)
        out: Vec = {}
        for c, (h1, h2) in g.sweedler(eh[h], 2):
            left = sp.element(eh[h1], em[m])
            right = group_part[h2]
            for a, x in left.items():
                for b, z in right.items():
                    accumulate(out, c * x * z, {a * total.dim + b: ONE})
        return out

    delta = LinMap.from_function(total.dim, total.dim * total.dim, comul)

    def antipode(j: int) -> Vec:
        m, h = divmod(j, d)
        return total.mul(sp.embed_h(g.S(eh[h])), beta(gamma_hat.columns[m]))

    # (1#h)β(m) at h·n + m, β(m)(1#h) and α(m)(1#h) at m·d + h
    betas = [beta(em[m]) for m in range(n)]
    alphas = [alpha(em[m]) for m in range(n)]
    h_beta = spanning_matrix(total, group_part, betas)
    beta_h = spanning_matrix(total, betas, group_part)
    alpha_h = spanning_matrix(total, alphas, group_part)
    eps_b = _solve_on_family(
        h_beta, [vec_scale(g.eps(eh[h]), em[m]) for h in range(d) for m in range(n)], n, "ε_B"
    )
    eps_c = _solve_on_family(
        alpha_h, [vec_scale(g.eps(eh[h]), em[m]) for m in range(n) for h in range(d)], n, "_Cε"
    )
    psi = _solve_on_family(
        beta_h, [vec_scale(g.phi(eh[h]), em[m]) for m in range(n) for h in range(d)], n, "_Bψ_B"
    )
    phi = _solve_on_family(
        alpha_h, [vec_scale(g.phi(eh[h]), em[m]) for m in range(n) for h in range(d)], n, "_Cφ_C"
    )
    label = f"A_λ({y.label})"
    provenance = Provenance(g, measured, sp, alpha, beta, gamma, gamma_hat, "left")
    result = MMHA(
        total,
        base_b,
        base_c,
        iota_b,
        iota_c,
        gamma,
        LinMap.identity(n),
        delta,
        delta,
        LinMap.from_function(total.dim, total.dim, antipode),
        eps_b,
        eps_c,
        Functional(base_b, dict(mu.covector), "μ_B"),
        Functional(base_c, dict(mu.covector), "μ_C"),
        psi,
        phi,
        label,
        tuple(group_part),
        provenance,
    )
    logger.info(
        "build_left_algebroid event=built label=%s group=%s base_dim=%d total_dim=%d",
        label,
        g.label,
        n,
        total.dim,
    )
    return result


def left_identification(
    measured: LeftMeasuredYD, *, workers: int | None = None
) -> LeftIdentification:
    """``ℒ: 𝒜(N^op_γ, θ', θ̂', μ°) -> 𝒜_λ^{op,co}`` with every intertwining checked."""
    left = build_left_algebroid(measured, workers=workers)
    right = build_algebroid(left_measured_to_right(measured), workers=workers)
    target = biopposite(left)
    lp, rp = left.provenance, right.provenance
    assert lp is not None and rp is not None
    g = lp.group
    d, n = g.dim, lp.smash.n.dim
    gamma, gamma_hat = lp.gamma, lp.gamma_hat
    s_minus2 = g.antipode_power(-2)

    def column(j: int) -> Vec:
        h, m = divmod(j, n)
        return lp.smash.element(g.S({h: ONE}), gamma_hat.columns[m])

    def twist(j: int) -> Vec:
        m, h = divmod(j, d)
        return lp.smash.element(s_minus2.columns[h], gamma.columns[m])

    # ℒ(x*) = (γ̂#S²)(ℒ(x)*) = ((γ#S⁻²)(ℒ(x)))*
    dim = left.dim
    ell = AlgebraMap(
        right.total,
        target.total,
        LinMap.from_function(dim, dim, column),
        star_twist=LinMap.from_function(dim, dim, twist),
        name="ℒ",
    )
    morphism = MMHAMorphism(right, target, ell)
    em = [{i: ONE} for i in range(n)]
    e = [{i: ONE} for i in range(dim)]

    def bijective() -> Witness | None:
        if ell.map.is_invertible():
            return None
        return failure(f"ℒ has rank {ell.map.rank()} < {dim}")

    def alpha_intertwining() -> Witness | None:
        return first_mismatch(
            "ℒ∘α' != α_λ∘γ̂",
            (((m,), ell(rp.alpha(em[m])), lp.alpha(gamma_hat.columns[m])) for m in range(n)),
        )

    def beta_intertwining() -> Witness | None:
        return first_mismatch(
            "ℒ∘β' != β_λ∘γ̂",
            (((m,), ell(rp.beta(em[m])), lp.beta(gamma_hat.columns[m])) for m in range(n)),
        )

    def antipode() -> Witness | None:
        return first_mismatch(
            "S_λ^{op,co}∘ℒ != ℒ∘S",
            (
                ((i,), target.antipode.apply(ell(e[i])), ell(right.antipode.columns[i]))
                for i in range(dim)
            ),
        )

    specs = [
        CheckSpec("bijective", "ℒ", bijective),
        CheckSpec("alpha_intertwining", "ℒ (i)", alpha_intertwining),
        CheckSpec("beta_intertwining", "ℒ (ii)", beta_intertwining),
        CheckSpec("antipode", "ℒ (iii)", antipode),
    ]
    report = run_checks(f"ℒ: {right.label} -> {target.label}", specs, workers=workers)
    report = report.merge(check_mmha_morphism(morphism, workers=workers), prefix="morphism")
    logger.info(
        "left_identification event=checked label=%s passed=%s", measured.label, report.passed
    )
    return LeftIdentification(right, left, target, morphism, report)

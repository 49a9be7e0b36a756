"""Modular automorphisms, modular elements and the Kac verdict of an algebroid."""

from __future__ import annotations

import logging
from dataclasses import dataclass

from ..algebra.functionals import Functional, modular_automorphism
from ..algebra.homomorphisms import AlgebraMap
from ..algebra.quantum_group import modular_data
from ..errors import ProvenanceMissingError, UnsolvableError
from ..linear import Vec, solve_linear
from ..linear.scalars import ONE
from ..linear.vectors import vec_equal
from ..reporting import (
    CheckSpec,
    VerificationReport,
    Witness,
    failure,
    first_mismatch,
    run_checks,
    scalar_case,
)
from .mmha import MMHA

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MMHAModularData:
    sigma_b: AlgebraMap
    sigma_c: AlgebraMap
    sigma_phi: AlgebraMap
    sigma_psi: AlgebraMap
    delta: Vec
    delta_plus: Vec
    delta_minus: Vec
    report: VerificationReport


@dataclass(frozen=True)
class KacVerdict:
    kac: bool
    group_kac: bool
    tracial: bool
    report: VerificationReport


def _sigma(f: Functional, label: str) -> AlgebraMap:
    sigma = modular_automorphism(f)
    if sigma is None:
        raise UnsolvableError(f"{label}: {f.label} admits no modular automorphism")
    return sigma


def _right_density(f: Functional, values: Functional, label: str) -> Vec:
    """``z`` with ``values(x) = f(x z)``."""
    z = solve_linear(f.bilinear_form, values.covector)
    if z is None:
        raise UnsolvableError(f"{label}: no modular element")
    return z


def mmha_modular_data(a: MMHA, *, workers: int | None = None) -> MMHAModularData:
    total, bb, bc = a.total, a.base_b, a.base_c
    d = a.dim
    e = [{i: ONE} for i in range(d)]
    phi, psi = a.total_phi, a.total_psi
    sigma_b = _sigma(a.mu_b, a.label)
    sigma_c = _sigma(a.mu_c, a.label)
    sigma_phi = _sigma(phi, a.label)
    sigma_psi = _sigma(psi, a.label)

    delta = _right_density(phi, psi, a.label)
    phi_s = phi.pullback(a.antipode, total, label=f"φ∘S[{a.label}]")
    delta_plus = _right_density(phi, phi_s, a.label)
    # φ(S⁻¹(x)) = φ(δ⁻ x) reads Fᵀ δ⁻ = φ∘S⁻¹ for F[i][j] = φ(e_i e_j)
    phi_s_inv = phi.pullback(a.antipode_inverse, total)
    delta_minus = solve_linear(phi.bilinear_form.transpose(), phi_s_inv.covector)
    if delta_minus is None:
        raise UnsolvableError(f"{a.label}: no modular element δ⁻")

    iota_b, iota_c = a.iota_b.map.columns, a.iota_c.map.columns

    def sigma_c_restriction() -> Witness | None:
        return first_mismatch(
            "σ^φ(ι_C(y)) != ι_C(σ_C(y))",
            (
                ((y,), sigma_phi(iota_c[y]), a.iota_c(sigma_c.map.columns[y]))
                for y in range(bc.dim)
            ),
        )

    def sigma_b_restriction() -> Witness | None:
        return first_mismatch(
            "σ^ψ(ι_B(x)) != ι_B(σ_B(x))",
            (
                ((x,), sigma_psi(iota_b[x]), a.iota_b(sigma_b.map.columns[x]))
                for x in range(bb.dim)
            ),
        )

    def sigma_c_antipode() -> Witness | None:
        # S_B ∘ S_C = t_C⁻¹ ∘ t_B⁻¹ on C
        composite = a.t_c_inverse.compose(a.t_b_inverse)
        return first_mismatch(
            "σ_C != S_B∘S_C",
            (((y,), sigma_c.map.columns[y], composite.columns[y]) for y in range(bc.dim)),
        )

    def sigma_b_antipode() -> Witness | None:
        composite = a.t_c.compose(a.t_b)
        return first_mismatch(
            "σ_B != S_B⁻¹∘S_C⁻¹",
            (((x,), sigma_b.map.columns[x], composite.columns[x]) for x in range(bb.dim)),
        )

    def delta_density() -> Witness | None:
        return first_mismatch(
            "ψ(x) != φ(xδ)",
            (scalar_case((i,), psi.on_basis(i), phi(total.mul(e[i], delta))) for i in range(d)),
        )

    def modular_elements_invertible() -> Witness | None:
        for name, z in (("δ", delta), ("δ⁺", delta_plus), ("δ⁻", delta_minus)):
            if not total.left_mult(z).is_invertible():
                return failure(f"{name} is not invertible")
        return None

    def delta_plus_minus() -> Witness | None:
        return first_mismatch(
            "(δ⁻)* != δ⁺ or S(δ⁺)δ⁻ != 1",
            [
                ((0,), total.adjoint(delta_minus), delta_plus),
                ((1,), total.mul(a.antipode.apply(delta_plus), delta_minus), total.unit),
            ],
        )

    specs = [
        CheckSpec("sigma_c_restriction", "modular automorphisms", sigma_c_restriction),
        CheckSpec("sigma_b_restriction", "modular automorphisms", sigma_b_restriction),
        CheckSpec("sigma_c_antipode", "modular automorphisms", sigma_c_antipode),
        CheckSpec("sigma_b_antipode", "modular automorphisms", sigma_b_antipode),
        CheckSpec("delta_density", "modular elements", delta_density),
        CheckSpec("modular_elements_invertible", "modular elements", modular_elements_invertible),
        CheckSpec("delta_plus_minus", "modular elements", delta_plus_minus),
    ]
    prov = a.provenance
    if prov is not None and prov.presentation == "right":
        specs += _construction_formulas(a, sigma_b, sigma_c, sigma_phi, workers=workers)
    report = run_checks(f"{a.label}: modular data", specs, workers=workers)
    logger.info("mmha_modular_data event=computed label=%s passed=%s", a.label, report.passed)
    return MMHAModularData(
        sigma_b, sigma_c, sigma_phi, sigma_psi, delta, delta_plus, delta_minus, report
    )


def _construction_formulas(
    a: MMHA,
    sigma_b: AlgebraMap,
    sigma_c: AlgebraMap,
    sigma_phi: AlgebraMap,
    *,
    workers: int | None,
) -> list[CheckSpec]:
    """σ^φ(h#m) = σ_𝔾(h)#γ(m), σ_B(α(m)) = α(γ(m)) and σ_C(β(m)) = β(γ̂(m))."""
    prov = a.provenance
    assert prov is not None
    sp, g = prov.smash, prov.group
    sigma_g = modular_data(g, workers=workers).sigma.map
    n = sp.n.dim

    def sigma_phi_formula() -> Witness | None:
        return first_mismatch(
            "σ^φ(h#m) != σ_𝔾(h)#γ(m)",
            (
                (
                    (h, m),
                    sigma_phi({sp.index(h, m): ONE}),
                    sp.element(sigma_g.columns[h], prov.gamma.columns[m]),
                )
                for h in range(g.dim)
                for m in range(n)
            ),
        )

    # B and C carry the coordinates of N through α and β
    def sigma_b_formula() -> Witness | None:
        return first_mismatch(
            "σ_B(α(m)) != α(γ(m))",
            (
                ((m,), prov.alpha(sigma_b.map.columns[m]), prov.alpha(prov.gamma.columns[m]))
                for m in range(n)
            ),
        )

    def sigma_c_formula() -> Witness | None:
        return first_mismatch(
            "σ_C(β(m)) != β(γ̂(m))",
            (
                ((m,), prov.beta(sigma_c.map.columns[m]), prov.beta(prov.gamma_hat.columns[m]))
                for m in range(n)
            ),
        )

    return [
        CheckSpec("sigma_phi_formula", "modular automorphisms", sigma_phi_formula),
        CheckSpec("sigma_b_formula", "modular automorphisms", sigma_b_formula),
        CheckSpec("sigma_c_formula", "modular automorphisms", sigma_c_formula),
    ]


def is_kac(a: MMHA, *, workers: int | None = None) -> KacVerdict:
    """Kac verdict with both equivalences evaluated side by side.

    ``S`` is *-preserving iff ``𝔾`` is of Kac type and ``μ`` is tracial; and ``μ`` is tracial
    iff ``*∘S_C∘_Cε = ε_B∘*`` iff ``*∘S_B∘ε_B = _Cε∘*``.
    """
    prov = a.provenance
    if prov is None:
        raise ProvenanceMissingError(f"{a.label}: is_kac needs the measured YD it was built from")
    total, bb, bc = a.total, a.base_b, a.base_c
    d = a.dim
    e = [{i: ONE} for i in range(d)]
    s = a.antipode
    kac = all(
        vec_equal(s.apply(total.adjoint(e[i])), total.adjoint(s.columns[i])) for i in range(d)
    ) and s.compose(s).is_identity()
    group_kac = prov.group.is_kac
    tracial = prov.gamma.is_identity()
    counit_i = all(
        vec_equal(
            bb.adjoint(a.t_b_inverse.apply(a.eps_c.columns[i])),
            a.eps_b.apply(total.adjoint(e[i])),
        )
        for i in range(d)
    )
    counit_ii = all(
        vec_equal(
            bc.adjoint(a.t_c_inverse.apply(a.eps_b.columns[i])),
            a.eps_c.apply(total.adjoint(e[i])),
        )
        for i in range(d)
    )

    def verdict(name: str, lhs: bool, rhs: bool) -> Witness | None:
        if lhs == rhs:
            return None
        return failure(f"{name}: {lhs} on the algebroid side, {rhs} on the group side")

    specs = [
        CheckSpec(
            "kac_equivalence",
            "Kac type",
            lambda: verdict("S *-preserving vs Kac 𝔾 and tracial μ", kac, group_kac and tracial),
        ),
        CheckSpec(
            "tracial_counit_c",
            "traciality",
            lambda: verdict("*∘S_C∘_Cε = ε_B∘* vs tracial μ", counit_i, tracial),
        ),
        CheckSpec(
            "tracial_counit_b",
            "traciality",
            lambda: verdict("*∘S_B∘ε_B = _Cε∘* vs tracial μ", counit_ii, tracial),
        ),
    ]
    report = run_checks(f"{a.label}: Kac type", specs, workers=workers)
    logger.info(
        "is_kac event=evaluated label=%s kac=%s group_kac=%s tracial=%s",
        a.label,
        kac,
        group_kac,
        tracial,
    )
    return KacVerdict(kac, group_kac, tracial, report)

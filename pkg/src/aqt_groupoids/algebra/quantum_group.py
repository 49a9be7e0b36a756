"""Finite algebraic quantum groups of compact type (finite-dimensional Hopf *-algebras).

Beginner terms used in this file:
- Comultiplication Δ: the coproduct, stored as a map ``n -> n*n`` under the tensor convention.
- Counit ε and antipode S: the Hopf structure maps.
- Haar integral φ: positive faithful invariant functional; ψ = φ∘S is the right integral.
- Variants: the coopposite 𝔾° (flipped Δ), the conjugate 𝔾ᶜ (opposite algebra with the
  involution twisted by S⁻²) and their combination 𝔾°ᶜ.
"""

from __future__ import annotations

import logging
from collections.abc import Mapping
from dataclasses import dataclass
from functools import cached_property, partial
from typing import Literal

from ..errors import PreconditionError, UnsolvableError
from ..linear import LinMap, Scalar, Vec, apply_on_leg, flip, slice_leg, split_multi
from ..linear.scalars import ONE, ZERO, conj
from ..linear.solve import solve_linear
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
from .functionals import (
    Functional,
    functional_is_faithful,
    functional_is_positive,
    modular_automorphism,
)
from .homomorphisms import AlgebraMap
from .star_algebra import StarAlgebra, TensorSpace, check_algebra_axioms, gamma_opposite

logger = logging.getLogger(__name__)

Convention = Literal["plain", "co"]


@dataclass(frozen=True, eq=False)
class FiniteQuantumGroup:
    alg: StarAlgebra
    comul: LinMap
    counit: Functional
    antipode: LinMap
    haar: Functional
    label: str = "G"
    convention: Convention = "plain"

    @property
    def dim(self) -> int:
        return self.alg.dim

    @cached_property
    def h2(self) -> TensorSpace:
        return TensorSpace((self.alg, self.alg))

    @cached_property
    def h3(self) -> TensorSpace:
        return TensorSpace((self.alg, self.alg, self.alg))

    def delta(self, v: Mapping[int, Scalar]) -> Vec:
        return self.comul.apply(v)

    def delta2(self, v: Mapping[int, Scalar]) -> Vec:
        """``(Δ⊗id)Δ(v)`` as a vector of the triple tensor power."""
        n = self.dim
        return apply_on_leg(self.delta(v), (n, n), 0, self.comul.columns.__getitem__, n * n)

    def sweedler(self, v: Mapping[int, Scalar], legs: int) -> list[tuple[Scalar, tuple[int, ...]]]:
        """Iterated coproduct of ``v`` as ``(coefficient, (i_1, ..., i_legs))`` terms."""
        n = self.dim
        current: Vec = dict(v)
        for k in range(1, legs):
            current = apply_on_leg(current, (n,) * k, 0, self.comul.columns.__getitem__, n * n)
        dims = (n,) * legs
        return [(c, split_multi(key, dims)) for key, c in sorted(current.items())]

    @cached_property
    def antipode_inverse(self) -> LinMap:
        inverse = self.antipode.inverse()
        if inverse is None:
            raise PreconditionError(f"{self.label}: antipode is not invertible")
        return inverse

    def antipode_power(self, k: int) -> LinMap:
        base = self.antipode if k >= 0 else self.antipode_inverse
        out = LinMap.identity(self.dim)
        for _ in range(abs(k)):
            out = base.compose(out)
        return out

    def S(self, v: Mapping[int, Scalar]) -> Vec:  # noqa: N802
        return self.antipode.apply(v)

    def S_inv(self, v: Mapping[int, Scalar]) -> Vec:  # noqa: N802
        return self.antipode_inverse.apply(v)

    def eps(self, v: Mapping[int, Scalar]) -> Scalar:
        return self.counit(v)

    def phi(self, v: Mapping[int, Scalar]) -> Scalar:
        return self.haar(v)

    @cached_property
    def psi(self) -> Functional:
        return self.haar.pullback(self.antipode, self.alg, label=f"ψ[{self.label}]")

    @cached_property
    def antipode_map(self) -> AlgebraMap:
        # S(a*) = S⁻¹(a)* = (S⁻²(S(a)))*
        return AlgebraMap(
            self.alg,
            self.alg,
            self.antipode,
            "anti-homomorphism",
            self.antipode_power(-2),
            f"S[{self.label}]",
        )

    @cached_property
    def is_kac(self) -> bool:
        return self.antipode_power(2).is_identity()

    def coopposite(self) -> FiniteQuantumGroup:
        n = self.dim
        return FiniteQuantumGroup(
            self.alg,
            flip(n, n).compose(self.comul),
            self.counit,
            self.antipode_inverse,
            Functional(self.alg, dict(self.psi.covector), f"ψ[{self.label}]"),
            f"{self.label}°",
            "co" if self.convention == "plain" else "plain",
        )

    def conjugate(self) -> FiniteQuantumGroup:
        alg = gamma_opposite(self.alg, self.antipode_power(-2), label=f"{self.alg.label}^op")
        return FiniteQuantumGroup(
            alg,
            self.comul,
            Functional(alg, dict(self.counit.covector), self.counit.label),
            self.antipode_inverse,
            Functional(alg, dict(self.haar.covector), f"{self.haar.label}°"),
            f"{self.label}ᶜ",
            self.convention,
        )

    def opposite_conjugate(self) -> FiniteQuantumGroup:
        """``𝔾°ᶜ`` built as ``(𝔾ᶜ)°`` so ``S: 𝔾°ᶜ -> 𝔾`` preserves stars."""
        both = self.conjugate().coopposite()
        return FiniteQuantumGroup(
            both.alg,
            both.comul,
            both.counit,
            both.antipode,
            both.haar,
            f"{self.label}°ᶜ",
            both.convention,
        )


@dataclass(frozen=True)
class QuantumGroupVariants:
    opposite: FiniteQuantumGroup
    conjugate: FiniteQuantumGroup
    both: FiniteQuantumGroup
    report: VerificationReport


def verify_aqg(g: FiniteQuantumGroup, *, workers: int | None = None) -> VerificationReport:
    n = g.dim
    alg, h2 = g.alg, g.h2
    e = [{i: ONE} for i in range(n)]
    eps_vec = g.counit.covector
    phi_vec = g.haar.covector
    psi_vec = g.psi.covector

    def comul_unital() -> Witness | None:
        return first_mismatch("Δ(1) != 1⊗1", [((), g.delta(alg.unit), h2.unit)])

    def comul_multiplicative() -> Witness | None:
        return first_mismatch(
            "Δ(e_i e_j) != Δ(e_i)Δ(e_j)",
            (
                ((i, j), g.delta(alg.mult[i][j]), h2.mul(g.comul.columns[i], g.comul.columns[j]))
                for i in range(n)
                for j in range(n)
            ),
        )

    def comul_star() -> Witness | None:
        return first_mismatch(
            "Δ(e_i*) != Δ(e_i)*",
            (
                ((i,), g.delta(alg.adjoint(e[i])), h2.adjoint(g.comul.columns[i]))
                for i in range(n)
            ),
        )

    def coassociative() -> Witness | None:
        return first_mismatch(
            "(Δ⊗id)Δ(e_i) != (id⊗Δ)Δ(e_i)",
            (
                (
                    (i,),
                    g.delta2(e[i]),
                    apply_on_leg(g.comul.columns[i], (n, n), 1, g.comul.columns.__getitem__, n * n),
                )
                for i in range(n)
            ),
        )

    def counit_left() -> Witness | None:
        return first_mismatch(
            "(ε⊗id)Δ(e_i) != e_i",
            (((i,), slice_leg(g.comul.columns[i], (n, n), 0, eps_vec), e[i]) for i in range(n)),
        )

    def counit_right() -> Witness | None:
        return first_mismatch(
            "(id⊗ε)Δ(e_i) != e_i",
            (((i,), slice_leg(g.comul.columns[i], (n, n), 1, eps_vec), e[i]) for i in range(n)),
        )

    def counit_star_homomorphism() -> Witness | None:
        cases = [scalar_case((), g.eps(alg.unit), ONE)]
        cases += [
            scalar_case((i, j), g.eps(alg.mult[i][j]), g.eps(e[i]) * g.eps(e[j]))
            for i in range(n)
            for j in range(n)
        ]
        cases += [scalar_case((i,), g.eps(alg.adjoint(e[i])), conj(g.eps(e[i]))) for i in range(n)]
        return first_mismatch("ε is not a unital *-homomorphism", cases)

    def _m_s_id(x: Mapping[int, Scalar], leg: int) -> Vec:
        out: Vec = {}
        for key, c in x.items():
            i, j = divmod(key, n)
            left = g.S(e[i]) if leg == 0 else e[i]
            right = g.S(e[j]) if leg == 1 else e[j]
            accumulate(out, c, alg.mul(left, right))
        return out

    def antipode_left() -> Witness | None:
        return first_mismatch(
            "m(S⊗id)Δ(e_i) != ε(e_i)1",
            (
                ((i,), _m_s_id(g.comul.columns[i], 0), vec_scale(g.eps(e[i]), alg.unit))
                for i in range(n)
            ),
        )

    def antipode_right() -> Witness | None:
        return first_mismatch(
            "m(id⊗S)Δ(e_i) != ε(e_i)1",
            (
                ((i,), _m_s_id(g.comul.columns[i], 1), vec_scale(g.eps(e[i]), alg.unit))
                for i in range(n)
            ),
        )

    def antipode_anti_multiplicative() -> Witness | None:
        return first_mismatch(
            "S(e_i e_j) != S(e_j)S(e_i)",
            (
                ((i, j), g.S(alg.mult[i][j]), alg.mul(g.S(e[j]), g.S(e[i])))
                for i in range(n)
                for j in range(n)
            ),
        )

    def antipode_star() -> Witness | None:
        return first_mismatch(
            "S∘*∘S∘*(e_i) != e_i",
            (((i,), g.S(alg.adjoint(g.S(alg.adjoint(e[i])))), e[i]) for i in range(n)),
        )

    def haar_nonzero() -> Witness | None:
        return None if phi_vec else failure("φ is the zero functional")

    def haar_positive() -> Witness | None:
        return None if functional_is_positive(g.haar) else failure("Gram matrix of φ not PSD")

    def haar_faithful() -> Witness | None:
        return None if functional_is_faithful(g.haar) else failure("φ(ab) form is degenerate")

    def invariance(covector: Mapping[int, Scalar], leg: int, name: str) -> Witness | None:
        return first_mismatch(
            f"{name} invariance fails",
            (
                (
                    (i,),
                    slice_leg(g.comul.columns[i], (n, n), leg, covector),
                    vec_scale(covector.get(i, ZERO), alg.unit),
                )
                for i in range(n)
            ),
        )

    def t_bijective(kind: str) -> Witness | None:
        columns = []
        for h in range(n):
            for k in range(n):
                if kind == "lambda":
                    columns.append(h2.mul(g.comul.columns[h], h2.pure([alg.unit, e[k]])))
                else:
                    columns.append(h2.mul(h2.pure([e[h], alg.unit]), g.comul.columns[k]))
        rank = LinMap(n * n, n * n, tuple(columns)).rank()
        return None if rank == n * n else failure(f"T_{kind} has rank {rank} < {n * n}")

    def invariance_variant_phi() -> Witness | None:
        cases = []
        for h in range(n):
            for k in range(n):
                left = h2.mul(g.comul.columns[h], h2.pure([alg.unit, e[k]]))
                right = h2.mul(h2.pure([alg.unit, e[h]]), g.comul.columns[k])
                lhs = g.S(slice_leg(left, (n, n), 1, phi_vec))
                rhs = slice_leg(right, (n, n), 1, phi_vec)
                cases.append(((h, k), lhs, rhs))
        return first_mismatch("S((id⊗φ)(Δ(h)(1⊗g))) != (id⊗φ)((1⊗h)Δ(g))", cases)

    def invariance_variant_psi() -> Witness | None:
        cases = []
        for h in range(n):
            for k in range(n):
                left = h2.mul(h2.pure([e[h], alg.unit]), g.comul.columns[k])
                right = h2.mul(g.comul.columns[h], h2.pure([e[k], alg.unit]))
                lhs = g.S(slice_leg(left, (n, n), 0, psi_vec))
                rhs = slice_leg(right, (n, n), 0, psi_vec)
                cases.append(((h, k), lhs, rhs))
        return first_mismatch("S((ψ⊗id)((h⊗1)Δ(g))) != (ψ⊗id)(Δ(h)(g⊗1))", cases)

    def kac_equivalence() -> Witness | None:
        star_preserving = all(
            vec_equal(g.S(alg.adjoint(e[i])), alg.adjoint(g.S(e[i]))) for i in range(n)
        )
        if star_preserving == g.is_kac:
            return None
        return failure(f"S²=id is {g.is_kac} but S *-preserving is {star_preserving}")

    specs = [
        CheckSpec("comul_unital", "AQG Δ", comul_unital),
        CheckSpec("comul_multiplicative", "AQG Δ", comul_multiplicative),
        CheckSpec("comul_star", "AQG Δ", comul_star),
        CheckSpec("coassociative", "AQG (3)", coassociative),
        CheckSpec("t_lambda_bijective", "AQG (2)", lambda: t_bijective("lambda")),
        CheckSpec("t_rho_bijective", "AQG (2)", lambda: t_bijective("rho")),
        CheckSpec("counit_left", "counit (1)", counit_left),
        CheckSpec("counit_right", "counit (1)", counit_right),
        CheckSpec("counit_star_homomorphism", "counit", counit_star_homomorphism),
        CheckSpec("antipode_left", "antipode (2)", antipode_left),
        CheckSpec("antipode_right", "antipode (2)", antipode_right),
        CheckSpec("antipode_anti_multiplicative", "antipode", antipode_anti_multiplicative),
        CheckSpec("antipode_star", "S∘*∘S∘* = id", antipode_star),
        CheckSpec("haar_nonzero", "left integral", haar_nonzero),
        CheckSpec("haar_positive", "left integral", haar_positive),
        CheckSpec("haar_faithful", "left integral", haar_faithful),
        CheckSpec(
            "haar_left_invariant", "left integral", partial(invariance, phi_vec, 1, "left φ")
        ),
        CheckSpec(
            "haar_right_invariant", "compact type", partial(invariance, phi_vec, 0, "right φ")
        ),
        CheckSpec(
            "psi_right_invariant", "right integral", partial(invariance, psi_vec, 0, "right ψ")
        ),
        CheckSpec(
            "psi_left_invariant", "compact type", partial(invariance, psi_vec, 1, "left ψ")
        ),
        CheckSpec("invariance_variant_phi", "invariance variants", invariance_variant_phi),
        CheckSpec("invariance_variant_psi", "invariance variants", invariance_variant_psi),
        CheckSpec("kac_equivalence", "Kac type", kac_equivalence),
    ]
    report = check_algebra_axioms(alg, workers=workers)
    report = VerificationReport(label=f"{g.label}: AQG axioms", checks=[]).merge(
        report, prefix="algebra"
    )
    return report.merge(run_checks(f"{g.label}: AQG axioms", specs, workers=workers))


@dataclass(frozen=True)
class ModularData:
    sigma: AlgebraMap
    sigma_prime: LinMap
    delta: Vec
    report: VerificationReport


def modular_data(g: FiniteQuantumGroup, *, workers: int | None = None) -> ModularData:
    """σ, σ′ = S⁻¹∘σ⁻¹∘S and the modular element δ with ψ(x) = φ(xδ)."""
    sigma = modular_automorphism(g.haar)
    if sigma is None:
        raise UnsolvableError(f"{g.label}: φ admits no modular automorphism")
    sigma_inverse = sigma.map.inverse()
    assert sigma_inverse is not None
    sigma_prime = g.antipode_inverse.compose(sigma_inverse).compose(g.antipode)
    delta = solve_linear(g.haar.bilinear_form, g.psi.covector)
    if delta is None:
        raise UnsolvableError(f"{g.label}: no modular element")
    n = g.dim
    alg, h2 = g.alg, g.h2
    e = [{i: ONE} for i in range(n)]
    s2 = g.antipode_power(2)
    s_minus2 = g.antipode_power(-2)

    def delta_grouplike() -> Witness | None:
        return first_mismatch("Δ(δ) != δ⊗δ", [((), g.delta(delta), h2.pure([delta, delta]))])

    def delta_counit() -> Witness | None:
        return first_mismatch("ε(δ) != 1", [scalar_case((), g.eps(delta), ONE)])

    def delta_antipode() -> Witness | None:
        return first_mismatch("S(δ)δ != 1", [((), alg.mul(g.S(delta), delta), alg.unit)])

    def delta_fixed() -> Witness | None:
        return first_mismatch(
            "σ(δ) or σ′(δ) differs from δ",
            [((0,), sigma.map.apply(delta), delta), ((1,), sigma_prime.apply(delta), delta)],
        )

    def sigma_comul() -> Witness | None:
        return first_mismatch(
            "Δ∘σ != (S²⊗σ)∘Δ",
            (
                (
                    (i,),
                    g.delta(sigma.map.columns[i]),
                    _apply_pair(g.comul.columns[i], n, s2, sigma.map),
                )
                for i in range(n)
            ),
        )

    def sigma_prime_comul() -> Witness | None:
        return first_mismatch(
            "Δ∘σ′ != (σ′⊗S⁻²)∘Δ",
            (
                (
                    (i,),
                    g.delta(sigma_prime.columns[i]),
                    _apply_pair(g.comul.columns[i], n, sigma_prime, s_minus2),
                )
                for i in range(n)
            ),
        )

    def phi_sigma_invariant() -> Witness | None:
        return first_mismatch(
            "φ∘σ != φ",
            (scalar_case((i,), g.phi(sigma.map.columns[i]), g.phi(e[i])) for i in range(n)),
        )

    def psi_kms() -> Witness | None:
        return first_mismatch(
            "ψ(ab) != ψ(bσ′(a))",
            (
                scalar_case(
                    (i, j), g.psi(alg.mult[i][j]), g.psi(alg.mul(e[j], sigma_prime.columns[i]))
                )
                for i in range(n)
                for j in range(n)
            ),
        )

    specs = [
        CheckSpec("delta_grouplike", "modular element", delta_grouplike),
        CheckSpec("delta_counit", "modular element", delta_counit),
        CheckSpec("delta_antipode", "modular element", delta_antipode),
        CheckSpec("delta_fixed_by_sigma", "modular element", delta_fixed),
        CheckSpec("sigma_comul", "modular automorphism", sigma_comul),
        CheckSpec("sigma_prime_comul", "modular automorphism", sigma_prime_comul),
        CheckSpec("phi_sigma_invariant", "modular automorphism", phi_sigma_invariant),
        CheckSpec("psi_kms", "modular automorphism", psi_kms),
    ]
    report = run_checks(f"{g.label}: modular data", specs, workers=workers)
    return ModularData(sigma, sigma_prime, delta, report)


def _apply_pair(x: Mapping[int, Scalar], n: int, left: LinMap, right: LinMap) -> Vec:
    once = apply_on_leg(x, (n, n), 0, left.columns.__getitem__, n)
    return apply_on_leg(once, (n, n), 1, right.columns.__getitem__, n)


def aqg_isomorphism_report(
    f: LinMap,
    source: FiniteQuantumGroup,
    target: FiniteQuantumGroup,
    *,
    label: str,
    workers: int | None = None,
) -> VerificationReport:
    """Checks that ``f`` is an isomorphism of quantum groups ``source -> target``."""
    n = source.dim
    e = [{i: ONE} for i in range(n)]
    alg_map = AlgebraMap(source.alg, target.alg, f, "homomorphism", None, label)
    structure = alg_map.check(workers=workers)

    def bijective() -> Witness | None:
        return None if f.is_invertible() else failure("map is not bijective")

    def comul() -> Witness | None:
        return first_mismatch(
            "(f⊗f)Δ != Δ∘f",
            (
                ((i,), _apply_pair(source.comul.columns[i], n, f, f), target.delta(f.columns[i]))
                for i in range(n)
            ),
        )

    def counit() -> Witness | None:
        return first_mismatch(
            "ε∘f != ε",
            (scalar_case((i,), target.eps(f.columns[i]), source.eps(e[i])) for i in range(n)),
        )

    def antipode() -> Witness | None:
        return first_mismatch(
            "f∘S != S∘f",
            (((i,), f.apply(source.S(e[i])), target.S(f.columns[i])) for i in range(n)),
        )

    def haar() -> Witness | None:
        return first_mismatch(
            "φ∘f != φ",
            (scalar_case((i,), target.phi(f.columns[i]), source.phi(e[i])) for i in range(n)),
        )

    specs = [
        CheckSpec("bijective", "AQG isomorphism", bijective),
        CheckSpec("comul_intertwined", "AQG isomorphism", comul),
        CheckSpec("counit_intertwined", "AQG isomorphism", counit),
        CheckSpec("antipode_intertwined", "AQG isomorphism", antipode),
        CheckSpec("haar_intertwined", "AQG isomorphism", haar),
    ]
    report = run_checks(label, specs, workers=workers)
    return report.merge(structure, prefix="algebra_map")


def variants(g: FiniteQuantumGroup, *, workers: int | None = None) -> QuantumGroupVariants:
    opposite = g.coopposite()
    conjugate = g.conjugate()
    both = g.opposite_conjugate()
    report = VerificationReport(label=f"{g.label}: variants")
    for name, variant in (("opposite", opposite), ("conjugate", conjugate), ("both", both)):
        report = report.merge(verify_aqg(variant, workers=workers), prefix=name)
    report = report.merge(
        aqg_isomorphism_report(
            g.antipode, both, g, label=f"S: {both.label} -> {g.label}", workers=workers
        ),
        prefix="antipode_iso",
    )
    logger.info(
        "variants event=built label=%s passed=%s checks=%d",
        g.label,
        report.passed,
        len(report.checks),
    )
    return QuantumGroupVariants(opposite, conjugate, both, report)

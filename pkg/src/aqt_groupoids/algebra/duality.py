"""Finite quantum group duality: the canonical pairing, the dual and the multiplicative unitary."""

from __future__ import annotations

import logging
from collections.abc import Mapping
from dataclasses import dataclass
from functools import cached_property

from ..errors import DimensionMismatchError, PreconditionError
from ..linear import LinMap, Scalar, Vec, apply_on_leg, permute_legs, slice_leg, tensor_product
from ..linear.scalars import ONE, ZERO, conj
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
from .functionals import Functional
from .quantum_group import FiniteQuantumGroup, aqg_isomorphism_report, verify_aqg
from .star_algebra import StarAlgebra, TensorSpace, place

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class CanonicalPairing:
    left: FiniteQuantumGroup
    right: FiniteQuantumGroup
    matrix: LinMap

    def __post_init__(self) -> None:
        if self.matrix.shape != (self.left.dim, self.right.dim):
            raise DimensionMismatchError(
                f"pairing {self.left.label} x {self.right.label} has shape {self.matrix.shape}"
            )

    def pair(self, h: Mapping[int, Scalar], omega: Mapping[int, Scalar]) -> Scalar:
        return dot(h, self.matrix.apply(omega))

    def pair2(self, x: Mapping[int, Scalar], y: Mapping[int, Scalar]) -> Scalar:
        """``p²`` between ``H⊗H`` and ``D⊗D``."""
        return dot(x, self.matrix_squared.apply(y))

    def covector(self, h: Mapping[int, Scalar]) -> Vec:
        """``p(h, ·)`` as a covector on the right-hand side."""
        out: Vec = {}
        for k in range(self.right.dim):
            value = self.pair(h, {k: ONE})
            if value:
                out[k] = value
        return out

    def evaluate(self, omega: Mapping[int, Scalar]) -> Vec:
        """``p(·, ω)`` as a covector on the left-hand side."""
        return self.matrix.apply(omega)

    @cached_property
    def matrix_squared(self) -> LinMap:
        return tensor_product(self.matrix, self.matrix)

    @cached_property
    def inverse_matrix(self) -> LinMap:
        inverse = self.matrix.inverse()
        if inverse is None:
            raise PreconditionError(
                f"pairing {self.left.label} x {self.right.label} is degenerate"
            )
        return inverse

    @cached_property
    def dual_basis(self) -> tuple[Vec, ...]:
        """``ω^i`` with ``p(e_j, ω^i) = δ_ij``."""
        return self.inverse_matrix.columns


def check_pairing(p: CanonicalPairing, *, workers: int | None = None) -> VerificationReport:
    h, d = p.left, p.right
    n, m = h.dim, d.dim
    eh = [{i: ONE} for i in range(n)]
    ed = [{k: ONE} for k in range(m)]

    def nondegenerate() -> Witness | None:
        if n == m and p.matrix.is_invertible():
            return None
        return failure(f"pairing matrix of shape {p.matrix.shape} is not invertible")

    def coproduct_to_product() -> Witness | None:
        return first_mismatch(
            "p(e_a, ω_b ω_c) != p²(Δe_a, ω_b⊗ω_c)",
            (
                scalar_case(
                    (a, b, c),
                    p.pair(eh[a], d.alg.mult[b][c]),
                    p.pair2(h.comul.columns[a], {b * m + c: ONE}),
                )
                for a in range(n)
                for b in range(m)
                for c in range(m)
            ),
        )

    def product_to_coproduct() -> Witness | None:
        return first_mismatch(
            "p(e_a e_b, ω_c) != p²(e_a⊗e_b, Δω_c)",
            (
                scalar_case(
                    (a, b, c),
                    p.pair(h.alg.mult[a][b], ed[c]),
                    p.pair2({a * n + b: ONE}, d.comul.columns[c]),
                )
                for a in range(n)
                for b in range(n)
                for c in range(m)
            ),
        )

    def unit_counit() -> Witness | None:
        cases = [scalar_case((0, k), p.pair(h.alg.unit, ed[k]), d.eps(ed[k])) for k in range(m)]
        cases += [scalar_case((1, j), p.pair(eh[j], d.alg.unit), h.eps(eh[j])) for j in range(n)]
        return first_mismatch("p(1, ω) != ε(ω) or p(h, 1) != ε(h)", cases)

    def antipode() -> Witness | None:
        return first_mismatch(
            "p(S e_j, ω_k) != p(e_j, S ω_k)",
            (
                scalar_case((j, k), p.pair(h.S(eh[j]), ed[k]), p.pair(eh[j], d.S(ed[k])))
                for j in range(n)
                for k in range(m)
            ),
        )

    def star() -> Witness | None:
        return first_mismatch(
            "p(e_j, ω_k*) != conj p(S(e_j)*, ω_k)",
            (
                scalar_case(
                    (j, k),
                    p.pair(eh[j], d.alg.adjoint(ed[k])),
                    conj(p.pair(h.alg.adjoint(h.S(eh[j])), ed[k])),
                )
                for j in range(n)
                for k in range(m)
            ),
        )

    specs = [
        CheckSpec("nondegenerate", "canonical pairing", nondegenerate),
        CheckSpec("coproduct_to_product", "canonical pairing", coproduct_to_product),
        CheckSpec("product_to_coproduct", "canonical pairing", product_to_coproduct),
        CheckSpec("unit_counit", "canonical pairing", unit_counit),
        CheckSpec("antipode", "canonical pairing", antipode),
        CheckSpec("star", "canonical pairing", star),
    ]
    return run_checks(f"p: {h.label} x {d.label}", specs, workers=workers)


@dataclass(frozen=True)
class DualPair:
    """The dual of ``g`` on the dual basis ``ω_k`` with ``ω_k(e_j) = δ_jk``."""

    plain: FiniteQuantumGroup
    pairing: CanonicalPairing
    report: VerificationReport

    @property
    def hat(self) -> FiniteQuantumGroup:
        """``𝔾̂``: the dual with the flipped coproduct."""
        return self.plain.coopposite()


def build_dual(g: FiniteQuantumGroup, *, workers: int | None = None) -> DualPair:
    n = g.dim
    alg = g.alg
    e = [{i: ONE} for i in range(n)]

    # ω_i ω_j = Σ_k Δ(e_k)[i, j] ω_k
    products: list[list[Vec]] = [[{} for _ in range(n)] for _ in range(n)]
    for k in range(n):
        for key, c in g.comul.columns[k].items():
            i, j = divmod(key, n)
            accumulate(products[i][j], c, {k: ONE})
    unit = {k: value for k, value in g.counit.covector.items() if value}
    star_images = [alg.adjoint(g.S(e[j])) for j in range(n)]

    def star(k: int) -> Vec:
        # ω*(h) = conj ω(S(h)*)
        return {j: conj(image[k]) for j, image in enumerate(star_images) if image.get(k)}

    dual_alg = StarAlgebra.from_products(
        n, lambda i, j: products[i][j], unit, star, f"O({g.label})^"
    )
    comul_columns: list[Vec] = [{} for _ in range(n)]
    for i in range(n):
        for j in range(n):
            for k, c in alg.mult[i][j].items():
                accumulate(comul_columns[k], c, {i * n + j: ONE})
    comul = LinMap(n * n, n, tuple(comul_columns))
    counit = Functional.from_values(
        dual_alg, {k: alg.unit.get(k, ZERO) for k in range(n)}, f"ε[{g.label}^]"
    )

    # ψ̂ is the counit against the inverse Haar form; φ̂ = ψ̂∘Ŝ⁻¹.
    form_inverse = g.haar.bilinear_form.inverse()
    if form_inverse is None:
        raise PreconditionError(f"{g.label}: Haar integral is not faithful")
    psi_hat = {k: g.eps(form_inverse.columns[k]) for k in range(n)}
    antipode = g.antipode.transpose()
    antipode_inverse = antipode.inverse()
    assert antipode_inverse is not None
    phi_hat = {
        k: dot(psi_hat, antipode_inverse.columns[k]) for k in range(n)
    }
    plain = FiniteQuantumGroup(
        dual_alg,
        comul,
        counit,
        antipode,
        Functional.from_values(dual_alg, phi_hat, f"φ[{g.label}^]"),
        f"{g.label}^",
        "plain",
    )
    pairing = CanonicalPairing(g, plain, LinMap.identity(n))
    report = VerificationReport(label=f"{g.label}: dual").merge(
        verify_aqg(plain, workers=workers), prefix="dual"
    )
    report = report.merge(check_pairing(pairing, workers=workers), prefix="pairing")
    logger.info(
        "build_dual event=built label=%s dim=%d passed=%s", g.label, n, report.passed
    )
    return DualPair(plain, pairing, report)


def double_dual_report(g: FiniteQuantumGroup, *, workers: int | None = None) -> VerificationReport:
    """``𝔾 ≅ dual(dual(𝔾))`` through the evaluation map, which is the identity on coordinates."""
    twice = build_dual(build_dual(g, workers=workers).plain, workers=workers)
    return aqg_isomorphism_report(
        LinMap.identity(g.dim),
        g,
        twice.plain,
        label=f"{g.label} -> {twice.plain.label}",
        workers=workers,
    )


@dataclass(frozen=True)
class MultiplicativeUnitary:
    pairing: CanonicalPairing
    carrier: TensorSpace
    unitary: Vec
    report: VerificationReport


def multiplicative_unitary(
    p: CanonicalPairing, *, workers: int | None = None
) -> MultiplicativeUnitary:
    """``U = Σ_i e_i ⊗ ω^i`` in ``H⊗D`` with its leg identities and the adjoint action."""
    h, d = p.left, p.right
    n, m = h.dim, d.dim
    carrier = TensorSpace((h.alg, d.alg))
    u: Vec = {}
    for i, omega in enumerate(p.dual_basis):
        accumulate(u, ONE, carrier.pure([{i: ONE}, omega]))
    u_star = carrier.adjoint(u)
    hhd = TensorSpace((h.alg, h.alg, d.alg))
    hdd = TensorSpace((h.alg, d.alg, d.alg))

    def left_leg() -> Witness | None:
        lhs = apply_on_leg(u, (n, m), 0, h.comul.columns.__getitem__, n * n)
        rhs = hhd.mul(place(hhd, u, (0, 2)), place(hhd, u, (1, 2)))
        return first_mismatch("(Δ⊗id)U != U₁₃U₂₃", [((), lhs, rhs)])

    def right_leg() -> Witness | None:
        flipped = [permute_legs(col, (m, m), (1, 0)) for col in d.comul.columns]
        lhs = apply_on_leg(u, (n, m), 1, flipped.__getitem__, m * m)
        rhs = hdd.mul(place(hdd, u, (0, 2)), place(hdd, u, (0, 1)))
        return first_mismatch("(id⊗ΣΔ)U != U₁₃U₁₂", [((), lhs, rhs)])

    def unitary() -> Witness | None:
        return first_mismatch(
            "U*U or UU* differs from 1",
            [
                ((0,), carrier.mul(u_star, u), carrier.unit),
                ((1,), carrier.mul(u, u_star), carrier.unit),
            ],
        )

    def adjoint_action() -> Witness | None:
        # Ad_{Σ(U*)} sliced by p(h, ·) reproduces h' ◁ h = S(h₁)h'h₂.
        swapped_space = TensorSpace((d.alg, h.alg))
        v = permute_legs(u_star, (n, m), (1, 0))
        v_star = swapped_space.adjoint(v)
        cases = []
        for target in range(n):
            conjugated = swapped_space.mul_many(
                v, swapped_space.embed(1, {target: ONE}), v_star
            )
            for acting in range(n):
                lhs = slice_leg(conjugated, (m, n), 0, p.covector({acting: ONE}))
                rhs: Vec = {}
                for c, (i1, i2) in h.sweedler({acting: ONE}, 2):
                    accumulate(rhs, c, h.alg.mul_many(h.S({i1: ONE}), {target: ONE}, {i2: ONE}))
                cases.append(((target, acting), lhs, rhs))
        return first_mismatch("Ad_{Σ(U*)} does not slice to S(h₁)h'h₂", cases)

    specs = [
        CheckSpec("left_leg", "multiplicative unitary", left_leg),
        CheckSpec("right_leg", "multiplicative unitary", right_leg),
        CheckSpec("unitary", "multiplicative unitary", unitary),
        CheckSpec("adjoint_action", "Ad_{Σ(U*)}", adjoint_action),
    ]
    report = run_checks(f"U: {h.label} x {d.label}", specs, workers=workers)
    return MultiplicativeUnitary(p, carrier, u, report)

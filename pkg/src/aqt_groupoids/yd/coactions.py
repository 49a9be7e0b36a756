"""Coactions of finite quantum groups on *-algebras, in unpacked coordinates.

Right coactions put the quantum-group leg first (``m -> m₋₁⊗m₀``), left ones put it last.
"""

from __future__ import annotations

import logging
from collections.abc import Callable, Mapping
from dataclasses import dataclass
from typing import Literal

from ..algebra.actions import ModuleAction
from ..algebra.duality import CanonicalPairing
from ..algebra.quantum_group import FiniteQuantumGroup
from ..algebra.star_algebra import StarAlgebra, TensorSpace, gamma_opposite
from ..errors import DimensionMismatchError, GammaIncompatibleError
from ..linear import LinMap, Scalar, Vec, apply_on_leg, slice_leg, split_index
from ..linear.scalars import ONE
from ..linear.vectors import accumulate, format_vec, vec_equal
from ..reporting import (
    CheckSpec,
    VerificationReport,
    Witness,
    first_mismatch,
    run_checks,
)

logger = logging.getLogger(__name__)

Handedness = Literal["right", "left"]


@dataclass(frozen=True, eq=False)
class Coaction:
    aqg: FiniteQuantumGroup
    algebra: StarAlgebra
    map: LinMap
    handedness: Handedness = "right"
    label: str = "θ"

    def __post_init__(self) -> None:
        expected = (self.aqg.dim * self.algebra.dim, self.algebra.dim)
        if self.map.shape != expected:
            raise DimensionMismatchError(
                f"{self.label}: coaction shape {self.map.shape}, expected {expected}"
            )

    @property
    def dims(self) -> tuple[int, int]:
        if self.handedness == "right":
            return (self.aqg.dim, self.algebra.dim)
        return (self.algebra.dim, self.aqg.dim)

    @property
    def space(self) -> TensorSpace:
        if self.handedness == "right":
            return TensorSpace((self.aqg.alg, self.algebra))
        return TensorSpace((self.algebra, self.aqg.alg))

    def __call__(self, m: Mapping[int, Scalar]) -> Vec:
        return self.map.apply(m)

    def legs(self, m: Mapping[int, Scalar]) -> list[tuple[Scalar, int, int]]:
        """``θ(m)`` as ``(coefficient, quantum-group index, algebra index)`` terms."""
        out = []
        second = self.dims[1]
        for key, c in sorted(self.map.apply(m).items()):
            first, last = split_index(key, second)
            if self.handedness == "right":
                out.append((c, first, last))
            else:
                out.append((c, last, first))
        return out

    @classmethod
    def from_function(
        cls,
        aqg: FiniteQuantumGroup,
        algebra: StarAlgebra,
        fn: Callable[[int], Mapping[int, Scalar]],
        *,
        handedness: Handedness = "right",
        label: str = "θ",
    ) -> Coaction:
        n = algebra.dim
        return cls(
            aqg, algebra, LinMap.from_function(n, aqg.dim * n, fn), handedness, label
        )


def trivial_coaction(
    aqg: FiniteQuantumGroup, algebra: StarAlgebra, *, handedness: Handedness = "right"
) -> Coaction:
    """``m -> 1⊗m`` (or ``m⊗1``)."""
    space = (
        TensorSpace((aqg.alg, algebra))
        if handedness == "right"
        else TensorSpace((algebra, aqg.alg))
    )
    leg = 1 if handedness == "right" else 0
    return Coaction.from_function(
        aqg,
        algebra,
        lambda m: space.embed(leg, {m: ONE}),
        handedness=handedness,
        label="trv",
    )


def check_coaction(c: Coaction, *, workers: int | None = None) -> VerificationReport:
    g, alg = c.aqg, c.algebra
    n, d = alg.dim, g.dim
    space = c.space
    dims = c.dims
    e = [{i: ONE} for i in range(n)]
    right = c.handedness == "right"
    g_leg, n_leg = (0, 1) if right else (1, 0)

    def unital() -> Witness | None:
        return first_mismatch("θ(1) != 1⊗1", [((), c(alg.unit), space.unit)])

    def multiplicative() -> Witness | None:
        return first_mismatch(
            "θ(e_a e_b) != θ(e_a)θ(e_b)",
            (
                ((a, b), c(alg.mult[a][b]), space.mul(c.map.columns[a], c.map.columns[b]))
                for a in range(n)
                for b in range(n)
            ),
        )

    def star() -> Witness | None:
        return first_mismatch(
            "θ(e_a*) != θ(e_a)*",
            (((a,), c(alg.adjoint(e[a])), space.adjoint(c.map.columns[a])) for a in range(n)),
        )

    def comodule() -> Witness | None:
        cases = []
        for a in range(n):
            image = c.map.columns[a]
            lhs = apply_on_leg(image, dims, g_leg, g.comul.columns.__getitem__, d * d)
            rhs = apply_on_leg(image, dims, n_leg, c.map.columns.__getitem__, d * n)
            cases.append(((a,), lhs, rhs))
        return first_mismatch("(Δ⊗id)θ != (id⊗θ)θ", cases)

    def counital() -> Witness | None:
        return first_mismatch(
            "(ε⊗id)θ(e_a) != e_a",
            (
                ((a,), slice_leg(c.map.columns[a], dims, g_leg, g.counit.covector), e[a])
                for a in range(n)
            ),
        )

    specs = [
        CheckSpec("unital", "(A1)", unital),
        CheckSpec("multiplicative", "(A1)", multiplicative),
        CheckSpec("star", "(A1)", star),
        CheckSpec("comodule", "(A2)", comodule),
        CheckSpec("counital", "(A3)", counital),
    ]
    return run_checks(f"{c.label}: {g.label} on {alg.label}", specs, workers=workers)


def coaction_to_action(c: Coaction, p: CanonicalPairing) -> ModuleAction:
    """``m ◁_θ ω = (p(·, ω)⊗id)θ(m)``; a left coaction gives ``ω ▷_θ m = (id⊗p(·, ω))θ(m)``

    The resulting action is multiplicative through the flipped dual coproduct for right
    coactions, so it is recorded as an action of ``𝔾̂ = dual°``.
    """
    if p.left.dim != c.aqg.dim:
        raise DimensionMismatchError(f"{c.label}: pairing is for {p.left.label}")
    acting = p.right.coopposite() if c.handedness == "right" else p.right

    def fn(m: int, omega: int) -> Vec:
        out: Vec = {}
        for coeff, h, k in c.legs({m: ONE}):
            accumulate(out, coeff * p.pair({h: ONE}, {omega: ONE}), {k: ONE})
        return out

    return ModuleAction.from_function(
        acting,
        c.algebra,
        fn,
        side="right" if c.handedness == "right" else "left",
        label=f"◁_{c.label}",
    )


def action_to_coaction(
    a: ModuleAction, p: CanonicalPairing, aqg: FiniteQuantumGroup, *, label: str = "θ"
) -> Coaction:
    """Inverse of :func:`coaction_to_action`: ``θ(m) = Σ_i e_i ⊗ (m ◁ ω^i)``."""
    if p.left.dim != aqg.dim or a.acting.dim != p.right.dim:
        raise DimensionMismatchError(f"{a.label}: pairing does not fit {aqg.label}")
    handedness: Handedness = "right" if a.side == "right" else "left"
    n = a.algebra.dim
    dual_basis = p.dual_basis

    def fn(m: int) -> Vec:
        out: Vec = {}
        for i, omega in enumerate(dual_basis):
            acted = a.act({m: ONE}, omega)
            for k, coeff in acted.items():
                key = i * n + k if handedness == "right" else k * aqg.dim + i
                accumulate(out, coeff, {key: ONE})
        return out

    return Coaction.from_function(aqg, a.algebra, fn, handedness=handedness, label=label)


@dataclass(frozen=True)
class ActionVariants:
    """θ° (an action of 𝔾°) and θᶜ (an action of 𝔾ᶜ) on ``N^op_γ``."""

    opposite_algebra: StarAlgebra
    opposite: Coaction
    conjugate: Coaction
    report: VerificationReport


def _twisted_compatibility(c: Coaction, gamma: LinMap) -> Witness | None:
    """``θ∘γ = (S⁻²⊗γ)∘θ`` on every basis vector."""
    g = c.aqg
    s_minus2 = g.antipode_power(-2)
    for m in range(c.algebra.dim):
        lhs = c(gamma.columns[m])
        rhs: Vec = {}
        for coeff, h, k in c.legs({m: ONE}):
            part = c.space.pure(
                [s_minus2.columns[h], gamma.columns[k]]
                if c.handedness == "right"
                else [gamma.columns[k], s_minus2.columns[h]]
            )
            accumulate(rhs, coeff, part)
        if not vec_equal(lhs, rhs):
            return Witness(
                detail="θ∘γ != (S⁻²⊗γ)∘θ",
                basis=[m],
                lhs=format_vec(lhs),
                rhs=format_vec(rhs),
            )
    return None


def opposite_conjugate_actions(
    c: Coaction, gamma: LinMap, *, workers: int | None = None
) -> ActionVariants:
    witness = _twisted_compatibility(c, gamma)
    if witness is not None:
        raise GammaIncompatibleError(f"{c.label}: {witness.detail} at e{witness.basis[0]}")
    n_op = gamma_opposite(c.algebra, gamma, label=f"{c.algebra.label}^op")
    g = c.aqg
    dims = c.dims
    g_leg = 0 if c.handedness == "right" else 1

    def antipode_leg(v: Mapping[int, Scalar]) -> Vec:
        return apply_on_leg(v, dims, g_leg, g.antipode.columns.__getitem__, g.dim)

    opposite_map = LinMap.from_function(
        c.algebra.dim, g.dim * c.algebra.dim, lambda m: antipode_leg(c.map.columns[m])
    )
    opposite = Coaction(g.coopposite(), n_op, opposite_map, c.handedness, f"{c.label}°")
    conjugate = Coaction(g.conjugate(), n_op, c.map, c.handedness, f"{c.label}ᶜ")

    def relation() -> Witness | None:
        return first_mismatch(
            "(S⊗id)∘θᶜ != θ°",
            (
                ((m,), antipode_leg(conjugate.map.columns[m]), opposite.map.columns[m])
                for m in range(c.algebra.dim)
            ),
        )

    report = VerificationReport(label=f"{c.label}: opposite and conjugate actions")
    report = report.merge(check_coaction(opposite, workers=workers), prefix="opposite")
    report = report.merge(check_coaction(conjugate, workers=workers), prefix="conjugate")
    report = report.merge(
        run_checks(
            f"{c.label}: variant relation",
            [CheckSpec("antipode_relation", "(S⊗id)∘θᶜ = θ°", relation)],
            workers=workers,
        )
    )
    return ActionVariants(n_op, opposite, conjugate, report)

"""The measured multiplier Hopf *-algebroid record and the slice maps shared by its checkers.

The total algebra ``A`` holds the bases ``B`` and ``C`` through ``ι_B`` and ``ι_C``; ``t_B`` and
``t_C`` are stored as plain linear maps between the bases. ``Δ_B`` and ``Δ_C`` take values in
``A⊗A`` as representatives of classes in the balanced tensor products. The total integrals are
``ψ = μ_B ∘ _Bψ_B`` and ``φ = μ_C ∘ _Cφ_C``.

Everything is unital, so the multiplier algebras are the algebras themselves.
"""

from __future__ import annotations

import logging
from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from functools import cached_property
from typing import TYPE_CHECKING, Literal

from ..algebra.functionals import Functional
from ..algebra.homomorphisms import AlgebraMap
from ..algebra.quantum_group import FiniteQuantumGroup
from ..algebra.star_algebra import StarAlgebra, TensorSpace
from ..errors import DimensionMismatchError, PreconditionError
from ..linear import LinMap, Scalar, Subspace, Vec, apply_on_leg, kernel, split_index
from ..linear.scalars import ONE
from ..linear.vectors import accumulate
from .balanced import BalancedProduct, balanced_product, triple_normal_form

if TYPE_CHECKING:
    from ..yd.left import LeftMeasuredYD
    from ..yd.yetter_drinfeld import MeasuredYD
    from .smash import SmashProduct

logger = logging.getLogger(__name__)

Presentation = Literal["right", "left"]


@dataclass(frozen=True, eq=False)
class Provenance:
    """How a record was built: the quantum group, the measured YD algebra and the smash product."""

    group: FiniteQuantumGroup
    measured: MeasuredYD | LeftMeasuredYD
    smash: SmashProduct
    alpha: AlgebraMap
    beta: AlgebraMap
    gamma: LinMap
    gamma_hat: LinMap
    presentation: Presentation = "right"

    @property
    def embed_group(self) -> AlgebraMap:
        """``j_𝔾: h -> h # 1`` (or ``1 # h`` for the left construction)."""
        return self.smash.embed_h


@dataclass(frozen=True, eq=False)
class MMHA:
    total: StarAlgebra
    base_b: StarAlgebra
    base_c: StarAlgebra
    iota_b: AlgebraMap
    iota_c: AlgebraMap
    t_b: LinMap
    t_c: LinMap
    delta_b: LinMap
    delta_c: LinMap
    antipode: LinMap
    eps_b: LinMap
    eps_c: LinMap
    mu_b: Functional
    mu_c: Functional
    partial_psi: LinMap
    partial_phi: LinMap
    label: str = "A"
    frame: tuple[Vec, ...] | None = None
    provenance: Provenance | None = None

    def __post_init__(self) -> None:
        d, nb, nc = self.total.dim, self.base_b.dim, self.base_c.dim
        shapes = {
            "ι_B": (self.iota_b.map.shape, (d, nb)),
            "ι_C": (self.iota_c.map.shape, (d, nc)),
            "t_B": (self.t_b.shape, (nc, nb)),
            "t_C": (self.t_c.shape, (nb, nc)),
            "Δ_B": (self.delta_b.shape, (d * d, d)),
            "Δ_C": (self.delta_c.shape, (d * d, d)),
            "S": (self.antipode.shape, (d, d)),
            "ε_B": (self.eps_b.shape, (nb, d)),
            "_Cε": (self.eps_c.shape, (nc, d)),
            "_Bψ_B": (self.partial_psi.shape, (nb, d)),
            "_Cφ_C": (self.partial_phi.shape, (nc, d)),
        }
        for name, (found, expected) in shapes.items():
            if found != expected:
                raise DimensionMismatchError(
                    f"{self.label}: {name} has shape {found}, expected {expected}"
                )

    @property
    def dim(self) -> int:
        return self.total.dim

    @cached_property
    def a2(self) -> TensorSpace:
        return TensorSpace((self.total, self.total))

    @cached_property
    def a3(self) -> TensorSpace:
        return TensorSpace((self.total, self.total, self.total))

    @cached_property
    def t_b_inverse(self) -> LinMap:
        return _invert(self.t_b, f"{self.label}: t_B")

    @cached_property
    def t_c_inverse(self) -> LinMap:
        return _invert(self.t_c, f"{self.label}: t_C")

    @cached_property
    def antipode_inverse(self) -> LinMap:
        return _invert(self.antipode, f"{self.label}: S")

    @cached_property
    def balanced_b(self) -> BalancedProduct:
        """``A_B ⊗ ^BA``: ``a ι_B(x) ⊗ b = a ⊗ b ι_C(t_B(x))``."""
        return balanced_product(
            self.total,
            "right",
            self.iota_b.map,
            self.iota_c.map,
            self.t_b,
            frame=self.frame,
            label=f"{self.label}_B⊗^B{self.label}",
        )

    @cached_property
    def balanced_c(self) -> BalancedProduct:
        """``A^C ⊗ _CA``: ``ι_B(t_C(y)) a ⊗ b = a ⊗ ι_C(y) b``."""
        return balanced_product(
            self.total,
            "left",
            self.iota_b.map,
            self.iota_c.map,
            self.t_c_inverse,
            frame=self.frame,
            label=f"{self.label}^C⊗_C{self.label}",
        )

    @cached_property
    def total_psi(self) -> Functional:
        return self.mu_b.pullback(self.partial_psi, self.total, label=f"ψ[{self.label}]")

    @cached_property
    def total_phi(self) -> Functional:
        return self.mu_c.pullback(self.partial_phi, self.total, label=f"φ[{self.label}]")

    @cached_property
    def takeuchi_b(self) -> Subspace:
        """Representatives of ``{X : (ι_B(y)⊗1)X = (1⊗ι_C(t_B(y)))X}`` in ``A⊗A``."""
        return self._takeuchi("B")

    @cached_property
    def takeuchi_c(self) -> Subspace:
        """Representatives of ``{X : X(ι_B(t_C(x))⊗1) = X(1⊗ι_C(x))}`` in ``A⊗A``."""
        return self._takeuchi("C")

    def _takeuchi(self, which: str) -> Subspace:
        d = self.dim
        base = self.base_b.dim if which == "B" else self.base_c.dim
        balanced = self.balanced_b if which == "B" else self.balanced_c
        block = balanced.rank * d
        columns: list[Vec] = []
        for k in range(d * d):
            x = {k: ONE}
            column: Vec = {}
            for j in range(base):
                defect = balanced.normal_form(self.takeuchi_defect(which, j, x))
                accumulate(column, ONE, _shift(defect, j * block))
            columns.append(column)
        space = kernel(LinMap(base * block, d * d, tuple(columns)))
        logger.debug(
            "takeuchi event=computed label=%s side=%s dim=%d", self.label, which, space.dim
        )
        return space

    def takeuchi_defect(self, which: str, j: int, x: Mapping[int, Scalar]) -> Vec:
        """Difference of the two sides of the Takeuchi condition for the base vector ``j``."""
        a2 = self.a2
        if which == "B":
            y = self.iota_b.map.columns[j]
            moved = self.iota_c(self.t_b.columns[j])
            return _difference(a2.mul(a2.embed(0, y), x), a2.mul(a2.embed(1, moved), x))
        y = self.iota_b(self.t_c.columns[j])
        moved = self.iota_c.map.columns[j]
        return _difference(a2.mul(x, a2.embed(0, y)), a2.mul(x, a2.embed(1, moved)))

    def delta(self, which: str, a: Mapping[int, Scalar]) -> Vec:
        return (self.delta_b if which == "B" else self.delta_c).apply(a)

    def nf(self, which: str, x: Mapping[int, Scalar]) -> Vec:
        return (self.balanced_b if which == "B" else self.balanced_c).normal_form(x)

    def nf3(self, first: str, second: str, x: Mapping[int, Scalar]) -> Vec:
        """Triple normal form: ``first`` balances legs 0, 1 and ``second`` legs 1, 2."""
        pick = {"B": self.balanced_b, "C": self.balanced_c}
        return triple_normal_form(pick[first], pick[second], x)

    def delta_on_leg(self, which: str, x: Mapping[int, Scalar], leg: int) -> Vec:
        """``(Δ⊗id)`` (``leg=0``) or ``(id⊗Δ)`` (``leg=1``) on a two-leg tensor."""
        d = self.dim
        comul = self.delta_b if which == "B" else self.delta_c
        return apply_on_leg(x, (d, d), leg, comul.columns.__getitem__, d * d)

    def tensor(self, a: Mapping[int, Scalar], b: Mapping[int, Scalar]) -> Vec:
        return self.a2.pure([a, b])

    # slice maps

    def _legs(self, x: Mapping[int, Scalar]) -> list[tuple[Scalar, int, int]]:
        return [(c, *split_index(k, self.dim)) for k, c in sorted(x.items())]

    def slice_eps_b_first(self, x: Mapping[int, Scalar]) -> Vec:
        """``(ε_B ⊙ id)(a⊗b) = b ι_C(t_B(ε_B(a)))``."""
        return self._slice_b_first(x, self.eps_b)

    def slice_eps_b_second(self, x: Mapping[int, Scalar]) -> Vec:
        """``(id ⊙ ε_B)(a⊗b) = a ι_B(ε_B(b))``."""
        total = self.total
        out: Vec = {}
        for c, a, b in self._legs(x):
            accumulate(out, c, total.mul({a: ONE}, self.iota_b(self.eps_b.columns[b])))
        return out

    def slice_eps_c_first(self, x: Mapping[int, Scalar]) -> Vec:
        """``(_Cε ⊙ id)(a⊗b) = ι_C(_Cε(a)) b``."""
        total = self.total
        out: Vec = {}
        for c, a, b in self._legs(x):
            accumulate(out, c, total.mul(self.iota_c(self.eps_c.columns[a]), {b: ONE}))
        return out

    def slice_eps_c_second(self, x: Mapping[int, Scalar]) -> Vec:
        """``(id ⊙ _Cε)(a⊗b) = ι_B(t_C(_Cε(b))) a``."""
        return self._slice_c_second(x, self.eps_c)

    def slice_psi(self, x: Mapping[int, Scalar]) -> Vec:
        """``(_Bψ_B ⊙ id)(a⊗b) = b ι_C(t_B(_Bψ_B(a)))``."""
        return self._slice_b_first(x, self.partial_psi)

    def slice_phi(self, x: Mapping[int, Scalar]) -> Vec:
        """``(id ⊙ _Cφ_C)(a⊗b) = ι_B(t_C(_Cφ_C(b))) a``."""
        return self._slice_c_second(x, self.partial_phi)

    def _slice_b_first(self, x: Mapping[int, Scalar], to_b: LinMap) -> Vec:
        total = self.total
        out: Vec = {}
        for c, a, b in self._legs(x):
            moved = self.iota_c(self.t_b.apply(to_b.columns[a]))
            accumulate(out, c, total.mul({b: ONE}, moved))
        return out

    def _slice_c_second(self, x: Mapping[int, Scalar], to_c: LinMap) -> Vec:
        total = self.total
        out: Vec = {}
        for c, a, b in self._legs(x):
            moved = self.iota_b(self.t_c.apply(to_c.columns[b]))
            accumulate(out, c, total.mul(moved, {a: ONE}))
        return out

    def multiply_legs(self, x: Mapping[int, Scalar], left: LinMap, right: LinMap) -> Vec:
        """``m(f⊗g)(x)`` for linear maps ``f``, ``g`` on ``A``."""
        total = self.total
        out: Vec = {}
        for c, a, b in self._legs(x):
            accumulate(out, c, total.mul(left.columns[a], right.columns[b]))
        return out

    def relabel(self, label: str) -> MMHA:
        return MMHA(
            self.total,
            self.base_b,
            self.base_c,
            self.iota_b,
            self.iota_c,
            self.t_b,
            self.t_c,
            self.delta_b,
            self.delta_c,
            self.antipode,
            self.eps_b,
            self.eps_c,
            self.mu_b,
            self.mu_c,
            self.partial_psi,
            self.partial_phi,
            label,
            self.frame,
            self.provenance,
        )


def _invert(m: LinMap, context: str) -> LinMap:
    inverse = m.inverse()
    if inverse is None:
        raise PreconditionError(f"{context} is not invertible")
    return inverse


def _difference(u: Mapping[int, Scalar], v: Mapping[int, Scalar]) -> Vec:
    out = dict(u)
    accumulate(out, -ONE, v)
    return out


def _shift(v: Mapping[int, Scalar], offset: int) -> Vec:
    return {k + offset: c for k, c in v.items()}


def spanning_matrix(
    total: StarAlgebra, left: Sequence[Mapping[int, Scalar]], right: Sequence[Mapping[int, Scalar]]
) -> LinMap:
    """Columns ``left[i] right[j]`` in the order ``i·len(right) + j``."""
    return LinMap(
        total.dim,
        len(left) * len(right),
        tuple(total.mul(x, y) for x in left for y in right),
    )

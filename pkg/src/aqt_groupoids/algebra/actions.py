"""Module-algebra actions of finite quantum groups on *-algebras.

A right action is stored as ``N⊗H -> N`` with column ``m·dim(H) + h``, a left one as
``H⊗N -> N`` with column ``h·dim(N) + m``.
"""

from __future__ import annotations

import logging
from collections.abc import Callable, Mapping
from dataclasses import dataclass
from typing import Literal

from ..errors import DimensionMismatchError
from ..linear import LinMap, Scalar, Vec
from ..linear.scalars import ONE
from ..linear.vectors import accumulate, vec_scale
from ..reporting import CheckSpec, VerificationReport, Witness, first_mismatch, run_checks
from .duality import CanonicalPairing
from .quantum_group import FiniteQuantumGroup
from .star_algebra import StarAlgebra

logger = logging.getLogger(__name__)

Side = Literal["right", "left"]


@dataclass(frozen=True, eq=False)
class ModuleAction:
    acting: FiniteQuantumGroup
    algebra: StarAlgebra
    map: LinMap
    side: Side = "right"
    label: str = "◁"

    def __post_init__(self) -> None:
        expected = (self.algebra.dim, self.algebra.dim * self.acting.dim)
        if self.map.shape != expected:
            raise DimensionMismatchError(
                f"{self.label}: action shape {self.map.shape}, expected {expected}"
            )

    def _column(self, m: int, h: int) -> Vec:
        if self.side == "right":
            return self.map.columns[m * self.acting.dim + h]
        return self.map.columns[h * self.algebra.dim + m]

    def act(self, m: Mapping[int, Scalar], h: Mapping[int, Scalar]) -> Vec:
        """``m ◁ h`` for a right action, ``h ▷ m`` for a left one."""
        out: Vec = {}
        for i, x in m.items():
            for j, y in h.items():
                accumulate(out, x * y, self._column(i, j))
        return out

    def operator(self, h: Mapping[int, Scalar]) -> LinMap:
        """The linear map ``m -> act(m, h)`` on the module algebra."""
        n = self.algebra.dim
        return LinMap.from_function(n, n, lambda m: self.act({m: ONE}, h))

    @classmethod
    def from_function(
        cls,
        acting: FiniteQuantumGroup,
        algebra: StarAlgebra,
        fn: Callable[[int, int], Mapping[int, Scalar]],
        *,
        side: Side = "right",
        label: str = "◁",
    ) -> ModuleAction:
        """Build from ``fn(m, h)`` on basis indices."""
        n, d = algebra.dim, acting.dim
        if side == "right":
            columns = tuple(dict(fn(m, h)) for m in range(n) for h in range(d))
        else:
            columns = tuple(dict(fn(m, h)) for h in range(d) for m in range(n))
        return cls(acting, algebra, LinMap(n, n * d, columns), side, label)


def trivial_action(
    acting: FiniteQuantumGroup, algebra: StarAlgebra, *, side: Side = "right"
) -> ModuleAction:
    """``m ◁ h = ε(h) m``."""
    return ModuleAction.from_function(
        acting,
        algebra,
        lambda m, h: vec_scale(acting.counit.on_basis(h), {m: ONE}),
        side=side,
        label="trv",
    )


def adjoint_right_action(g: FiniteQuantumGroup) -> ModuleAction:
    """``m ◀_ad h = S(h₁) m h₂``."""
    alg = g.alg

    def fn(m: int, h: int) -> Vec:
        out: Vec = {}
        for c, (i1, i2) in g.sweedler({h: ONE}, 2):
            accumulate(out, c, alg.mul_many(g.S({i1: ONE}), {m: ONE}, {i2: ONE}))
        return out

    return ModuleAction.from_function(g, alg, fn, label="◀_ad")


def adjoint_left_action(g: FiniteQuantumGroup) -> ModuleAction:
    """``h ▶_ad m = h₁ m S(h₂)``."""
    alg = g.alg

    def fn(m: int, h: int) -> Vec:
        out: Vec = {}
        for c, (i1, i2) in g.sweedler({h: ONE}, 2):
            accumulate(out, c, alg.mul_many({i1: ONE}, {m: ONE}, g.S({i2: ONE})))
        return out

    return ModuleAction.from_function(g, alg, fn, side="left", label="▶_ad")


def convolution_right_action(p: CanonicalPairing) -> ModuleAction:
    """``h ◀ ω = (p(·, ω)⊗id)Δ(h)``: the dual acting on the quantum group from the right."""
    g = p.left

    def fn(h: int, omega: int) -> Vec:
        out: Vec = {}
        for c, (i1, i2) in g.sweedler({h: ONE}, 2):
            accumulate(out, c * p.pair({i1: ONE}, {omega: ONE}), {i2: ONE})
        return out

    return ModuleAction.from_function(p.right, g.alg, fn, label="◀")


def convolution_left_action(p: CanonicalPairing) -> ModuleAction:
    """``ω ▶ h = (id⊗p(·, ω))Δ(h)``."""
    g = p.left

    def fn(h: int, omega: int) -> Vec:
        out: Vec = {}
        for c, (i1, i2) in g.sweedler({h: ONE}, 2):
            accumulate(out, c * p.pair({i2: ONE}, {omega: ONE}), {i1: ONE})
        return out

    return ModuleAction.from_function(p.right, g.alg, fn, side="left", label="▶")


def check_module_algebra(
    action: ModuleAction, *, workers: int | None = None
) -> VerificationReport:
    g, n_alg = action.acting, action.algebra
    n, d = n_alg.dim, g.dim
    em = [{i: ONE} for i in range(n)]
    eh = [{j: ONE} for j in range(d)]
    right = action.side == "right"
    act = action.act

    def unital_module() -> Witness | None:
        return first_mismatch(
            "action of 1 is not the identity",
            (((m,), act(em[m], g.alg.unit), em[m]) for m in range(n)),
        )

    def module_law() -> Witness | None:
        if right:
            cases = (
                ((m, h, k), act(act(em[m], eh[h]), eh[k]), act(em[m], g.alg.mult[h][k]))
                for m in range(n)
                for h in range(d)
                for k in range(d)
            )
            return first_mismatch("(m ◁ h) ◁ k != m ◁ hk", cases)
        cases = (
            ((m, h, k), act(act(em[m], eh[k]), eh[h]), act(em[m], g.alg.mult[h][k]))
            for m in range(n)
            for h in range(d)
            for k in range(d)
        )
        return first_mismatch("h ▷ (k ▷ m) != hk ▷ m", cases)

    def unit_preserved() -> Witness | None:
        return first_mismatch(
            "action on 1 is not ε(h)1",
            (
                ((h,), act(n_alg.unit, eh[h]), vec_scale(g.counit.on_basis(h), n_alg.unit))
                for h in range(d)
            ),
        )

    def multiplicative() -> Witness | None:
        cases = []
        for h in range(d):
            legs = g.sweedler(eh[h], 2)
            for a in range(n):
                for b in range(n):
                    rhs: Vec = {}
                    for c, (i1, i2) in legs:
                        accumulate(
                            rhs, c, n_alg.mul(act(em[a], {i1: ONE}), act(em[b], {i2: ONE}))
                        )
                    cases.append(((a, b, h), act(n_alg.mult[a][b], eh[h]), rhs))
        return first_mismatch("action is not multiplicative through Δ", cases)

    def star_law() -> Witness | None:
        return first_mismatch(
            "(m ◁ h)* != m* ◁ S(h)*",
            (
                (
                    (m, h),
                    n_alg.adjoint(act(em[m], eh[h])),
                    act(n_alg.adjoint(em[m]), g.alg.adjoint(g.S(eh[h]))),
                )
                for m in range(n)
                for h in range(d)
            ),
        )

    specs = [
        CheckSpec("unital_module", "module algebra", unital_module),
        CheckSpec("module_law", "module algebra", module_law),
        CheckSpec("unit_preserved", "(DA1)", unit_preserved),
        CheckSpec("multiplicative", "(DA1)", multiplicative),
        CheckSpec("star_law", "(DA2)", star_law),
    ]
    return run_checks(
        f"{action.label}: {g.label} on {n_alg.label}", specs, workers=workers
    )

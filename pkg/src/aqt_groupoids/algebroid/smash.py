"""Smash product *-algebras of module-algebra actions.

Right smash products ``H # N`` use coordinates ``h·dim(N) + m``; left ones ``N # H`` use
``m·dim(H) + h``.
"""

from __future__ import annotations

import logging
from collections.abc import Mapping
from dataclasses import dataclass
from typing import Literal

from ..algebra.actions import ModuleAction, check_module_algebra, convolution_left_action
from ..algebra.duality import build_dual
from ..algebra.homomorphisms import AlgebraMap, check_algebra_map
from ..algebra.quantum_group import FiniteQuantumGroup
from ..algebra.star_algebra import StarAlgebra, check_algebra_axioms
from ..errors import VerificationFailure
from ..linear import LinMap, Scalar, Vec, span_rank
from ..linear.scalars import ONE
from ..linear.vectors import accumulate
from ..reporting import (
    CheckSpec,
    VerificationReport,
    Witness,
    failure,
    first_mismatch,
    run_checks,
)

logger = logging.getLogger(__name__)

Side = Literal["right", "left"]


@dataclass(frozen=True, eq=False)
class SmashProduct:
    h: FiniteQuantumGroup
    n: StarAlgebra
    action: ModuleAction
    total: StarAlgebra
    embed_h: AlgebraMap
    embed_n: AlgebraMap
    side: Side = "right"

    def index(self, h: int, m: int) -> int:
        if self.side == "right":
            return h * self.n.dim + m
        return m * self.h.dim + h

    def element(self, h: Mapping[int, Scalar], m: Mapping[int, Scalar]) -> Vec:
        """``h # m`` (right) or ``m # h`` (left) for arbitrary vectors."""
        out: Vec = {}
        for i, x in h.items():
            for j, y in m.items():
                accumulate(out, x * y, {self.index(i, j): ONE})
        return out


def _right_structure(
    g: FiniteQuantumGroup, n_alg: StarAlgebra, act: ModuleAction
) -> tuple[list[list[Vec]], list[Vec]]:
    d, n = g.dim, n_alg.dim
    hg = g.alg

    def product(i: int, j: int) -> Vec:
        h, m = divmod(i, n)
        k, p = divmod(j, n)
        out: Vec = {}
        for c, (k1, k2) in g.sweedler({k: ONE}, 2):
            left = hg.mult[h][k1]
            right = n_alg.mul(act.act({m: ONE}, {k2: ONE}), {p: ONE})
            for a, x in left.items():
                for b, y in right.items():
                    accumulate(out, c * x * y, {a * n + b: ONE})
        return out

    def star(i: int) -> Vec:
        h, m = divmod(i, n)
        out: Vec = {}
        m_star = n_alg.adjoint({m: ONE})
        for c, (h1, h2) in g.sweedler(hg.adjoint({h: ONE}), 2):
            for b, y in act.act(m_star, {h2: ONE}).items():
                accumulate(out, c * y, {h1 * n + b: ONE})
        return out

    size = d * n
    return (
        [[product(i, j) for j in range(size)] for i in range(size)],
        [star(i) for i in range(size)],
    )


def _left_structure(
    g: FiniteQuantumGroup, n_alg: StarAlgebra, act: ModuleAction
) -> tuple[list[list[Vec]], list[Vec]]:
    d, n = g.dim, n_alg.dim
    hg = g.alg

    def product(i: int, j: int) -> Vec:
        m, h = divmod(i, d)
        p, k = divmod(j, d)
        out: Vec = {}
        for c, (h1, h2) in g.sweedler({h: ONE}, 2):
            left = n_alg.mul({m: ONE}, act.act({p: ONE}, {h1: ONE}))
            right = hg.mult[h2][k]
            for a, x in left.items():
                for b, y in right.items():
                    accumulate(out, c * x * y, {a * d + b: ONE})
        return out

    def star(i: int) -> Vec:
        m, h = divmod(i, d)
        out: Vec = {}
        m_star = n_alg.adjoint({m: ONE})
        for c, (h1, h2) in g.sweedler(hg.adjoint({h: ONE}), 2):
            for a, x in act.act(m_star, {h1: ONE}).items():
                accumulate(out, c * x, {a * d + h2: ONE})
        return out

    size = d * n
    return (
        [[product(i, j) for j in range(size)] for i in range(size)],
        [star(i) for i in range(size)],
    )


def smash_product(
    g: FiniteQuantumGroup,
    n_alg: StarAlgebra,
    act: ModuleAction,
    *,
    label: str | None = None,
    verify_action: bool = True,
    workers: int | None = None,
) -> SmashProduct:
    """``H # N`` for a right action, ``N # H`` for a left one."""
    if verify_action:
        report = check_module_algebra(act, workers=workers)
        if not report.passed:
            raise VerificationFailure(report)
    right = act.side == "right"
    products, stars = (_right_structure if right else _left_structure)(g, n_alg, act)
    d, n = g.dim, n_alg.dim
    name = label or (f"{g.alg.label}#{n_alg.label}" if right else f"{n_alg.label}#{g.alg.label}")
    unit_index = (lambda h, m: h * n + m) if right else (lambda h, m: m * d + h)
    unit: Vec = {}
    for h, x in g.alg.unit.items():
        for m, y in n_alg.unit.items():
            accumulate(unit, x * y, {unit_index(h, m): ONE})
    total = StarAlgebra.from_products(
        d * n, lambda i, j: products[i][j], unit, stars.__getitem__, name
    )

    def embed_h(h: int) -> Vec:
        out: Vec = {}
        for m, y in n_alg.unit.items():
            accumulate(out, y, {unit_index(h, m): ONE})
        return out

    def embed_n(m: int) -> Vec:
        out: Vec = {}
        for h, x in g.alg.unit.items():
            accumulate(out, x, {unit_index(h, m): ONE})
        return out

    sp = SmashProduct(
        g,
        n_alg,
        act,
        total,
        AlgebraMap(g.alg, total, LinMap.from_function(d, d * n, embed_h), name="ι_H"),
        AlgebraMap(n_alg, total, LinMap.from_function(n, d * n, embed_n), name="ι_N"),
        "right" if right else "left",
    )
    logger.info("smash_product event=built label=%s side=%s dim=%d", name, sp.side, d * n)
    return sp


def check_smash_product(sp: SmashProduct, *, workers: int | None = None) -> VerificationReport:
    g, n_alg, total = sp.h, sp.n, sp.total
    d, n = g.dim, n_alg.dim
    act = sp.action.act
    iota_h, iota_n = sp.embed_h.map.columns, sp.embed_n.map.columns

    def smash_relation() -> Witness | None:
        cases = []
        for h in range(d):
            legs = g.sweedler({h: ONE}, 2)
            for m in range(n):
                rhs: Vec = {}
                if sp.side == "right":
                    lhs = total.mul(iota_n[m], iota_h[h])
                    for c, (h1, h2) in legs:
                        moved = sp.embed_n(act({m: ONE}, {h2: ONE}))
                        accumulate(rhs, c, total.mul(iota_h[h1], moved))
                else:
                    lhs = total.mul(iota_h[h], iota_n[m])
                    for c, (h1, h2) in legs:
                        moved = sp.embed_n(act({m: ONE}, {h1: ONE}))
                        accumulate(rhs, c, total.mul(moved, iota_h[h2]))
                cases.append(((h, m), lhs, rhs))
        detail = (
            "ι_N(m)ι_H(h) != ι_H(h₁)ι_N(m ◁ h₂)"
            if sp.side == "right"
            else "ι_H(h)ι_N(m) != ι_N(h₁ ▷ m)ι_H(h₂)"
        )
        return first_mismatch(detail, cases)

    def spanning(order: str) -> Witness | None:
        products = [
            total.mul(iota_h[h], iota_n[m]) if order == "hn" else total.mul(iota_n[m], iota_h[h])
            for h in range(d)
            for m in range(n)
        ]
        found = span_rank(total.dim, products)
        return None if found == total.dim else failure(f"span has rank {found} < {total.dim}")

    def injective() -> Witness | None:
        for name, f in (("ι_H", sp.embed_h), ("ι_N", sp.embed_n)):
            if f.map.rank() != f.map.cols:
                return failure(f"{name} is not injective")
        return None

    specs = [
        CheckSpec("smash_relation", "smash product", smash_relation),
        CheckSpec("spanning_hn", "smash product", lambda: spanning("hn")),
        CheckSpec("spanning_nh", "smash product", lambda: spanning("nh")),
        CheckSpec("embeddings_injective", "smash product", injective),
    ]
    report = run_checks(f"{total.label}: smash product", specs, workers=workers)
    report = report.merge(check_algebra_axioms(total, workers=workers), prefix="total")
    report = report.merge(check_algebra_map(sp.embed_h, workers=workers), prefix="embed_h")
    return report.merge(check_algebra_map(sp.embed_n, workers=workers), prefix="embed_n")


def heisenberg_algebra(g: FiniteQuantumGroup, *, workers: int | None = None) -> SmashProduct:
    """``ℋ(𝔾) = 𝒪(𝔾) # 𝒪̂`` for the left convolution action ``ω ▶ h = (id⊗ω)Δ(h)``."""
    action = convolution_left_action(build_dual(g, workers=workers).pairing)
    return smash_product(
        action.acting, g.alg, action, label=f"H({g.label})", workers=workers
    )

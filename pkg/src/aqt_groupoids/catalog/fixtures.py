"""Closed-form expectations for finite transformation groupoids.

``α(δ_y)(δ_a#1)`` is the indicator of the arrow ``(a, y)``, so the classical groupoid formulas
can be compared with the construction entry by entry.
"""

from __future__ import annotations

import logging

from ..algebra.star_algebra import StarAlgebra
from ..algebroid.mmha import MMHA
from ..linear import Vec
from ..linear.scalars import ONE, format_scalar
from ..pontrjagin.model import DualModel
from ..reporting import (
    CheckFn,
    CheckSpec,
    VerificationReport,
    Witness,
    failure,
    first_mismatch,
    run_checks,
)
from ..serialization import ClosedFormTables, DeltaEntry, dump_vector, load_vector
from .transformation import ActionData, load_action

logger = logging.getLogger(__name__)

FIXTURE_ACTIONS = {"z2-two-points": "z2_two_points", "s3-three-cosets": "s3_three_cosets"}


def closed_form_tables(a: ActionData) -> ClosedFormTables:
    g, n = a.group, a.set_size
    arrows = range(a.arrow_count)
    composable = [(s, t) for s in arrows for t in arrows if a.composable(s, t)]

    def delta_value(element: int, first: int, second: int) -> bool:
        p, f = a.split_arrow(element)
        (s, _), (t, x) = a.split_arrow(first), a.split_arrow(second)
        return g.mul(s, t) == p and x == f

    def antipode(element: int) -> Vec:
        p, f = a.split_arrow(element)
        return {
            j: ONE
            for j in arrows
            if g.inv(a.split_arrow(j)[0]) == p and a.range(j) == f
        }

    def counit_b(element: int) -> Vec:
        p, f = a.split_arrow(element)
        return {f: ONE} if p == g.identity else {}

    def counit_c(element: int) -> Vec:
        p, _ = a.split_arrow(element)
        return {a.range(element): ONE} if p == g.identity else {}

    delta = [
        DeltaEntry(element=i, first=s, second=t, value=format_scalar(ONE))
        for i in arrows
        for s, t in composable
        if delta_value(i, s, t)
    ]
    weights = a.weights or (ONE,) * n
    return ClosedFormTables(
        instance=a.name,
        arrows=a.arrow_count,
        points=n,
        composable=composable,
        delta_b=delta,
        antipode=[dump_vector(antipode(i)) for i in arrows],
        counit_b=[dump_vector(counit_b(i)) for i in arrows],
        counit_c=[dump_vector(counit_c(i)) for i in arrows],
        partial_psi=[dump_vector({a.source(i): ONE}) for i in arrows],
        partial_phi=[dump_vector({a.range(i): ONE}) for i in arrows],
        mu_b=dump_vector(dict(enumerate(weights))),
    )


def reference_tables() -> dict[str, ClosedFormTables]:
    """Expected-value tables for ``ℤ/2`` on two points and ``S₃`` on three cosets."""
    return {name: closed_form_tables(load_action(stem)) for name, stem in FIXTURE_ACTIONS.items()}


def closed_form_report(
    a: MMHA, tables: ClosedFormTables, *, workers: int | None = None
) -> VerificationReport:
    """Entry-for-entry comparison of a constructed algebroid with the closed-form tables."""
    d = tables.arrows
    expected_delta: dict[tuple[int, int, int], Vec] = {
        (e.element, e.first, e.second): load_vector([(0, e.value)]) for e in tables.delta_b
    }

    def shape() -> Witness | None:
        if a.dim == d:
            return None
        return failure(f"total algebra has dimension {a.dim}, groupoid has {d} arrows")

    def delta_b() -> Witness | None:
        cases = []
        for i in range(d):
            column = a.delta_b.columns[i]
            for s, t in tables.composable:
                found = column.get(s * d + t)
                cases.append(
                    ((i, s, t), {0: found} if found else {}, expected_delta.get((i, s, t), {}))
                )
        return first_mismatch("Δ_B differs from p(gg')f(x') on a composable pair", cases)

    def by_columns(name: str, got: tuple[Vec, ...], want: list[list[tuple[int, str]]]) -> CheckFn:
        def run() -> Witness | None:
            return first_mismatch(
                f"{name} differs from its closed form",
                (((i,), got[i], load_vector(want[i])) for i in range(d)),
            )

        return run

    def mu_b() -> Witness | None:
        return first_mismatch(
            "μ_B differs from ν", [((), a.mu_b.covector, load_vector(tables.mu_b))]
        )

    if (witness := shape()) is not None:
        return run_checks(
            f"{a.label}: closed forms",
            [CheckSpec("shape", "finite transformation groupoid", lambda: witness)],
            workers=workers,
        )
    specs = [
        CheckSpec("delta_b", "Δ_B on composable pairs", delta_b),
        CheckSpec(
            "antipode",
            "S = inversion pullback",
            by_columns("S", a.antipode.columns, tables.antipode),
        ),
        CheckSpec(
            "counit_b", "ε_B = p(e)f(x)", by_columns("ε_B", a.eps_b.columns, tables.counit_b)
        ),
        CheckSpec(
            "counit_c", "_Cε = p(e)f(x)", by_columns("_Cε", a.eps_c.columns, tables.counit_c)
        ),
        CheckSpec(
            "partial_psi",
            "_Bψ_B = Σ_g p(g)f(x)",
            by_columns("_Bψ_B", a.partial_psi.columns, tables.partial_psi),
        ),
        CheckSpec(
            "partial_phi",
            "_Cφ_C = Σ_g p(g)f(x)",
            by_columns("_Cφ_C", a.partial_phi.columns, tables.partial_phi),
        ),
        CheckSpec("mu_b", "μ_B = μ_ν", mu_b),
    ]
    report = run_checks(f"{a.label}: closed forms", specs, workers=workers)
    logger.info(
        "closed_form_report event=compared instance=%s passed=%s", tables.instance, report.passed
    )
    return report


def convolution_algebra(a: ActionData) -> StarAlgebra:
    """``ℂ[G⋉X]`` in the arrow basis."""
    g = a.group

    def product(i: int, j: int) -> Vec:
        if not a.composable(i, j):
            return {}
        return {a.compose(i, j): ONE}

    return StarAlgebra.from_products(
        a.arrow_count,
        product,
        {a.arrow(g.identity, x): ONE for x in range(a.set_size)},
        lambda i: {a.inverse_arrow(i): ONE},
        f"C[{g.name}⋉{a.name}]",
    )


def dual_presentation_report(
    a: ActionData, model: DualModel, *, workers: int | None = None
) -> VerificationReport:
    """The dual model total algebra ``ℂ[G] # K(X)`` is ``ℂ[G⋉X]`` with the same coordinates."""
    total = model.model_mmha.total
    expected = convolution_algebra(a)

    def same_structure() -> Witness | None:
        if total.dim != expected.dim:
            return failure(f"dual model has dimension {total.dim}, expected {expected.dim}")
        if total.same_structure(expected):
            return None
        return failure("dual model structure tensors differ from the convolution algebra")

    specs = [CheckSpec("convolution_algebra", "dual of G⋉X is C[G⋉X]", same_structure)]
    return run_checks(f"{a.name}: dual presentation", specs, workers=workers)

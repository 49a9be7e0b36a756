"""Graded *-algebras with a twisting family ρ, and the central-extension group bundles.

For ``𝔄 = ℂ[E]`` graded by ``K = E/Z`` the family is ``ρ_g(a) = λ_{l(g)}⁻¹ a λ_{l(g)}`` for a
chosen lift ``l``. Over ``ℂ[K]`` the YD data is ``θ(a) = λ_{g⁻¹}⊗a`` for ``a`` of degree ``g``
and ``a ◁ λ_g = ρ_g(a)``.
"""

from __future__ import annotations

import logging
from collections.abc import Mapping, Sequence
from dataclasses import dataclass

from ..algebra.functionals import Functional
from ..algebra.homomorphisms import AlgebraMap, check_algebra_map
from ..algebra.star_algebra import StarAlgebra
from ..config import get_settings
from ..errors import GroupAxiomError, InputError, PreconditionError, VerificationFailure
from ..linear import LinMap, Scalar, Vec
from ..linear.scalars import ONE, parse_scalar
from ..reporting import (
    CheckSpec,
    VerificationReport,
    Witness,
    failure,
    first_mismatch,
    run_checks,
)
from ..serialization import BundleSpec, read_json, validate_model
from ..yd.yetter_drinfeld import (
    MeasuredYD,
    check_yd_integral,
    gamma_maps,
    require_yd,
    yd_algebra,
)
from .groups import GroupData, group_algebra, resolve_group, trivial_group

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class GradedAlgebraData:
    base: StarAlgebra
    group: GroupData
    # grading[i] is the degree of basis vector i.
    grading: tuple[int, ...]
    rho: tuple[LinMap, ...]
    # ν on the degree-e part, as a covector on base indices.
    state: Vec | None = None
    label: str = "𝔄"

    def degree_part(self, g: int) -> tuple[int, ...]:
        return tuple(i for i, h in enumerate(self.grading) if h == g)


def check_graded(data: GradedAlgebraData, *, workers: int | None = None) -> VerificationReport:
    """The three ρ conditions plus multiplicativity of the grading, each with a witness."""
    a, k = data.base, data.group
    n = a.dim
    em = [{i: ONE} for i in range(n)]

    def shapes() -> Witness | None:
        if len(data.grading) != n:
            return failure(f"grading lists {len(data.grading)} degrees for dimension {n}")
        if len(data.rho) != k.order:
            return failure(f"{len(data.rho)} ρ maps for a group of order {k.order}")
        for g, r in enumerate(data.rho):
            if r.shape != (n, n):
                return failure(f"ρ_{g} has shape {r.shape}", (g,))
        return None

    def multiplicative() -> Witness | None:
        for i in range(n):
            for j in range(n):
                expected = k.mul(data.grading[i], data.grading[j])
                for key in a.mult[i][j]:
                    if data.grading[key] != expected:
                        return failure("product leaves the expected degree", (i, j, key))
        return None

    def rho_identity() -> Witness | None:
        r = data.rho[k.identity]
        return first_mismatch(
            "ρ_e is not the identity", (((m,), r.columns[m], em[m]) for m in range(n))
        )

    def rho_composition() -> Witness | None:
        return first_mismatch(
            "ρ_g ρ_g' != ρ_{g'g}",
            (
                (
                    (g, h, m),
                    data.rho[g].apply(data.rho[h].columns[m]),
                    data.rho[k.mul(h, g)].columns[m],
                )
                for g in range(k.order)
                for h in range(k.order)
                for m in range(n)
            ),
        )

    def exchange() -> Witness | None:
        return first_mismatch(
            "ab != ρ_{g⁻¹}(b)a",
            (
                (
                    (i, j),
                    a.mult[i][j],
                    a.mul(data.rho[k.inv(data.grading[i])].columns[j], em[i]),
                )
                for i in range(n)
                for j in range(n)
            ),
        )

    def rho_star_automorphisms() -> Witness | None:
        for g, r in enumerate(data.rho):
            sub = check_algebra_map(AlgebraMap(a, a, r, name=f"ρ_{g}"), workers=1)
            if not sub.passed:
                return failure(f"ρ_{g}: {'; '.join(sub.reasons)}", (g,))
            if not r.is_invertible():
                return failure(f"ρ_{g} is not invertible", (g,))
        return None

    shape_witness = shapes()
    if shape_witness is not None:
        return run_checks(
            f"{data.label}: graded algebra",
            [CheckSpec("shapes", "graded algebra", lambda: shape_witness)],
            workers=workers,
        )
    specs = [
        CheckSpec("grading_multiplicative", "graded algebra", multiplicative),
        CheckSpec("rho_identity", "ρ family (1)", rho_identity),
        CheckSpec("rho_composition", "ρ family (2)", rho_composition),
        CheckSpec("exchange", "ρ family (3)", exchange),
        CheckSpec("rho_star_automorphisms", "ρ family", rho_star_automorphisms),
    ]
    return run_checks(f"{data.label}: graded algebra", specs, workers=workers)


def central_extension_bundle(
    extension: GroupData,
    quotient: GroupData,
    projection: Sequence[int],
    lifts: Sequence[int],
    state: Sequence[Scalar] | None = None,
    *,
    name: str | None = None,
) -> GradedAlgebraData:
    """``ℂ[E]`` graded through ``π: E -> K`` with ``ρ_g = Ad(λ_{l(g)}⁻¹)``.

    Raises ``GroupAxiomError`` when ``π`` is not a surjective homomorphism with central kernel or
    a lift does not project to its element.
    """
    e_order, k_order = extension.order, quotient.order
    if len(projection) != e_order or any(not 0 <= p < k_order for p in projection):
        raise InputError(f"projection must map {e_order} elements into {k_order}")
    if len(lifts) != k_order or any(not 0 <= x < e_order for x in lifts):
        raise InputError(f"lifts must list one element of {extension.name} per quotient element")
    for x in range(e_order):
        for y in range(e_order):
            if projection[extension.mul(x, y)] != quotient.mul(projection[x], projection[y]):
                raise GroupAxiomError("projection is not a homomorphism", witness=(x, y))
    if set(projection) != set(range(k_order)):
        raise GroupAxiomError("projection is not onto", witness=tuple(sorted(set(projection))))
    for g, x in enumerate(lifts):
        if projection[x] != g:
            raise GroupAxiomError("lift does not project to its element", witness=(g, x))
    kernel = [z for z in range(e_order) if projection[z] == quotient.identity]
    for z in kernel:
        for x in range(e_order):
            if extension.mul(z, x) != extension.mul(x, z):
                raise GroupAxiomError("kernel is not central", witness=(z, x))

    base = group_algebra(extension).alg

    def rho(g: int) -> LinMap:
        lift = lifts[g]
        inverse = extension.inv(lift)
        return LinMap.from_function(
            e_order,
            e_order,
            lambda x: {extension.mul(extension.mul(inverse, x), lift): ONE},
        )

    covector: Vec | None = None
    if state is not None:
        if len(state) != len(kernel):
            raise InputError(f"state lists {len(state)} values for {len(kernel)} kernel elements")
        covector = {z: v for z, v in zip(kernel, state, strict=True) if v}
    label = name or f"C[{extension.name}]/{quotient.name}"
    logger.info(
        "central_extension_bundle event=built extension=%s quotient=%s kernel=%d",
        extension.name,
        quotient.name,
        len(kernel),
    )
    return GradedAlgebraData(
        base,
        quotient,
        tuple(projection),
        tuple(rho(g) for g in range(k_order)),
        covector if covector is not None else {extension.identity: ONE},
        label,
    )


def bundle_from_spec(spec: BundleSpec) -> GradedAlgebraData:
    state = None if spec.state is None else [parse_scalar(v) for v in spec.state]
    return central_extension_bundle(
        resolve_group(spec.extension),
        resolve_group(spec.quotient),
        spec.projection,
        spec.lifts,
        state,
        name=spec.name,
    )


def graded_bundle_yd(
    data: GradedAlgebraData,
    state: Mapping[int, Scalar] | None = None,
    *,
    verify: bool = True,
    workers: int | None = None,
) -> MeasuredYD:
    """``(𝔄, θ_𝔄, θ̂_{𝔄,ρ}, μ_ν)`` over ``ℂ[K]``; ``μ_ν`` extends ν by zero off degree ``e``."""
    graded = check_graded(data, workers=workers)
    if not graded.passed:
        raise VerificationFailure(graded)
    nu = dict(state) if state is not None else data.state
    if nu is None:
        raise PreconditionError(f"{data.label}: no state on the degree-e part")
    k = data.group
    identity_part = set(data.degree_part(k.identity))
    outside = sorted(i for i, v in nu.items() if v and i not in identity_part)
    if outside:
        raise PreconditionError(f"{data.label}: state is non-zero off degree e at {outside}")

    group = group_algebra(k)
    n, d = data.base.dim, k.order
    theta = LinMap.from_function(n, d * n, lambda i: {k.inv(data.grading[i]) * n + i: ONE})
    action = LinMap.from_function(n * d, n, lambda col: data.rho[col % d].columns[col // d])
    y = yd_algebra(group, data.base, theta, action, label=data.label)
    measured = MeasuredYD(y, Functional.from_values(data.base, nu, "μ_ν"))
    if verify:
        require_yd(y, workers=workers)
        report = check_yd_integral(measured, workers=workers).merge(
            bundle_gamma_report(data, measured, workers=workers), prefix="bundle"
        )
        if not report.passed:
            raise VerificationFailure(report)
    logger.info("graded_bundle_yd event=built label=%s dim=%d degrees=%d", data.label, n, d)
    return measured


def bundle_gamma_report(
    data: GradedAlgebraData, measured: MeasuredYD, *, workers: int | None = None
) -> VerificationReport:
    """``γ(a) = ρ_g(a)`` for ``a`` homogeneous of degree ``g``."""
    gamma, _ = gamma_maps(measured.yd)

    def gamma_is_rho() -> Witness | None:
        return first_mismatch(
            "γ(a) != ρ_deg(a)(a)",
            (
                ((i,), gamma.columns[i], data.rho[data.grading[i]].columns[i])
                for i in range(data.base.dim)
            ),
        )

    specs = [CheckSpec("gamma_is_rho", "γ on homogeneous elements", gamma_is_rho)]
    return run_checks(f"{data.label}: canonical automorphism", specs, workers=workers)


def load_bundle(stem: str) -> GradedAlgebraData:
    """A bundled central-extension description by file stem, e.g. ``q8_bundle``."""
    path = get_settings().resolved_catalog_dir() / f"{stem}.json"
    if not path.exists():
        raise InputError(f"unknown catalog bundle {stem!r}", location="bundle")
    return bundle_from_spec(validate_model(BundleSpec, read_json(path), source=str(path)))


def degenerate_bundle(g: GroupData) -> GradedAlgebraData:
    """``ℂ[G]`` for abelian ``G`` concentrated in degree ``e`` of the trivial group."""
    if not g.is_abelian:
        raise PreconditionError(f"{g.name}: a degree-e grading needs a commutative algebra")
    return central_extension_bundle(
        g, trivial_group(), [0] * g.order, [g.identity], name=f"C[{g.name}]/trivial"
    )

"""Quotient-type coideals ``𝒪(ℍ\\𝔾)`` as measured Yetter–Drinfeld *-algebras.

For finite groups the coideal is spanned by the indicators of the right cosets ``Hg``. The Haar
integral restricts to an invariant integral on it; the counit does not.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass

from ..algebra.actions import ModuleAction, adjoint_right_action
from ..algebra.homomorphisms import AlgebraMap, check_algebra_map
from ..algebra.quantum_group import FiniteQuantumGroup
from ..algebra.star_algebra import subalgebra
from ..config import get_settings
from ..errors import InputError, PreconditionError, VerificationFailure
from ..linear import LinMap, Vec, apply_on_leg, kernel, solve_many, tensor_product
from ..linear.scalars import ONE
from ..linear.vectors import vec_sub
from ..reporting import (
    CheckSpec,
    VerificationReport,
    Witness,
    failure,
    first_mismatch,
    run_checks,
)
from ..serialization import QuotientSpec, read_json, validate_model
from ..yd.coactions import Coaction
from ..yd.left import RightRightYD, check_right_right, right_right_to_yd
from ..yd.yetter_drinfeld import MeasuredYD, check_yd_integral, require_yd
from .groups import GroupData, function_algebra

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class QuotientCoideal:
    measured: MeasuredYD
    right_right: RightRightYD
    inclusion: LinMap
    report: VerificationReport
    subgroup: tuple[int, ...] = ()


def check_quotient_map(
    big: FiniteQuantumGroup, small: FiniteQuantumGroup, pi: LinMap, *, workers: int | None = None
) -> VerificationReport:
    """``π`` is an onto unital *-homomorphism with ``Δ_ℍ∘π = (π⊗π)∘Δ_𝔾``."""
    d, e = big.dim, small.dim
    pi_pi = tensor_product(pi, pi)

    def onto() -> Witness | None:
        found = pi.rank()
        return None if found == e else failure(f"π has rank {found} < {e}")

    def comultiplicative() -> Witness | None:
        return first_mismatch(
            "Δ(π(h)) != (π⊗π)Δ(h)",
            (
                ((h,), small.comul.apply(pi.columns[h]), pi_pi.apply(big.comul.columns[h]))
                for h in range(d)
            ),
        )

    specs = [
        CheckSpec("onto", "quotient map π", onto),
        CheckSpec("comultiplicative", "quotient map π", comultiplicative),
    ]
    report = run_checks(f"π: {big.label} -> {small.label}", specs, workers=workers)
    return report.merge(
        check_algebra_map(AlgebraMap(big.alg, small.alg, pi, name="π"), workers=workers),
        prefix="star_map",
    )


def fixed_space(big: FiniteQuantumGroup, small: FiniteQuantumGroup, pi: LinMap) -> LinMap:
    """Inclusion matrix of ``{h : (π⊗id)Δ(h) = 1⊗h}``, columns in kernel order."""
    d, e = big.dim, small.dim

    def column(h: int) -> Vec:
        pushed = apply_on_leg(big.comul.columns[h], (d, d), 0, pi.columns.__getitem__, e)
        unit_tensor = {u * d + h: c for u, c in small.alg.unit.items()}
        return vec_sub(pushed, unit_tensor)

    return kernel(LinMap.from_function(d, e * d, column)).as_map()


def coideal_yd(
    big: FiniteQuantumGroup,
    small: FiniteQuantumGroup,
    pi: LinMap,
    *,
    label: str | None = None,
    workers: int | None = None,
) -> QuotientCoideal:
    """The quotient-type coideal YD of ``π``, with the Haar integral restricted as μ."""
    d = big.dim
    label = label or f"O({small.label}\\{big.label})"
    report = VerificationReport(label=label).merge(
        check_quotient_map(big, small, pi, workers=workers), prefix="pi"
    )
    vectors = fixed_space(big, small, pi).columns
    if not vectors:
        raise PreconditionError(f"{label}: fixed space is zero")
    sub = subalgebra(big.alg, vectors, label)
    inclusion, n_alg = sub.inclusion, sub.algebra
    n = n_alg.dim

    lifted = solve_many(
        tensor_product(inclusion, LinMap.identity(d)),
        [big.comul.apply(column) for column in inclusion.columns],
    )
    if lifted is None:
        raise PreconditionError(f"{label}: Δ(N) is not inside N⊗𝒪(𝔾)")
    delta = Coaction(big, n_alg, LinMap(n * d, n, tuple(lifted)), "left", "δ")

    adjoint = adjoint_right_action(big)
    images = [
        adjoint.act(inclusion.columns[m], {h: ONE}) for m in range(n) for h in range(d)
    ]
    restricted = solve_many(inclusion, images)
    if restricted is None:
        raise PreconditionError(f"{label}: N is not invariant under the adjoint action")
    action = ModuleAction(big, n_alg, LinMap(n, n * d, tuple(restricted)), "right", "◀_ad|")

    rr = RightRightYD(big, action, delta, label)
    report = report.merge(check_right_right(rr, workers=workers), prefix="right_right")
    y = right_right_to_yd(rr)
    mu = big.haar.pullback(inclusion, n_alg, label="φ|")
    measured = MeasuredYD(y, mu)
    logger.info("coideal_yd event=built label=%s dim=%d ambient=%d", label, n, d)
    return QuotientCoideal(measured, rr, inclusion, report)


def restriction_map(g: GroupData, members: Sequence[int]) -> LinMap:
    """``K(G) -> K(H)``: ``δ_g`` goes to ``δ_g`` on ``H`` and to zero off it."""
    position = {s: i for i, s in enumerate(members)}
    return LinMap.from_function(
        g.order, len(members), lambda s: {position[s]: ONE} if s in position else {}
    )


def coset_indicators(g: GroupData, members: Sequence[int]) -> list[Vec]:
    return [{s: ONE for s in coset} for coset in g.right_cosets(members)]


def quotient_coideal_yd(
    g: GroupData,
    subgroup: Sequence[int],
    *,
    verify: bool = True,
    workers: int | None = None,
) -> QuotientCoideal:
    """``K(H\\G)`` from the restriction ``K(G) -> K(H)``, checked against the right cosets."""
    members = tuple(subgroup)
    if not g.is_subgroup(members):
        raise InputError(f"{list(members)} is not a subgroup of {g.name}", location="subgroup")
    big = function_algebra(g)
    small = function_algebra(g.restrict(members, name=f"{g.name}|H"))
    label = f"K(H\\{g.name})" if len(members) > 1 else f"K({g.name})"
    built = coideal_yd(big, small, restriction_map(g, members), label=label, workers=workers)
    indicators = coset_indicators(g, members)
    inclusion = built.inclusion

    def coset_dimension() -> Witness | None:
        if inclusion.cols == len(indicators):
            return None
        return failure(f"fixed space has dimension {inclusion.cols}, cosets {len(indicators)}")

    def cosets_fixed() -> Witness | None:
        if solve_many(inclusion, indicators) is not None:
            return None
        return failure("a right-coset indicator lies outside the fixed space")

    specs = [
        CheckSpec("coset_dimension", "𝒪(ℍ\\𝔾) = K(H\\G)", coset_dimension),
        CheckSpec("cosets_fixed", "𝒪(ℍ\\𝔾) = K(H\\G)", cosets_fixed),
    ]
    report = built.report.merge(run_checks(f"{label}: cosets", specs, workers=workers))
    if verify:
        report = report.merge(require_yd(built.measured.yd, workers=workers), prefix="yd")
        report = report.merge(check_yd_integral(built.measured, workers=workers), prefix="integral")
        if not report.passed:
            raise VerificationFailure(report)
    logger.info(
        "quotient_coideal_yd event=built group=%s subgroup=%d dim=%d",
        g.name,
        len(members),
        inclusion.cols,
    )
    return QuotientCoideal(built.measured, built.right_right, inclusion, report, members)


def canonical_yd(g: GroupData, *, workers: int | None = None) -> QuotientCoideal:
    """``𝒪(𝔾)`` itself: the coideal of the trivial subgroup, with identity inclusion."""
    return quotient_coideal_yd(g, (g.identity,), workers=workers)


def load_quotient(stem: str) -> QuotientSpec:
    """A bundled subgroup description by file stem, e.g. ``s3_z3_quotient``."""
    path = get_settings().resolved_catalog_dir() / f"{stem}.json"
    if not path.exists():
        raise InputError(f"unknown catalog quotient {stem!r}", location="quotient")
    return validate_model(QuotientSpec, read_json(path), source=str(path))

"""Transformation groupoids ``G⋉X`` as measured Yetter–Drinfeld *-algebras over ``K(G)``."""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass
from functools import cached_property

from ..algebra.actions import trivial_action
from ..algebra.functionals import Functional
from ..algebra.star_algebra import StarAlgebra
from ..config import get_settings
from ..errors import (
    DimensionMismatchError,
    GroupAxiomError,
    InputError,
    PreconditionError,
    VerificationFailure,
)
from ..linear import LinMap, Scalar, Subspace, Vec, kernel
from ..linear.scalars import ONE, ZERO, is_nonnegative, is_real, parse_scalar
from ..reporting import CheckSpec, VerificationReport, Witness, failure, run_checks
from ..serialization import ActionSpec, read_json, validate_model
from ..yd.yetter_drinfeld import MeasuredYD, YDAlgebra, check_yd_integral, require_yd, yd_algebra
from .groups import GroupData, function_algebra, resolve_group

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ActionData:
    name: str
    group: GroupData
    points: tuple[str, ...]
    # table[g][x] is the index of g·x.
    table: tuple[tuple[int, ...], ...]
    weights: tuple[Scalar, ...] | None = None

    @property
    def set_size(self) -> int:
        return len(self.points)

    @property
    def arrow_count(self) -> int:
        return self.group.order * self.set_size

    def act(self, g: int, x: int) -> int:
        return self.table[g][x]

    def arrow(self, g: int, x: int) -> int:
        return g * self.set_size + x

    def split_arrow(self, index: int) -> tuple[int, int]:
        return divmod(index, self.set_size)

    def source(self, index: int) -> int:
        return self.split_arrow(index)[1]

    def range(self, index: int) -> int:
        g, x = self.split_arrow(index)
        return self.act(g, x)

    def inverse_arrow(self, index: int) -> int:
        g, x = self.split_arrow(index)
        return self.arrow(self.group.inv(g), self.act(g, x))

    def composable(self, first: int, second: int) -> bool:
        """``first ∘ second`` is defined: the source of ``first`` is the range of ``second``."""
        return self.source(first) == self.range(second)

    def compose(self, first: int, second: int) -> int:
        g, _ = self.split_arrow(first)
        h, x = self.split_arrow(second)
        return self.arrow(self.group.mul(g, h), x)

    @cached_property
    def orbits(self) -> tuple[tuple[int, ...], ...]:
        seen: set[int] = set()
        found: list[tuple[int, ...]] = []
        for x in range(self.set_size):
            if x in seen:
                continue
            orbit = tuple(sorted({self.act(g, x) for g in range(self.group.order)}))
            seen.update(orbit)
            found.append(orbit)
        return tuple(found)

    def is_invariant(self, weights: Sequence[Scalar]) -> bool:
        return all(
            weights[self.act(g, x)] == weights[x]
            for g in range(self.group.order)
            for x in range(self.set_size)
        )


def validate_action(a: ActionData) -> ActionData:
    """Raise ``GroupAxiomError`` with the first offending tuple, else return ``a``."""
    g = a.group
    if len(a.table) != g.order:
        raise InputError(
            f"{a.name}: action_table has {len(a.table)} rows for a group of order {g.order}",
            location="action_table",
        )
    for x in range(a.set_size):
        if a.act(g.identity, x) != x:
            raise GroupAxiomError(f"{a.name}: e·x != x", witness=(g.identity, x))
    for s in range(g.order):
        for t in range(g.order):
            st = g.mul(s, t)
            for x in range(a.set_size):
                if a.act(st, x) != a.act(s, a.act(t, x)):
                    raise GroupAxiomError(f"{a.name}: (gh)·x != g·(h·x)", witness=(s, t, x))
    return a


def action_from_spec(spec: ActionSpec) -> ActionData:
    weights = None if spec.weights is None else tuple(parse_scalar(w) for w in spec.weights)
    data = ActionData(
        spec.name,
        resolve_group(spec.group),
        tuple(spec.points),
        tuple(tuple(row) for row in spec.action_table),
        weights,
    )
    return validate_action(data)


def load_action(name: str) -> ActionData:
    """A bundled action by file stem, e.g. ``z2_two_points``."""
    path = get_settings().resolved_catalog_dir() / f"{name}.json"
    if not path.exists():
        raise InputError(f"unknown catalog action {name!r}", location="action")
    return action_from_spec(validate_model(ActionSpec, read_json(path), source=str(path)))


def coset_action(g: GroupData, subgroup: Sequence[int], *, name: str | None = None) -> ActionData:
    """``G`` acting on its left cosets ``sH`` by left multiplication."""
    if not g.is_subgroup(subgroup):
        raise InputError(f"{list(subgroup)} is not a subgroup of {g.name}")
    cosets: dict[tuple[int, ...], None] = {}
    for s in range(g.order):
        cosets.setdefault(tuple(sorted(g.mul(s, h) for h in subgroup)), None)
    ordered = list(cosets)
    position = {c: i for i, c in enumerate(ordered)}
    table = tuple(
        tuple(position[tuple(sorted(g.mul(s, c) for c in coset))] for coset in ordered)
        for s in range(g.order)
    )
    labels = tuple(f"{g.element_label(c[0])}H" for c in ordered)
    return validate_action(ActionData(name or f"{g.name}/{len(subgroup)}", g, labels, table))


def point_algebra(a: ActionData) -> StarAlgebra:
    """``K(X)``: pointwise product, all-ones unit, trivial involution."""
    n = a.set_size
    return StarAlgebra.from_products(
        n,
        lambda x, y: {x: ONE} if x == y else {},
        {x: ONE for x in range(n)},
        lambda x: {x: ONE},
        f"K({a.name})",
    )


def _weights(a: ActionData, weights: Sequence[Scalar] | None) -> tuple[Scalar, ...]:
    if weights is not None:
        chosen = tuple(weights)
    elif a.weights is not None:
        chosen = a.weights
    else:
        chosen = (ONE,) * a.set_size
    if len(chosen) != a.set_size:
        raise DimensionMismatchError(
            f"{a.name}: {len(chosen)} weights for {a.set_size} points", location="weights"
        )
    return chosen


def _check_weights(a: ActionData, weights: Sequence[Scalar]) -> None:
    if not all(is_real(w) and is_nonnegative(w) for w in weights):
        raise PreconditionError(f"{a.name}: weights must be nonnegative reals")
    if not any(weights):
        raise PreconditionError(f"{a.name}: weights are all zero")
    if not a.is_invariant(weights):
        raise PreconditionError(f"{a.name}: weights are not G-invariant")


def transformation_groupoid_yd(
    a: ActionData,
    weights: Sequence[Scalar] | None = None,
    *,
    check_weights: bool = True,
    verify: bool = True,
    workers: int | None = None,
) -> MeasuredYD:
    """``(K(X), θ, trv, μ_ν)`` over ``K(G)``.

    ``check_weights=False`` skips the weight preconditions; ``verify=False`` skips the YD and
    integral checks so corrupted instances can be handed to the checkers directly.
    """
    nu = _weights(a, weights)
    if check_weights:
        _check_weights(a, nu)
    group = function_algebra(a.group)
    n_alg = point_algebra(a)
    n = a.set_size

    def theta_column(y: int) -> Vec:
        return {
            g * n + x: ONE
            for g in range(a.group.order)
            for x in range(n)
            if a.act(g, x) == y
        }

    theta = LinMap.from_function(n, a.group.order * n, theta_column)
    y = yd_algebra(
        group, n_alg, theta, trivial_action(group, n_alg).map, label=f"K({a.name})"
    )
    measured = MeasuredYD(y, Functional.from_values(n_alg, dict(enumerate(nu)), "μ_ν"))
    if verify:
        require_yd(y, workers=workers)
        integral = check_yd_integral(measured, workers=workers)
        if not integral.passed:
            raise VerificationFailure(integral)
    logger.info(
        "transformation_groupoid_yd event=built action=%s points=%d orbits=%d",
        a.name,
        n,
        len(a.orbits),
    )
    return measured


def integral_cone(y: YDAlgebra) -> Subspace:
    """All covectors ``c`` on ``N`` with ``(id⊗c)θ(m) = c(m)1`` and ``c(m ◁ h) = ε(h)c(m)``."""
    g = y.group
    n, d = y.n.dim, g.dim
    rows: list[Vec] = []
    for m in range(n):
        per_h: dict[int, Vec] = {}
        for c, h, k in y.legs({m: ONE}):
            row = per_h.setdefault(h, {})
            row[k] = row.get(k, ZERO) + c
        for h in range(d):
            row = per_h.get(h, {})
            unit = g.alg.unit.get(h, ZERO)
            if unit:
                row[m] = row.get(m, ZERO) - unit
            rows.append(row)
        for h in range(d):
            row = dict(y.act({m: ONE}, {h: ONE}))
            eps = g.counit.on_basis(h)
            if eps:
                row[m] = row.get(m, ZERO) - eps
            rows.append(row)
    constraints = LinMap.from_rows(
        [[row.get(k, ZERO) for k in range(n)] for row in rows if any(row.values())]
        or [[ZERO] * n]
    )
    return kernel(constraints)


@dataclass(frozen=True, eq=False)
class IntegralCone:
    space: Subspace
    orbit_indicators: tuple[Vec, ...]
    report: VerificationReport


def transformation_integral_cone(
    a: ActionData, measured: MeasuredYD, *, workers: int | None = None
) -> IntegralCone:
    """Every YD integral of ``K(X)`` is some ``μ_ν``: the cone is spanned by orbit indicators."""
    space = integral_cone(measured.yd)
    indicators = tuple({x: ONE for x in orbit} for orbit in a.orbits)

    def dimension() -> Witness | None:
        if space.dim == len(a.orbits):
            return None
        return failure(f"invariant functionals have dimension {space.dim}, orbits {len(a.orbits)}")

    def orbits_invariant() -> Witness | None:
        for i, v in enumerate(indicators):
            if not space.contains(v):
                return failure("orbit indicator is not invariant", (i,))
        return None

    def weights_in_cone() -> Witness | None:
        if space.contains(measured.mu.covector):
            return None
        return failure("μ_ν lies outside the invariant functionals")

    specs = [
        CheckSpec("cone_dimension", "every YD integral is some μ_ν", dimension),
        CheckSpec("orbit_indicators_invariant", "every YD integral is some μ_ν", orbits_invariant),
        CheckSpec("weights_in_cone", "YD integral μ_ν", weights_in_cone),
    ]
    report = run_checks(f"{a.name}: integral cone", specs, workers=workers)
    return IntegralCone(space, indicators, report)

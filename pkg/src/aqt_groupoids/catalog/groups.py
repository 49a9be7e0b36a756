"""Finite groups from multiplication tables and their two quantum groups."""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass
from functools import cached_property, lru_cache

from ..algebra.duality import CanonicalPairing, build_dual, check_pairing
from ..algebra.functionals import Functional
from ..algebra.quantum_group import FiniteQuantumGroup, aqg_isomorphism_report, verify_aqg
from ..algebra.star_algebra import StarAlgebra
from ..config import get_settings
from ..errors import GroupAxiomError, InputError
from ..linear import LinMap, Vec
from ..linear.scalars import ONE
from ..reporting import VerificationReport, failure, single_check
from ..serialization import GroupSpec, read_json, validate_model

logger = logging.getLogger(__name__)

GROUP_NAMES = ("z2", "z3", "z2xz2", "s3", "q8")


@dataclass(frozen=True)
class GroupData:
    name: str
    mult_table: tuple[tuple[int, ...], ...]
    identity: int
    inverse: tuple[int, ...]
    elements: tuple[str, ...] = ()

    @property
    def order(self) -> int:
        return len(self.mult_table)

    def mul(self, g: int, h: int) -> int:
        return self.mult_table[g][h]

    def inv(self, g: int) -> int:
        return self.inverse[g]

    def element_label(self, g: int) -> str:
        return self.elements[g] if self.elements else f"g{g}"

    @cached_property
    def is_abelian(self) -> bool:
        return all(
            self.mul(g, h) == self.mul(h, g) for g in range(self.order) for h in range(self.order)
        )

    def is_subgroup(self, members: Sequence[int]) -> bool:
        chosen = set(members)
        return (
            self.identity in chosen
            and all(0 <= g < self.order for g in chosen)
            and all(self.mul(g, self.inv(h)) in chosen for g in chosen for h in chosen)
        )

    def restrict(self, members: Sequence[int], *, name: str | None = None) -> GroupData:
        """The subgroup on ``members`` relabelled ``0..k-1`` in the listed order."""
        if not self.is_subgroup(members):
            raise InputError(f"{list(members)} is not a subgroup of {self.name}")
        position = {g: i for i, g in enumerate(members)}
        table = tuple(tuple(position[self.mul(g, h)] for h in members) for g in members)
        return GroupData(
            name or f"{self.name}|{len(members)}",
            table,
            position[self.identity],
            tuple(position[self.inv(g)] for g in members),
            tuple(self.element_label(g) for g in members),
        )

    def right_cosets(self, members: Sequence[int]) -> list[tuple[int, ...]]:
        """``Hg`` for every ``g``, each listed once in order of first appearance."""
        seen: dict[tuple[int, ...], None] = {}
        for g in range(self.order):
            seen.setdefault(tuple(sorted(self.mul(h, g) for h in members)), None)
        return list(seen)


def validate_group(g: GroupData) -> GroupData:
    """Raise ``GroupAxiomError`` with the first offending tuple, else return ``g``."""
    n, e = g.order, g.identity
    for a in range(n):
        if g.mul(e, a) != a or g.mul(a, e) != a:
            raise GroupAxiomError(f"{g.name}: identity law fails", witness=(e, a))
        if g.mul(a, g.inv(a)) != e or g.mul(g.inv(a), a) != e:
            raise GroupAxiomError(f"{g.name}: inverse law fails", witness=(a, g.inv(a)))
    for a in range(n):
        for b in range(n):
            ab = g.mul(a, b)
            for c in range(n):
                if g.mul(ab, c) != g.mul(a, g.mul(b, c)):
                    raise GroupAxiomError(f"{g.name}: associativity fails", witness=(a, b, c))
    return g


def group_from_spec(spec: GroupSpec) -> GroupData:
    data = GroupData(
        spec.name,
        tuple(tuple(row) for row in spec.mult_table),
        spec.identity,
        tuple(spec.inverse),
        tuple(spec.elements or ()),
    )
    return validate_group(data)


def trivial_group() -> GroupData:
    return GroupData("trivial", ((0,),), 0, (0,), ("e",))


@lru_cache(maxsize=16)
def load_group(name: str) -> GroupData:
    """A bundled group table by name (``trivial`` is built in)."""
    if name == "trivial":
        return trivial_group()
    path = get_settings().resolved_catalog_dir() / f"{name}.json"
    if not path.exists():
        raise InputError(f"unknown catalog group {name!r}", location="group")
    spec = validate_model(GroupSpec, read_json(path), source=str(path))
    logger.info("load_group event=loaded name=%s path=%s", name, path)
    return group_from_spec(spec)


def resolve_group(ref: str | GroupSpec) -> GroupData:
    return load_group(ref) if isinstance(ref, str) else group_from_spec(ref)


def function_algebra(g: GroupData) -> FiniteQuantumGroup:
    """``K(G)`` with pointwise product, counting-measure Haar integral."""
    n = g.order
    alg = StarAlgebra.from_products(
        n,
        lambda a, b: {a: ONE} if a == b else {},
        {a: ONE for a in range(n)},
        lambda a: {a: ONE},
        f"K({g.name})",
    )

    def comul(c: int) -> Vec:
        return {a * n + g.mul(g.inv(a), c): ONE for a in range(n)}

    return FiniteQuantumGroup(
        alg,
        LinMap.from_function(n, n * n, comul),
        Functional(alg, {g.identity: ONE}, "ε"),
        LinMap.from_function(n, n, lambda a: {g.inv(a): ONE}),
        Functional(alg, {a: ONE for a in range(n)}, "φ"),
        f"K({g.name})",
    )


def group_algebra(g: GroupData) -> FiniteQuantumGroup:
    """``ℂ[G]`` with ``λ_g* = λ_{g⁻¹}``."""
    n = g.order
    alg = StarAlgebra.from_products(
        n,
        lambda a, b: {g.mul(a, b): ONE},
        {g.identity: ONE},
        lambda a: {g.inv(a): ONE},
        f"C[{g.name}]",
    )
    return FiniteQuantumGroup(
        alg,
        LinMap.from_function(n, n * n, lambda a: {a * n + a: ONE}),
        Functional(alg, {a: ONE for a in range(n)}, "ε"),
        LinMap.from_function(n, n, lambda a: {g.inv(a): ONE}),
        Functional(alg, {g.identity: ONE}, "φ"),
        f"C[{g.name}]",
    )


@dataclass(frozen=True, eq=False)
class GroupAQGPair:
    group: GroupData
    functions: FiniteQuantumGroup
    group_algebra: FiniteQuantumGroup
    pairing: CanonicalPairing
    report: VerificationReport


def group_aqg_pair(g: GroupData, *, workers: int | None = None) -> GroupAQGPair:
    """``K(G)``, ``ℂ[G]`` and ``p(δ_g, λ_h) = [g = h]``; the dual of ``K(G)`` must be ``ℂ[G]``."""
    k, c = function_algebra(g), group_algebra(g)
    pairing = CanonicalPairing(k, c, LinMap.identity(g.order))
    report = VerificationReport(label=f"{g.name}: K(G) and C[G]")
    report = report.merge(verify_aqg(k, workers=workers), prefix="functions")
    report = report.merge(verify_aqg(c, workers=workers), prefix="group_algebra")
    report = report.merge(check_pairing(pairing, workers=workers), prefix="pairing")
    dual = build_dual(k, workers=workers).plain
    same = dual.alg.same_structure(c.alg)
    report = report.merge(
        single_check(
            report.label,
            "dual_structure_tensors",
            "dual of K(G)",
            None if same else failure("dual of K(G) and C[G] have different structure tensors"),
        )
    )
    report = report.merge(
        aqg_isomorphism_report(
            LinMap.identity(g.order), dual, c, label=f"{dual.label} -> {c.label}", workers=workers
        ),
        prefix="dual_is_group_algebra",
    )
    logger.info(
        "group_aqg_pair event=built group=%s order=%d passed=%s",
        g.name,
        g.order,
        report.passed,
    )
    return GroupAQGPair(g, k, c, pairing, report)

"""Algebra maps carrying an explicit flavor tag that is verified, never inferred."""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass
from typing import Literal

from ..errors import DimensionMismatchError, VerificationFailure
from ..linear import LinMap, Scalar, Vec
from ..linear.scalars import ONE
from ..reporting import CheckSpec, VerificationReport, Witness, first_mismatch, run_checks
from .star_algebra import StarAlgebra

Flavor = Literal["homomorphism", "anti-homomorphism"]


@dataclass(frozen=True, eq=False)
class AlgebraMap:
    """Linear map between *-algebras with its declared multiplicative and star behaviour.

    ``star_twist`` is an automorphism ``τ`` of the target with ``f(a*) = τ(f(a))*``; ``None``
    means the map is star-preserving.
    """

    source: StarAlgebra
    target: StarAlgebra
    map: LinMap
    flavor: Flavor = "homomorphism"
    star_twist: LinMap | None = None
    name: str = "f"

    def __post_init__(self) -> None:
        if self.map.shape != (self.target.dim, self.source.dim):
            raise DimensionMismatchError(
                f"{self.name}: map shape {self.map.shape} does not fit "
                f"{self.source.label} -> {self.target.label}"
            )

    def __call__(self, a: Mapping[int, Scalar]) -> Vec:
        return self.map.apply(a)

    def compose(
        self, other: AlgebraMap, *, name: str | None = None, star_twist: LinMap | None = None
    ) -> AlgebraMap:
        """``self ∘ other``. Flavors multiply; a twisted composite needs its twist passed in."""
        flavor: Flavor = "homomorphism" if self.flavor == other.flavor else "anti-homomorphism"
        if star_twist is None and (self.star_twist is not None or other.star_twist is not None):
            raise ValueError(f"{self.name}∘{other.name}: pass the star twist of the composite")
        return AlgebraMap(
            other.source,
            self.target,
            self.map.compose(other.map),
            flavor,
            star_twist,
            name or f"{self.name}∘{other.name}",
        )

    def with_twist(self, twist: LinMap | None) -> AlgebraMap:
        return AlgebraMap(self.source, self.target, self.map, self.flavor, twist, self.name)

    def inverse(self, *, name: str | None = None) -> AlgebraMap | None:
        inverse = self.map.inverse()
        if inverse is None:
            return None
        twist = None
        if self.star_twist is not None:
            # f⁻¹(b*) = τ'(f⁻¹(b))* with τ' = f⁻¹ ∘ τ⁻¹ ∘ f
            tau_inverse = self.star_twist.inverse()
            if tau_inverse is None:
                return None
            twist = inverse.compose(tau_inverse).compose(self.map)
        return AlgebraMap(
            self.target, self.source, inverse, self.flavor, twist, name or f"{self.name}⁻¹"
        )

    def check(self, *, workers: int | None = 1) -> VerificationReport:
        return check_algebra_map(self, workers=workers)

    def verified(self) -> AlgebraMap:
        report = self.check()
        if not report.passed:
            raise VerificationFailure(report)
        return self


def check_algebra_map(f: AlgebraMap, *, workers: int | None = 1) -> VerificationReport:
    src, tgt = f.source, f.target
    n = range(src.dim)
    e = [{i: ONE} for i in n]

    def unital() -> Witness | None:
        return first_mismatch("f(1) != 1", [((), f(src.unit), tgt.unit)])

    def multiplicative() -> Witness | None:
        if f.flavor == "homomorphism":
            detail, order = "f(e_i e_j) != f(e_i) f(e_j)", lambda x, y: tgt.mul(x, y)
        else:
            detail, order = "f(e_i e_j) != f(e_j) f(e_i)", lambda x, y: tgt.mul(y, x)
        return first_mismatch(
            detail,
            (
                ((i, j), f(src.mult[i][j]), order(f.map.columns[i], f.map.columns[j]))
                for i in n
                for j in n
            ),
        )

    def star() -> Witness | None:
        twist = f.star_twist or LinMap.identity(tgt.dim)
        return first_mismatch(
            "f(e_i*) != twist(f(e_i))*",
            (((i,), f(src.adjoint(e[i])), tgt.adjoint(twist.apply(f.map.columns[i]))) for i in n),
        )

    specs = [
        CheckSpec("unital", "algebra map", unital),
        CheckSpec(f.flavor.replace("-", "_"), "algebra map", multiplicative),
        CheckSpec("star_compatible", "algebra map", star),
    ]
    return run_checks(f"{f.name}: {src.label} -> {tgt.label}", specs, workers=workers)

"""Linear functionals on star algebras and their exact predicates."""

from __future__ import annotations

import logging
from collections.abc import Mapping
from dataclasses import dataclass
from functools import cached_property

from ..errors import NotFaithfulError, NotHermitianError
from ..linear import LinMap, Scalar, Vec, psd_check
from ..linear.scalars import ONE, ZERO, conj
from ..linear.solve import solve_matrix
from ..linear.vectors import dot, vec_equal
from .homomorphisms import AlgebraMap
from .star_algebra import StarAlgebra

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class Functional:
    algebra: StarAlgebra
    covector: Vec
    label: str = "f"

    def __call__(self, a: Mapping[int, Scalar]) -> Scalar:
        return dot(self.covector, a)

    def on_basis(self, i: int) -> Scalar:
        return self.covector.get(i, ZERO)

    @property
    def is_zero(self) -> bool:
        return not self.covector

    @classmethod
    def from_values(
        cls, algebra: StarAlgebra, values: Mapping[int, Scalar], label: str
    ) -> Functional:
        return cls(algebra, {k: v for k, v in values.items() if v}, label)

    def pullback(self, m: LinMap, source: StarAlgebra, *, label: str | None = None) -> Functional:
        """``f ∘ m`` as a functional on ``source``."""
        values = {j: self(m.columns[j]) for j in range(m.cols)}
        return Functional.from_values(source, values, label or f"{self.label}∘m")

    def right_weighted(self, a: Mapping[int, Scalar], *, label: str | None = None) -> Functional:
        """``x -> f(x a)``."""
        alg = self.algebra
        values = {j: self(alg.mul({j: ONE}, a)) for j in range(alg.dim)}
        return Functional.from_values(alg, values, label or f"{self.label}(·a)")

    def left_weighted(self, a: Mapping[int, Scalar], *, label: str | None = None) -> Functional:
        """``x -> f(a x)``."""
        alg = self.algebra
        values = {j: self(alg.mul(a, {j: ONE})) for j in range(alg.dim)}
        return Functional.from_values(alg, values, label or f"{self.label}(a·)")

    def scaled(self, c: Scalar) -> Functional:
        return Functional.from_values(
            self.algebra, {k: c * v for k, v in self.covector.items()}, self.label
        )

    def same_values(self, other: Functional) -> bool:
        return vec_equal(self.covector, other.covector)

    @cached_property
    def bilinear_form(self) -> LinMap:
        """Matrix ``F[i][j] = f(e_i e_j)``."""
        alg = self.algebra
        return LinMap.from_rows(
            [[self(alg.mult[i][j]) for j in range(alg.dim)] for i in range(alg.dim)]
        )

    @cached_property
    def gram(self) -> list[list[Scalar]]:
        """``G[i][j] = f(e_i e_j*)``."""
        alg = self.algebra
        stars = [alg.adjoint({j: ONE}) for j in range(alg.dim)]
        return [[self(alg.mul({i: ONE}, stars[j])) for j in range(alg.dim)] for i in range(alg.dim)]


def functional_is_self_adjoint(f: Functional) -> bool:
    alg = f.algebra
    return all(
        f(alg.adjoint({i: ONE})) == conj(f.on_basis(i)) for i in range(alg.dim)
    )


def functional_is_positive(f: Functional) -> bool:
    try:
        return psd_check(f.gram)
    except NotHermitianError:
        return False


def functional_is_faithful(f: Functional) -> bool:
    return f.bilinear_form.is_invertible()


def modular_automorphism(f: Functional) -> AlgebraMap | None:
    """The automorphism ``σ`` with ``f(ab) = f(b σ(a))``, or ``None`` when weak KMS fails."""
    if not functional_is_faithful(f):
        raise NotFaithfulError(f"{f.label} is not faithful on {f.algebra.label}")
    alg = f.algebra
    form = f.bilinear_form
    # f(e_a e_b) = F[a][b] and f(e_b σ(e_a)) = (F σ)[b][a], so σ = F⁻¹ Fᵀ.
    sigma = solve_matrix(form, form.transpose(), context=f"modular automorphism of {f.label}")
    candidate = AlgebraMap(alg, alg, sigma, "homomorphism", None, f"σ[{f.label}]")
    if not vec_equal(sigma.apply(alg.unit), alg.unit):
        logger.info("modular_automorphism event=not_unital functional=%s", f.label)
        return None
    for i in range(alg.dim):
        for j in range(alg.dim):
            if not vec_equal(
                sigma.apply(alg.mult[i][j]), alg.mul(sigma.columns[i], sigma.columns[j])
            ):
                logger.info(
                    "modular_automorphism event=not_multiplicative functional=%s basis=(%d,%d)",
                    f.label,
                    i,
                    j,
                )
                return None
    # σ(σ(a*)*) = a is the star behaviour of a KMS automorphism: σ(a*) = (σ⁻¹(a))*.
    inverse = sigma.inverse()
    if inverse is None:
        return None
    return candidate.with_twist(inverse.compose(inverse))

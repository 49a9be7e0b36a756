"""Finite-dimensional unital *-algebras given by structure constants."""

from __future__ import annotations

import logging
from collections.abc import Callable, Mapping, Sequence
from dataclasses import dataclass
from functools import cached_property

from ..errors import DimensionMismatchError, GammaIncompatibleError, PreconditionError
from ..linear import AntiLinMap, LinMap, Scalar, Vec, join_multi, split_multi
from ..linear.scalars import ONE, conj
from ..linear.solve import Subspace, kernel, solve_linear
from ..linear.vectors import accumulate, format_vec, vec_equal
from ..reporting import CheckSpec, VerificationReport, Witness, first_mismatch, run_checks

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class StarAlgebra:
    dim: int
    mult: tuple[tuple[Vec, ...], ...]
    unit: Vec
    star: AntiLinMap
    label: str = "A"

    def __post_init__(self) -> None:
        if len(self.mult) != self.dim or any(len(row) != self.dim for row in self.mult):
            raise DimensionMismatchError(
                f"{self.label}: structure tensor is not {self.dim}x{self.dim}"
            )
        if self.star.rows != self.dim or self.star.cols != self.dim:
            raise DimensionMismatchError(f"{self.label}: involution has the wrong shape")

    @classmethod
    def from_products(
        cls,
        dim: int,
        product: Callable[[int, int], Mapping[int, Scalar]],
        unit: Mapping[int, Scalar],
        star: Callable[[int], Mapping[int, Scalar]],
        label: str,
    ) -> StarAlgebra:
        mult = tuple(
            tuple({k: v for k, v in product(i, j).items() if v} for j in range(dim))
            for i in range(dim)
        )
        star_map = AntiLinMap(LinMap.from_function(dim, dim, star))
        return cls(dim, mult, dict(unit), star_map, label)

    @classmethod
    def scalars(cls, label: str = "C") -> StarAlgebra:
        return cls(1, (({0: ONE},),), {0: ONE}, AntiLinMap(LinMap.identity(1)), label)

    def relabel(self, label: str) -> StarAlgebra:
        return StarAlgebra(self.dim, self.mult, self.unit, self.star, label)

    def mul(self, a: Mapping[int, Scalar], b: Mapping[int, Scalar]) -> Vec:
        out: Vec = {}
        for i, x in a.items():
            row = self.mult[i]
            for j, y in b.items():
                accumulate(out, x * y, row[j])
        return out

    def mul_many(self, *factors: Mapping[int, Scalar]) -> Vec:
        out: Vec = dict(self.unit)
        for factor in factors:
            out = self.mul(out, factor)
        return out

    def adjoint(self, a: Mapping[int, Scalar]) -> Vec:
        return self.star.apply(a)

    def left_mult(self, a: Mapping[int, Scalar]) -> LinMap:
        return LinMap.from_function(self.dim, self.dim, lambda j: self.mul(a, {j: ONE}))

    def right_mult(self, a: Mapping[int, Scalar]) -> LinMap:
        return LinMap.from_function(self.dim, self.dim, lambda j: self.mul({j: ONE}, a))

    @cached_property
    def is_commutative(self) -> bool:
        return all(
            vec_equal(self.mult[i][j], self.mult[j][i])
            for i in range(self.dim)
            for j in range(i + 1, self.dim)
        )

    def same_structure(self, other: StarAlgebra) -> bool:
        return (
            self.dim == other.dim
            and all(
                vec_equal(self.mult[i][j], other.mult[i][j])
                for i in range(self.dim)
                for j in range(self.dim)
            )
            and vec_equal(self.unit, other.unit)
            and self.star.underlying == other.star.underlying
        )

    def opposite(self, label: str | None = None) -> StarAlgebra:
        mult = tuple(tuple(self.mult[j][i] for j in range(self.dim)) for i in range(self.dim))
        return StarAlgebra(self.dim, mult, self.unit, self.star, label or f"{self.label}^op")


def _is_automorphism(a: StarAlgebra, gamma: LinMap) -> str | None:
    if gamma.shape != (a.dim, a.dim):
        return "shape differs from the algebra dimension"
    if not vec_equal(gamma.apply(a.unit), a.unit):
        return "gamma is not unital"
    for i in range(a.dim):
        for j in range(a.dim):
            lhs = gamma.apply(a.mult[i][j])
            rhs = a.mul(gamma.columns[i], gamma.columns[j])
            if not vec_equal(lhs, rhs):
                return (
                    f"gamma not multiplicative at ({i},{j}): "
                    f"{format_vec(lhs)} != {format_vec(rhs)}"
                )
    if not gamma.is_invertible():
        return "gamma is not invertible"
    return None


def gamma_opposite(a: StarAlgebra, gamma: LinMap, *, label: str | None = None) -> StarAlgebra:
    """``A^op_γ``: same coordinates, reversed product, involution ``a^op -> γ(a*)^op``."""
    problem = _is_automorphism(a, gamma)
    if problem is not None:
        raise GammaIncompatibleError(f"{a.label}: {problem}")
    for i in range(a.dim):
        twice = gamma.apply(a.adjoint(gamma.apply(a.adjoint({i: ONE}))))
        if not vec_equal(twice, {i: ONE}):
            raise GammaIncompatibleError(
                f"{a.label}: gamma∘*∘gamma∘* differs from the identity at e{i}"
            )
    star = AntiLinMap(gamma.compose(a.star.underlying))
    opposite = a.opposite(label or f"{a.label}^op")
    return StarAlgebra(opposite.dim, opposite.mult, opposite.unit, star, opposite.label)


@dataclass(frozen=True, eq=False)
class TensorSpace:
    """Tensor product of algebras under the row-major index convention."""

    factors: tuple[StarAlgebra, ...]

    @cached_property
    def dims(self) -> tuple[int, ...]:
        return tuple(f.dim for f in self.factors)

    @cached_property
    def dim(self) -> int:
        total = 1
        for d in self.dims:
            total *= d
        return total

    @cached_property
    def unit(self) -> Vec:
        return self.pure([f.unit for f in self.factors])

    def pure(self, parts: Sequence[Mapping[int, Scalar]]) -> Vec:
        out: Vec = {0: ONE}
        for part, d in zip(parts, self.dims, strict=True):
            nxt: Vec = {}
            for k, x in out.items():
                for i, y in part.items():
                    nxt[k * d + i] = x * y
            out = nxt
        return out

    def embed(self, leg: int, a: Mapping[int, Scalar]) -> Vec:
        parts = [f.unit for f in self.factors]
        parts[leg] = a
        return self.pure(parts)

    def split(self, k: int) -> tuple[int, ...]:
        return split_multi(k, self.dims)

    def join(self, digits: Sequence[int]) -> int:
        return join_multi(digits, self.dims)

    def mul(self, x: Mapping[int, Scalar], y: Mapping[int, Scalar]) -> Vec:
        out: Vec = {}
        split_y = [(self.split(k), c) for k, c in y.items()]
        for kx, cx in x.items():
            dx = self.split(kx)
            for dy, cy in split_y:
                product = self.pure(
                    [f.mult[i][j] for f, i, j in zip(self.factors, dx, dy, strict=True)]
                )
                accumulate(out, cx * cy, product)
        return out

    def mul_many(self, *factors: Mapping[int, Scalar]) -> Vec:
        out: Vec = dict(self.unit)
        for factor in factors:
            out = self.mul(out, factor)
        return out

    def adjoint(self, x: Mapping[int, Scalar]) -> Vec:
        out: Vec = {}
        for k, c in x.items():
            digits = self.split(k)
            image = self.pure(
                [
                    f.star.underlying.columns[i]
                    for f, i in zip(self.factors, digits, strict=True)
                ]
            )
            accumulate(out, conj(c), image)
        return out

    def as_algebra(self, label: str | None = None) -> StarAlgebra:
        """Materialize the structure tensor (small tensor products only)."""
        return StarAlgebra.from_products(
            self.dim,
            lambda i, j: self.mul({i: ONE}, {j: ONE}),
            self.unit,
            lambda i: self.adjoint({i: ONE}),
            label or "⊗".join(f.label for f in self.factors),
        )


def check_algebra_axioms(a: StarAlgebra, *, workers: int | None = None) -> VerificationReport:
    n = range(a.dim)
    e = [{i: ONE} for i in n]

    def associativity() -> Witness | None:
        return first_mismatch(
            "(e_i e_j) e_k != e_i (e_j e_k)",
            (
                ((i, j, k), a.mul(a.mult[i][j], e[k]), a.mul(e[i], a.mult[j][k]))
                for i in n
                for j in n
                for k in n
            ),
        )

    def unit_left() -> Witness | None:
        return first_mismatch("1 e_i != e_i", (((i,), a.mul(a.unit, e[i]), e[i]) for i in n))

    def unit_right() -> Witness | None:
        return first_mismatch("e_i 1 != e_i", (((i,), a.mul(e[i], a.unit), e[i]) for i in n))

    def star_involutive() -> Witness | None:
        return first_mismatch(
            "(e_i*)* != e_i", (((i,), a.adjoint(a.adjoint(e[i])), e[i]) for i in n)
        )

    def star_antimultiplicative() -> Witness | None:
        return first_mismatch(
            "(e_i e_j)* != e_j* e_i*",
            (
                ((i, j), a.adjoint(a.mult[i][j]), a.mul(a.adjoint(e[j]), a.adjoint(e[i])))
                for i in n
                for j in n
            ),
        )

    specs = [
        CheckSpec("associativity", "*-algebra", associativity),
        CheckSpec("unit_left", "unital", unit_left),
        CheckSpec("unit_right", "unital", unit_right),
        CheckSpec("star_involutive", "*-algebra", star_involutive),
        CheckSpec("star_antimultiplicative", "*-algebra", star_antimultiplicative),
    ]
    return run_checks(f"{a.label}: *-algebra axioms", specs, workers=workers)


def place(space: TensorSpace, v: Mapping[int, Scalar], legs: Sequence[int]) -> Vec:
    """Embed a tensor over the factors at ``legs`` into ``space`` with units elsewhere."""
    sub_dims = [space.dims[leg] for leg in legs]
    out: Vec = {}
    for k, c in v.items():
        parts: list[Mapping[int, Scalar]] = [f.unit for f in space.factors]
        for leg, digit in zip(legs, split_multi(k, sub_dims), strict=True):
            parts[leg] = {digit: ONE}
        accumulate(out, c, space.pure(parts))
    return out


def center(a: StarAlgebra) -> Subspace:
    """``{z : z e_j = e_j z for all j}`` as an exact null space."""
    n = a.dim
    columns: list[Vec] = [{} for _ in range(n)]
    for i in range(n):
        for j in range(n):
            for k, c in a.mult[i][j].items():
                accumulate(columns[i], c, {j * n + k: ONE})
            for k, c in a.mult[j][i].items():
                accumulate(columns[i], -c, {j * n + k: ONE})
    return kernel(LinMap(n * n, n, tuple(columns)))


@dataclass(frozen=True)
class Subalgebra:
    algebra: StarAlgebra
    inclusion: LinMap


def subalgebra(a: StarAlgebra, vectors: Sequence[Mapping[int, Scalar]], label: str) -> Subalgebra:
    """Restrict the structure of ``a`` to a unital *-subalgebra spanned by ``vectors``.

    ``vectors`` must be linearly independent; closure under products, the unit and the involution
    is solved for exactly and a missing solution raises ``PreconditionError``.
    """
    basis = tuple(dict(v) for v in vectors)
    inclusion = LinMap(a.dim, len(basis), basis)

    def coordinates(v: Mapping[int, Scalar], what: str) -> Vec:
        solution = solve_linear(inclusion, v)
        if solution is None:
            raise PreconditionError(f"{label}: {what} leaves the subspace")
        return solution

    algebra = StarAlgebra.from_products(
        len(basis),
        lambda i, j: coordinates(a.mul(basis[i], basis[j]), f"product ({i},{j})"),
        coordinates(a.unit, "unit"),
        lambda i: coordinates(a.adjoint(basis[i]), f"adjoint of vector {i}"),
        label,
    )
    return Subalgebra(algebra, inclusion)

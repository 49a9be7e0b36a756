"""Linear and anti-linear maps between coordinate spaces, plus the tensor index convention.

A ``LinMap`` stores the image of every basis vector (its columns) as a sparse vector. Tensor
products always use the row-major convention ``(i, j) -> i * n2 + j``; every module goes
through ``tensor_index`` / ``split_index`` instead of indexing by hand.
"""

from __future__ import annotations

from collections.abc import Callable, Mapping, Sequence
from dataclasses import dataclass

from sympy.polys.domains import QQ_I
from sympy.polys.matrices import DomainMatrix

from ..errors import DimensionMismatchError
from .scalars import ONE, Scalar
from .vectors import Vec, accumulate, add_entry, vec_add, vec_conj, vec_scale, vec_sub


def tensor_index(i: int, j: int, n2: int) -> int:
    return i * n2 + j


def split_index(k: int, n2: int) -> tuple[int, int]:
    return divmod(k, n2)


def split_multi(k: int, dims: Sequence[int]) -> tuple[int, ...]:
    digits: list[int] = []
    for dim in reversed(dims):
        k, digit = divmod(k, dim)
        digits.append(digit)
    return tuple(reversed(digits))


def join_multi(digits: Sequence[int], dims: Sequence[int]) -> int:
    k = 0
    for digit, dim in zip(digits, dims, strict=True):
        k = k * dim + digit
    return k


def tensor_vec(u: Mapping[int, Scalar], v: Mapping[int, Scalar], n2: int) -> Vec:
    out: Vec = {}
    for i, a in u.items():
        for j, b in v.items():
            out[i * n2 + j] = a * b
    return out


def tensor_vecs(parts: Sequence[Mapping[int, Scalar]], dims: Sequence[int]) -> Vec:
    out: Vec = {0: ONE}
    for part, dim in zip(parts, dims, strict=True):
        out = tensor_vec(out, part, dim)
    return out


@dataclass(frozen=True)
class LinMap:
    """Linear map ``cols``-dimensional space -> ``rows``-dimensional space."""

    rows: int
    cols: int
    columns: tuple[Vec, ...]

    def __post_init__(self) -> None:
        if len(self.columns) != self.cols:
            raise DimensionMismatchError(
                f"LinMap expects {self.cols} columns, received {len(self.columns)}"
            )

    @classmethod
    def identity(cls, n: int) -> LinMap:
        return cls(n, n, tuple({i: ONE} for i in range(n)))

    @classmethod
    def zero(cls, rows: int, cols: int) -> LinMap:
        return cls(rows, cols, tuple({} for _ in range(cols)))

    @classmethod
    def from_function(
        cls, cols: int, rows: int, fn: Callable[[int], Mapping[int, Scalar]]
    ) -> LinMap:
        return cls(rows, cols, tuple(_clean(fn(j)) for j in range(cols)))

    @classmethod
    def from_rows(cls, matrix: Sequence[Sequence[Scalar]]) -> LinMap:
        rows = len(matrix)
        cols = len(matrix[0]) if rows else 0
        columns = tuple(
            {i: matrix[i][j] for i in range(rows) if matrix[i][j]} for j in range(cols)
        )
        return cls(rows, cols, columns)

    @classmethod
    def from_domain_matrix(cls, dm: DomainMatrix) -> LinMap:
        rows, cols = dm.shape
        columns: list[Vec] = [{} for _ in range(cols)]
        for i, row in dm.to_dod().items():
            for j, value in row.items():
                if value:
                    columns[j][i] = value
        return cls(rows, cols, tuple(columns))

    def __call__(self, v: Mapping[int, Scalar]) -> Vec:
        return self.apply(v)

    def apply(self, v: Mapping[int, Scalar]) -> Vec:
        out: Vec = {}
        for j, c in v.items():
            accumulate(out, c, self.columns[j])
        return out

    def compose(self, other: LinMap) -> LinMap:
        """``self ∘ other``."""
        if other.rows != self.cols:
            raise DimensionMismatchError(f"cannot compose {self.shape} after {other.shape}")
        return LinMap(self.rows, other.cols, tuple(self.apply(col) for col in other.columns))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def entry(self, i: int, j: int) -> Scalar:
        return self.columns[j].get(i, QQ_I.zero)

    def dense_rows(self) -> list[list[Scalar]]:
        return [[self.entry(i, j) for j in range(self.cols)] for i in range(self.rows)]

    def to_domain_matrix(self) -> DomainMatrix:
        dod: dict[int, dict[int, Scalar]] = {}
        for j, column in enumerate(self.columns):
            for i, value in column.items():
                dod.setdefault(i, {})[j] = value
        return DomainMatrix.from_dod(dod, (self.rows, self.cols), QQ_I)

    def transpose(self) -> LinMap:
        columns: list[Vec] = [{} for _ in range(self.rows)]
        for j, column in enumerate(self.columns):
            for i, value in column.items():
                columns[i][j] = value
        return LinMap(self.cols, self.rows, tuple(columns))

    def conjugate(self) -> LinMap:
        return LinMap(self.rows, self.cols, tuple(vec_conj(col) for col in self.columns))

    def add(self, other: LinMap) -> LinMap:
        self._same_shape(other)
        return LinMap(
            self.rows,
            self.cols,
            tuple(vec_add(a, b) for a, b in zip(self.columns, other.columns, strict=True)),
        )

    def sub(self, other: LinMap) -> LinMap:
        self._same_shape(other)
        return LinMap(
            self.rows,
            self.cols,
            tuple(vec_sub(a, b) for a, b in zip(self.columns, other.columns, strict=True)),
        )

    def scale(self, c: Scalar) -> LinMap:
        return LinMap(self.rows, self.cols, tuple(vec_scale(c, col) for col in self.columns))

    def rank(self) -> int:
        if not self.rows or not self.cols:
            return 0
        return self.to_domain_matrix().rank()

    def is_invertible(self) -> bool:
        return self.rows == self.cols and self.rank() == self.rows

    def inverse(self) -> LinMap | None:
        if not self.is_invertible():
            return None
        if not self.rows:
            return self
        return LinMap.from_domain_matrix(self.to_domain_matrix().inv())

    def is_identity(self) -> bool:
        return self.rows == self.cols and self == LinMap.identity(self.rows)

    def power(self, k: int) -> LinMap:
        base = self if k >= 0 else self.inverse()
        if base is None:
            raise ValueError("negative power of a singular map")
        out = LinMap.identity(self.rows)
        for _ in range(abs(k)):
            out = base.compose(out)
        return out

    def _same_shape(self, other: LinMap) -> None:
        if self.shape != other.shape:
            raise DimensionMismatchError(f"shape mismatch {self.shape} vs {other.shape}")


@dataclass(frozen=True)
class AntiLinMap:
    """Conjugate-linear map ``v -> underlying(conj(v))``."""

    underlying: LinMap

    @property
    def rows(self) -> int:
        return self.underlying.rows

    @property
    def cols(self) -> int:
        return self.underlying.cols

    def __call__(self, v: Mapping[int, Scalar]) -> Vec:
        return self.apply(v)

    def apply(self, v: Mapping[int, Scalar]) -> Vec:
        return self.underlying.apply(vec_conj(v))

    def compose_anti(self, other: AntiLinMap) -> LinMap:
        """Two conjugations cancel: ``self ∘ other`` is linear."""
        return self.underlying.compose(other.underlying.conjugate())

    def compose_linear(self, other: LinMap) -> AntiLinMap:
        """``self ∘ other`` for a linear ``other``."""
        return AntiLinMap(self.underlying.compose(other.conjugate()))

    def after(self, other: LinMap) -> AntiLinMap:
        """``other ∘ self`` for a linear ``other``."""
        return AntiLinMap(other.compose(self.underlying))


def tensor_product(f: LinMap, g: LinMap) -> LinMap:
    """Kronecker product under the ``i * n2 + j`` convention."""
    columns: list[Vec] = []
    for i in range(f.cols):
        for j in range(g.cols):
            columns.append(tensor_vec(f.columns[i], g.columns[j], g.rows))
    return LinMap(f.rows * g.rows, f.cols * g.cols, tuple(columns))


def flip(n1: int, n2: int) -> LinMap:
    """The tensor flip Σ: V1 ⊗ V2 -> V2 ⊗ V1."""
    columns: list[Vec] = []
    for i in range(n1):
        for j in range(n2):
            columns.append({j * n1 + i: ONE})
    return LinMap(n1 * n2, n1 * n2, tuple(columns))


def apply_on_leg(
    v: Mapping[int, Scalar],
    dims: Sequence[int],
    leg: int,
    fn: Callable[[int], Mapping[int, Scalar]],
    new_dim: int,
) -> Vec:
    """Apply a linear map (given on basis vectors) to one tensor leg."""
    out_dims = list(dims)
    out_dims[leg] = new_dim
    out: Vec = {}
    cache: dict[int, Mapping[int, Scalar]] = {}
    for k, c in v.items():
        digits = list(split_multi(k, dims))
        image = cache.get(digits[leg])
        if image is None:
            image = fn(digits[leg])
            cache[digits[leg]] = image
        for t, value in image.items():
            digits[leg] = t
            add_entry(out, join_multi(digits, out_dims), c * value)
    return out


def _clean(v: Mapping[int, Scalar]) -> Vec:
    return {k: value for k, value in v.items() if value}


def slice_leg(
    v: Mapping[int, Scalar], dims: Sequence[int], leg: int, covector: Mapping[int, Scalar]
) -> Vec:
    """Contract one tensor leg against a covector, removing that leg."""
    out_dims = [d for k, d in enumerate(dims) if k != leg]
    out: Vec = {}
    for k, c in v.items():
        digits = list(split_multi(k, dims))
        weight = covector.get(digits.pop(leg))
        if weight:
            add_entry(out, join_multi(digits, out_dims), c * weight)
    return out


def permute_legs(v: Mapping[int, Scalar], dims: Sequence[int], order: Sequence[int]) -> Vec:
    """Reorder tensor legs: output leg ``t`` is input leg ``order[t]``."""
    out_dims = [dims[k] for k in order]
    out: Vec = {}
    for k, c in v.items():
        digits = split_multi(k, dims)
        out[join_multi([digits[t] for t in order], out_dims)] = c
    return out

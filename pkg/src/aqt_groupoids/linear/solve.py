"""Exact kernels, solves, subspaces and the rational PSD decision."""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from dataclasses import dataclass

from sympy.polys.domains import QQ_I

from ..errors import NotHermitianError, UnsolvableError
from .maps import LinMap
from .scalars import ONE, Scalar, conj, is_positive, is_real
from .vectors import Vec


@dataclass(frozen=True)
class Subspace:
    """Span of linearly independent vectors inside a coordinate space of size ``ambient_dim``."""

    ambient_dim: int
    basis: tuple[Vec, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    @classmethod
    def zero(cls, ambient_dim: int) -> Subspace:
        return cls(ambient_dim, ())

    @classmethod
    def full(cls, ambient_dim: int) -> Subspace:
        return cls(ambient_dim, tuple({i: ONE} for i in range(ambient_dim)))

    @classmethod
    def span(cls, ambient_dim: int, vectors: Sequence[Mapping[int, Scalar]]) -> Subspace:
        """Independent subset of ``vectors`` spanning the same space."""
        if not vectors:
            return cls.zero(ambient_dim)
        as_map = LinMap(ambient_dim, len(vectors), tuple(dict(v) for v in vectors))
        _, pivots = _rref(as_map)
        return cls(ambient_dim, tuple(dict(vectors[p]) for p in pivots))

    def as_map(self) -> LinMap:
        return LinMap(self.ambient_dim, self.dim, self.basis)

    def contains(self, v: Mapping[int, Scalar]) -> bool:
        if not v:
            return True
        if not self.basis:
            return False
        return solve_linear(self.as_map(), v) is not None


def _rref(m: LinMap) -> tuple[list[dict[int, Scalar]], tuple[int, ...]]:
    """Reduced row echelon form as sparse rows plus the pivot columns."""
    if not m.rows or not m.cols:
        return [], ()
    reduced, pivots = m.to_domain_matrix().rref()
    dod = reduced.to_dod()
    rows = [dict(dod.get(i, {})) for i in range(len(pivots))]
    return rows, tuple(pivots)


def rank(m: LinMap) -> int:
    return len(_rref(m)[1])


def independent_rows(m: LinMap) -> tuple[int, ...]:
    """Row indices of a maximal independent set of rows, in increasing order."""
    return _rref(m.transpose())[1]


def span_rank(ambient_dim: int, vectors: Sequence[Mapping[int, Scalar]]) -> int:
    if not vectors:
        return 0
    return rank(LinMap(ambient_dim, len(vectors), tuple(dict(v) for v in vectors)))


def kernel(m: LinMap) -> Subspace:
    """Exact null space; ``kernel(m).dim + rank(m) == m.cols``."""
    rows, pivots = _rref(m)
    pivot_set = set(pivots)
    basis: list[Vec] = []
    for free in range(m.cols):
        if free in pivot_set:
            continue
        vector: Vec = {free: ONE}
        for row, pivot in zip(rows, pivots, strict=True):
            value = row.get(free)
            if value:
                vector[pivot] = -value
        basis.append(vector)
    return Subspace(m.cols, tuple(basis))


def image(m: LinMap) -> Subspace:
    return Subspace.span(m.rows, m.columns)


def solve_many(a: LinMap, rhs: Sequence[Mapping[int, Scalar]]) -> list[Vec] | None:
    """Solve ``a x_k = b_k`` for every right-hand side, or ``None`` if any is unsolvable."""
    if not rhs:
        return []
    augmented = LinMap(a.rows, a.cols + len(rhs), (*a.columns, *(dict(b) for b in rhs)))
    rows, pivots = _rref(augmented)
    if any(p >= a.cols for p in pivots):
        return None
    solutions: list[Vec] = []
    for k in range(len(rhs)):
        column = a.cols + k
        solution: Vec = {}
        for row, pivot in zip(rows, pivots, strict=True):
            value = row.get(column)
            if value:
                solution[pivot] = value
        solutions.append(solution)
    return solutions


def solve_linear(a: LinMap, b: Mapping[int, Scalar]) -> Vec | None:
    """Some exact ``x`` with ``a x = b``; ``None`` when ``b`` is outside the image."""
    solved = solve_many(a, [b])
    return None if solved is None else solved[0]


def solve_or_raise(a: LinMap, b: Mapping[int, Scalar], *, context: str) -> Vec:
    solution = solve_linear(a, b)
    if solution is None:
        raise UnsolvableError(f"{context}: right-hand side outside the image")
    return solution


def solve_matrix(a: LinMap, b: LinMap, *, context: str) -> LinMap:
    """The map ``x`` with ``a ∘ x = b``."""
    solved = solve_many(a, b.columns)
    if solved is None:
        raise UnsolvableError(f"{context}: matrix equation has no solution")
    return LinMap(a.cols, b.cols, tuple(solved))


def psd_check(matrix: Sequence[Sequence[Scalar]]) -> bool:
    """Exact positive-semidefiniteness by LDL* with diagonal pivoting."""
    n = len(matrix)
    h = [[QQ_I.convert(matrix[i][j]) for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(i, n):
            if h[i][j] != conj(h[j][i]):
                raise NotHermitianError(f"entry ({i},{j}) differs from conj of ({j},{i})")

    active = list(range(n))
    while active:
        if any(not is_real(h[i][i]) or h[i][i].x < 0 for i in active):
            return False
        pivot = next((i for i in active if is_positive(h[i][i])), None)
        if pivot is None:
            # Zero diagonal: PSD only if the remaining block vanishes.
            return all(not h[i][j] for i in active for j in active)
        rest = [i for i in active if i != pivot]
        d = h[pivot][pivot]
        for i in rest:
            if not h[i][pivot]:
                continue
            factor = h[i][pivot] / d
            for j in rest:
                h[i][j] = h[i][j] - factor * h[pivot][j]
        active = rest
    return True


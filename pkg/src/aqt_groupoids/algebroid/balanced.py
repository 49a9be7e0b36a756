"""Balanced tensor products over the base algebras and their normal forms.

Beginner terms:
- Right kind ``A_B ⊗ ^BA``: ``a ι_B(x) ⊗ b`` is identified with ``a ⊗ b ι_C(t_B(x))``.
- Left kind ``A^C ⊗ _CA``: ``ι_B(t_C(y)) a ⊗ b`` is identified with ``a ⊗ ι_C(y) b``.
- Frame: elements ``u_1, ..., u_r`` of ``A`` such that every ``a`` is uniquely
  ``Σ u_k ι_B(x_k)`` (right kind) or ``Σ ι_B(x_k) u_k`` (left kind).
- Normal form: the left leg rewritten on the frame, with the base part moved onto the right leg.
  Two representatives are equal in the balanced product iff their normal forms agree.

In a triple tensor the legs ``(0, 1)`` are normalized first and ``(1, 2)`` second.
"""

from __future__ import annotations

import logging
from collections.abc import Callable, Mapping, Sequence
from dataclasses import dataclass
from typing import Literal

from ..algebra.star_algebra import StarAlgebra
from ..errors import PreconditionError
from ..linear import LinMap, Scalar, Vec, join_multi, span_rank, split_multi
from ..linear.scalars import ONE
from ..linear.vectors import add_entry, vec_equal

logger = logging.getLogger(__name__)

Kind = Literal["right", "left"]


@dataclass(frozen=True, eq=False)
class BalancedProduct:
    kind: Kind
    total: StarAlgebra
    frame: tuple[Vec, ...]
    # decomposition[a] lists (coefficient, frame index, base index) for the basis vector e_a
    decomposition: tuple[tuple[tuple[Scalar, int, int], ...], ...]
    # movers[j] is the operator applied to the next leg for the base basis vector x_j
    movers: tuple[LinMap, ...]
    label: str = "A⊗A"

    @property
    def rank(self) -> int:
        return len(self.frame)

    def normalize(self, v: Mapping[int, Scalar], dims: Sequence[int], leg: int) -> Vec:
        """Normalize legs ``(leg, leg + 1)``; the frame index replaces leg ``leg``."""
        out_dims = list(dims)
        out_dims[leg] = self.rank
        out: Vec = {}
        for key, c in v.items():
            digits = list(split_multi(key, dims))
            left, right = digits[leg], digits[leg + 1]
            for coeff, k, j in self.decomposition[left]:
                for t, value in self.movers[j].columns[right].items():
                    digits[leg], digits[leg + 1] = k, t
                    add_entry(out, join_multi(digits, out_dims), c * coeff * value)
        return out

    def normal_form(self, v: Mapping[int, Scalar]) -> Vec:
        d = self.total.dim
        return self.normalize(v, (d, d), 0)

    def equal(self, u: Mapping[int, Scalar], v: Mapping[int, Scalar]) -> bool:
        return vec_equal(self.normal_form(u), self.normal_form(v))


def triple_normal_form(
    first: BalancedProduct, second: BalancedProduct, v: Mapping[int, Scalar]
) -> Vec:
    """Normal form in ``(A ⊗ A) ⊗ A`` balanced by ``first`` on legs 0, 1 and ``second`` on 1, 2."""
    d = first.total.dim
    step = first.normalize(v, (d, d, d), 0)
    return second.normalize(step, (first.rank, d, d), 1)


def balanced_product(
    total: StarAlgebra,
    kind: Kind,
    iota_b: LinMap,
    iota_c: LinMap,
    transfer: LinMap,
    *,
    frame: Sequence[Mapping[int, Scalar]] | None = None,
    label: str | None = None,
) -> BalancedProduct:
    """Build the normal-form data.

    ``transfer`` maps ``B -> C``: it is ``t_B`` for the right kind and ``t_C⁻¹`` for the left
    kind. Without an explicit frame, one is searched greedily among the basis vectors of ``A``.
    """
    d = total.dim
    base_dim = iota_b.cols
    base = [iota_b.columns[j] for j in range(base_dim)]

    def generators(u: Mapping[int, Scalar]) -> list[Vec]:
        if kind == "right":
            return [total.mul(u, x) for x in base]
        return [total.mul(x, u) for x in base]

    name = label or f"{total.label}⊗{total.label} ({kind})"
    chosen = (
        [dict(u) for u in frame] if frame is not None else _greedy_frame(total, generators, name)
    )
    columns = [vec for u in chosen for vec in generators(u)]
    if len(columns) != d:
        raise PreconditionError(
            f"{name}: frame of {len(chosen)} elements gives {len(columns)} module generators, "
            f"expected {d}"
        )
    inverse = LinMap(d, d, tuple(columns)).inverse()
    if inverse is None:
        raise PreconditionError(f"{name}: frame is not a free module basis over the base")
    decomposition = tuple(
        tuple((c, *divmod(key, base_dim)) for key, c in sorted(inverse.columns[a].items()))
        for a in range(d)
    )
    movers = []
    for j in range(base_dim):
        mover = iota_c.apply(transfer.columns[j])
        if kind == "right":
            movers.append(total.right_mult(mover))
        else:
            movers.append(total.left_mult(mover))
    logger.debug("balanced_product event=built label=%s rank=%d", name, len(chosen))
    return BalancedProduct(kind, total, tuple(chosen), decomposition, tuple(movers), name)


def _greedy_frame(
    total: StarAlgebra, generators: Callable[[Mapping[int, Scalar]], list[Vec]], name: str
) -> list[Vec]:
    d = total.dim
    chosen: list[Vec] = []
    spanned: list[Vec] = []
    for i in range(d):
        candidate = generators({i: ONE})
        if span_rank(d, spanned + candidate) == len(spanned) + len(candidate):
            chosen.append({i: ONE})
            spanned.extend(candidate)
        if len(spanned) == d:
            return chosen
    raise PreconditionError(f"{name}: no free module frame among the basis vectors")

"""Exact linear algebra over the Gaussian rationals."""

from .maps import (
    AntiLinMap,
    LinMap,
    apply_on_leg,
    flip,
    join_multi,
    permute_legs,
    slice_leg,
    split_index,
    split_multi,
    tensor_index,
    tensor_product,
    tensor_vec,
    tensor_vecs,
)
from .scalars import I, ONE, ZERO, Scalar, conj, format_scalar, parse_scalar, scalar
from .solve import (
    Subspace,
    image,
    independent_rows,
    kernel,
    psd_check,
    rank,
    solve_linear,
    solve_many,
    span_rank,
)
from .vectors import Vec, basis_vec, lin_comb, vec_add, vec_equal, vec_scale, vec_sub

__all__ = [
    "AntiLinMap",
    "I",
    "LinMap",
    "ONE",
    "Scalar",
    "Subspace",
    "Vec",
    "ZERO",
    "apply_on_leg",
    "basis_vec",
    "conj",
    "flip",
    "format_scalar",
    "image",
    "independent_rows",
    "join_multi",
    "kernel",
    "lin_comb",
    "parse_scalar",
    "permute_legs",
    "slice_leg",
    "psd_check",
    "rank",
    "scalar",
    "solve_linear",
    "solve_many",
    "span_rank",
    "split_index",
    "split_multi",
    "tensor_index",
    "tensor_product",
    "tensor_vec",
    "tensor_vecs",
    "vec_add",
    "vec_equal",
    "vec_scale",
    "vec_sub",
]

"""Sparse exact vectors: ``dict[index, Scalar]`` with zero entries dropped."""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from typing import TypeAlias

from .scalars import ONE, ZERO, Scalar, conj, format_scalar

Vec: TypeAlias = dict[int, Scalar]


def basis_vec(index: int) -> Vec:
    return {index: ONE}


def vec_add(u: Mapping[int, Scalar], v: Mapping[int, Scalar]) -> Vec:
    out = dict(u)
    for key, value in v.items():
        total = out.get(key, ZERO) + value
        if total:
            out[key] = total
        else:
            out.pop(key, None)
    return out


def vec_sub(u: Mapping[int, Scalar], v: Mapping[int, Scalar]) -> Vec:
    return vec_add(u, vec_scale(-ONE, v))


def vec_scale(c: Scalar, v: Mapping[int, Scalar]) -> Vec:
    if not c:
        return {}
    return {key: c * value for key, value in v.items()}


def vec_conj(v: Mapping[int, Scalar]) -> Vec:
    return {key: conj(value) for key, value in v.items()}


def accumulate(target: Vec, c: Scalar, v: Mapping[int, Scalar]) -> None:
    """In-place ``target += c * v``."""
    if not c:
        return
    for key, value in v.items():
        total = target.get(key, ZERO) + c * value
        if total:
            target[key] = total
        else:
            target.pop(key, None)


def add_entry(target: Vec, key: int, value: Scalar) -> None:
    if not value:
        return
    total = target.get(key, ZERO) + value
    if total:
        target[key] = total
    else:
        target.pop(key, None)


def lin_comb(terms: Iterable[tuple[Scalar, Mapping[int, Scalar]]]) -> Vec:
    out: Vec = {}
    for c, v in terms:
        accumulate(out, c, v)
    return out


def dot(covector: Mapping[int, Scalar], v: Mapping[int, Scalar]) -> Scalar:
    if len(covector) > len(v):
        return sum((covector[k] * value for k, value in v.items() if k in covector), ZERO)
    return sum((value * v[k] for k, value in covector.items() if k in v), ZERO)


def vec_equal(u: Mapping[int, Scalar], v: Mapping[int, Scalar]) -> bool:
    return not vec_sub(u, v)


def from_dense(values: Sequence[Scalar]) -> Vec:
    return {index: value for index, value in enumerate(values) if value}


def to_dense(v: Mapping[int, Scalar], dim: int) -> list[Scalar]:
    return [v.get(index, ZERO) for index in range(dim)]


def format_vec(v: Mapping[int, Scalar]) -> str:
    if not v:
        return "0"
    return " + ".join(f"({format_scalar(v[key])})e{key}" for key in sorted(v))

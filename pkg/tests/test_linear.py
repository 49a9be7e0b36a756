from __future__ import annotations

from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from aqt_groupoids.errors import InputError, NotHermitianError
from aqt_groupoids.linear import (
    I,
    ONE,
    ZERO,
    LinMap,
    conj,
    flip,
    format_scalar,
    kernel,
    parse_scalar,
    psd_check,
    scalar,
    solve_linear,
    tensor_product,
    vec_equal,
)

fractions = st.fractions(min_value=-5, max_value=5, max_denominator=6)
scalars = st.builds(scalar, fractions, fractions)


def _same(f: LinMap, g: LinMap) -> bool:
    return f.shape == g.shape and all(
        vec_equal(x, y) for x, y in zip(f.columns, g.columns, strict=True)
    )


def _matrices(rows: int, cols: int) -> st.SearchStrategy[LinMap]:
    entries = st.lists(scalars, min_size=rows * cols, max_size=rows * cols)
    return entries.map(
        lambda values: LinMap.from_rows([values[i * cols : (i + 1) * cols] for i in range(rows)])
    )


@given(scalars, scalars, scalars)
def test_scalar_field_axioms(a, b, c) -> None:
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert conj(a * b) == conj(a) * conj(b)
    assert conj(conj(a)) == a


@given(scalars)
def test_scalar_text_is_exact(z) -> None:
    assert parse_scalar(format_scalar(z)) == z


@pytest.mark.parametrize(
    ("text", "expected"),
    [
        ("3", scalar(3)),
        ("-1/2", scalar(Fraction(-1, 2))),
        ("i", I),
        ("-i", scalar(0, -1)),
        ("2*i", scalar(0, 2)),
        ("1/2-3/4*i", scalar(Fraction(1, 2), Fraction(-3, 4))),
        ("-1+i", scalar(-1, 1)),
    ],
)
def test_parse_scalar_accepts_canonical_forms(text: str, expected) -> None:
    assert parse_scalar(text) == expected


def test_format_scalar_is_canonical() -> None:
    assert format_scalar(scalar(Fraction(1, 2), Fraction(-3, 4))) == "1/2-3/4*i"
    assert format_scalar(scalar(0, 1)) == "1*i"
    assert format_scalar(ZERO) == "0"
    assert format_scalar(scalar(-7)) == "-7"


@pytest.mark.parametrize("text", ["", "abc", "1/0", "0.5", "1e3"])
def test_parse_scalar_rejects_inexact_text(text: str) -> None:
    with pytest.raises(InputError):
        parse_scalar(text)


@settings(max_examples=40, deadline=None)
@given(_matrices(2, 2), _matrices(2, 2), _matrices(2, 3), _matrices(3, 2))
def test_tensor_product_is_bifunctorial(f, g, h, k) -> None:
    left = tensor_product(f.compose(g), h.compose(k))
    right = tensor_product(f, h).compose(tensor_product(g, k))
    assert _same(left, right)


def test_flip_swaps_tensor_legs() -> None:
    f = LinMap.from_rows([[ONE, scalar(2)], [ZERO, ONE]])
    g = LinMap.from_rows([[scalar(3)]])
    swapped = flip(2, 1).compose(tensor_product(f, g)).compose(flip(1, 2))
    assert _same(swapped, tensor_product(g, f))


def test_kernel_of_rank_one_map() -> None:
    m = LinMap.from_rows([[ONE, ONE, ZERO], [scalar(2), scalar(2), ZERO]])
    space = kernel(m)
    assert space.dim == 2
    for v in space.basis:
        assert vec_equal(m.apply(v), {})
    assert space.contains({0: ONE, 1: -ONE})
    assert not space.contains({0: ONE})


def test_kernel_of_zero_map_is_everything() -> None:
    space = kernel(LinMap.zero(2, 3))
    assert space.dim == 3


def test_solve_linear_returns_none_outside_image() -> None:
    m = LinMap.from_rows([[ONE, ZERO], [ONE, ZERO]])
    assert vec_equal(solve_linear(m, {0: ONE, 1: ONE}) or {}, {0: ONE})
    assert solve_linear(m, {0: ONE}) is None


def test_inverse_over_gaussian_rationals() -> None:
    m = LinMap.from_rows([[ONE, I], [I, ONE]])
    inverse = m.inverse()
    assert inverse is not None
    assert m.compose(inverse).is_identity()


symmetric_entries = st.lists(st.integers(min_value=-3, max_value=3), min_size=6, max_size=6)


@settings(max_examples=60, deadline=None)
@given(symmetric_entries)
def test_psd_check_agrees_with_sympy(values: list[int]) -> None:
    a, b, c, d, e, f = values
    dense = [[a, b, c], [b, d, e], [c, e, f]]
    expected = sympy.Matrix(dense).is_positive_semidefinite
    assert psd_check([[scalar(x) for x in row] for row in dense]) == expected


@settings(max_examples=30, deadline=None)
@given(_matrices(2, 3))
def test_gram_matrices_are_psd(m: LinMap) -> None:
    rows = m.dense_rows()
    gram = [
        [sum((conj(rows[k][i]) * rows[k][j] for k in range(2)), ZERO) for j in range(3)]
        for i in range(3)
    ]
    assert psd_check(gram)


def test_psd_check_rejects_non_hermitian() -> None:
    with pytest.raises(NotHermitianError):
        psd_check([[ONE, I], [I, ONE]])

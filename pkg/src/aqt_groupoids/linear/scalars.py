"""Exact scalars of the Gaussian rational field ℚ(i).

Scalars are sympy ``QQ_I`` elements. Two pitfalls to keep in mind:

- comparing a ``QQ_I`` element with a plain ``int`` returns ``False`` even for equal values,
  so zero tests are written ``not z`` and equality is only taken between ``QQ_I`` elements;
- the real and imaginary parts are ``QQ`` elements exposed as ``z.x`` and ``z.y``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Any, TypeAlias

from sympy.polys.domains import QQ, QQ_I

from ..errors import InputError

Scalar: TypeAlias = Any

ZERO: Scalar = QQ_I.zero
ONE: Scalar = QQ_I.one
I: Scalar = QQ_I(0, 1)

_SCALAR_PATTERN = re.compile(r"^[+-]?[0-9/+\-*i]+$")


def scalar(re_part: int | Fraction | str = 0, im_part: int | Fraction | str = 0) -> Scalar:
    """Build a Gaussian rational from rational real and imaginary parts."""
    return QQ_I(_rational(re_part), _rational(im_part))


def to_scalar(value: Any) -> Scalar:
    if isinstance(value, str):
        return parse_scalar(value)
    if isinstance(value, (int, Fraction)):
        return scalar(value)
    return QQ_I.convert(value)


def conj(z: Scalar) -> Scalar:
    return z.new(z.x, -z.y)


def is_zero(z: Scalar) -> bool:
    return not z


def is_real(z: Scalar) -> bool:
    return not z.y


def is_positive(z: Scalar) -> bool:
    return not z.y and z.x > 0


def is_nonnegative(z: Scalar) -> bool:
    return not z.y and z.x >= 0


def format_scalar(z: Scalar) -> str:
    """Serialize as ``p/q+r/s*i`` with zero parts omitted."""
    re_text = _format_rational(z.x)
    if not z.y:
        return re_text
    im = z.y
    magnitude = _format_rational(abs(im))
    if not z.x:
        return f"-{magnitude}*i" if im < 0 else f"{magnitude}*i"
    sign = "-" if im < 0 else "+"
    return f"{re_text}{sign}{magnitude}*i"


def parse_scalar(text: str) -> Scalar:
    raw = text.replace(" ", "")
    if not raw or not _SCALAR_PATTERN.match(raw):
        raise InputError(f"not an exact scalar: {text!r}")
    try:
        if not raw.endswith("i"):
            return QQ_I(_rational(raw), 0)
        body = raw[:-1].removesuffix("*")
        split = max(body.rfind("+"), body.rfind("-"))
        if split > 0 and body[split - 1] not in "/":
            real_text, imag_text = body[:split], body[split:]
        else:
            real_text, imag_text = "0", body
        if imag_text in ("", "+"):
            imag_text = "1"
        elif imag_text == "-":
            imag_text = "-1"
        return QQ_I(_rational(real_text), _rational(imag_text))
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"not an exact scalar: {text!r}") from exc


def _rational(value: int | Fraction | str) -> Any:
    fraction = Fraction(value)
    return QQ(fraction.numerator, fraction.denominator)


def _format_rational(value: Any) -> str:
    numerator, denominator = int(value.numerator), int(value.denominator)
    return str(numerator) if denominator == 1 else f"{numerator}/{denominator}"

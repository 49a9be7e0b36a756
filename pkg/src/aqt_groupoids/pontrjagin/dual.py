"""The dual algebra ``Â = A·φ`` of a measured multiplier Hopf *-algebroid and its actions on ``A``.

``Â`` is stored on the dual basis ``ê^k(e_i) = δ_ik``, so the pairing ``𝒫(a, υ) = υ(a)`` is the
identity matrix. Its product is the one that makes ▶ a left module.
"""

from __future__ import annotations

import logging
from collections.abc import Mapping
from dataclasses import dataclass

from ..algebra.homomorphisms import AlgebraMap, check_algebra_map
from ..algebra.star_algebra import StarAlgebra, check_algebra_axioms
from ..algebroid.mmha import MMHA
from ..errors import NotFaithfulError, UnsolvableError
from ..linear import LinMap, Scalar, Vec, independent_rows
from ..linear.scalars import ONE, ZERO, conj
from ..linear.vectors import accumulate, dot
from ..reporting import CheckSpec, VerificationReport, Witness, failure, first_mismatch, run_checks

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class DualAlgebra:
    """``Â`` with ``ι̂_B``, ``ι̂_C``, ``Ŝ`` and the operators ``b -> ê^k ▶ b``."""

    primal: MMHA
    total: StarAlgebra
    iota_b: AlgebraMap
    iota_c: AlgebraMap
    antipode: AlgebraMap
    left_operators: tuple[LinMap, ...]
    report: VerificationReport

    @property
    def dim(self) -> int:
        return self.total.dim

    def unit_functional(self) -> Vec:
        return dict(self.total.unit)

    def left_act(self, upsilon: Mapping[int, Scalar], b: Mapping[int, Scalar]) -> Vec:
        return _act(self.left_operators, upsilon, b)


@dataclass(frozen=True, eq=False)
class ConvolutionActions:
    dual: DualAlgebra
    left: tuple[LinMap, ...]
    right: tuple[LinMap, ...]
    report: VerificationReport

    def left_act(self, upsilon: Mapping[int, Scalar], b: Mapping[int, Scalar]) -> Vec:
        return _act(self.left, upsilon, b)

    def right_act(self, b: Mapping[int, Scalar], upsilon: Mapping[int, Scalar]) -> Vec:
        return _act(self.right, upsilon, b)


def _act(ops: tuple[LinMap, ...], upsilon: Mapping[int, Scalar], b: Mapping[int, Scalar]) -> Vec:
    out: Vec = {}
    for k, c in upsilon.items():
        accumulate(out, c, ops[k].apply(b))
    return out


def phi_form(a: MMHA) -> LinMap:
    """``b -> b·φ`` in dual-basis coordinates; invertible exactly when φ is faithful."""
    return a.total_phi.bilinear_form


def _invert_form(form: LinMap, name: str) -> LinMap:
    inverse = form.inverse()
    if inverse is None:
        raise NotFaithfulError(f"{name} is not faithful")
    return inverse


def _left_operator(a: MMHA, weight: Mapping[int, Scalar]) -> LinMap:
    """``b -> (weight·φ) ▶ b``."""
    total, d = a.total, a.dim
    e = [{i: ONE} for i in range(d)]
    # ι_B(t_C(_Cφ_C(e_y weight))) for every second leg y
    moved = [
        a.iota_b(a.t_c.apply(a.partial_phi.apply(total.mul(e[y], weight)))) for y in range(d)
    ]

    def column(i: int) -> Vec:
        out: Vec = {}
        for key, c in a.delta_c.columns[i].items():
            x, y = divmod(key, d)
            accumulate(out, c, total.mul(moved[y], e[x]))
        return out

    return LinMap.from_function(d, d, column)


def _right_operator(a: MMHA, weight: Mapping[int, Scalar]) -> LinMap:
    """``b -> b ◀ (ψ·weight)``."""
    total, d = a.total, a.dim
    e = [{i: ONE} for i in range(d)]
    moved = [
        a.iota_c(a.t_b.apply(a.partial_psi.apply(total.mul(weight, e[x])))) for x in range(d)
    ]

    def column(i: int) -> Vec:
        out: Vec = {}
        for key, c in a.delta_b.columns[i].items():
            x, y = divmod(key, d)
            accumulate(out, c, total.mul(e[y], moved[x]))
        return out

    return LinMap.from_function(d, d, column)


def _flatten(m: LinMap) -> Vec:
    d = m.rows
    return {col * d + row: c for col, column in enumerate(m.columns) for row, c in column.items()}


def _product_entry(left: LinMap, right: LinMap, row: int, col: int) -> Scalar:
    total: Scalar = ZERO
    for t, v in right.columns[col].items():
        value = left.columns[t].get(row)
        if value:
            total += value * v
    return total


def left_operators(a: MMHA) -> tuple[LinMap, ...]:
    """``b -> ê^k ▶ b`` for every dual basis functional."""
    weights = _invert_form(phi_form(a), f"{a.label}: φ")
    return tuple(_left_operator(a, weights.columns[k]) for k in range(a.dim))


def dual_algebra(a: MMHA, *, workers: int | None = None) -> DualAlgebra:
    """``Â`` with product from ▶, ``υ*(a) = conj υ(S(a)*)``, ``Ŝ = Sᵀ`` and the base embeddings.

    ``[ι̂_B(x)]υ = z -> υ(ι_C(t_B(x)) z)`` and ``[ι̂_C(y)]υ = z -> υ(z ι_C(y))``; both are honest
    elements of the unital algebra ``Â``.
    """
    d = a.dim
    ops = left_operators(a)
    stack = LinMap(d * d, d, tuple(_flatten(op) for op in ops))
    rows = independent_rows(stack)
    if len(rows) != d:
        raise NotFaithfulError(f"{a.label}: ▶ is not faithful (rank {len(rows)} < {d})")
    restricted = LinMap(
        d,
        d,
        tuple({r: col[key] for r, key in enumerate(rows) if key in col} for col in stack.columns),
    )
    restricted_inverse = restricted.inverse()
    if restricted_inverse is None:
        raise UnsolvableError(f"{a.label}: selected rows of ▶ are dependent")
    coordinates = [divmod(key, d) for key in rows]

    def solve_operator(entry: Mapping[int, Scalar]) -> Vec:
        return restricted_inverse.apply(entry)

    products: list[list[Vec]] = []
    for k in range(d):
        row_products: list[Vec] = []
        for m in range(d):
            entries = {
                r: value
                for r, (col, row) in enumerate(coordinates)
                if (value := _product_entry(ops[k], ops[m], row, col))
            }
            row_products.append(solve_operator(entries))
        products.append(row_products)
    identity_entries = {r: ONE for r, (col, row) in enumerate(coordinates) if col == row}
    unit = solve_operator(identity_entries)

    total, antipode = a.total, a.antipode
    star_images = [total.adjoint(antipode.columns[i]) for i in range(d)]

    def star(k: int) -> Vec:
        return {i: conj(image[k]) for i, image in enumerate(star_images) if image.get(k)}

    dual_total = StarAlgebra.from_products(
        d, lambda i, j: products[i][j], unit, star, f"{a.label}^"
    )
    def hat_b(j: int) -> Vec:
        shifted = a.iota_c(a.t_b.columns[j])
        return {
            i: value
            for i in range(d)
            if (value := dot(unit, total.mul(shifted, {i: ONE})))
        }

    def hat_c(j: int) -> Vec:
        embedded = a.iota_c.map.columns[j]
        return {
            i: value
            for i in range(d)
            if (value := dot(unit, total.mul({i: ONE}, embedded)))
        }

    iota_b = AlgebraMap(
        a.base_b,
        dual_total,
        LinMap.from_function(a.base_b.dim, d, hat_b),
        name="ι̂_B",
    )
    iota_c = AlgebraMap(
        a.base_c,
        dual_total,
        LinMap.from_function(a.base_c.dim, d, hat_c),
        name="ι̂_C",
    )
    hat_s = antipode.transpose()
    hat_s_inverse = hat_s.inverse()
    if hat_s_inverse is None:
        raise UnsolvableError(f"{a.label}: antipode is not invertible")
    dual_antipode = AlgebraMap(
        dual_total,
        dual_total,
        hat_s,
        flavor="anti-homomorphism",
        star_twist=hat_s_inverse.compose(hat_s_inverse),
        name="Ŝ",
    )
    report = _dual_algebra_report(a, dual_total, ops, iota_b, iota_c, dual_antipode, workers)
    logger.info(
        "dual_algebra event=built label=%s dim=%d passed=%s", a.label, d, report.passed
    )
    return DualAlgebra(a, dual_total, iota_b, iota_c, dual_antipode, ops, report)


def _dual_algebra_report(
    a: MMHA,
    dual_total: StarAlgebra,
    ops: tuple[LinMap, ...],
    iota_b: AlgebraMap,
    iota_c: AlgebraMap,
    dual_antipode: AlgebraMap,
    workers: int | None,
) -> VerificationReport:
    d, total = a.dim, a.total
    e = [{i: ONE} for i in range(d)]

    def act(upsilon: Mapping[int, Scalar], b: Mapping[int, Scalar]) -> Vec:
        return _act(ops, upsilon, b)

    def functional_after(left: Vec | None, right: Vec | None, upsilon: Vec) -> Vec:
        """``z -> υ(left z right)``."""
        out: Vec = {}
        for i in range(d):
            z = e[i]
            if left is not None:
                z = total.mul(left, z)
            if right is not None:
                z = total.mul(z, right)
            value = dot(upsilon, z)
            if value:
                out[i] = value
        return out

    def full_dimension() -> Witness | None:
        if phi_form(a).is_invertible():
            return None
        return failure("φ is degenerate, so A·φ is a proper subspace of the dual")

    def left_module() -> Witness | None:
        return first_mismatch(
            "(ê^k ê^l) ▶ e_b != ê^k ▶ (ê^l ▶ e_b)",
            (
                ((k, m, b), act(dual_total.mult[k][m], e[b]), act(e[k], act(e[m], e[b])))
                for k in range(d)
                for m in range(d)
                for b in range(d)
            ),
        )

    def unit_acts_trivially() -> Witness | None:
        return first_mismatch(
            "1̂ ▶ e_b != e_b", (((b,), act(dual_total.unit, e[b]), e[b]) for b in range(d))
        )

    def base_b_multipliers() -> Witness | None:
        cases = []
        for j in range(a.base_b.dim):
            x = a.iota_b.map.columns[j]
            shifted = a.iota_c(a.t_b.columns[j])
            for k in range(d):
                cases.append(
                    ((0, j, k), dual_total.mul(iota_b.map.columns[j], e[k]),
                     functional_after(shifted, None, e[k]))
                )
                cases.append(
                    ((1, j, k), dual_total.mul(e[k], iota_b.map.columns[j]),
                     functional_after(x, None, e[k]))
                )
        return first_mismatch("ι̂_B(x) is not the multiplier υ -> υ(ι_C(t_B(x))·)", cases)

    def base_c_multipliers() -> Witness | None:
        cases = []
        for j in range(a.base_c.dim):
            y = a.iota_c.map.columns[j]
            shifted = a.iota_b(a.t_c.columns[j])
            for k in range(d):
                cases.append(
                    ((0, j, k), dual_total.mul(iota_c.map.columns[j], e[k]),
                     functional_after(None, y, e[k]))
                )
                cases.append(
                    ((1, j, k), dual_total.mul(e[k], iota_c.map.columns[j]),
                     functional_after(None, shifted, e[k]))
                )
        return first_mismatch("ι̂_C(y) is not the multiplier υ -> υ(· ι_C(y))", cases)

    def bases_commute() -> Witness | None:
        return first_mismatch(
            "ι̂_B(x)ι̂_C(y) != ι̂_C(y)ι̂_B(x)",
            (
                (
                    (i, j),
                    dual_total.mul(iota_b.map.columns[i], iota_c.map.columns[j]),
                    dual_total.mul(iota_c.map.columns[j], iota_b.map.columns[i]),
                )
                for i in range(a.base_b.dim)
                for j in range(a.base_c.dim)
            ),
        )

    def involution_pairing() -> Witness | None:
        # 𝒫(a, υ*) = conj 𝒫(S(a)*, υ)
        return first_mismatch(
            "𝒫(e_i, (ê^k)*) != conj 𝒫(S(e_i)*, ê^k)",
            (
                (
                    (i, k),
                    {0: dual_total.adjoint(e[k]).get(i, ZERO)},
                    {0: conj(total.adjoint(a.antipode.columns[i]).get(k, ZERO))},
                )
                for i in range(d)
                for k in range(d)
            ),
        )

    specs = [
        CheckSpec("full_dimension", "Â = A·φ", full_dimension),
        CheckSpec("left_module", "Â product from ▶", left_module),
        CheckSpec("unit", "Â product from ▶", unit_acts_trivially),
        CheckSpec("base_b_multipliers", "ι̂_B", base_b_multipliers),
        CheckSpec("base_c_multipliers", "ι̂_C", base_c_multipliers),
        CheckSpec("bases_commute", "ι̂_B, ι̂_C", bases_commute),
        CheckSpec("involution_pairing", "𝒫 and *", involution_pairing),
    ]
    report = run_checks(f"{a.label}: dual algebra", specs, workers=workers)
    report = report.merge(check_algebra_axioms(dual_total, workers=workers), prefix="algebra")
    report = report.merge(check_algebra_map(iota_b, workers=workers), prefix="iota_b")
    report = report.merge(check_algebra_map(iota_c, workers=workers), prefix="iota_c")
    return report.merge(check_algebra_map(dual_antipode, workers=workers), prefix="antipode")


def convolution_actions(
    a: MMHA, dual: DualAlgebra | None = None, *, workers: int | None = None
) -> ConvolutionActions:
    """▶ and ◀ on the dual basis, with the antipode and involution compatibilities."""
    dual = dual or dual_algebra(a, workers=workers)
    d, total = a.dim, a.total
    psi_form = a.total_psi.bilinear_form.transpose()
    weights = _invert_form(psi_form, f"{a.label}: ψ")
    right = tuple(_right_operator(a, weights.columns[k]) for k in range(d))
    left = dual.left_operators
    e = [{i: ONE} for i in range(d)]
    hat_s = dual.antipode.map
    dual_total = dual.total

    def antipode_compatible() -> Witness | None:
        return first_mismatch(
            "ê^k ▶ S(e_i) != S(e_i ◀ Ŝ(ê^k))",
            (
                (
                    (k, i),
                    left[k].apply(a.antipode.columns[i]),
                    a.antipode.apply(_act(right, hat_s.columns[k], e[i])),
                )
                for k in range(d)
                for i in range(d)
            ),
        )

    def involution_compatible() -> Witness | None:
        return first_mismatch(
            "(ê^k ▶ e_i)* != Ŝ(ê^k)* ▶ e_i*",
            (
                (
                    (k, i),
                    total.adjoint(left[k].columns[i]),
                    _act(left, dual_total.adjoint(hat_s.columns[k]), total.adjoint(e[i])),
                )
                for k in range(d)
                for i in range(d)
            ),
        )

    def right_module() -> Witness | None:
        return first_mismatch(
            "e_b ◀ (ê^k ê^l) != (e_b ◀ ê^k) ◀ ê^l",
            (
                (
                    (k, m, b),
                    _act(right, dual_total.mult[k][m], e[b]),
                    right[m].apply(right[k].columns[b]),
                )
                for k in range(d)
                for m in range(d)
                for b in range(d)
            ),
        )

    def bimodule() -> Witness | None:
        return first_mismatch(
            "(ê^k ▶ e_b) ◀ ê^l != ê^k ▶ (e_b ◀ ê^l)",
            (
                (
                    (k, m, b),
                    right[m].apply(left[k].columns[b]),
                    left[k].apply(right[m].columns[b]),
                )
                for k in range(d)
                for m in range(d)
                for b in range(d)
            ),
        )

    def faithful() -> Witness | None:
        stack = LinMap(d * d, d, tuple(_flatten(op) for op in left))
        found = stack.rank()
        return None if found == d else failure(f"kernel of υ -> (υ ▶ ·) has dimension {d - found}")

    specs = [
        CheckSpec("antipode_compatible", "▶, ◀", antipode_compatible),
        CheckSpec("involution_compatible", "▶", involution_compatible),
        CheckSpec("right_module", "◀", right_module),
        CheckSpec("bimodule", "▶, ◀", bimodule),
        CheckSpec("faithful", "▶", faithful),
    ]
    report = run_checks(f"{a.label}: convolution actions", specs, workers=workers)
    logger.info(
        "convolution_actions event=checked label=%s passed=%s", a.label, report.passed
    )
    return ConvolutionActions(dual, left, right, report)

"""The complete axiom checker for unital measured multiplier Hopf *-algebroids.

Two tensors are compared through the normal forms of their balanced tensor products, so every
check is exact. Identities with free multipliers ``a``, ``c`` run over all basis vectors up to
``exhaustive_dim_limit`` and over the unit above it; the unital reduction is exact because the
products involved are module actions.
"""

from __future__ import annotations

import logging
from collections.abc import Callable, Mapping

from ..algebra.functionals import Functional, functional_is_faithful, functional_is_positive
from ..algebra.homomorphisms import check_algebra_map
from ..algebra.star_algebra import StarAlgebra, check_algebra_axioms
from ..config import get_settings
from ..errors import PreconditionError
from ..linear import LinMap, Scalar, Vec, span_rank
from ..linear.scalars import ONE
from ..reporting import (
    CheckSpec,
    VerificationReport,
    Witness,
    failure,
    first_mismatch,
    run_checks,
    scalar_case,
)
from .mmha import MMHA

logger = logging.getLogger(__name__)


def verify_mmha(
    a: MMHA, *, exhaustive: bool | None = None, workers: int | None = None
) -> VerificationReport:
    settings = get_settings()
    full = exhaustive if exhaustive is not None else a.dim <= settings.exhaustive_dim_limit
    total, bb, bc = a.total, a.base_b, a.base_c
    d = a.dim
    a2, a3 = a.a2, a.a3
    e = [{i: ONE} for i in range(d)]
    eb = [{j: ONE} for j in range(bb.dim)]
    ec = [{j: ONE} for j in range(bc.dim)]
    samples = list(enumerate(e)) if full else [(-1, total.unit)]
    iota_b = a.iota_b.map.columns
    iota_c = a.iota_c.map.columns
    delta_b = a.delta_b.columns
    delta_c = a.delta_c.columns

    def left2(leg: int, x: Mapping[int, Scalar], v: Mapping[int, Scalar]) -> Vec:
        return a2.mul(a2.embed(leg, x), v)

    def right2(v: Mapping[int, Scalar], leg: int, x: Mapping[int, Scalar]) -> Vec:
        return a2.mul(v, a2.embed(leg, x))

    def left3(leg: int, x: Mapping[int, Scalar], v: Mapping[int, Scalar]) -> Vec:
        return a3.mul(a3.embed(leg, x), v)

    def right3(v: Mapping[int, Scalar], leg: int, x: Mapping[int, Scalar]) -> Vec:
        return a3.mul(v, a3.embed(leg, x))

    def balanced_cases(which: str, cases: list) -> list:
        return [(basis, a.nf(which, lhs), a.nf(which, rhs)) for basis, lhs, rhs in cases]

    # (M1)

    def iota_injective() -> Witness | None:
        for name, f in (("ι_B", a.iota_b), ("ι_C", a.iota_c)):
            if f.map.rank() != f.map.cols:
                return failure(f"{name} is not injective")
        return None

    def bases_commute() -> Witness | None:
        return first_mismatch(
            "ι_B(x)ι_C(y) != ι_C(y)ι_B(x)",
            (
                ((x, y), total.mul(iota_b[x], iota_c[y]), total.mul(iota_c[y], iota_b[x]))
                for x in range(bb.dim)
                for y in range(bc.dim)
            ),
        )

    # (M2)

    def t_bijective() -> Witness | None:
        for name, t in (("t_B", a.t_b), ("t_C", a.t_c)):
            if not t.is_invertible():
                return failure(f"{name} is not bijective")
        return None

    def t_unital() -> Witness | None:
        return first_mismatch(
            "t_B(1) != 1 or t_C(1) != 1",
            [((0,), a.t_b.apply(bb.unit), bc.unit), ((1,), a.t_c.apply(bc.unit), bb.unit)],
        )

    def t_anti_multiplicative() -> Witness | None:
        cases = [
            ((0, x, z), a.t_b.apply(bb.mult[x][z]), bc.mul(a.t_b.columns[z], a.t_b.columns[x]))
            for x in range(bb.dim)
            for z in range(bb.dim)
        ]
        cases += [
            ((1, y, w), a.t_c.apply(bc.mult[y][w]), bb.mul(a.t_c.columns[w], a.t_c.columns[y]))
            for y in range(bc.dim)
            for w in range(bc.dim)
        ]
        return first_mismatch("t(xz) != t(z)t(x)", cases)

    def t_star() -> Witness | None:
        return first_mismatch(
            "t_B∘*∘t_C∘* != id_C",
            (
                ((y,), a.t_b.apply(bb.adjoint(a.t_c.apply(bc.adjoint(ec[y])))), ec[y])
                for y in range(bc.dim)
            ),
        )

    def frames() -> Witness | None:
        try:
            ranks = (a.balanced_b.rank, a.balanced_c.rank)
        except PreconditionError as exc:
            return failure(str(exc))
        logger.debug("verify_mmha event=frames label=%s ranks=%s", a.label, ranks)
        return None

    # (M3)(i)

    def takeuchi(which: str) -> Witness | None:
        base = bb.dim if which == "B" else bc.dim
        cases = []
        for i in range(d):
            image = a.delta(which, e[i])
            for j in range(base):
                cases.append(((i, j), a.nf(which, a.takeuchi_defect(which, j, image)), {}))
        return first_mismatch(f"Δ_{which}(e_i) leaves the Takeuchi product", cases)

    def delta_unital(which: str) -> Witness | None:
        return first_mismatch(
            f"Δ_{which}(1) != 1⊗1",
            balanced_cases(which, [((), a.delta(which, total.unit), a2.unit)]),
        )

    def delta_multiplicative(which: str) -> Witness | None:
        columns = delta_b if which == "B" else delta_c
        return first_mismatch(
            f"Δ_{which}(e_i e_j) != Δ_{which}(e_i)Δ_{which}(e_j)",
            balanced_cases(
                which,
                [
                    ((i, j), a.delta(which, total.mult[i][j]), a2.mul(columns[i], columns[j]))
                    for i in range(d)
                    for j in range(d)
                ],
            ),
        )

    def delta_bilinear(which: str) -> Witness | None:
        cases = []
        for i in range(d):
            image = a.delta(which, e[i])
            for x in range(bb.dim):
                u = iota_b[x]
                cases.append(((0, x, i), a.delta(which, total.mul(u, e[i])), left2(1, u, image)))
                cases.append(((1, x, i), a.delta(which, total.mul(e[i], u)), right2(image, 1, u)))
            for y in range(bc.dim):
                u = iota_c[y]
                cases.append(((2, y, i), a.delta(which, total.mul(u, e[i])), left2(0, u, image)))
                cases.append(((3, y, i), a.delta(which, total.mul(e[i], u)), right2(image, 0, u)))
        return first_mismatch(f"Δ_{which} is not B-C bilinear", balanced_cases(which, cases))

    # (M3)(ii)

    def coassociative(kind: int) -> Witness | None:
        cases = []
        for b in range(d):
            db, dc = delta_b[b], delta_c[b]
            for ia, x in samples:
                for ic, z in samples:
                    if kind == 1:
                        lhs = left3(0, x, a.delta_on_leg("B", left2(1, z, db), 0))
                        rhs = left3(2, z, a.delta_on_leg("B", left2(0, x, db), 1))
                        pair = ("B", "B")
                    elif kind == 2:
                        lhs = right3(a.delta_on_leg("C", right2(dc, 1, z), 0), 0, x)
                        rhs = right3(a.delta_on_leg("C", right2(dc, 0, x), 1), 2, z)
                        pair = ("C", "C")
                    elif kind == 3:
                        lhs = right3(a.delta_on_leg("C", left2(1, z, db), 0), 0, x)
                        rhs = left3(2, z, a.delta_on_leg("B", right2(dc, 0, x), 1))
                        pair = ("C", "B")
                    else:
                        lhs = left3(0, x, a.delta_on_leg("B", right2(dc, 1, z), 0))
                        rhs = right3(a.delta_on_leg("C", left2(0, x, db), 1), 2, z)
                        pair = ("B", "C")
                    cases.append(((ia, b, ic), a.nf3(*pair, lhs), a.nf3(*pair, rhs)))
        return first_mismatch(f"coassociativity identity {kind} fails", cases)

    # (M3)(iii)

    def involutive() -> Witness | None:
        return first_mismatch(
            "Δ_B(a)^(*⊗*) != Δ_C(a*)",
            (
                (
                    (i,),
                    a.nf("C", a2.adjoint(delta_b[i])),
                    a.nf("C", a.delta("C", total.adjoint(e[i]))),
                )
                for i in range(d)
            ),
        )

    # antipode and counits

    s = a.antipode

    def antipode_bijective() -> Witness | None:
        return None if s.is_invertible() else failure("S is not bijective")

    def antipode_anti_multiplicative() -> Witness | None:
        return first_mismatch(
            "S(e_i e_j) != S(e_j)S(e_i)",
            (
                ((i, j), s.apply(total.mult[i][j]), total.mul(s.columns[j], s.columns[i]))
                for i in range(d)
                for j in range(d)
            ),
        )

    def antipode_on_bases() -> Witness | None:
        cases = [
            ((0, x), s.apply(a.iota_c(a.t_b.columns[x])), iota_b[x]) for x in range(bb.dim)
        ]
        cases += [
            ((1, y), s.apply(a.iota_b(a.t_c.columns[y])), iota_c[y]) for y in range(bc.dim)
        ]
        return first_mismatch("S(ι_C(t_B(x))) != ι_B(x) or S(ι_B(t_C(y))) != ι_C(y)", cases)

    def antipode_star() -> Witness | None:
        return first_mismatch(
            "S(S(a*)*) != a",
            (((i,), s.apply(total.adjoint(s.apply(total.adjoint(e[i])))), e[i]) for i in range(d)),
        )

    def counit_b() -> Witness | None:
        cases = []
        for i in range(d):
            image = delta_b[i]
            for ib, x in samples:
                product = total.mul(x, e[i])
                cases.append(((0, ib, i), a.slice_eps_b_first(left2(1, x, image)), product))
                cases.append(((1, ib, i), a.slice_eps_b_second(left2(0, x, image)), product))
        return first_mismatch("(ε_B ⊙ id)((1⊗b)Δ_B(a)) or (id ⊙ ε_B)((b⊗1)Δ_B(a)) != ba", cases)

    def counit_c() -> Witness | None:
        cases = []
        for i in range(d):
            image = delta_c[i]
            for ib, x in samples:
                product = total.mul(e[i], x)
                cases.append(((0, ib, i), a.slice_eps_c_first(right2(image, 1, x)), product))
                cases.append(((1, ib, i), a.slice_eps_c_second(right2(image, 0, x)), product))
        return first_mismatch("(_Cε ⊙ id)(Δ_C(a)(1⊗b)) or (id ⊙ _Cε)(Δ_C(a)(b⊗1)) != ab", cases)

    def counit_b_bimodule() -> Witness | None:
        cases = []
        for i in range(d):
            value = a.eps_b.columns[i]
            for x in range(bb.dim):
                cases.append(
                    ((0, i, x), a.eps_b.apply(total.mul(e[i], iota_b[x])), bb.mul(value, eb[x]))
                )
                moved = a.iota_c(a.t_b.columns[x])
                cases.append(
                    ((1, i, x), a.eps_b.apply(total.mul(e[i], moved)), bb.mul(eb[x], value))
                )
        return first_mismatch("ε_B is not a B-bimodule map", cases)

    def counit_c_bimodule() -> Witness | None:
        cases = []
        for i in range(d):
            value = a.eps_c.columns[i]
            for y in range(bc.dim):
                cases.append(
                    ((0, i, y), a.eps_c.apply(total.mul(iota_c[y], e[i])), bc.mul(ec[y], value))
                )
                moved = a.iota_b(a.t_c.columns[y])
                cases.append(
                    ((1, i, y), a.eps_c.apply(total.mul(moved, e[i])), bc.mul(value, ec[y]))
                )
        return first_mismatch("_Cε is not a C-bimodule map", cases)

    identity = LinMap.identity(d)

    def antipode_counit() -> Witness | None:
        cases = []
        for i in range(d):
            for ib, x in samples:
                lhs = a.multiply_legs(right2(delta_c[i], 1, x), s, identity)
                rhs = total.mul(a.iota_b(a.eps_b.columns[i]), x)
                cases.append(((0, i, ib), lhs, rhs))
                lhs = a.multiply_legs(left2(0, x, delta_b[i]), identity, s)
                rhs = total.mul(x, a.iota_c(a.eps_c.columns[i]))
                cases.append(((1, ib, i), lhs, rhs))
        return first_mismatch(
            "m(S⊗id)(Δ_C(a)(1⊗b)) != ι_B(ε_B(a))b or m(id⊗S)((a⊗1)Δ_B(b)) != aι_C(_Cε(b))",
            cases,
        )

    # (M4)

    def partial_psi_invariant() -> Witness | None:
        cases = []
        for i in range(d):
            moved = a.iota_b(a.partial_psi.columns[i])
            for ib, x in samples:
                lhs = a.slice_psi(left2(1, x, delta_b[i]))
                cases.append(((i, ib), lhs, total.mul(x, moved)))
        return first_mismatch("(_Bψ_B ⊙ id)((1⊗b)Δ_B(a)) != bι_B(_Bψ_B(a))", cases)

    def partial_phi_invariant() -> Witness | None:
        cases = []
        for i in range(d):
            moved = a.iota_c(a.partial_phi.columns[i])
            for ia, x in samples:
                lhs = a.slice_phi(right2(delta_c[i], 0, x))
                cases.append(((i, ia), lhs, total.mul(moved, x)))
        return first_mismatch("(id ⊙ _Cφ_C)(Δ_C(b)(a⊗1)) != ι_C(_Cφ_C(b))a", cases)

    def partial_bimodule(
        name: str, part: LinMap, base: StarAlgebra, embedded: tuple[Vec, ...]
    ) -> Witness | None:
        cases = []
        for i in range(d):
            value = part.columns[i]
            for x in range(base.dim):
                cases.append(
                    ((0, x, i), part.apply(total.mul(embedded[x], e[i])), base.mul({x: ONE}, value))
                )
                cases.append(
                    ((1, x, i), part.apply(total.mul(e[i], embedded[x])), base.mul(value, {x: ONE}))
                )
        return first_mismatch(f"{name} is not a bimodule map", cases)

    def weights_transfer() -> Witness | None:
        cases = [
            scalar_case((0, y), a.mu_b(a.t_c.columns[y]), a.mu_c.on_basis(y)) for y in range(bc.dim)
        ]
        cases += [
            scalar_case((1, x), a.mu_c(a.t_b.columns[x]), a.mu_b.on_basis(x)) for x in range(bb.dim)
        ]
        return first_mismatch("μ_B∘t_C != μ_C or μ_C∘t_B != μ_B", cases)

    def weights_counits() -> Witness | None:
        return first_mismatch(
            "μ_B∘ε_B != μ_C∘_Cε",
            (
                scalar_case((i,), a.mu_b(a.eps_b.columns[i]), a.mu_c(a.eps_c.columns[i]))
                for i in range(d)
            ),
        )

    def positive_faithful(f: Functional) -> Callable[[], Witness | None]:
        def check() -> Witness | None:
            if f.is_zero:
                return failure(f"{f.label} is zero")
            if not functional_is_positive(f):
                return failure(f"{f.label} is not positive")
            if not functional_is_faithful(f):
                return failure(f"{f.label} is not faithful")
            return None

        return check

    specs = [
        CheckSpec("iota_injective", "(M1)", iota_injective),
        CheckSpec("bases_commute", "(M1)", bases_commute),
        CheckSpec("t_bijective", "(M2)", t_bijective),
        CheckSpec("t_unital", "(M2)", t_unital),
        CheckSpec("t_anti_multiplicative", "(M2)", t_anti_multiplicative),
        CheckSpec("t_star", "(M2)(i)", t_star),
        CheckSpec("balanced_frames", "(M2)(ii)-(iii)", frames),
    ]
    for which in ("B", "C"):
        specs += [
            CheckSpec(
                f"delta_{which.lower()}_takeuchi", "(M3) Takeuchi", lambda w=which: takeuchi(w)
            ),
            CheckSpec(f"delta_{which.lower()}_unital", "(M3)", lambda w=which: delta_unital(w)),
            CheckSpec(
                f"delta_{which.lower()}_multiplicative",
                "(M3)",
                lambda w=which: delta_multiplicative(w),
            ),
            CheckSpec(
                f"delta_{which.lower()}_bilinear", "(M3)(i)", lambda w=which: delta_bilinear(w)
            ),
        ]
    specs += [
        CheckSpec("coassociative_bb", "(M3)(ii)", lambda: coassociative(1)),
        CheckSpec("coassociative_cc", "(M3)(ii)", lambda: coassociative(2)),
        CheckSpec("coassociative_cb", "(M3)(ii)", lambda: coassociative(3)),
        CheckSpec("coassociative_bc", "(M3)(ii)", lambda: coassociative(4)),
        CheckSpec("involutive", "(M3)(iii)", involutive),
        CheckSpec("antipode_bijective", "antipode", antipode_bijective),
        CheckSpec("antipode_anti_multiplicative", "antipode (i)", antipode_anti_multiplicative),
        CheckSpec("antipode_on_bases", "antipode (i)", antipode_on_bases),
        CheckSpec("antipode_star", "antipode (ii)", antipode_star),
        CheckSpec("counit_b", "counit (iii)", counit_b),
        CheckSpec("counit_c", "counit (iii)", counit_c),
        CheckSpec("counit_b_bimodule", "counit", counit_b_bimodule),
        CheckSpec("counit_c_bimodule", "counit", counit_c_bimodule),
        CheckSpec("antipode_counit", "antipode (iv)", antipode_counit),
        CheckSpec("partial_psi_invariant", "(M4)(i)", partial_psi_invariant),
        CheckSpec("partial_phi_invariant", "(M4)(i)", partial_phi_invariant),
        CheckSpec(
            "partial_psi_bimodule",
            "(M4)",
            lambda: partial_bimodule("_Bψ_B", a.partial_psi, bb, iota_b),
        ),
        CheckSpec(
            "partial_phi_bimodule",
            "(M4)",
            lambda: partial_bimodule("_Cφ_C", a.partial_phi, bc, iota_c),
        ),
        CheckSpec("base_weights_transfer", "(M4)(ii)", weights_transfer),
        CheckSpec("base_weights_counits", "(M4)(ii)", weights_counits),
        CheckSpec("mu_b_positive_faithful", "(M4)", positive_faithful(a.mu_b)),
        CheckSpec("mu_c_positive_faithful", "(M4)", positive_faithful(a.mu_c)),
        CheckSpec("total_psi_positive_faithful", "(M4)(iii)", positive_faithful(a.total_psi)),
        CheckSpec("total_phi_positive_faithful", "(M4)(iii)", positive_faithful(a.total_phi)),
    ]
    report = VerificationReport(label=f"{a.label}: measured multiplier Hopf *-algebroid")
    for prefix, algebra in (("total", total), ("base_b", bb), ("base_c", bc)):
        report = report.merge(check_algebra_axioms(algebra, workers=workers), prefix=prefix)
    report = report.merge(check_algebra_map(a.iota_b, workers=workers), prefix="iota_b")
    report = report.merge(check_algebra_map(a.iota_c, workers=workers), prefix="iota_c")
    report = report.merge(run_checks(report.label, specs, workers=workers))
    logger.info(
        "verify_mmha event=completed label=%s exhaustive=%s checks=%d passed=%s",
        a.label,
        full,
        len(report.checks),
        report.passed,
    )
    return report


def unimodular(a: MMHA) -> bool:
    """``φ = ψ`` for the total integrals."""
    return a.total_phi.same_values(a.total_psi)


def spans_total(a: MMHA, left: list[Vec], right: list[Vec]) -> bool:
    total = a.total
    return span_rank(total.dim, [total.mul(x, y) for x in left for y in right]) == total.dim

"""The algebroid of a measured braided commutative Yetter–Drinfeld *-algebra.

Beginner terms used in this file:
- ``A = 𝒪(𝔾) # N``: the smash product of the dual action ◁, with ``h#1`` and ``α(m) = 1#m``.
- ``β(m) = m₋₁ # m₀``: anti-multiplicative on ``N``, hence a *-homomorphism on ``N^op_γ̂``.
- Structure maps: ``t_B = id`` and ``t_C = γ`` in coordinates, ``Δ(h#m) = (h₁#1)⊗(h₂#m)``,
  ``S(h#m) = β(γ̂(m))(S(h)#1)``, ``ε_B(α(m)(h#1)) = m ◁ h``,
  ``_Cε((h#1)β(m)) = m ◁ S(h)``, ``_Bψ_B(α(m)(h#1)) = φ(h)m`` and ``_Cφ_C((h#1)β(m)) = φ(h)m``.
"""

from __future__ import annotations

import logging
from collections.abc import Callable, Mapping
from dataclasses import dataclass

from ..algebra.functionals import Functional
from ..algebra.homomorphisms import AlgebraMap
from ..algebra.star_algebra import gamma_opposite
from ..errors import PreconditionError, VerificationFailure
from ..linear import LinMap, Scalar, Vec
from ..linear.scalars import ONE
from ..linear.vectors import accumulate, vec_scale
from ..reporting import (
    CheckSpec,
    VerificationReport,
    Witness,
    failure,
    first_mismatch,
    run_checks,
)
from ..yd.yetter_drinfeld import (
    MeasuredYD,
    YDAlgebra,
    check_yd_integral,
    gamma_maps,
    require_yd,
)
from .mmha import MMHA, Provenance, spanning_matrix
from .smash import SmashProduct, smash_product

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AlphaBeta:
    alpha: AlgebraMap
    beta: AlgebraMap
    report: VerificationReport


def _alpha_beta_maps(sp: SmashProduct, y: YDAlgebra) -> tuple[AlgebraMap, AlgebraMap]:
    n_alg = y.n
    _, gamma_hat = gamma_maps(y)

    def beta_column(m: int) -> Vec:
        out: Vec = {}
        for c, h, k in y.legs({m: ONE}):
            accumulate(out, c, sp.element({h: ONE}, {k: ONE}))
        return out

    alpha = AlgebraMap(n_alg, sp.total, sp.embed_n.map, name="α")
    beta = AlgebraMap(
        gamma_opposite(n_alg, gamma_hat, label=f"{n_alg.label}^op"),
        sp.total,
        LinMap.from_function(n_alg.dim, sp.total.dim, beta_column),
        name="β",
    )
    return alpha, beta


def alpha_beta(sp: SmashProduct, y: YDAlgebra, *, workers: int | None = None) -> AlphaBeta:
    """α, β and their relations; β is returned on ``N^op_γ̂`` where it is a *-homomorphism."""
    if sp.action is not y.dual_action:
        raise PreconditionError(f"{sp.total.label} is not built from the dual action of {y.label}")
    alpha_map, beta_map = _alpha_beta_maps(sp, y)
    g, n_alg, total = y.group, y.n, sp.total
    n, d = n_alg.dim, g.dim
    em = [{i: ONE} for i in range(n)]
    eh = [{j: ONE} for j in range(d)]
    gamma, gamma_hat = gamma_maps(y)
    s = {p: g.antipode_power(p) for p in (-2, -1, 1, 2, 3)}

    def hash1(h: Mapping[int, Scalar]) -> Vec:
        return sp.embed_h(h)

    def alpha(m: Mapping[int, Scalar]) -> Vec:
        return alpha_map(m)

    def beta(m: Mapping[int, Scalar]) -> Vec:
        return beta_map(m)

    def over_legs(m: int, term: Callable[[int, int], Vec]) -> Vec:
        out: Vec = {}
        for c, h, k in y.legs(em[m]):
            accumulate(out, c, term(h, k))
        return out

    def over_coproduct(h: int, term: Callable[[int, int], Vec]) -> Vec:
        out: Vec = {}
        for c, (h1, h2) in g.sweedler(eh[h], 2):
            accumulate(out, c, term(h1, h2))
        return out

    def injective() -> Witness | None:
        for name, f in (("α", alpha_map), ("β", beta_map)):
            if f.map.rank() != n:
                return failure(f"{name} is not injective")
        return None

    def c1() -> Witness | None:
        cases = [
            ((0, a, b), alpha(n_alg.mult[a][b]), total.mul(alpha(em[a]), alpha(em[b])))
            for a in range(n)
            for b in range(n)
        ]
        cases += [
            ((1, a), total.adjoint(alpha(em[a])), alpha(n_alg.adjoint(em[a]))) for a in range(n)
        ]
        return first_mismatch("α(m)α(n) != α(mn) or α(m)* != α(m*)", cases)

    def c2() -> Witness | None:
        cases = [
            ((0, a, b), total.mul(beta(em[a]), beta(em[b])), beta(n_alg.mult[b][a]))
            for a in range(n)
            for b in range(n)
        ]
        for a in range(n):
            star_a = total.adjoint(beta(em[a]))
            cases.append(((1, a), star_a, beta(gamma_hat.apply(n_alg.adjoint(em[a])))))
            cases.append(((2, a), star_a, beta(n_alg.adjoint(gamma.columns[a]))))
        return first_mismatch("β(m)β(n) != β(nm) or β(m)* != β(γ̂(m*)) = β(γ(m)*)", cases)

    def c3() -> Witness | None:
        return first_mismatch(
            "α(m)β(n) != β(n)α(m)",
            (
                ((a, b), total.mul(alpha(em[a]), beta(em[b])), total.mul(beta(em[b]), alpha(em[a])))
                for a in range(n)
                for b in range(n)
            ),
        )

    def i1() -> Witness | None:
        return first_mismatch(
            "α(m)(h#1) != (h₁#1)α(m ◁ h₂)",
            (
                (
                    (m, h),
                    total.mul(alpha(em[m]), hash1(eh[h])),
                    over_coproduct(
                        h, lambda h1, h2: total.mul(hash1(eh[h1]), alpha(y.act(em[m], eh[h2])))
                    ),
                )
                for m in range(n)
                for h in range(d)
            ),
        )

    def i2() -> Witness | None:
        return first_mismatch(
            "(h#1)α(m) != α(m ◁ S⁻¹(h₂))(h₁#1)",
            (
                (
                    (m, h),
                    total.mul(hash1(eh[h]), alpha(em[m])),
                    over_coproduct(
                        h,
                        lambda h1, h2: total.mul(
                            alpha(y.act(em[m], s[-1].columns[h2])), hash1(eh[h1])
                        ),
                    ),
                )
                for m in range(n)
                for h in range(d)
            ),
        )

    def two_sided(
        detail: str,
        lhs: Callable[[int], Vec],
        left_h: int,
        left_b: Callable[[int], Vec],
        right_b: Callable[[int], Vec],
        right_h: int,
        outer: Callable[[Mapping[int, Scalar]], Vec],
    ) -> Witness | None:
        """``lhs(m) = Σ (S^p(m₋₁)#1) outer(left_b(m₀)) = Σ outer(right_b(m₀)) (S^q(m₋₁)#1)``."""
        cases = []
        for m in range(n):
            target = lhs(m)
            first = over_legs(
                m,
                lambda h, k: total.mul(
                    hash1(s[left_h].columns[h] if left_h else eh[h]), outer(left_b(k))
                ),
            )
            second = over_legs(
                m,
                lambda h, k: total.mul(
                    outer(right_b(k)), hash1(s[right_h].columns[h] if right_h else eh[h])
                ),
            )
            cases.append(((0, m), target, first))
            cases.append(((1, m), target, second))
        return first_mismatch(detail, cases)

    gamma2 = gamma.compose(gamma)
    gamma_hat2 = gamma_hat.compose(gamma_hat)

    def identity(k: int) -> Vec:
        return em[k]

    def i3() -> Witness | None:
        return two_sided(
            "α(m) != (S(m₋₁)#1)β(m₀) or β(γ̂(m₀))(S(m₋₁)#1)",
            lambda m: alpha(em[m]),
            1,
            identity,
            gamma_hat.columns.__getitem__,
            1,
            beta,
        )

    def i4() -> Witness | None:
        return two_sided(
            "α(γ(m)) != (S⁻¹(m₋₁)#1)β(γ(m₀)) or β(m₀)(S⁻¹(m₋₁)#1)",
            lambda m: alpha(gamma.columns[m]),
            -1,
            gamma.columns.__getitem__,
            identity,
            -1,
            beta,
        )

    def i5() -> Witness | None:
        return two_sided(
            "α(γ̂(m)) != (S³(m₋₁)#1)β(γ̂(m₀)) or β(γ̂²(m₀))(S³(m₋₁)#1)",
            lambda m: alpha(gamma_hat.columns[m]),
            3,
            gamma_hat.columns.__getitem__,
            gamma_hat2.columns.__getitem__,
            3,
            beta,
        )

    def i6() -> Witness | None:
        return two_sided(
            "β(m) != (m₋₁#1)α(m₀) or α(γ(m₀))(m₋₁#1)",
            lambda m: beta(em[m]),
            0,
            identity,
            gamma.columns.__getitem__,
            0,
            alpha,
        )

    def i7() -> Witness | None:
        return two_sided(
            "β(γ(m)) != (S⁻²(m₋₁)#1)α(γ(m₀)) or α(γ²(m₀))(S⁻²(m₋₁)#1)",
            lambda m: beta(gamma.columns[m]),
            -2,
            gamma.columns.__getitem__,
            gamma2.columns.__getitem__,
            -2,
            alpha,
        )

    def i8() -> Witness | None:
        return two_sided(
            "β(γ̂(m)) != (S²(m₋₁)#1)α(γ̂(m₀)) or α(m₀)(S²(m₋₁)#1)",
            lambda m: beta(gamma_hat.columns[m]),
            2,
            gamma_hat.columns.__getitem__,
            identity,
            2,
            alpha,
        )

    def beta_commutes() -> Witness | None:
        cases = []
        for m in range(n):
            for h in range(d):
                cases.append(
                    (
                        (0, m, h),
                        total.mul(beta(em[m]), hash1(eh[h])),
                        over_coproduct(
                            h,
                            lambda h1, h2: total.mul(hash1(eh[h2]), beta(y.act(em[m], eh[h1]))),
                        ),
                    )
                )
                cases.append(
                    (
                        (1, m, h),
                        total.mul(hash1(eh[h]), beta(em[m])),
                        over_coproduct(
                            h,
                            lambda h1, h2: total.mul(
                                beta(y.act(em[m], s[1].columns[h1])), hash1(eh[h2])
                            ),
                        ),
                    )
                )
        return first_mismatch("β(m)(h#1) != (h₂#1)β(m ◁ h₁) or its mirror", cases)

    def beta_antipode_identity() -> Witness | None:
        cases = []
        for m in range(n):
            for h in range(d):
                cases.append(
                    (
                        (0, m, h),
                        over_coproduct(
                            h,
                            lambda h1, h2: total.mul(
                                beta(y.act(em[m], eh[h2])), hash1(s[-1].columns[h1])
                            ),
                        ),
                        total.mul(hash1(s[-1].columns[h]), beta(em[m])),
                    )
                )
                cases.append(
                    (
                        (1, m, h),
                        over_coproduct(
                            h,
                            lambda h1, h2: total.mul(
                                beta(gamma_hat.apply(y.act(em[m], eh[h2]))),
                                hash1(s[1].columns[h1]),
                            ),
                        ),
                        total.mul(hash1(s[1].columns[h]), beta(gamma_hat.columns[m])),
                    )
                )
        return first_mismatch(
            "β(m ◁ h₂)(S⁻¹(h₁)#1) != (S⁻¹(h)#1)β(m) or the γ̂ twin", cases
        )

    def spanning() -> Witness | None:
        group_part = [hash1(eh[h]) for h in range(d)]
        alphas = [alpha(em[m]) for m in range(n)]
        betas = [beta(em[m]) for m in range(n)]
        for name, left, right in (
            ("(h#1)α(m)", group_part, alphas),
            ("α(m)(h#1)", alphas, group_part),
            ("(h#1)β(m)", group_part, betas),
            ("β(m)(h#1)", betas, group_part),
        ):
            found = spanning_matrix(total, left, right).rank()
            if found != total.dim:
                return failure(f"{name} spans rank {found} < {total.dim}")
        return None

    specs = [
        CheckSpec("injective", "α, β", injective),
        CheckSpec("c1", "(C1)", c1),
        CheckSpec("c2", "(C2)", c2),
        CheckSpec("c3", "(C3)", c3),
        CheckSpec("i1", "(I1)", i1),
        CheckSpec("i2", "(I2)", i2),
        CheckSpec("i3", "(I3)", i3),
        CheckSpec("i4", "(I4)", i4),
        CheckSpec("i5", "(I5)", i5),
        CheckSpec("i6", "(I6)", i6),
        CheckSpec("i7", "(I7)", i7),
        CheckSpec("i8", "(I8)", i8),
        CheckSpec("beta_commutation", "β and h#1", beta_commutes),
        CheckSpec("beta_antipode", "β and h#1", beta_antipode_identity),
        CheckSpec("spanning", "spanning families", spanning),
    ]
    report = run_checks(f"{total.label}: α and β", specs, workers=workers)
    return AlphaBeta(alpha_map, beta_map, report)


def build_algebroid(
    measured: MeasuredYD, *, verified: bool = False, workers: int | None = None
) -> MMHA:
    """``𝒜(N, θ, θ̂, μ)`` over ``A = 𝒪(𝔾) # N``."""
    y, mu = measured.yd, measured.mu
    if not verified:
        require_yd(y, workers=workers)
        integral = check_yd_integral(measured, workers=workers)
        if not integral.passed:
            raise VerificationFailure(integral)
    g, n_alg = y.group, y.n
    n, d = n_alg.dim, g.dim
    em = [{i: ONE} for i in range(n)]
    eh = [{j: ONE} for j in range(d)]
    gamma, gamma_hat = gamma_maps(y)
    sp = smash_product(
        g, n_alg, y.dual_action, label=f"{g.alg.label}#{y.label}", verify_action=False
    )
    total = sp.total
    alpha, beta = _alpha_beta_maps(sp, y)
    base_b = n_alg.relabel(f"B[{y.label}]")
    base_c = gamma_opposite(n_alg, gamma_hat, label=f"C[{y.label}]")
    iota_b = AlgebraMap(base_b, total, alpha.map, name="ι_B")
    iota_c = AlgebraMap(base_c, total, beta.map, name="ι_C")
    group_part = [sp.embed_h(eh[h]) for h in range(d)]

    def comul(j: int) -> Vec:
        h, m = divmod(j, n)
        out: Vec = {}
        for c, (h1, h2) in g.sweedler(eh[h], 2):
            accumulate(out, c, _pure(sp, group_part[h1], h2, m))
        return out

    delta = LinMap.from_function(total.dim, total.dim * total.dim, comul)

    def antipode(j: int) -> Vec:
        h, m = divmod(j, n)
        return total.mul(beta(gamma_hat.columns[m]), sp.embed_h(g.S(eh[h])))

    # Spanning families α(m)(h#1) at m·d + h and (h#1)β(m) at h·n + m.
    p_alpha = spanning_matrix(total, [alpha(em[m]) for m in range(n)], group_part)
    p_beta = spanning_matrix(total, group_part, [beta(em[m]) for m in range(n)])
    eps_b = _solve_on_family(
        p_alpha, [y.act(em[m], eh[h]) for m in range(n) for h in range(d)], n, "ε_B"
    )
    eps_c = _solve_on_family(
        p_beta, [y.act(em[m], g.S(eh[h])) for h in range(d) for m in range(n)], n, "_Cε"
    )
    psi = _solve_on_family(
        p_alpha,
        [vec_scale(g.phi(eh[h]), em[m]) for m in range(n) for h in range(d)],
        n,
        "_Bψ_B",
    )
    phi = _solve_on_family(
        p_beta,
        [vec_scale(g.phi(eh[h]), em[m]) for h in range(d) for m in range(n)],
        n,
        "_Cφ_C",
    )
    label = f"A({y.label})"
    provenance = Provenance(g, measured, sp, alpha, beta, gamma, gamma_hat, "right")
    result = MMHA(
        total,
        base_b,
        base_c,
        iota_b,
        iota_c,
        LinMap.identity(n),
        gamma,
        delta,
        delta,
        LinMap.from_function(total.dim, total.dim, antipode),
        eps_b,
        eps_c,
        Functional(base_b, dict(mu.covector), "μ_B"),
        Functional(base_c, dict(mu.covector), "μ_C"),
        psi,
        phi,
        label,
        tuple(group_part),
        provenance,
    )
    logger.info(
        "build_algebroid event=built label=%s group=%s base_dim=%d total_dim=%d",
        label,
        g.label,
        n,
        total.dim,
    )
    return result


def _pure(sp: SmashProduct, left: Mapping[int, Scalar], h: int, m: int) -> Vec:
    dim = sp.total.dim
    out: Vec = {}
    right = sp.element({h: ONE}, {m: ONE})
    for i, x in left.items():
        for j, z in right.items():
            accumulate(out, x * z, {i * dim + j: ONE})
    return out


def _solve_on_family(family: LinMap, values: list[Vec], rows: int, name: str) -> LinMap:
    """The map ``f`` with ``f(family column k) = values[k]``."""
    inverse = family.inverse()
    if inverse is None:
        raise PreconditionError(f"{name}: spanning family is not a basis")
    return LinMap(rows, family.cols, tuple(values)).compose(inverse)

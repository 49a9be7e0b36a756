"""Morphisms of measured multiplier Hopf *-algebroids and the ones induced by YD morphisms."""

from __future__ import annotations

import logging
from collections.abc import Mapping
from dataclasses import dataclass

from ..algebra.homomorphisms import AlgebraMap, check_algebra_map
from ..errors import PreconditionError, ProvenanceMissingError, VerificationFailure
from ..linear import LinMap, Scalar, Vec, solve_linear, tensor_product
from ..linear.scalars import ONE
from ..linear.vectors import vec_equal
from ..reporting import (
    CheckSpec,
    VerificationReport,
    Witness,
    failure,
    first_mismatch,
    run_checks,
    single_check,
)
from ..yd.yetter_drinfeld import check_yd_morphism, trivial_measured_yd
from .construction import build_algebroid
from .mmha import MMHA

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class MMHAMorphism:
    source: MMHA
    target: MMHA
    map: AlgebraMap
    swapped: bool = False

    def __call__(self, a: Mapping[int, Scalar]) -> Vec:
        return self.map(a)


def check_mmha_morphism(
    m: MMHAMorphism, *, workers: int | None = None
) -> VerificationReport:
    """Base inclusions, ``t`` intertwining and both comultiplication intertwinings."""
    src, tgt = m.source, m.target
    pi = m.map.map
    pi_pi = tensor_product(pi, pi)
    d = src.dim
    e = [{i: ONE} for i in range(d)]
    # (source base, its embedding, target embedding receiving it)
    if m.swapped:
        lands = (("C→B'", src.iota_c, tgt.iota_b), ("B→C'", src.iota_b, tgt.iota_c))
    else:
        lands = (("B→B'", src.iota_b, tgt.iota_b), ("C→C'", src.iota_c, tgt.iota_c))

    def preimage(target: AlgebraMap, v: Mapping[int, Scalar]) -> Vec | None:
        return solve_linear(target.map, v)

    def bases() -> Witness | None:
        for name, inner, outer in lands:
            for x in range(inner.map.cols):
                if preimage(outer, pi.apply(inner.map.columns[x])) is None:
                    return failure(f"π({name}) leaves the target base", (x,))
        return None

    def t_intertwining() -> Witness | None:
        cases = []
        if m.swapped:
            # π∘ι_B∘t_B⁻¹ = ι_C'∘t_B'∘ι_B'⁻¹∘π∘ι_C and π∘ι_C∘t_C⁻¹ = ι_B'∘t_C'∘ι_C'⁻¹∘π∘ι_B
            rules = (
                (src.iota_b, src.t_b_inverse, src.iota_c, tgt.iota_b, tgt.t_b, tgt.iota_c),
                (src.iota_c, src.t_c_inverse, src.iota_b, tgt.iota_c, tgt.t_c, tgt.iota_b),
            )
        else:
            # π∘ι_C∘t_B = ι_C'∘t_B'∘ι_B'⁻¹∘π∘ι_B and π∘ι_B∘t_C = ι_B'∘t_C'∘ι_C'⁻¹∘π∘ι_C
            rules = (
                (src.iota_c, src.t_b, src.iota_b, tgt.iota_b, tgt.t_b, tgt.iota_c),
                (src.iota_b, src.t_c, src.iota_c, tgt.iota_c, tgt.t_c, tgt.iota_b),
            )
        for k, (outer, t, inner, back, t_out, lift) in enumerate(rules):
            for x in range(inner.map.cols):
                lhs = pi.apply(outer(t.columns[x]))
                coords = preimage(back, pi.apply(inner.map.columns[x]))
                if coords is None:
                    return failure("π does not preserve the bases", (k, x))
                cases.append(((k, x), lhs, lift(t_out.apply(coords))))
        return first_mismatch("π does not intertwine the t maps", cases)

    def comul(which: str) -> Witness | None:
        source_which = ("C" if which == "B" else "B") if m.swapped else which
        cases = [
            (
                (i,),
                tgt.nf(which, tgt.delta(which, pi.columns[i])),
                tgt.nf(which, pi_pi.apply(src.delta(source_which, e[i]))),
            )
            for i in range(d)
        ]
        return first_mismatch(f"Δ_{which}'∘π != (π⊗π)∘Δ_{source_which}", cases)

    specs = [
        CheckSpec("bases", "morphism (1)", bases),
        CheckSpec("t_intertwining", "morphism (2)", t_intertwining),
        CheckSpec("comul_b", "morphism (3)", lambda: comul("B")),
        CheckSpec("comul_c", "morphism (3)", lambda: comul("C")),
    ]
    label = f"{m.map.name}: {src.label} -> {tgt.label}"
    report = run_checks(label, specs, workers=workers)
    return report.merge(check_algebra_map(m.map, workers=workers), prefix="star_homomorphism")


def morphism_from_yd_morphism(
    f: AlgebraMap, source: MMHA, target: MMHA, *, workers: int | None = None
) -> MMHAMorphism:
    """``π_f(h # m) = h # f(m)``; raises :class:`VerificationFailure` if ``f`` is not a YD map."""
    src_prov, tgt_prov = source.provenance, target.provenance
    if src_prov is None or tgt_prov is None:
        raise ProvenanceMissingError("π_f needs algebroids built from measured YD algebras")
    if src_prov.group is not tgt_prov.group and src_prov.group.label != tgt_prov.group.label:
        raise PreconditionError("π_f needs both algebroids over the same quantum group")
    report = check_yd_morphism(f, src_prov.measured.yd, tgt_prov.measured.yd, workers=workers)
    if not report.passed:
        raise VerificationFailure(report)
    sp1, sp2 = src_prov.smash, tgt_prov.smash
    n1 = sp1.n.dim

    def column(k: int) -> Vec:
        h, m = divmod(k, n1)
        return sp2.element({h: ONE}, f.map.columns[m])

    pi = AlgebraMap(
        source.total,
        target.total,
        LinMap.from_function(source.dim, target.dim, column),
        name=f"id#{f.name}",
    )
    morphism = MMHAMorphism(source, target, pi)
    verified = check_mmha_morphism(morphism, workers=workers)
    if not verified.passed:
        raise VerificationFailure(verified)
    logger.info(
        "morphism_from_yd_morphism event=built source=%s target=%s", source.label, target.label
    )
    return morphism


def preserves_group(m: MMHAMorphism) -> bool:
    """``π ∘ ι_𝔾 = ι_𝔾'``."""
    src_prov, tgt_prov = m.source.provenance, m.target.provenance
    if src_prov is None or tgt_prov is None:
        return False
    j1, j2 = src_prov.embed_group.map, tgt_prov.embed_group.map
    return all(vec_equal(m(j1.columns[h]), j2.columns[h]) for h in range(j1.cols))


def yd_morphism_from_morphism(m: MMHAMorphism, *, workers: int | None = None) -> AlgebraMap:
    """Recover ``f`` with ``π = id # f`` from a morphism fixing ``𝒪(𝔾)`` elementwise."""
    src_prov, tgt_prov = m.source.provenance, m.target.provenance
    if src_prov is None or tgt_prov is None:
        raise ProvenanceMissingError("f_π needs algebroids built from measured YD algebras")
    if not preserves_group(m):
        raise PreconditionError(f"{m.map.name} does not fix 𝒪(𝔾) elementwise")
    alpha1, alpha2 = src_prov.alpha, tgt_prov.alpha
    columns = []
    for k in range(alpha1.map.cols):
        coords = solve_linear(alpha2.map, m(alpha1.map.columns[k]))
        if coords is None:
            raise PreconditionError(f"{m.map.name} does not map α(N₁) into α(N₂)")
        columns.append(coords)
    f = AlgebraMap(
        src_prov.smash.n,
        tgt_prov.smash.n,
        LinMap(alpha2.map.cols, alpha1.map.cols, tuple(columns)),
        name=f"f[{m.map.name}]",
    )
    report = check_yd_morphism(f, src_prov.measured.yd, tgt_prov.measured.yd, workers=workers)
    if not report.passed:
        raise VerificationFailure(report)
    return f


def unit_morphism(a: MMHA, *, workers: int | None = None) -> MMHAMorphism:
    """``j_𝔾: 𝒜(𝔾) -> 𝒜(N, θ, θ̂, μ)`` from the unit ``η_N: ℂ -> N``; checked injective."""
    prov = a.provenance
    if prov is None:
        raise ProvenanceMissingError(f"{a.label}: j_𝔾 needs the measured YD it was built from")
    canonical = build_algebroid(trivial_measured_yd(prov.group), workers=workers)
    n_alg = prov.smash.n
    eta = AlgebraMap(
        canonical.provenance.smash.n,  # type: ignore[union-attr]
        n_alg,
        LinMap(n_alg.dim, 1, (dict(n_alg.unit),)),
        name="η",
    )
    morphism = morphism_from_yd_morphism(eta, canonical, a, workers=workers)
    if morphism.map.map.rank() != canonical.dim:
        witness = failure(f"rank {morphism.map.map.rank()} < {canonical.dim}")
        raise VerificationFailure(single_check(f"j_𝔾 -> {a.label}", "injective", "j_𝔾", witness))
    return morphism

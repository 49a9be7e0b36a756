"""The dual of a quotient-type coideal algebroid inside the opposite Heisenberg algebra."""

from __future__ import annotations

import logging
from dataclasses import dataclass

from ..algebra.homomorphisms import AlgebraMap, check_algebra_map
from ..algebra.star_algebra import StarAlgebra, gamma_opposite
from ..algebroid.smash import SmashProduct, heisenberg_algebra, smash_product
from ..errors import DimensionMismatchError
from ..linear import LinMap, Vec
from ..reporting import CheckSpec, VerificationReport, Witness, failure, run_checks
from ..yd.yetter_drinfeld import MeasuredYD, dual_conjugate_yd
from .model import DualModel

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class HeisenbergIdentification:
    source: StarAlgebra
    heisenberg: SmashProduct
    target: StarAlgebra
    embedding: AlgebraMap
    report: VerificationReport

    @property
    def bijective(self) -> bool:
        return self.embedding.map.is_invertible()


def heisenberg_identification(
    measured: MeasuredYD,
    inclusion: LinMap,
    model: DualModel | None = None,
    *,
    workers: int | None = None,
) -> HeisenbergIdentification:
    """``𝓕`` for a quotient-type coideal ``N ⊂ 𝒪(𝔾)`` given by its inclusion matrix.

    ``model`` supplies the dual model total when the dual has already been built; otherwise the
    smash product of the dual conjugate is formed directly.
    """
    y = measured.yd
    g = y.group
    d, n = g.dim, y.n.dim
    if inclusion.shape != (d, n):
        raise DimensionMismatchError(
            f"{y.label}: inclusion of shape {inclusion.shape} does not fit {d}x{n}"
        )
    if model is not None:
        source = model.model_total
    else:
        md = dual_conjugate_yd(measured).yd
        source = smash_product(
            md.group, md.n, md.dual_action, verify_action=False, workers=workers
        ).total
    heis = heisenberg_algebra(g, workers=workers)
    plain = heis.h
    s2 = g.antipode_power(2)
    hat_s_minus2 = plain.antipode_power(-2)

    def twist(j: int) -> Vec:
        m, w = divmod(j, d)
        return heis.element(hat_s_minus2.columns[w], s2.columns[m])

    size = heis.total.dim
    target = gamma_opposite(
        heis.total, LinMap.from_function(size, size, twist), label=f"{heis.total.label}^op"
    )

    def column(j: int) -> Vec:
        w, k = divmod(j, n)
        return heis.element(plain.antipode_inverse.columns[w], inclusion.columns[k])

    embedding = AlgebraMap(
        source, target, LinMap.from_function(d * n, size, column), name="𝓕"
    )

    def injective() -> Witness | None:
        found = embedding.map.rank()
        return None if found == d * n else failure(f"𝓕 has rank {found} < {d * n}")

    def onto_when_full() -> Witness | None:
        if n < d or embedding.map.is_invertible():
            return None
        return failure("𝓕 is not onto although the coideal is all of 𝒪(𝔾)")

    specs = [
        CheckSpec("injective", "𝓕 faithful embedding", injective),
        CheckSpec("onto_when_full", "opposite Heisenberg algebra", onto_when_full),
    ]
    report = run_checks(f"𝓕: {source.label} -> {target.label}", specs, workers=workers)
    report = report.merge(check_algebra_map(embedding, workers=workers), prefix="star_map")
    logger.info(
        "heisenberg_identification event=checked label=%s dim=%d passed=%s",
        y.label,
        d * n,
        report.passed,
    )
    return HeisenbergIdentification(source, heis, target, embedding, report)

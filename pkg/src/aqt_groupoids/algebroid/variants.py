"""Co-opposite, opposite and bi-opposite algebroids."""

from __future__ import annotations

import logging
from dataclasses import dataclass

from ..algebra.functionals import Functional
from ..algebra.homomorphisms import AlgebraMap
from ..algebra.star_algebra import StarAlgebra
from ..linear import LinMap, flip
from ..linear.scalars import ONE
from ..linear.vectors import vec_equal
from .mmha import MMHA

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MMHAVariants:
    co: MMHA
    op: MMHA
    opco: MMHA


def _conjugated(part: LinMap, source: StarAlgebra, target: StarAlgebra) -> LinMap:
    """``* ∘ part ∘ *``."""
    return LinMap.from_function(
        source.dim,
        target.dim,
        lambda i: target.adjoint(part.apply(source.adjoint({i: ONE}))),
    )


def coopposite(a: MMHA) -> MMHA:
    d = a.dim
    swap = flip(d, d)
    result = MMHA(
        total=a.total,
        base_b=a.base_c,
        base_c=a.base_b,
        iota_b=a.iota_c,
        iota_c=a.iota_b,
        t_b=a.t_b_inverse,
        t_c=a.t_c_inverse,
        delta_b=swap.compose(a.delta_b),
        delta_c=swap.compose(a.delta_c),
        antipode=a.antipode_inverse,
        eps_b=a.t_b.compose(a.eps_b),
        eps_c=a.t_c.compose(a.eps_c),
        mu_b=Functional(a.base_c, dict(a.mu_c.covector), a.mu_c.label),
        mu_c=Functional(a.base_b, dict(a.mu_b.covector), a.mu_b.label),
        partial_psi=_conjugated(a.partial_phi, a.total, a.base_c),
        partial_phi=_conjugated(a.partial_psi, a.total, a.base_b),
        label=f"{a.label}^co",
        frame=a.frame,
    )
    logger.debug("variant event=built kind=co label=%s", a.label)
    return result


def opposite(a: MMHA) -> MMHA:
    total = a.total.opposite(f"{a.total.label}^op")
    base_b = a.base_b.opposite(f"{a.base_b.label}^op")
    base_c = a.base_c.opposite(f"{a.base_c.label}^op")
    result = MMHA(
        total=total,
        base_b=base_b,
        base_c=base_c,
        iota_b=AlgebraMap(base_b, total, a.iota_b.map, name=f"{a.iota_b.name}°"),
        iota_c=AlgebraMap(base_c, total, a.iota_c.map, name=f"{a.iota_c.name}°"),
        t_b=a.t_c_inverse,
        t_c=a.t_b_inverse,
        delta_b=a.delta_c,
        delta_c=a.delta_b,
        antipode=a.antipode_inverse,
        eps_b=a.t_c.compose(a.eps_c),
        eps_c=a.t_b.compose(a.eps_b),
        mu_b=Functional(base_b, dict(a.mu_b.covector), a.mu_b.label),
        mu_c=Functional(base_c, dict(a.mu_c.covector), a.mu_c.label),
        partial_psi=_conjugated(a.partial_psi, a.total, a.base_b),
        partial_phi=_conjugated(a.partial_phi, a.total, a.base_c),
        label=f"{a.label}^op",
        frame=a.frame,
    )
    logger.debug("variant event=built kind=op label=%s", a.label)
    return result


def biopposite(a: MMHA) -> MMHA:
    return coopposite(opposite(a)).relabel(f"{a.label}^op,co")


def variants(a: MMHA) -> MMHAVariants:
    return MMHAVariants(coopposite(a), opposite(a), biopposite(a))


def same_map(f: LinMap, g: LinMap) -> bool:
    return f.shape == g.shape and all(
        vec_equal(x, y) for x, y in zip(f.columns, g.columns, strict=True)
    )


def same_mmha(a: MMHA, b: MMHA) -> bool:
    """Structure-map equality on identical coordinates."""
    maps = (
        (a.iota_b.map, b.iota_b.map),
        (a.iota_c.map, b.iota_c.map),
        (a.t_b, b.t_b),
        (a.t_c, b.t_c),
        (a.delta_b, b.delta_b),
        (a.delta_c, b.delta_c),
        (a.antipode, b.antipode),
        (a.eps_b, b.eps_b),
        (a.eps_c, b.eps_c),
        (a.partial_psi, b.partial_psi),
        (a.partial_phi, b.partial_phi),
    )
    return (
        a.total.same_structure(b.total)
        and a.base_b.same_structure(b.base_b)
        and a.base_c.same_structure(b.base_c)
        and all(same_map(f, g) for f, g in maps)
        and a.mu_b.same_values(b.mu_b)
        and a.mu_c.same_values(b.mu_c)
    )

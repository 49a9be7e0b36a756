"""Measured multiplier Hopf *-algebroids built from measured Yetter–Drinfeld *-algebras."""

from .balanced import BalancedProduct, balanced_product, triple_normal_form
from .checker import spans_total, unimodular, verify_mmha
from .construction import AlphaBeta, alpha_beta, build_algebroid
from .left import (
    LeftIdentification,
    build_left_algebroid,
    left_alpha_beta_report,
    left_identification,
)
from .mmha import MMHA, Provenance, spanning_matrix
from .modular import KacVerdict, MMHAModularData, is_kac, mmha_modular_data
from .morphisms import (
    MMHAMorphism,
    check_mmha_morphism,
    morphism_from_yd_morphism,
    preserves_group,
    unit_morphism,
    yd_morphism_from_morphism,
)
from .smash import SmashProduct, check_smash_product, heisenberg_algebra, smash_product
from .variants import (
    MMHAVariants,
    biopposite,
    coopposite,
    opposite,
    same_map,
    same_mmha,
    variants,
)

__all__ = [
    "MMHA",
    "AlphaBeta",
    "BalancedProduct",
    "KacVerdict",
    "LeftIdentification",
    "MMHAModularData",
    "MMHAMorphism",
    "MMHAVariants",
    "Provenance",
    "SmashProduct",
    "alpha_beta",
    "balanced_product",
    "biopposite",
    "build_algebroid",
    "build_left_algebroid",
    "check_mmha_morphism",
    "check_smash_product",
    "coopposite",
    "heisenberg_algebra",
    "is_kac",
    "left_alpha_beta_report",
    "left_identification",
    "mmha_modular_data",
    "morphism_from_yd_morphism",
    "opposite",
    "preserves_group",
    "same_map",
    "same_mmha",
    "spanning_matrix",
    "spans_total",
    "smash_product",
    "triple_normal_form",
    "unimodular",
    "unit_morphism",
    "variants",
    "verify_mmha",
    "yd_morphism_from_morphism",
]

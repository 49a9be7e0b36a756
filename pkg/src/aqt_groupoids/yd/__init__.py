"""Actions of quantum groups and braided commutative Yetter–Drinfeld *-algebras."""

from .coactions import (
    ActionVariants,
    Coaction,
    action_to_coaction,
    check_coaction,
    coaction_to_action,
    opposite_conjugate_actions,
    trivial_coaction,
)
from .left import (
    LeftMeasuredYD,
    LeftYD,
    RightRightYD,
    check_left_yd,
    check_left_yd_integral,
    check_right_right,
    left_canonical_automorphisms,
    left_gamma_maps,
    left_measured_to_right,
    left_to_right,
    left_yd_algebra,
    presentation_convert,
    right_measured_to_left,
    right_right_to_yd,
    right_to_left,
    yd_to_right_right,
)
from .yetter_drinfeld import (
    CanonicalAutomorphisms,
    MeasuredYD,
    YDAlgebra,
    canonical_automorphisms,
    check_yd,
    check_yd_integral,
    check_yd_morphism,
    dual_conjugate_involution_report,
    dual_conjugate_yd,
    gamma_maps,
    is_tracial,
    require_yd,
    trivial_measured_yd,
    yd_algebra,
)

__all__ = [
    "ActionVariants",
    "CanonicalAutomorphisms",
    "Coaction",
    "LeftMeasuredYD",
    "LeftYD",
    "MeasuredYD",
    "RightRightYD",
    "YDAlgebra",
    "action_to_coaction",
    "canonical_automorphisms",
    "check_coaction",
    "check_left_yd",
    "check_left_yd_integral",
    "check_right_right",
    "check_yd",
    "check_yd_integral",
    "check_yd_morphism",
    "coaction_to_action",
    "dual_conjugate_involution_report",
    "dual_conjugate_yd",
    "gamma_maps",
    "is_tracial",
    "left_canonical_automorphisms",
    "left_gamma_maps",
    "left_measured_to_right",
    "left_to_right",
    "left_yd_algebra",
    "opposite_conjugate_actions",
    "presentation_convert",
    "require_yd",
    "right_measured_to_left",
    "right_right_to_yd",
    "right_to_left",
    "trivial_coaction",
    "trivial_measured_yd",
    "yd_algebra",
    "yd_to_right_right",
]

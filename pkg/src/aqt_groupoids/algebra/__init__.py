"""*-algebras, functionals and finite quantum groups."""

from .actions import (
    ModuleAction,
    adjoint_left_action,
    adjoint_right_action,
    check_module_algebra,
    convolution_left_action,
    convolution_right_action,
    trivial_action,
)
from .duality import (
    CanonicalPairing,
    DualPair,
    MultiplicativeUnitary,
    build_dual,
    check_pairing,
    double_dual_report,
    multiplicative_unitary,
)
from .functionals import (
    Functional,
    functional_is_faithful,
    functional_is_positive,
    functional_is_self_adjoint,
    modular_automorphism,
)
from .homomorphisms import AlgebraMap, check_algebra_map
from .quantum_group import (
    FiniteQuantumGroup,
    ModularData,
    QuantumGroupVariants,
    aqg_isomorphism_report,
    modular_data,
    variants,
    verify_aqg,
)
from .star_algebra import (
    StarAlgebra,
    Subalgebra,
    TensorSpace,
    center,
    check_algebra_axioms,
    gamma_opposite,
    place,
    subalgebra,
)

__all__ = [
    "AlgebraMap",
    "CanonicalPairing",
    "DualPair",
    "FiniteQuantumGroup",
    "Functional",
    "ModularData",
    "ModuleAction",
    "MultiplicativeUnitary",
    "QuantumGroupVariants",
    "StarAlgebra",
    "Subalgebra",
    "TensorSpace",
    "adjoint_left_action",
    "adjoint_right_action",
    "aqg_isomorphism_report",
    "build_dual",
    "center",
    "check_algebra_axioms",
    "check_algebra_map",
    "check_module_algebra",
    "check_pairing",
    "convolution_left_action",
    "convolution_right_action",
    "double_dual_report",
    "functional_is_faithful",
    "functional_is_positive",
    "functional_is_self_adjoint",
    "gamma_opposite",
    "modular_automorphism",
    "modular_data",
    "multiplicative_unitary",
    "place",
    "subalgebra",
    "trivial_action",
    "variants",
    "verify_aqg",
]

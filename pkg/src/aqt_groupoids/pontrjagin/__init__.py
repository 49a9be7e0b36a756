"""Pontrjagin duality for algebroids built from measured Yetter–Drinfeld *-algebras."""

from .dual import ConvolutionActions, DualAlgebra, convolution_actions, dual_algebra, phi_form
from .heisenberg import HeisenbergIdentification, heisenberg_identification
from .model import (
    DualAlgebroid,
    DualityPairing,
    DualModel,
    XiModel,
    biduality_check,
    build_dual_algebroid,
    dual_model_xi,
    duality_pairing,
)

__all__ = [
    "ConvolutionActions",
    "DualAlgebra",
    "DualAlgebroid",
    "DualModel",
    "DualityPairing",
    "HeisenbergIdentification",
    "XiModel",
    "biduality_check",
    "build_dual_algebroid",
    "convolution_actions",
    "dual_algebra",
    "dual_model_xi",
    "duality_pairing",
    "heisenberg_identification",
    "phi_form",
]

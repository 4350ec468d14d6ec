"""Photon-added and photon-subtracted squeezed thermal states.

Closed-form normalization constants and photon-number distributions built on
scaled Legendre sequences, plus an independent truncated Fock-space oracle.
"""

from .analytics import (
    Distribution,
    expectation_exp_number,
    mean_photon_number,
    norm_pasts,
    norm_pssts,
    normalization,
    pnd,
    pnd_pasts,
    pnd_pssts,
    pnd_table,
)
from .core import (
    CoefficientSet,
    DomainError,
    ParameterError,
    StateParams,
    TruncationError,
    Variant,
    ZeroNormError,
    coefficients,
    validate_params,
)
from .legendre import ScaledLegendreSequence, genfun_coefficients, legendre_p, scaled_sequence

__version__ = "0.1.0"

__all__ = [
    "CoefficientSet",
    "Distribution",
    "DomainError",
    "ParameterError",
    "ScaledLegendreSequence",
    "StateParams",
    "TruncationError",
    "Variant",
    "ZeroNormError",
    "coefficients",
    "expectation_exp_number",
    "genfun_coefficients",
    "legendre_p",
    "mean_photon_number",
    "norm_pasts",
    "norm_pssts",
    "normalization",
    "pnd",
    "pnd_pasts",
    "pnd_pssts",
    "pnd_table",
    "scaled_sequence",
    "validate_params",
]

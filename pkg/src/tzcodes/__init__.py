"""Binary cyclic codes with three zeros: construction, weight distributions, designs."""

from .gf2m import FieldElement, FieldError, FieldSpec, get_field
from .lincode import (BinaryCode, EnumerationGuardError, WeightDistribution, augment, dual,
                      enumerate_weight_distribution, extend, macwilliams_dual_distribution,
                      puncture, shorten)
from .construct import (FamilyParams, FormulaError, InvalidParameters, build_Ce,
                        build_extended_augmented, predicted_dual_low_weights, predicted_wd_base,
                        predicted_wd_extended, predicted_wd_shortened)
from .designs import SupportDesign, blocks_from_code, verify_t_design

__version__ = "0.1.0"

__all__ = [
    "FieldElement", "FieldError", "FieldSpec", "get_field",
    "BinaryCode", "EnumerationGuardError", "WeightDistribution", "augment", "dual",
    "enumerate_weight_distribution", "extend", "macwilliams_dual_distribution", "puncture", "shorten",
    "FamilyParams", "FormulaError", "InvalidParameters", "build_Ce", "build_extended_augmented",
    "predicted_dual_low_weights", "predicted_wd_base", "predicted_wd_extended", "predicted_wd_shortened",
    "SupportDesign", "blocks_from_code", "verify_t_design",
]

"""Candidate ring *-homomorphisms: representation, construction and verification."""
from .kernel import image_scaling_gap, kernel, kernel_ideal_residuals
from .maps import RealLinearMap, amplify2, apply, left_multiplication_matrix
from .restriction import CodomainRestriction, restrict_codomain
from .structured import (
    BlockEmbedding, Composition, DirectSumOfBranches, EntrywiseConjugation, IdentityOn,
    StructuredHom, UnitaryConjugation, compile_hom, compose_all,
)
from .verification import (
    IRRATIONAL_SCALARS, RATIONAL_SCALARS, IsometryReport, VerificationReport,
    amplified_dilation_residual, check_contractivity, check_order_preservation,
    isometry_check, verify,
)

__all__ = [
    'BlockEmbedding', 'CodomainRestriction', 'Composition', 'DirectSumOfBranches',
    'EntrywiseConjugation', 'IRRATIONAL_SCALARS', 'IdentityOn', 'IsometryReport',
    'RATIONAL_SCALARS', 'RealLinearMap', 'StructuredHom', 'UnitaryConjugation',
    'VerificationReport', 'amplified_dilation_residual', 'amplify2', 'apply',
    'check_contractivity', 'check_order_preservation', 'compile_hom', 'compose_all',
    'image_scaling_gap', 'isometry_check', 'kernel', 'kernel_ideal_residuals',
    'left_multiplication_matrix', 'restrict_codomain', 'verify',
]

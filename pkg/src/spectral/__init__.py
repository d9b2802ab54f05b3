"""Eigenvalue-based routines: norms, spectra, positivity."""
from .jacobi import jacobi_eigenvalues
from .norms import (
    SpectralData, batch_operator_norm, dilation, dilation_norm_bound, hermitian_eigenvalues, is_below,
    is_positive, norm_by_bisection, operator_norm, order_bounds_hold, order_norm,
    positive_factor, spectral_radius, spectrum,
)

__all__ = [
    'SpectralData', 'batch_operator_norm', 'dilation', 'dilation_norm_bound', 'hermitian_eigenvalues',
    'is_below', 'is_positive', 'jacobi_eigenvalues', 'norm_by_bisection',
    'operator_norm', 'order_bounds_hold', 'order_norm', 'positive_factor',
    'spectral_radius', 'spectrum',
]
